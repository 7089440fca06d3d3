#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace airyprod {

enum class ErrorKind {
  EnvelopeExceeded,
  NonFinite,
  InvalidArgument,
  InvalidKindForSector,
  DegenerateGeometry,
  ToleranceNotMet,
  EndpointSingularity,
  SectorDispatchError,
  NegativeShift,
  ZeroField,
  CoincidentPoints,
  ConfigError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EnvelopeExceeded: return "EnvelopeExceeded";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidKindForSector: return "InvalidKindForSector";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::EndpointSingularity: return "EndpointSingularity";
    case ErrorKind::SectorDispatchError: return "SectorDispatchError";
    case ErrorKind::NegativeShift: return "NegativeShift";
    case ErrorKind::ZeroField: return "ZeroField";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Quadrature failures are reported separately from domain violations.
  bool is_quadrature_failure() const noexcept {
    return kind_ == ErrorKind::ToleranceNotMet || kind_ == ErrorKind::EndpointSingularity ||
           kind_ == ErrorKind::DegenerateGeometry;
  }

 private:
  ErrorKind kind_;
};

}  // namespace airyprod
