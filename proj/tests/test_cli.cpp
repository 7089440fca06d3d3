#include <gtest/gtest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

// Runs the CLI with stderr discarded and returns the exit status and stdout.
Run cli(const std::string& args) {
  const std::string cmd = std::string(AIRYPROD_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Splits a CSV record, honouring double-quoted fields.
std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') out.back() += line[++i];
      else if (ch == '"') quoted = false;
      else out.back() += ch;
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "airyprod_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, EvalSquareAtOrigin) {
  const auto r = cli("eval u+ --z 0 --z0 0 --route direct");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "function,z_re,z_im,z0_re,z0_im,value_re,value_im,abs_err_est,route,sector");
  const auto f = fields(ls[1]);
  ASSERT_EQ(f.size(), 10u);
  EXPECT_NEAR(std::stod(f[5]), 0.126044919047370862, 1e-16);
  EXPECT_EQ(std::stod(f[6]), 0.0);
  EXPECT_EQ(f[8], "direct");
  EXPECT_EQ(f[9], "zero");
}

TEST(Cli, EvalDifferenceVanishesAtZeroShift) {
  const auto r = cli("eval diff+ --z 1 --z0 0");
  ASSERT_EQ(r.code, 0);
  const auto f = fields(lines(r.out).at(1));
  EXPECT_EQ(f[5], "0");
  EXPECT_EQ(f[6], "0");
  EXPECT_EQ(f[8], "contour");
}

TEST(Cli, EvalComplexArgumentsAndRoutes) {
  const auto direct = cli("eval \"product(+,-)\" --z 0+2i --z0 1");
  const auto contour = cli("eval \"product(+,-)\" --z 0+2i --z0 1 --route contour");
  ASSERT_EQ(direct.code, 0);
  ASSERT_EQ(contour.code, 0);
  const auto a = fields(lines(direct.out).at(1)), b = fields(lines(contour.out).at(1));
  EXPECT_NEAR(std::stod(a[5]), 0.00622838074135167563, 1e-15);
  EXPECT_NEAR(std::stod(a[6]), 0.00385940207962748984, 1e-15);
  EXPECT_NEAR(std::stod(b[5]), std::stod(a[5]), 1e-8);
  EXPECT_NEAR(std::stod(b[6]), std::stod(a[6]), 1e-8);
  EXPECT_EQ(a[0], "product(+,-)");
  EXPECT_EQ(a[2], "2");
  EXPECT_EQ(a[3], "1");
  EXPECT_NE(lines(direct.out).at(1).find("\"product(+,-)\""), std::string::npos);
}

TEST(Cli, EvalRealAxis) {
  const auto r = cli("eval aiai-real --x 1 --x0 -2");
  ASSERT_EQ(r.code, 0);
  const auto f = fields(lines(r.out).at(1));
  EXPECT_NEAR(std::stod(f[5]), 0.0724573259832833997, 1e-10);
  EXPECT_EQ(f[8], "real-axis");
  EXPECT_EQ(f[9], "outer");
}

TEST(Cli, SeventeenSignificantDigits) {
  const auto f = fields(lines(cli("eval w+ --z 0 --z0 0").out).at(1));
  // "0." followed by 17 significant digits, round-tripping the double.
  EXPECT_EQ(f[5].size(), 19u) << f[5];
  EXPECT_EQ(f[5].rfind("0.126044919047370", 0), 0u) << f[5];
}

TEST(Cli, JsonOutput) {
  const auto r = cli("--format json eval w- --z 0.5 --z0 -1");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["function"], "w-");
  EXPECT_EQ(j[0]["sector"], "outer");
  EXPECT_NEAR(j[0]["value_re"].get<double>(), 0.203533704760732323, 1e-15);
  EXPECT_NEAR(j[0]["value_im"].get<double>(), 0.0538728697238469678, 1e-15);
}

TEST(Cli, DomainErrorsExitTwo) {
  auto r = cli("eval w-real+ --x 0 --x0 -1");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(cli("eval w+ --z 1+ --z0 0").code, 2);
  EXPECT_EQ(cli("eval nonsense --z 0").code, 2);
  EXPECT_EQ(cli("eval u+ --z 60").code, 2);
  EXPECT_EQ(cli("--tol 1 eval u+ --z 0").code, 2);
  EXPECT_EQ(cli("--format xml eval u+ --z 0").code, 2);
  EXPECT_EQ(cli("verify nosuch").code, 2);
  EXPECT_EQ(cli("table nothing").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("").code, 2);
}

TEST(Cli, ConfigFile) {
  const auto cfg = scratch("bad.cfg");
  std::ofstream(cfg) << "tol = 1e-9\nunknown_key = 3\n";
  EXPECT_EQ(cli("--config " + cfg.string() + " eval u+ --z 0").code, 2);
  std::ofstream(cfg) << "format = json\n";
  const auto r = cli("--config " + cfg.string() + " eval u+ --z 0");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.front(), '[');
}

TEST(Cli, QuadratureFailureExitsThree) {
  // A node ceiling far too small for the requested tolerance.
  const auto cfg = scratch("starved.cfg");
  std::ofstream(cfg) << "node_ceiling = 1000\n";
  EXPECT_EQ(cli("--config " + cfg.string() + " --tol 1e-14 eval u+ --z 3+3i --z0 2 --route contour").code, 3);
}

TEST(Cli, UnwritableOutputExitsFour) {
  EXPECT_EQ(cli("table greens -o /nonexistent-dir/out.csv").code, 4);
}

TEST(Cli, GreensTableRowsAndDeterminism) {
  const auto a = scratch("greens_a.csv"), b = scratch("greens_b.csv");
  ASSERT_EQ(cli("table greens -o " + a.string()).code, 0);
  ASSERT_EQ(cli("--seed 20240611 table greens -o " + b.string()).code, 0);
  const std::string text = slurp(a);
  EXPECT_EQ(text, slurp(b));
  const auto ls = lines(text);
  ASSERT_EQ(ls.size(), 51u);
  EXPECT_EQ(ls[0], "eta,xi,energy,field,distance,value_re,value_im,abs_err_est");
  EXPECT_EQ(fields(ls[1])[0], "0.10000000000000001");
  EXPECT_EQ(fields(ls[50])[0], "5");
  EXPECT_EQ(text.find('\r'), std::string::npos);
  for (std::size_t i = 1; i < ls.size(); ++i) EXPECT_LT(std::stod(fields(ls[i])[7]), 1e-6) << ls[i];
}

TEST(Cli, ProductTableAtZeroShift) {
  const auto r = cli("table product --rot1 0 --rot2 +");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 42u);
  EXPECT_EQ(ls[0], "z_re,z_im,z0_re,z0_im,value_re,value_im,abs_err_est");
  // With z0 = 0 the (0,+) entry is Ai(x) Ai(e^{2iπ/3} x); at x = 0 it is Ai(0)^2.
  const auto mid = fields(ls[21]);
  EXPECT_EQ(mid[0], "0");
  EXPECT_NEAR(std::stod(mid[4]), 0.126044919047370862, 1e-16);
  const auto contour = cli("table product --rot1 0 --rot2 + --route contour");
  ASSERT_EQ(contour.code, 0);
  const auto cl = lines(contour.out);
  ASSERT_EQ(cl.size(), 42u);
  for (std::size_t i = 1; i < cl.size(); ++i) {
    const auto d = fields(ls[i]), c = fields(cl[i]);
    EXPECT_NEAR(std::stod(c[4]), std::stod(d[4]), 1e-7 * std::max(1.0, std::abs(std::stod(d[4]))));
    EXPECT_NEAR(std::stod(c[5]), std::stod(d[5]), 1e-7 * std::max(1.0, std::abs(std::stod(d[5]))));
  }
}

TEST(Cli, VerifyExitStatus) {
  const auto cfg = scratch("small.cfg");
  std::ofstream(cfg) << "ode_points = 20\n";
  const auto ok = cli("--config " + cfg.string() + " verify ode");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(lines(ok.out).at(0), "suite,check,index,point,residual,tolerance,pass");
  std::ofstream(cfg) << "ode_points = 20\node_tol = 1e-30\n";
  EXPECT_EQ(cli("--config " + cfg.string() + " verify ode").code, 1);
  EXPECT_EQ(cli("verify oracle").code, 0);
}
