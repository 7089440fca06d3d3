#pragma once

#include "airyprod/airy.hpp"
#include "airyprod/config.hpp"
#include "airyprod/contour.hpp"
#include "airyprod/error.hpp"
#include "airyprod/format.hpp"
#include "airyprod/gauss_kronrod.hpp"
#include "airyprod/greens.hpp"
#include "airyprod/path.hpp"
#include "airyprod/products.hpp"
#include "airyprod/sampling.hpp"
#include "airyprod/verify.hpp"
