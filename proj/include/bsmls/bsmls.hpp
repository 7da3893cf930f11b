#pragma once

#include "bsmls/basis.hpp"
#include "bsmls/curve.hpp"
#include "bsmls/equivalence.hpp"
#include "bsmls/error.hpp"
#include "bsmls/knots.hpp"
#include "bsmls/mls.hpp"
#include "bsmls/point.hpp"
#include "bsmls/polynomial_basis.hpp"
#include "bsmls/surface.hpp"
#include "bsmls/weight.hpp"
