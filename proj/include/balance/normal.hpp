#pragma once

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace balance {

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Standard normal quantile, p in (0, 1).
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal quantile needs p in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>{}, p);
}

}  // namespace balance
