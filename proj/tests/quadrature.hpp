#pragma once

// Test-only oracle for the beta CDF: adaptive Simpson quadrature over the
// normalized density, independent of the continued-fraction implementation
// under test. Shapes below one are integrated through the substitution
// t = u^(1/a), which removes the endpoint singularity.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace bv::testing {

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a,
                            double fa, double b, double fb, double fm,
                            double whole, double tolerance, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0) {
    throw std::runtime_error("quadrature oracle: recursion limit reached");
  }
  if (std::fabs(delta) <= 15.0 * tolerance) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, fa, m, fm, flm, left, 0.5 * tolerance, depth - 1) +
         adaptive_step(f, m, fm, b, fb, frm, right, 0.5 * tolerance, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tolerance) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive_step(f, a, fa, b, fb, fm, whole, tolerance, 64);
}

// Integral of the normalized Beta(a, b) density over [0, x]; requires x in
// [0, 1]. Uses std::lgamma for the normalizer, so the whole evaluation path
// is disjoint from the library's.
inline double lower_tail(double a, double b, double x, double tolerance) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  if (a < 1.0) {
    // t = u^(1/a): dt = (1/a) u^(1/a - 1) du absorbs the singular factor.
    const auto integrand = [=](double u) {
      if (u <= 0.0) return std::exp(log_norm - std::log(a));
      const double t = std::pow(u, 1.0 / a);
      if (t >= 1.0) return 0.0;
      return std::exp(log_norm - std::log(a) + (b - 1.0) * std::log1p(-t));
    };
    return integrate(integrand, 0.0, std::pow(x, a), tolerance);
  }
  const auto integrand = [=](double t) {
    if (t <= 0.0 || t >= 1.0) {
      // a >= 1 keeps t = 0 finite; the limit is nonzero only for a == 1.
      if (t <= 0.0 && a == 1.0) return std::exp(log_norm);
      return 0.0;
    }
    return std::exp(log_norm + (a - 1.0) * std::log(t) +
                    (b - 1.0) * std::log1p(-t));
  };
  return integrate(integrand, 0.0, x, tolerance);
}

}  // namespace detail

// Beta(a, b) CDF at x by adaptive quadrature. The upper tail is evaluated as
// the mirrored lower tail of Beta(b, a) so either endpoint singularity stays
// at the integration origin.
inline double beta_cdf_by_quadrature(double a, double b, double x,
                                     double tolerance = 1e-13) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("quadrature oracle: shapes must be positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("quadrature oracle: x out of [0, 1]");
  }
  if (x <= 0.5) return detail::lower_tail(a, b, x, tolerance);
  return 1.0 - detail::lower_tail(b, a, 1.0 - x, tolerance);
}

}  // namespace bv::testing
