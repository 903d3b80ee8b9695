#include "bv/posterior.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bv {

namespace {

// Log-gamma by the Lanczos approximation (g = 7, n = 9), accurate to about
// 1e-15 relative over the positive reals. Self-contained so results do not
// drift with the platform's libm.
double log_gamma(double x) {
  static constexpr double kCoefficients[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  static constexpr double kHalfLogTwoPi = 0.91893853320467274178;
  if (x < 0.5) {
    // Reflection keeps small shapes accurate.
    const double pi = 3.14159265358979323846;
    return std::log(pi / std::sin(pi * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double series = kCoefficients[0];
  for (int i = 1; i < 9; ++i) series += kCoefficients[i] / (z + i);
  const double t = z + 7.5;
  return kHalfLogTwoPi + (z + 0.5) * std::log(t) - t + std::log(series);
}

// Continued fraction for the incomplete beta (Numerical Recipes form,
// evaluated with the modified Lentz method). Converges quickly for
// x < (a + 1) / (a + b + 2); the caller applies the symmetry switch.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kTiny = 1e-300;
  const double eps = std::numeric_limits<double>::epsilon();
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double coeff = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + coeff * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + coeff / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    coeff = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + coeff * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + coeff / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < eps) return h;
  }
  throw std::runtime_error(
      "regularized_incomplete_beta: continued fraction did not converge");
}

}  // namespace

BetaPosterior::BetaPosterior(double a_, double b_) : a(a_), b(b_) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("BetaPosterior: shapes must be positive");
  }
}

BetaPosterior update(const BetaPosterior& post, bool outcome) {
  return outcome ? BetaPosterior(post.a + 1.0, post.b)
                 : BetaPosterior(post.a, post.b + 1.0);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error(
        "regularized_incomplete_beta: shapes must be positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("regularized_incomplete_beta: x must lie in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_prefactor = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                               a * std::log(x) + b * std::log1p(-x);
  const double prefactor = std::exp(log_prefactor);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return prefactor * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - prefactor * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double mass_above(const BetaPosterior& post, double threshold) {
  return 1.0 - regularized_incomplete_beta(post.a, post.b, threshold);
}

ParameterSample sample(const BetaPosterior& post, RngStream& rng) {
  const double ga = rng.next_gamma(post.a);
  const double gb = rng.next_gamma(post.b);
  if (ga == 0.0 && gb == 0.0) return {post.mean()};
  return {ga / (ga + gb)};
}

}  // namespace bv
