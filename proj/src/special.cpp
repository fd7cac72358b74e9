#include "polya/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace polya::special {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double unit_ball_volume(double N) {
  if (!(N > 0.0)) throw std::domain_error("unit_ball_volume: N must be > 0");
  return std::pow(kPi, 0.5 * N) / std::tgamma(0.5 * N + 1.0);
}

double sphere_weight_norm(double N) {
  if (!(N > 1.0)) throw std::domain_error("sphere_weight_norm: N must be > 1");
  return std::exp(std::lgamma(0.5 * (N + 1.0)) - std::lgamma(0.5 * N)) / std::sqrt(kPi);
}

namespace {

// Lentz continued fraction for the incomplete beta function.
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double reg_inc_beta_c(double a, double b, double x, double xc) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("reg_inc_beta: a,b must be > 0");
  if (x <= 0.0) return 0.0;
  if (xc <= 0.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log(xc);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, xc) / b;
}

double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return reg_inc_beta_c(a, b, x, 1.0 - x);
}

double inv_reg_inc_beta(double a, double b, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::out_of_range("inv_reg_inc_beta: p outside [0,1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  // solve in the smaller tail: keeps full precision for x near 1
  if (p > 0.5) return 1.0 - inv_reg_inc_beta(b, a, 1.0 - p);
  // Bisection bracket with Newton acceleration.
  double lo = 0.0, hi = 1.0, x = 0.5;
  const double ln_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  for (int it = 0; it < 200; ++it) {
    const double f = reg_inc_beta(a, b, x) - p;
    if (f > 0.0) hi = x; else lo = x;
    const double ln_pdf = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - ln_beta;
    double step = f * std::exp(-ln_pdf);
    double xn = x - step;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::fabs(xn - x) < 1e-16 * (1.0 + std::fabs(x))) { x = xn; break; }
    x = xn;
  }
  return x;
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

// Acklam's rational approximation to the normal quantile (~1e-9 absolute), used
// as the seed for Newton refinement below.
double acklam(double p) {
  static const double A[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double B[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double C[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double D[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
           ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    const double q = p - 0.5, r = q * q;
    return (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q /
           (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log1p(-p));
  return -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
         ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::out_of_range("normal_quantile: p outside (0,1)");
  double x = acklam(p);
  // Newton in the smaller tail; cdf and pdf underflow together so the ratio stays sane.
  for (int it = 0; it < 4; ++it) {
    const double c = normal_cdf(x);
    const double d = normal_pdf(x);
    if (d <= 0.0) break;
    const double step = (c - p) / d;
    x -= step;
    if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(x))) break;
  }
  return x;
}

}  // namespace polya::special
