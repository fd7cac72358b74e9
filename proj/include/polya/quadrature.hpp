#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace polya::quad {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 48;
};

namespace detail {

// Gauss-Kronrod 15/7 on [-1,1]. Kronrod nodes are interior, so endpoint
// singularities and infinite transformed endpoints are never evaluated.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
std::pair<double, double> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - half * kXgk[i]);
    fv[14 - i] = f(c + half * kXgk[i]);
  }
  fv[7] = f(c);
  double resk = kWgk[7] * fv[7];
  double resg = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) resk += kWgk[i] * (fv[i] + fv[14 - i]);
  for (int i = 0; i < 3; ++i) resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  resk *= half;
  resg *= half;
  return {resk, std::fabs(resk - resg)};
}

template <class F>
double adapt(F& f, double a, double b, double tol, int depth, const Options& opt) {
  auto [v, e] = gk15(f, a, b);
  if (!std::isfinite(v)) {
    // Split blindly around non-finite panels (endpoint blow-up).
    if (depth >= opt.max_depth) return 0.0;
    const double m = 0.5 * (a + b);
    return adapt(f, a, m, 0.5 * tol, depth + 1, opt) +
           adapt(f, m, b, 0.5 * tol, depth + 1, opt);
  }
  if (e <= std::max(tol, opt.rel_tol * std::fabs(v)) || depth >= opt.max_depth) return v;
  const double m = 0.5 * (a + b);
  return adapt(f, a, m, 0.5 * tol, depth + 1, opt) +
         adapt(f, m, b, 0.5 * tol, depth + 1, opt);
}

}  // namespace detail

// Adaptive integral of f over (a,b); a and/or b may be infinite, handled by the
// rational substitution t = c ± s/(1∓s).
template <class F>
double integrate(F f, double a, double b, Options opt = {}) {
  if (a == b) return 0.0;
  const bool ainf = std::isinf(a), binf = std::isinf(b);
  if (!ainf && !binf) return detail::adapt(f, a, b, opt.abs_tol, 0, opt);
  if (ainf && binf) {
    return integrate(f, 0.0, std::numeric_limits<double>::infinity(), opt) +
           integrate(f, -std::numeric_limits<double>::infinity(), 0.0, opt);
  }
  if (!ainf && binf) {
    auto g = [&f, a](double s) {
      const double u = 1.0 - s;
      return f(a + s / u) / (u * u);
    };
    return detail::adapt(g, 0.0, 1.0, opt.abs_tol, 0, opt);
  }
  // (-inf, b]
  auto g = [&f, b](double s) {
    const double u = 1.0 - s;
    return f(b - s / u) / (u * u);
  };
  return detail::adapt(g, 0.0, 1.0, opt.abs_tol, 0, opt);
}

}  // namespace polya::quad
