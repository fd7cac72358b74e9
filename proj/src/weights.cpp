#include "polya/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polya/errors.hpp"
#include "polya/quadrature.hpp"
#include "polya/special.hpp"

namespace polya {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

double poly_eval(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k];
  return v;
}

double poly_eval_deriv2(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 2;)
    v = v * t + c[k] * static_cast<double>(k) * static_cast<double>(k - 1);
  return v;
}

// Fritsch-Carlson monotone cubic interpolant for tabulated densities.
struct MonotoneCubic {
  std::vector<double> x, y, m;
  static MonotoneCubic build(std::vector<double> xs, std::vector<double> ys) {
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n) throw config_error("custom weight: need >= 2 table rows");
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (!(xs[i + 1] > xs[i])) throw config_error("custom weight: x not strictly increasing");
    for (double v : ys)
      if (!(v > 0.0)) throw config_error("custom weight: density values must be > 0");
    std::vector<double> d(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) m[i] = 0.5 * (d[i - 1] + d[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (d[i] == 0.0) {
        m[i] = m[i + 1] = 0.0;
      } else {
        const double a = m[i] / d[i], b = m[i + 1] / d[i];
        const double s = a * a + b * b;
        if (s > 9.0) {
          const double tau = 3.0 / std::sqrt(s);
          m[i] = tau * a * d[i];
          m[i + 1] = tau * b * d[i];
        }
      }
    }
    return {std::move(xs), std::move(ys), std::move(m)};
  }
  double operator()(double t) const {
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin() - 1);
    if (i + 1 >= x.size()) i = x.size() - 2;
    const double h = x[i + 1] - x[i];
    const double s = (t - x[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return y[i] * (2 * s3 - 3 * s2 + 1) + h * m[i] * (s3 - 2 * s2 + s) +
           y[i + 1] * (-2 * s3 + 3 * s2) + h * m[i + 1] * (s3 - s2);
  }
};

}  // namespace

double ModelConstants::p_star() const {
  if (!(p > 1.0 && p < N)) throw std::domain_error("p_star requires 1 < p < N");
  return p * N / (N - p);
}

double WeightedInterval::density(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  return g_(x);
}

double WeightedInterval::cdf_raw(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return total_;
  return cdf_(x);
}

double WeightedInterval::cdf(double x) const {
  if (!(x > lo_ && x < hi_))
    throw std::domain_error("cdf: point outside the open interval");
  return cdf_(x);
}

double WeightedInterval::mass_between(double a, double b) const {
  if (b <= a) return 0.0;
  return cdf_raw(b) - cdf_raw(a);
}

double WeightedInterval::inv_cdf(double v) const {
  if (!(v > 0.0) || !(v < total_))
    throw std::out_of_range("inv_cdf: mass outside (0, total_mass)");
  if (inv_) return inv_(v);
  // Bracket, growing geometrically into unbounded ends, then bisection/secant.
  double lo = lo_, hi = hi_;
  if (std::isinf(lo)) {
    lo = std::isinf(hi) ? -1.0 : hi - 1.0;
    double step = 1.0;
    while (cdf_raw(lo) > v) { lo -= step; step *= 2.0; }
  }
  if (std::isinf(hi)) {
    hi = lo + 1.0;
    double step = 1.0;
    while (cdf_raw(hi) < v) { hi += step; step *= 2.0; }
  }
  double flo = cdf_raw(lo) - v, fhi = cdf_raw(hi) - v;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    // Secant proposal, safeguarded by the bracket.
    double xs = (fhi != flo) ? hi - fhi * (hi - lo) / (fhi - flo) : 0.5 * (lo + hi);
    if (!(xs > lo && xs < hi)) xs = 0.5 * (lo + hi);
    x = xs;
    const double fx = cdf_raw(x) - v;
    if (std::fabs(fx) <= 1e-12 * std::max(1.0, v) && (hi - lo) < 1e-9 * (1.0 + std::fabs(x)))
      break;
    if (fx > 0.0) { hi = x; fhi = fx; } else { lo = x; flo = fx; }
    if (hi - lo < 1e-15 * (1.0 + std::fabs(x))) break;
  }
  return x;
}

double WeightedInterval::profile(double v) const {
  if (v == 0.0) return 0.0;
  if (!(v >= 0.0) || !(v <= total_))
    throw std::out_of_range("profile: mass outside [0, total_mass]");
  if (v == total_) return std::isinf(hi_) ? 0.0 : g_(hi_);
  return g_(inv_cdf(v));
}

WeightedInterval WeightedInterval::sphere(double N) {
  if (!(N > 1.0)) throw config_error("sphere weight: N must be > 1");
  WeightedInterval w;
  w.spec_.family = "sphere";
  w.spec_.N = N;
  w.lo_ = 0.0;
  w.hi_ = kPi;
  w.total_ = 1.0;
  const double cN = special::sphere_weight_norm(N);
  w.g_ = [N, cN](double t) { return cN * std::pow(std::sin(t), N - 1.0); };
  w.cdf_ = [N](double x) {
    // pass cos^2 as the explicit complement of sin^2: no cancellation near pi/2
    if (x <= 0.5 * kPi) {
      const double s = std::sin(x), c = std::cos(x);
      return 0.5 * special::reg_inc_beta_c(0.5 * N, 0.5, s * s, c * c);
    }
    const double s = std::sin(kPi - x), c = std::cos(kPi - x);
    return 1.0 - 0.5 * special::reg_inc_beta_c(0.5 * N, 0.5, s * s, c * c);
  };
  w.inv_ = [N](double v) {
    if (v <= 0.5) {
      const double s = special::inv_reg_inc_beta(0.5 * N, 0.5, 2.0 * v);
      return std::asin(std::sqrt(s));
    }
    const double s = special::inv_reg_inc_beta(0.5 * N, 0.5, 2.0 * (1.0 - v));
    return kPi - std::asin(std::sqrt(s));
  };
  return w;
}

WeightedInterval WeightedInterval::euclidean(double N) {
  if (!(N > 1.0)) throw config_error("euclidean weight: N must be > 1");
  WeightedInterval w;
  w.spec_.family = "euclidean";
  w.spec_.N = N;
  w.lo_ = 0.0;
  w.hi_ = kInf;
  w.total_ = kInf;
  const double wN = special::unit_ball_volume(N);
  w.g_ = [N, wN](double t) { return N * wN * std::pow(t, N - 1.0); };
  w.cdf_ = [N, wN](double x) { return wN * std::pow(x, N); };
  w.inv_ = [N, wN](double v) { return std::pow(v / wN, 1.0 / N); };
  return w;
}

WeightedInterval WeightedInterval::cone(double N, double avr) {
  if (!(N > 1.0) || !(avr > 0.0)) throw config_error("cone weight: need N > 1 and avr > 0");
  WeightedInterval w;
  w.spec_.family = "cone";
  w.spec_.N = N;
  w.spec_.avr = avr;
  w.lo_ = 0.0;
  w.hi_ = kInf;
  w.total_ = kInf;
  const double wN = special::unit_ball_volume(N);
  w.g_ = [N, wN, avr](double t) { return avr * N * wN * std::pow(t, N - 1.0); };
  w.cdf_ = [N, wN, avr](double x) { return avr * wN * std::pow(x, N); };
  w.inv_ = [N, wN, avr](double v) { return std::pow(v / (avr * wN), 1.0 / N); };
  return w;
}

WeightedInterval WeightedInterval::gaussian() {
  WeightedInterval w;
  w.spec_.family = "gaussian";
  w.lo_ = -kInf;
  w.hi_ = kInf;
  w.total_ = 1.0;
  w.g_ = [](double t) { return special::normal_pdf(t); };
  w.cdf_ = [](double x) { return special::normal_cdf(x); };
  w.inv_ = [](double v) { return special::normal_quantile(v); };
  return w;
}

WeightedInterval WeightedInterval::exponential(double h) {
  if (!(h > 0.0)) throw config_error("exponential weight: h must be > 0");
  WeightedInterval w;
  w.spec_.family = "exponential";
  w.spec_.h = h;
  w.lo_ = -kInf;
  w.hi_ = kInf;
  w.total_ = kInf;
  w.g_ = [h](double t) { return std::exp(h * t); };
  w.cdf_ = [h](double x) { return std::exp(h * x) / h; };
  w.inv_ = [h](double v) { return std::log(h * v) / h; };
  return w;
}

WeightedInterval WeightedInterval::double_cone(double Q, double r) {
  if (!(Q > 1.0) || !(r > 0.0)) throw config_error("double_cone weight: need Q > 1, r > 0");
  WeightedInterval w;
  w.spec_.family = "double_cone";
  w.spec_.Q = Q;
  w.spec_.r = r;
  const double wQ = special::unit_ball_volume(Q);
  w.lo_ = 0.0;
  w.hi_ = 2.0 * r;
  w.total_ = 2.0 * wQ * std::pow(r, Q);
  w.g_ = [Q, r, wQ](double t) {
    const double s = std::min(t, 2.0 * r - t);
    return Q * wQ * std::pow(s, Q - 1.0);
  };
  const double total = w.total_;
  w.cdf_ = [Q, r, wQ, total](double x) {
    if (x <= r) return wQ * std::pow(x, Q);
    return total - wQ * std::pow(2.0 * r - x, Q);
  };
  w.inv_ = [Q, r, wQ, total](double v) {
    const double half = 0.5 * total;
    if (v <= half) return std::pow(v / wQ, 1.0 / Q);
    return 2.0 * r - std::pow((total - v) / wQ, 1.0 / Q);
  };
  return w;
}

WeightedInterval WeightedInterval::log_convex(std::vector<double> f_coeffs, int d) {
  if (d < 2) throw config_error("log_convex weight: d must be >= 2");
  if (f_coeffs.empty()) f_coeffs = {0.0};
  // f must be convex on [0, inf); for polynomials a coarse grid check suffices.
  for (int i = 0; i <= 400; ++i) {
    const double t = 0.125 * i;
    if (poly_eval_deriv2(f_coeffs, t) < -1e-12)
      throw config_error("log_convex weight: f is not convex");
  }
  WeightedInterval w;
  w.spec_.family = "log_convex";
  w.spec_.d = d;
  w.spec_.f_coeffs = f_coeffs;
  w.lo_ = 0.0;
  w.hi_ = kInf;
  const double wd = special::unit_ball_volume(static_cast<double>(d));
  const double dd = static_cast<double>(d);
  auto g = [f_coeffs, dd, wd](double t) {
    return std::exp(poly_eval(f_coeffs, t)) * dd * wd * std::pow(t, dd - 1.0);
  };
  w.g_ = g;
  // Convex polynomial f: the weighted mass diverges unless f is affine with
  // negative slope.
  const bool affine = f_coeffs.size() <= 2;
  const bool decaying = affine && f_coeffs.size() == 2 && f_coeffs[1] < 0.0;
  w.total_ = decaying ? quad::integrate(g, 0.0, kInf) : kInf;
  w.cdf_ = [g](double x) { return quad::integrate(g, 0.0, x); };
  return w;
}

WeightedInterval WeightedInterval::interval(double a, double b) {
  if (!(b > a)) throw config_error("interval weight: need b > a");
  WeightedInterval w;
  w.spec_.family = "interval";
  w.spec_.a = a;
  w.spec_.b = b;
  w.lo_ = a;
  w.hi_ = b;
  w.total_ = b - a;
  w.g_ = [](double) { return 1.0; };
  w.cdf_ = [a](double x) { return x - a; };
  w.inv_ = [a](double v) { return a + v; };
  return w;
}

WeightedInterval WeightedInterval::custom(std::vector<double> xs, std::vector<double> gs) {
  auto interp = MonotoneCubic::build(xs, gs);
  WeightedInterval w;
  w.spec_.family = "custom";
  w.spec_.xs = interp.x;
  w.spec_.gs = interp.y;
  w.lo_ = interp.x.front();
  w.hi_ = interp.x.back();
  w.g_ = [interp](double t) { return std::max(interp(t), 0.0); };
  const double lo = w.lo_;
  auto g = w.g_;
  w.cdf_ = [g, lo](double x) { return quad::integrate(g, lo, x); };
  w.total_ = w.cdf_(w.hi_);
  return w;
}

nlohmann::json WeightedInterval::to_json() const {
  nlohmann::json j;
  j["family"] = spec_.family;
  if (spec_.family == "sphere" || spec_.family == "euclidean") j["N"] = spec_.N;
  if (spec_.family == "cone") { j["N"] = spec_.N; j["avr"] = spec_.avr; }
  if (spec_.family == "exponential") j["h"] = spec_.h;
  if (spec_.family == "double_cone") { j["Q"] = spec_.Q; j["r"] = spec_.r; }
  if (spec_.family == "log_convex") { j["d"] = spec_.d; j["f_coeffs"] = spec_.f_coeffs; }
  if (spec_.family == "interval") { j["a"] = spec_.a; j["b"] = spec_.b; }
  if (spec_.family == "custom") { j["x"] = spec_.xs; j["g"] = spec_.gs; }
  return j;
}

WeightedInterval WeightedInterval::from_json(const nlohmann::json& j) {
  const std::string fam = j.at("family").get<std::string>();
  if (fam == "sphere") return sphere(j.at("N").get<double>());
  if (fam == "euclidean") return euclidean(j.at("N").get<double>());
  if (fam == "cone") return cone(j.at("N").get<double>(), j.at("avr").get<double>());
  if (fam == "gaussian") return gaussian();
  if (fam == "exponential") return exponential(j.at("h").get<double>());
  if (fam == "double_cone") return double_cone(j.at("Q").get<double>(), j.at("r").get<double>());
  if (fam == "log_convex")
    return log_convex(j.at("f_coeffs").get<std::vector<double>>(), j.at("d").get<int>());
  if (fam == "interval") return interval(j.at("a").get<double>(), j.at("b").get<double>());
  if (fam == "custom")
    return custom(j.at("x").get<std::vector<double>>(), j.at("g").get<std::vector<double>>());
  throw config_error("unknown weight family: " + fam);
}

double bbg_factor(double N, double D) {
  if (!(N > 1.0)) throw std::domain_error("bbg_factor: N must be > 1");
  if (!(D > 0.0 && D <= kPi)) throw std::out_of_range("bbg_factor: D outside (0, pi]");
  // int_0^{D/2} cos^{N-1} = (1/2) B(1/2, N/2) I_{sin^2(D/2)}(1/2, N/2), so the
  // ratio against int_0^{pi/2} is 1/I; D = pi gives exactly 1.
  const double s = std::sin(0.5 * D);
  const double I = special::reg_inc_beta(0.5, 0.5 * N, s * s);
  return std::pow(I, -1.0 / N);
}

double sobolev_constant(double p, double N) {
  if (!(p > 1.0 && p < N)) throw std::domain_error("sobolev_constant: requires 1 < p < N");
  const double wN = special::unit_ball_volume(N);
  const double pre = (1.0 / N) * std::pow(N * (p - 1.0) / (N - p), (p - 1.0) / p);
  const double ln_inner = std::lgamma(N + 1.0) -
                          (std::log(N * wN) + std::lgamma(N / p) + std::lgamma(N + 1.0 - N / p));
  return pre * std::exp(ln_inner / N);
}

double logsobolev_constant(double p, double N) {
  if (!(p > 1.0) || !(N > 1.0)) throw std::domain_error("logsobolev_constant: requires p > 1, N > 1");
  const double pc = p / (p - 1.0);
  const double wN = special::unit_ball_volume(N);
  const double ln_tail = std::log(wN) + std::lgamma(N / pc + 1.0);
  return (p / N) * std::pow((p - 1.0) / std::exp(1.0), p - 1.0) * std::exp(-(p / N) * ln_tail);
}

}  // namespace polya
