#include "polya/inequalities.hpp"

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

// C resolved from the generator metadata when the caller does not pin it.
std::pair<double, std::string> resolve_constant(const DiscreteSpace& s,
                                                std::optional<double> C) {
  if (C) {
    if (!(*C > 0.0)) throw precondition_error("pz: constant C must be > 0");
    return {*C, "explicit"};
  }
  const SpaceMetadata& md = s.metadata();
  if (md.model == "sphere")
    return {bbg_factor(md.N, md.diameter), "bbg_factor(N, diam)"};
  if (md.model == "euclidean" || md.model == "sector")
    return {std::pow(md.avr, 1.0 / md.N), "avr^{1/N}"};
  if (md.model == "gaussian") return {1.0, "gaussian"};
  if (md.model == "exponential") return {md.entropy, "entropy h"};
  if (md.model == "interval") return {1.0, "interval"};
  throw precondition_error("pz: no constant supplied and none derivable from metadata");
}

// Conservative lower Riemann sum of |(u*)'|^p against omega over the
// piecewise-linear reconstruction: certifies the right side from below.
double rhs_conservative(const MonotoneProfile& lin, double p) {
  const auto& xs = lin.nodes();
  const auto& vs = lin.values();
  const WeightedInterval& w = lin.weight();
  double rhs = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double len = xs[i + 1] - xs[i];
    if (!(len > 0.0)) continue;
    const double slope = (vs[i + 1] - vs[i]) / len;
    if (slope == 0.0) continue;
    const double g_min = std::min(w.density(xs[i]), w.density(xs[i + 1]));
    rhs += std::pow(std::fabs(slope), p) * g_min * len;
  }
  return rhs;
}

}  // namespace

PZReport pz_deficit(const DiscreteSpace& s, std::span<const double> u,
                    const WeightedInterval& w, std::optional<double> C, double p) {
  if (!(p > 1.0)) throw std::domain_error("pz_deficit: p must be > 1");
  auto [cval, cwhy] = resolve_constant(s, C);
  PZReport r;
  r.p = p;
  r.constant = cval;
  r.lhs = dirichlet_energy(s, u, p);
  const MonotoneProfile ustar = rearrange(to_atoms(s, u), w);
  const MonotoneProfile lin = ustar.refine_linear();
  r.rhs_integral = rhs_conservative(lin, p);
  r.rhs_ac = r.rhs_integral;
  r.deficit = r.lhs - std::pow(cval, p) * r.rhs_integral;
  r.metadata = {{"weight", w.to_json()},
                {"constant_provenance", cwhy},
                {"model", s.metadata().model},
                {"vertices", s.vertex_count()}};
  return r;
}

PZReport pz_bv_deficit(const DiscreteSpace& s, std::span<const double> u,
                       const WeightedInterval& w, std::optional<double> C) {
  auto [cval, cwhy] = resolve_constant(s, C);
  PZReport r;
  r.p = 1.0;
  r.constant = cval;
  r.lhs = total_variation(s, u);
  const MonotoneProfile ustar = rearrange(to_atoms(s, u), w);
  // TV(u*) of a step profile is purely atomic: atoms (v_j - v_{j+1}) at the
  // interior breakpoints
  const auto& values = ustar.values();
  const auto& breaks = ustar.breaks();
  double rhs = 0.0;
  for (std::size_t j = 0; j + 1 < values.size(); ++j)
    rhs += w.density(breaks[j]) * (values[j] - values[j + 1]);
  r.rhs_integral = rhs;
  r.rhs_jump = rhs;
  r.rhs_ac = 0.0;
  r.deficit = r.lhs - cval * rhs;
  r.metadata = {{"weight", w.to_json()},
                {"constant_provenance", cwhy},
                {"model", s.metadata().model},
                {"split", "step representation: TV(u*) is all jump"}};
  return r;
}

StabilityReport lichnerowicz_deficit(double N, double p, double diam, double rayleigh_quotient,
                                     EigenOptions opt) {
  if (!(N > 1.0) || !(p > 1.0)) throw std::domain_error("lichnerowicz_deficit: need N > 1, p > 1");
  if (!(diam > 0.0 && diam <= kPi + 1e-12))
    throw std::out_of_range("lichnerowicz_deficit: diameter outside (0, pi]");
  const EigenResult model = neumann_eigenvalue(WeightedInterval::sphere(N), p, opt);
  const double gap = model.lambda;
  // chain-sampled quotients carry O(h^2) slack; anything further below the gap
  // signals inconsistent input data
  if (rayleigh_quotient < gap * (1.0 - 1e-4))
    throw inconsistency_error("lichnerowicz_deficit: quotient below the model gap");
  StabilityReport r;
  r.geometric_side = std::pow(std::max(kPi - diam, 0.0), N);
  r.analytic_deficit = std::max(rayleigh_quotient - gap, 0.0);
  r.empirical_ratio = r.analytic_deficit > 0.0 ? r.geometric_side / r.analytic_deficit : 0.0;
  r.metadata = {{"model_gap", gap}, {"N", N}, {"p", p}, {"diam", diam}};
  return r;
}

SobolevNorms sobolev_norms(const DiscreteSpace& s, std::span<const double> u, double q) {
  SobolevNorms n;
  n.mass = s.total_mass();
  double l2 = 0.0, lq = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    l2 += u[i] * u[i] * s.vertex_mass()[i];
    lq += std::pow(std::fabs(u[i]), q) * s.vertex_mass()[i];
  }
  n.l2 = std::sqrt(l2);
  n.lq = std::pow(lq, 1.0 / q);
  n.energy2 = dirichlet_energy(s, u, 2.0);
  return n;
}

StabilityReport sobolev_deficit_compact(double N, double q, double diam,
                                        const SobolevNorms& n) {
  if (!(q > 2.0)) throw std::domain_error("sobolev_deficit_compact: q must exceed 2");
  if (!(n.energy2 > 0.0))
    throw degenerate_level_error("sobolev_deficit_compact: constant function input");
  bool in_range = true;
  if (N > 2.0 && q > 2.0 * N / (N - 2.0) + 1e-12) in_range = false;
  StabilityReport r;
  const double mscale = std::pow(n.mass, 2.0 / q - 1.0);
  r.geometric_side = std::pow(std::max(kPi - diam, 0.0), N);
  r.analytic_deficit =
      (q - 2.0) / N - (n.lq * n.lq - mscale * n.l2 * n.l2) / (mscale * n.energy2);
  r.empirical_ratio = r.analytic_deficit > 0.0 ? r.geometric_side / r.analytic_deficit : 0.0;
  r.metadata = {{"N", N}, {"q", q}, {"diam", diam},
                {"q_in_stated_range", in_range}};
  return r;
}

StabilityReport logsobolev_deficit_compact(const DiscreteSpace& s, std::span<const double> u,
                                           double N, double diam) {
  const auto& mass = s.vertex_mass();
  double l1 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) l1 += std::fabs(u[i]) * mass[i];
  if (!(l1 > 0.0)) throw degenerate_level_error("logsobolev_deficit_compact: zero function");
  std::vector<double> v(u.size()), root(u.size());
  // entropy against the probability-normalized measure: exactly 0 for
  // constants even when the chain total mass is 1 only to quadrature accuracy
  const double T = s.total_mass();
  double entropy = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    v[i] = std::fabs(u[i]) / l1;
    root[i] = std::sqrt(v[i]);
    if (v[i] > 0.0) entropy += v[i] * std::log(v[i] * T) * mass[i];
  }
  if (!(entropy > 1e-13))
    throw degenerate_level_error("logsobolev_deficit_compact: zero entropy denominator");
  // int |Dv|^2 / v = 4 int |D sqrt(v)|^2 (chain rule on {v > 0})
  const double fisher = 4.0 * dirichlet_energy(s, root, 2.0);
  StabilityReport r;
  r.geometric_side = std::pow(std::max(kPi - diam, 0.0), N);
  r.analytic_deficit = fisher / entropy - 2.0 * N;
  r.empirical_ratio = r.analytic_deficit > 0.0 ? r.geometric_side / r.analytic_deficit : 0.0;
  r.metadata = {{"N", N}, {"diam", diam}, {"entropy", entropy}, {"fisher", fisher}};
  return r;
}

RadialProfile bliss_extremal(double a, double b, double p, double N) {
  if (a == 0.0 || !(b > 0.0)) throw std::domain_error("bliss_extremal: need a != 0, b > 0");
  if (!(p > 1.0 && p < N)) throw std::domain_error("bliss_extremal: need 1 < p < N");
  const double pc = p / (p - 1.0);
  const double expo = (N - p) / p;
  RadialProfile u;
  u.value = [a, b, pc, expo](double t) { return a * std::pow(1.0 + b * std::pow(t, pc), -expo); };
  u.derivative = [a, b, pc, expo](double t) {
    return -a * expo * b * pc * std::pow(t, pc - 1.0) *
           std::pow(1.0 + b * std::pow(t, pc), -expo - 1.0);
  };
  return u;
}

RadialProfile logsobolev_extremal(double p, double N, double avr, double lambda) {
  if (!(p > 1.0) || !(N > 1.0) || !(avr > 0.0) || !(lambda > 0.0))
    throw std::domain_error("logsobolev_extremal: need p > 1, N > 1, avr > 0, lambda > 0");
  const double pc = p / (p - 1.0);
  const double wN = special::unit_ball_volume(N);
  const double A = std::pow(lambda, N / (p * pc)) *
                   std::pow(avr * wN * std::tgamma(N / pc + 1.0), -1.0 / p);
  RadialProfile u;
  u.value = [A, lambda, pc, p](double t) { return A * std::exp(-lambda * std::pow(t, pc) / p); };
  u.derivative = [A, lambda, pc, p](double t) {
    return -A * (lambda * pc / p) * std::pow(t, pc - 1.0) *
           std::exp(-lambda * std::pow(t, pc) / p);
  };
  return u;
}

namespace {
double cone_integral(const std::function<double(double)>& f, double N, double avr) {
  const double wN = special::unit_ball_volume(N);
  auto integrand = [&f, N, avr, wN](double t) {
    return f(t) * avr * N * wN * std::pow(t, N - 1.0);
  };
  return quad::integrate(integrand, 0.0, kInf);
}
}  // namespace

EqualityReport avr_sobolev_check(const RadialProfile& u, double p, double N, double avr) {
  if (!(p > 1.0 && p < N)) throw std::domain_error("avr_sobolev_check: need 1 < p < N");
  if (!(avr > 0.0 && avr <= 1.0)) throw std::out_of_range("avr_sobolev_check: AVR outside (0,1]");
  const double pstar = p * N / (N - p);
  const double lhs_pow = cone_integral(
      [&u, pstar](double t) { return std::pow(std::fabs(u.value(t)), pstar); }, N, avr);
  const double grad_pow = cone_integral(
      [&u, p](double t) { return std::pow(std::fabs(u.derivative(t)), p); }, N, avr);
  if (!std::isfinite(lhs_pow) || !std::isfinite(grad_pow))
    throw std::domain_error("avr_sobolev_check: divergent norms");
  EqualityReport r;
  r.lhs = std::pow(lhs_pow, 1.0 / pstar);
  r.rhs = sobolev_constant(p, N) * std::pow(avr, -1.0 / N) * std::pow(grad_pow, 1.0 / p);
  r.relative_gap = (r.rhs - r.lhs) / r.rhs;
  return r;
}

EqualityReport avr_logsobolev_check(const RadialProfile& u, double p, double N, double avr) {
  if (!(p > 1.0) || !(N > 1.0)) throw std::domain_error("avr_logsobolev_check: need p > 1, N > 1");
  const double norm_p = cone_integral(
      [&u, p](double t) { return std::pow(std::fabs(u.value(t)), p); }, N, avr);
  if (std::fabs(norm_p - 1.0) > 1e-6)
    throw precondition_error("avr_logsobolev_check: profile not L^p-normalized");
  const double entropy = cone_integral(
      [&u, p](double t) {
        const double a = std::pow(std::fabs(u.value(t)), p);
        return a > 0.0 ? a * std::log(a) : 0.0;
      },
      N, avr);
  const double grad_pow = cone_integral(
      [&u, p](double t) { return std::pow(std::fabs(u.derivative(t)), p); }, N, avr);
  EqualityReport r;
  r.lhs = entropy;
  r.rhs = (N / p) * std::log(logsobolev_constant(p, N) * std::pow(avr, -p / N) * grad_pow);
  r.relative_gap = (r.rhs - r.lhs) / std::max(1.0, std::fabs(r.rhs));
  return r;
}

OutsideConvexConstant outside_convex_constant(double p, int d) {
  if (!(p > 1.0 && p < static_cast<double>(d)))
    throw std::domain_error("outside_convex_constant: need 1 < p < d");
  const double dd = static_cast<double>(d);
  OutsideConvexConstant out;
  out.sharp_constant = sobolev_constant(p, dd);
  out.printed_factor = std::pow(2.0, -1.0 / dd);
  const RadialProfile u = bliss_extremal(1.0, 1.0, p, dd);
  const double pstar = p * dd / (dd - p);
  // half-space = AVR 1/2 cone
  const double lhs = std::pow(
      cone_integral([&u, pstar](double t) { return std::pow(std::fabs(u.value(t)), pstar); }, dd,
                    0.5),
      1.0 / pstar);
  const double grad = std::pow(
      cone_integral([&u, p](double t) { return std::pow(std::fabs(u.derivative(t)), p); }, dd,
                    0.5),
      1.0 / p);
  out.verified_factor = lhs / (out.sharp_constant * grad);
  out.printed_consistent =
      std::fabs(out.verified_factor - out.printed_factor) <= 1e-9 * out.printed_factor;
  return out;
}

EigenResult log_convex_faber_krahn(const std::vector<double>& f_coeffs, int d, double p,
                                   double volume, EigenOptions opt) {
  if (!(volume > 0.0)) throw config_error("log_convex_faber_krahn: volume must be > 0");
  const WeightedInterval w = WeightedInterval::log_convex(f_coeffs, d);
  // find rho with weighted volume of the centered ball equal to `volume`
  double lo = 0.0, hi = 1.0;
  int grow = 0;
  while (w.mass_between(0.0, hi) < volume) {
    hi *= 2.0;
    if (++grow > 400) throw config_error("log_convex_faber_krahn: volume root-find failure");
  }
  double rho = 0.5 * hi;
  for (int it = 0; it < 200; ++it) {
    rho = 0.5 * (lo + hi);
    const double m = w.mass_between(0.0, rho);
    if (std::fabs(m - volume) <= 1e-12 * volume) break;
    if (m < volume) lo = rho; else hi = rho;
  }
  return dirichlet_eigenvalue(w, rho, p, opt);
}

double neumann_lower_bound(double Q, double C, double p, double mass, EigenOptions opt) {
  if (!(Q > 1.0) || !(C > 0.0) || !(mass > 0.0))
    throw std::domain_error("neumann_lower_bound: need Q > 1, C > 0, mass > 0");
  const double R = std::pow(mass / special::unit_ball_volume(Q), 1.0 / Q);
  const EigenResult eig = dirichlet_eigenvalue(WeightedInterval::euclidean(Q), R, p, opt);
  return std::pow(C, p) * std::pow(2.0, p / Q) * eig.lambda;
}

double gaussian_profile(double v) {
  if (!(v > 0.0 && v < 1.0)) throw std::out_of_range("gaussian_profile: v outside (0,1)");
  return special::normal_pdf(special::normal_quantile(v));
}

DiameterProfilePoint gaussian_diameter_profile(double D, double v) {
  if (!(D > 0.0)) throw std::domain_error("gaussian_diameter_profile: D must be > 0");
  if (!(v > 0.0 && v < 1.0))
    throw std::out_of_range("gaussian_diameter_profile: v outside (0,1)");
  auto f = [D, v](double xi) {
    const double Plo = special::normal_cdf(xi);
    const double Phi = special::normal_cdf(xi + D);
    const double M = Phi - Plo;
    if (!(M > 0.0)) return kInf;
    double target = Plo + v * M;
    target = std::clamp(target, 1e-300, 1.0 - 1e-16);
    const double b = special::normal_quantile(target);
    return special::normal_pdf(b) / M;
  };
  // window (xi, xi+D) far left of the v-quantile can only lose; bracket wide
  // enough that the scan sees the interior minimum, clamped clear of cdf
  // underflow
  const double qv = special::normal_quantile(std::min(v, 0.5));
  const double lo = std::max(-36.0, std::min(-8.0, qv - 22.0) - D);
  const double hi = 8.0;
  const int n_scan = 600;
  double best = kInf, best_xi = lo;
  for (int i = 0; i <= n_scan; ++i) {
    const double xi = lo + (hi - lo) * i / n_scan;
    const double val = f(xi);
    if (val < best) { best = val; best_xi = xi; }
  }
  // golden-section refinement around the scan minimum
  const double step = (hi - lo) / n_scan;
  double a = std::max(lo, best_xi - step), b = std::min(hi, best_xi + step);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), e = a + gr * (b - a);
  for (int it = 0; it < 120 && (b - a) > 1e-12; ++it) {
    if (f(c) < f(e)) { b = e; } else { a = c; }
    c = b - gr * (b - a);
    e = a + gr * (b - a);
  }
  DiameterProfilePoint out;
  out.minimizer = 0.5 * (a + b);
  out.value = f(out.minimizer);
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.on_boundary = (best_xi <= lo + 0.5 * step) || (best_xi >= hi - 0.5 * step);
  return out;
}

}  // namespace polya
