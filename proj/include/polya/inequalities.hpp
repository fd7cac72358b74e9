#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "polya/discrete_space.hpp"
#include "polya/eigen1d.hpp"
#include "polya/rearrange.hpp"
#include "polya/weights.hpp"

namespace polya {

struct PZReport {
  double lhs = 0.0;           // Dirichlet p-energy (or total variation) of u
  double rhs_integral = 0.0;  // int |(u*)'|^p domega (or int g dTV(u*))
  double constant = 1.0;      // C (the report multiplies by C^p / C itself)
  double deficit = 0.0;       // lhs - C^p * rhs_integral
  double p = 2.0;
  // BV split of the rearranged side (step representation: all jump)
  double rhs_jump = 0.0;
  double rhs_ac = 0.0;
  nlohmann::json metadata;
};

// Polya-Szego deficit: lhs via the graph p-energy, u* via rearrangement with a
// plateau-midpoint piecewise-linear refinement, rhs via the conservative lower
// Riemann segment rule (certifies deficit >= -eps_grid at first order). If C is
// not supplied it is filled from the space metadata: BBG_N(diam) for sphere
// models, AVR^{1/N} for cone-type models, 1 for Gaussian, h for exponential.
PZReport pz_deficit(const DiscreteSpace& s, std::span<const double> u,
                    const WeightedInterval& w, std::optional<double> C, double p);

// BV version: lhs = total variation, rhs = sum g(x_j) * jump_j from the exact
// step representation.
PZReport pz_bv_deficit(const DiscreteSpace& s, std::span<const double> u,
                       const WeightedInterval& w, std::optional<double> C);

struct StabilityReport {
  double geometric_side = 0.0;   // (pi - diam)^N
  double analytic_deficit = 0.0;
  double empirical_ratio = 0.0;  // geometric_side / analytic_deficit (0 when deficit == 0)
  nlohmann::json metadata;
};

// Model spectral-gap deficit against lambda_{p,N-1,N} (computed by eigen1d).
StabilityReport lichnerowicz_deficit(double N, double p, double diam, double rayleigh_quotient,
                                     EigenOptions opt = {});

struct SobolevNorms {
  double l2 = 0.0;      // ||u||_2
  double lq = 0.0;      // ||u||_q
  double energy2 = 0.0; // ||Du||_2^2
  double mass = 1.0;    // m(X)
};
StabilityReport sobolev_deficit_compact(double N, double q, double diam, const SobolevNorms& n);
SobolevNorms sobolev_norms(const DiscreteSpace& s, std::span<const double> u, double q);

StabilityReport logsobolev_deficit_compact(const DiscreteSpace& s, std::span<const double> u,
                                           double N, double diam);

struct RadialProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

// Decaying Bliss profile a (1 + b t^{p'})^{-(N-p)/p} with closed-form derivative.
RadialProfile bliss_extremal(double a, double b, double p, double N);

// Gaussian-type log-Sobolev extremal, normalized so int |u|^p dm = 1 against
// the cone measure avr * m_{0,N}.
RadialProfile logsobolev_extremal(double p, double N, double avr, double lambda);

struct EqualityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_gap = 0.0;  // (rhs - lhs) / rhs; > 0 means strict inequality
};

// ||u||_{p*} vs S_{p,N} AVR^{-1/N} ||u'||_p by adaptive quadrature against the
// cone measure avr * N omega_N t^{N-1} dt.
EqualityReport avr_sobolev_check(const RadialProfile& u, double p, double N, double avr);

// int |u|^p log |u|^p dm vs (N/p) log(L_{p,N} AVR^{-p/N} ||u'||_p^p); requires
// int |u|^p dm = 1 within tolerance.
EqualityReport avr_logsobolev_check(const RadialProfile& u, double p, double N, double avr);

struct OutsideConvexConstant {
  double sharp_constant = 0.0;    // S_{p,d}
  double printed_factor = 0.0;    // 2^{-1/d} (as printed)
  double verified_factor = 0.0;   // half-space restriction oracle (= 2^{1/d})
  bool printed_consistent = false;
};
OutsideConvexConstant outside_convex_constant(double p, int d);

// Weighted Faber-Krahn: finds rho with the prescribed weighted volume, then the
// Dirichlet p-eigenvalue of the centered ball with the log-convex radial weight.
EigenResult log_convex_faber_krahn(const std::vector<double>& f_coeffs, int d, double p,
                                   double volume, EigenOptions opt = {});

// C^p 2^{p/Q} lambda^D_{p,Q,R} with omega_Q R^Q = mass.
double neumann_lower_bound(double Q, double C, double p, double mass, EigenOptions opt = {});

struct DiameterProfilePoint {
  double value = 0.0;      // inf_xi f_D(xi, v)
  double minimizer = 0.0;  // arg min xi
  double bracket_lo = 0.0, bracket_hi = 0.0;
  bool on_boundary = false;  // minimizer escaped to the bracket edge
};
// Diameter-restricted Gaussian profile inf_xi e^{-b(xi,v)^2/2} / int_xi^{xi+D} e^{-t^2/2}.
DiameterProfilePoint gaussian_diameter_profile(double D, double v);

// Unrestricted Gaussian isoperimetric profile at mass v.
double gaussian_profile(double v);

}  // namespace polya
