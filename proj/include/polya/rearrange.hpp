#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "polya/weights.hpp"

namespace polya {

struct Atom {
  double value = 0.0;
  double mass = 0.0;  // > 0
};

// Finite atomic surrogate of (u, m): value/mass pairs.
class SampledFunction {
 public:
  SampledFunction() = default;
  explicit SampledFunction(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double total_mass() const { return total_; }
  double ess_inf() const { return ess_inf_; }
  double ess_sup() const { return ess_sup_; }

  nlohmann::json to_json() const;
  static SampledFunction from_json(const nlohmann::json& j);

 private:
  std::vector<Atom> atoms_;
  double total_ = 0.0;
  double ess_inf_ = 0.0, ess_sup_ = 0.0;
};

// mu(t) = m({u > t}) for an atomic u: a right-continuous non-increasing step
// function. Atoms with equal values are merged on construction.
class DistributionFunction {
 public:
  explicit DistributionFunction(const SampledFunction& u);

  double operator()(double t) const;            // mu(t), exact finite sum
  double generalized_inverse(double s) const;   // u^#(s); s > 0 (s <= 0 -> range error)

  // Distinct values in decreasing order and cum_mass[j] = m({u >= values[j]}).
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& cum_mass() const { return cum_; }
  double total_mass() const { return cum_.empty() ? 0.0 : cum_.back(); }
  double ess_inf() const { return values_.empty() ? 0.0 : values_.back(); }
  double ess_sup() const { return values_.empty() ? 0.0 : values_.front(); }

 private:
  std::vector<double> values_, cum_;
};

// The rearranged function u* on Omega* = (l*, r*). Two representations:
//   step   — exact for atomic input: values v_1 > ... > v_k on (x_{j-1}, x_j],
//            with cum_mass[j] = omega((l*, x_j]) carried exactly;
//   linear — a piecewise-linear refinement for derivative-based operations.
class MonotoneProfile {
 public:
  enum class Rep { step, linear };

  static MonotoneProfile step(WeightedInterval w, std::vector<double> values,
                              std::vector<double> breaks, std::vector<double> cum_mass,
                              double l_star, double r_star);
  static MonotoneProfile linear(WeightedInterval w, std::vector<double> xs,
                                std::vector<double> vs);

  Rep rep() const { return rep_; }
  const WeightedInterval& weight() const { return weight_; }
  double l_star() const { return l_star_; }
  double r_star() const { return r_star_; }

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& breaks() const { return breaks_; }      // step rep
  const std::vector<double>& cum_mass() const { return cum_; }       // step rep
  const std::vector<double>& nodes() const { return breaks_; }       // linear rep

  double operator()(double x) const;  // left-continuous evaluation
  double mu(double t) const;          // omega({u* > t}); exact for the step rep
  double ess_inf() const;
  double ess_sup() const;
  double total_mass() const;

  // Plateau-midpoint piecewise-linear reconstruction of the step profile.
  MonotoneProfile refine_linear() const;

  nlohmann::json to_json() const;
  static MonotoneProfile from_json(const nlohmann::json& j);

 private:
  Rep rep_ = Rep::step;
  WeightedInterval weight_;
  std::vector<double> values_;  // step: plateau values; linear: node values
  std::vector<double> breaks_;  // step: plateau right ends;  linear: node positions
  std::vector<double> cum_;     // step only
  double l_star_ = 0.0, r_star_ = 0.0;
};

// Exact superlevel mass of atoms above t.
double distribution(const SampledFunction& u, double t);

// u^* = u^# o F_omega as an exact step profile. Throws precondition_error on
// mass incompatibility m(Omega) > omega(R).
MonotoneProfile rearrange(const SampledFunction& u, const WeightedInterval& w);

// Omega* = (l*, r*) for a given total mass.
std::pair<double, double> omega_star(const WeightedInterval& w, double total_mass);

// r_t = F^{-1}(mu(t)) for t strictly between the essential bounds.
double level_radius(const SampledFunction& u, const WeightedInterval& w, double t);

struct MuDerivativeCheck {
  double lhs = 0.0;  // finite-difference -mu'(t)
  double rhs = 0.0;  // g(r_t) / |(u*)'(r_t)|
  double r_t = 0.0;
};
// Requires a linear-representation profile, strictly decreasing near level t;
// throws degenerate_level_error on plateaus.
MuDerivativeCheck mu_derivative_check(const MonotoneProfile& u_star, double t);

struct EquimeasurabilityReport {
  double worst_exact = 0.0;       // superlevel/level/sublevel bookkeeping paths
  double worst_quadrature = 0.0;  // composition/norm identities through the weight cdf
  double worst() const { return worst_exact > worst_quadrature ? worst_exact : worst_quadrature; }
};
// Verifies superlevel/level/sublevel masses, the composition identity for the
// supplied continuous G's, and L^p norm identities on the atom value grid.
EquimeasurabilityReport equimeasurability_report(
    const SampledFunction& u, const MonotoneProfile& u_star,
    const std::vector<std::function<double(double)>>& Gs = {},
    const std::vector<double>& p_norms = {1.0, 2.0});

// Step profile back to atoms (plateau masses).
SampledFunction atomize(const MonotoneProfile& u_star);

}  // namespace polya
