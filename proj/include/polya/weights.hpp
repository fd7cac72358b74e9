#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace polya {

// Hölder-conjugate bookkeeping for the exponents that recur in the constants.
struct ModelConstants {
  double p = 2.0;
  double N = 2.0;
  double p_conjugate() const { return p / (p - 1.0); }
  double p_star() const;  // pN/(N-p); requires 1 < p < N
};

// Serializable description of a weight family; doubles unused by a family stay 0.
struct WeightSpec {
  std::string family;              // sphere|euclidean|cone|gaussian|exponential|double_cone|log_convex|interval|custom
  double N = 0.0;                  // sphere, euclidean, cone
  double avr = 0.0;                // cone
  double h = 0.0;                  // exponential
  double Q = 0.0, r = 0.0;         // double_cone
  int d = 0;                       // log_convex
  std::vector<double> f_coeffs;    // log_convex: convex polynomial f(t) = sum c_k t^k
  double a = 0.0, b = 0.0;         // interval
  std::vector<double> xs, gs;      // custom table
};

// An open interval with a continuous positive density: the rearrangement target
// (I, omega = g dt). Families carry closed-form cdf/inverse where available;
// log_convex and custom fall back to adaptive quadrature plus bracketed root
// finding (geometric bracket growth on unbounded intervals).
class WeightedInterval {
 public:
  WeightedInterval() = default;

  static WeightedInterval sphere(double N);
  static WeightedInterval euclidean(double N);
  static WeightedInterval cone(double N, double avr);  // avr * euclidean(N) density
  static WeightedInterval gaussian();
  static WeightedInterval exponential(double h);
  static WeightedInterval double_cone(double Q, double r);
  static WeightedInterval log_convex(std::vector<double> f_coeffs, int d);
  static WeightedInterval interval(double a, double b);  // unit density on (a,b)
  static WeightedInterval custom(std::vector<double> xs, std::vector<double> gs);

  double lower() const { return lo_; }
  double upper() const { return hi_; }
  double total_mass() const { return total_; }
  const WeightSpec& spec() const { return spec_; }

  double density(double x) const;  // continuous extension on [lower, upper]
  double cdf(double x) const;      // throws std::domain_error off the open interval
  double inv_cdf(double v) const;  // throws std::out_of_range unless 0 < v < total_mass
  double profile(double v) const;  // g(F^{-1}(v)); profile(0) = 0 exactly

  // cdf difference clamped to [lower, upper]; exact-path mass of a cell.
  double mass_between(double a, double b) const;

  nlohmann::json to_json() const;
  static WeightedInterval from_json(const nlohmann::json& j);

 private:
  WeightSpec spec_;
  double lo_ = 0.0, hi_ = 1.0, total_ = 1.0;
  std::function<double(double)> g_;
  std::function<double(double)> cdf_;  // closed interval semantics
  std::function<double(double)> inv_;  // may be empty -> generic bracketing

  double cdf_raw(double x) const;  // no open-interval guard
};

// Diameter improvement factor of the Lévy–Gromov inequality,
// (int_0^{pi/2} cos^{N-1} / int_0^{D/2} cos^{N-1})^{1/N}, D in (0, pi].
double bbg_factor(double N, double D);

// Sharp Sobolev constant S_{p,N} for 1 < p < N (Gamma-function closed form).
double sobolev_constant(double p, double N);

// Sharp log-Sobolev constant L_{p,N} = (p/N)((p-1)/e)^{p-1}(omega_N Gamma(N/p'+1))^{-p/N}.
double logsobolev_constant(double p, double N);

}  // namespace polya
