#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polya/weights.hpp"

namespace polya {

enum class BoundaryType { dirichlet_right, neumann };

struct EigenOptions {
  std::size_t grid = 2000;
  double tol = 1e-8;            // relative eigenvalue tolerance
  std::size_t max_iter = 60000;
  double truncation = 10.0;     // half-width used when the weight interval is unbounded
};

struct EigenResult {
  double lambda = 0.0;
  std::vector<double> x;        // grid nodes
  std::vector<double> f;        // eigenfunction values, ||f||_{L^p(g)} = 1
  double rayleigh = 0.0;        // quotient of the returned function, recomputed
  double ode_residual = 0.0;    // relative L^1 residual of (|f'|^{p-2}f' g)' = -lambda g |f|^{p-2}f
  std::size_t iterations = 0;
  BoundaryType boundary = BoundaryType::dirichlet_right;
  double p = 2.0;
};

// First Dirichlet eigenvalue of [w.lower(), rho) with zero condition at rho
// only (natural condition at the possibly degenerate left endpoint). p = 2 uses
// inverse power iteration on the P1 generalized problem; p != 2 projected
// gradient descent on the normalized Rayleigh quotient initialized from p = 2.
EigenResult dirichlet_eigenvalue(const WeightedInterval& w, double rho, double p,
                                 EigenOptions opt = {});

// First nontrivial Neumann eigenvalue under the constraint int |f|^{p-2} f g = 0.
EigenResult neumann_eigenvalue(const WeightedInterval& w, double p, EigenOptions opt = {});

struct OdeResidual {
  double l1 = 0.0;        // raw discrete L^1 norm over interior nodes
  double relative = 0.0;  // normalized by lambda * int g |f|^{p-1}
  // the divided-by-g form (|f'|^{p-2}f')' + |f'|^{p-2}f'(log g)' + lambda|f|^{p-2}f,
  // accumulated where g is bounded away from zero; normalized likewise
  double log_form = 0.0;
};
OdeResidual ode_residual(const WeightedInterval& w, double p, double lambda,
                         std::span<const double> x, std::span<const double> f);

struct HalfIntervalCheck {
  EigenResult neumann;         // lambda_p^N of the double cone on [0, 2r]
  EigenResult dirichlet_half;  // lambda_p^D of [0, r) with the cone weight
};
// Both sides of lambda_p(I_{Q,r}) = lambda_p^D([0,r)) with independent solvers
// on nested grids.
HalfIntervalCheck half_interval_check(double Q, double r, double p, EigenOptions opt = {});

}  // namespace polya
