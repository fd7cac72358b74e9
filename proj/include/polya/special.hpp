#pragma once

namespace polya::special {

// Volume of the unit ball, pi^{N/2}/Gamma(N/2+1), for real N > 0.
double unit_ball_volume(double N);

// c_N = 1 / int_0^pi sin^{N-1}(t) dt = Gamma((N+1)/2) / (sqrt(pi) Gamma(N/2)), N > 1.
double sphere_weight_norm(double N);

// Regularized incomplete beta I_x(a,b) and its inverse in x (continued fraction /
// safeguarded Newton). Relative accuracy ~1e-14 for a,b in the ranges used here.
double reg_inc_beta(double a, double b, double x);
// Variant taking the complement 1-x explicitly; callers that know xc without
// cancellation (e.g. cos^2 vs 1 - sin^2) keep full precision near x = 1.
double reg_inc_beta_c(double a, double b, double x, double xc);
double inv_reg_inc_beta(double a, double b, double p);

double normal_pdf(double x);
double normal_cdf(double x);
// Inverse of normal_cdf, robust down to p ~ 1e-300 (tail Newton refinement).
double normal_quantile(double p);

}  // namespace polya::special
