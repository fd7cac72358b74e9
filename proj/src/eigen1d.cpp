#include "polya/eigen1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "polya/errors.hpp"

namespace polya {

namespace {

// 5-point Gauss-Legendre on [-1,1]
constexpr double kGlx[5] = {-0.906179845938663992797626878299, -0.538469310105683091036314420700,
                            0.0, 0.538469310105683091036314420700,
                            0.906179845938663992797626878299};
constexpr double kGlw[5] = {0.236926885056189087514264040720, 0.478628670499366468041291514836,
                            0.568888888888888888888888888889, 0.478628670499366468041291514836,
                            0.236926885056189087514264040720};

struct ElementData {
  double xq[5];   // quadrature abscissae
  double wg[5];   // quadrature weight * density
  double G = 0.0; // int_e g
};

struct Mesh {
  std::vector<double> x;           // nodes 0..n
  std::vector<ElementData> elems;  // n elements
  double h = 0.0;
};

Mesh build_mesh(const WeightedInterval& w, double a, double b, std::size_t n) {
  if (n < 16) throw config_error("eigen1d: grid must be >= 16");
  Mesh m;
  m.h = (b - a) / static_cast<double>(n);
  m.x.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) m.x[i] = a + m.h * static_cast<double>(i);
  m.elems.resize(n);
  for (std::size_t e = 0; e < n; ++e) {
    const double c = 0.5 * (m.x[e] + m.x[e + 1]);
    const double half = 0.5 * m.h;
    ElementData d;
    for (int q = 0; q < 5; ++q) {
      d.xq[q] = c + half * kGlx[q];
      d.wg[q] = half * kGlw[q] * w.density(d.xq[q]);
      d.G += d.wg[q];
    }
    m.elems[e] = d;
  }
  return m;
}

struct TriMat {
  std::vector<double> d;  // diagonal
  std::vector<double> e;  // super/sub diagonal
  std::size_t size() const { return d.size(); }

  void matvec(std::span<const double> v, std::span<double> out) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) {
      double s = d[i] * v[i];
      if (i > 0) s += e[i - 1] * v[i - 1];
      if (i + 1 < n) s += e[i] * v[i + 1];
      out[i] = s;
    }
  }
};

// Thomas solve for SPD tridiagonal systems.
void tridiag_solve(const TriMat& A, std::vector<double> rhs, std::span<double> out) {
  const std::size_t n = A.size();
  std::vector<double> c(n, 0.0);
  double piv = A.d[0];
  c[0] = (n > 1) ? A.e[0] / piv : 0.0;
  rhs[0] /= piv;
  for (std::size_t i = 1; i < n; ++i) {
    piv = A.d[i] - A.e[i - 1] * c[i - 1];
    if (i + 1 < n) c[i] = A.e[i] / piv;
    rhs[i] = (rhs[i] - A.e[i - 1] * rhs[i - 1]) / piv;
  }
  out[n - 1] = rhs[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) out[i] = rhs[i] - c[i] * out[i + 1];
}

// P1 stiffness/consistent-mass assembly; Dirichlet-at-right drops the last node.
void assemble(const Mesh& m, bool dirichlet_right, TriMat& K, TriMat& M) {
  const std::size_t n_nodes = m.x.size() - (dirichlet_right ? 1 : 0);
  K.d.assign(n_nodes, 0.0);
  K.e.assign(n_nodes > 0 ? n_nodes - 1 : 0, 0.0);
  M.d.assign(n_nodes, 0.0);
  M.e.assign(n_nodes > 0 ? n_nodes - 1 : 0, 0.0);
  const double h = m.h;
  for (std::size_t e = 0; e < m.elems.size(); ++e) {
    const ElementData& d = m.elems[e];
    const double ke = d.G / (h * h);
    double mLL = 0.0, mRR = 0.0, mLR = 0.0;
    for (int q = 0; q < 5; ++q) {
      const double sR = (d.xq[q] - m.x[e]) / h;
      const double sL = 1.0 - sR;
      mLL += d.wg[q] * sL * sL;
      mRR += d.wg[q] * sR * sR;
      mLR += d.wg[q] * sL * sR;
    }
    const bool right_in = (e + 1 < n_nodes);
    K.d[e] += ke;
    M.d[e] += mLL;
    if (right_in) {
      K.d[e + 1] += ke;
      M.d[e + 1] += mRR;
      K.e[e] -= ke;
      M.e[e] += mLR;
    }
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Smallest generalized eigenpair of (K, M) after deflating `constant` mode if
// neumann. Shift-inverted power iteration; sigma > 0 keeps the factorization SPD.
std::pair<double, std::vector<double>> smallest_mode(const TriMat& K, const TriMat& M,
                                                     bool neumann, double tol,
                                                     std::size_t max_iter,
                                                     std::size_t* iters_out) {
  const std::size_t n = K.size();
  std::vector<double> v(n), Mv(n), Kv(n), ones;
  std::vector<double> M1;
  double m11 = 0.0;
  if (neumann) {
    ones.assign(n, 1.0);
    M1.assign(n, 0.0);
    M.matvec(ones, M1);
    m11 = dot(ones, M1);
  }
  // start: decreasing ramp (one sign change for neumann after deflation)
  for (std::size_t i = 0; i < n; ++i)
    v[i] = 1.0 - 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
  auto deflate = [&](std::vector<double>& vec) {
    if (!neumann) return;
    const double c = dot(vec, M1) / m11;
    for (std::size_t i = 0; i < n; ++i) vec[i] -= c;
  };
  auto rq = [&](const std::vector<double>& vec) {
    K.matvec(vec, Kv);
    M.matvec(vec, Mv);
    return dot(vec, Kv) / dot(vec, Mv);
  };
  deflate(v);
  double lam = rq(v);
  const double sigma = neumann ? std::max(1e-12, 0.5 * lam) : 0.0;
  TriMat A = K;
  if (sigma > 0.0) {
    for (std::size_t i = 0; i < n; ++i) A.d[i] += sigma * M.d[i];
    for (std::size_t i = 0; i + 1 < n; ++i) A.e[i] += sigma * M.e[i];
  }
  std::size_t it = 0;
  double prev = lam;
  for (; it < max_iter; ++it) {
    M.matvec(v, Mv);
    tridiag_solve(A, Mv, v);
    deflate(v);
    const double nrm = std::sqrt(std::max(dot(v, v), 1e-300));
    for (double& vi : v) vi /= nrm;
    lam = rq(v);
    if (std::fabs(lam - prev) <= tol * std::fabs(lam) * 1e-4 + 1e-16) break;
    prev = lam;
  }
  if (iters_out) *iters_out = it;
  if (it >= max_iter) {
    std::ostringstream os;
    os << "eigen1d: inverse iteration did not converge; last lambda = " << lam;
    throw solver_error(os.str());
  }
  return {lam, v};
}

struct PObjective {
  const Mesh* mesh = nullptr;
  double p = 2.0;
  bool dirichlet_right = false;

  double energy(std::span<const double> f) const {
    const double h = mesh->h;
    double E = 0.0;
    for (std::size_t e = 0; e < mesh->elems.size(); ++e) {
      const double fr = value(f, e + 1);
      const double s = (fr - f[e]) / h;
      E += mesh->elems[e].G * std::pow(std::fabs(s), p);
    }
    return E;
  }
  double mass_p(std::span<const double> f) const {
    const double h = mesh->h;
    double Np = 0.0;
    for (std::size_t e = 0; e < mesh->elems.size(); ++e) {
      const ElementData& d = mesh->elems[e];
      const double fl = f[e], fr = value(f, e + 1);
      for (int q = 0; q < 5; ++q) {
        const double sR = (d.xq[q] - mesh->x[e]) / h;
        const double fv = fl + sR * (fr - fl);
        Np += d.wg[q] * std::pow(std::fabs(fv), p);
      }
    }
    return Np;
  }
  // gradient of E - lambda * Np (for the quotient descent direction)
  void grad_quotient(std::span<const double> f, double lambda, std::span<double> g) const {
    std::fill(g.begin(), g.end(), 0.0);
    const double h = mesh->h;
    const std::size_t ndof = f.size();
    for (std::size_t e = 0; e < mesh->elems.size(); ++e) {
      const ElementData& d = mesh->elems[e];
      const double fr = value(f, e + 1);
      const double s = (fr - f[e]) / h;
      const double dE = d.G * p * std::pow(std::fabs(s), p - 1.0) * sgn(s) / h;
      g[e] -= dE;
      if (e + 1 < ndof) g[e + 1] += dE;
      const double fl = f[e];
      for (int q = 0; q < 5; ++q) {
        const double sR = (d.xq[q] - mesh->x[e]) / h;
        const double fv = fl + sR * (fr - fl);
        const double dN = d.wg[q] * p * std::pow(std::fabs(fv), p - 1.0) * sgn(fv);
        g[e] -= lambda * dN * (1.0 - sR);
        if (e + 1 < ndof) g[e + 1] -= lambda * dN * sR;
      }
    }
  }

 private:
  static double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }
  double value(std::span<const double> f, std::size_t node) const {
    return node < f.size() ? f[node] : 0.0;  // Dirichlet ghost
  }
};

// Neumann constraint int |f - c|^{p-2}(f - c) g = 0; psi is strictly decreasing
// in c, solved by a bracketed secant.
void project_neumann(const PObjective& obj, std::vector<double>& f) {
  const double p = obj.p;
  auto psi = [&](double c) {
    double s = 0.0;
    const double h = obj.mesh->h;
    for (std::size_t e = 0; e < obj.mesh->elems.size(); ++e) {
      const ElementData& d = obj.mesh->elems[e];
      const double fl = f[e], fr = f[e + 1];
      for (int q = 0; q < 5; ++q) {
        const double sR = (d.xq[q] - obj.mesh->x[e]) / h;
        const double fv = fl + sR * (fr - fl) - c;
        s += d.wg[q] * std::pow(std::fabs(fv), p - 1.0) * (fv > 0 ? 1.0 : (fv < 0 ? -1.0 : 0.0));
      }
    }
    return s;
  };
  double lo = *std::min_element(f.begin(), f.end());
  double hi = *std::max_element(f.begin(), f.end());
  if (!(hi > lo)) return;
  const double scale = hi - lo;
  double flo = psi(lo), fhi = psi(hi);
  double c = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    double cs = (flo != fhi) ? lo + flo * (hi - lo) / (flo - fhi) : 0.5 * (lo + hi);
    if (!(cs > lo && cs < hi)) cs = 0.5 * (lo + hi);
    const double fc = psi(cs);
    if (fc > 0.0) { lo = cs; flo = fc; } else { hi = cs; fhi = fc; }
    c = cs;
    if (hi - lo < 1e-14 * scale) break;
  }
  for (double& v : f) v -= c;
}

void normalize_p(const PObjective& obj, std::vector<double>& f) {
  const double Np = obj.mass_p(f);
  const double scale = std::pow(Np, -1.0 / obj.p);
  for (double& v : f) v *= scale;
}

// Projected descent on the normalized Rayleigh quotient. The raw gradient is
// preconditioned with the p = 2 operator (K + M)^{-1} (a Sobolev gradient):
// the quotient's conditioning is then grid-independent and the Armijo search
// accepts O(1) steps.
std::pair<double, std::vector<double>> descend_p(const PObjective& obj, const TriMat& K,
                                                 const TriMat& M, std::vector<double> f,
                                                 bool neumann, std::size_t max_iter,
                                                 std::size_t* iters_out) {
  auto project = [&](std::vector<double>& v) {
    if (neumann)
      project_neumann(obj, v);
    else
      for (double& vi : v) vi = std::fabs(vi);
    normalize_p(obj, v);
  };
  const std::size_t n = f.size();
  TriMat A = K;
  for (std::size_t i = 0; i < n; ++i) A.d[i] += M.d[i];
  for (std::size_t i = 0; i + 1 < n; ++i) A.e[i] += M.e[i];

  project(f);
  double R = obj.energy(f) / obj.mass_p(f);
  std::vector<double> g(n), z(n);
  double eta = 1.0;
  std::size_t it = 0;
  std::size_t stall = 0;
  double window_R = R;
  for (; it < max_iter; ++it) {
    if (it % 40 == 39) {
      if (window_R - R < 1e-13 * std::fabs(R)) break;
      window_R = R;
    }
    obj.grad_quotient(f, R, g);
    tridiag_solve(A, g, z);
    const double gz = dot(g, z);  // preconditioned gradient norm^2
    if (!(gz > 1e-26 * R * R)) break;
    bool improved = false;
    double step = std::min(2.0 * eta, 1.0);
    for (int bt = 0; bt < 40; ++bt) {
      std::vector<double> trial = f;
      for (std::size_t i = 0; i < n; ++i) trial[i] -= step * z[i];
      project(trial);
      const double Rt = obj.energy(trial) / obj.mass_p(trial);
      if (Rt < R - 1e-15 * std::fabs(R)) {
        f = std::move(trial);
        R = Rt;
        eta = step;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      if (++stall >= 2) break;  // backtracking exhausted: local minimum reached
    } else {
      stall = 0;
    }
  }
  if (iters_out) *iters_out = it;
  if (it >= max_iter) {
    std::ostringstream os;
    os << "eigen1d: p-descent did not converge; last quotient = " << R;
    throw solver_error(os.str());
  }
  return {R, f};
}

EigenResult solve(const WeightedInterval& w, double a, double b, double p,
                  BoundaryType boundary, const EigenOptions& opt) {
  if (!(p > 1.0)) throw std::domain_error("eigen1d: p must be > 1");
  const Mesh mesh = build_mesh(w, a, b, opt.grid);
  const bool dirichlet = boundary == BoundaryType::dirichlet_right;
  TriMat K, M;
  assemble(mesh, dirichlet, K, M);

  std::size_t iters = 0;
  auto [lam2, f2] = smallest_mode(K, M, !dirichlet, opt.tol, 4000, &iters);

  PObjective obj{&mesh, p, dirichlet};
  std::vector<double> f = f2;
  double lambda = lam2;
  if (p != 2.0) {
    std::size_t it_p = 0;
    auto [lamp, fp] = descend_p(obj, K, M, std::move(f), !dirichlet, opt.max_iter, &it_p);
    lambda = lamp;
    f = std::move(fp);
    iters += it_p;
  } else {
    if (!dirichlet)
      project_neumann(obj, f);
    else
      for (double& v : f) v = std::fabs(v);
    normalize_p(obj, f);
    lambda = obj.energy(f) / obj.mass_p(f);
  }

  EigenResult res;
  res.p = p;
  res.boundary = boundary;
  res.iterations = iters;
  res.x = mesh.x;
  res.f = f;
  if (dirichlet) res.f.push_back(0.0);  // re-attach the constrained node
  // sign convention: non-increasing start
  if (res.f.front() < res.f.back())
    for (double& v : res.f) v = -v;
  res.lambda = lambda;
  {
    // quotient of the returned function, recomputed from scratch
    std::vector<double> dofs(res.f.begin(), res.f.end() - (dirichlet ? 1 : 0));
    res.rayleigh = obj.energy(dofs) / obj.mass_p(dofs);
  }
  res.ode_residual = ode_residual(w, p, res.lambda, res.x, res.f).relative;
  return res;
}

}  // namespace

EigenResult dirichlet_eigenvalue(const WeightedInterval& w, double rho, double p,
                                 EigenOptions opt) {
  const double a = w.lower();
  if (!std::isfinite(a)) throw config_error("dirichlet_eigenvalue: weight interval must have a finite left endpoint");
  if (!(rho > a)) throw config_error("dirichlet_eigenvalue: rho must exceed the left endpoint");
  if (std::isfinite(w.upper()) && rho > w.upper() * (1.0 + 1e-12))
    throw config_error("dirichlet_eigenvalue: rho beyond the weight interval");
  return solve(w, a, rho, p, BoundaryType::dirichlet_right, opt);
}

EigenResult neumann_eigenvalue(const WeightedInterval& w, double p, EigenOptions opt) {
  double a = w.lower(), b = w.upper();
  if (!std::isfinite(a)) a = -opt.truncation;
  if (!std::isfinite(b)) b = opt.truncation;
  return solve(w, a, b, p, BoundaryType::neumann, opt);
}

OdeResidual ode_residual(const WeightedInterval& w, double p, double lambda,
                         std::span<const double> x, std::span<const double> f) {
  if (x.size() != f.size() || x.size() < 3)
    throw precondition_error("ode_residual: need matching grids with >= 3 nodes");
  const std::size_t n = x.size() - 1;
  auto flux = [&](std::size_t e) {
    const double h = x[e + 1] - x[e];
    const double s = (f[e + 1] - f[e]) / h;
    return std::pow(std::fabs(s), p - 1.0) * (s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0)) *
           w.density(0.5 * (x[e] + x[e + 1]));
  };
  double g_max = 0.0;
  for (std::size_t i = 0; i <= n; ++i) g_max = std::max(g_max, w.density(x[i]));
  double l1 = 0.0, denom = 0.0;
  double log_l1 = 0.0, log_denom = 0.0;
  double W_prev = flux(0);
  for (std::size_t i = 1; i < n; ++i) {
    const double W_next = flux(i);
    const double cell = 0.5 * (x[i + 1] - x[i - 1]);
    const double g_i = w.density(x[i]);
    const double fpow =
        std::pow(std::fabs(f[i]), p - 1.0) * (f[i] > 0 ? 1.0 : (f[i] < 0 ? -1.0 : 0.0));
    const double r = (W_next - W_prev) / cell + lambda * g_i * fpow;
    l1 += std::fabs(r) * cell;
    denom += std::fabs(lambda * g_i * fpow) * cell;
    if (g_i > 1e-3 * g_max) {  // divided form only where the density is non-degenerate
      log_l1 += std::fabs(r / g_i) * cell;
      log_denom += std::fabs(lambda * fpow) * cell;
    }
    W_prev = W_next;
  }
  OdeResidual res;
  res.l1 = l1;
  res.relative = denom > 0.0 ? l1 / denom : l1;
  res.log_form = log_denom > 0.0 ? log_l1 / log_denom : log_l1;
  return res;
}

HalfIntervalCheck half_interval_check(double Q, double r, double p, EigenOptions opt) {
  if (!(Q > 1.0) || !(r > 0.0) || !(p > 1.0))
    throw std::domain_error("half_interval_check: need Q > 1, r > 0, p > 1");
  EigenOptions nopt = opt;
  nopt.grid = 2 * opt.grid;  // nested grids: same element width on [0,2r] and [0,r]
  HalfIntervalCheck out;
  out.neumann = neumann_eigenvalue(WeightedInterval::double_cone(Q, r), p, nopt);
  out.dirichlet_half = dirichlet_eigenvalue(WeightedInterval::euclidean(Q), r, p, opt);
  return out;
}

}  // namespace polya
