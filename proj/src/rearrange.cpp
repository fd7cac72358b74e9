#include "polya/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "polya/errors.hpp"
#include "polya/kernels.hpp"

namespace polya {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double json_to_double(const nlohmann::json& j, double inf_value) {
  if (j.is_null()) return inf_value;
  return j.get<double>();
}

nlohmann::json double_to_json(double x) {
  if (std::isinf(x)) return nullptr;  // nlohmann serializes non-finite as null anyway
  return x;
}
}  // namespace

SampledFunction::SampledFunction(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw precondition_error("SampledFunction: no atoms");
  ess_inf_ = kInf;
  ess_sup_ = -kInf;
  for (const Atom& a : atoms_) {
    if (!(a.mass > 0.0) || !std::isfinite(a.mass) || !std::isfinite(a.value))
      throw precondition_error("SampledFunction: atoms need finite values and masses > 0");
    total_ += a.mass;
    ess_inf_ = std::min(ess_inf_, a.value);
    ess_sup_ = std::max(ess_sup_, a.value);
  }
}

nlohmann::json SampledFunction::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const Atom& a : atoms_) arr.push_back({a.value, a.mass});
  return nlohmann::json{{"atoms", arr}};
}

SampledFunction SampledFunction::from_json(const nlohmann::json& j) {
  std::vector<Atom> atoms;
  for (const auto& row : j.at("atoms"))
    atoms.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
  return SampledFunction(std::move(atoms));
}

DistributionFunction::DistributionFunction(const SampledFunction& u) {
  // Stable aggregation of equal values; ties never require ordering decisions.
  std::map<double, double> merged;
  for (const Atom& a : u.atoms()) merged[a.value] += a.mass;
  values_.reserve(merged.size());
  cum_.reserve(merged.size());
  double running = 0.0;
  for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
    values_.push_back(it->first);
    running += it->second;
    cum_.push_back(running);
  }
}

double DistributionFunction::operator()(double t) const {
  // number of distinct values > t; values_ is strictly decreasing
  const auto it = std::lower_bound(values_.begin(), values_.end(), t,
                                   [](double v, double tt) { return v > tt; });
  const std::size_t n_above = static_cast<std::size_t>(it - values_.begin());
  return n_above == 0 ? 0.0 : cum_[n_above - 1];
}

double DistributionFunction::generalized_inverse(double s) const {
  if (!(s > 0.0)) throw std::out_of_range("generalized_inverse: s must be > 0");
  const auto it = std::lower_bound(cum_.begin(), cum_.end(), s);
  if (it == cum_.end()) return ess_inf();
  return values_[static_cast<std::size_t>(it - cum_.begin())];
}

MonotoneProfile MonotoneProfile::step(WeightedInterval w, std::vector<double> values,
                                      std::vector<double> breaks, std::vector<double> cum_mass,
                                      double l_star, double r_star) {
  if (values.empty() || values.size() != breaks.size() || values.size() != cum_mass.size())
    throw precondition_error("MonotoneProfile::step: inconsistent arrays");
  for (std::size_t j = 0; j + 1 < values.size(); ++j) {
    if (!(values[j] > values[j + 1]))
      throw precondition_error("MonotoneProfile::step: values must be strictly decreasing");
    if (!(breaks[j] <= breaks[j + 1]))
      throw precondition_error("MonotoneProfile::step: breaks must be non-decreasing");
  }
  MonotoneProfile p;
  p.rep_ = Rep::step;
  p.weight_ = std::move(w);
  p.values_ = std::move(values);
  p.breaks_ = std::move(breaks);
  p.cum_ = std::move(cum_mass);
  p.l_star_ = l_star;
  p.r_star_ = r_star;
  return p;
}

MonotoneProfile MonotoneProfile::linear(WeightedInterval w, std::vector<double> xs,
                                        std::vector<double> vs) {
  if (xs.size() < 2 || xs.size() != vs.size())
    throw precondition_error("MonotoneProfile::linear: need >= 2 nodes");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(xs[i + 1] > xs[i]))
      throw precondition_error("MonotoneProfile::linear: nodes must increase");
    if (vs[i + 1] > vs[i] + 1e-14 * (1.0 + std::fabs(vs[i])))
      throw precondition_error("MonotoneProfile::linear: values must be non-increasing");
  }
  MonotoneProfile p;
  p.rep_ = Rep::linear;
  p.weight_ = std::move(w);
  p.values_ = std::move(vs);
  p.breaks_ = std::move(xs);
  p.l_star_ = p.breaks_.front();
  p.r_star_ = p.breaks_.back();
  return p;
}

double MonotoneProfile::ess_sup() const { return values_.front(); }
double MonotoneProfile::ess_inf() const { return values_.back(); }
double MonotoneProfile::total_mass() const {
  if (rep_ == Rep::step) return cum_.back();
  return weight_.mass_between(l_star_, r_star_);
}

double MonotoneProfile::operator()(double x) const {
  if (rep_ == Rep::step) {
    if (x <= l_star_) return values_.front();
    const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
    if (it == breaks_.end()) return values_.back();
    return values_[static_cast<std::size_t>(it - breaks_.begin())];
  }
  if (x <= breaks_.front()) return values_.front();
  if (x >= breaks_.back()) return values_.back();
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  const double s = (x - breaks_[i]) / (breaks_[i + 1] - breaks_[i]);
  return values_[i] + s * (values_[i + 1] - values_[i]);
}

double MonotoneProfile::mu(double t) const {
  if (rep_ == Rep::step) {
    const auto it = std::lower_bound(values_.begin(), values_.end(), t,
                                     [](double v, double tt) { return v > tt; });
    const std::size_t n_above = static_cast<std::size_t>(it - values_.begin());
    return n_above == 0 ? 0.0 : cum_[n_above - 1];
  }
  if (t >= values_.front()) return 0.0;
  if (t < values_.back()) return weight_.mass_between(l_star_, r_star_);
  // rightmost point where the profile still exceeds t
  double xt = breaks_.back();
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (values_[i + 1] <= t && values_[i] > t) {
      if (values_[i] == values_[i + 1]) { xt = breaks_[i]; break; }
      const double s = (t - values_[i]) / (values_[i + 1] - values_[i]);
      xt = breaks_[i] + s * (breaks_[i + 1] - breaks_[i]);
      break;
    }
  }
  return weight_.mass_between(l_star_, xt);
}

MonotoneProfile MonotoneProfile::refine_linear() const {
  if (rep_ == Rep::linear) return *this;
  const std::size_t k = values_.size();
  std::vector<double> xs, vs;
  xs.reserve(k);
  vs.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double left = (j == 0) ? l_star_ : breaks_[j - 1];
    const double right = breaks_[j];
    double node;
    if (std::isfinite(left) && std::isfinite(right)) {
      node = 0.5 * (left + right);
    } else if (!std::isfinite(left)) {
      // unbounded top plateau: mirror the right neighbor's half width so the
      // drop to the next value spans a full plateau width
      double w = 1.0;
      if (j + 1 < k && std::isfinite(breaks_[j + 1])) w = 0.5 * (breaks_[j + 1] - right);
      node = right - w;
    } else {
      double w = 1.0;
      if (j >= 1) {
        const double prev_left = (j == 1) ? l_star_ : breaks_[j - 2];
        if (std::isfinite(prev_left)) w = 0.5 * (left - prev_left);
      }
      node = left + w;
    }
    if (xs.empty() || node > xs.back()) {
      xs.push_back(node);
      vs.push_back(values_[j]);
    }
  }
  if (xs.size() < 2) {
    // constant profile: flat two-node segment spanning what is finite of Omega*
    const double a = std::isinf(l_star_) ? xs.front() - 1.0 : l_star_;
    const double b = std::isinf(r_star_) ? xs.front() + 1.0 : r_star_;
    auto p = linear(weight_, {a, b}, {values_.front(), values_.front()});
    p.l_star_ = l_star_;
    p.r_star_ = r_star_;
    return p;
  }
  auto p = linear(weight_, std::move(xs), std::move(vs));
  p.l_star_ = l_star_;
  p.r_star_ = r_star_;
  return p;
}

nlohmann::json MonotoneProfile::to_json() const {
  nlohmann::json jb = nlohmann::json::array(), jv = nlohmann::json::array();
  for (double b : breaks_) jb.push_back(double_to_json(b));
  for (double v : values_) jv.push_back(v);
  nlohmann::json j{{"rep", rep_ == Rep::step ? "step" : "linear"},
                   {"breaks", jb},
                   {"values", jv},
                   {"weight", weight_.to_json()},
                   {"l_star", double_to_json(l_star_)},
                   {"r_star", double_to_json(r_star_)}};
  if (rep_ == Rep::step) j["cum_mass"] = cum_;
  return j;
}

MonotoneProfile MonotoneProfile::from_json(const nlohmann::json& j) {
  WeightedInterval w = WeightedInterval::from_json(j.at("weight"));
  std::vector<double> breaks, values;
  for (const auto& b : j.at("breaks")) breaks.push_back(json_to_double(b, kInf));
  for (const auto& v : j.at("values")) values.push_back(v.get<double>());
  const double l = json_to_double(j.at("l_star"), -kInf);
  const double r = json_to_double(j.at("r_star"), kInf);
  if (j.at("rep").get<std::string>() == "step") {
    std::vector<double> cum = j.at("cum_mass").get<std::vector<double>>();
    return MonotoneProfile::step(std::move(w), std::move(values), std::move(breaks),
                                 std::move(cum), l, r);
  }
  return MonotoneProfile::linear(std::move(w), std::move(breaks), std::move(values));
}

double distribution(const SampledFunction& u, double t) {
  const auto& atoms = u.atoms();
  return kernels::indexed_sum(atoms.size(), [&atoms, t](std::size_t i) {
    return atoms[i].value > t ? atoms[i].mass : 0.0;
  });
}

MonotoneProfile rearrange(const SampledFunction& u, const WeightedInterval& w) {
  const DistributionFunction mu(u);
  const double total = mu.total_mass();
  const double capacity = w.total_mass();
  if (total > capacity * (1.0 + 1e-9))
    throw precondition_error("rearrange: mass compatibility m(Omega) <= omega(R) violated");

  const auto& values = mu.values();
  const auto& cum = mu.cum_mass();
  const std::size_t k = values.size();
  std::vector<double> breaks(k);
  const bool full = !(total < capacity);
  for (std::size_t j = 0; j + 1 < k; ++j) {
    const double c = std::min(cum[j], capacity);
    breaks[j] = (c >= capacity) ? w.upper() : w.inv_cdf(c);
  }
  breaks[k - 1] = full ? w.upper() : w.inv_cdf(total);
  const double r_star = breaks[k - 1];
  return MonotoneProfile::step(w, values, std::move(breaks),
                               std::vector<double>(cum.begin(), cum.end()), w.lower(), r_star);
}

std::pair<double, double> omega_star(const WeightedInterval& w, double total_mass) {
  if (!(total_mass > 0.0) || total_mass > w.total_mass() * (1.0 + 1e-12))
    throw std::out_of_range("omega_star: total mass outside (0, omega(R)]");
  const double l = w.lower();
  const double r = (total_mass < w.total_mass()) ? w.inv_cdf(total_mass) : w.upper();
  return {l, r};
}

double level_radius(const SampledFunction& u, const WeightedInterval& w, double t) {
  if (!(t > u.ess_inf() && t < u.ess_sup()))
    throw std::out_of_range("level_radius: t outside (ess_inf, ess_sup)");
  const DistributionFunction mu(u);
  return w.inv_cdf(mu(t));
}

MuDerivativeCheck mu_derivative_check(const MonotoneProfile& u_star, double t) {
  if (u_star.rep() != MonotoneProfile::Rep::linear)
    throw precondition_error("mu_derivative_check: needs the piecewise-linear representation");
  const auto& xs = u_star.nodes();
  const auto& vs = u_star.values();
  if (!(t < vs.front() && t > vs.back()))
    throw std::out_of_range("mu_derivative_check: level outside the profile range");
  // a plateau carrying the level itself makes the derivative 0/0
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (vs[i] == t && vs[i + 1] == t)
      throw degenerate_level_error("mu_derivative_check: flat segment at this level");
  std::size_t seg = xs.size();
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (vs[i] > t && vs[i + 1] <= t) { seg = i; break; }
  }
  if (seg == xs.size() || vs[seg] == vs[seg + 1])
    throw degenerate_level_error("mu_derivative_check: flat segment at this level");
  const double slope = (vs[seg + 1] - vs[seg]) / (xs[seg + 1] - xs[seg]);
  const double r_t = xs[seg] + (t - vs[seg]) / slope;

  // finite differences confined to the current segment, so the kink error of
  // the piecewise-linear object never enters; fall back to a one-sided
  // difference when the level (nearly) coincides with a node value
  const double range = vs.front() - vs.back();
  const double up = vs[seg] - t;
  const double down = t - vs[seg + 1];
  const double cap = 2e-6 * range;
  double lhs;
  if (down <= 1e-12 * range) {
    const double d = std::min(0.25 * up, cap);
    lhs = (u_star.mu(t) - u_star.mu(t + d)) / d;
  } else if (up <= 1e-12 * range) {
    const double d = std::min(0.25 * down, cap);
    lhs = (u_star.mu(t - d) - u_star.mu(t)) / d;
  } else {
    const double d = std::min(0.25 * std::min(up, down), cap);
    lhs = (u_star.mu(t - d) - u_star.mu(t + d)) / (2.0 * d);
  }
  const double rhs = u_star.weight().density(r_t) / std::fabs(slope);
  return {lhs, rhs, r_t};
}

EquimeasurabilityReport equimeasurability_report(
    const SampledFunction& u, const MonotoneProfile& u_star,
    const std::vector<std::function<double(double)>>& Gs, const std::vector<double>& p_norms) {
  if (u_star.rep() != MonotoneProfile::Rep::step)
    throw precondition_error("equimeasurability_report: needs the step representation");
  const DistributionFunction mu(u);
  const auto& values = mu.values();
  const auto& cum = mu.cum_mass();
  const auto& w = u_star.weight();
  const auto& breaks = u_star.breaks();

  EquimeasurabilityReport rep;
  auto track_exact = [&rep](double d) { rep.worst_exact = std::max(rep.worst_exact, std::fabs(d)); };
  auto track_quad = [&rep](double d) { rep.worst_quadrature = std::max(rep.worst_quadrature, std::fabs(d)); };

  // probe levels: each value, midpoints between values, and beyond the range
  std::vector<double> probes;
  for (std::size_t j = 0; j < values.size(); ++j) {
    probes.push_back(values[j]);
    if (j + 1 < values.size()) probes.push_back(0.5 * (values[j] + values[j + 1]));
  }
  probes.push_back(values.front() + 1.0);
  probes.push_back(values.back() - 1.0);

  const double total = mu.total_mass();
  for (double t : probes) {
    // i) superlevel masses
    track_exact(mu(t) - u_star.mu(t));
    // ii) level masses (raw-atom side vs plateau bookkeeping)
    double level_u = 0.0;
    for (const Atom& a : u.atoms())
      if (a.value == t) level_u += a.mass;
    double level_star = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j)
      if (values[j] == t) level_star = cum[j] - (j == 0 ? 0.0 : cum[j - 1]);
    track_exact(level_u - level_star);
    // iii) sublevel masses
    double sub_u = 0.0;
    for (const Atom& a : u.atoms())
      if (a.value < t) sub_u += a.mass;
    const double sub_star = total - u_star.mu(t) - level_star;
    track_exact(sub_u - sub_star);
  }

  // iv) composition identity through the weight cdf (quadrature tolerance)
  std::vector<std::function<double(double)>> all_G = Gs;
  for (double p : p_norms)
    all_G.push_back([p](double t) { return std::pow(std::fabs(t), p); });
  for (const auto& G : all_G) {
    double lhs = 0.0;
    for (const Atom& a : u.atoms()) lhs += G(a.value) * a.mass;
    double rhs = 0.0;
    double left = u_star.l_star();
    for (std::size_t j = 0; j < values.size(); ++j) {
      rhs += G(values[j]) * w.mass_between(left, breaks[j]);
      left = breaks[j];
    }
    track_quad(lhs - rhs);
  }
  return rep;
}

SampledFunction atomize(const MonotoneProfile& u_star) {
  if (u_star.rep() != MonotoneProfile::Rep::step)
    throw precondition_error("atomize: needs the step representation");
  std::vector<Atom> atoms;
  const auto& values = u_star.values();
  const auto& cum = u_star.cum_mass();
  for (std::size_t j = 0; j < values.size(); ++j)
    atoms.push_back({values[j], cum[j] - (j == 0 ? 0.0 : cum[j - 1])});
  return SampledFunction(std::move(atoms));
}

}  // namespace polya
