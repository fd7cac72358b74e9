#include "polya/discrete_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "polya/errors.hpp"
#include "polya/kernels.hpp"

namespace polya {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_connected(std::size_t n, const std::vector<Edge>& edges) {
  if (n == 0) throw config_error("DiscreteSpace: empty vertex set");
  std::vector<std::vector<std::int64_t>> adj(n);
  for (const Edge& e : edges) {
    adj[static_cast<std::size_t>(e.i)].push_back(e.j);
    adj[static_cast<std::size_t>(e.j)].push_back(e.i);
  }
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::int64_t> stack{0};
  seen[0] = 1;
  std::size_t visited = 1;
  while (!stack.empty()) {
    const std::int64_t v = stack.back();
    stack.pop_back();
    for (std::int64_t w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++visited;
        stack.push_back(w);
      }
    }
  }
  if (visited != n) throw config_error("DiscreteSpace: graph is not connected");
}
}  // namespace

DiscreteSpace::DiscreteSpace(std::vector<double> vertex_mass, std::vector<Edge> edges,
                             SpaceMetadata md)
    : mass_(std::move(vertex_mass)), edges_(std::move(edges)), md_(std::move(md)) {
  const auto n = static_cast<std::int64_t>(mass_.size());
  for (double m : mass_)
    if (!(m > 0.0)) throw config_error("DiscreteSpace: vertex masses must be > 0");
  for (const Edge& e : edges_) {
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n || e.i == e.j)
      throw config_error("DiscreteSpace: bad edge endpoints");
    if (!(e.length > 0.0) || !(e.conductance > 0.0))
      throw config_error("DiscreteSpace: edge length and conductance must be > 0");
  }
  check_connected(mass_.size(), edges_);
  total_ = std::accumulate(mass_.begin(), mass_.end(), 0.0);
}

nlohmann::json DiscreteSpace::to_json() const {
  nlohmann::json je = nlohmann::json::array();
  for (const Edge& e : edges_) je.push_back({e.i, e.j, e.length, e.conductance});
  nlohmann::json md{{"model", md_.model}, {"params", md_.params}};
  auto put = [&md](const char* key, double v) {
    if (std::isfinite(v)) md[key] = v;
  };
  put("N", md_.N);
  put("diameter", md_.diameter);
  put("avr", md_.avr);
  put("entropy", md_.entropy);
  nlohmann::json j{{"vertices", mass_}, {"edges", je}, {"metadata", md}};
  if (!positions_.empty()) j["positions"] = positions_;
  return j;
}

DiscreteSpace DiscreteSpace::from_json(const nlohmann::json& j) {
  std::vector<double> mass = j.at("vertices").get<std::vector<double>>();
  std::vector<Edge> edges;
  for (const auto& row : j.at("edges"))
    edges.push_back({row.at(0).get<std::int64_t>(), row.at(1).get<std::int64_t>(),
                     row.at(2).get<double>(), row.at(3).get<double>()});
  SpaceMetadata md;
  if (j.contains("metadata")) {
    const auto& m = j.at("metadata");
    md.model = m.value("model", std::string("custom"));
    md.N = m.value("N", md.N);
    md.diameter = m.value("diameter", md.diameter);
    md.avr = m.value("avr", md.avr);
    md.entropy = m.value("entropy", md.entropy);
    if (m.contains("params")) md.params = m.at("params");
  }
  DiscreteSpace s(std::move(mass), std::move(edges), std::move(md));
  if (j.contains("positions")) s.positions_ = j.at("positions").get<std::vector<double>>();
  return s;
}

double graph_perimeter(const DiscreteSpace& s, const LevelSet& E) {
  if (E.size() != s.vertex_count())
    throw precondition_error("graph_perimeter: indicator size mismatch");
  const auto& edges = s.edges();
  return kernels::indexed_sum(edges.size(), [&edges, &E](std::size_t k) {
    const Edge& e = edges[k];
    return (E[static_cast<std::size_t>(e.i)] != E[static_cast<std::size_t>(e.j)])
               ? e.conductance
               : 0.0;
  });
}

double dirichlet_energy(const DiscreteSpace& s, std::span<const double> u, double p) {
  if (!(p > 1.0)) throw std::domain_error("dirichlet_energy: p must be > 1");
  if (u.size() != s.vertex_count())
    throw precondition_error("dirichlet_energy: value vector size mismatch");
  const auto& edges = s.edges();
  return kernels::indexed_sum(edges.size(), [&edges, &u, p](std::size_t k) {
    const Edge& e = edges[k];
    const double slope =
        (u[static_cast<std::size_t>(e.j)] - u[static_cast<std::size_t>(e.i)]) / e.length;
    return e.conductance * e.length * std::pow(std::fabs(slope), p);
  });
}

double total_variation_edges(const DiscreteSpace& s, std::span<const double> u) {
  const auto& edges = s.edges();
  return kernels::indexed_sum(edges.size(), [&edges, &u](std::size_t k) {
    const Edge& e = edges[k];
    return e.conductance *
           std::fabs(u[static_cast<std::size_t>(e.j)] - u[static_cast<std::size_t>(e.i)]);
  });
}

double total_variation(const DiscreteSpace& s, std::span<const double> u) {
  if (u.size() != s.vertex_count())
    throw precondition_error("total_variation: value vector size mismatch");
  // Descending sweep over distinct values; the cut weight is updated as each
  // value class enters the superlevel set, and Per({u > t}) is constant
  // between consecutive distinct values.
  const std::size_t n = s.vertex_count();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&u](std::size_t a, std::size_t b) { return u[a] > u[b]; });

  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const Edge& e : s.edges()) {
    adj[static_cast<std::size_t>(e.i)].push_back({static_cast<std::size_t>(e.j), e.conductance});
    adj[static_cast<std::size_t>(e.j)].push_back({static_cast<std::size_t>(e.i), e.conductance});
  }

  std::vector<std::uint8_t> inside(n, 0);
  double cut = 0.0;
  double tv = 0.0;
  std::size_t idx = 0;
  double prev_value = 0.0;
  bool first = true;
  while (idx < n) {
    const double v = u[order[idx]];
    if (!first) tv += (prev_value - v) * cut;
    while (idx < n && u[order[idx]] == v) {
      const std::size_t vert = order[idx];
      for (const auto& [nbr, c] : adj[vert]) cut += inside[nbr] ? -c : c;
      inside[vert] = 1;
      ++idx;
    }
    prev_value = v;
    first = false;
  }
  return tv;
}

DiscreteSpace make_chain(const WeightedInterval& w, double a, double b,
                         std::size_t resolution, SpaceMetadata md) {
  if (resolution < 16) throw config_error("make_chain: resolution must be >= 16");
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
    throw config_error("make_chain: need finite a < b");
  const std::size_t n = resolution;
  const double h = (b - a) / static_cast<double>(n);
  std::vector<double> mass(n + 1), pos(n + 1);
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = a + h * static_cast<double>(i);
    pos[i] = x;
    const double cell_lo = (i == 0) ? a : x - 0.5 * h;
    const double cell_hi = (i == n) ? b : x + 0.5 * h;
    mass[i] = w.mass_between(cell_lo, cell_hi);
    if (!(mass[i] > 0.0)) mass[i] = 1e-300;  // guard against underflow in deep tails
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double midpoint = a + h * (static_cast<double>(i) + 0.5);
    edges.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(i + 1), h,
                     w.density(midpoint)});
  }
  DiscreteSpace s(std::move(mass), std::move(edges), std::move(md));
  s.positions_ = std::move(pos);
  return s;
}

DiscreteSpace generate(const ModelDescriptor& d) {
  SpaceMetadata md;
  md.model = d.model;
  md.params = {{"resolution", d.resolution}};
  if (d.model == "sphere") {
    if (!(d.N > 1.0)) throw config_error("generate: sphere needs N > 1");
    md.N = d.N;
    md.diameter = kPi;
    return make_chain(WeightedInterval::sphere(d.N), 0.0, kPi, d.resolution, md);
  }
  if (d.model == "euclidean") {
    if (!(d.N > 1.0) || !(d.radius > 0.0))
      throw config_error("generate: euclidean needs N > 1 and radius > 0");
    md.N = d.N;
    md.avr = 1.0;
    md.params["radius"] = d.radius;
    return make_chain(WeightedInterval::euclidean(d.N), 0.0, d.radius, d.resolution, md);
  }
  if (d.model == "gaussian") {
    if (!(d.truncation > 0.0)) throw config_error("generate: gaussian needs truncation > 0");
    md.params["truncation"] = d.truncation;
    return make_chain(WeightedInterval::gaussian(), -d.truncation, d.truncation, d.resolution,
                      md);
  }
  if (d.model == "exponential") {
    if (!(d.h > 0.0) || !(d.truncation > 0.0))
      throw config_error("generate: exponential needs h > 0 and truncation > 0");
    md.entropy = d.h;
    md.params["truncation"] = d.truncation;
    return make_chain(WeightedInterval::exponential(d.h), -d.truncation, d.truncation,
                      d.resolution, md);
  }
  if (d.model == "sector") {
    if (!(d.aperture > 0.0 && d.aperture <= 2.0 * kPi) || !(d.radius > 0.0))
      throw config_error("generate: sector needs aperture in (0, 2pi] and radius > 0");
    md.N = 2.0;
    md.avr = d.aperture / (2.0 * kPi);
    md.params["aperture"] = d.aperture;
    md.params["radius"] = d.radius;
    // planar sector of given aperture: radial density aperture * t = avr * 2 pi t
    return make_chain(WeightedInterval::cone(2.0, md.avr), 0.0, d.radius, d.resolution, md);
  }
  if (d.model == "interval") {
    md.diameter = d.b - d.a;
    md.params["a"] = d.a;
    md.params["b"] = d.b;
    return make_chain(WeightedInterval::interval(d.a, d.b), d.a, d.b, d.resolution, md);
  }
  throw config_error("generate: unknown model '" + d.model + "'");
}

SampledFunction to_atoms(const DiscreteSpace& s, std::span<const double> u) {
  if (u.size() != s.vertex_count()) throw precondition_error("to_atoms: size mismatch");
  std::vector<Atom> atoms(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) atoms[i] = {u[i], s.vertex_mass()[i]};
  return SampledFunction(std::move(atoms));
}

}  // namespace polya
