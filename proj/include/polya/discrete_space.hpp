#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "polya/rearrange.hpp"
#include "polya/weights.hpp"

namespace polya {

struct Edge {
  std::int64_t i = 0, j = 0;
  double length = 0.0;
  double conductance = 0.0;
};

// Analytic descriptors of the continuum model a space discretizes; NaN where
// not applicable. Inequality evaluators read their constants from here.
struct SpaceMetadata {
  std::string model = "custom";
  double N = std::numeric_limits<double>::quiet_NaN();
  double diameter = std::numeric_limits<double>::quiet_NaN();
  double avr = std::numeric_limits<double>::quiet_NaN();
  double entropy = std::numeric_limits<double>::quiet_NaN();  // h(X)
  nlohmann::json params;  // generator inputs (grid, truncation, aperture, ...)
};

// Weighted graph surrogate of a metric measure space. Immutable after
// construction; all queries are reentrant.
class DiscreteSpace {
 public:
  DiscreteSpace() = default;
  DiscreteSpace(std::vector<double> vertex_mass, std::vector<Edge> edges, SpaceMetadata md);

  std::size_t vertex_count() const { return mass_.size(); }
  const std::vector<double>& vertex_mass() const { return mass_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const SpaceMetadata& metadata() const { return md_; }
  double total_mass() const { return total_; }

  // 1D chain generators record node coordinates; empty for general graphs.
  const std::vector<double>& chain_positions() const { return positions_; }
  bool is_chain() const { return !positions_.empty(); }

  nlohmann::json to_json() const;
  static DiscreteSpace from_json(const nlohmann::json& j);

 private:
  std::vector<double> mass_;
  std::vector<Edge> edges_;
  std::vector<double> positions_;
  SpaceMetadata md_;
  double total_ = 0.0;

  friend DiscreteSpace make_chain(const WeightedInterval& w, double a, double b,
                                  std::size_t resolution, SpaceMetadata md);
};

using LevelSet = std::vector<std::uint8_t>;  // vertex indicator

// Sum of conductances of edges crossing E; symmetric in E vs complement.
double graph_perimeter(const DiscreteSpace& s, const LevelSet& E);

// Sum over edges of c * l * |du/l|^p.
double dirichlet_energy(const DiscreteSpace& s, std::span<const double> u, double p);

// int_R Per({u > t}) dt as an exact finite sum over sorted distinct values
// (descending sweep with incremental cut updates).
double total_variation(const DiscreteSpace& s, std::span<const double> u);

// Algebraically equal route sum_e c_e |du_e|; kept as the cross-check of the
// coarea identity.
double total_variation_edges(const DiscreteSpace& s, std::span<const double> u);

// Chain discretization of a weighted interval: resolution cells, nodes at the
// partition points, vertex masses = exact density integral over the half-open
// Voronoi cells, edge conductance = density at the edge midpoint.
DiscreteSpace make_chain(const WeightedInterval& w, double a, double b,
                         std::size_t resolution, SpaceMetadata md);

struct ModelDescriptor {
  std::string model;               // sphere|euclidean|gaussian|exponential|sector|interval
  double N = 2.0;                  // sphere, euclidean
  double h = 1.0;                  // exponential
  double aperture = 3.14159265358979323846;  // sector
  double radius = 1.0;             // euclidean / sector truncation
  double truncation = 10.0;        // gaussian/exponential half-width
  double a = 0.0, b = 1.0;         // interval
  std::size_t resolution = 1000;
};

// Model geometries: spherical suspension weight, Euclidean cone weight,
// Gaussian line, exponential line, planar sector (AVR = aperture/2pi), plain
// interval. Throws config_error for invalid parameters or resolution < 16.
DiscreteSpace generate(const ModelDescriptor& d);

// Vertex values + vertex masses as an atomic function.
SampledFunction to_atoms(const DiscreteSpace& s, std::span<const double> u);

}  // namespace polya
