#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracube/cell_grid.hpp"
#include "fracube/digit_set.hpp"

namespace fracube {

struct MWEdge {
  std::size_t from;
  std::size_t to;
  Digit digit;

  friend auto operator<=>(const MWEdge&, const MWEdge&) = default;
};

using CountMatrix = std::vector<std::vector<std::int64_t>>;

/// Graph-directed system with uniform ratio 1/n: each edge u -> v with
/// digit h contributes the map z -> (z + h) / n from the set at v into the
/// set at u.
class MWGraph {
 public:
  /// Throws DomainError on duplicate node names, dangling endpoints,
  /// out-of-range digits, or repeated (from, to, digit) triples.
  static MWGraph make(int base, int dim, std::vector<std::string> nodes, std::vector<MWEdge> edges);

  int base() const { return base_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<MWEdge>& edges() const { return edges_; }

  /// Throws DomainError for an unknown name.
  std::size_t node_index(std::string_view name) const;

  /// A[u][v] = number of edges u -> v.
  CountMatrix count_matrix() const;

 private:
  MWGraph(int base, int dim, std::vector<std::string> nodes, std::vector<MWEdge> edges)
      : base_(base), dim_(dim), nodes_(std::move(nodes)), edges_(std::move(edges)) {}

  int base_;
  int dim_;
  std::vector<std::string> nodes_;
  std::vector<MWEdge> edges_;
};

/// `{"base": n, "dim": d, "nodes": [...], "edges": [{"from", "to", "digit"}]}`.
/// Unknown fields are rejected with ParseError.
MWGraph parse_graph_json(std::string_view text);

struct Interval {
  double lo = 0;
  double hi = 0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

/// Certified enclosure of the Perron root of a nonnegative square matrix:
/// max over strongly connected components of Collatz-Wielandt bounds from
/// power iteration, widened by the floating-point error of each bound.
/// One-node components and the zero matrix are exact.
Interval spectral_radius(const CountMatrix& a);

struct GdDimension {
  double value;
  Interval interval;
  Interval rho;
};

/// log rho / log n. Throws DomainError when rho = 0 (no cycle, empty set).
GdDimension gd_dimension(const MWGraph& g);
GdDimension gd_dimension(const CountMatrix& a, int base);

/// Level-l cells phi_w([0,1]^d) for the digit words w of all length-l paths
/// leaving `start`, as ascending linear indices on the n^l grid.
std::vector<std::uint64_t> path_cells(const MWGraph& g, std::string_view start, int level,
                                      const MemoryBudget& budget = MemoryBudget::from_env());

/// Number of length-l paths leaving `start`, saturating at UINT64_MAX.
std::uint64_t path_count(const MWGraph& g, std::string_view start, int level);

struct LevelVerification {
  int level;
  bool equal;
  std::uint64_t component_cells;
  std::uint64_t path_cells;
  /// Smallest cell in the symmetric difference, with its coordinates and
  /// which side it belongs to.
  std::optional<std::vector<std::uint64_t>> first_mismatch;
  bool mismatch_in_component = false;
};

struct GDVerification {
  std::vector<LevelVerification> levels;

  bool all_equal() const;
};

/// For l = 1..levels, compares the component of E_l containing the seed
/// cell with path_cells(g, node, l). The seed at level l is the cell
/// containing the fixed point of z -> (z + cell) / n, i.e. `cell` repeated
/// in every base-n position.
GDVerification verify_decomposition(const DigitSet& d, const MWGraph& g, std::string_view node, const Digit& cell,
                                    int levels, const MemoryBudget& budget = MemoryBudget::from_env());

}  // namespace fracube
