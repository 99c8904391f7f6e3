#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fracube/cell_grid.hpp"
#include "fracube/digit_set.hpp"

namespace fracube {

struct ComponentInfo {
  std::uint32_t id = 0;
  std::uint64_t cell_count = 0;
  std::vector<std::uint64_t> box_min;  // per axis
  std::vector<std::uint64_t> box_max;
  std::vector<bool> touches_low;  // some cell has coordinate 0 on this axis
  std::vector<bool> touches_high; // some cell has coordinate m-1 on this axis
  /// No cell lies on the boundary of [0,1]^d.
  bool is_island = false;
};

/// Connected components of the occupied cells under Chebyshev adjacency.
/// Holds a reference to `grid`, which must outlive the labeling.
struct ComponentLabeling {
  const CellGrid* grid = nullptr;
  std::vector<std::uint32_t> label;  // per occupied cell, by occupied rank
  std::uint32_t component_count = 0;
  std::vector<ComponentInfo> components;  // indexed by id
};

ComponentLabeling label_components(const CellGrid& grid, const MemoryBudget& budget = MemoryBudget::from_env());

/// Components that avoid every face of the unit cube, by id.
std::vector<ComponentInfo> find_islands(const ComponentLabeling& labeling);

struct CellComponent {
  ComponentInfo info;
  std::vector<std::uint64_t> cells;  // linear indices, ascending
};

/// Throws DomainError if the cell is out of range or unoccupied.
CellComponent component_of_cell(const ComponentLabeling& labeling, std::span<const std::uint64_t> cell);

/// Component summary of a single level E_k.
struct LevelScan {
  int level = 0;
  std::uint64_t occupied = 0;
  std::uint32_t component_count = 0;
  std::vector<std::uint32_t> island_ids;
  std::uint64_t island_cells = 0;  // total cells over all islands
};

/// Builds E_k, labels it, and summarizes its islands. Budget errors are
/// rethrown with the level attached.
LevelScan scan_level(const DigitSet& d, int k, const MemoryBudget& budget = MemoryBudget::from_env());

/// Smallest k <= k_max at which E_k has an island. D should be full rank.
std::optional<int> first_island_level(const DigitSet& d, int k_max,
                                      const MemoryBudget& budget = MemoryBudget::from_env());

/// Whether E and E + v intersect, for v in {-1,0,1}^d, decided on the
/// offset graph w -> n w + b - a.
bool piece_intersects(const DigitSet& d, const std::vector<int>& v);

/// Hata's criterion: the graph on digits joined when their pieces meet is
/// connected. True implies the attractor is connected.
bool hata_connected(const DigitSet& d);

struct HasTrivialPoint {
  int level;
  std::uint32_t island_id;
};
struct NoTrivialPoint {
  std::string certificate;  // "hata-connected"
};
struct Singleton {};
struct Unknown {
  int k_max;
};

using TrivialPointVerdict = std::variant<HasTrivialPoint, NoTrivialPoint, Singleton, Unknown>;

std::string verdict_name(const TrivialPointVerdict& v);

/// Reduce to full rank, search islands up to k_max, then fall back to the
/// connectivity certificate. Budget errors are rethrown naming the level.
TrivialPointVerdict trivial_point_status(const DigitSet& d, int k_max,
                                         const MemoryBudget& budget = MemoryBudget::from_env());

/// 6 for d <= 2, 3 for d = 3, 2 beyond.
int default_kmax(int dim);

}  // namespace fracube
