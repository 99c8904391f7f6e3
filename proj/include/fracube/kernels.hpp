#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version used by the
// library and a serial reference kept for tests and benchmarks; both must
// produce identical output.

#include <cstdint>
#include <vector>

#include "fracube/digit_set.hpp"

namespace fracube {
class CellGrid;
}

namespace fracube::kernels {

/// Occupancy words of E_k for a grid of side m = n^k: one bit per word of
/// length k over the digit alphabet.
std::vector<std::uint64_t> build_occupancy_serial(const DigitSet& d, int k);
std::vector<std::uint64_t> build_occupancy_parallel(const DigitSet& d, int k);

/// Component label per occupied cell (indexed by occupied rank), under
/// Chebyshev adjacency. Labels are dense and ordered by the smallest
/// linear cell index in each component.
struct Labels {
  std::vector<std::uint32_t> label;
  std::uint32_t component_count = 0;
};

Labels label_serial(const CellGrid& grid);
/// Slab decomposition along the slowest axis, merged by a sequential
/// boundary pass. `slabs` = 0 picks a count from the thread pool size.
Labels label_parallel(const CellGrid& grid, int slabs = 0);

/// Bytes of scratch memory the labeling kernels allocate for `grid`.
std::uint64_t labeling_bytes(const CellGrid& grid);

/// Prefix popcounts: rank[w] = number of occupied cells before word w.
std::vector<std::uint64_t> word_ranks(const CellGrid& grid);

/// Linear-index deltas of the (3^d - 1)/2 forward neighbor offsets, i.e.
/// offsets whose last nonzero coordinate is +1, with the offsets themselves.
struct NeighborOffsets {
  std::vector<std::vector<int>> delta;
  std::vector<std::int64_t> linear;
};
NeighborOffsets forward_neighbors(int dim, std::uint64_t side);

}  // namespace fracube::kernels
