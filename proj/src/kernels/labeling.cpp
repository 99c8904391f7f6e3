#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include <omp.h>

#include "fracube/cell_grid.hpp"
#include "fracube/error.hpp"
#include "fracube/kernels.hpp"

namespace fracube::kernels {
namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

class UnionFind {
 public:
  explicit UnionFind(std::uint64_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  // Dense labels ordered by first occurrence; consumes the structure.
  Labels finish() {
    Labels out;
    out.label.resize(parent_.size());
    auto& id_of_root = size_;
    std::fill(id_of_root.begin(), id_of_root.end(), kNone);
    for (std::uint32_t i = 0; i < parent_.size(); ++i) {
      auto r = find(i);
      if (id_of_root[r] == kNone) id_of_root[r] = out.component_count++;
      out.label[i] = id_of_root[r];
    }
    return out;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

class RankIndex {
 public:
  explicit RankIndex(const CellGrid& grid) : words_(grid.words()), ranks_(word_ranks(grid)) {}

  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  std::uint32_t rank(std::uint64_t i) const {
    const auto below = words_[i >> 6] & ((std::uint64_t{1} << (i & 63)) - 1);
    return static_cast<std::uint32_t>(ranks_[i >> 6] + static_cast<std::uint64_t>(std::popcount(below)));
  }

 private:
  std::span<const std::uint64_t> words_;
  std::vector<std::uint64_t> ranks_;
};

// Calls fn(index) for each occupied cell with index in [lo, hi), ascending.
template <typename Fn>
void for_each_occupied(std::span<const std::uint64_t> words, std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
  if (lo >= hi) return;
  for (std::uint64_t w = lo >> 6; w <= (hi - 1) >> 6; ++w) {
    auto bits = words[w];
    if (w == lo >> 6) bits &= ~std::uint64_t{0} << (lo & 63);
    if (w == (hi - 1) >> 6 && (hi & 63) != 0) bits &= (std::uint64_t{1} << (hi & 63)) - 1;
    for (; bits != 0; bits &= bits - 1) fn(w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits)));
  }
}

void check_label_capacity(const CellGrid& grid) {
  if (grid.occupied_count() >= kNone)
    throw BudgetError("32-bit labels cover fewer than 2^32 occupied cells",
                      grid.occupied_count() * sizeof(std::uint32_t),
                      std::uint64_t{kNone - 1} * sizeof(std::uint32_t));
}

}  // namespace

std::vector<std::uint64_t> word_ranks(const CellGrid& grid) {
  auto words = grid.words();
  std::vector<std::uint64_t> ranks(words.size());
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words.size(); ++w) {
    ranks[w] = acc;
    acc += static_cast<std::uint64_t>(std::popcount(words[w]));
  }
  return ranks;
}

std::uint64_t labeling_bytes(const CellGrid& grid) {
  return grid.words().size() * sizeof(std::uint64_t) + grid.occupied_count() * 3 * sizeof(std::uint32_t);
}

NeighborOffsets forward_neighbors(int dim, std::uint64_t side) {
  NeighborOffsets out;
  std::vector<int> delta(dim, -1);
  while (true) {
    int last = dim - 1;
    while (last >= 0 && delta[last] == 0) --last;
    if (last >= 0 && delta[last] == 1) {
      std::int64_t linear = 0;
      std::int64_t stride = 1;
      for (int a = 0; a < dim; ++a) {
        linear += delta[a] * stride;
        stride *= static_cast<std::int64_t>(side);
      }
      out.delta.push_back(delta);
      out.linear.push_back(linear);
    }
    int a = 0;
    while (a < dim && delta[a] == 1) delta[a++] = -1;
    if (a == dim) break;
    ++delta[a];
  }
  return out;
}

Labels label_serial(const CellGrid& grid) {
  check_label_capacity(grid);
  const RankIndex index(grid);
  const auto nb = forward_neighbors(grid.dim(), grid.side());
  const auto m = static_cast<std::int64_t>(grid.side());
  const int dim = grid.dim();
  UnionFind uf(grid.occupied_count());

  std::vector<std::int64_t> x(dim);
  std::uint32_t rank = 0;
  for_each_occupied(grid.words(), 0, grid.cell_count(), [&](std::uint64_t cell) {
    auto rest = cell;
    for (int a = 0; a < dim; ++a) {
      x[a] = static_cast<std::int64_t>(rest % grid.side());
      rest /= grid.side();
    }
    for (std::size_t o = 0; o < nb.linear.size(); ++o) {
      bool inside = true;
      for (int a = 0; a < dim && inside; ++a) {
        const auto y = x[a] + nb.delta[o][a];
        inside = y >= 0 && y < m;
      }
      if (!inside) continue;
      const auto other = static_cast<std::uint64_t>(static_cast<std::int64_t>(cell) + nb.linear[o]);
      if (index.test(other)) uf.unite(rank, index.rank(other));
    }
    ++rank;
  });
  return uf.finish();
}

Labels label_parallel(const CellGrid& grid, int slabs) {
  check_label_capacity(grid);
  const RankIndex index(grid);
  const auto nb = forward_neighbors(grid.dim(), grid.side());
  const auto side = grid.side();
  const auto m = static_cast<std::int64_t>(side);
  const int dim = grid.dim();
  const std::uint64_t stride = grid.cell_count() / side;  // cells per slowest-axis row
  UnionFind uf(grid.occupied_count());

  if (slabs <= 0) slabs = std::max(1, omp_get_max_threads() * 4);
  const auto slab_count = static_cast<std::uint64_t>(std::min<std::uint64_t>(slabs, side));
  std::vector<std::uint64_t> row_begin(slab_count + 1);
  for (std::uint64_t s = 0; s <= slab_count; ++s) row_begin[s] = side * s / slab_count;

  // Unions that cross a slab boundary along the slowest axis are deferred.
  auto scan = [&](std::uint64_t row_lo, std::uint64_t row_hi, bool crossing_only) {
    std::vector<std::int64_t> x(dim);
    for_each_occupied(grid.words(), row_lo * stride, row_hi * stride, [&](std::uint64_t cell) {
      auto rest = cell;
      for (int a = 0; a < dim; ++a) {
        x[a] = static_cast<std::int64_t>(rest % side);
        rest /= side;
      }
      const auto here = index.rank(cell);
      for (std::size_t o = 0; o < nb.linear.size(); ++o) {
        const bool crosses = nb.delta[o][dim - 1] == 1 && static_cast<std::uint64_t>(x[dim - 1]) + 1 == row_hi;
        if (crosses != crossing_only) continue;
        bool inside = true;
        for (int a = 0; a < dim && inside; ++a) {
          const auto y = x[a] + nb.delta[o][a];
          inside = y >= 0 && y < m;
        }
        if (!inside) continue;
        const auto other = static_cast<std::uint64_t>(static_cast<std::int64_t>(cell) + nb.linear[o]);
        if (index.test(other)) uf.unite(here, index.rank(other));
      }
    });
  };

  const auto count = static_cast<std::int64_t>(slab_count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t s = 0; s < count; ++s) scan(row_begin[s], row_begin[s + 1], false);

  for (std::uint64_t s = 1; s < slab_count; ++s) scan(row_begin[s] - 1, row_begin[s], true);
  return uf.finish();
}

}  // namespace fracube::kernels
