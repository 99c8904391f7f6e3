#include <atomic>

#include "fracube/cell_grid.hpp"
#include "fracube/error.hpp"
#include "fracube/kernels.hpp"

namespace fracube::kernels {
namespace {

// contrib[p][j]: linear-index contribution of digit j placed at base-n
// position p (weight n^p) of every coordinate.
std::vector<std::vector<std::uint64_t>> position_contributions(const DigitSet& d, int k,
                                                               std::uint64_t side) {
  std::vector<std::vector<std::uint64_t>> contrib(k, std::vector<std::uint64_t>(d.size()));
  std::uint64_t weight = 1;
  for (int p = 0; p < k; ++p) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      std::uint64_t offset = 0;
      std::uint64_t axis_stride = 1;
      for (int a = 0; a < d.dim(); ++a) {
        offset += static_cast<std::uint64_t>(d[j][a]) * weight * axis_stride;
        axis_stride *= side;
      }
      contrib[p][j] = offset;
    }
    weight *= static_cast<std::uint64_t>(d.base());
  }
  return contrib;
}

template <typename SetBit>
void expand(const std::vector<std::vector<std::uint64_t>>& contrib, int position, std::uint64_t base,
            SetBit& set_bit) {
  const auto& row = contrib[position];
  if (position == 0) {
    for (auto c : row) set_bit(base + c);
    return;
  }
  for (auto c : row) expand(contrib, position - 1, base + c, set_bit);
}

}  // namespace

std::vector<std::uint64_t> build_occupancy_serial(const DigitSet& d, int k) {
  const auto [side, cells] = grid_extent(d.base(), d.dim(), k);
  std::vector<std::uint64_t> words((cells + 63) / 64, 0);
  const auto contrib = position_contributions(d, k, side);
  auto set_bit = [&](std::uint64_t i) { words[i >> 6] |= std::uint64_t{1} << (i & 63); };
  expand(contrib, k - 1, 0, set_bit);
  return words;
}

std::vector<std::uint64_t> build_occupancy_parallel(const DigitSet& d, int k) {
  const auto [side, cells] = grid_extent(d.base(), d.dim(), k);
  std::vector<std::uint64_t> words((cells + 63) / 64, 0);
  const auto contrib = position_contributions(d, k, side);

  // Enumerate the top `split` positions up front; each prefix is one task.
  int split = 0;
  std::uint64_t tasks = 1;
  while (split < k - 1 && tasks < 4096) {
    tasks *= d.size();
    ++split;
  }
  std::vector<std::uint64_t> prefixes{0};
  for (int p = k - 1; p >= k - split; --p) {
    std::vector<std::uint64_t> next;
    next.reserve(prefixes.size() * d.size());
    for (auto b : prefixes)
      for (auto c : contrib[p]) next.push_back(b + c);
    prefixes = std::move(next);
  }

  const int remaining_top = k - 1 - split;
  const auto count = static_cast<std::int64_t>(prefixes.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t t = 0; t < count; ++t) {
    auto set_bit = [&](std::uint64_t i) {
      std::atomic_ref<std::uint64_t>(words[i >> 6]).fetch_or(std::uint64_t{1} << (i & 63),
                                                              std::memory_order_relaxed);
    };
    expand(contrib, remaining_top, prefixes[t], set_bit);
  }
  return words;
}

}  // namespace fracube::kernels
