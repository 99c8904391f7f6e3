#include "fracube/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "fracube/error.hpp"

namespace fracube {
namespace {

// Folds one scanned level into the running bound.
void add_level(IcBound& bound, const LevelScan& scan, int base) {
  if (scan.island_ids.empty()) return;
  const double candidate = ic_candidate(scan.occupied, scan.island_cells, scan.level, base);
  bound.candidates.emplace_back(scan.level, candidate);
  if (!bound.level || candidate < bound.value) {
    bound.value = candidate;
    bound.level = scan.level;
    bound.removed_cells = scan.island_cells;
  }
}

}  // namespace

double ic_candidate(std::uint64_t occupied, std::uint64_t removed, int k, int base) {
  const auto kept = occupied - removed;
  if (kept == 0) return 0.0;
  return std::log(static_cast<double>(kept)) / (k * std::log(static_cast<double>(base)));
}

IcBound ic_upper_bound(const DigitSet& d, int k_max, const MemoryBudget& budget) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  IcBound bound;
  for (int k = 1; k <= k_max; ++k) add_level(bound, scan_level(d, k, budget), d.base());
  if (!bound.level) bound.value = hausdorff_dimension(d).value;
  return bound;
}

BoundsReport bounds_report(const DigitSet& d, int k_max, std::optional<double> gd_value,
                           const MemoryBudget& budget) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  auto reduction = reduce_full_rank(d);
  const auto dim_H = hausdorff_dimension(d);

  IcBound bound;
  std::vector<LevelScan> levels;
  TrivialPointVerdict verdict = Unknown{k_max};
  if (reduction.singleton) {
    verdict = Singleton{};
    bound.value = dim_H.value;
  } else {
    const auto& reduced = reduction.reduced;
    std::optional<HasTrivialPoint> first;
    for (int k = 1; k <= k_max; ++k) {
      levels.push_back(scan_level(reduced, k, budget));
      const auto& scan = levels.back();
      if (!first && !scan.island_ids.empty()) first = HasTrivialPoint{k, scan.island_ids.front()};
      add_level(bound, scan, reduced.base());
    }
    if (!bound.level) bound.value = dim_H.value;
    if (first)
      verdict = *first;
    else if (d.size() >= 2 && hata_connected(reduced))
      verdict = NoTrivialPoint{"hata-connected"};
  }

  // The island bound is never above dim_H; clamp rounding from the k-fold log.
  bound.value = std::min(bound.value, dim_H.value);

  if (gd_value && *gd_value > bound.value + 1e-9)
    throw DomainError("supplied exact connectedness index " + std::to_string(*gd_value) +
                      " exceeds the island upper bound " + std::to_string(bound.value));

  BoundsReport report{dim_H, std::move(bound), gd_value, 0.0, verdict, false, std::move(reduction), std::move(levels)};
  report.tH_upper = std::min(report.ic_upper.value, dim_H.value);
  report.strict_drop = std::holds_alternative<HasTrivialPoint>(verdict);
  return report;
}

}  // namespace fracube
