#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fracube/affine.hpp"
#include "fracube/digit_set.hpp"
#include "fracube/topology.hpp"

namespace fracube {

/// Upper bound on the connectedness index I_c(E) from removing island cells.
struct IcBound {
  double value = 0;
  /// Level whose candidate attains the minimum; absent when no level had an
  /// island and the bound falls back to dim_H.
  std::optional<int> level;
  std::uint64_t removed_cells = 0;
  /// log(#D_k - #J_k) / (k log n) for every level k with an island.
  std::vector<std::pair<int, double>> candidates;
};

/// Candidate bound for one level: #D_k = `occupied` cells of which
/// `removed` lie in islands. Zero surviving cells yields 0.
double ic_candidate(std::uint64_t occupied, std::uint64_t removed, int k, int base);

/// Minimum over k <= k_max of the island-removal bound. D should be full
/// rank (callers reduce first).
IcBound ic_upper_bound(const DigitSet& d, int k_max, const MemoryBudget& budget = MemoryBudget::from_env());

struct BoundsReport {
  Dimension dim_H;
  IcBound ic_upper;
  std::optional<double> ic_exact;
  double tH_upper = 0;
  TrivialPointVerdict verdict;
  bool strict_drop = false;
  AffineReduction reduction;
  std::vector<LevelScan> levels;  // levels actually scanned
};

/// dim_tH <= I_c <= dim_H chain on the full-rank reduction of D.
/// `gd_value` is an exact I_c supplied by a graph-directed computation; a
/// value above the island bound (beyond 1e-9) is rejected with DomainError.
BoundsReport bounds_report(const DigitSet& d, int k_max, std::optional<double> gd_value = std::nullopt,
                           const MemoryBudget& budget = MemoryBudget::from_env());

}  // namespace fracube
