#pragma once

#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "fracube/digit_set.hpp"

namespace fracube {

using Rational = boost::rational<std::int64_t>;

/// Rank over Q of {h - h0 : h in D}; equals dim aff(E).
int affine_rank(const DigitSet& d);

/// One projection step: every digit h of the set being reduced lies on the
/// hyperplane <h, normal> = (n-1) * offset, and `dropped_axis` (the lowest
/// index with a nonzero normal coordinate) is removed.
struct ReductionStep {
  std::vector<Rational> normal;
  Rational offset;
  int dropped_axis;
};

struct AffineReduction {
  std::vector<ReductionStep> steps;
  DigitSet reduced;
  /// Rank 0: the attractor is a single point. `reduced` is then the
  /// one-digit set in d=1 (the type cannot express dimension 0).
  bool singleton;
};

/// Projects D down to an affinely full-rank digit set of the same base and
/// digit count. Zero steps when D is already full rank.
AffineReduction reduce_full_rank(const DigitSet& d);

/// Inverts the reduction for a single digit: rebuilds the dropped
/// coordinates from the hyperplane equations, last step first.
Digit lift(const AffineReduction& reduction, const Digit& reduced_digit);

}  // namespace fracube
