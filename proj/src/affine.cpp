#include "fracube/affine.hpp"

#include <numeric>

#include "fracube/error.hpp"

namespace fracube {
namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Matrix& m, int cols) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col].numerator() == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const Rational lead = m[row][col];
    for (auto& v : m[row]) v /= lead;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].numerator() == 0) continue;
      const Rational f = m[r][col];
      for (int c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Matrix difference_rows(const DigitSet& d) {
  Matrix m;
  const auto& h0 = d[0];
  for (std::size_t i = 1; i < d.size(); ++i) {
    std::vector<Rational> row(d.dim());
    for (int a = 0; a < d.dim(); ++a) row[a] = d[i][a] - h0[a];
    m.push_back(std::move(row));
  }
  return m;
}

// A nonzero integer vector orthogonal to every digit difference, scaled to
// be primitive with a positive leading coordinate. Requires rank < dim.
std::vector<Rational> normal_vector(const DigitSet& d) {
  Matrix m = difference_rows(d);
  auto pivots = rref(m, d.dim());
  int free_col = 0;
  for (int p : pivots) {
    if (p != free_col) break;
    ++free_col;
  }
  std::vector<Rational> alpha(d.dim(), Rational(0));
  alpha[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) alpha[pivots[r]] = -m[r][free_col];

  std::int64_t lcm = 1;
  for (const auto& a : alpha) lcm = std::lcm(lcm, a.denominator());
  std::int64_t gcd = 0;
  for (auto& a : alpha) {
    a *= lcm;
    gcd = std::gcd(gcd, a.numerator());
  }
  for (auto& a : alpha) a /= gcd;
  for (const auto& a : alpha) {
    if (a.numerator() == 0) continue;
    if (a.numerator() < 0)
      for (auto& b : alpha) b = -b;
    break;
  }
  return alpha;
}

}  // namespace

int affine_rank(const DigitSet& d) {
  Matrix m = difference_rows(d);
  return static_cast<int>(rref(m, d.dim()).size());
}

AffineReduction reduce_full_rank(const DigitSet& d) {
  std::vector<ReductionStep> steps;
  DigitSet current = d;
  const int rank = affine_rank(d);
  while (current.dim() > rank && current.dim() > 1) {
    auto alpha = normal_vector(current);
    Rational dot(0);
    for (int a = 0; a < current.dim(); ++a) dot += alpha[a] * current[0][a];
    const Rational offset = dot / (current.base() - 1);

    int axis = 0;
    while (alpha[axis].numerator() == 0) ++axis;

    std::vector<Digit> projected;
    projected.reserve(current.size());
    for (const auto& h : current.digits()) {
      Digit p;
      for (int a = 0; a < current.dim(); ++a)
        if (a != axis) p.push_back(h[a]);
      projected.push_back(std::move(p));
    }
    steps.push_back({std::move(alpha), offset, axis});
    current = DigitSet::make(current.base(), current.dim() - 1, std::move(projected));
  }
  return {std::move(steps), std::move(current), rank == 0};
}

Digit lift(const AffineReduction& reduction, const Digit& reduced_digit) {
  Digit h = reduced_digit;
  for (auto it = reduction.steps.rbegin(); it != reduction.steps.rend(); ++it) {
    const auto& step = *it;
    const int n = reduction.reduced.base();
    Rational rhs = step.offset * (n - 1);
    std::size_t j = 0;
    for (std::size_t a = 0; a < step.normal.size(); ++a) {
      if (static_cast<int>(a) == step.dropped_axis) continue;
      rhs -= step.normal[a] * h[j++];
    }
    const Rational x = rhs / step.normal[step.dropped_axis];
    if (x.denominator() != 1) throw DomainError("lifted coordinate is not an integer");
    h.insert(h.begin() + step.dropped_axis, static_cast<int>(x.numerator()));
  }
  return h;
}

}  // namespace fracube
