#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fracube {

using Digit = std::vector<int>;

/// The digit set D of a fractal cube E(n, D) = (E + D) / n.
///
/// Always canonical: digits are distinct, every coordinate lies in
/// {0, ..., n-1}, and the list is sorted lexicographically.
class DigitSet {
 public:
  /// Validates and canonicalizes. Throws DomainError on n < 2, d < 1, an
  /// empty set, a wrong-arity digit, a coordinate out of range, or a
  /// duplicate digit.
  static DigitSet make(int base, int dim, std::vector<Digit> digits);

  int base() const { return base_; }
  int dim() const { return dim_; }
  std::size_t size() const { return digits_.size(); }
  const std::vector<Digit>& digits() const { return digits_; }
  const Digit& operator[](std::size_t i) const { return digits_[i]; }

  bool contains(const Digit& h) const;

  friend bool operator==(const DigitSet&, const DigitSet&) = default;

 private:
  DigitSet(int base, int dim, std::vector<Digit> digits)
      : base_(base), dim_(dim), digits_(std::move(digits)) {}

  int base_;
  int dim_;
  std::vector<Digit> digits_;
};

/// Reads the `fcube 1` text format (coordinate-list or d=2 ASCII grid form).
/// Throws ParseError with line/column on malformed input.
DigitSet parse_digitset(std::string_view text);

/// Canonical coordinate-list serialization.
std::string serialize(const DigitSet& d);

/// D_k = D + nD + ... + n^{k-1}D as a digit set of base n^k.
DigitSet compose_level(const DigitSet& d, int k);

/// Hausdorff dimension log N / log n, kept alongside its symbolic form.
struct Dimension {
  std::uint64_t count;  // N
  std::uint64_t base;   // n
  double value;
};

Dimension hausdorff_dimension(const DigitSet& d);

/// n^k with overflow detection; throws DomainError if it exceeds `limit`.
std::uint64_t checked_pow(std::uint64_t base, int exponent, std::uint64_t limit);

}  // namespace fracube
