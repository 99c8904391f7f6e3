#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fracube/digit_set.hpp"

namespace fracube {

/// Upper bound on the bytes a single grid computation may allocate.
/// Defaults to 2 GiB; `FRACUBE_MAX_BYTES` overrides.
struct MemoryBudget {
  static constexpr std::uint64_t kDefaultBytes = std::uint64_t{2} << 30;

  std::uint64_t max_bytes = kDefaultBytes;

  static MemoryBudget from_env();

  /// Throws BudgetError if `bytes` exceeds the budget.
  void require(std::uint64_t bytes, const std::string& what) const;
};

/// Occupancy bitmap of the k-th approximation E_k on the m^d grid, m = n^k.
///
/// Cell (x_1, ..., x_d) has linear index x_1 + m x_2 + m^2 x_3 + ...; the
/// first axis varies fastest. Bit i of word i/64 is cell i.
class CellGrid {
 public:
  CellGrid(int base, int dim, int level, std::vector<std::uint64_t> words);

  int base() const { return base_; }
  int dim() const { return dim_; }
  int level() const { return level_; }
  std::uint64_t side() const { return side_; }
  std::uint64_t cell_count() const { return cell_count_; }
  std::uint64_t occupied_count() const { return occupied_; }

  bool test(std::uint64_t index) const { return (words_[index >> 6] >> (index & 63)) & 1u; }
  bool test(std::span<const std::uint64_t> coords) const { return test(index_of(coords)); }

  std::span<const std::uint64_t> words() const { return words_; }

  std::vector<std::uint64_t> coords_of(std::uint64_t index) const;
  /// Throws DomainError on wrong arity or a coordinate outside [0, m).
  std::uint64_t index_of(std::span<const std::uint64_t> coords) const;

  /// Linear indices of all occupied cells, ascending.
  std::vector<std::uint64_t> occupied_cells() const;

  static std::uint64_t bitmap_bytes(std::uint64_t cells) { return ((cells + 63) / 64) * 8; }

 private:
  int base_;
  int dim_;
  int level_;
  std::uint64_t side_;
  std::uint64_t cell_count_;
  std::uint64_t occupied_;
  std::vector<std::uint64_t> words_;
};

/// Side m = n^k and cell count m^d, or DomainError on 64-bit overflow.
std::pair<std::uint64_t, std::uint64_t> grid_extent(int base, int dim, int level);

/// E_k as a bitmap, built by k-fold digit expansion (parallel kernel).
CellGrid build_grid(const DigitSet& d, int k, const MemoryBudget& budget = MemoryBudget::from_env());

/// Fixed coordinates for the axes that are not rendered, keyed by 0-based axis.
using Slice = std::map<int, std::uint64_t>;

/// Plain PBM (`P1`). For d >= 2 the two free axes after slicing become
/// x (lower axis) and y (higher axis), with the top row at maximal y.
/// A d=1 grid renders as an m x 1 image.
std::string render_pbm(const CellGrid& grid, const Slice& slice = {});

struct PbmImage {
  std::uint64_t width = 0;
  std::uint64_t height = 0;
  std::vector<std::uint8_t> bits;  // row-major, top row first
};

/// Reads a plain PBM; throws ParseError.
PbmImage read_pbm(std::string_view text);

}  // namespace fracube
