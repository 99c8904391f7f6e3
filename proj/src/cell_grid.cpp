#include "fracube/cell_grid.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <tuple>

#include "fracube/error.hpp"
#include "fracube/kernels.hpp"

namespace fracube {

MemoryBudget MemoryBudget::from_env() {
  MemoryBudget budget;
  if (const char* env = std::getenv("FRACUBE_MAX_BYTES"); env != nullptr && *env != '\0') {
    std::string_view text(env);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw DomainError("FRACUBE_MAX_BYTES is not a byte count: '" + std::string(text) + "'");
    budget.max_bytes = value;
  }
  return budget;
}

void MemoryBudget::require(std::uint64_t bytes, const std::string& what) const {
  if (bytes > max_bytes) throw BudgetError(what, bytes, max_bytes);
}

std::pair<std::uint64_t, std::uint64_t> grid_extent(int base, int dim, int level) {
  // Keep cell indices (and index + neighbor deltas) comfortably inside int64.
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  const auto side = checked_pow(static_cast<std::uint64_t>(base), level, kLimit);
  const auto cells = checked_pow(side, dim, kLimit);
  return {side, cells};
}

CellGrid::CellGrid(int base, int dim, int level, std::vector<std::uint64_t> words)
    : base_(base), dim_(dim), level_(level), words_(std::move(words)) {
  std::tie(side_, cell_count_) = grid_extent(base, dim, level);
  if (words_.size() != (cell_count_ + 63) / 64) throw DomainError("bitmap size does not match grid extent");
  occupied_ = 0;
  for (auto w : words_) occupied_ += static_cast<std::uint64_t>(std::popcount(w));
}

std::vector<std::uint64_t> CellGrid::coords_of(std::uint64_t index) const {
  std::vector<std::uint64_t> c(dim_);
  for (int a = 0; a < dim_; ++a) {
    c[a] = index % side_;
    index /= side_;
  }
  return c;
}

std::uint64_t CellGrid::index_of(std::span<const std::uint64_t> coords) const {
  if (static_cast<int>(coords.size()) != dim_)
    throw DomainError("cell has " + std::to_string(coords.size()) + " coordinates, grid has " +
                      std::to_string(dim_));
  std::uint64_t index = 0;
  for (int a = dim_ - 1; a >= 0; --a) {
    if (coords[a] >= side_)
      throw DomainError("cell coordinate " + std::to_string(coords[a]) + " outside [0, " +
                        std::to_string(side_) + ")");
    index = index * side_ + coords[a];
  }
  return index;
}

std::vector<std::uint64_t> CellGrid::occupied_cells() const {
  std::vector<std::uint64_t> out;
  out.reserve(occupied_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (auto bits = words_[w]; bits != 0; bits &= bits - 1)
      out.push_back(w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits)));
  }
  return out;
}

CellGrid build_grid(const DigitSet& d, int k, const MemoryBudget& budget) {
  if (k < 1) throw DomainError("level k must be positive");
  const auto [side, cells] = grid_extent(d.base(), d.dim(), k);
  budget.require(CellGrid::bitmap_bytes(cells),
                 "level-" + std::to_string(k) + " grid of " + std::to_string(cells) + " cells");
  return CellGrid(d.base(), d.dim(), k, kernels::build_occupancy_parallel(d, k));
}

std::string render_pbm(const CellGrid& grid, const Slice& slice) {
  const int dim = grid.dim();
  const auto m = grid.side();
  std::vector<int> free_axes;
  for (const auto& [axis, value] : slice) {
    if (axis < 0 || axis >= dim) throw DomainError("slice axis " + std::to_string(axis) + " out of range");
    if (value >= m) throw DomainError("slice value " + std::to_string(value) + " outside [0, " + std::to_string(m) + ")");
  }
  for (int a = 0; a < dim; ++a)
    if (!slice.contains(a)) free_axes.push_back(a);
  const std::size_t want = dim == 1 ? 1 : 2;
  if (free_axes.size() != want)
    throw DomainError("slice leaves " + std::to_string(free_axes.size()) + " free axes, need " +
                      std::to_string(want));

  std::vector<std::uint64_t> coords(dim, 0);
  for (const auto& [axis, value] : slice) coords[axis] = value;

  const std::uint64_t width = m;
  const std::uint64_t height = dim == 1 ? 1 : m;
  std::string out = "P1\n" + std::to_string(width) + " " + std::to_string(height) + "\n";
  out.reserve(out.size() + height * (width + 1));
  for (std::uint64_t row = 0; row < height; ++row) {
    if (dim > 1) coords[free_axes[1]] = height - 1 - row;
    for (std::uint64_t x = 0; x < width; ++x) {
      coords[free_axes[0]] = x;
      out.push_back(grid.test(coords) ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

PbmImage read_pbm(std::string_view text) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size()) {
      if (text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_number = [&](const char* what) {
    skip_space();
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc()) throw ParseError(std::string("PBM: expected ") + what);
    pos = static_cast<std::size_t>(ptr - text.data());
    return v;
  };

  if (!text.starts_with("P1")) throw ParseError("PBM: missing P1 magic");
  pos = 2;
  PbmImage img;
  img.width = read_number("width");
  img.height = read_number("height");
  img.bits.reserve(img.width * img.height);
  while (img.bits.size() < img.width * img.height) {
    skip_space();
    if (pos >= text.size()) throw ParseError("PBM: raster truncated");
    char c = text[pos++];
    if (c != '0' && c != '1') throw ParseError(std::string("PBM: bad raster character '") + c + "'");
    img.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return img;
}

}  // namespace fracube
