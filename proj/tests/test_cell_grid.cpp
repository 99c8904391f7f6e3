#include <algorithm>
#include <random>

#include "doctest.h"
#include "fracube/cell_grid.hpp"
#include "fracube/error.hpp"
#include "oracles.hpp"

using namespace fracube;

namespace {

DigitSet carpet() {
  return DigitSet::make(3, 2, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
}

std::vector<std::vector<std::uint64_t>> grid_cells(const CellGrid& g) {
  std::vector<std::vector<std::uint64_t>> out;
  for (auto i : g.occupied_cells()) out.push_back(g.coords_of(i));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("build examples") {
  auto cantor = build_grid(DigitSet::make(3, 1, {{0}, {2}}), 2);
  CHECK(cantor.side() == 9);
  CHECK(cantor.occupied_cells() == std::vector<std::uint64_t>{0, 2, 6, 8});

  auto c3 = build_grid(carpet(), 3);
  CHECK(c3.side() == 27);
  CHECK(c3.cell_count() == 729);
  CHECK(c3.occupied_count() == 512);
  const std::uint64_t centre[] = {13, 13};
  CHECK_FALSE(c3.test(centre));
  const std::uint64_t corner[] = {26, 0};
  CHECK(c3.test(corner));
}

TEST_CASE("coordinates and linear index") {
  auto g = build_grid(carpet(), 2);
  const std::uint64_t c[] = {4, 7};
  CHECK(g.index_of(c) == 4 + 9 * 7);
  CHECK(g.coords_of(67) == std::vector<std::uint64_t>{4, 7});
  const std::uint64_t outside[] = {9, 0};
  CHECK_THROWS_AS(g.index_of(outside), DomainError);
  const std::uint64_t wrong_arity[] = {1};
  CHECK_THROWS_AS(g.index_of(wrong_arity), DomainError);
}

TEST_CASE("grid matches word enumeration") {
  std::mt19937_64 rng(oracle::test_seed() + 17);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int dim = 1 + static_cast<int>(rng() % 3);
    const int count = 1 + static_cast<int>(rng() % oracle::ipow(n, dim));
    const auto d = oracle::random_digitset(rng, n, dim, count);
    const int k_top = dim == 3 ? 2 : 3;
    for (int k = 1; k <= k_top; ++k) {
      auto g = build_grid(d, k);
      CHECK(grid_cells(g) == oracle::word_cells(d, k));
      CHECK(g.occupied_count() == oracle::ipow(d.size(), k));
    }
  }
}

TEST_CASE("self-similarity: E_{k+1} restricted to a level-1 block") {
  // The block at digit h of E_{k+1} is a copy of E_k; empty blocks are empty.
  std::mt19937_64 rng(oracle::test_seed() + 19);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const auto d = oracle::random_digitset(rng, n, 2, 1 + static_cast<int>(rng() % (n * n)));
    const int k = 2;
    auto small = build_grid(d, k);
    auto big = build_grid(d, k + 1);
    const auto m = small.side();
    for (int bx = 0; bx < n; ++bx)
      for (int by = 0; by < n; ++by) {
        const bool present = d.contains({bx, by});
        for (std::uint64_t x = 0; x < m; ++x)
          for (std::uint64_t y = 0; y < m; ++y) {
            const std::uint64_t inner[] = {x, y};
            const std::uint64_t outer[] = {bx * m + x, by * m + y};
            CHECK(big.test(outer) == (present && small.test(inner)));
          }
      }
  }
}

TEST_CASE("PBM rendering") {
  auto pbm = render_pbm(build_grid(carpet(), 2));
  CHECK(pbm.starts_with("P1\n9 9\n"));
  CHECK(std::count(pbm.begin() + 7, pbm.end(), '1') == 64);
  // Middle row of the 9x9 carpet: 111000111 reversed top-down is the same.
  CHECK(pbm.find("\n111000111\n") != std::string::npos);

  auto corner = render_pbm(build_grid(DigitSet::make(2, 2, {{0, 0}}), 2));
  CHECK(corner == "P1\n4 4\n0000\n0000\n0000\n1000\n");

  auto line = render_pbm(build_grid(DigitSet::make(3, 1, {{0}, {2}}), 2));
  CHECK(line == "P1\n9 1\n101000101\n");

  // Orientation: a digit at (0, 1) lands in the top-left corner.
  CHECK(render_pbm(build_grid(DigitSet::make(2, 2, {{0, 1}}), 1)) == "P1\n2 2\n10\n00\n");
}

TEST_CASE("PBM round-trip") {
  std::mt19937_64 rng(oracle::test_seed() + 23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const auto d = oracle::random_digitset(rng, n, 2, 1 + static_cast<int>(rng() % (n * n)));
    auto g = build_grid(d, 2);
    auto img = read_pbm(render_pbm(g));
    REQUIRE(img.width == g.side());
    REQUIRE(img.height == g.side());
    for (std::uint64_t row = 0; row < img.height; ++row)
      for (std::uint64_t x = 0; x < img.width; ++x) {
        const std::uint64_t c[] = {x, img.height - 1 - row};
        CHECK((img.bits[row * img.width + x] == 1) == g.test(c));
      }
  }
  CHECK_THROWS_AS(read_pbm("P4\n1 1\n0\n"), ParseError);
  CHECK_THROWS_AS(read_pbm("P1\n2 2\n010\n"), ParseError);
}

TEST_CASE("slices of a cube") {
  auto cube = DigitSet::make(2, 3, {{0, 0, 0}, {1, 1, 1}});
  auto g = build_grid(cube, 1);
  CHECK(render_pbm(g, {{2, 0}}) == "P1\n2 2\n00\n10\n");
  CHECK(render_pbm(g, {{2, 1}}) == "P1\n2 2\n01\n00\n");
  CHECK(render_pbm(g, {{0, 1}}) == "P1\n2 2\n01\n00\n");
  CHECK_THROWS_AS(render_pbm(g), DomainError);
  CHECK_THROWS_AS(render_pbm(g, {{3, 0}}), DomainError);
  CHECK_THROWS_AS(render_pbm(g, {{2, 2}}), DomainError);
  CHECK_THROWS_AS(render_pbm(g, {{0, 0}, {1, 0}}), DomainError);
}

TEST_CASE("memory budget") {
  MemoryBudget tiny{64};
  CHECK_NOTHROW(build_grid(carpet(), 2, tiny));  // 81 cells -> 16 bytes
  CHECK_THROWS_AS(build_grid(carpet(), 4, tiny), BudgetError);
  try {
    build_grid(carpet(), 4, tiny);
  } catch (const BudgetError& e) {
    CHECK(e.required() == CellGrid::bitmap_bytes(81 * 81));
    CHECK(e.allowed() == 64);
  }
  CHECK_THROWS_AS(grid_extent(10, 2, 40), DomainError);
  CHECK(grid_extent(3, 2, 4) == std::pair<std::uint64_t, std::uint64_t>{81, 6561});
  CHECK_THROWS_AS(build_grid(carpet(), 0), DomainError);
}
