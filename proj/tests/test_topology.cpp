#include <cmath>
#include <random>

#include "doctest.h"
#include "fracube/error.hpp"
#include "fracube/topology.hpp"
#include "oracles.hpp"

using namespace fracube;

namespace {

DigitSet cantor() { return DigitSet::make(3, 1, {{0}, {2}}); }

DigitSet carpet() {
  return DigitSet::make(3, 2, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
}

// Partition of occupied cells from the library labeling, as index lists.
std::set<std::vector<std::uint64_t>> library_partition(const ComponentLabeling& labeling) {
  std::vector<std::vector<std::uint64_t>> parts(labeling.component_count);
  const auto cells = labeling.grid->occupied_cells();
  for (std::size_t r = 0; r < cells.size(); ++r) parts[labeling.label[r]].push_back(cells[r]);
  return {parts.begin(), parts.end()};
}

}  // namespace

TEST_CASE("component labeling examples") {
  auto g = build_grid(carpet(), 2);
  auto lab = label_components(g);
  CHECK(lab.component_count == 1);
  CHECK(lab.components[0].cell_count == 64);
  CHECK_FALSE(lab.components[0].is_island);

  // Two diagonal cells touch at a corner: one component under Chebyshev adjacency.
  auto diag = build_grid(DigitSet::make(2, 2, {{0, 0}, {1, 1}}), 1);
  CHECK(label_components(diag).component_count == 1);

  auto c2 = build_grid(cantor(), 2);
  auto cl = label_components(c2);
  CHECK(cl.component_count == 4);
  auto islands = find_islands(cl);
  REQUIRE(islands.size() == 2);
  CHECK(islands[0].box_min == std::vector<std::uint64_t>{2});
  CHECK(islands[1].box_min == std::vector<std::uint64_t>{6});
  CHECK(cl.components[0].touches_low[0]);
  CHECK(cl.components[3].touches_high[0]);
}

TEST_CASE("component_of_cell") {
  auto g = build_grid(DigitSet::make(3, 2, {{0, 0}, {2, 2}}), 1);
  auto lab = label_components(g);
  const std::uint64_t corner[] = {2, 2};
  auto comp = component_of_cell(lab, corner);
  CHECK(comp.cells == std::vector<std::uint64_t>{8});
  CHECK(comp.info.cell_count == 1);
  const std::uint64_t empty[] = {1, 1};
  CHECK_THROWS_AS(component_of_cell(lab, empty), DomainError);
  const std::uint64_t outside[] = {3, 0};
  CHECK_THROWS_AS(component_of_cell(lab, outside), DomainError);

  auto cg = build_grid(carpet(), 2);
  auto cl = label_components(cg);
  const std::uint64_t origin[] = {0, 0};
  CHECK(component_of_cell(cl, origin).cells.size() == 64);
}

TEST_CASE("first island level") {
  CHECK(first_island_level(cantor(), 4) == 2);
  CHECK(first_island_level(DigitSet::make(3, 1, {{1}}), 3) == 1);
  CHECK(first_island_level(DigitSet::make(3, 2, {{1, 1}}), 3) == 1);
  CHECK_FALSE(first_island_level(DigitSet::make(3, 1, {{0}, {1}, {2}}), 4).has_value());
  CHECK_FALSE(first_island_level(carpet(), 4).has_value());
  CHECK_THROWS_AS(first_island_level(cantor(), 0), DomainError);

  auto scan = scan_level(cantor(), 3);
  CHECK(scan.occupied == 8);
  CHECK(scan.component_count == 8);
  CHECK(scan.island_ids.size() == 6);
  CHECK(scan.island_cells == 6);
}

TEST_CASE("piece intersections") {
  CHECK(piece_intersects(carpet(), {1, 0}));
  CHECK(piece_intersects(carpet(), {1, 1}));
  CHECK(piece_intersects(carpet(), {0, 0}));
  // The Cantor set meets its translate by 1 in the single point 1.
  CHECK(piece_intersects(cantor(), {1}));
  CHECK(piece_intersects(cantor(), {-1}));
  // {0, 2} in base 4 lies in [0, 2/3], so it misses its translate by 1.
  CHECK_FALSE(piece_intersects(DigitSet::make(4, 1, {{0}, {2}}), {1}));
  CHECK_FALSE(piece_intersects(DigitSet::make(4, 1, {{0}, {2}}), {-1}));
  CHECK(piece_intersects(DigitSet::make(3, 1, {{0}, {1}, {2}}), {1}));
  // Diagonal pair: E is the diagonal, which meets its translate by (1, 1).
  auto diag = DigitSet::make(2, 2, {{0, 0}, {1, 1}});
  CHECK(piece_intersects(diag, {1, 1}));
  CHECK_FALSE(piece_intersects(diag, {1, 0}));
  CHECK_THROWS_AS(piece_intersects(diag, {2, 0}), DomainError);
  CHECK_THROWS_AS(piece_intersects(diag, {1}), DomainError);
}

TEST_CASE("intersection is symmetric under negation") {
  std::mt19937_64 rng(oracle::test_seed() + 37);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const auto d = oracle::random_digitset(rng, n, 2, 1 + static_cast<int>(rng() % (n * n)));
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b) CHECK(piece_intersects(d, {a, b}) == piece_intersects(d, {-a, -b}));
  }
}

TEST_CASE("Hata connectivity") {
  CHECK(hata_connected(carpet()));
  CHECK(hata_connected(DigitSet::make(3, 1, {{0}, {1}, {2}})));
  CHECK(hata_connected(DigitSet::make(2, 2, {{0, 0}, {1, 1}})));
  CHECK_FALSE(hata_connected(cantor()));
  CHECK_FALSE(hata_connected(DigitSet::make(3, 2, {{0, 0}, {2, 2}})));
}

TEST_CASE("trivial point verdicts") {
  auto v = trivial_point_status(cantor(), 4);
  REQUIRE(std::holds_alternative<HasTrivialPoint>(v));
  CHECK(std::get<HasTrivialPoint>(v).level == 2);
  CHECK(verdict_name(v) == "HasTrivialPoint");

  v = trivial_point_status(carpet(), 4);
  REQUIRE(std::holds_alternative<NoTrivialPoint>(v));
  CHECK(std::get<NoTrivialPoint>(v).certificate == "hata-connected");

  // Diagonal: reduces to the full segment, which is connected.
  CHECK(std::holds_alternative<NoTrivialPoint>(trivial_point_status(DigitSet::make(2, 2, {{0, 0}, {1, 1}}), 4)));
  CHECK(std::holds_alternative<Singleton>(trivial_point_status(DigitSet::make(5, 2, {{2, 3}}), 4)));

  // Corner pair (0,0),(3,3) at n=4 reduces to {0, 3} on a line: a Cantor
  // set on the diagonal, with its first island at level 2.
  v = trivial_point_status(DigitSet::make(4, 2, {{0, 0}, {3, 3}}), 3);
  REQUIRE(std::holds_alternative<HasTrivialPoint>(v));
  CHECK(std::get<HasTrivialPoint>(v).level == 2);

  CHECK(default_kmax(1) == 6);
  CHECK(default_kmax(2) == 6);
  CHECK(default_kmax(3) == 3);
  CHECK(default_kmax(5) == 2);
}

TEST_CASE("budget errors name the level") {
  try {
    scan_level(carpet(), 5, MemoryBudget{256});
    FAIL("expected BudgetError");
  } catch (const BudgetError& e) {
    CHECK(std::string(e.what()).starts_with("at level 5: "));
  }
}

TEST_CASE("labeling equals flood fill on random sets") {
  std::mt19937_64 rng(oracle::test_seed() + 41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int count = 1 + static_cast<int>(rng() % (n * n));
    const auto d = oracle::random_digitset(rng, n, 2, count);
    for (int k = 1; k <= 3; ++k) {
      const auto grid = build_grid(d, k);
      const auto lab = label_components(grid);
      const auto dense = oracle::dense_grid(d, k);
      CHECK(library_partition(lab) == oracle::flood_fill_partition(dense));

      std::set<std::uint64_t> islands;
      const auto cells = grid.occupied_cells();
      for (std::size_t r = 0; r < cells.size(); ++r)
        if (lab.components[lab.label[r]].is_island) islands.insert(cells[r]);
      CHECK(islands == oracle::island_cells(dense));
    }
  }
}

TEST_CASE("islands persist to deeper levels") {
  // An island at level k is a closed set away from the boundary, and E_{k+1}
  // inside it has no way out: an island at k implies one at k+1.
  std::mt19937_64 rng(oracle::test_seed() + 43);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 2);
    const auto d = oracle::random_digitset(rng, n, 2, 2 + static_cast<int>(rng() % (n * n - 2)));
    bool had = false;
    for (int k = 1; k <= 3; ++k) {
      const bool has = !scan_level(d, k).island_ids.empty();
      if (had) CHECK(has);
      had = had || has;
    }
  }
}
