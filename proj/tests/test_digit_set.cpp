#include <cmath>
#include <random>

#include "doctest.h"
#include "fracube/digit_set.hpp"
#include "fracube/error.hpp"
#include "oracles.hpp"

using namespace fracube;

namespace {

const char* kCarpetGrid =
    "fcube 1\n"
    "# Sierpinski carpet\n"
    "n=3 d=2\n"
    "###\n"
    "#.#\n"
    "###\n";

}  // namespace

TEST_CASE("parse coordinate-list form") {
  auto d = parse_digitset("fcube 1\nn=3 d=1\ndigit: 0\ndigit: 2\n");
  CHECK(d.base() == 3);
  CHECK(d.dim() == 1);
  CHECK(d.digits() == std::vector<Digit>{{0}, {2}});
}

TEST_CASE("parse grid form") {
  auto d = parse_digitset(kCarpetGrid);
  CHECK(d.size() == 8);
  CHECK_FALSE(d.contains({1, 1}));
  CHECK(d.contains({0, 2}));

  // Row r from the top holds y = n-1-r.
  auto corner = parse_digitset("fcube 1\nn=2 d=2\n#.\n..\n");
  CHECK(corner.digits() == std::vector<Digit>{{0, 1}});
}

TEST_CASE("fourteen marked cells at n=5") {
  auto d = parse_digitset(
      "fcube 1\nn=5 d=2\n"
      "#####\n"
      "#...#\n"
      "#...#\n"
      "#...#\n"
      "#.#.#\n");
  CHECK(d.size() == 14);
  CHECK(hausdorff_dimension(d).value == doctest::Approx(std::log(14.0) / std::log(5.0)).epsilon(1e-15));
}

TEST_CASE("serialization is canonical and round-trips") {
  auto d = parse_digitset("fcube 1\nn=3 d=2\ndigit: 2 2\ndigit: 0 1\ndigit: 0 0\n");
  const auto text = serialize(d);
  CHECK(text == "fcube 1\nn=3 d=2\ndigit: 0 0\ndigit: 0 1\ndigit: 2 2\n");
  CHECK(serialize(parse_digitset(text)) == text);
  CHECK(serialize(parse_digitset(kCarpetGrid)) == serialize(parse_digitset(serialize(parse_digitset(kCarpetGrid)))));

  std::mt19937_64 rng(oracle::test_seed());
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int dim = 1 + static_cast<int>(rng() % 3);
    const int count = 1 + static_cast<int>(rng() % oracle::ipow(n, dim));
    auto r = oracle::random_digitset(rng, n, dim, count);
    CHECK(parse_digitset(serialize(r)) == r);
  }
}

TEST_CASE("parse errors carry positions") {
  auto expect_error = [](const char* text, std::size_t line) {
    try {
      parse_digitset(text);
      FAIL("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_error("fcube 2\nn=3 d=1\ndigit: 0\n", 1);
  expect_error("fcube 1\nn=1 d=1\ndigit: 0\n", 2);
  expect_error("fcube 1\nn=3 d=1\ndigit: 3\n", 3);
  expect_error("fcube 1\nn=3 d=1\ndigit: 0\ndigit: 0\n", 4);
  expect_error("fcube 1\nn=3 d=1\n", 2);
  expect_error("fcube 1\nn=3 d=2\ndigit: 0\n", 3);
  expect_error("fcube 1\nn=3 d=2\n###\n#x#\n###\n", 4);
  expect_error("fcube 1\nn=3 d=2\n###\n##\n###\n", 4);
  expect_error("fcube 1\nn=3 d=2\n...\n...\n...\n", 5);
  expect_error("fcube 1\nn=3 d=1\ndigit: a\n", 3);

  try {
    parse_digitset("fcube 1\nn=3 d=2\ndigit: 0 7\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 10);
  }
}

TEST_CASE("DigitSet::make validates") {
  CHECK_THROWS_AS(DigitSet::make(1, 1, {{0}}), DomainError);
  CHECK_THROWS_AS(DigitSet::make(3, 1, {}), DomainError);
  CHECK_THROWS_AS(DigitSet::make(3, 1, {{0}, {0}}), DomainError);
  CHECK_THROWS_AS(DigitSet::make(3, 2, {{0}}), DomainError);
  CHECK_THROWS_AS(DigitSet::make(3, 1, {{-1}}), DomainError);
}

TEST_CASE("compose_level examples") {
  auto full = DigitSet::make(2, 1, {{0}, {1}});
  CHECK(compose_level(full, 2) == DigitSet::make(4, 1, {{0}, {1}, {2}, {3}}));

  auto cantor = DigitSet::make(3, 1, {{0}, {2}});
  CHECK(compose_level(cantor, 2) == DigitSet::make(9, 1, {{0}, {2}, {6}, {8}}));
  CHECK(compose_level(cantor, 1) == cantor);

  CHECK_THROWS_AS(compose_level(cantor, 0), DomainError);
  CHECK_THROWS_AS(compose_level(cantor, 40), DomainError);
}

TEST_CASE("compose_level properties") {
  std::mt19937_64 rng(oracle::test_seed() + 11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int dim = 1 + static_cast<int>(rng() % 2);
    const int count = 1 + static_cast<int>(rng() % oracle::ipow(n, dim));
    const auto d = oracle::random_digitset(rng, n, dim, count);
    for (int k = 1; k <= 3; ++k) {
      const auto dk = compose_level(d, k);
      CHECK(dk.size() == oracle::ipow(d.size(), k));
      CHECK(hausdorff_dimension(dk).value == doctest::Approx(hausdorff_dimension(d).value).epsilon(1e-12));
    }
    CHECK(compose_level(compose_level(d, 2), 2) == compose_level(d, 4));
    CHECK(compose_level(compose_level(d, 3), 1) == compose_level(d, 3));
  }
}

TEST_CASE("hausdorff_dimension closed forms") {
  auto with_count = [](int n, int count) {
    std::vector<Digit> digits;
    for (int i = 0; i < count; ++i) digits.push_back({i % n, i / n});
    return hausdorff_dimension(DigitSet::make(n, 2, digits));
  };
  auto k14 = with_count(5, 14);
  CHECK(k14.count == 14);
  CHECK(k14.base == 5);
  CHECK(std::abs(k14.value - 1.6397385131956) < 1e-12);
  CHECK(std::abs(with_count(6, 24).value - 1.7737056144691) < 1e-12);
  CHECK(hausdorff_dimension(DigitSet::make(7, 1, {{3}})).value == 0.0);
}
