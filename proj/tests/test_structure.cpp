#include <random>
#include <set>

#include "doctest.h"
#include "fracube/error.hpp"
#include "fracube/structure.hpp"
#include "oracles.hpp"

using namespace fracube;

namespace {

DigitSet carpet() {
  return DigitSet::make(3, 2, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
}

// Cells (x, y) with (x + 2y) mod 6 in {0, 1, 2, 3}: four per row and column.
DigitSet latin_six() {
  std::vector<Digit> digits;
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y)
      if ((x + 2 * y) % 6 < 4) digits.push_back({x, y});
  return DigitSet::make(6, 2, digits);
}

}  // namespace

TEST_CASE("Latin examples") {
  auto l6 = latin_six();
  CHECK(l6.size() == 24);
  CHECK(is_latin(l6));
  CHECK(is_latin(DigitSet::make(2, 2, {{0, 0}, {1, 1}})));
  CHECK(is_latin(DigitSet::make(3, 2, {{0, 0}, {1, 2}, {2, 1}})));
  CHECK_FALSE(is_latin(carpet()));
  CHECK_FALSE(is_latin(DigitSet::make(2, 2, {{0, 0}, {1, 0}})));
  CHECK_THROWS_AS(is_latin(DigitSet::make(3, 1, {{0}})), DomainError);
}

TEST_CASE("dihedral images") {
  auto d = DigitSet::make(3, 2, {{0, 0}, {1, 0}});
  auto images = dihedral_images(d);
  CHECK(images[0] == d);
  std::set<std::vector<Digit>> distinct;
  for (const auto& im : images) distinct.insert(im.digits());
  CHECK(distinct.size() == 8);
  CHECK(dihedral_canonical(d).digits() == *distinct.begin());
  for (const auto& im : images) CHECK(dihedral_canonical(im) == dihedral_canonical(d));

  // The carpet is invariant under the whole group.
  for (const auto& im : dihedral_images(carpet())) CHECK(im == carpet());
}

TEST_CASE("Latin property is dihedral invariant") {
  std::mt19937_64 rng(oracle::test_seed() + 5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int count = 1 + static_cast<int>(rng() % (n * n));
    const auto d = oracle::random_digitset(rng, n, 2, count);
    for (const auto& im : dihedral_images(d)) {
      CHECK(is_latin(im) == is_latin(d));
      CHECK(im.size() == d.size());
    }
  }
  for (const auto& im : dihedral_images(latin_six())) CHECK(is_latin(im));
}

TEST_CASE("prescreen outcomes") {
  const TrivialPointVerdict connected = NoTrivialPoint{"hata-connected"};
  const TrivialPointVerdict unknown = Unknown{4};

  auto r = tH_prescreen(carpet(), connected);
  CHECK(r.outcome == PrescreenOutcome::Inconclusive);
  CHECK_FALSE(r.form.has_value());
  CHECK(to_string(r.outcome) == "INCONCLUSIVE");

  auto column = DigitSet::make(3, 2, {{0, 0}, {1, 0}, {2, 0}, {0, 2}, {1, 2}, {2, 2}});
  r = tH_prescreen(column, unknown);
  CHECK(r.outcome == PrescreenOutcome::Possible);
  CHECK(r.form == ProductForm::FullColumnProduct);
  CHECK(to_string(*r.form) == "full-column-product");

  auto row = DigitSet::make(3, 2, {{0, 0}, {0, 1}, {0, 2}, {2, 0}, {2, 1}, {2, 2}});
  r = tH_prescreen(row, unknown);
  CHECK(r.form == ProductForm::FullRowProduct);
  CHECK(to_string(*r.form) == "full-row-product");

  r = tH_prescreen(latin_six(), connected);
  CHECK(r.outcome == PrescreenOutcome::Possible);
  CHECK(r.form == ProductForm::Latin);
  CHECK(to_string(PrescreenOutcome::Possible) == "POSSIBLE");

  // A trivial point rules equality out, in any dimension.
  r = tH_prescreen(DigitSet::make(3, 1, {{0}, {2}}), HasTrivialPoint{2, 1});
  CHECK(r.outcome == PrescreenOutcome::RuledOut);
  CHECK(to_string(r.outcome) == "RULED_OUT");
  CHECK_THROWS_AS(tH_prescreen(DigitSet::make(3, 3, {{0, 0, 0}}), connected), DomainError);
}
