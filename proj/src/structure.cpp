#include "fracube/structure.hpp"

#include <algorithm>
#include <set>

#include "fracube/error.hpp"

namespace fracube {
namespace {

void require_square(const DigitSet& d, const char* what) {
  if (d.dim() != 2)
    throw DomainError(std::string(what) + " is defined only for d = 2, got d = " + std::to_string(d.dim()));
}

}  // namespace

bool is_latin(const DigitSet& d) {
  require_square(d, "the Latin property");
  const int n = d.base();
  for (int axis = 0; axis < 2; ++axis) {
    std::vector<std::size_t> counts(n, 0);
    for (const auto& h : d.digits()) ++counts[h[axis]];
    if (std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) != counts.end()) return false;
  }
  return true;
}

std::array<DigitSet, 8> dihedral_images(const DigitSet& d) {
  require_square(d, "dihedral symmetry");
  const int top = d.base() - 1;
  auto map = [&](int g, const Digit& h) -> Digit {
    int x = h[0], y = h[1];
    if (g & 4) std::swap(x, y);
    if (g & 1) x = top - x;
    if (g & 2) y = top - y;
    return {x, y};
  };
  auto image = [&](int g) {
    std::vector<Digit> digits;
    digits.reserve(d.size());
    for (const auto& h : d.digits()) digits.push_back(map(g, h));
    return DigitSet::make(d.base(), 2, std::move(digits));
  };
  return {image(0), image(1), image(2), image(3), image(4), image(5), image(6), image(7)};
}

DigitSet dihedral_canonical(const DigitSet& d) {
  auto images = dihedral_images(d);
  return *std::min_element(images.begin(), images.end(),
                           [](const DigitSet& a, const DigitSet& b) { return a.digits() < b.digits(); });
}

std::string to_string(PrescreenOutcome o) {
  switch (o) {
    case PrescreenOutcome::RuledOut: return "RULED_OUT";
    case PrescreenOutcome::Possible: return "POSSIBLE";
    case PrescreenOutcome::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string to_string(ProductForm f) {
  switch (f) {
    case ProductForm::FullColumnProduct: return "full-column-product";
    case ProductForm::FullRowProduct: return "full-row-product";
    case ProductForm::Latin: return "latin";
  }
  return "?";
}

PrescreenReport tH_prescreen(const DigitSet& d, const TrivialPointVerdict& verdict) {
  if (std::holds_alternative<HasTrivialPoint>(verdict))
    return {PrescreenOutcome::RuledOut, std::nullopt, "trivial point exists"};
  require_square(d, "the product/Latin screen");

  // D = A x B with one factor the full range {0..n-1}.
  std::set<int> xs, ys;
  for (const auto& h : d.digits()) {
    xs.insert(h[0]);
    ys.insert(h[1]);
  }
  const auto n = static_cast<std::size_t>(d.base());
  const bool product = xs.size() * ys.size() == d.size();
  if (product && xs.size() == n)
    return {PrescreenOutcome::Possible, ProductForm::FullColumnProduct, "E = [0,1] x C"};
  if (product && ys.size() == n)
    return {PrescreenOutcome::Possible, ProductForm::FullRowProduct, "E = C x [0,1]"};
  if (is_latin(d)) return {PrescreenOutcome::Possible, ProductForm::Latin, "Latin digit set"};
  return {PrescreenOutcome::Inconclusive, std::nullopt, "no necessary condition holds"};
}

}  // namespace fracube
