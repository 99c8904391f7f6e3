#pragma once

#include <array>
#include <optional>
#include <string>

#include "fracube/digit_set.hpp"
#include "fracube/topology.hpp"

namespace fracube {

/// Every row and every column holds #D / n digits. d = 2 only.
bool is_latin(const DigitSet& d);

/// The 8 images of a d = 2 digit set under the symmetries of the square;
/// index 0 is the identity.
std::array<DigitSet, 8> dihedral_images(const DigitSet& d);

/// Lexicographically smallest dihedral image (d = 2).
DigitSet dihedral_canonical(const DigitSet& d);

enum class PrescreenOutcome { RuledOut, Possible, Inconclusive };
enum class ProductForm { FullColumnProduct, FullRowProduct, Latin };

struct PrescreenReport {
  PrescreenOutcome outcome;
  std::optional<ProductForm> form;  // set when outcome is Possible
  std::string reason;
};

std::string to_string(PrescreenOutcome o);
std::string to_string(ProductForm f);

/// Necessary-condition screen for dim_tH E = dim_H E: a trivial point rules
/// it out; otherwise E = [0,1] x C, E = C x [0,1], or a Latin digit set is
/// required. Never asserts equality. The product and Latin branches need
/// d = 2.
PrescreenReport tH_prescreen(const DigitSet& d, const TrivialPointVerdict& verdict);

}  // namespace fracube
