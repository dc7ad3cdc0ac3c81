#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mq/monoid.hpp"

namespace mq {

// Commutative monoid presentation. Words are exponent vectors over the
// generator list; the identity word is all zeros.
struct Presentation {
  std::vector<std::string> gens; // single-letter names
  std::vector<std::pair<std::vector<int>, std::vector<int>>> relations;
  std::vector<std::vector<int>> pwords;

  bool operator==(const Presentation& o) const {
    return gens == o.gens && relations == o.relations && pwords == o.pwords;
  }
};

// Text form, one presentation per block:
//
//   gens: a,b,c
//   rels: a2=1, b4=b2, b2c=b3, c2=1
//   P: a, b2, ac
//
// Words juxtapose generators with trailing-digit exponents; "1" is the
// identity. Blocks are separated by blank lines.
Presentation parse_presentation(const std::string& block);
std::vector<Presentation> parse_presentation_blocks(const std::string& text);
std::string emit_presentation(const Presentation& p);

// Quotient of the free commutative monoid by the relations, with P designated
// by the pword images. Coincidence-table completion; throws if the element
// count cannot be settled within size_cap.
BipartiteMonoid build_from_presentation(const Presentation& p, int size_cap);

}  // namespace mq
