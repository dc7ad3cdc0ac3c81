#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mq/monoid.hpp"

namespace mq {

struct CanonicalForm {
  std::string key;           // byte string, equal iff isomorphic (same pin shape)
  std::vector<int> labeling; // element -> canonical position
};

// Canonical form of (table, P) under bijections fixing the identity and each
// pinned point's position in the pin sequence. Computed by partition
// refinement with individualization, pruning branches that are equivalent
// under automorphisms discovered along the way; without that pruning the
// kernel groups Z_2^n make the search tree astronomically wide.
CanonicalForm canonical_form(const BipartiteMonoid& b,
                             const std::vector<Elem>& pinned = {});

std::string canonical_key(const BipartiteMonoid& b);

// Lowercase hex of a 64-bit hash of the canonical key, for compact reports.
std::string canonical_key_hex(const BipartiteMonoid& b);

// A bijection a -> b respecting product and P, if one exists.
std::optional<std::vector<Elem>> isomorphic(const BipartiteMonoid& a,
                                            const BipartiteMonoid& b);

// Cheap isomorphism-invariant bucket key: order, |P|, kernel size, idempotent
// count and the element self-product type multiset. Equal fingerprints do not
// imply isomorphism; unequal ones refute it.
std::uint64_t fingerprint(const BipartiteMonoid& b);

}  // namespace mq
