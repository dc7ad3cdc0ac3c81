#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mq/monoid.hpp"

namespace mq {

// One pair (x, E) of a transition table. E is a bitmask over element
// indices, which caps the ambient monoid at 64 elements; everything in
// this project stays far below that.
struct TransitionPair {
  Elem x = 0;
  std::uint64_t mask = 0;

  friend bool operator==(const TransitionPair& a, const TransitionPair& b) {
    return a.x == b.x && a.mask == b.mask;
  }
  friend bool operator<(const TransitionPair& a, const TransitionPair& b) {
    return a.x != b.x ? a.x < b.x : a.mask < b.mask;
  }
};

std::uint64_t mask_of(const std::vector<Elem>& elems);
std::vector<Elem> elems_of(std::uint64_t mask);

// (x,E)(y,F) = (xy, xF u yE).
TransitionPair pair_product(const BipartiteMonoid& b, const TransitionPair& p,
                            const TransitionPair& q);

// A set of pairs over a bipartite monoid, closed under pair_product.
// pairs is kept sorted; generator_pairs records the generating set.
struct TransitionAlgebra {
  BipartiteMonoid base;
  std::vector<TransitionPair> pairs;
  std::vector<TransitionPair> generator_pairs;

  bool contains(const TransitionPair& p) const;
};

// Least closed superset of gens plus the identity pair (1, {}), the empty
// product. Throws if the closure exceeds pair_cap (default: no cap below
// the hard |Q| * 2^|Q| ceiling).
TransitionAlgebra generate_algebra(const BipartiteMonoid& base,
                                   const std::vector<TransitionPair>& gens,
                                   std::size_t pair_cap = 0);

// Closure that gives up as soon as any generated pair breaks the parity
// condition. Returns false on a violation (closure may be incomplete), true
// with the full algebra otherwise. This is the hot path of the census:
// minimex algebras are well-founded and complete by construction, so
// parity is the only condition left to test.
bool generate_algebra_parity(const BipartiteMonoid& base,
                             const std::vector<TransitionPair>& gens,
                             TransitionAlgebra* out = nullptr);

struct ValidityReport {
  bool parity_ok = false;
  bool completeness_ok = false;
  bool closure_ok = false;
  bool wellfounded_ok = false;
  // Defined for every element reachable by the least-fixpoint ranking;
  // total when wellfounded_ok. rank[identity] = 0 requires the seed pair
  // (1, {}).
  std::vector<int> rank;
  std::vector<std::string> counterexamples;

  bool all_ok() const {
    return parity_ok && completeness_ok && closure_ok && wellfounded_ok;
  }
};

// The four conditions: parity on every pair; completeness (every element
// is some pair's value); closure under pair products; well-foundedness by
// least fixpoint: D_1 = {x : (x,{}) in T} must contain the identity, and
// D_{k+1} adds every x with a pair (x,E), E inside D_k. A rank function
// exists iff the fixpoint is all of Q and the identity has rank 0.
ValidityReport validate(const TransitionAlgebra& t);

// The algebra generated by (x_i, M_{x_i} n S_{i-1}) for the scheme's
// sequence, where S_i is the closure of the first i entries.
struct ConstructionScheme;
TransitionAlgebra minimex_algebra(const ConstructionScheme& scheme);
std::vector<TransitionPair> minimex_generators(const ConstructionScheme& scheme);

// True iff the scheme's minimex algebra is parity-valid. Completeness,
// closure and well-foundedness hold by construction when the sequence
// generates the monoid (asserted); see the note at generate_algebra_parity.
bool minimex_valid(const ConstructionScheme& scheme);

// Witness games for a valid algebra, built by rank induction: for each
// element x pick the pair (x,E) whose E lies at strictly lower ranks,
// breaking ties by least option-id list, and realize H_x = {H_y : y in E}.
// Games land in a GameStore (games.hpp); realized[i] = store id for
// element i, pair_games[j] = store id for pairs[j].
struct GameStore;
struct Realization {
  std::vector<int> element_game;  // element -> game id
  std::vector<int> pair_game;     // index into pairs -> game id
};
Realization realize_games(const TransitionAlgebra& t, const ValidityReport& report,
                          GameStore& store);

}  // namespace mq
