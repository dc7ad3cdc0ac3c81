#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "mq/catalog.hpp"
#include "mq/monoid.hpp"
#include "mq/transition.hpp"

namespace mq {

// All ways to adjoin one fresh generator t to q and land in a commutative
// monoid of order at most max_order. Each result contains q as the identity
// prefix 0..q.size-1, has t at index q.size, and carries q's generator list
// plus t. Every abstract extension shows up exactly once: tables are built
// slot by slot in a fixed scan order, so each extension has one normal form.
std::vector<Monoid> simple_extensions(const Monoid& q, int max_order);

// Scheme-level extensions: every extension monoid above, crossed with every
// P-choice over the fresh elements (P restricted to q stays fixed, the
// identity never enters P), with t appended to the sequence. No validity
// filtering happens here.
std::vector<ConstructionScheme> simple_extensions(const ConstructionScheme& s,
                                                  int max_order);

struct CensusEntry {
  std::string key;  // canonical key, hex
  BipartiteMonoid bm;  // representative relabeled into canonical order
};

struct QuotientCensus {
  int max_order = 0;
  bool partial = false;  // a cap or budget was hit, results may be incomplete
  // nonempty orders only; entries sorted by key. The one-element monoid is a
  // quotient (of the zero game alone) but is left out of the report.
  std::map<int, std::vector<CensusEntry>> classes;

  // class counts for every order 2..max_order, zeros included
  std::map<int, int> counts() const;
  bool contains(int order, const std::string& key) const;
};

struct CensusOptions {
  int max_order = 12;
  int jobs = 1;  // >1 switches to the OpenMP path
};

// Breadth-first search over a worklist of bipartite monoids, one size at a
// time, each kept once per isomorphism class. A size-s candidate is admitted
// when it can still be a slice of some genuine quotient: reduced candidates
// are handed to the quotient oracle and enter the census on a yes, unreduced
// ones survive iff their reduction was already censused as genuine (their
// reduction is strictly smaller, so that verdict is final by then). Admitted
// members then grow by one generator in every possible way. The two paths
// below compute identical censuses; the parallel one fans the per-member
// expansion out with OpenMP and merges in sorted order so the output does
// not depend on scheduling.
QuotientCensus enumerate_quotients(const CensusOptions& opts);
QuotientCensus enumerate_quotients_serial(const CensusOptions& opts);
QuotientCensus enumerate_quotients_parallel(const CensusOptions& opts);

// Decides whether (Q, P) itself (as given, no implicit reduction) is the
// misere quotient of some set of games: searches for a construction sequence
// whose transition algebra passes validation, recursing on reductions of the
// proper slices. Results are memoized by canonical key across one oracle.
// After a successful top-level check, witness_seq holds the sequence found.
struct QuotientOracle {
  bool check(const BipartiteMonoid& b);

  std::vector<Elem> witness_seq;

 private:
  std::unordered_map<std::string, bool> memo_;
  bool slice_search(const BipartiteMonoid& b, std::vector<Elem>& seq,
                    const std::vector<Elem>& slice);
};

bool is_quotient(const BipartiteMonoid& b);

// is_quotient plus the evidence: the construction sequence and its valid
// minimex algebra (meaningful only when yes).
struct QuotientWitness {
  bool yes = false;
  std::vector<Elem> seq;
  TransitionAlgebra algebra;
};

QuotientWitness quotient_witness(const BipartiteMonoid& b);

}  // namespace mq
