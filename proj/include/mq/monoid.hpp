#pragma once

#include <string>
#include <vector>

namespace mq {

// Elements of a finite commutative monoid are dense indices 0..size-1,
// with 0 always the identity.
using Elem = int;

struct Monoid {
  int size = 0;
  std::vector<int> table;       // row-major size*size product table
  std::vector<Elem> generators; // optional distinguished generating set

  Elem mul(Elem x, Elem y) const { return table[x * size + y]; }

  Elem power(Elem x, int k) const {
    Elem r = 0;
    for (int i = 0; i < k; ++i) r = mul(r, x);
    return r;
  }

  bool operator==(const Monoid& o) const {
    return size == o.size && table == o.table;
  }
};

// A commutative monoid with a designated subset P of its elements.
// P never contains the identity for the objects this library cares about,
// but the type itself does not enforce that.
struct BipartiteMonoid {
  Monoid m;
  std::vector<char> pmask; // size-length characteristic vector of P

  int size() const { return m.size; }
  Elem mul(Elem x, Elem y) const { return m.mul(x, y); }
  bool in_p(Elem x) const { return pmask[x] != 0; }

  std::vector<Elem> pset() const {
    std::vector<Elem> out;
    for (Elem x = 0; x < m.size; ++x)
      if (pmask[x]) out.push_back(x);
    return out;
  }

  bool operator==(const BipartiteMonoid& o) const {
    return m == o.m && pmask == o.pmask;
  }
};

BipartiteMonoid make_bm(Monoid m, const std::vector<Elem>& pset);

// ---------------------------------------------------------------------------
// Structure checks

enum class ViolationKind {
  BadIndex,       // table entry out of range
  NotCommutative, // xy != yx
  NotAssociative, // (xy)z != x(yz)
  IdentityLaw,    // 0*x != x
  NotGenerating,  // declared generators fail to generate
};

struct Violation {
  ViolationKind kind;
  Elem x = -1, y = -1, z = -1;
  std::string describe() const;
};

// Scans the whole table; an empty report means the axioms hold.
std::vector<Violation> check_axioms(const Monoid& m);

// ---------------------------------------------------------------------------
// Indistinguishability and reduction

// True when xz is in P exactly when yz is, for every z.
bool indistinguishable(const BipartiteMonoid& b, Elem x, Elem y);

struct Reduction {
  BipartiteMonoid bm;            // the reduced quotient
  std::vector<Elem> projection;  // parent element -> reduced element
};

// Quotient by the indistinguishability congruence. Classes are ordered by
// their smallest member, so the identity class stays at index 0.
Reduction reduce(const BipartiteMonoid& b);

bool is_reduced(const BipartiteMonoid& b);

// ---------------------------------------------------------------------------
// Kernel (minimal ideal)

struct KernelInfo {
  std::vector<Elem> elems; // ascending
  Elem identity = -1;      // the unique idempotent of the kernel
  std::vector<char> mask;  // size-length membership mask
};

// Intersection of all principal ideals xQ. For a finite commutative monoid
// this is a group; identity is its idempotent.
KernelInfo kernel(const Monoid& m);

// True when the kernel group satisfies k*k = identity for all k.
bool kernel_has_exponent_two(const Monoid& m);

// |K Intersect P| == 1.
bool is_regular(const BipartiteMonoid& b);

// K Intersect P == {kernel identity}.
bool is_normal(const BipartiteMonoid& b);

// ---------------------------------------------------------------------------
// Meximal sets

// M_x = { y : there is no z with xz in P and yz in P }.
std::vector<Elem> meximal_set(const BipartiteMonoid& b, Elem x);

// ---------------------------------------------------------------------------
// Submonoids

// Smallest submonoid containing the seed (and the identity), as element
// indices of the parent, ascending.
std::vector<Elem> closure_of(const Monoid& m, const std::vector<Elem>& seed);

struct Submonoid {
  BipartiteMonoid bm;           // re-indexed copy with induced P
  std::vector<Elem> inclusion;  // sub element -> parent element
};

Submonoid submonoid(const BipartiteMonoid& b, const std::vector<Elem>& seed);

// ---------------------------------------------------------------------------
// Grundy-labelled monoids

// labels[x] = Grundy value pretended by x, or -1 where undefined.
// Where defined, labels are XOR-multiplicative and restrict to a bijection
// K -> {0..|K|-1} on the kernel of a normal quotient.
struct GrundyLabeledBM {
  BipartiteMonoid bm;
  std::vector<int> labels;

  int label(Elem x) const { return labels[x]; }
};

// Diagnostic scan of the labelling invariants; empty result means coherent.
std::vector<std::string> check_labels(const GrundyLabeledBM& g);

}  // namespace mq
