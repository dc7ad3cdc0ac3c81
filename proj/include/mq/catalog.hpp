#pragma once

#include <vector>

#include "mq/monoid.hpp"

namespace mq {

// A monoid with a distinguished generator sequence x1..xk whose successive
// closures slice it: S_0 = {1}, S_i = <x1..xi>, S_k = Q, with x_i outside
// S_{i-1}. The induced sub-b.m. on each proper slice is expected to reduce
// to a verified quotient; callers check that, the struct just carries data.
struct ConstructionScheme {
  BipartiteMonoid bm;
  std::vector<Elem> seq;
};

enum class Family { T, R, NotApplicable };

struct FamilyLabel {
  Family family = Family::NotApplicable;
  int index = -1;             // T_index / R_{2^index+4}
  bool symbolic_limit = false; // marks the limit object of a tame ladder
};

// The two-element-P catalog.
//
// make_Tn(0) is the trivial object ({1}, {}); make_Tn(1) is ({1,a}, {a})
// with a^2 = 1. For n >= 2 the elements are {1, a} plus kernel z_0..z_{2^n-1}
// with z_i z_j = z_{i xor j}, a^2 = 1, a z_i = z_{i xor 1} and P = {a, z_0}.
// Grundy labels: 1 -> 0, a -> 1, z_i -> i.
GrundyLabeledBM make_Tn(int n);

// make_R(n), n >= 2, extends make_Tn(n) by t and at with t^2 = z_0,
// t z_i = z_i, t a = at, t at = z_1 and labels t -> 0, at -> 1.
// Order is 2^n + 4.
GrundyLabeledBM make_R(int n);

// Adjoins a mirrored copy of the kernel: one new element xbar per kernel
// element x, with y * xbar = (yx)bar and xbar * ybar = xy. P is unchanged,
// the kernel doubles. The labelled overload gives mirrors the new high bit:
// labels(xbar) = labels(x) + |K|.
BipartiteMonoid tame_extend(const BipartiteMonoid& b);
GrundyLabeledBM tame_extend(const GrundyLabeledBM& g);

BipartiteMonoid tame_power(const BipartiteMonoid& b, int k);
GrundyLabeledBM tame_power(const GrundyLabeledBM& g, int k);

// Identifies a reduced b.m. with two P-elements as T_n or R_{2^n+4} up to
// isomorphism; anything else comes back NotApplicable.
FamilyLabel classify_p2(const BipartiteMonoid& b);

// Natural generator sequence realizing a catalog quotient: a, then the
// kernel basis z_2, z_4, .., z_{2^{n-1}}, then (for R) t.
ConstructionScheme catalog_scheme(Family f, int n);

// ---------------------------------------------------------------------------
// Option-set trichotomy over a normal b.m. with P = {a, z}.
// z is the kernel identity, a the other P element, az their product.

// E meets both {a, z} and {1, az}.
bool is_complemented(const BipartiteMonoid& b, const std::vector<Elem>& E);

// E intersect {1, a, z, az}, ascending.
std::vector<Elem> discriminant(const BipartiteMonoid& b, const std::vector<Elem>& E);

bool is_restive(const BipartiteMonoid& b, const std::vector<Elem>& E);  // {1,z} or {a,az}
bool is_restless(const BipartiteMonoid& b, const std::vector<Elem>& E); // {a,z} or {1,az}
bool is_tame_set(const BipartiteMonoid& b, const std::vector<Elem>& E); // neither
bool is_wild_set(const BipartiteMonoid& b, const std::vector<Elem>& E);

}  // namespace mq
