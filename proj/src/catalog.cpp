#include "mq/catalog.hpp"

#include <algorithm>
#include <stdexcept>

#include "mq/canonical.hpp"

namespace mq {

namespace {

Monoid empty_table(int n) {
  Monoid m;
  m.size = n;
  m.table.assign(static_cast<std::size_t>(n) * n, 0);
  return m;
}

void set(Monoid& m, Elem x, Elem y, Elem v) {
  m.table[x * m.size + y] = v;
  m.table[y * m.size + x] = v;
}

}  // namespace

GrundyLabeledBM make_Tn(int n) {
  if (n < 0) throw std::invalid_argument("make_Tn: n must be >= 0");
  if (n == 0) {
    GrundyLabeledBM g;
    g.bm = make_bm(empty_table(1), {});
    g.labels = {0};
    return g;
  }
  if (n == 1) {
    Monoid m = empty_table(2);
    set(m, 0, 0, 0);
    set(m, 0, 1, 1);
    set(m, 1, 1, 0);
    m.generators = {1};
    GrundyLabeledBM g;
    g.bm = make_bm(std::move(m), {1});
    g.labels = {0, 1};
    return g;
  }
  const int K = 1 << n;
  const int size = K + 2;
  Monoid m = empty_table(size);
  auto z = [&](int i) { return 2 + i; };
  for (Elem x = 0; x < size; ++x) set(m, 0, x, x);
  set(m, 1, 1, 0); // a^2 = 1
  for (int i = 0; i < K; ++i) {
    set(m, 1, z(i), z(i ^ 1));
    for (int j = i; j < K; ++j) set(m, z(i), z(j), z(i ^ j));
  }
  m.generators.push_back(1);
  for (int bit = 1; bit < n; ++bit) m.generators.push_back(z(1 << bit));
  GrundyLabeledBM g;
  g.bm = make_bm(std::move(m), {1, z(0)});
  g.labels.assign(size, -1);
  g.labels[0] = 0;
  g.labels[1] = 1;
  for (int i = 0; i < K; ++i) g.labels[z(i)] = i;
  return g;
}

GrundyLabeledBM make_R(int n) {
  if (n < 2) throw std::invalid_argument("make_R: n must be >= 2");
  GrundyLabeledBM base = make_Tn(n);
  const int K = 1 << n;
  const int size = K + 4;
  const Elem t = K + 2, at = K + 3;
  Monoid m = empty_table(size);
  for (Elem x = 0; x < base.bm.size(); ++x)
    for (Elem y = 0; y < base.bm.size(); ++y)
      m.table[x * size + y] = base.bm.mul(x, y);
  auto z = [&](int i) { return 2 + i; };
  set(m, 0, t, t);
  set(m, 0, at, at);
  set(m, 1, t, at); // a t = at
  set(m, 1, at, t);
  for (int i = 0; i < K; ++i) {
    set(m, t, z(i), z(i));
    set(m, at, z(i), z(i ^ 1));
  }
  set(m, t, t, z(0));
  set(m, t, at, z(1));
  set(m, at, at, z(0));
  m.generators = base.bm.m.generators;
  m.generators.push_back(t);
  GrundyLabeledBM g;
  g.bm = make_bm(std::move(m), {1, z(0)});
  g.labels = base.labels;
  g.labels.push_back(0); // t
  g.labels.push_back(1); // at
  return g;
}

BipartiteMonoid tame_extend(const BipartiteMonoid& b) {
  const int n = b.size();
  KernelInfo k = kernel(b.m);
  const int r = static_cast<int>(k.elems.size());
  std::vector<int> kpos(n, -1);
  for (int j = 0; j < r; ++j) kpos[k.elems[j]] = j;
  Monoid m = empty_table(n + r);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      m.table[x * m.size + y] = b.mul(x, y);
  for (Elem x = 0; x < n; ++x)
    for (int j = 0; j < r; ++j)
      set(m, x, n + j, n + kpos[b.mul(x, k.elems[j])]);
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j)
      set(m, n + i, n + j, b.mul(k.elems[i], k.elems[j]));
  m.generators = b.m.generators;
  m.generators.push_back(n + kpos[k.identity]);
  BipartiteMonoid out;
  out.m = std::move(m);
  out.pmask = b.pmask;
  out.pmask.resize(n + r, 0);
  return out;
}

GrundyLabeledBM tame_extend(const GrundyLabeledBM& g) {
  const int n = g.bm.size();
  KernelInfo k = kernel(g.bm.m);
  const int r = static_cast<int>(k.elems.size());
  GrundyLabeledBM out;
  out.bm = tame_extend(g.bm);
  out.labels = g.labels;
  out.labels.resize(n + r, -1);
  for (int j = 0; j < r; ++j) {
    int l = g.labels[k.elems[j]];
    out.labels[n + j] = l < 0 ? -1 : l + r;
  }
  return out;
}

BipartiteMonoid tame_power(const BipartiteMonoid& b, int k) {
  BipartiteMonoid out = b;
  for (int i = 0; i < k; ++i) out = tame_extend(out);
  return out;
}

GrundyLabeledBM tame_power(const GrundyLabeledBM& g, int k) {
  GrundyLabeledBM out = g;
  for (int i = 0; i < k; ++i) out = tame_extend(out);
  return out;
}

FamilyLabel classify_p2(const BipartiteMonoid& b) {
  FamilyLabel na;
  int psize = 0;
  for (Elem x = 0; x < b.size(); ++x) psize += b.in_p(x);
  if (psize != 2) return na;
  const int size = b.size();
  for (int n = 2; n < 30; ++n) {
    if ((1 << n) + 2 == size && isomorphic(b, make_Tn(n).bm))
      return {Family::T, n, false};
    if ((1 << n) + 4 == size && isomorphic(b, make_R(n).bm))
      return {Family::R, n, false};
    if ((1 << n) + 2 > size) break;
  }
  return na;
}

ConstructionScheme catalog_scheme(Family f, int n) {
  ConstructionScheme s;
  if (f == Family::T) {
    GrundyLabeledBM g = make_Tn(n);
    s.bm = g.bm;
  } else if (f == Family::R) {
    GrundyLabeledBM g = make_R(n);
    s.bm = g.bm;
  } else {
    throw std::invalid_argument("catalog_scheme: need T or R");
  }
  if (n >= 1) s.seq.push_back(1);
  for (int bit = 1; bit < n; ++bit) s.seq.push_back(2 + (1 << bit));
  if (f == Family::R) s.seq.push_back((1 << n) + 2);
  return s;
}

namespace {

// a, z, az for a normal b.m. with exactly two P elements, one of which is
// the kernel identity.
struct AzFrame {
  Elem one, a, z, az;
};

AzFrame az_frame(const BipartiteMonoid& b) {
  KernelInfo k = kernel(b.m);
  Elem z = k.identity, a = -1;
  for (Elem x = 0; x < b.size(); ++x)
    if (b.in_p(x) && x != z) a = x;
  if (a < 0 || !b.in_p(z))
    throw std::invalid_argument("option-set trichotomy needs P = {a, kernel identity}");
  return {0, a, z, b.mul(a, z)};
}

bool contains(const std::vector<Elem>& v, Elem x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

bool is_complemented(const BipartiteMonoid& b, const std::vector<Elem>& E) {
  AzFrame f = az_frame(b);
  return (contains(E, f.a) || contains(E, f.z)) &&
         (contains(E, f.one) || contains(E, f.az));
}

std::vector<Elem> discriminant(const BipartiteMonoid& b, const std::vector<Elem>& E) {
  AzFrame f = az_frame(b);
  std::vector<Elem> out;
  for (Elem c : {f.one, f.a, f.z, f.az})
    if (contains(E, c) && !contains(out, c)) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool delta_is(const BipartiteMonoid& b, const std::vector<Elem>& E, Elem u, Elem v) {
  std::vector<Elem> want{u, v};
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());
  return discriminant(b, E) == want;
}

}  // namespace

bool is_restive(const BipartiteMonoid& b, const std::vector<Elem>& E) {
  AzFrame f = az_frame(b);
  return delta_is(b, E, f.one, f.z) || delta_is(b, E, f.a, f.az);
}

bool is_restless(const BipartiteMonoid& b, const std::vector<Elem>& E) {
  AzFrame f = az_frame(b);
  return delta_is(b, E, f.a, f.z) || delta_is(b, E, f.one, f.az);
}

bool is_tame_set(const BipartiteMonoid& b, const std::vector<Elem>& E) {
  return !is_restive(b, E) && !is_restless(b, E);
}

bool is_wild_set(const BipartiteMonoid& b, const std::vector<Elem>& E) {
  return is_restive(b, E) || is_restless(b, E);
}

}  // namespace mq
