#include "mq/monoid.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mq {

BipartiteMonoid make_bm(Monoid m, const std::vector<Elem>& pset) {
  BipartiteMonoid b;
  b.pmask.assign(m.size, 0);
  for (Elem x : pset) {
    if (x < 0 || x >= m.size) throw std::invalid_argument("P element out of range");
    b.pmask[x] = 1;
  }
  b.m = std::move(m);
  return b;
}

std::string Violation::describe() const {
  auto s = [](Elem e) { return std::to_string(e); };
  switch (kind) {
    case ViolationKind::BadIndex:
      return "table entry at (" + s(x) + "," + s(y) + ") out of range";
    case ViolationKind::NotCommutative:
      return "commutativity fails at (" + s(x) + "," + s(y) + ")";
    case ViolationKind::NotAssociative:
      return "associativity fails at (" + s(x) + "," + s(y) + "," + s(z) + ")";
    case ViolationKind::IdentityLaw:
      return "identity law fails at " + s(x);
    case ViolationKind::NotGenerating:
      return "declared generators do not generate";
  }
  return "unknown violation";
}

std::vector<Violation> check_axioms(const Monoid& m) {
  std::vector<Violation> out;
  const int n = m.size;
  if (n <= 0 || m.table.size() != static_cast<std::size_t>(n) * n) {
    out.push_back({ViolationKind::BadIndex, -1, -1, -1});
    return out;
  }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      Elem v = m.table[x * n + y];
      if (v < 0 || v >= n) {
        out.push_back({ViolationKind::BadIndex, x, y, -1});
        return out; // later checks would index garbage
      }
    }
  for (Elem x = 0; x < n; ++x) {
    if (m.mul(0, x) != x || m.mul(x, 0) != x)
      out.push_back({ViolationKind::IdentityLaw, x, -1, -1});
  }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = x + 1; y < n; ++y)
      if (m.mul(x, y) != m.mul(y, x))
        out.push_back({ViolationKind::NotCommutative, x, y, -1});
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)))
          out.push_back({ViolationKind::NotAssociative, x, y, z});
  if (!m.generators.empty()) {
    if (closure_of(m, m.generators).size() != static_cast<std::size_t>(n))
      out.push_back({ViolationKind::NotGenerating, -1, -1, -1});
  }
  return out;
}

bool indistinguishable(const BipartiteMonoid& b, Elem x, Elem y) {
  const int n = b.size();
  for (Elem z = 0; z < n; ++z)
    if (b.in_p(b.mul(x, z)) != b.in_p(b.mul(y, z))) return false;
  return true;
}

Reduction reduce(const BipartiteMonoid& b) {
  const int n = b.size();
  // Indistinguishability classes are exactly equal rows of the P-profile
  // matrix row(x) = [xz in P]_z.
  std::map<std::vector<char>, int> classes;
  std::vector<int> cls(n);
  std::vector<Elem> least_member;
  for (Elem x = 0; x < n; ++x) {
    std::vector<char> row(n);
    for (Elem z = 0; z < n; ++z) row[z] = b.in_p(b.mul(x, z));
    auto it = classes.find(row);
    if (it == classes.end()) {
      int id = static_cast<int>(least_member.size());
      classes.emplace(std::move(row), id);
      least_member.push_back(x);
      cls[x] = id;
    } else {
      cls[x] = it->second;
    }
  }
  // Re-rank classes by least member so the identity class becomes 0.
  std::vector<int> order(least_member.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int c) { return least_member[a] < least_member[c]; });
  std::vector<int> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

  const int k = static_cast<int>(order.size());
  Reduction r;
  r.projection.resize(n);
  for (Elem x = 0; x < n; ++x) r.projection[x] = rank[cls[x]];

  std::vector<Elem> rep(k);
  for (Elem x = n - 1; x >= 0; --x) rep[r.projection[x]] = x;

  Monoid q;
  q.size = k;
  q.table.resize(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      q.table[i * k + j] = r.projection[b.mul(rep[i], rep[j])];
  for (Elem g : b.m.generators) {
    Elem img = r.projection[g];
    if (std::find(q.generators.begin(), q.generators.end(), img) == q.generators.end())
      q.generators.push_back(img);
  }

  r.bm.m = std::move(q);
  r.bm.pmask.resize(k);
  for (int i = 0; i < k; ++i) r.bm.pmask[i] = b.pmask[rep[i]];
  return r;
}

bool is_reduced(const BipartiteMonoid& b) {
  return reduce(b).bm.size() == b.size();
}

KernelInfo kernel(const Monoid& m) {
  const int n = m.size;
  std::vector<char> inter(n, 1);
  std::vector<char> ideal(n);
  for (Elem x = 0; x < n; ++x) {
    std::fill(ideal.begin(), ideal.end(), 0);
    for (Elem q = 0; q < n; ++q) ideal[m.mul(x, q)] = 1;
    for (Elem e = 0; e < n; ++e) inter[e] &= ideal[e];
  }
  KernelInfo k;
  k.mask = inter;
  for (Elem e = 0; e < n; ++e)
    if (inter[e]) k.elems.push_back(e);
  // The kernel of a finite commutative monoid is a group; its identity is
  // the idempotent power of any member.
  Elem a = k.elems.front();
  Elem p = a;
  for (int i = 0; i < n + 1; ++i) {
    if (m.mul(p, p) == p) break;
    p = m.mul(p, a);
  }
  k.identity = p;
  return k;
}

bool kernel_has_exponent_two(const Monoid& m) {
  KernelInfo k = kernel(m);
  for (Elem e : k.elems)
    if (m.mul(e, e) != k.identity) return false;
  return true;
}

bool is_regular(const BipartiteMonoid& b) {
  KernelInfo k = kernel(b.m);
  int c = 0;
  for (Elem e : k.elems) c += b.in_p(e);
  return c == 1;
}

bool is_normal(const BipartiteMonoid& b) {
  KernelInfo k = kernel(b.m);
  for (Elem e : k.elems)
    if (b.in_p(e) != (e == k.identity)) return false;
  return true;
}

std::vector<Elem> meximal_set(const BipartiteMonoid& b, Elem x) {
  const int n = b.size();
  std::vector<Elem> wit; // z with xz in P
  for (Elem z = 0; z < n; ++z)
    if (b.in_p(b.mul(x, z))) wit.push_back(z);
  std::vector<Elem> out;
  for (Elem y = 0; y < n; ++y) {
    bool clash = false;
    for (Elem z : wit)
      if (b.in_p(b.mul(y, z))) {
        clash = true;
        break;
      }
    if (!clash) out.push_back(y);
  }
  return out;
}

std::vector<Elem> closure_of(const Monoid& m, const std::vector<Elem>& seed) {
  std::vector<char> in(m.size, 0);
  in[0] = 1;
  std::vector<Elem> work{0};
  for (Elem s : seed)
    if (!in[s]) {
      in[s] = 1;
      work.push_back(s);
    }
  for (std::size_t i = 0; i < work.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Elem p = m.mul(work[i], work[j]);
      if (!in[p]) {
        in[p] = 1;
        work.push_back(p);
      }
    }
  std::vector<Elem> out;
  for (Elem e = 0; e < m.size; ++e)
    if (in[e]) out.push_back(e);
  return out;
}

Submonoid submonoid(const BipartiteMonoid& b, const std::vector<Elem>& seed) {
  Submonoid s;
  s.inclusion = closure_of(b.m, seed);
  const int k = static_cast<int>(s.inclusion.size());
  std::vector<int> back(b.size(), -1);
  for (int i = 0; i < k; ++i) back[s.inclusion[i]] = i;
  Monoid q;
  q.size = k;
  q.table.resize(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      q.table[i * k + j] = back[b.mul(s.inclusion[i], s.inclusion[j])];
  for (Elem g : seed)
    if (back[g] >= 0) q.generators.push_back(back[g]);
  s.bm.m = std::move(q);
  s.bm.pmask.resize(k);
  for (int i = 0; i < k; ++i) s.bm.pmask[i] = b.pmask[s.inclusion[i]];
  return s;
}

std::vector<std::string> check_labels(const GrundyLabeledBM& g) {
  std::vector<std::string> out;
  const int n = g.bm.size();
  if (g.labels.size() != static_cast<std::size_t>(n)) {
    out.push_back("label vector has wrong length");
    return out;
  }
  if (g.labels[0] != 0 && g.labels[0] != -1)
    out.push_back("identity labelled " + std::to_string(g.labels[0]) + ", want 0");
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      int lx = g.labels[x], ly = g.labels[y], lp = g.labels[g.bm.mul(x, y)];
      if (lx >= 0 && ly >= 0 && lp >= 0 && lp != (lx ^ ly)) {
        out.push_back("labels not XOR-multiplicative at (" + std::to_string(x) +
                      "," + std::to_string(y) + ")");
        if (out.size() >= 8) return out;
      }
    }
  KernelInfo k = kernel(g.bm.m);
  std::vector<char> seen(k.elems.size(), 0);
  for (Elem e : k.elems) {
    int l = g.labels[e];
    if (l < 0) {
      out.push_back("kernel element " + std::to_string(e) + " unlabelled");
    } else if (l >= static_cast<int>(k.elems.size()) || seen[l]) {
      out.push_back("kernel labels are not a bijection onto 0..|K|-1");
      break;
    } else {
      seen[l] = 1;
    }
  }
  if (g.labels[k.identity] != 0)
    out.push_back("kernel identity not labelled 0");
  return out;
}

}  // namespace mq
