#include "mq/canonical.hpp"

#include <algorithm>
#include <stdexcept>

#include "mq/util.hpp"

namespace mq {

namespace {

// Stable re-ranking of color signatures. Signatures are compared as flat
// int sequences; new color ids follow the sorted signature order, which is
// invariant under relabelling because signatures only mention color ids.
struct Refiner {
  const Monoid& m;
  int n;

  explicit Refiner(const Monoid& mm) : m(mm), n(mm.size) {}

  // One sweep: signature of x is (col[x], sorted multiset of (col[y], col[xy])).
  // Returns the refined coloring; stops the caller when the class count is
  // unchanged (a sweep can only split classes).
  int sweep(std::vector<int>& col) const {
    std::vector<std::vector<int>> sig(n);
    for (Elem x = 0; x < n; ++x) {
      std::vector<std::pair<int, int>> row(n);
      for (Elem y = 0; y < n; ++y) row[y] = {col[y], col[m.mul(x, y)]};
      std::sort(row.begin(), row.end());
      auto& s = sig[x];
      s.reserve(2 * n + 1);
      s.push_back(col[x]);
      for (auto& [a, b] : row) {
        s.push_back(a);
        s.push_back(b);
      }
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return sig[a] < sig[b]; });
    int classes = 0;
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) {
      if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++classes;
      out[order[i]] = classes;
    }
    col = std::move(out);
    return classes + 1;
  }

  int refine(std::vector<int>& col) const {
    int classes = 1 + *std::max_element(col.begin(), col.end());
    for (;;) {
      int next = sweep(col);
      if (next == classes) return classes;
      classes = next;
    }
  }
};

struct Searcher {
  const BipartiteMonoid& b;
  const std::vector<Elem>& pinned;
  Refiner refiner;
  int n;

  std::string best;               // least leaf encoding so far
  std::vector<int> best_lab;      // element -> position for best
  std::vector<int> best_inv;      // position -> element
  std::string first;              // first leaf encoding
  std::vector<int> first_inv;
  std::vector<std::vector<int>> autos; // automorphism generators found
  long nodes = 0;

  Searcher(const BipartiteMonoid& bb, const std::vector<Elem>& pins)
      : b(bb), pinned(pins), refiner(bb.m), n(bb.size()) {}

  std::string encode(const std::vector<int>& lab) const {
    std::vector<int> inv(n);
    for (int x = 0; x < n; ++x) inv[lab[x]] = x;
    std::string s;
    const bool wide = n > 255;
    s.reserve(8 + (wide ? 2 : 1) * (static_cast<std::size_t>(n) * n + n) +
              pinned.size());
    s.push_back(static_cast<char>(n & 0xff));
    s.push_back(static_cast<char>((n >> 8) & 0xff));
    auto put = [&](int v) {
      s.push_back(static_cast<char>(v & 0xff));
      if (wide) s.push_back(static_cast<char>((v >> 8) & 0xff));
    };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) put(lab[b.mul(inv[i], inv[j])]);
    for (int i = 0; i < n; ++i) s.push_back(b.in_p(inv[i]) ? 1 : 0);
    for (Elem p : pinned) put(lab[p]);
    return s;
  }

  void leaf(const std::vector<int>& col) {
    std::string enc = encode(col);
    auto record_auto = [&](const std::vector<int>& inv_ref) {
      std::vector<int> a(n);
      bool ident = true;
      for (int x = 0; x < n; ++x) {
        a[x] = inv_ref[col[x]];
        if (a[x] != x) ident = false;
      }
      if (!ident) autos.push_back(std::move(a));
    };
    if (first.empty()) {
      first = enc;
      first_inv.resize(n);
      for (int x = 0; x < n; ++x) first_inv[col[x]] = x;
    } else if (enc == first) {
      record_auto(first_inv);
    }
    if (best.empty() || enc < best) {
      best = std::move(enc);
      best_lab = col;
      best_inv.resize(n);
      for (int x = 0; x < n; ++x) best_inv[col[x]] = x;
    } else if (enc == best) {
      record_auto(best_inv);
    }
  }

  void search(std::vector<int> col, std::vector<Elem>& path) {
    if (++nodes > 2000000)
      throw std::runtime_error("canonical form search exceeded node budget");
    int classes = refiner.refine(col);
    if (classes == n) {
      leaf(col);
      return;
    }
    // First non-singleton class in color order is the branch cell.
    std::vector<int> count(classes, 0);
    for (int x = 0; x < n; ++x) ++count[col[x]];
    int cell = 0;
    while (count[cell] == 1) ++cell;
    std::vector<Elem> members;
    for (int x = 0; x < n; ++x)
      if (col[x] == cell) members.push_back(x);

    std::vector<Elem> tried;
    std::size_t gens_seen = 0;
    UnionFind orbits(n);
    for (Elem v : members) {
      if (autos.size() != gens_seen) {
        // Rebuild orbit structure from generators that fix the path pointwise.
        orbits.reset(n);
        for (const auto& g : autos) {
          bool fixes = true;
          for (Elem p : path)
            if (g[p] != p) {
              fixes = false;
              break;
            }
          if (fixes)
            for (int x = 0; x < n; ++x) orbits.unite(x, g[x]);
        }
        gens_seen = autos.size();
      }
      bool skip = false;
      for (Elem u : tried)
        if (orbits.find(u) == orbits.find(v)) {
          skip = true;
          break;
        }
      if (skip) continue;
      tried.push_back(v);
      // Individualize v ahead of its classmates, keeping class order stable.
      std::vector<int> child(n);
      for (int x = 0; x < n; ++x)
        child[x] = 2 * col[x] + (x == v ? 0 : 1);
      path.push_back(v);
      search(child, path);
      path.pop_back();
    }
  }
};

std::vector<int> initial_colors(const BipartiteMonoid& b,
                                const std::vector<Elem>& pinned) {
  const int n = b.size();
  // Pin cells come first in pin order, then identity, then P split.
  // Every automorphism fixes the identity, so seeding it as a singleton is
  // sound and speeds refinement up.
  std::vector<int> col(n);
  std::vector<int> pin_rank(n, -1);
  for (std::size_t i = 0; i < pinned.size(); ++i) {
    Elem p = pinned[i];
    if (p < 0 || p >= n) throw std::invalid_argument("pinned element out of range");
    if (pin_rank[p] == -1) pin_rank[p] = static_cast<int>(i);
  }
  const int base = static_cast<int>(pinned.size());
  for (int x = 0; x < n; ++x) {
    if (pin_rank[x] >= 0)
      col[x] = pin_rank[x];
    else if (x == 0)
      col[x] = base;
    else
      col[x] = base + 1 + (b.in_p(x) ? 0 : 1);
  }
  // Compact color ids while keeping their order.
  std::vector<int> used(base + 3, 0);
  for (int x = 0; x < n; ++x) used[col[x]] = 1;
  std::vector<int> remap(base + 3, 0);
  int next = 0;
  for (std::size_t c = 0; c < used.size(); ++c)
    if (used[c]) remap[c] = next++;
  for (int x = 0; x < n; ++x) col[x] = remap[col[x]];
  return col;
}

}  // namespace

CanonicalForm canonical_form(const BipartiteMonoid& b,
                             const std::vector<Elem>& pinned) {
  if (b.size() <= 0) throw std::invalid_argument("empty monoid");
  Searcher s(b, pinned);
  std::vector<Elem> path;
  s.search(initial_colors(b, pinned), path);
  return {std::move(s.best), std::move(s.best_lab)};
}

std::string canonical_key(const BipartiteMonoid& b) {
  return canonical_form(b).key;
}

std::string canonical_key_hex(const BipartiteMonoid& b) {
  std::string k = canonical_key(b);
  std::uint64_t h = 0x6d71206b65790a01ULL;
  for (unsigned char c : k) h = hash_combine(h, c);
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::optional<std::vector<Elem>> isomorphic(const BipartiteMonoid& a,
                                            const BipartiteMonoid& b) {
  if (a.size() != b.size()) return std::nullopt;
  CanonicalForm ca = canonical_form(a);
  CanonicalForm cb = canonical_form(b);
  if (ca.key != cb.key) return std::nullopt;
  const int n = a.size();
  std::vector<int> inv_b(n);
  for (int x = 0; x < n; ++x) inv_b[cb.labeling[x]] = x;
  std::vector<Elem> phi(n);
  for (int x = 0; x < n; ++x) phi[x] = inv_b[ca.labeling[x]];
  // Equal canonical encodings already imply this; keep the guard cheap and loud.
  for (Elem x = 0; x < n; ++x) {
    if (a.in_p(x) != b.in_p(phi[x]))
      throw std::logic_error("canonical form mismatch (P)");
    for (Elem y = 0; y < n; ++y)
      if (phi[a.mul(x, y)] != b.mul(phi[x], phi[y]))
        throw std::logic_error("canonical form mismatch (product)");
  }
  return phi;
}

std::uint64_t fingerprint(const BipartiteMonoid& b) {
  const int n = b.size();
  int psize = 0;
  for (Elem x = 0; x < n; ++x) psize += b.in_p(x);
  KernelInfo k = kernel(b.m);
  int idem = 0;
  for (Elem x = 0; x < n; ++x) idem += (b.mul(x, x) == x);
  std::vector<int> types;
  types.reserve(n);
  for (Elem x = 0; x < n; ++x) {
    Elem x2 = b.mul(x, x);
    Elem x3 = b.mul(x2, x);
    int t = (b.in_p(x) ? 1 : 0) | (b.in_p(x2) ? 2 : 0) | (x2 == x ? 4 : 0) |
            (x3 == x ? 8 : 0) | (k.mask[x] ? 16 : 0);
    types.push_back(t);
  }
  std::sort(types.begin(), types.end());
  std::uint64_t h = 0xfeedfacecafe0001ULL;
  h = hash_combine(h, n);
  h = hash_combine(h, psize);
  h = hash_combine(h, k.elems.size());
  h = hash_combine(h, idem);
  for (int t : types) h = hash_combine(h, t);
  return h;
}

}  // namespace mq
