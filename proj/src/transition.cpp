#include "mq/transition.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "mq/catalog.hpp"
#include "mq/games.hpp"
#include "mq/util.hpp"

namespace mq {

std::uint64_t mask_of(const std::vector<Elem>& elems) {
  std::uint64_t m = 0;
  for (Elem e : elems) {
    if (e < 0 || e >= 64) throw std::invalid_argument("element out of bitmask range");
    m |= std::uint64_t(1) << e;
  }
  return m;
}

std::vector<Elem> elems_of(std::uint64_t mask) {
  std::vector<Elem> out;
  for (int i = 0; i < 64; ++i)
    if (mask >> i & 1) out.push_back(i);
  return out;
}

TransitionPair pair_product(const BipartiteMonoid& b, const TransitionPair& p,
                            const TransitionPair& q) {
  TransitionPair r;
  r.x = b.mul(p.x, q.x);
  std::uint64_t m = 0;
  for (std::uint64_t f = q.mask; f; f &= f - 1) {
    int y = __builtin_ctzll(f);
    m |= std::uint64_t(1) << b.mul(p.x, y);
  }
  for (std::uint64_t e = p.mask; e; e &= e - 1) {
    int y = __builtin_ctzll(e);
    m |= std::uint64_t(1) << b.mul(q.x, y);
  }
  r.mask = m;
  return r;
}

bool TransitionAlgebra::contains(const TransitionPair& p) const {
  return std::binary_search(pairs.begin(), pairs.end(), p);
}

namespace {

struct PairHash {
  std::size_t operator()(const TransitionPair& p) const {
    return mix64((std::uint64_t(p.x) << 56) ^ p.mask);
  }
};

// Shared closure driver. abort_on_parity_violation makes it return false
// the moment a pair fails parity; otherwise it only enforces the cap.
bool close_pairs(const BipartiteMonoid& base, const std::vector<TransitionPair>& gens,
                 std::size_t cap, bool abort_on_parity_violation,
                 std::vector<TransitionPair>& out) {
  const int n = base.size();
  if (n > 64) throw std::invalid_argument("transition tables capped at 64 elements");
  std::uint64_t pbits = 0;
  for (Elem x = 0; x < n; ++x)
    if (base.in_p(x)) pbits |= std::uint64_t(1) << x;

  auto parity_ok = [&](const TransitionPair& p) {
    bool lhs = base.in_p(p.x);
    bool rhs = p.mask != 0 && (p.mask & pbits) == 0;
    return lhs == rhs;
  };

  std::size_t hard = (n >= 40) ? ~std::size_t(0)
                               : std::size_t(n) << n;  // n * 2^n, loose ceiling
  if (cap == 0 || cap > hard) cap = hard;

  std::unordered_set<TransitionPair, PairHash> seen;
  std::vector<TransitionPair> all;
  std::deque<std::size_t> work;

  auto push = [&](const TransitionPair& p) -> bool {
    if (!seen.insert(p).second) return true;
    if (abort_on_parity_violation && !parity_ok(p)) return false;
    if (seen.size() > cap) throw std::runtime_error("transition closure exceeds pair cap");
    all.push_back(p);
    work.push_back(all.size() - 1);
    return true;
  };

  if (!push({0, 0})) return false;
  for (const auto& g : gens)
    if (!push(g)) return false;

  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    // products with every pair present so far, self included
    for (std::size_t j = 0; j < all.size(); ++j) {
      TransitionPair p = pair_product(base, all[i], all[j]);
      if (!push(p)) return false;
    }
  }
  std::sort(all.begin(), all.end());
  out = std::move(all);
  return true;
}

}  // namespace

TransitionAlgebra generate_algebra(const BipartiteMonoid& base,
                                   const std::vector<TransitionPair>& gens,
                                   std::size_t pair_cap) {
  TransitionAlgebra t;
  t.base = base;
  t.generator_pairs = gens;
  close_pairs(base, gens, pair_cap, false, t.pairs);
  return t;
}

bool generate_algebra_parity(const BipartiteMonoid& base,
                             const std::vector<TransitionPair>& gens,
                             TransitionAlgebra* out) {
  std::vector<TransitionPair> pairs;
  if (!close_pairs(base, gens, 0, true, pairs)) return false;
  if (out) {
    out->base = base;
    out->generator_pairs = gens;
    out->pairs = std::move(pairs);
  }
  return true;
}

namespace {

std::string pair_str(const TransitionPair& p) {
  std::ostringstream os;
  os << "(" << p.x << ",{";
  bool first = true;
  for (Elem e : elems_of(p.mask)) {
    if (!first) os << ",";
    os << e;
    first = false;
  }
  os << "})";
  return os.str();
}

}  // namespace

ValidityReport validate(const TransitionAlgebra& t) {
  ValidityReport r;
  const BipartiteMonoid& b = t.base;
  const int n = b.size();
  std::uint64_t pbits = 0;
  for (Elem x = 0; x < n; ++x)
    if (b.in_p(x)) pbits |= std::uint64_t(1) << x;

  r.parity_ok = true;
  for (const auto& p : t.pairs) {
    bool lhs = b.in_p(p.x);
    bool rhs = p.mask != 0 && (p.mask & pbits) == 0;
    if (lhs != rhs) {
      r.parity_ok = false;
      if (r.counterexamples.size() < 8)
        r.counterexamples.push_back("parity fails at " + pair_str(p));
    }
  }

  std::vector<char> covered(n, 0);
  for (const auto& p : t.pairs) covered[p.x] = 1;
  r.completeness_ok = true;
  for (Elem x = 0; x < n; ++x)
    if (!covered[x]) {
      r.completeness_ok = false;
      if (r.counterexamples.size() < 8)
        r.counterexamples.push_back("no pair with value " + std::to_string(x));
    }

  r.closure_ok = true;
  for (std::size_t i = 0; i < t.pairs.size() && r.closure_ok; ++i)
    for (std::size_t j = i; j < t.pairs.size(); ++j) {
      TransitionPair p = pair_product(b, t.pairs[i], t.pairs[j]);
      if (!t.contains(p)) {
        r.closure_ok = false;
        r.counterexamples.push_back("product " + pair_str(t.pairs[i]) + "*" +
                                    pair_str(t.pairs[j]) + " = " + pair_str(p) +
                                    " missing");
        break;
      }
    }

  // least-fixpoint ranking: D_1 holds every x with (x,{}) present and must
  // contain the identity; D_{k+1} adds x when some (x,E) has E inside D_k
  r.rank.assign(n, -1);
  std::uint64_t done = 0;
  int level = 0;
  bool grew = true;
  while (grew) {
    grew = false;
    std::uint64_t next = done;
    for (const auto& p : t.pairs) {
      if (r.rank[p.x] >= 0) continue;
      if ((p.mask & ~done) == 0) {
        r.rank[p.x] = level;
        next |= std::uint64_t(1) << p.x;
        grew = true;
      }
    }
    done = next;
    ++level;
  }
  r.wellfounded_ok = true;
  if (r.rank[0] != 0) {
    r.wellfounded_ok = false;
    r.counterexamples.push_back("identity needs the seed pair (0,{}) at rank 0");
  }
  for (Elem x = 0; x < n; ++x)
    if (r.rank[x] < 0) {
      r.wellfounded_ok = false;
      if (r.counterexamples.size() < 12)
        r.counterexamples.push_back("element " + std::to_string(x) +
                                    " is unreachable by the rank fixpoint");
    }
  return r;
}

std::vector<TransitionPair> minimex_generators(const ConstructionScheme& scheme) {
  const BipartiteMonoid& b = scheme.bm;
  std::vector<TransitionPair> gens;
  std::vector<Elem> prefix;
  std::vector<Elem> slice = closure_of(b.m, prefix);  // {identity}
  for (Elem x : scheme.seq) {
    std::uint64_t smask = mask_of(slice);
    TransitionPair p{x, mask_of(meximal_set(b, x)) & smask};
    gens.push_back(p);
    prefix.push_back(x);
    slice = closure_of(b.m, prefix);
  }
  if (static_cast<int>(slice.size()) != b.size())
    throw std::invalid_argument("construction sequence does not generate the monoid");
  return gens;
}

TransitionAlgebra minimex_algebra(const ConstructionScheme& scheme) {
  return generate_algebra(scheme.bm, minimex_generators(scheme));
}

bool minimex_valid(const ConstructionScheme& scheme) {
  return generate_algebra_parity(scheme.bm, minimex_generators(scheme));
}

Realization realize_games(const TransitionAlgebra& t, const ValidityReport& report,
                          GameStore& store) {
  if (!report.all_ok())
    throw std::invalid_argument("realize_games needs a fully valid algebra");
  const int n = t.base.size();
  Realization r;
  r.element_game.assign(n, -1);

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::make_pair(report.rank[a], a) < std::make_pair(report.rank[b], b);
  });

  for (Elem x : order) {
    // witness pair: all options at strictly lower rank, least option list
    const TransitionPair* best = nullptr;
    for (const auto& p : t.pairs) {
      if (p.x != x) continue;
      bool lower = true;
      for (std::uint64_t m = p.mask; m; m &= m - 1)
        if (report.rank[__builtin_ctzll(m)] >= report.rank[x]) {
          lower = false;
          break;
        }
      if (!lower) continue;
      if (!best || elems_of(p.mask) < elems_of(best->mask)) best = &p;
    }
    if (!best) throw std::logic_error("rank witness missing despite valid report");
    std::vector<int> opts;
    for (Elem y : elems_of(best->mask)) opts.push_back(r.element_game[y]);
    r.element_game[x] = store.add(std::move(opts));
  }

  r.pair_game.reserve(t.pairs.size());
  for (const auto& p : t.pairs) {
    std::vector<int> opts;
    for (Elem y : elems_of(p.mask)) opts.push_back(r.element_game[y]);
    r.pair_game.push_back(store.add(std::move(opts)));
  }
  return r;
}

}  // namespace mq
