#include "mq/games.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "mq/catalog.hpp"

namespace mq {

int GameStore::add(std::vector<int> options) {
  std::sort(options.begin(), options.end());
  options.erase(std::unique(options.begin(), options.end()), options.end());
  for (int o : options)
    if (o < 0 || o >= size()) throw std::invalid_argument("unknown option id");
  auto it = index_.find(options);
  if (it != index_.end()) return it->second;
  opts_.push_back(options);
  int id = size() - 1;
  index_.emplace(std::move(options), id);
  return id;
}

Outcome outcome_misere(GameStore& store, int id) {
  auto& memo = store.misere_memo_;
  if (static_cast<int>(memo.size()) <= id) memo.resize(store.size(), -1);
  if (memo[id] >= 0) return static_cast<Outcome>(memo[id]);
  const auto opts = store.options_of(id);
  Outcome r = Outcome::P;
  if (opts.empty()) {
    r = Outcome::N;
  } else {
    for (int o : opts)
      if (outcome_misere(store, o) == Outcome::P) {
        r = Outcome::N;
        break;
      }
  }
  if (static_cast<int>(memo.size()) <= id) memo.resize(store.size(), -1);
  memo[id] = static_cast<signed char>(r);
  return r;
}

Outcome outcome_normal(GameStore& store, int id) {
  auto& memo = store.normal_memo_;
  if (static_cast<int>(memo.size()) <= id) memo.resize(store.size(), -1);
  if (memo[id] >= 0) return static_cast<Outcome>(memo[id]);
  Outcome r = Outcome::P;
  for (int o : store.options_of(id))
    if (outcome_normal(store, o) == Outcome::P) {
      r = Outcome::N;
      break;
    }
  if (static_cast<int>(memo.size()) <= id) memo.resize(store.size(), -1);
  memo[id] = static_cast<signed char>(r);
  return r;
}

int grundy(GameStore& store, int id) {
  auto& memo = store.grundy_memo_;
  if (static_cast<int>(memo.size()) <= id) memo.resize(store.size(), -1);
  if (memo[id] >= 0) return memo[id];
  std::vector<int> vals;
  for (int o : store.options_of(id)) vals.push_back(grundy(store, o));
  int g = mex_of(vals);
  if (static_cast<int>(memo.size()) <= id) memo.resize(store.size(), -1);
  memo[id] = g;
  return g;
}

int birthday(GameStore& store, int id) {
  auto& memo = store.birthday_memo_;
  if (static_cast<int>(memo.size()) <= id) memo.resize(store.size(), -1);
  if (memo[id] >= 0) return memo[id];
  int b = 0;
  for (int o : store.options_of(id)) b = std::max(b, birthday(store, o) + 1);
  if (static_cast<int>(memo.size()) <= id) memo.resize(store.size(), -1);
  memo[id] = b;
  return b;
}

int game_sum(GameStore& store, int a, int b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if (a > b) std::swap(a, b);
  auto it = store.sum_memo_.find({a, b});
  if (it != store.sum_memo_.end()) return it->second;
  std::vector<int> opts;
  // copy the option lists up front, recursion may grow the store
  const std::vector<int> oa = store.options_of(a);
  const std::vector<int> ob = store.options_of(b);
  for (int o : oa) opts.push_back(game_sum(store, o, b));
  for (int o : ob) opts.push_back(game_sum(store, a, o));
  int id = store.add(std::move(opts));
  store.sum_memo_[{a, b}] = id;
  return id;
}

Position normalize_position(std::vector<int> components) {
  components.erase(std::remove(components.begin(), components.end(), 0),
                   components.end());
  std::sort(components.begin(), components.end());
  return components;
}

Outcome outcome_misere_position(GameStore& store, const Position& pos,
                                std::unordered_map<Position, Outcome, VecHash>& memo) {
  auto it = memo.find(pos);
  if (it != memo.end()) return it->second;
  Outcome r = Outcome::P;
  if (pos.empty()) {
    r = Outcome::N;
  } else {
    for (std::size_t i = 0; i < pos.size() && r == Outcome::P; ++i) {
      if (i > 0 && pos[i] == pos[i - 1]) continue;  // same component, same moves
      for (int o : store.options_of(pos[i])) {
        Position next = pos;
        next[i] = o;
        next = normalize_position(std::move(next));
        if (outcome_misere_position(store, next, memo) == Outcome::P) {
          r = Outcome::N;
          break;
        }
      }
    }
  }
  memo.emplace(pos, r);
  return r;
}

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

char hex_char(int d) { return d < 10 ? char('0' + d) : char('a' + d - 10); }

}  // namespace

HeapCode HeapCode::parse(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) throw std::invalid_argument("heap code needs a '.'");
  if (text.find('.', dot + 1) != std::string::npos)
    throw std::invalid_argument("heap code has more than one '.'");
  HeapCode c;
  if (dot > 1) throw std::invalid_argument("at most one digit before the '.'");
  if (dot == 1) {
    c.d0 = hex_digit(text[0]);
    if (c.d0 < 0) throw std::invalid_argument("bad digit before the '.'");
  }
  if (c.d0 & ~4)
    throw std::invalid_argument("whole-heap digit may only use the two-heap split bit");
  for (std::size_t i = dot + 1; i < text.size(); ++i) {
    int d = hex_digit(text[i]);
    if (d < 0) throw std::invalid_argument("bad digit in heap code");
    c.digits.push_back(d);
  }
  return c;
}

std::string HeapCode::str() const {
  std::string s;
  s += hex_char(d0);
  s += '.';
  for (int d : digits) s += hex_char(d);
  return s;
}

int HeapCode::digit(int n) const {
  if (n == 0) return d0;
  if (n < 0 || n > static_cast<int>(digits.size())) return 0;
  return digits[n - 1];
}

int HeapCode::last_nonzero() const {
  for (int n = static_cast<int>(digits.size()); n >= 1; --n)
    if (digits[n - 1] != 0) return n;
  return 0;
}

std::vector<std::vector<int>> heap_moves(const HeapCode& code, int n) {
  std::vector<std::vector<int>> moves;
  for (int take = 0; take <= n && take <= static_cast<int>(code.digits.size());
       ++take) {
    int d = code.digit(take);
    if (d == 0) continue;
    int rem = n - take;
    if ((d & 1) && rem == 0 && take > 0) moves.push_back({});
    if ((d & 2) && rem >= 1 && take > 0) moves.push_back({rem});
    if ((d & 4) && rem >= 2)
      for (int a = 1; 2 * a <= rem; ++a) moves.push_back({a, rem - a});
    if ((d & 8) && rem >= 3)
      for (int a = 1; 3 * a <= rem; ++a)
        for (int b = a; a + 2 * b <= rem; ++b) moves.push_back({a, b, rem - a - b});
  }
  return moves;
}

int heap_game(GameStore& store, const HeapCode& code, int n, std::vector<int>& cache) {
  if (n < 0) throw std::invalid_argument("heap size must be nonnegative");
  if (cache.empty()) cache.push_back(0);
  for (int k = static_cast<int>(cache.size()); k <= n; ++k) {
    std::vector<int> opts;
    for (const auto& parts : heap_moves(code, k)) {
      int id = 0;
      for (int p : parts) id = game_sum(store, id, cache[p]);
      opts.push_back(id);
    }
    cache.push_back(store.add(std::move(opts)));
  }
  return cache[n];
}

std::vector<int> grundy_sequence(const HeapCode& code, int max_heap) {
  std::vector<int> g(max_heap + 1, 0);
  for (int n = 1; n <= max_heap; ++n) {
    std::vector<int> vals;
    for (const auto& parts : heap_moves(code, n)) {
      int v = 0;
      for (int p : parts) v ^= g[p];
      vals.push_back(v);
    }
    g[n] = mex_of(vals);
  }
  return g;
}

std::vector<int> closure_games(const GameStore& store, const std::vector<int>& gens) {
  std::vector<int> out;
  std::vector<char> seen(store.size(), 0);
  std::vector<int> work = gens;
  while (!work.empty()) {
    int id = work.back();
    work.pop_back();
    if (id < 0 || id >= store.size()) throw std::invalid_argument("unknown game id");
    if (seen[id]) continue;
    seen[id] = 1;
    out.push_back(id);
    for (int o : store.options_of(id)) work.push_back(o);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Position> closure_positions(GameStore& store, const std::vector<int>& gens,
                                        int max_components) {
  std::vector<int> alphabet = closure_games(store, gens);
  alphabet.erase(std::remove(alphabet.begin(), alphabet.end(), 0), alphabet.end());
  std::vector<Position> out;
  Position cur;
  // multisets in nondecreasing id order, sizes 0..max_components
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) >= max_components) return;
    for (std::size_t i = from; i < alphabet.size(); ++i) {
      cur.push_back(alphabet[i]);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

Elem position_label(const Position& pos, const std::unordered_map<int, Elem>& labels,
                    const BipartiteMonoid& b) {
  Elem v = 0;
  for (int id : pos) {
    auto it = labels.find(id);
    if (it == labels.end())
      throw std::invalid_argument("labeling does not cover game id " +
                                  std::to_string(id));
    v = b.mul(v, it->second);
  }
  return v;
}

std::string position_str(const Position& pos) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < pos.size(); ++i) os << (i ? "+" : "") << pos[i];
  os << "]";
  return os.str();
}

}  // namespace

std::vector<TransitionPair> transition_of_positions(
    GameStore& store, const std::vector<int>& gens,
    const std::unordered_map<int, Elem>& labels, const BipartiteMonoid& b,
    int max_components) {
  std::vector<TransitionPair> out;
  for (const Position& pos : closure_positions(store, gens, max_components)) {
    TransitionPair p;
    p.x = position_label(pos, labels, b);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (i > 0 && pos[i] == pos[i - 1]) continue;
      for (int o : store.options_of(pos[i])) {
        Position next = pos;
        next[i] = o;
        p.mask |= std::uint64_t(1)
                  << position_label(normalize_position(std::move(next)), labels, b);
      }
    }
    out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ParityReport check_pretension_parity(GameStore& store, const std::vector<int>& gens,
                                     const std::unordered_map<int, Elem>& labels,
                                     const BipartiteMonoid& b, int max_components) {
  ParityReport r;
  std::unordered_map<Position, Outcome, VecHash> memo;
  for (const Position& pos : closure_positions(store, gens, max_components)) {
    Elem v = position_label(pos, labels, b);
    Outcome got = outcome_misere_position(store, pos, memo);
    ++r.positions_checked;
    bool expect_p = b.in_p(v);
    if (expect_p != (got == Outcome::P)) {
      if (r.violations.size() < 20) {
        std::ostringstream os;
        os << "position " << position_str(pos) << " pretends element " << v << " ("
           << (expect_p ? "P" : "N") << ") but plays as " << outcome_str(got);
        r.violations.push_back(os.str());
      }
    }
  }
  return r;
}

FaithfulnessResult faithfulness_check(const HeapCode& code, const PretendingFunction& phi,
                                      const BipartiteMonoid& b) {
  FaithfulnessResult res;
  res.labeled.bm = b;
  res.labeled.labels.assign(b.size(), -1);
  if (phi.M < 0 || static_cast<int>(phi.values.size()) < phi.M + 1) {
    res.conflicts.push_back("pretending function values do not reach heap M");
    return res;
  }
  std::vector<int> g = grundy_sequence(code, phi.M);
  auto& labels = res.labeled.labels;
  auto assign = [&](Elem x, int v, const std::string& why) {
    if (x < 0 || x >= b.size()) {
      res.conflicts.push_back(why + ": element out of range");
      return;
    }
    if (labels[x] < 0) {
      labels[x] = v;
    } else if (labels[x] != v) {
      std::ostringstream os;
      os << why << ": element " << x << " forced to Grundy " << v << " but already "
         << labels[x];
      res.conflicts.push_back(os.str());
    }
  };
  assign(0, 0, "empty position");
  for (int n = 1; n <= phi.M; ++n)
    assign(phi.values[n], g[n], "heap " + std::to_string(n));
  if (!res.conflicts.empty()) return res;

  // close under products, XOR on labels
  std::vector<Elem> reach;
  for (Elem x = 0; x < b.size(); ++x)
    if (labels[x] >= 0) reach.push_back(x);
  for (std::size_t i = 0; i < reach.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Elem z = b.mul(reach[i], reach[j]);
      int v = labels[reach[i]] ^ labels[reach[j]];
      if (labels[z] < 0) {
        labels[z] = v;
        reach.push_back(z);
      } else if (labels[z] != v) {
        std::ostringstream os;
        os << "product " << reach[i] << "*" << reach[j] << " forces Grundy " << v
           << " on element " << z << " but it already has " << labels[z];
        res.conflicts.push_back(os.str());
      }
    }
    if (!res.conflicts.empty()) return res;
  }
  res.generates = static_cast<int>(reach.size()) == b.size();
  res.ok = true;
  return res;
}

AlmostTameResult almost_tame_check(const HeapCode& code, int n0,
                                   const BipartiteMonoid& b,
                                   const PretendingFunction& phi) {
  AlmostTameResult res;
  res.d = code.last_nonzero();
  if (res.d == 0) {
    res.failures.push_back("code has no nonzero move digit");
    return res;
  }
  if (n0 < 1) {
    res.failures.push_back("window start n0 must be at least 1");
    return res;
  }
  int need = 2 * n0 + res.d - 1;
  if (phi.M < need) {
    std::ostringstream os;
    os << "pretending function stops at heap " << phi.M << " but the window needs "
       << need;
    res.failures.push_back(os.str());
    return res;
  }

  if (!is_normal(b))
    res.failures.push_back("monoid is not normal (kernel meets P off its identity)");

  FaithfulnessResult f = faithfulness_check(code, phi, b);
  for (const auto& c : f.conflicts)
    res.failures.push_back("Grundy values do not factor through phi: " + c);
  if (f.ok && !f.generates)
    res.failures.push_back("heap images do not generate the monoid");

  KernelInfo k = kernel(b.m);
  if (f.ok && f.generates) {
    std::vector<int> kl;
    for (Elem e : k.elems) kl.push_back(f.labeled.labels[e]);
    std::vector<int> want(k.elems.size());
    for (std::size_t i = 0; i < want.size(); ++i) want[i] = static_cast<int>(i);
    std::vector<int> sorted = kl;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != want)
      res.failures.push_back(
          "kernel labels are not a bijection onto 0..|K|-1");
  }

  for (int n = n0; n < 2 * n0 + res.d; ++n) {
    Elem x = phi.values[n];
    bool in_k = x >= 0 && x < b.size() && k.mask[x];
    std::ostringstream os;
    os << "heap " << n << " pretends element " << x << " ("
       << (in_k ? "kernel" : "outside kernel") << ")";
    res.window.push_back(os.str());
    if (!in_k) {
      std::ostringstream f2;
      f2 << "heap " << n << " pretends element " << x << " outside the kernel";
      res.failures.push_back(f2.str());
    }
  }

  res.applicable = res.failures.empty();
  if (res.applicable)
    res.verdict = "T^k(Q,P) for some k ∈ ℕ ∪ {∞}";
  return res;
}

GenMexResult gen_mex_check(const TransitionAlgebra& base, const BipartiteMonoid& S,
                           const std::vector<Elem>& embed, Elem x,
                           const std::vector<Elem>& E) {
  GenMexResult res;
  const BipartiteMonoid& Q = base.base;
  if (static_cast<int>(embed.size()) != Q.size()) {
    res.failures.push_back("embedding must list an image for every element");
    return res;
  }
  if (embed[0] != 0)
    res.failures.push_back("embedding must send identity to identity");
  for (Elem a = 0; a < Q.size(); ++a) {
    for (Elem c = a; c < Q.size(); ++c)
      if (embed[Q.mul(a, c)] != S.mul(embed[a], embed[c])) {
        res.failures.push_back("embedding is not multiplicative at " +
                               std::to_string(a) + "*" + std::to_string(c));
        break;
      }
    if (!res.failures.empty()) break;
  }
  for (Elem a = 0; a < Q.size() && res.failures.empty(); ++a)
    if (Q.in_p(a) != S.in_p(embed[a]))
      res.failures.push_back("embedding does not preserve the P-portion at " +
                             std::to_string(a));
  if (!res.failures.empty()) return res;

  // generation: the embedded monoid plus x must reach everything
  std::vector<Elem> gens;
  for (Elem a = 0; a < Q.size(); ++a) gens.push_back(embed[a]);
  gens.push_back(x);
  if (static_cast<int>(closure_of(S.m, gens).size()) != S.size())
    res.failures.push_back("embedded monoid plus x does not generate the target");

  std::vector<Elem> mx = meximal_set(S, x);
  std::vector<char> in_mx(S.size(), 0);
  for (Elem e : mx) in_mx[e] = 1;
  for (Elem e : E) {
    if (e < 0 || e >= Q.size()) {
      res.failures.push_back("option image out of range");
      continue;
    }
    if (!in_mx[embed[e]])
      res.failures.push_back("option image " + std::to_string(e) +
                             " lies outside the meximal set of x");
  }

  // powers of x up to index plus period
  std::vector<Elem> xpow{0};
  std::vector<char> seen(S.size(), 0);
  seen[0] = 1;
  Elem cur = 0;
  while (true) {
    cur = S.mul(cur, x);
    if (seen[cur]) break;
    seen[cur] = 1;
    xpow.push_back(cur);
  }
  int bound = static_cast<int>(xpow.size());  // index + period of x
  auto xp = [&](int n) {
    // powers repeat after the bound; fold n back into the eventual cycle
    if (n < bound) return xpow[n];
    Elem tail = S.mul(xpow[bound - 1], x);
    int start = 0;
    while (xpow[start] != tail) ++start;
    int period = bound - start;
    return xpow[start + (n - start) % period];
  };

  for (const auto& pr : base.pairs) {
    for (int n = 0; n < bound; ++n) {
      Elem lhs = S.mul(xp(n + 1), embed[pr.x]);
      if (S.in_p(lhs)) continue;
      bool saved = false;
      for (Elem yp : elems_of(pr.mask))
        if (S.in_p(S.mul(xp(n + 1), embed[yp]))) {
          saved = true;
          break;
        }
      for (Elem e : E) {
        if (saved) break;
        if (S.in_p(S.mul(S.mul(xp(n), embed[e]), embed[pr.x]))) saved = true;
      }
      if (!saved) {
        std::ostringstream os;
        os << "replay fails for pair (" << pr.x << ",...) at exponent " << n;
        res.failures.push_back(os.str());
      }
    }
    if (res.failures.size() > 20) break;
  }
  res.ok = res.failures.empty();
  return res;
}

std::pair<BipartiteMonoid, Elem> extend_by_kernel_subset(const GrundyLabeledBM& g,
                                                         const std::vector<Elem>& E) {
  KernelInfo k = kernel(g.bm.m);
  std::vector<Elem> e = E;
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  for (Elem x : e)
    if (x < 0 || x >= g.bm.size() || !k.mask[x])
      throw std::invalid_argument("options must pretend kernel elements");
  if (e == k.elems) {
    GrundyLabeledBM ext = tame_extend(g);
    // the mirrored kernel identity is pushed as the newest generator
    return {ext.bm, ext.bm.m.generators.back()};
  }
  std::vector<int> vals;
  for (Elem x : e) {
    if (g.labels[x] < 0)
      throw std::invalid_argument("options must carry Grundy labels");
    vals.push_back(g.labels[x]);
  }
  int v = mex_of(vals);
  for (Elem x : k.elems)
    if (g.labels[x] == v) return {g.bm, x};
  throw std::invalid_argument("kernel labels must cover the mex value");
}

}  // namespace mq
