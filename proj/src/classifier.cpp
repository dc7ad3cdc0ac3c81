#include "mq/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mq/canonical.hpp"
#include "mq/transition.hpp"

namespace mq {

namespace {

// ---------------------------------------------------------------------------
// Simple extension search. The table has one row per element and one column
// per generator of q plus the fresh generator t. Q's rows come prefilled; the
// search fills the remaining slots one decision at a time, propagating the
// commuting-square rule slot(slot(c,x),y) = slot(slot(c,y),x) after each
// decision and abandoning any branch where propagation would merge two
// existing rows. Every total conflict-free table is a commutative monoid
// containing q, and distinct decision paths give distinct tables, so the
// enumeration is exhaustive and repetition-free.
class ExtensionSearch {
 public:
  ExtensionSearch(const Monoid& q, int max_order) : q_(q), max_(max_order) {
    cols_ = q.generators;
    ncols_ = static_cast<int>(cols_.size()) + 1;  // trailing column is t
  }

  std::vector<Monoid> run() {
    const int n = q_.size;
    if (n >= max_) return {};
    State s;
    s.rows = n + 1;
    s.slot.assign(static_cast<std::size_t>(max_) * ncols_, -1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j + 1 < ncols_; ++j) s.slot[i * ncols_ + j] = q_.mul(i, cols_[j]);
    // the slot 1*t is t itself; per the definition t must land outside q
    s.slot[ncols_ - 1] = n;
    dfs(std::move(s));
    return std::move(out_);
  }

 private:
  struct State {
    int rows = 0;
    std::vector<int> slot;
  };

  bool propagate(State& s) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int c = 0; c < s.rows; ++c)
        for (int x = 0; x < ncols_; ++x) {
          int r1 = s.slot[c * ncols_ + x];
          if (r1 < 0) continue;
          for (int y = x + 1; y < ncols_; ++y) {
            int r2 = s.slot[c * ncols_ + y];
            if (r2 < 0) continue;
            int p1 = s.slot[r1 * ncols_ + y];
            int p2 = s.slot[r2 * ncols_ + x];
            if (p1 >= 0 && p2 >= 0) {
              if (p1 != p2) return false;
            } else if (p1 >= 0) {
              s.slot[r2 * ncols_ + x] = p1;
              changed = true;
            } else if (p2 >= 0) {
              s.slot[r1 * ncols_ + y] = p2;
              changed = true;
            }
          }
        }
    }
    return true;
  }

  void dfs(State s) {
    if (!propagate(s)) return;
    int c = -1, x = -1;
    for (int r = 0; r < s.rows && c < 0; ++r)
      for (int j = 0; j < ncols_; ++j)
        if (s.slot[r * ncols_ + j] < 0) {
          c = r;
          x = j;
          break;
        }
    if (c < 0) {
      emit(s);
      return;
    }
    for (int v = 0; v < s.rows; ++v) {
      State t = s;
      t.slot[c * ncols_ + x] = v;
      dfs(std::move(t));
    }
    if (s.rows < max_) {
      State t = std::move(s);
      t.slot[c * ncols_ + x] = t.rows;
      t.rows += 1;
      dfs(std::move(t));
    }
  }

  void emit(const State& s) {
    const int sz = s.rows;
    // express every row as a generator word reachable from the identity row,
    // then read arbitrary products off the generator action
    std::vector<std::vector<int>> word(sz);
    std::vector<char> seen(sz, 0);
    std::vector<int> bfs{0};
    seen[0] = 1;
    for (std::size_t h = 0; h < bfs.size(); ++h) {
      int r = bfs[h];
      for (int j = 0; j < ncols_; ++j) {
        int v = s.slot[r * ncols_ + j];
        if (!seen[v]) {
          seen[v] = 1;
          word[v] = word[r];
          word[v].push_back(j);
          bfs.push_back(v);
        }
      }
    }
    for (int r = 0; r < sz; ++r)
      if (!seen[r]) throw std::logic_error("extension table has an unreachable row");
    Monoid M;
    M.size = sz;
    M.table.assign(static_cast<std::size_t>(sz) * sz, 0);
    for (int a = 0; a < sz; ++a)
      for (int b = 0; b < sz; ++b) {
        int r = a;
        for (int j : word[b]) r = s.slot[r * ncols_ + j];
        M.table[a * sz + b] = r;
      }
    M.generators = q_.generators;
    M.generators.push_back(q_.size);
    out_.push_back(std::move(M));
  }

  const Monoid& q_;
  int max_;
  std::vector<Elem> cols_;
  int ncols_;
  std::vector<Monoid> out_;
};

BipartiteMonoid apply_labeling(const BipartiteMonoid& b, const std::vector<int>& lab) {
  const int n = b.size();
  BipartiteMonoid out;
  out.m.size = n;
  out.m.table.assign(static_cast<std::size_t>(n) * n, 0);
  out.pmask.assign(n, 0);
  for (Elem x = 0; x < n; ++x) {
    out.pmask[lab[x]] = b.pmask[x];
    for (Elem y = 0; y < n; ++y)
      out.m.table[lab[x] * n + lab[y]] = lab[b.mul(x, y)];
  }
  for (Elem g : b.m.generators) out.m.generators.push_back(lab[g]);
  std::sort(out.m.generators.begin(), out.m.generators.end());
  return out;
}

// deterministic generating set read off the table alone, so census
// representatives do not depend on which scheme reached them first
std::vector<Elem> greedy_generators(const Monoid& m) {
  std::vector<Elem> gens;
  std::vector<char> in(m.size, 0);
  for (Elem e : closure_of(m, gens)) in[e] = 1;
  for (Elem x = 0; x < m.size; ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    for (Elem e : closure_of(m, gens)) in[e] = 1;
  }
  return gens;
}

// one generated child, with its dedup key and reduction verdict precomputed.
// red_order == size means the child is reduced; otherwise red_key names the
// reduction's isomorphism class so admission can test it against the census.
struct Child {
  BipartiteMonoid bm;
  std::string key;
  std::string red_key;
  int red_order = 0;
};

bool child_order(const Child& a, const Child& b) {
  if (a.bm.size() != b.bm.size()) return a.bm.size() < b.bm.size();
  if (a.key != b.key) return a.key < b.key;
  if (a.bm.m.table != b.bm.m.table) return a.bm.m.table < b.bm.m.table;
  return a.bm.pmask < b.bm.pmask;
}

int ceil_log2(int v) {
  int bits = 0;
  while ((1 << bits) < v) ++bits;
  return bits;
}

// All one-generator extensions of the parent that can still sit inside some
// reduced quotient of order <= max_order. Two necessary conditions prune the
// bulk cheaply before canonical keys are computed:
//  - every quotient of order >= 2 contains a P-element squaring to 1 (the
//    image of *), and subsets closed under extension inherit it, so any
//    child lacking one is dead;
//  - each later element can only split an indistinguishability class in two
//    (by whether products land in P), so a class of size c needs at least
//    ceil(log2 c) further elements before the top can be reduced.
// Children whose reduction's order is already decided (<= phase) are settled
// on the spot against the census of genuine quotients; the rest carry their
// reduction key so admission at their own phase can settle them.
std::vector<Child> expand_bm(const BipartiteMonoid& parent, int max_order, int phase,
                             const std::map<int, std::set<std::string>>& census_full) {
  std::vector<Child> out;
  const int n = parent.size();
  for (Monoid& M : ExtensionSearch(parent.m, max_order).run()) {
    const int sz = M.size;
    const int fresh = sz - n;
    BipartiteMonoid child;
    child.m = M;
    child.pmask.assign(sz, 0);
    for (std::uint64_t pick = 0; pick < (std::uint64_t(1) << fresh); ++pick) {
      for (int i = 0; i < n; ++i) child.pmask[i] = parent.pmask[i];
      for (int i = 0; i < fresh; ++i) child.pmask[n + i] = (pick >> i & 1) ? 1 : 0;
      bool star = false;
      for (Elem x = 1; x < sz && !star; ++x)
        star = child.pmask[x] && child.mul(x, x) == 0;
      if (!star) continue;
      Reduction r = reduce(child);
      const int ro = r.bm.size();
      if (ro < sz) {
        std::vector<int> csize(ro, 0);
        int cmax = 0;
        for (Elem x = 0; x < sz; ++x) cmax = std::max(cmax, ++csize[r.projection[x]]);
        if (sz + ceil_log2(cmax) > max_order) continue;
        std::string rkey = canonical_form(r.bm).key;
        if (ro <= phase) {
          // census below the current phase is final, so this verdict is too
          auto it = census_full.find(ro);
          if (it == census_full.end() || !it->second.count(rkey)) continue;
          rkey.clear();
        }
        Child c;
        c.bm = child;
        c.key = canonical_form(child).key;
        c.red_key = std::move(rkey);
        c.red_order = ro;
        out.push_back(std::move(c));
      } else {
        Child c;
        c.bm = child;
        c.key = canonical_form(child).key;
        c.red_order = sz;
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

struct Pipeline {
  CensusOptions opts;
  QuotientCensus out;
  QuotientOracle oracle;
  std::map<int, std::vector<Child>> pending;
  std::map<int, std::set<std::string>> seen;
  std::map<int, std::vector<BipartiteMonoid>> members;
  std::map<int, std::set<std::string>> census_full;

  explicit Pipeline(const CensusOptions& o) : opts(o) {
    out.max_order = o.max_order;
    BipartiteMonoid trivial;
    trivial.m.size = 1;
    trivial.m.table = {0};
    trivial.pmask = {0};
    census_full[1].insert(canonical_form(trivial).key);
    members[1].push_back(std::move(trivial));
  }

  // decide every size-s candidate: reduced ones are censused iff some
  // construction sequence certifies them, unreduced ones stay on the
  // worklist iff their reduction was censused as genuine
  void admit_phase(int s) {
    auto it = pending.find(s);
    if (it == pending.end()) return;
    for (auto& c : it->second) {
      if (c.red_order == s) {
        if (!oracle.check(c.bm)) continue;
        add_to_census(c.bm, s);
      } else if (!c.red_key.empty() &&
                 !census_full[c.red_order].count(c.red_key)) {
        continue;
      }
      members[s].push_back(std::move(c.bm));
    }
    pending.erase(it);
    auto cit = out.classes.find(s);
    if (cit != out.classes.end())
      std::sort(cit->second.begin(), cit->second.end(),
                [](const CensusEntry& a, const CensusEntry& b) { return a.key < b.key; });
  }

  void add_to_census(const BipartiteMonoid& b, int s) {
    CanonicalForm cf = canonical_form(b);
    if (!census_full[s].insert(cf.key).second) return;
    if (s < 2) return;  // the one-element quotient stays out of the report
    BipartiteMonoid rep = apply_labeling(b, cf.labeling);
    rep.m.generators = greedy_generators(rep.m);
    out.classes[s].push_back({canonical_key_hex(b), std::move(rep)});
  }

  void queue_children(std::vector<Child>& children) {
    std::sort(children.begin(), children.end(), child_order);
    for (auto& c : children) {
      int sz = c.bm.size();
      if (seen[sz].insert(c.key).second) pending[sz].push_back(std::move(c));
    }
  }
};

}  // namespace

std::vector<Monoid> simple_extensions(const Monoid& q, int max_order) {
  return ExtensionSearch(q, max_order).run();
}

std::vector<ConstructionScheme> simple_extensions(const ConstructionScheme& s,
                                                  int max_order) {
  std::vector<ConstructionScheme> out;
  const int n = s.bm.size();
  std::vector<Elem> seq = s.seq;
  seq.push_back(n);
  for (Monoid& M : ExtensionSearch(s.bm.m, max_order).run()) {
    const int fresh = M.size - n;
    ConstructionScheme child;
    child.bm.m = M;
    child.bm.pmask.assign(M.size, 0);
    child.seq = seq;
    for (std::uint64_t pick = 0; pick < (std::uint64_t(1) << fresh); ++pick) {
      for (int i = 0; i < n; ++i) child.bm.pmask[i] = s.bm.pmask[i];
      for (int i = 0; i < fresh; ++i) child.bm.pmask[n + i] = (pick >> i & 1) ? 1 : 0;
      out.push_back(child);
    }
  }
  return out;
}

QuotientCensus enumerate_quotients_serial(const CensusOptions& opts) {
  const bool trace = std::getenv("MQ_TRACE") != nullptr;
  Pipeline p(opts);
  for (int s = 1; s <= opts.max_order; ++s) {
    std::size_t pend = 0;
    {
      auto pit = p.pending.find(s);
      if (pit != p.pending.end()) pend = pit->second.size();
    }
    auto t0 = std::chrono::steady_clock::now();
    p.admit_phase(s);
    auto t1 = std::chrono::steady_clock::now();
    auto mit = p.members.find(s);
    if (mit == p.members.end()) continue;
    if (s == opts.max_order) continue;
    std::vector<Child> children;
    for (const auto& bm : mit->second) {
      std::vector<Child> mine = expand_bm(bm, opts.max_order, s, p.census_full);
      children.insert(children.end(), std::make_move_iterator(mine.begin()),
                      std::make_move_iterator(mine.end()));
    }
    auto t2 = std::chrono::steady_clock::now();
    std::size_t raw = children.size();
    p.queue_children(children);
    auto t3 = std::chrono::steady_clock::now();
    if (trace) {
      auto ms = [](auto a, auto c) {
        return std::chrono::duration_cast<std::chrono::milliseconds>(c - a).count();
      };
      std::size_t census_s = 0;
      auto cit = p.out.classes.find(s);
      if (cit != p.out.classes.end()) census_s = cit->second.size();
      std::fprintf(stderr,
                   "size %d: pending %zu, members %zu, census %zu, children %zu, "
                   "admit %lld ms, expand %lld ms, merge %lld ms\n",
                   s, pend, mit->second.size(), census_s, raw,
                   (long long)ms(t0, t1), (long long)ms(t1, t2),
                   (long long)ms(t2, t3));
    }
  }
  return std::move(p.out);
}

QuotientCensus enumerate_quotients_parallel(const CensusOptions& opts) {
  Pipeline p(opts);
  std::atomic<bool> partial{false};
  for (int s = 1; s <= opts.max_order; ++s) {
    p.admit_phase(s);
    auto mit = p.members.find(s);
    if (mit == p.members.end()) continue;
    if (s == opts.max_order) continue;
    const std::vector<BipartiteMonoid>& batch = mit->second;
    std::vector<std::vector<Child>> parts(batch.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(opts.jobs)
#endif
    for (std::size_t i = 0; i < batch.size(); ++i) {
      try {
        parts[i] = expand_bm(batch[i], opts.max_order, s, p.census_full);
      } catch (const std::exception&) {
        partial.store(true);
      }
    }
    std::vector<Child> children;
    for (auto& part : parts)
      children.insert(children.end(), std::make_move_iterator(part.begin()),
                      std::make_move_iterator(part.end()));
    p.queue_children(children);
  }
  p.out.partial = partial.load();
  return std::move(p.out);
}

QuotientCensus enumerate_quotients(const CensusOptions& opts) {
  if (opts.jobs > 1) return enumerate_quotients_parallel(opts);
  return enumerate_quotients_serial(opts);
}

std::map<int, int> QuotientCensus::counts() const {
  std::map<int, int> c;
  for (int o = 2; o <= max_order; ++o) c[o] = 0;
  for (const auto& [o, v] : classes)
    if (o >= 2) c[o] = static_cast<int>(v.size());
  return c;
}

bool QuotientCensus::contains(int order, const std::string& key) const {
  auto it = classes.find(order);
  if (it == classes.end()) return false;
  for (const auto& e : it->second)
    if (e.key == key) return true;
  return false;
}

bool QuotientOracle::check(const BipartiteMonoid& b) {
  witness_seq.clear();
  if (b.size() > 64) throw std::invalid_argument("quotient search capped at 64 elements");
  if (b.size() == 1) return b.pset().empty();
  if (b.in_p(0)) return false;
  if (!is_reduced(b)) return false;
  std::string key = canonical_form(b).key;
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  std::vector<Elem> seq;
  bool r = slice_search(b, seq, {0});
  memo_[key] = r;
  if (r) witness_seq = seq;
  return r;
}

bool QuotientOracle::slice_search(const BipartiteMonoid& b, std::vector<Elem>& seq,
                                  const std::vector<Elem>& slice) {
  if (static_cast<int>(slice.size()) == b.size())
    return minimex_valid({b, seq});
  std::vector<char> in(b.size(), 0);
  for (Elem e : slice) in[e] = 1;
  for (Elem x = 0; x < b.size(); ++x) {
    if (in[x]) continue;
    // the first slice of any certifying sequence can be forced to start with
    // the image of *, a P-element squaring to 1, so other openers are skipped
    if (slice.size() == 1 && !(b.in_p(x) && b.mul(x, x) == 0)) continue;
    seq.push_back(x);
    std::vector<Elem> grown = closure_of(b.m, seq);
    bool ok = true;
    if (static_cast<int>(grown.size()) < b.size()) {
      Submonoid sub = submonoid(b, grown);
      // position of each parent element inside the slice copy
      std::vector<Elem> pos(b.size(), -1);
      for (std::size_t i = 0; i < sub.inclusion.size(); ++i)
        pos[sub.inclusion[i]] = static_cast<Elem>(i);
      ConstructionScheme prefix;
      prefix.bm = sub.bm;
      for (Elem e : seq) prefix.seq.push_back(pos[e]);
      // a prefix whose own slice algebra fails can never complete validly
      ok = minimex_valid(prefix);
      if (ok) ok = check(reduce(sub.bm).bm);
    }
    // on success seq keeps the full sequence, it is the caller's witness
    if (ok && slice_search(b, seq, grown)) return true;
    seq.pop_back();
  }
  return false;
}

bool is_quotient(const BipartiteMonoid& b) {
  QuotientOracle oracle;
  return oracle.check(b);
}

QuotientWitness quotient_witness(const BipartiteMonoid& b) {
  QuotientWitness w;
  QuotientOracle oracle;  // fresh memo, so a yes always carries its sequence
  w.yes = oracle.check(b);
  if (w.yes) {
    w.seq = oracle.witness_seq;
    w.algebra = minimex_algebra({b, w.seq});
  }
  return w;
}

}  // namespace mq
