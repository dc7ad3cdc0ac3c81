#include "mq/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "mq/util.hpp"

namespace mq {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<int> parse_word(const std::string& w,
                            const std::vector<std::string>& gens) {
  std::vector<int> exp(gens.size(), 0);
  if (w == "1") return exp;
  std::size_t i = 0;
  while (i < w.size()) {
    char c = w[i];
    int gi = -1;
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (gens[g].size() == 1 && gens[g][0] == c) gi = static_cast<int>(g);
    if (gi < 0) throw std::invalid_argument("unknown generator '" + std::string(1, c) +
                                            "' in word '" + w + "'");
    ++i;
    int e = 0;
    bool has = false;
    while (i < w.size() && std::isdigit(static_cast<unsigned char>(w[i]))) {
      e = e * 10 + (w[i] - '0');
      has = true;
      ++i;
    }
    exp[gi] += has ? e : 1;
  }
  return exp;
}

std::string emit_word(const std::vector<int>& exp,
                      const std::vector<std::string>& gens) {
  std::string out;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (exp[g] == 0) continue;
    out += gens[g];
    if (exp[g] > 1) out += std::to_string(exp[g]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace

Presentation parse_presentation(const std::string& block) {
  Presentation p;
  std::istringstream in(block);
  std::string line;
  bool saw_gens = false, saw_rels = false, saw_p = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("presentation line without ':': " + line);
    std::string tag = trim(line.substr(0, colon));
    std::string rest = trim(line.substr(colon + 1));
    if (tag == "gens") {
      saw_gens = true;
      if (!rest.empty())
        for (auto& g : split(rest, ',')) {
          if (g.size() != 1 || !std::isalpha(static_cast<unsigned char>(g[0])))
            throw std::invalid_argument("generator names must be single letters: " + g);
          p.gens.push_back(g);
        }
    } else if (tag == "rels") {
      saw_rels = true;
      if (!saw_gens) throw std::invalid_argument("rels before gens");
      if (!rest.empty())
        for (auto& r : split(rest, ',')) {
          auto eq = r.find('=');
          if (eq == std::string::npos)
            throw std::invalid_argument("relation without '=': " + r);
          p.relations.emplace_back(parse_word(trim(r.substr(0, eq)), p.gens),
                                   parse_word(trim(r.substr(eq + 1)), p.gens));
        }
    } else if (tag == "P") {
      saw_p = true;
      if (!saw_gens) throw std::invalid_argument("P before gens");
      if (!rest.empty())
        for (auto& w : split(rest, ','))
          p.pwords.push_back(parse_word(w, p.gens));
    } else {
      throw std::invalid_argument("unknown presentation tag: " + tag);
    }
  }
  if (!saw_gens || !saw_rels || !saw_p)
    throw std::invalid_argument("presentation block needs gens:, rels: and P: lines");
  return p;
}

std::vector<Presentation> parse_presentation_blocks(const std::string& text) {
  std::vector<Presentation> out;
  std::string block;
  std::istringstream in(text);
  std::string line;
  auto flush = [&]() {
    if (!trim(block).empty()) out.push_back(parse_presentation(block));
    block.clear();
  };
  while (std::getline(in, line)) {
    if (trim(line).empty())
      flush();
    else
      block += line + "\n";
  }
  flush();
  return out;
}

std::string emit_presentation(const Presentation& p) {
  std::string out = "gens: ";
  for (std::size_t i = 0; i < p.gens.size(); ++i) {
    if (i) out += ",";
    out += p.gens[i];
  }
  out += "\nrels: ";
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    if (i) out += ", ";
    out += emit_word(p.relations[i].first, p.gens) + "=" +
           emit_word(p.relations[i].second, p.gens);
  }
  out += "\nP: ";
  for (std::size_t i = 0; i < p.pwords.size(); ++i) {
    if (i) out += ", ";
    out += emit_word(p.pwords[i], p.gens);
  }
  out += "\n";
  return out;
}

namespace {

// Coincidence-table completion for a commutative monoid presentation.
// Rows are element classes, columns are generators; relations (plus the
// commutation of every generator pair) are traced from every live row,
// defining rows for missing slots, until nothing changes.
class TableBuilder {
 public:
  TableBuilder(int ngens, int cap)
      : ngens_(ngens), cap_(cap), uf_(0) {
    new_row(-1, -1);
  }

  int trace(int row, const std::vector<int>& word, bool define) {
    int cur = find(row);
    for (int g : word) {
      int nxt = mul_[cur][g];
      if (nxt < 0) {
        if (!define) return -1;
        nxt = new_row(cur, g);
        mul_[cur][g] = nxt;
        changed_ = true;
      }
      cur = find(nxt);
    }
    return cur;
  }

  void merge(int a, int b) {
    pending_.emplace_back(a, b);
    drain();
  }

  void complete(const std::vector<std::pair<std::vector<int>, std::vector<int>>>& rels) {
    do {
      changed_ = false;
      for (int r = 0; r < static_cast<int>(mul_.size()); ++r) {
        if (find(r) != r) continue;
        for (const auto& [lhs, rhs] : rels) {
          int a = trace(r, lhs, true);
          int b = trace(r, rhs, true);
          if (find(a) != find(b)) {
            merge(a, b);
            changed_ = true;
          }
        }
      }
      // The table must be total: undefined slots spawn fresh rows, so a
      // presentation with an infinite quotient runs into the row bound.
      for (int r = 0; r < static_cast<int>(mul_.size()); ++r) {
        if (find(r) != r) continue;
        for (int g = 0; g < ngens_; ++g)
          if (mul_[r][g] < 0) {
            mul_[r][g] = new_row(r, g);
            changed_ = true;
          }
      }
    } while (changed_);
  }

  int live_count() {
    int c = 0;
    for (int r = 0; r < static_cast<int>(mul_.size()); ++r) c += (find(r) == r);
    return c;
  }

  int total_rows() const { return static_cast<int>(mul_.size()); }

  // Flattened word (generator sequence) that reaches this row from the
  // identity, following creation lineage.
  std::vector<int> word_of(int row) const {
    std::vector<int> w;
    while (row > 0) {
      w.push_back(parent_gen_[row]);
      row = parent_[row];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

  int find(int r) { return uf_.find(r); }
  int slot(int row, int g) { return mul_[find(row)][g]; }

 private:
  int new_row(int parent, int gen) {
    int id = static_cast<int>(mul_.size());
    if (id > 8 * cap_ + 256)
      throw std::runtime_error("presentation exceeds size cap");
    mul_.emplace_back(ngens_, -1);
    parent_.push_back(parent);
    parent_gen_.push_back(gen);
    uf_.grow(id + 1);
    return id;
  }

  void drain() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.back();
      pending_.pop_back();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      int dead = uf_.unite(a, b);
      int surv = find(dead == a ? b : a);
      for (int g = 0; g < ngens_; ++g) {
        int d = mul_[dead][g];
        if (d < 0) continue;
        int& s = mul_[surv][g];
        if (s < 0)
          s = d;
        else if (find(s) != find(d))
          pending_.emplace_back(s, d);
      }
      changed_ = true;
    }
  }

  int ngens_, cap_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> parent_, parent_gen_;
  UnionFind uf_;
  std::vector<std::pair<int, int>> pending_;
  bool changed_ = false;
};

}  // namespace

BipartiteMonoid build_from_presentation(const Presentation& p, int size_cap) {
  const int k = static_cast<int>(p.gens.size());
  if (k == 0) {
    Monoid m;
    m.size = 1;
    m.table = {0};
    return make_bm(std::move(m), {});
  }
  // Flatten exponent-vector relations and add generator commutation.
  std::vector<std::pair<std::vector<int>, std::vector<int>>> rels;
  auto flatten = [&](const std::vector<int>& exp) {
    std::vector<int> w;
    for (int g = 0; g < k; ++g)
      for (int i = 0; i < exp[g]; ++i) w.push_back(g);
    return w;
  };
  for (const auto& [l, r] : p.relations) rels.emplace_back(flatten(l), flatten(r));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      rels.push_back({{i, j}, {j, i}});

  TableBuilder tb(k, size_cap);
  tb.complete(rels);
  if (tb.live_count() > size_cap)
    throw std::runtime_error("presentation exceeds size cap");

  // Compact live rows; row 0 survives every merge, so identity stays first.
  std::vector<int> roots;
  for (int r = 0; r < tb.total_rows(); ++r)
    if (tb.find(r) == r) roots.push_back(r);
  std::vector<int> index(tb.total_rows(), -1); // row id -> compact index
  for (std::size_t i = 0; i < roots.size(); ++i)
    index[roots[i]] = static_cast<int>(i);

  const int n = static_cast<int>(roots.size());
  Monoid m;
  m.size = n;
  m.table.assign(static_cast<std::size_t>(n) * n, 0);
  for (int j = 0; j < n; ++j) {
    std::vector<int> w = tb.word_of(roots[j]);
    for (int i = 0; i < n; ++i) {
      int dst = tb.trace(roots[i], w, false);
      if (dst < 0) throw std::logic_error("incomplete table after completion");
      m.table[i * n + j] = index[dst];
    }
  }
  for (int g = 0; g < k; ++g) {
    int img = index[tb.trace(0, {g}, false)];
    if (std::find(m.generators.begin(), m.generators.end(), img) ==
        m.generators.end())
      m.generators.push_back(img);
  }
  std::vector<Elem> pset;
  for (const auto& pw : p.pwords) {
    int row = tb.trace(0, flatten(pw), false);
    if (row < 0) throw std::logic_error("P word fell off the table");
    pset.push_back(index[row]);
  }
  std::sort(pset.begin(), pset.end());
  pset.erase(std::unique(pset.begin(), pset.end()), pset.end());
  return make_bm(std::move(m), pset);
}

}  // namespace mq
