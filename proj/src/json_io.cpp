#include "mq/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mq/presentation.hpp"

namespace mq {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kMonoidSizeCap = 4096;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
}

void require_object(const ordered_json& j, const std::vector<std::string>& keys,
                    const std::string& ctx) {
  if (!j.is_object()) bad(ctx + ": expected a JSON object");
  for (const auto& k : keys)
    if (!j.contains(k)) bad(ctx + ": missing key \"" + k + "\"");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    bool known = false;
    for (const auto& want : keys) known = known || k == want;
    if (!known) bad(ctx + ": unknown key \"" + k + "\"");
  }
}

int get_int(const ordered_json& j, const std::string& ctx) {
  if (!j.is_number_integer()) bad(ctx + ": expected an integer");
  long long v = j.get<long long>();
  if (v < -kMonoidSizeCap || v > (1 << 30)) bad(ctx + ": integer out of range");
  return static_cast<int>(v);
}

std::vector<int> get_int_array(const ordered_json& j, const std::string& ctx) {
  if (!j.is_array()) bad(ctx + ": expected an array");
  std::vector<int> out;
  for (const auto& e : j) out.push_back(get_int(e, ctx + " entry"));
  return out;
}

ordered_json monoid_to_j(const BipartiteMonoid& b) {
  ordered_json j;
  j["size"] = b.size();
  j["identity"] = 0;
  ordered_json rows = ordered_json::array();
  for (Elem x = 0; x < b.size(); ++x) {
    ordered_json row = ordered_json::array();
    for (Elem y = 0; y < b.size(); ++y) row.push_back(b.mul(x, y));
    rows.push_back(std::move(row));
  }
  j["table"] = std::move(rows);
  j["P"] = b.pset();
  j["generators"] = b.m.generators;
  return j;
}

BipartiteMonoid monoid_from_j(const ordered_json& j, const std::string& ctx) {
  require_object(j, {"size", "identity", "table", "P", "generators"}, ctx);
  int n = get_int(j["size"], ctx + ".size");
  if (n < 1 || n > kMonoidSizeCap) bad(ctx + ".size: must be between 1 and 4096");
  if (get_int(j["identity"], ctx + ".identity") != 0)
    bad(ctx + ".identity: the identity must be element 0");
  if (!j["table"].is_array() || static_cast<int>(j["table"].size()) != n)
    bad(ctx + ".table: expected " + std::to_string(n) + " rows");
  Monoid m;
  m.size = n;
  m.table.reserve(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    std::vector<int> row = get_int_array(j["table"][x], ctx + ".table row");
    if (static_cast<int>(row.size()) != n)
      bad(ctx + ".table: row " + std::to_string(x) + " has wrong length");
    for (int v : row) {
      if (v < 0 || v >= n) bad(ctx + ".table: entry out of range");
      m.table.push_back(v);
    }
  }
  for (int y = 0; y < n; ++y)
    if (m.table[y] != y || m.table[static_cast<std::size_t>(y) * n] != y)
      bad(ctx + ".table: element 0 does not act as the identity");
  std::vector<int> pset = get_int_array(j["P"], ctx + ".P");
  std::vector<char> seen(n, 0);
  for (int v : pset) {
    if (v < 0 || v >= n) bad(ctx + ".P: element out of range");
    if (seen[v]) bad(ctx + ".P: duplicate element");
    seen[v] = 1;
  }
  std::vector<int> gens = get_int_array(j["generators"], ctx + ".generators");
  seen.assign(n, 0);
  for (int v : gens) {
    if (v < 0 || v >= n) bad(ctx + ".generators: element out of range");
    if (seen[v]) bad(ctx + ".generators: duplicate element");
    seen[v] = 1;
  }
  m.generators = gens;
  return make_bm(std::move(m), pset);
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json pair_to_j(const TransitionPair& p) {
  ordered_json j;
  j["x"] = p.x;
  j["E"] = elems_of(p.mask);
  return j;
}

TransitionPair pair_from_j(const ordered_json& j, int n, const std::string& ctx) {
  require_object(j, {"x", "E"}, ctx);
  TransitionPair p;
  p.x = get_int(j["x"], ctx + ".x");
  if (p.x < 0 || p.x >= n) bad(ctx + ".x: element out of range");
  std::vector<int> e = get_int_array(j["E"], ctx + ".E");
  for (int v : e)
    if (v < 0 || v >= n) bad(ctx + ".E: element out of range");
  p.mask = mask_of(e);
  return p;
}

ordered_json games_to_j(const GameStore& store) {
  ordered_json arr = ordered_json::array();
  for (int id = 0; id < store.size(); ++id) {
    ordered_json g;
    g["id"] = id;
    g["options"] = store.options_of(id);
    arr.push_back(std::move(g));
  }
  ordered_json j;
  j["games"] = std::move(arr);
  return j;
}

}  // namespace

std::string monoid_to_json(const BipartiteMonoid& b) { return dump(monoid_to_j(b)); }

BipartiteMonoid monoid_from_json(const std::string& text) {
  return monoid_from_j(parse_json(text), "monoid");
}

std::string transition_to_json(const TransitionAlgebra& t) {
  ordered_json j;
  j["monoid"] = monoid_to_j(t.base);
  ordered_json pairs = ordered_json::array();
  for (const auto& p : t.pairs) pairs.push_back(pair_to_j(p));
  j["pairs"] = std::move(pairs);
  ordered_json gens = ordered_json::array();
  for (const auto& p : t.generator_pairs) gens.push_back(pair_to_j(p));
  j["generators"] = std::move(gens);
  return dump(j);
}

TransitionAlgebra transition_from_json(const std::string& text) {
  ordered_json j = parse_json(text);
  require_object(j, {"monoid", "pairs", "generators"}, "transition");
  TransitionAlgebra t;
  t.base = monoid_from_j(j["monoid"], "transition.monoid");
  if (t.base.size() > 64) bad("transition.monoid: capped at 64 elements");
  if (!j["pairs"].is_array()) bad("transition.pairs: expected an array");
  for (const auto& e : j["pairs"])
    t.pairs.push_back(pair_from_j(e, t.base.size(), "transition pair"));
  std::sort(t.pairs.begin(), t.pairs.end());
  t.pairs.erase(std::unique(t.pairs.begin(), t.pairs.end()), t.pairs.end());
  if (!j["generators"].is_array()) bad("transition.generators: expected an array");
  for (const auto& e : j["generators"])
    t.generator_pairs.push_back(pair_from_j(e, t.base.size(), "transition generator"));
  return t;
}

std::string games_to_json(const GameStore& store) { return dump(games_to_j(store)); }

std::unordered_map<int, int> games_from_json(const std::string& text, GameStore& store) {
  ordered_json j = parse_json(text);
  require_object(j, {"games"}, "games");
  if (!j["games"].is_array()) bad("games: expected an array");
  std::unordered_map<int, int> id_map;
  for (const auto& e : j["games"]) {
    require_object(e, {"id", "options"}, "game");
    int id = get_int(e["id"], "game.id");
    if (id_map.count(id)) bad("game.id: duplicate id " + std::to_string(id));
    std::vector<int> opts = get_int_array(e["options"], "game.options");
    for (int& o : opts) {
      auto it = id_map.find(o);
      if (it == id_map.end())
        bad("game " + std::to_string(id) + ": option " + std::to_string(o) +
            " is not declared earlier in the file");
      o = it->second;
    }
    id_map[id] = store.add(std::move(opts));
  }
  return id_map;
}

std::string realization_to_json(const GameStore& store, const TransitionAlgebra& t,
                                const Realization& r) {
  ordered_json j = games_to_j(store);
  ordered_json pairs = ordered_json::array();
  for (std::size_t i = 0; i < t.pairs.size(); ++i) {
    ordered_json p = pair_to_j(t.pairs[i]);
    p["game"] = r.pair_game[i];
    pairs.push_back(std::move(p));
  }
  j["pairs"] = std::move(pairs);
  return dump(j);
}

std::string phi_to_json(const PretendingFunction& phi) {
  ordered_json j;
  j["M"] = phi.M;
  ordered_json vals;
  for (int n = 1; n <= phi.M; ++n)
    vals[std::to_string(n)] = phi.values[n];
  j["values"] = std::move(vals);
  return dump(j);
}

PretendingFunction phi_from_json(const std::string& text) {
  ordered_json j = parse_json(text);
  require_object(j, {"M", "values"}, "phi");
  PretendingFunction phi;
  phi.M = get_int(j["M"], "phi.M");
  if (phi.M < 1 || phi.M > 1 << 20) bad("phi.M: out of range");
  phi.values.assign(phi.M + 1, 0);
  if (!j["values"].is_object()) bad("phi.values: expected an object");
  std::vector<char> seen(phi.M + 1, 0);
  for (const auto& [k, v] : j["values"].items()) {
    int n;
    try {
      std::size_t used = 0;
      n = std::stoi(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      bad("phi.values: key \"" + k + "\" is not a heap number");
    }
    if (n < 1 || n > phi.M) bad("phi.values: heap " + k + " outside 1..M");
    int e = get_int(v, "phi.values[" + k + "]");
    if (e < 0) bad("phi.values: element index must be nonnegative");
    phi.values[n] = e;
    seen[n] = 1;
  }
  for (int n = 1; n <= phi.M; ++n)
    if (!seen[n]) bad("phi.values: heap " + std::to_string(n) + " is missing");
  return phi;
}

std::string census_to_json(const QuotientCensus& census) {
  ordered_json j;
  ordered_json counts;
  for (const auto& [order, c] : census.counts())
    counts[std::to_string(order)] = c;
  j["counts"] = std::move(counts);
  ordered_json classes;
  for (const auto& [order, entries] : census.classes) {
    if (order < 2) continue;
    ordered_json arr = ordered_json::array();
    for (const auto& e : entries) {
      ordered_json item;
      item["key"] = e.key;
      item["monoid"] = monoid_to_j(e.bm);
      arr.push_back(std::move(item));
    }
    classes[std::to_string(order)] = std::move(arr);
  }
  j["classes"] = std::move(classes);
  return dump(j);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) bad("cannot read " + path);
  return ss.str();
}

void write_text_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot move " + tmp + " into place");
  }
}

BipartiteMonoid load_bm_file(const std::string& path) {
  std::string text = read_text_file(path);
  std::size_t i = text.find_first_not_of(" \t\r\n");
  if (i == std::string::npos) bad(path + ": empty input");
  if (text[i] == '{') return monoid_from_json(text);
  std::vector<Presentation> blocks = parse_presentation_blocks(text);
  if (blocks.size() != 1)
    bad(path + ": expected exactly one presentation block, found " +
        std::to_string(blocks.size()));
  return build_from_presentation(blocks[0], kMonoidSizeCap);
}

}  // namespace mq
