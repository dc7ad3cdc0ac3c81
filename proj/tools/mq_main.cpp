// mq: misere-quotient algebra toolbox. One executable, verb-style interface;
// all machine output is byte-stable JSON, all verdicts also come as text.
#include <cctype>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mq/canonical.hpp"
#include "mq/catalog.hpp"
#include "mq/classifier.hpp"
#include "mq/games.hpp"
#include "mq/json_io.hpp"
#include "mq/monoid.hpp"
#include "mq/presentation.hpp"
#include "mq/transition.hpp"

using ordered_json = nlohmann::ordered_json;

namespace {

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// bad input data (exit 65), as opposed to usage errors (64)
[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

mq::BipartiteMonoid load_checked_bm(const std::string& path) {
  mq::BipartiteMonoid b = mq::load_bm_file(path);
  // axiom scan is cubic; very large tables are accepted on their shape alone
  if (b.size() <= 512) {
    std::vector<mq::Violation> v = mq::check_axioms(b.m);
    if (!v.empty()) {
      std::string msg = path + ": not a commutative monoid table";
      for (std::size_t i = 0; i < v.size() && i < 3; ++i) msg += "\n  " + v[i].describe();
      throw std::invalid_argument(msg);
    }
  }
  return b;
}

mq::TransitionAlgebra load_checked_transition(const std::string& path) {
  mq::TransitionAlgebra t = mq::transition_from_json(mq::read_text_file(path));
  std::vector<mq::Violation> v = mq::check_axioms(t.base.m);
  if (!v.empty()) {
    std::string msg = path + ": not a commutative monoid table";
    for (std::size_t i = 0; i < v.size() && i < 3; ++i) msg += "\n  " + v[i].describe();
    throw std::invalid_argument(msg);
  }
  return t;
}

// position grammar: terms joined by '+', each term g<id> or <count>*g<id>;
// "0" or an empty string is the empty position
mq::Position parse_position(const std::string& text,
                            const std::unordered_map<int, int>& id_map) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  std::vector<int> comps;
  if (s.empty() || s == "0") return {};
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find('+', start);
    if (end == std::string::npos) end = s.size();
    std::string term = s.substr(start, end - start);
    if (term.empty()) bad("position: empty term in \"" + text + "\"");
    long long count = 1;
    std::size_t star = term.find('*');
    std::string gpart = term;
    if (star != std::string::npos) {
      std::string cpart = term.substr(0, star);
      gpart = term.substr(star + 1);
      try {
        std::size_t used = 0;
        count = std::stoll(cpart, &used);
        if (used != cpart.size()) throw std::invalid_argument(cpart);
      } catch (const std::exception&) {
        bad("position: bad multiplier \"" + cpart + "\"");
      }
      if (count < 0) bad("position: negative multiplier");
    }
    if (gpart.size() < 2 || gpart[0] != 'g') bad("position: bad term \"" + term + "\"");
    int id;
    try {
      std::size_t used = 0;
      id = std::stoi(gpart.substr(1), &used);
      if (used != gpart.size() - 1) throw std::invalid_argument(gpart);
    } catch (const std::exception&) {
      bad("position: bad game id in \"" + term + "\"");
    }
    auto it = id_map.find(id);
    if (it == id_map.end()) bad("position: game g" + std::to_string(id) + " is not in the games file");
    if (static_cast<long long>(comps.size()) + count > 64)
      bad("position: more than 64 components");
    for (long long i = 0; i < count; ++i) comps.push_back(it->second);
    start = end + 1;
  }
  return mq::normalize_position(std::move(comps));
}

ordered_json report_to_j(const mq::ValidityReport& r) {
  ordered_json j;
  j["parity_ok"] = r.parity_ok;
  j["completeness_ok"] = r.completeness_ok;
  j["closure_ok"] = r.closure_ok;
  j["wellfounded_ok"] = r.wellfounded_ok;
  j["valid"] = r.all_ok();
  j["rank"] = r.rank;
  j["counterexamples"] = r.counterexamples;
  return j;
}

std::string report_to_text(const mq::ValidityReport& r) {
  std::ostringstream os;
  os << "parity: " << (r.parity_ok ? "ok" : "FAIL") << "\n"
     << "completeness: " << (r.completeness_ok ? "ok" : "FAIL") << "\n"
     << "closure: " << (r.closure_ok ? "ok" : "FAIL") << "\n"
     << "well-founded: " << (r.wellfounded_ok ? "ok" : "FAIL") << "\n"
     << "valid: " << (r.all_ok() ? "yes" : "no") << "\n";
  if (r.all_ok()) {
    os << "rank:";
    for (int v : r.rank) os << " " << v;
    os << "\n";
  }
  if (!r.counterexamples.empty()) {
    os << "counterexamples:\n";
    for (const auto& c : r.counterexamples) os << "  " << c << "\n";
  }
  return os.str();
}

struct Options {
  std::string format = "text";

  int max_order = 12;
  bool deep = false;
  int jobs = 1;
  std::string out;

  std::string input;
  std::string base;
  int steps = 0;

  bool misere = false;
  bool normal = false;
  std::string position;
  std::string games_path;

  std::string code;
  int to = 20;
  int n0 = 1;
  std::string quotient_path;
  std::string phi_path;

  std::string iso_a, iso_b;
};

int run_enumerate(const Options& o) {
  if (o.max_order > 14 && !o.deep) {
    std::cerr << "mq: orders above 14 need --deep\n";
    return 64;
  }
  mq::CensusOptions copts;
  copts.max_order = o.max_order;
  copts.jobs = o.jobs;
  mq::QuotientCensus census = mq::enumerate_quotients(copts);
  std::string json = mq::census_to_json(census);
  if (!o.out.empty()) mq::write_text_file_atomic(o.out, json);
  if (o.format == "json") {
    std::cout << json;
  } else {
    for (const auto& [order, count] : census.counts())
      std::cout << "order " << order << ": " << count
                << (count == 1 ? " class" : " classes") << "\n";
    if (census.partial) std::cout << "partial: caps were hit, counts are a lower bound\n";
  }
  return census.partial ? 2 : 0;
}

int run_verify_table(const Options& o) {
  mq::TransitionAlgebra t = load_checked_transition(o.input);
  mq::ValidityReport r = mq::validate(t);
  if (o.format == "json")
    std::cout << dump(report_to_j(r));
  else
    std::cout << report_to_text(r);
  return 0;
}

int run_is_quotient(const Options& o) {
  mq::BipartiteMonoid b = load_checked_bm(o.input);
  mq::QuotientWitness w = mq::quotient_witness(b);
  if (o.format == "json") {
    ordered_json j;
    j["is_quotient"] = w.yes;
    if (w.yes) {
      j["sequence"] = w.seq;
      j["algebra"] = ordered_json::parse(mq::transition_to_json(w.algebra));
    }
    std::cout << dump(j);
  } else if (w.yes) {
    std::cout << "yes";
    if (!w.seq.empty()) {
      std::cout << ", construction sequence:";
      for (mq::Elem e : w.seq) std::cout << " " << e;
    }
    std::cout << "\n";
  } else {
    std::cout << "no\n";
  }
  return 0;
}

int run_reduce(const Options& o) {
  mq::BipartiteMonoid b = load_checked_bm(o.input);
  mq::Reduction r = mq::reduce(b);
  std::string monoid_json = mq::monoid_to_json(r.bm);
  if (!o.out.empty()) mq::write_text_file_atomic(o.out, monoid_json);
  if (o.format == "json") {
    ordered_json j;
    j["monoid"] = ordered_json::parse(monoid_json);
    j["projection"] = r.projection;
    std::cout << dump(j);
  } else {
    std::cout << "order " << b.size() << " -> order " << r.bm.size() << "\n"
              << "projection:";
    for (mq::Elem e : r.projection) std::cout << " " << e;
    std::cout << "\n";
  }
  return 0;
}

int run_tame(const Options& o) {
  mq::BipartiteMonoid b;
  if (o.base == "t2")
    b = mq::make_Tn(2).bm;
  else if (o.base == "r8")
    b = mq::make_R(2).bm;
  else
    b = load_checked_bm(o.base);
  for (int i = 0; i < o.steps; ++i) {
    if (b.size() + mq::kernel(b.m).elems.size() > 4096)
      bad("tame ladder exceeds 4096 elements at step " + std::to_string(i + 1));
    b = mq::tame_extend(b);
  }
  std::string json = mq::monoid_to_json(b);
  if (!o.out.empty()) mq::write_text_file_atomic(o.out, json);
  if (o.format == "json")
    std::cout << json;
  else
    std::cout << "order " << b.size() << ", kernel " << mq::kernel(b.m).elems.size()
              << ", P size " << b.pset().size() << "\n";
  return 0;
}

int run_classify(const Options& o) {
  mq::BipartiteMonoid b = load_checked_bm(o.input);
  mq::FamilyLabel label = mq::classify_p2(b);
  if (o.format == "json") {
    ordered_json j;
    if (label.family == mq::Family::T) {
      j["family"] = "T";
      j["n"] = label.index;
      j["order"] = b.size();
    } else if (label.family == mq::Family::R) {
      j["family"] = "R";
      j["n"] = label.index;
      j["order"] = b.size();
    } else {
      j["family"] = "none";
    }
    std::cout << dump(j);
  } else if (label.family == mq::Family::T) {
    std::cout << "T family, n=" << label.index << " (order " << b.size() << ")\n";
  } else if (label.family == mq::Family::R) {
    std::cout << "R family, n=" << label.index << " (order " << b.size() << ")\n";
  } else {
    std::cout << "not applicable\n";
  }
  return 0;
}

int run_realize(const Options& o) {
  mq::TransitionAlgebra t = load_checked_transition(o.input);
  mq::ValidityReport r = mq::validate(t);
  if (!r.all_ok()) {
    std::string msg = o.input + ": transition table is not valid";
    for (std::size_t i = 0; i < r.counterexamples.size() && i < 3; ++i)
      msg += "\n  " + r.counterexamples[i];
    bad(msg);
  }
  mq::GameStore store;
  mq::Realization real = mq::realize_games(t, r, store);
  std::string json = mq::realization_to_json(store, t, real);
  mq::write_text_file_atomic(o.out, json);
  if (o.format == "json")
    std::cout << json;
  else
    std::cout << "realized " << store.size() << " games covering " << t.pairs.size()
              << " pairs\n";
  return 0;
}

int run_outcome(const Options& o) {
  if (o.misere && o.normal) {
    std::cerr << "mq: pick one of --misere and --normal\n";
    return 64;
  }
  mq::GameStore store;
  std::unordered_map<int, int> id_map =
      mq::games_from_json(mq::read_text_file(o.games_path), store);
  mq::Position pos = parse_position(o.position, id_map);
  mq::Outcome out;
  if (o.normal) {
    int x = 0;
    for (int id : pos) x ^= mq::grundy(store, id);
    out = x == 0 ? mq::Outcome::P : mq::Outcome::N;
  } else {
    std::unordered_map<mq::Position, mq::Outcome, mq::VecHash> memo;
    out = mq::outcome_misere_position(store, pos, memo);
  }
  if (o.format == "json") {
    ordered_json j;
    j["play"] = o.normal ? "normal" : "misere";
    j["position"] = o.position;
    j["outcome"] = mq::outcome_str(out);
    std::cout << dump(j);
  } else {
    std::cout << mq::outcome_str(out) << "\n";
  }
  return 0;
}

int run_grundy(const Options& o) {
  mq::HeapCode code = mq::HeapCode::parse(o.code);
  std::vector<int> g = mq::grundy_sequence(code, o.to);
  if (o.format == "json") {
    ordered_json j;
    j["code"] = code.str();
    j["to"] = o.to;
    std::vector<int> vals(g.begin() + 1, g.end());
    j["values"] = vals;
    std::cout << dump(j);
  } else {
    std::cout << "G(1.." << o.to << "):";
    for (int n = 1; n <= o.to; ++n) std::cout << " " << g[n];
    std::cout << "\n";
  }
  return 0;
}

int run_almost_tame(const Options& o) {
  mq::HeapCode code = mq::HeapCode::parse(o.code);
  mq::BipartiteMonoid b = load_checked_bm(o.quotient_path);
  mq::PretendingFunction phi = mq::phi_from_json(mq::read_text_file(o.phi_path));
  mq::AlmostTameResult res = mq::almost_tame_check(code, o.n0, b, phi);
  if (o.format == "json") {
    ordered_json j;
    j["applicable"] = res.applicable;
    j["failures"] = res.failures;
    j["verdict"] = res.verdict;
    j["window"] = res.window;
    std::cout << dump(j);
  } else if (res.applicable) {
    std::cout << "applicable\n" << res.verdict << "\n";
    for (const auto& w : res.window) std::cout << "  " << w << "\n";
  } else {
    std::cout << "not applicable\n";
    for (const auto& f : res.failures) std::cout << "  " << f << "\n";
  }
  return 0;
}

int run_iso(const Options& o) {
  mq::BipartiteMonoid a = load_checked_bm(o.iso_a);
  mq::BipartiteMonoid b = load_checked_bm(o.iso_b);
  std::optional<std::vector<mq::Elem>> phi = mq::isomorphic(a, b);
  if (o.format == "json") {
    ordered_json j;
    j["isomorphic"] = phi.has_value();
    if (phi) j["mapping"] = *phi;
    std::cout << dump(j);
  } else if (phi) {
    std::cout << "isomorphic, mapping:";
    for (mq::Elem e : *phi) std::cout << " " << e;
    std::cout << "\n";
  } else {
    std::cout << "not isomorphic\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"algebra of misere quotients"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  CLI::App* enumerate = app.add_subcommand("enumerate", "census of misere quotients by order");
  enumerate->fallthrough();
  enumerate->add_option("--max-order", o.max_order, "largest order to enumerate")
      ->required()
      ->check(CLI::Range(1, 18));
  enumerate->add_flag("--deep", o.deep, "allow orders above 14");
  enumerate->add_option("--jobs", o.jobs, "worker threads")
      ->envname("MQ_JOBS")
      ->check(CLI::Range(1, 256));
  enumerate->add_option("--out", o.out, "write census JSON here");

  CLI::App* verify = app.add_subcommand("verify-table", "validate a transition table");
  verify->fallthrough();
  verify->add_option("--input", o.input, "transition JSON file")->required();

  CLI::App* isq = app.add_subcommand("is-quotient", "construction-sequence search");
  isq->fallthrough();
  isq->add_option("--input", o.input, "monoid JSON or presentation file")->required();

  CLI::App* red = app.add_subcommand("reduce", "quotient by indistinguishability");
  red->fallthrough();
  red->add_option("--input", o.input, "monoid JSON or presentation file")->required();
  red->add_option("--out", o.out, "write reduced monoid JSON here");

  CLI::App* tame = app.add_subcommand("tame", "tame-extension ladder");
  tame->fallthrough();
  tame->add_option("--base", o.base, "t2, r8, or a monoid file")->required();
  tame->add_option("--steps", o.steps, "ladder steps")->required()->check(CLI::Range(0, 16));
  tame->add_option("--out", o.out, "write result monoid JSON here");

  CLI::App* cls = app.add_subcommand("classify", "match against the two-P-element catalog");
  cls->fallthrough();
  cls->add_option("--input", o.input, "monoid JSON or presentation file")->required();

  CLI::App* real = app.add_subcommand("realize", "build witness games for a valid table");
  real->fallthrough();
  real->add_option("--input", o.input, "transition JSON file")->required();
  real->add_option("--out", o.out, "write games JSON here")->required();

  CLI::App* outc = app.add_subcommand("outcome", "evaluate a sum of stored games");
  outc->fallthrough();
  outc->add_flag("--misere", o.misere, "misere play (default)");
  outc->add_flag("--normal", o.normal, "normal play");
  outc->add_option("--position", o.position, "e.g. \"2*g3+g7\"")->required();
  outc->add_option("--games", o.games_path, "games JSON file")->required();

  CLI::App* gr = app.add_subcommand("grundy", "normal-play values of a heap game");
  gr->fallthrough();
  gr->add_option("--code", o.code, "heap-game code, e.g. 0.77")->required();
  gr->add_option("--to", o.to, "largest heap")->check(CLI::Range(1, 10000))
      ->capture_default_str();

  CLI::App* at = app.add_subcommand("almost-tame", "tame-ladder periodicity test");
  at->fallthrough();
  at->add_option("--code", o.code, "heap-game code")->required();
  at->add_option("--n0", o.n0, "window start heap")->required()->check(CLI::Range(1, 1 << 20));
  at->add_option("--quotient", o.quotient_path, "partial quotient monoid file")->required();
  at->add_option("--phi", o.phi_path, "pretending function JSON")->required();

  CLI::App* iso = app.add_subcommand("iso", "isomorphism of two bipartite monoids");
  iso->fallthrough();
  iso->add_option("a", o.iso_a, "first monoid file")->required();
  iso->add_option("b", o.iso_b, "second monoid file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (app.got_subcommand(enumerate)) return run_enumerate(o);
    if (app.got_subcommand(verify)) return run_verify_table(o);
    if (app.got_subcommand(isq)) return run_is_quotient(o);
    if (app.got_subcommand(red)) return run_reduce(o);
    if (app.got_subcommand(tame)) return run_tame(o);
    if (app.got_subcommand(cls)) return run_classify(o);
    if (app.got_subcommand(real)) return run_realize(o);
    if (app.got_subcommand(outc)) return run_outcome(o);
    if (app.got_subcommand(gr)) return run_grundy(o);
    if (app.got_subcommand(at)) return run_almost_tame(o);
    if (app.got_subcommand(iso)) return run_iso(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "mq: " << e.what() << "\n";
    return 65;
  } catch (const std::exception& e) {
    std::cerr << "mq: internal error: " << e.what() << "\n";
    return 70;
  }
  return 64;
}
