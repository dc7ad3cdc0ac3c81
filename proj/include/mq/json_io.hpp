#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "mq/classifier.hpp"
#include "mq/games.hpp"
#include "mq/monoid.hpp"
#include "mq/transition.hpp"

namespace mq {

// Serializers emit pretty-printed JSON with a fixed key order and a trailing
// newline, byte-stable for equal inputs. Parsers validate structure and
// ranges and throw std::invalid_argument with a readable message on any
// defect; semantic checks (monoid axioms) are the caller's business.

// { "size": n, "identity": 0, "table": [[..]], "P": [..], "generators": [..] }
std::string monoid_to_json(const BipartiteMonoid& b);
BipartiteMonoid monoid_from_json(const std::string& text);

// { "monoid": {..}, "pairs": [{"x":i,"E":[..]}], "generators": [{"x":i,"E":[..]}] }
std::string transition_to_json(const TransitionAlgebra& t);
TransitionAlgebra transition_from_json(const std::string& text);

// { "games": [{"id":k,"options":[..]}] }, ids in dependency order. The whole
// store is written; loading returns the file-id to store-id map (the store
// deduplicates, so they can differ).
std::string games_to_json(const GameStore& store);
std::unordered_map<int, int> games_from_json(const std::string& text, GameStore& store);

// games_to_json plus "pairs": [{"x":i,"E":[..],"game":id}] for a realized
// transition algebra.
std::string realization_to_json(const GameStore& store, const TransitionAlgebra& t,
                                const Realization& r);

// { "M": m, "values": {"1": e1, ..., "m": em} }
std::string phi_to_json(const PretendingFunction& phi);
PretendingFunction phi_from_json(const std::string& text);

// { "counts": {"2":c2,..}, "classes": {"8":[{"key":hex,"monoid":{..}}],..} }
std::string census_to_json(const QuotientCensus& census);

std::string read_text_file(const std::string& path);

// Writes to a sibling temp file, then renames over path.
void write_text_file_atomic(const std::string& path, const std::string& content);

// Loads a bipartite monoid from a file holding either the JSON form or a
// presentation block (sniffed on the first non-space byte).
BipartiteMonoid load_bm_file(const std::string& path);

}  // namespace mq
