#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "mq/monoid.hpp"
#include "mq/transition.hpp"
#include "mq/util.hpp"

namespace mq {

enum class Outcome { P, N };
inline const char* outcome_str(Outcome o) { return o == Outcome::P ? "P" : "N"; }

// Game trees stored structurally: a game is a sorted list of option ids and
// two games with the same option list share one id. Id 0 is the empty game.
struct GameStore {
  GameStore() { opts_.push_back({}); index_[{}] = 0; }

  // options are deduplicated and sorted; every id must already exist
  int add(std::vector<int> options);
  const std::vector<int>& options_of(int id) const { return opts_[id]; }
  int size() const { return static_cast<int>(opts_.size()); }

 private:
  std::vector<std::vector<int>> opts_;
  std::unordered_map<std::vector<int>, int, VecHash> index_;

  friend Outcome outcome_misere(GameStore&, int);
  friend Outcome outcome_normal(GameStore&, int);
  friend int grundy(GameStore&, int);
  friend int birthday(GameStore&, int);
  friend int game_sum(GameStore&, int, int);

  std::vector<signed char> misere_memo_, normal_memo_;
  std::vector<int> grundy_memo_, birthday_memo_;
  std::map<std::pair<int, int>, int> sum_memo_;
};

// misere play: the player who cannot move wins, so a game with no options is
// an N-position and otherwise N means some option is a P-position
Outcome outcome_misere(GameStore& store, int id);
// normal play: the player who cannot move loses
Outcome outcome_normal(GameStore& store, int id);
// normal-play Grundy value, mex over the options
int grundy(GameStore& store, int id);
int birthday(GameStore& store, int id);
// disjunctive sum, memoized per unordered id pair
int game_sum(GameStore& store, int a, int b);

// A position is a sum of component games, kept as a sorted id list with the
// empty game dropped (it is the empty sum). Moves replace one component by
// one of its options.
using Position = std::vector<int>;
Position normalize_position(std::vector<int> components);
Outcome outcome_misere_position(GameStore& store, const Position& pos,
                                std::unordered_map<Position, Outcome, VecHash>& memo);

// Heap-game codes d0.d1d2..., each digit 0..15. Digit d_n governs moves that
// take n tokens from a heap; bit 1 allows emptying the heap exactly (heap
// size n), bit 2 allows leaving one nonempty heap, bit 4 allows splitting the
// remainder into two nonempty heaps, bit 8 into three. d0 moves take nothing,
// so only its split bits make sense and anything else is rejected.
struct HeapCode {
  int d0 = 0;
  std::vector<int> digits;  // digits[i] is d_{i+1}

  static HeapCode parse(const std::string& text);  // throws on malformed codes
  std::string str() const;
  int digit(int n) const;  // d_n, 0 when past the end
  int last_nonzero() const;  // largest n >= 1 with d_n != 0, 0 if none
};

// legal moves from a single heap of n tokens, each move a sorted list of the
// nonempty heap sizes it leaves behind
std::vector<std::vector<int>> heap_moves(const HeapCode& code, int n);

// the single-heap game trees, cached per heap size (cache[n] is heap n's id;
// cache grows as needed, cache[0] is the empty game)
int heap_game(GameStore& store, const HeapCode& code, int n, std::vector<int>& cache);

// Grundy values g[0..max_heap] straight from the recurrence, XOR over parts
std::vector<int> grundy_sequence(const HeapCode& code, int max_heap);

// follower closure of the given games, sorted ids
std::vector<int> closure_games(const GameStore& store, const std::vector<int>& gens);

// every position with at most max_components components drawn from the
// follower closure of gens, empty game excluded as a component
std::vector<Position> closure_positions(GameStore& store, const std::vector<int>& gens,
                                        int max_components);

// Push a game labeling through positions: each position within the caps
// becomes the pair (product of component labels, labels of its option
// positions). labels must cover the follower closure of gens.
std::vector<TransitionPair> transition_of_positions(
    GameStore& store, const std::vector<int>& gens,
    const std::unordered_map<int, Elem>& labels, const BipartiteMonoid& b,
    int max_components);

struct ParityReport {
  long long positions_checked = 0;
  std::vector<std::string> violations;  // capped sample
  bool ok() const { return violations.empty(); }
};

// Core soundness probe: for every position over gens within the component
// cap, the multiplicative extension of the labeling lands in P exactly when
// the position is a misere P-position.
ParityReport check_pretension_parity(GameStore& store, const std::vector<int>& gens,
                                     const std::unordered_map<int, Elem>& labels,
                                     const BipartiteMonoid& b, int max_components);

// Heap-to-element assignment: values[n] is the element pretended by a single
// heap of n tokens, for 1 <= n <= M. values[0] is ignored.
struct PretendingFunction {
  int M = 0;
  std::vector<Elem> values;
};

struct FaithfulnessResult {
  bool ok = false;
  bool generates = false;  // heap images generate the whole monoid
  GrundyLabeledBM labeled;  // labels[x] = -1 where no Grundy value is forced
  std::vector<std::string> conflicts;
};

// Checks that normal-play Grundy values factor through phi: seed each heap
// image with its Grundy value, extend multiplicatively by XOR over the
// generated submonoid, and report any clash.
FaithfulnessResult faithfulness_check(const HeapCode& code, const PretendingFunction& phi,
                                      const BipartiteMonoid& b);

struct AlmostTameResult {
  bool applicable = false;           // all hypotheses verified
  std::vector<std::string> failures; // which hypotheses broke, empty when applicable
  std::string verdict;               // set only when applicable
  int d = 0;                         // last nonzero code digit index
  // window evidence: heap n in [n0, 2*n0+d), its image, kernel membership
  std::vector<std::string> window;
};

// Periodicity test for heap games whose partial quotient has turned tame:
// with (b, phi) describing play up to heap 2*n0+d-1, if b is normal, Grundy
// values factor through phi, the heap images generate b, restrict on the
// kernel to a Grundy bijection, and every image in the window [n0, 2*n0+d)
// lies in the kernel, then the full quotient is a tame-extension power of b.
// The verdict never commits to the exponent.
AlmostTameResult almost_tame_check(const HeapCode& code, int n0,
                                   const BipartiteMonoid& b,
                                   const PretendingFunction& phi);

struct GenMexResult {
  bool ok = false;
  std::vector<std::string> failures;
};

// Option-driven extension test. base is a transition algebra over (Q, P),
// embed maps Q into the bigger monoid S, x is the element a new game G wants
// to pretend, and E lists the Q-images of G's options. Verifies that Q and x
// generate S, that E embeds into the meximal set of x, and the replay
// condition: for every base pair (y, F) and every exponent n with
// x^{n+1}*y outside P, either some y' in F has x^{n+1}*y' in P or some x' in
// E has x^n*x'*y in P. Exponents run to the index plus period of x in S.
GenMexResult gen_mex_check(const TransitionAlgebra& base, const BipartiteMonoid& S,
                           const std::vector<Elem>& embed, Elem x,
                           const std::vector<Elem>& E);

// Adjoining a game whose options pretend a subset E of the kernel: a proper
// subset leaves the monoid unchanged and the new game pretends the kernel
// element whose Grundy value is mex over E's Grundy values; the full kernel
// forces one tame extension and the new game pretends the mirrored identity.
// Returns the (possibly extended) monoid and the pretended element.
std::pair<BipartiteMonoid, Elem> extend_by_kernel_subset(const GrundyLabeledBM& g,
                                                         const std::vector<Elem>& E);

}  // namespace mq
