// Markov move calculus: the strand-count-changing moves under which braid
// closures stay the same link, plus a bounded equivalence search that
// interleaves those moves with ordinary relation rewrites.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vsb/script.hpp"
#include "vsb/search.hpp"
#include "vsb/word.hpp"

namespace vsb {

enum class MarkovKind {
  ConjReal,          // sigma_i w <-> w sigma_i (sign picks the exponent)
  ConjVirtual,       // v_i w <-> w v_i
  CommuteSingular,   // tau_i w <-> w tau_i
  StabRealRight,     // w <-> embed_right(w) sigma_n^{sign}
  StabVirtualRight,  // w <-> embed_right(w) v_n
  DestabRight,       // removes a trailing v_n or sigma_n^{+-1}
  UnderThreadRight,  // w <-> embed_right(w) sigma_n^{-1} v_{n-1} sigma_n
  UnderThreadLeft,   // w <-> left_shift(w) sigma_1 v_2 sigma_1^{-1}
  RsThreadRight,     // trailing tau_n v_{n-1} sigma_n^{sign} <-> sigma_n^{sign} v_{n-1} tau_n
  RsThreadLeft,      // the same exchange with indices 1, 2 on left_shift form
};

enum class MarkovDirection { Forward, Inverse };

std::string markov_kind_name(MarkovKind k);
MarkovKind markov_kind_from_name(const std::string& name);
std::string markov_direction_name(MarkovDirection d);
MarkovDirection markov_direction_from_name(const std::string& name);

// One move instance. `sign` matters for ConjReal, StabRealRight and the
// RS threading moves; `index` names the transported generator for the
// conjugation and commuting moves. Other fields are ignored per kind.
struct MarkovMove {
  MarkovKind kind = MarkovKind::ConjVirtual;
  MarkovDirection direction = MarkovDirection::Forward;
  int sign = +1;
  int index = 1;
};

// i(w): every letter index incremented by one, one strand added (on the
// left, so strand 1 of the result is new and unused).
BraidWord left_shift(const BraidWord& w);

// The same letters read with one extra strand on the right.
BraidWord embed_right(const BraidWord& w);

// Applies one move to w. Forward conjugation transports a literal leading
// letter to the tail (Inverse the trailing letter to the head); the
// stabilizations append their letter after embedding; destabilization and
// the Inverse stabilizations require the trailing letter to be the only
// one touching the last strand. Throws domain_error when a precondition
// fails (wrong leading or trailing letters, index out of bounds).
BraidWord apply_markov(const BraidWord& w, const MarkovMove& move);

// One step of a Markov-equivalence trace: either a single relation
// rewrite (reusing the script step layout) or a single Markov move.
struct MarkovStep {
  bool is_markov = false;
  ScriptStep rel;    // meaningful when !is_markov
  MarkovMove move;   // meaningful when is_markov
};

struct MarkovTrace {
  BraidWord start;
  BraidWord end;
  std::vector<MarkovStep> steps;
};

struct MarkovCheckResult {
  bool valid = false;
  size_t failed_step = 0;  // steps.size() means endpoint mismatch
  std::string reason;
};

// Replays a trace step by step from trace.start; Valid iff every step
// applies and the final word equals trace.end exactly (letters and n).
MarkovCheckResult check_markov_trace(const MarkovTrace& trace);

// All words one Markov move or one relation rewrite away from w. Results
// are kept only while the strand count stays within caps.max_strands and
// the length within caps.max_word_length (either 0 means unlimited).
std::set<BraidWord> markov_neighbors(const BraidWord& w, const SearchBudget& caps);

struct MarkovEquivResult {
  bool equivalent = false;
  std::optional<MarkovTrace> trace;  // set iff equivalent
  size_t states_explored = 0;
  // set when a conserved quantity differs, so no budget could ever
  // succeed; reason names the quantity
  bool provably_inequivalent = false;
  std::string reason;
};

// max_word_length = max(|a|,|b|) + 6, max_states = 2e6, max_depth = 24,
// max_strands = max(a.n, b.n) + 2.
SearchBudget default_markov_budget(const BraidWord& a, const BraidWord& b);

// Bidirectional BFS over markov_neighbors. Equivalent answers carry a
// replayable trace from a to b; a negative answer is only "not found
// within budget" unless provably_inequivalent is set. Zero budget fields
// are filled from default_markov_budget.
MarkovEquivResult markov_equivalent_bounded(const BraidWord& a, const BraidWord& b,
                                            const SearchBudget& budget);

// JSON round trip. The envelope matches rewrite scripts, with each step
// tagged "relation" or "markov" and an extra end_n field because traces
// may change strand counts:
//   { "n": int, "end_n": int, "start": "<tokens>", "end": "<tokens>",
//     "steps": [ { "kind": "relation", "rel": ..., "params": [...],
//                  "pos": int, "dir": "L2R"|"R2L" }
//              | { "kind": "markov", "move": "<name>",
//                  "dir": "Forward"|"Inverse", "sign": int, "index": int } ] }
MarkovTrace markov_trace_from_json(const std::string& json_text);
std::string markov_trace_to_json(const MarkovTrace& trace);

}  // namespace vsb
