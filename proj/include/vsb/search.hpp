// Bounded equivalence oracle for the rewriting systems in this library:
// bidirectional breadth-first search returning a replayable witness script
// or an explicit within-budget failure. Never a completeness claim.
#pragma once

#include <cstddef>
#include <optional>

#include "vsb/relations.hpp"
#include "vsb/script.hpp"
#include "vsb/word.hpp"

namespace vsb {

struct SearchBudget {
  size_t max_word_length = 0;
  size_t max_states = 0;
  size_t max_depth = 0;
  size_t max_strands = 0;  // only the Markov search changes strand counts
};

// max_word_length = max(|a|,|b|) + 6, max_states = 2e6, max_depth = 24.
SearchBudget default_budget(const BraidWord& a, const BraidWord& b);

struct EquivResult {
  bool equivalent = false;
  std::optional<RewriteScript> witness;  // set iff equivalent
  size_t states_explored = 0;
};

// Bidirectional BFS between a and b over one-step rewrites from `rels`.
// Deterministic for a fixed budget and relation ordering. A positive
// answer carries a witness script replaying from a to b; a negative
// answer is only "not found within budget".
//
// Two relation sets get specialized deterministic engines with the same
// contract: the virtual-only reduced subset (segment words quotient onto
// S_n, so equivalence is permutation equality plus an explicit braid-move
// path) and the full reduced presentation (searched in a quotient state
// space; see quotient.hpp). Everything else runs the generic word search.
EquivResult equivalent_bounded(const BraidWord& a, const BraidWord& b,
                               const std::vector<Relation>& rels, const SearchBudget& budget);

// The generic word-level engine, exposed for tests.
EquivResult equivalent_bounded_generic(const BraidWord& a, const BraidWord& b,
                                       const std::vector<Relation>& rels,
                                       const SearchBudget& budget);

}  // namespace vsb
