// The reduced generating set: the expansion homomorphism that rewrites
// every generator into the index-1 core conjugated by virtual staircases,
// plus bounded oracles and bundled derivations for the identities that
// recover the defining presentation from the reduced one.
#pragma once

#include <string>
#include <vector>

#include "vsb/relations.hpp"
#include "vsb/script.hpp"
#include "vsb/search.hpp"
#include "vsb/word.hpp"

namespace vsb {

// Single-pass substitution; index-1 letters and virtual letters are kept:
//   sigma_{i+1}^e -> (v_i..v_1)(v_{i+1}..v_2) sigma_1^e (v_2..v_{i+1})(v_1..v_i)
//   tau_{i+1}     -> (v_i..v_1)(v_{i+1}..v_2) tau_1     (v_2..v_{i+1})(v_1..v_i)
BraidWord expand_to_reduced(const BraidWord& w);

// The staircase v_from v_(from+-1) ... v_to ... v_from walking towards `to`
// and back, one letter per index.
BraidWord shift_identity_side(int from, int to, int n);

// The pure-virtual shift identity for |i-j| >= 2: the staircase from i over
// j equals the staircase from j over i. Decided through the bounded
// equivalence oracle over the virtual-only reduced relations; a positive
// answer carries a replayable witness.
EquivResult verify_shift_identity(int i, int j, int n, const SearchBudget& budget);

// Catalogued identities 1..8 checked against the reduced presentation.
// Each identity relates two words over the defining alphabet; verification
// expands both sides and either replays a bundled derivation (Script) or
// runs the bounded equivalence search (Search).
//   1 (i,j) |i-j|>=2   staircase over i,j = staircase over j,i
//   2 (i,j) |i-j|>1    sigma_i v_j = v_j sigma_i   (variant "sigma"/"tau")
//   3 (i,j) |i-j|>1    far commutation; variant "sigma-sigma"/"tau-tau"/
//                      "sigma-tau" (the last: sigma_i tau_j = tau_j sigma_i)
//   4 (i,j) |i-j|=1    sigma_i sigma_j sigma_i = sigma_j sigma_i sigma_j
//   5 (i,j) |i-j|=1    sigma_j sigma_i tau_j = tau_i sigma_j sigma_i
//   6 (i)              sigma_i sigma_i^{-1} = 1 and sigma_i^{-1} sigma_i = 1
//   7 (i)              tau_i sigma_i = sigma_i tau_i
//   8 (i,j) |i-j|=1    v_i g_j v_i = v_j g_i v_j   (variant "sigma"/"tau")
enum class LemmaMode { Script, Search };

struct LemmaResult {
  bool verified = false;
  std::string detail;  // replay/search summary, or the failure reason
};

// The two sides of the catalogued identity, as words in VSB_n. Throws
// domain_error on an unknown identity number, a bad variant, an index
// count mismatch, indices out of 1..n-1, or a violated side condition.
std::pair<BraidWord, BraidWord> lemma_sides(int lemma, const std::vector<int>& indices,
                                            const std::string& variant, int n);

// Basename of the bundled derivation for one catalogue instance,
// e.g. lemma2_tau_3_1.json (variant dashes become underscores).
std::string lemma_script_filename(int lemma, const std::vector<int>& indices,
                                  const std::string& variant);

// Script mode: loads scripts_dir/<filename>, requires script.n <= n, the
// endpoints to equal the expansions of the two sides, and a valid replay
// against the reduced relations. Search mode: runs equivalent_bounded over
// reduced_relation_set(n) on the expanded sides (identity 6 checks both
// cancellation orders). Precondition failures throw; a missing or invalid
// bundled script is reported as an unverified result, not an exception.
LemmaResult verify_lemma(int lemma, const std::vector<int>& indices,
                         const std::string& variant, int n, LemmaMode mode,
                         const SearchBudget& budget, const std::string& scripts_dir);

// One verifiable catalogue instance. mode is Script iff a bundled
// derivation ships for it; the rest are settled by short searches.
struct LemmaInstance {
  int lemma = 1;
  std::vector<int> indices;
  std::string variant;  // "" when the identity has no variant
  LemmaMode mode = LemmaMode::Script;
};

// Every catalogued instance, ordered by identity number, then variant,
// then index tuple. An instance needs strand count >= max(indices) + 1.
// Identity 5 lists only the two derivable index orders: the other two
// are not consequences of the reduced relations (see the obstruction
// tests for the separating invariant).
const std::vector<LemmaInstance>& lemma_catalogue();

}  // namespace vsb
