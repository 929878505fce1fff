// Specialized deterministic engines behind equivalent_bounded for the
// reduced presentation. Words over the reduced alphabet are searched in a
// quotient state space: maximal virtual runs become S_n elements (the
// virtual generators present S_n exactly), anchors sigma_1^{+-1}, tau_1
// separate them. Every quotient transition is backed by an explicit
// elementary derivation, so positive answers still return witness scripts
// over the reduced relation families.
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "vsb/relations.hpp"
#include "vsb/script.hpp"
#include "vsb/search.hpp"

namespace vsb {

// True iff rels is exactly relation-for-relation the named set for n.
bool is_reduced_set(const std::vector<Relation>& rels, int n);
bool is_virtual_reduced_set(const std::vector<Relation>& rels, int n);

// Oracle over the virtual-only reduced relations: equivalence is equality
// of permutation images; the witness is an explicit braid-move/involution
// path. Inputs must be all-virtual words (the dispatcher guarantees it).
EquivResult equivalent_bounded_virtual(const BraidWord& a, const BraidWord& b,
                                       const SearchBudget& budget);

// Oracle over the full reduced presentation via quotient-state search.
// Inputs must use the reduced alphabet {s1, S1, t1, v1..v_{n-1}} and
// 2 <= n <= 5 (the dispatcher guarantees both).
EquivResult equivalent_bounded_reduced(const BraidWord& a, const BraidWord& b,
                                       const SearchBudget& budget);

// True iff w uses only the reduced alphabet for its n.
bool is_reduced_alphabet(const BraidWord& w);

// Shared finite-symmetric-group tables for one strand count (2 <= n <= 6).
// Permutation ids are lexicographic ranks of one-line notation; id 0 is
// the identity. compose(a, b) applies a first, matching word order.
class PermCtx {
 public:
  explicit PermCtx(int n);
  static const PermCtx& get(int n);  // cached per n

  int n() const { return n_; }
  int count() const { return fact_; }
  uint16_t identity() const { return 0; }
  uint16_t gen(int i) const { return gen_[i]; }  // s_i, 1 <= i <= n-1
  uint16_t compose(uint16_t a, uint16_t b) const { return comp_[a * fact_ + b]; }
  uint16_t inverse(uint16_t a) const { return inv_[a]; }
  int len(uint16_t a) const { return len_[a]; }  // Coxeter length = inversion count
  const std::array<uint8_t, 6>& one_line(uint16_t a) const { return perms_[a]; }
  uint16_t of_letters(const std::vector<uint8_t>& w) const;  // word of generator indices
  // Lexicographically least reduced word (generator indices, 1-based).
  const std::vector<uint8_t>& canonical(uint16_t a) const { return canon_[a]; }
  // All factorizations a = rho * mu, ordered by len(rho)+len(mu) then rho.
  const std::vector<std::pair<uint16_t, uint16_t>>& splits(uint16_t a) const {
    return splits_[a];
  }

 private:
  int n_;
  int fact_;
  std::vector<std::array<uint8_t, 6>> perms_;
  std::vector<uint16_t> comp_;
  std::vector<uint16_t> inv_;
  std::vector<uint8_t> len_;
  std::vector<uint16_t> gen_;
  std::vector<std::vector<uint8_t>> canon_;
  std::vector<std::vector<std::pair<uint16_t, uint16_t>>> splits_;
};

// Emits elementary virtual-relation steps (VInvol/V3r/VFarComm) rewriting
// one all-virtual word into another with the same permutation image. The
// words live at `offset` inside some ambient word; step positions are
// global. Returns false if the permutations differ (no steps emitted).
bool virtual_path(int n, const std::vector<uint8_t>& from, const std::vector<uint8_t>& to,
                  size_t offset, std::vector<ScriptStep>& out);

}  // namespace vsb
