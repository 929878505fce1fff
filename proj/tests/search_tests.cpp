// Bounded equivalence search: the generic word engine, the all-virtual
// oracle, and the reduced-presentation quotient engine. Every positive
// answer must come with a witness script that replays.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vsb/quotient.hpp"
#include "vsb/relations.hpp"
#include "vsb/script.hpp"
#include "vsb/search.hpp"
#include "vsb/word.hpp"

using namespace vsb;

namespace {
BraidWord W(int n, const std::string& text) { return parse_word(text, n); }

void require_witness(const EquivResult& r, const BraidWord& a, const BraidWord& b,
                     const std::vector<Relation>& rels) {
  REQUIRE(r.equivalent);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->start == a);
  CHECK(r.witness->end == b);
  CheckResult c = check_rewrite_script(*r.witness, rels);
  if (!c.valid) {
    CAPTURE(c.failed_step);
    CAPTURE(c.reason);
  }
  CHECK(c.valid);
}
}  // namespace

TEST_CASE("generic search finds one-step equivalences") {
  auto rels2 = relation_set(2);
  auto a = W(2, "s1 S1");
  auto b = W(2, "1");
  auto r = equivalent_bounded(a, b, rels2, default_budget(a, b));
  require_witness(r, a, b, rels2);
  CHECK(r.witness->steps.size() == 1);

  auto rels3 = relation_set(3);
  a = W(3, "s1 s2 s1");
  b = W(3, "s2 s1 s2");
  r = equivalent_bounded(a, b, rels3, default_budget(a, b));
  require_witness(r, a, b, rels3);
  CHECK(r.witness->steps.size() == 1);

  a = W(3, "t1 s2 s1");
  b = W(3, "s2 s1 t2");
  r = equivalent_bounded(a, b, rels3, default_budget(a, b));
  require_witness(r, a, b, rels3);
  CHECK(r.witness->steps.size() == 1);
}

TEST_CASE("generic search respects invariant prefilters") {
  auto rels = relation_set(2);
  auto r = equivalent_bounded(W(2, "t1"), W(2, "1"), rels, SearchBudget{8, 1000, 8});
  CHECK_FALSE(r.equivalent);
  CHECK(r.states_explored == 0);  // tau counts differ, conclusively unequal
}

TEST_CASE("forbidden virtual slides are not found within budget") {
  auto rels = relation_set(3);
  auto a = W(3, "v1 s2 s1");
  auto b = W(3, "s2 s1 v2");
  CHECK(permutation_image(a) == permutation_image(b));
  CHECK(tau_count(a) == tau_count(b));
  CHECK(sigma_exponent_sum(a) == sigma_exponent_sum(b));
  auto r = equivalent_bounded(a, b, rels, SearchBudget{9, 1'000'000, 24});
  CHECK_FALSE(r.equivalent);
  CHECK(r.states_explored > 2);  // the search genuinely ran

  auto a2 = W(3, "v1 t2 t1");
  auto b2 = W(3, "t2 t1 v2");
  auto r2 = equivalent_bounded(a2, b2, rels, SearchBudget{9, 1'000'000, 24});
  CHECK_FALSE(r2.equivalent);
}

TEST_CASE("multi-step generic derivation") {
  auto rels = relation_set(3);
  auto a = W(3, "s2 s1 s2 t2");
  auto b = W(3, "t1 s2 s1 s2");
  auto r = equivalent_bounded(a, b, rels, default_budget(a, b));
  require_witness(r, a, b, rels);
  CHECK(r.witness->steps.size() >= 2);
}

TEST_CASE("virtual oracle connects braid-equivalent spellings") {
  auto vrels = virtual_reduced_relation_set(4);
  auto a = W(4, "v1 v2 v1");
  auto b = W(4, "v2 v1 v2");
  auto r = equivalent_bounded(a, b, vrels, default_budget(a, b));
  require_witness(r, a, b, vrels);

  a = W(4, "v1 v3");
  b = W(4, "v3 v1");
  r = equivalent_bounded(a, b, vrels, default_budget(a, b));
  require_witness(r, a, b, vrels);

  a = W(4, "v1 v1 v2");
  b = W(4, "v2");
  r = equivalent_bounded(a, b, vrels, default_budget(a, b));
  require_witness(r, a, b, vrels);

  a = W(4, "v1 v2");
  b = W(4, "v2 v1");
  r = equivalent_bounded(a, b, vrels, default_budget(a, b));
  CHECK_FALSE(r.equivalent);  // different permutation images

  a = W(4, "v1 v2 v3 v1 v2 v1");
  b = W(4, "v3 v2 v3 v1 v2 v3");
  r = equivalent_bounded(a, b, vrels, default_budget(a, b));
  require_witness(r, a, b, vrels);
}

TEST_CASE("quotient engine handles base relations and their conjugates") {
  auto rels = reduced_relation_set(3);
  auto a = W(3, "s1 t1");
  auto b = W(3, "t1 s1");
  auto r = equivalent_bounded(a, b, rels, default_budget(a, b));
  require_witness(r, a, b, rels);

  a = W(3, "s1 S1");
  b = W(3, "1");
  r = equivalent_bounded(a, b, rels, default_budget(a, b));
  require_witness(r, a, b, rels);

  a = W(3, "s1 v1 v2 s1 v2 v1 s1");
  b = W(3, "v1 v2 s1 v2 v1 s1 v1 v2 s1 v2 v1");
  r = equivalent_bounded(a, b, rels, default_budget(a, b));
  require_witness(r, a, b, rels);

  a = W(3, "t1 v1 v2 s1 v2 v1 s1");
  b = W(3, "v1 v2 s1 v2 v1 s1 v1 v2 t1 v2 v1");
  r = equivalent_bounded(a, b, rels, default_budget(a, b));
  require_witness(r, a, b, rels);
}

TEST_CASE("quotient engine respells virtual context around anchors") {
  auto rels = reduced_relation_set(4);
  // Same words up to virtual respelling on both sides of the anchor.
  auto a = W(4, "v1 v3 s1 v2 v2");
  auto b = W(4, "v3 v1 s1");
  auto r = equivalent_bounded(a, b, rels, default_budget(a, b));
  require_witness(r, a, b, rels);

  // Far commutation through the distant-strand conjugate, one quotient move.
  a = W(4, "s1 v2 v3 v1 v2 s1 v2 v1 v3 v2");
  b = W(4, "v2 v3 v1 v2 s1 v2 v1 v3 v2 s1");
  r = equivalent_bounded(a, b, rels, default_budget(a, b));
  require_witness(r, a, b, rels);

  a = W(4, "t1 v2 v3 v1 v2 t1 v2 v1 v3 v2");
  b = W(4, "v2 v3 v1 v2 t1 v2 v1 v3 v2 t1");
  r = equivalent_bounded(a, b, rels, default_budget(a, b));
  require_witness(r, a, b, rels);
}

TEST_CASE("quotient engine returns not-found under tight budgets") {
  auto rels = reduced_relation_set(3);
  auto a = W(3, "s1 v1 v2 s1 v2 v1 s1");
  auto b = W(3, "v1 v2 s1 v2 v1 s1 v1 v2 s1 v2 v1");
  // Both endpoints exceed the length cap, so every candidate is pruned.
  auto r = equivalent_bounded(a, b, rels, SearchBudget{6, 100000, 24});
  CHECK_FALSE(r.equivalent);
  // With room to work the same pair connects.
  auto ok = equivalent_bounded(a, b, rels, SearchBudget{11, 100000, 24});
  CHECK(ok.equivalent);
}

TEST_CASE("non-reduced alphabets fall back to the generic engine") {
  auto rels = reduced_relation_set(4);
  auto a = W(4, "s2 v1");
  auto r = equivalent_bounded(a, a, rels, default_budget(a, a));
  REQUIRE(r.equivalent);
  CHECK(r.witness->steps.empty());
}
