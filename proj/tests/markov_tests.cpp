// tests for the Markov move calculus and its bounded equivalence search
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vsb/diagram.hpp"
#include "vsb/markov.hpp"
#include "vsb/prng.hpp"
#include "vsb/relations.hpp"
#include "vsb/word.hpp"

#include <string>
#include <vector>

using namespace vsb;

namespace {

BraidWord W(int n, const std::string& text) { return parse_word(text, n); }

MarkovMove move(MarkovKind kind, MarkovDirection dir = MarkovDirection::Forward,
                int sign = +1, int index = 1) {
  return MarkovMove{kind, dir, sign, index};
}

BraidWord random_word(SplitMix64& rng, int n, int len) {
  BraidWord w;
  w.n = n;
  for (int k = 0; k < len; ++k) {
    int i = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(n - 1)));
    switch (rng.next_below(4)) {
      case 0: w.letters.push_back(sigma(i)); break;
      case 1: w.letters.push_back(sigma_inv(i)); break;
      case 2: w.letters.push_back(tau(i)); break;
      default: w.letters.push_back(virt(i)); break;
    }
  }
  return w;
}

// checks the quantities every move must conserve, plus the exact effect
// each move may have on the signed real-crossing sum
void check_conservation(const BraidWord& before, const BraidWord& after, int expected_sigma_delta) {
  CHECK(tau_count(after) == tau_count(before));
  CHECK(closure_component_count(after) == closure_component_count(before));
  CHECK(sigma_exponent_sum(after) - sigma_exponent_sum(before) == expected_sigma_delta);
}

}  // namespace

TEST_CASE("left_shift adds an identity strand on the left") {
  CHECK(left_shift(W(2, "s1")) == W(3, "s2"));
  CHECK(left_shift(W(1, "1")) == W(2, "1"));
  CHECK(left_shift(W(3, "t1 v2")) == W(4, "t2 v3"));
}

TEST_CASE("embed_right widens without touching letters") {
  CHECK(embed_right(W(2, "s1")) == W(3, "s1"));
  CHECK(embed_right(W(3, "1")) == W(4, "1"));
}

TEST_CASE("left_shift and embed_right commute") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(3));
    BraidWord w = random_word(rng, n, static_cast<int>(rng.next_below(8)));
    CHECK(left_shift(embed_right(w)) == embed_right(left_shift(w)));
  }
}

TEST_CASE("conjugation transports a literal leading letter to the tail") {
  CHECK(apply_markov(W(2, "v1 s1"), move(MarkovKind::ConjVirtual)) == W(2, "s1 v1"));
  CHECK(apply_markov(W(2, "s1 v1"), move(MarkovKind::ConjReal)) == W(2, "v1 s1"));
  CHECK(apply_markov(W(2, "t1 v1"), move(MarkovKind::CommuteSingular)) == W(2, "v1 t1"));
  // inverse direction moves a trailing letter to the head
  CHECK(apply_markov(W(2, "s1 v1"), move(MarkovKind::ConjVirtual, MarkovDirection::Inverse)) ==
        W(2, "v1 s1"));
  CHECK(apply_markov(W(3, "v2 S1"), move(MarkovKind::ConjReal, MarkovDirection::Inverse, -1)) ==
        W(3, "S1 v2"));

  CHECK_THROWS_AS(apply_markov(W(2, "v1 s1"), move(MarkovKind::ConjReal)), domain_error);
  CHECK_THROWS_AS(apply_markov(W(2, "1"), move(MarkovKind::ConjVirtual)), domain_error);
  CHECK_THROWS_AS(apply_markov(W(2, "s1"), move(MarkovKind::ConjReal, MarkovDirection::Forward,
                                                +1, 5)),
                  domain_error);
}

TEST_CASE("stabilizations append one letter on a fresh strand") {
  CHECK(apply_markov(W(2, "s1"), move(MarkovKind::StabVirtualRight)) == W(3, "s1 v2"));
  CHECK(apply_markov(W(2, "s1"), move(MarkovKind::StabRealRight)) == W(3, "s1 s2"));
  CHECK(apply_markov(W(2, "s1"), move(MarkovKind::StabRealRight, MarkovDirection::Forward, -1)) ==
        W(3, "s1 S2"));

  CHECK(apply_markov(W(3, "s1 v2"), move(MarkovKind::StabVirtualRight, MarkovDirection::Inverse)) ==
        W(2, "s1"));
  CHECK(apply_markov(W(3, "s1 S2"),
                     move(MarkovKind::StabRealRight, MarkovDirection::Inverse, -1)) == W(2, "s1"));
  // the removed letter must be the only one touching the last strand
  CHECK_THROWS_AS(apply_markov(W(3, "s2 v2"),
                               move(MarkovKind::StabVirtualRight, MarkovDirection::Inverse)),
                  domain_error);
  CHECK_THROWS_AS(apply_markov(W(3, "s1 v2"),
                               move(MarkovKind::StabRealRight, MarkovDirection::Inverse)),
                  domain_error);
}

TEST_CASE("destabilization strips a trailing letter of either removable kind") {
  CHECK(apply_markov(W(3, "s1 v2"), move(MarkovKind::DestabRight)) == W(2, "s1"));
  CHECK(apply_markov(W(3, "s1 s2"), move(MarkovKind::DestabRight)) == W(2, "s1"));
  CHECK(apply_markov(W(3, "s1 S2"), move(MarkovKind::DestabRight)) == W(2, "s1"));
  CHECK_THROWS_AS(apply_markov(W(3, "s1 t2"), move(MarkovKind::DestabRight)), domain_error);
  CHECK_THROWS_AS(apply_markov(W(3, "s2 v2"), move(MarkovKind::DestabRight)), domain_error);
  CHECK_THROWS_AS(apply_markov(W(2, "s1"), move(MarkovKind::DestabRight, MarkovDirection::Inverse)),
                  domain_error);
}

TEST_CASE("under threading appends the exact three-letter thread") {
  CHECK(apply_markov(W(2, "s1"), move(MarkovKind::UnderThreadRight)) == W(3, "s1 S2 v1 s2"));
  CHECK(apply_markov(W(2, "s1"), move(MarkovKind::UnderThreadLeft)) == W(3, "s2 s1 v2 S1"));

  CHECK(apply_markov(W(3, "s1 S2 v1 s2"),
                     move(MarkovKind::UnderThreadRight, MarkovDirection::Inverse)) == W(2, "s1"));
  CHECK(apply_markov(W(3, "s2 s1 v2 S1"),
                     move(MarkovKind::UnderThreadLeft, MarkovDirection::Inverse)) == W(2, "s1"));

  CHECK_THROWS_AS(apply_markov(W(3, "s1 s2 v1 s2"),
                               move(MarkovKind::UnderThreadRight, MarkovDirection::Inverse)),
                  domain_error);
  CHECK_THROWS_AS(apply_markov(W(1, "1"), move(MarkovKind::UnderThreadRight)), domain_error);
}

TEST_CASE("rs threading exchanges the singular and real thread tails") {
  CHECK(apply_markov(W(3, "s1 t2 v1 s2"), move(MarkovKind::RsThreadRight)) ==
        W(3, "s1 s2 v1 t2"));
  CHECK(apply_markov(W(3, "s1 s2 v1 t2"),
                     move(MarkovKind::RsThreadRight, MarkovDirection::Inverse)) ==
        W(3, "s1 t2 v1 s2"));
  CHECK(apply_markov(W(3, "s2 t1 v2 S1"),
                     move(MarkovKind::RsThreadLeft, MarkovDirection::Forward, -1)) ==
        W(3, "s2 S1 v2 t1"));

  CHECK_THROWS_AS(apply_markov(W(3, "s1 t2 v1 s2"),
                               move(MarkovKind::RsThreadRight, MarkovDirection::Forward, -1)),
                  domain_error);
  CHECK_THROWS_AS(apply_markov(W(3, "s2 t2 v1 s2"), move(MarkovKind::RsThreadRight)),
                  domain_error);
  CHECK_THROWS_AS(apply_markov(W(2, "t1"), move(MarkovKind::RsThreadRight)), domain_error);
}

TEST_CASE("every move conserves tau count and closure components") {
  SplitMix64 rng(505);
  int applications = 0;
  for (int trial = 0; trial < 520; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(4));
    int len = 1 + static_cast<int>(rng.next_below(12));
    BraidWord w = random_word(rng, n, len);

    // conjugation of the actual first and last letters
    for (MarkovDirection dir : {MarkovDirection::Forward, MarkovDirection::Inverse}) {
      const Letter& l = dir == MarkovDirection::Forward ? w.letters.front() : w.letters.back();
      MarkovKind kind = l.kind == LetterKind::Singular ? MarkovKind::CommuteSingular
                        : l.kind == LetterKind::Virtual ? MarkovKind::ConjVirtual
                                                        : MarkovKind::ConjReal;
      int sign = l.kind == LetterKind::RealNeg ? -1 : +1;
      BraidWord out = apply_markov(w, move(kind, dir, sign, l.index));
      check_conservation(w, out, 0);
      CHECK(apply_markov(out, move(kind, dir == MarkovDirection::Forward
                                             ? MarkovDirection::Inverse
                                             : MarkovDirection::Forward,
                                   sign, l.index)) == w);
      ++applications;
    }

    // stabilizations, their inverses, and destabilization
    for (int sign : {+1, -1}) {
      BraidWord up = apply_markov(w, move(MarkovKind::StabRealRight, MarkovDirection::Forward, sign));
      check_conservation(w, up, sign);
      BraidWord down =
          apply_markov(up, move(MarkovKind::StabRealRight, MarkovDirection::Inverse, sign));
      CHECK(down == w);
      check_conservation(up, down, -sign);
      CHECK(apply_markov(up, move(MarkovKind::DestabRight)) == w);
      ++applications;
    }
    {
      BraidWord up = apply_markov(w, move(MarkovKind::StabVirtualRight));
      check_conservation(w, up, 0);
      CHECK(apply_markov(up, move(MarkovKind::StabVirtualRight, MarkovDirection::Inverse)) == w);
      CHECK(apply_markov(up, move(MarkovKind::DestabRight)) == w);
      ++applications;
    }

    // threading moves and their inverses
    for (MarkovKind kind : {MarkovKind::UnderThreadRight, MarkovKind::UnderThreadLeft}) {
      BraidWord out = apply_markov(w, move(kind));
      check_conservation(w, out, 0);
      CHECK(apply_markov(out, move(kind, MarkovDirection::Inverse)) == w);
      ++applications;
    }
    for (int sign : {+1, -1}) {
      BraidWord tail = embed_right(w);
      tail.letters.push_back(tau(w.n));
      tail.letters.push_back(virt(w.n - 1));
      tail.letters.push_back(sign > 0 ? sigma(w.n) : sigma_inv(w.n));
      BraidWord out = apply_markov(tail, move(MarkovKind::RsThreadRight, MarkovDirection::Forward, sign));
      check_conservation(tail, out, 0);
      CHECK(apply_markov(out, move(MarkovKind::RsThreadRight, MarkovDirection::Inverse, sign)) ==
            tail);

      BraidWord ltail = left_shift(w);
      ltail.letters.push_back(tau(1));
      ltail.letters.push_back(virt(2));
      ltail.letters.push_back(sign > 0 ? sigma(1) : sigma_inv(1));
      BraidWord lout =
          apply_markov(ltail, move(MarkovKind::RsThreadLeft, MarkovDirection::Forward, sign));
      check_conservation(ltail, lout, 0);
      CHECK(apply_markov(lout, move(MarkovKind::RsThreadLeft, MarkovDirection::Inverse, sign)) ==
            ltail);
      ++applications;
    }
  }
  CHECK(applications >= 500);
}

TEST_CASE("markov neighbors of the empty word are the three stabilizations") {
  SearchBudget caps{8, 0, 0, 3};
  std::set<BraidWord> nb = markov_neighbors(W(1, "1"), caps);
  CHECK(nb.size() == 3);
  CHECK(nb.count(W(2, "v1")) == 1);
  CHECK(nb.count(W(2, "s1")) == 1);
  CHECK(nb.count(W(2, "S1")) == 1);
}

TEST_CASE("markov neighbors include destabilizations and relation rewrites") {
  SearchBudget caps{9, 0, 0, 5};
  std::set<BraidWord> nb = markov_neighbors(W(3, "s1 v2"), caps);
  CHECK(nb.count(W(2, "s1")) == 1);

  BraidWord w = W(2, "s1 S1 t1");
  std::set<BraidWord> mnb = markov_neighbors(w, caps);
  for (const BraidWord& r : neighbors(w, relation_set(2), caps.max_word_length))
    CHECK(mnb.count(r) == 1);
  CHECK(mnb.count(W(2, "t1")) == 1);
}

TEST_CASE("markov search links a word to its destabilized form") {
  MarkovEquivResult r =
      markov_equivalent_bounded(W(2, "s1"), W(1, "1"), SearchBudget{});
  REQUIRE(r.equivalent);
  REQUIRE(r.trace.has_value());
  MarkovCheckResult check = check_markov_trace(*r.trace);
  CHECK(check.valid);
  CHECK(r.trace->start == W(2, "s1"));
  CHECK(r.trace->end == W(1, "1"));
}

TEST_CASE("markov search finds singular commuting") {
  MarkovEquivResult r =
      markov_equivalent_bounded(W(2, "t1 v1"), W(2, "v1 t1"), SearchBudget{});
  REQUIRE(r.equivalent);
  CHECK(check_markov_trace(*r.trace).valid);
}

TEST_CASE("tau count prefilter reports permanent inequivalence") {
  MarkovEquivResult r = markov_equivalent_bounded(W(2, "t1"), W(1, "1"), SearchBudget{});
  CHECK_FALSE(r.equivalent);
  CHECK(r.provably_inequivalent);
  CHECK(r.reason.find("tau") != std::string::npos);
}

TEST_CASE("component count prefilter reports permanent inequivalence") {
  MarkovEquivResult r = markov_equivalent_bounded(W(2, "1"), W(1, "1"), SearchBudget{});
  CHECK_FALSE(r.equivalent);
  CHECK(r.provably_inequivalent);
  CHECK(r.reason.find("component") != std::string::npos);
}

TEST_CASE("markov equivalence preserves closure components and singular count") {
  // the conserved diagram quantities; real and virtual crossing counts can
  // legitimately change across stabilizations
  std::vector<std::pair<BraidWord, BraidWord>> pairs = {
      {W(2, "s1"), W(1, "1")},
      {W(2, "t1 v1"), W(2, "v1 t1")},
      {W(2, "s1 s1"), W(3, "s1 s1 v2")},
  };
  for (const auto& [a, b] : pairs) {
    MarkovEquivResult r = markov_equivalent_bounded(a, b, SearchBudget{});
    REQUIRE(r.equivalent);
    DiagramInvariants ia = invariants(close(a));
    DiagramInvariants ib = invariants(close(b));
    CHECK(ia.component_count == ib.component_count);
    CHECK(ia.singular == ib.singular);
  }
}

TEST_CASE("markov traces survive a JSON round trip") {
  MarkovEquivResult r =
      markov_equivalent_bounded(W(2, "s1 S1 t1"), W(2, "t1"), SearchBudget{});
  REQUIRE(r.equivalent);
  std::string text = markov_trace_to_json(*r.trace);
  MarkovTrace back = markov_trace_from_json(text);
  CHECK(back.start == r.trace->start);
  CHECK(back.end == r.trace->end);
  CHECK(back.steps.size() == r.trace->steps.size());
  CHECK(check_markov_trace(back).valid);
  CHECK(markov_trace_to_json(back) == text);
}

TEST_CASE("markov trace JSON parsing rejects malformed input") {
  CHECK_THROWS_AS(markov_trace_from_json("nope"), domain_error);
  CHECK_THROWS_AS(markov_trace_from_json("{}"), domain_error);
  CHECK_THROWS_AS(markov_trace_from_json(
                      R"({"n":2,"end_n":2,"start":"s1","end":"s1","steps":[{"kind":"mystery"}]})"),
                  domain_error);
  CHECK_THROWS_AS(markov_trace_from_json(
                      R"({"n":2,"end_n":2,"start":"s1","end":"s1","steps":[{"kind":"markov"}]})"),
                  domain_error);
}

TEST_CASE("markov search stays deterministic") {
  MarkovEquivResult r1 =
      markov_equivalent_bounded(W(2, "s1"), W(1, "1"), SearchBudget{});
  MarkovEquivResult r2 =
      markov_equivalent_bounded(W(2, "s1"), W(1, "1"), SearchBudget{});
  REQUIRE(r1.equivalent);
  REQUIRE(r2.equivalent);
  CHECK(markov_trace_to_json(*r1.trace) == markov_trace_to_json(*r2.trace));
  CHECK(r1.states_explored == r2.states_explored);
}
