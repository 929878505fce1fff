// tests for Morse diagrams: validation, closure, invariants, braiding
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vsb/diagram.hpp"
#include "vsb/prng.hpp"
#include "vsb/word.hpp"

#include <string>
#include <vector>

using namespace vsb;

namespace {

MorseEvent cup(int pos, CupOrientation o = CupOrientation::CCW) {
  return MorseEvent{EventKind::Cup, pos, o};
}
MorseEvent cap(int pos) { return MorseEvent{EventKind::Cap, pos, CupOrientation::CCW}; }
MorseEvent cross(EventKind k, int pos) { return MorseEvent{k, pos, CupOrientation::CCW}; }

BraidWord W(int n, const std::string& text) { return parse_word(text, n); }

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

}  // namespace

TEST_CASE("validate accepts the smallest closed diagram") {
  MorseDiagram d{{cup(1), cap(1)}};
  ValidateResult r = validate(d);
  CHECK(r.valid);
}

TEST_CASE("validate rejects a cap with nothing to join") {
  MorseDiagram d{{cap(1)}};
  ValidateResult r = validate(d);
  CHECK_FALSE(r.valid);
  CHECK(r.row == 0);
  CHECK(r.reason == "cap with no live strands");
}

TEST_CASE("validate rejects an unclosed diagram at the end row") {
  MorseDiagram d{{cup(1)}};
  ValidateResult r = validate(d);
  CHECK_FALSE(r.valid);
  CHECK(r.row == 1);
  CHECK(r.reason == "diagram not closed");
}

TEST_CASE("validate rejects out of range events") {
  {
    MorseDiagram d{{cup(2)}};
    ValidateResult r = validate(d);
    CHECK_FALSE(r.valid);
    CHECK(r.row == 0);
    CHECK(r.reason == "cup position out of range");
  }
  {
    MorseDiagram d{{cup(1), cap(2)}};
    ValidateResult r = validate(d);
    CHECK_FALSE(r.valid);
    CHECK(r.row == 1);
    CHECK(r.reason == "cap exceeds live strands");
  }
  {
    MorseDiagram d{{cup(1), cross(EventKind::CrossRealPos, 2), cap(1)}};
    ValidateResult r = validate(d);
    CHECK_FALSE(r.valid);
    CHECK(r.row == 1);
    CHECK(r.reason == "crossing exceeds live strands");
  }
  {
    MorseDiagram d{{cup(0)}};
    ValidateResult r = validate(d);
    CHECK_FALSE(r.valid);
    CHECK(r.row == 0);
    CHECK(r.reason == "position must be at least 1");
  }
}

TEST_CASE("validate traces strand directions through crossings") {
  // two nested cups, a virtual crossing, and a cap that would join two
  // strands both directed downward
  MorseDiagram d{{cup(1), cup(1), cross(EventKind::CrossVirtual, 2), cap(1), cap(1)}};
  ValidateResult r = validate(d);
  CHECK_FALSE(r.valid);
  CHECK(r.row == 3);
  CHECK(r.reason == "cap joins two strands with the same vertical direction");

  // same shape but the crossing at position 1 keeps directions compatible
  MorseDiagram ok{{cup(1), cup(1), cross(EventKind::CrossVirtual, 1), cap(1), cap(1)}};
  CHECK(validate(ok).valid);
}

TEST_CASE("close of the empty word is a single cup and cap") {
  MorseDiagram d = close(W(1, "1"));
  REQUIRE(d.events.size() == 2);
  CHECK(d.events[0] == cup(1));
  CHECK(d.events[1] == cap(1));
}

TEST_CASE("closure invariants match the word counts") {
  {
    DiagramInvariants inv = invariants(close(W(2, "s1 s1")));
    CHECK(inv.component_count == 2);
    CHECK(inv.real_pos == 2);
    CHECK(inv.real_neg == 0);
    CHECK(inv.singular == 0);
    CHECK(inv.virtual_count == 0);
  }
  {
    DiagramInvariants inv = invariants(close(W(2, "t1 v1")));
    CHECK(inv.component_count == 2);
    CHECK(inv.singular == 1);
    CHECK(inv.virtual_count == 1);
    CHECK(inv.real_pos == 0);
    CHECK(inv.real_neg == 0);
  }
  {
    DiagramInvariants inv = invariants(close(W(2, "s1")));
    CHECK(inv.component_count == 1);
    CHECK(inv.real_pos == 1);
  }
}

TEST_CASE("closure components agree with the permutation cycle count") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(4));
    int len = static_cast<int>(rng.next_below(10));
    BraidWord w = random_word(rng, n, len);
    MorseDiagram d = close(w);
    CHECK(validate(d).valid);
    DiagramInvariants inv = invariants(d);
    CHECK(inv.component_count == closure_component_count(w));
    int virtuals = 0;
    for (const Letter& l : w.letters)
      if (l.kind == LetterKind::Virtual) ++virtuals;
    CHECK(inv.virtual_count == virtuals);
  }
}

TEST_CASE("invariants refuses invalid diagrams") {
  CHECK_THROWS_AS(invariants(MorseDiagram{{cap(1)}}), domain_error);
  CHECK_THROWS_AS(invariants(MorseDiagram{{cup(1)}}), domain_error);
}

TEST_CASE("braiding the trivial closed diagram gives the empty word") {
  BraidWord w = braid(MorseDiagram{{cup(1), cap(1)}});
  CHECK(w.n == 1);
  CHECK(w.letters.empty());

  // same for the clockwise cup
  BraidWord v = braid(MorseDiagram{{cup(1, CupOrientation::CW), cap(1)}});
  CHECK(v.n == 1);
  CHECK(v.letters.empty());
}

TEST_CASE("braiding a braid closure of one letter returns it unchanged") {
  for (const std::string& text : {"s1", "S1", "t1", "v1"}) {
    BraidWord w = W(2, text);
    BraidWord b = braid(close(w));
    CHECK(b == w);
  }
}

TEST_CASE("braid refuses invalid diagrams") {
  CHECK_THROWS_AS(braid(MorseDiagram{{cup(1)}}), domain_error);
}

TEST_CASE("braiding preserves crossing counts and components on curls") {
  // a single cup whose legs cross before the cap, so the crossing involves
  // one upward strand
  for (EventKind k : {EventKind::CrossRealPos, EventKind::CrossRealNeg,
                      EventKind::CrossSingular, EventKind::CrossVirtual}) {
    MorseDiagram d{{cup(1), cross(k, 1), cap(1)}};
    REQUIRE(validate(d).valid);
    DiagramInvariants before = invariants(d);
    BraidWord b = braid(d);
    DiagramInvariants after = invariants(close(b));
    CHECK(after.real_pos == before.real_pos);
    CHECK(after.real_neg == before.real_neg);
    CHECK(after.singular == before.singular);
    CHECK(after.component_count == before.component_count);
    CHECK(after.virtual_count >= before.virtual_count);
  }
}

TEST_CASE("braiding handles a crossing between two upward strands") {
  MorseDiagram d{{cup(1, CupOrientation::CW), cup(1), cross(EventKind::CrossSingular, 2),
                  cap(1), cap(1)}};
  REQUIRE(validate(d).valid);
  DiagramInvariants before = invariants(d);
  CHECK(before.singular == 1);
  CHECK(before.component_count == 1);
  BraidWord b = braid(d);
  DiagramInvariants after = invariants(close(b));
  CHECK(after.singular == 1);
  CHECK(after.real_pos == 0);
  CHECK(after.real_neg == 0);
  CHECK(after.component_count == 1);
  CHECK(after.virtual_count >= before.virtual_count);
}

TEST_CASE("braiding round trip preserves closure invariants") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(3));
    int len = static_cast<int>(rng.next_below(9));
    BraidWord w = random_word(rng, n, len);
    MorseDiagram d = close(w);
    DiagramInvariants before = invariants(d);
    BraidWord b = braid(d);
    DiagramInvariants after = invariants(close(b));
    CHECK(after.real_pos == before.real_pos);
    CHECK(after.real_neg == before.real_neg);
    CHECK(after.singular == before.singular);
    CHECK(after.component_count == before.component_count);
    CHECK(after.virtual_count >= before.virtual_count);
  }
}

TEST_CASE("diagram JSON round trips") {
  MorseDiagram d{{cup(1), cup(2, CupOrientation::CW), cross(EventKind::CrossRealNeg, 2),
                  cross(EventKind::CrossVirtual, 1), cap(2), cap(1)}};
  std::string text = diagram_to_json(d);
  MorseDiagram back = diagram_from_json(text);
  CHECK(back == d);
}

TEST_CASE("diagram JSON parsing rejects malformed input") {
  CHECK_THROWS_AS(diagram_from_json("not json"), domain_error);
  CHECK_THROWS_AS(diagram_from_json("{}"), domain_error);
  CHECK_THROWS_AS(diagram_from_json(R"({"events": [{"kind": "x+"}]})"), domain_error);
  CHECK_THROWS_AS(diagram_from_json(R"({"events": [{"kind": "cup", "pos": 1}]})"),
                  domain_error);
  CHECK_THROWS_AS(
      diagram_from_json(R"({"events": [{"kind": "x+", "pos": 1, "orient": "ccw"}]})"),
      domain_error);
  CHECK_THROWS_AS(
      diagram_from_json(R"({"events": [{"kind": "spiral", "pos": 1}]})"), domain_error);
  CHECK_THROWS_AS(
      diagram_from_json(R"({"events": [{"kind": "cup", "pos": 1, "orient": "up"}]})"),
      domain_error);
}
