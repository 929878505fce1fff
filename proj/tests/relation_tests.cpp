// Relation tables: family order, parameter coverage, conservation of the
// counting invariants, and single-step application semantics.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vsb/relations.hpp"
#include "vsb/word.hpp"

using namespace vsb;

namespace {
BraidWord W(int n, const std::string& text) { return parse_word(text, n); }

BraidWord side_word(const std::vector<Letter>& side, int n) {
  BraidWord w;
  w.n = n;
  w.letters = side;
  return w;
}

std::vector<std::string> family_sequence(const std::vector<Relation>& rels) {
  std::vector<std::string> fams;
  for (const Relation& r : rels) {
    if (fams.empty() || fams.back() != r.family) fams.push_back(r.family);
  }
  return fams;
}
}  // namespace

TEST_CASE("defining set at n=2 holds exactly the index-1 instances") {
  auto rels = relation_set(2);
  REQUIRE(rels.size() == 4);
  CHECK(rels[0].display() == "InvCancel(1,0)");
  CHECK(rels[1].display() == "InvCancel(1,1)");
  CHECK(rels[2].display() == "VirtInvol(1)");
  CHECK(rels[3].display() == "RS1(1)");
}

TEST_CASE("defining set family order and sizes") {
  auto r3 = relation_set(3);
  CHECK(r3.size() == 18);
  CHECK(family_sequence(r3) ==
        std::vector<std::string>{"InvCancel", "VirtInvol", "R3", "V3", "VR3", "VS3", "RS3",
                                 "RS1"});
  auto r4 = relation_set(4);
  CHECK(r4.size() == 64);
  CHECK(family_sequence(r4).back() == "FarComm");
  size_t far = 0;
  for (const Relation& r : r4)
    if (r.family == "FarComm") ++far;
  CHECK(far == 32);  // ordered index pairs (1,3),(3,1), all 16 kind pairs each
}

TEST_CASE("specific defining relations have the expected sides") {
  auto rels = relation_set(4);
  const Relation& vr3 = find_relation(rels, "VR3", {1, 2});
  CHECK(format_word(side_word(vr3.lhs, 4)) == "v1 s2 v1");
  CHECK(format_word(side_word(vr3.rhs, 4)) == "v2 s1 v2");
  const Relation& rs3 = find_relation(rels, "RS3", {2, 1});
  CHECK(format_word(side_word(rs3.lhs, 4)) == "s2 s1 t2");
  CHECK(format_word(side_word(rs3.rhs, 4)) == "t1 s2 s1");
  const Relation& fc = find_relation(rels, "FarComm", {1, 3, 2, 1});
  CHECK(format_word(side_word(fc.lhs, 4)) == "t1 S3");
  CHECK(format_word(side_word(fc.rhs, 4)) == "S3 t1");
  CHECK_THROWS_AS(find_relation(rels, "R3", {1, 3}), domain_error);
}

TEST_CASE("every defining relation preserves the counting invariants") {
  for (int n = 2; n <= 6; ++n) {
    for (const Relation& r : relation_set(n)) {
      BraidWord l = side_word(r.lhs, n), h = side_word(r.rhs, n);
      CHECK(permutation_image(l) == permutation_image(h));
      CHECK(tau_count(l) == tau_count(h));
      CHECK(sigma_exponent_sum(l) == sigma_exponent_sum(h));
    }
  }
}

TEST_CASE("every reduced relation preserves the counting invariants") {
  for (int n = 2; n <= 6; ++n) {
    for (const Relation& r : reduced_relation_set(n)) {
      BraidWord l = side_word(r.lhs, n), h = side_word(r.rhs, n);
      CHECK(permutation_image(l) == permutation_image(h));
      CHECK(tau_count(l) == tau_count(h));
      CHECK(sigma_exponent_sum(l) == sigma_exponent_sum(h));
    }
  }
}

TEST_CASE("reduced set contents per strand count") {
  auto r2 = reduced_relation_set(2);
  REQUIRE(r2.size() == 4);
  CHECK(r2[0].display() == "VInvol(1)");
  CHECK(r2[1].display() == "Base20a(0)");
  CHECK(r2[2].display() == "Base20a(1)");
  CHECK(r2[3].display() == "Base20a(2)");

  auto r3 = reduced_relation_set(3);
  CHECK(r3.size() == 8);
  CHECK(family_sequence(r3) ==
        std::vector<std::string>{"V3r", "VInvol", "Base20a", "BaseR3", "BaseRS3"});

  auto r4 = reduced_relation_set(4);
  CHECK(r4.size() == 17);
  CHECK(family_sequence(r4) ==
        std::vector<std::string>{"V3r", "VFarComm", "VInvol", "Base20a", "Base23", "BaseR3",
                                 "BaseRS3", "BaseFarRR", "BaseFarRT", "BaseFarTT"});

  const Relation& rs3 = find_relation(r4, "BaseRS3", {});
  CHECK(format_word(side_word(rs3.lhs, 4)) == "t1 v1 v2 s1 v2 v1 s1");
  CHECK(format_word(side_word(rs3.rhs, 4)) == "v1 v2 s1 v2 v1 s1 v1 v2 t1 v2 v1");
  const Relation& frt = find_relation(r4, "BaseFarRT", {});
  CHECK(format_word(side_word(frt.lhs, 4)) == "t1 v2 v3 v1 v2 s1 v2 v1 v3 v2");
  CHECK(format_word(side_word(frt.rhs, 4)) == "v2 v3 v1 v2 s1 v2 v1 v3 v2 t1");
  const Relation& b23 = find_relation(r4, "Base23", {0, 3});
  CHECK(format_word(side_word(b23.lhs, 4)) == "t1 v3");

  CHECK(virtual_reduced_relation_set(4).size() == 7);  // V3r 2, VFarComm 2, VInvol 3
}

TEST_CASE("apply_relation replaces and inserts") {
  auto rels = relation_set(3);
  const Relation& r3 = find_relation(rels, "R3", {1, 2});
  BraidWord w = W(3, "t1 s1 s2 s1");
  CHECK(format_word(apply_relation(w, r3, 1, Direction::L2R)) == "t1 s2 s1 s2");
  CHECK_THROWS_AS(apply_relation(w, r3, 0, Direction::L2R), domain_error);
  const Relation& inv = find_relation(rels, "InvCancel", {2, 0});
  CHECK(format_word(apply_relation(W(3, "t1"), inv, 1, Direction::R2L)) == "t1 s2 S2");
  CHECK(format_word(apply_relation(W(3, "s2 S2"), inv, 0, Direction::L2R)) == "1");
  CHECK_THROWS_AS(apply_relation(W(2, "s1"), find_relation(rels, "R3", {1, 2}), 0,
                                 Direction::L2R),
                  domain_error);
}

TEST_CASE("neighbors enumerates single rewrites under a length cap") {
  auto rels = relation_set(2);
  auto nb = neighbors(W(2, "s1 S1"), rels, 4);
  CHECK(nb.count(W(2, "1")) == 1);
  CHECK(nb.count(W(2, "s1 S1 v1 v1")) == 1);
  auto tight = neighbors(W(2, "s1 S1"), rels, 2);
  CHECK(tight.count(W(2, "1")) == 1);
  CHECK(tight.count(W(2, "s1 S1 v1 v1")) == 0);
  for (const BraidWord& u : nb) {
    CHECK(permutation_image(u) == permutation_image(W(2, "s1 S1")));
  }
}
