// The defining presentation of VSB_n as an indexed set of bidirectional
// rewrite rules, plus single-step application and neighbor enumeration.
// The same Relation record also carries the reduced presentation's rules
// (see reduced.hpp), so one checker replays scripts against either set.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "vsb/word.hpp"

namespace vsb {

// Generator kind codes used in FarComm params: s=0, S=1, t=2, v=3.
int kind_code(LetterKind k);
LetterKind kind_from_code(int code);

// One instantiated relation lhs = rhs. `family` and `params` identify the
// rule in scripts; the two sides are concrete letter sequences.
struct Relation {
  std::string family;
  std::vector<int> params;
  std::vector<Letter> lhs;
  std::vector<Letter> rhs;

  std::string display() const;  // e.g. "R3(1,2)"
};

enum class Direction { L2R, R2L };

std::string direction_name(Direction d);
Direction direction_from_name(const std::string& s);

// All legal instantiations of the defining relation families for strand
// count n, in deterministic order: family order InvCancel, VirtInvol, R3,
// V3, VR3, VS3, RS3, RS1, FarComm; within a family, ascending parameter
// tuples. Families and parameter layouts:
//   InvCancel(i, o)        o=0: s_i S_i = 1, o=1: S_i s_i = 1
//   VirtInvol(i)           v_i v_i = 1
//   R3(i, j)   |i-j|=1     s_i s_j s_i = s_j s_i s_j        (both orders)
//   V3(i, j)   |i-j|=1     v_i v_j v_i = v_j v_i v_j        (both orders)
//   VR3(i, j)  |i-j|=1     v_i s_j v_i = v_j s_i v_j        (both orders)
//   VS3(i, j)  |i-j|=1     v_i t_j v_i = v_j t_i v_j        (both orders)
//   RS3(i, j)  |i-j|=1     s_i s_j t_i = t_j s_i s_j        (both orders)
//   RS1(i)                 s_i t_i = t_i s_i
//   FarComm(i, j, g, h) |i-j|>1, g,h kind codes: g_i h_j = h_j g_i
std::vector<Relation> relation_set(int n);

// All legal instantiations of the reduced presentation's relation families
// for strand count n (generators s1, S1, t1, v1..v_{n-1}), in deterministic
// order: family order V3r, VFarComm, VInvol, Base20a, Base23, BaseR3,
// BaseRS3, BaseFarRR, BaseFarRT, BaseFarTT; ascending parameter tuples.
// With X = v2 v3 v1 v2 s1 v2 v1 v3 v2 and Xt its t1 twin, the families are:
//   V3r(i)     i<=n-2       v_i v_{i+1} v_i = v_{i+1} v_i v_{i+1}
//   VFarComm(i, j) |i-j|>1  v_i v_j = v_j v_i                  (both orders)
//   VInvol(i)               v_i v_i = 1
//   Base20a(o)              o=0: s1 t1 = t1 s1, o=1: s1 S1 = 1, o=2: S1 s1 = 1
//   Base23(k, i)  i>=3      k=0: t1 v_i = v_i t1, k=1: s1 v_i = v_i s1
//   BaseR3                  s1 (v1 v2 s1 v2 v1) s1
//                             = (v1 v2 s1 v2 v1) s1 (v1 v2 s1 v2 v1)
//   BaseRS3                 t1 (v1 v2 s1 v2 v1) s1
//                             = (v1 v2 s1 v2 v1) s1 (v1 v2 t1 v2 v1)
//   BaseFarRR               s1 X = X s1
//   BaseFarRT               t1 X = X t1
//   BaseFarTT               t1 Xt = Xt t1
std::vector<Relation> reduced_relation_set(int n);

// The virtual-only subset of reduced_relation_set(n): families V3r,
// VFarComm, VInvol, in the same order.
std::vector<Relation> virtual_reduced_relation_set(int n);

// Looks up a relation instance by family name and params within a set.
// Throws domain_error if absent.
const Relation& find_relation(const std::vector<Relation>& rels,
                              const std::string& family,
                              const std::vector<int>& params);

// Replaces the source side (lhs for L2R, rhs for R2L) occurring at the
// 0-based position by the other side. When the source side is empty the
// position is an insertion point (0 <= position <= |w|). Throws
// domain_error when the source side does not occur at the position or the
// relation uses indices out of range for w.n.
BraidWord apply_relation(const BraidWord& w, const Relation& rel, size_t position,
                         Direction direction);

// All words reachable from w by exactly one apply_relation over `rels`
// (both directions, all positions), deduplicated. Length-increasing
// rewrites are kept only while the result has at most max_len letters.
std::set<BraidWord> neighbors(const BraidWord& w, const std::vector<Relation>& rels,
                              size_t max_len);

}  // namespace vsb
