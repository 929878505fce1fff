#include "vsb/relations.hpp"

#include <algorithm>

namespace vsb {

int kind_code(LetterKind k) {
  switch (k) {
    case LetterKind::RealPos: return 0;
    case LetterKind::RealNeg: return 1;
    case LetterKind::Singular: return 2;
    case LetterKind::Virtual: return 3;
  }
  return -1;
}

LetterKind kind_from_code(int code) {
  switch (code) {
    case 0: return LetterKind::RealPos;
    case 1: return LetterKind::RealNeg;
    case 2: return LetterKind::Singular;
    case 3: return LetterKind::Virtual;
  }
  throw domain_error("bad generator kind code " + std::to_string(code));
}

std::string Relation::display() const {
  std::string out = family + "(";
  for (size_t k = 0; k < params.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(params[k]);
  }
  return out + ")";
}

std::string direction_name(Direction d) { return d == Direction::L2R ? "L2R" : "R2L"; }

Direction direction_from_name(const std::string& s) {
  if (s == "L2R") return Direction::L2R;
  if (s == "R2L") return Direction::R2L;
  throw domain_error("bad direction '" + s + "' (want L2R or R2L)");
}

namespace {
using LV = std::vector<Letter>;

Relation make(std::string family, std::vector<int> params, LV lhs, LV rhs) {
  return Relation{std::move(family), std::move(params), std::move(lhs), std::move(rhs)};
}

// Neighbor index pairs (i, i+1) and (i+1, i) in ascending lexicographic order.
std::vector<std::pair<int, int>> adjacent_pairs(int n) {
  std::vector<std::pair<int, int>> ps;
  for (int i = 1; i + 1 <= n - 1; ++i) {
    ps.push_back({i, i + 1});
    ps.push_back({i + 1, i});
  }
  std::sort(ps.begin(), ps.end());
  return ps;
}
}  // namespace

std::vector<Relation> relation_set(int n) {
  if (n < 2) throw domain_error("relation_set requires n >= 2");
  std::vector<Relation> rels;
  for (int i = 1; i <= n - 1; ++i) {
    rels.push_back(make("InvCancel", {i, 0}, {sigma(i), sigma_inv(i)}, {}));
    rels.push_back(make("InvCancel", {i, 1}, {sigma_inv(i), sigma(i)}, {}));
  }
  for (int i = 1; i <= n - 1; ++i) {
    rels.push_back(make("VirtInvol", {i}, {virt(i), virt(i)}, {}));
  }
  for (auto [i, j] : adjacent_pairs(n)) {
    rels.push_back(make("R3", {i, j}, {sigma(i), sigma(j), sigma(i)},
                        {sigma(j), sigma(i), sigma(j)}));
  }
  for (auto [i, j] : adjacent_pairs(n)) {
    rels.push_back(make("V3", {i, j}, {virt(i), virt(j), virt(i)}, {virt(j), virt(i), virt(j)}));
  }
  for (auto [i, j] : adjacent_pairs(n)) {
    rels.push_back(make("VR3", {i, j}, {virt(i), sigma(j), virt(i)}, {virt(j), sigma(i), virt(j)}));
  }
  for (auto [i, j] : adjacent_pairs(n)) {
    rels.push_back(make("VS3", {i, j}, {virt(i), tau(j), virt(i)}, {virt(j), tau(i), virt(j)}));
  }
  for (auto [i, j] : adjacent_pairs(n)) {
    rels.push_back(
        make("RS3", {i, j}, {sigma(i), sigma(j), tau(i)}, {tau(j), sigma(i), sigma(j)}));
  }
  for (int i = 1; i <= n - 1; ++i) {
    rels.push_back(make("RS1", {i}, {sigma(i), tau(i)}, {tau(i), sigma(i)}));
  }
  for (int i = 1; i <= n - 1; ++i) {
    for (int j = 1; j <= n - 1; ++j) {
      if (std::abs(i - j) <= 1) continue;
      for (int g = 0; g <= 3; ++g) {
        for (int h = 0; h <= 3; ++h) {
          Letter gi{kind_from_code(g), i};
          Letter hj{kind_from_code(h), j};
          rels.push_back(make("FarComm", {i, j, g, h}, {gi, hj}, {hj, gi}));
        }
      }
    }
  }
  return rels;
}

namespace {
// v1 v2 s1 v2 v1 with the given core letter in the middle.
LV braided_core(Letter core) {
  return {virt(1), virt(2), core, virt(2), virt(1)};
}

// v2 v3 v1 v2 <core> v2 v1 v3 v2, the distant-strand conjugate.
LV far_core(Letter core) {
  return {virt(2), virt(3), virt(1), virt(2), core, virt(2), virt(1), virt(3), virt(2)};
}

LV cat(std::initializer_list<LV> parts) {
  LV out;
  for (const LV& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}
}  // namespace

std::vector<Relation> virtual_reduced_relation_set(int n) {
  if (n < 2) throw domain_error("virtual_reduced_relation_set requires n >= 2");
  std::vector<Relation> rels;
  for (int i = 1; i <= n - 2; ++i) {
    rels.push_back(make("V3r", {i}, {virt(i), virt(i + 1), virt(i)},
                        {virt(i + 1), virt(i), virt(i + 1)}));
  }
  for (int i = 1; i <= n - 1; ++i) {
    for (int j = 1; j <= n - 1; ++j) {
      if (std::abs(i - j) <= 1) continue;
      rels.push_back(make("VFarComm", {i, j}, {virt(i), virt(j)}, {virt(j), virt(i)}));
    }
  }
  for (int i = 1; i <= n - 1; ++i) {
    rels.push_back(make("VInvol", {i}, {virt(i), virt(i)}, {}));
  }
  return rels;
}

std::vector<Relation> reduced_relation_set(int n) {
  std::vector<Relation> rels = virtual_reduced_relation_set(n);
  rels.push_back(make("Base20a", {0}, {sigma(1), tau(1)}, {tau(1), sigma(1)}));
  rels.push_back(make("Base20a", {1}, {sigma(1), sigma_inv(1)}, {}));
  rels.push_back(make("Base20a", {2}, {sigma_inv(1), sigma(1)}, {}));
  for (int k = 0; k <= 1; ++k) {
    Letter base = k == 0 ? tau(1) : sigma(1);
    for (int i = 3; i <= n - 1; ++i) {
      rels.push_back(make("Base23", {k, i}, {base, virt(i)}, {virt(i), base}));
    }
  }
  if (n >= 3) {
    LV s2 = braided_core(sigma(1));
    rels.push_back(make("BaseR3", {}, cat({{sigma(1)}, s2, {sigma(1)}}),
                        cat({s2, {sigma(1)}, s2})));
    rels.push_back(make("BaseRS3", {}, cat({{tau(1)}, s2, {sigma(1)}}),
                        cat({s2, {sigma(1)}, braided_core(tau(1))})));
  }
  if (n >= 4) {
    LV xs = far_core(sigma(1));
    LV xt = far_core(tau(1));
    rels.push_back(make("BaseFarRR", {}, cat({{sigma(1)}, xs}), cat({xs, {sigma(1)}})));
    rels.push_back(make("BaseFarRT", {}, cat({{tau(1)}, xs}), cat({xs, {tau(1)}})));
    rels.push_back(make("BaseFarTT", {}, cat({{tau(1)}, xt}), cat({xt, {tau(1)}})));
  }
  return rels;
}

const Relation& find_relation(const std::vector<Relation>& rels, const std::string& family,
                              const std::vector<int>& params) {
  for (const Relation& r : rels) {
    if (r.family == family && r.params == params) return r;
  }
  std::string p;
  for (size_t k = 0; k < params.size(); ++k) {
    if (k) p += ",";
    p += std::to_string(params[k]);
  }
  throw domain_error("no relation " + family + "(" + p + ") in the supplied set");
}

BraidWord apply_relation(const BraidWord& w, const Relation& rel, size_t position,
                         Direction direction) {
  const LV& src = (direction == Direction::L2R) ? rel.lhs : rel.rhs;
  const LV& dst = (direction == Direction::L2R) ? rel.rhs : rel.lhs;
  for (const Letter& l : rel.lhs) {
    if (l.index < 1 || l.index > w.n - 1)
      throw domain_error("relation " + rel.display() + " uses index " +
                         std::to_string(l.index) + ", out of range for n=" +
                         std::to_string(w.n));
  }
  if (position + src.size() > w.letters.size())
    throw domain_error("relation " + rel.display() + " does not fit at position " +
                       std::to_string(position));
  for (size_t k = 0; k < src.size(); ++k) {
    if (w.letters[position + k] != src[k])
      throw domain_error("relation " + rel.display() + " (" + direction_name(direction) +
                         ") does not match at position " + std::to_string(position));
  }
  BraidWord out;
  out.n = w.n;
  out.letters.reserve(w.letters.size() - src.size() + dst.size());
  out.letters.insert(out.letters.end(), w.letters.begin(),
                     w.letters.begin() + static_cast<long>(position));
  out.letters.insert(out.letters.end(), dst.begin(), dst.end());
  out.letters.insert(out.letters.end(),
                     w.letters.begin() + static_cast<long>(position + src.size()),
                     w.letters.end());
  return out;
}

std::set<BraidWord> neighbors(const BraidWord& w, const std::vector<Relation>& rels,
                              size_t max_len) {
  std::set<BraidWord> out;
  for (const Relation& rel : rels) {
    bool in_range = true;
    for (const Letter& l : rel.lhs) {
      if (l.index > w.n - 1) in_range = false;
    }
    if (!in_range) continue;
    for (int dir = 0; dir < 2; ++dir) {
      Direction d = dir ? Direction::R2L : Direction::L2R;
      const LV& src = (d == Direction::L2R) ? rel.lhs : rel.rhs;
      const LV& dst = (d == Direction::L2R) ? rel.rhs : rel.lhs;
      if (w.letters.size() - src.size() + dst.size() > max_len) continue;
      for (size_t pos = 0; pos + src.size() <= w.letters.size(); ++pos) {
        bool match = true;
        for (size_t k = 0; k < src.size() && match; ++k) {
          match = (w.letters[pos + k] == src[k]);
        }
        if (!match) continue;
        BraidWord nb = apply_relation(w, rel, pos, d);
        if (nb != w) out.insert(std::move(nb));
      }
    }
  }
  return out;
}

}  // namespace vsb
