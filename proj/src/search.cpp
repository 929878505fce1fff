#include "vsb/search.hpp"

#include <algorithm>
#include <unordered_map>

#include "vsb/quotient.hpp"

namespace vsb {

SearchBudget default_budget(const BraidWord& a, const BraidWord& b) {
  return SearchBudget{std::max(a.letters.size(), b.letters.size()) + 6, 2'000'000, 24};
}

namespace {

std::string encode(const BraidWord& w) {
  std::string s;
  s.reserve(w.letters.size());
  for (const Letter& l : w.letters)
    s.push_back(static_cast<char>((kind_code(l.kind) << 6) | l.index));
  return s;
}

BraidWord decode(const std::string& s, int n) {
  BraidWord w;
  w.n = n;
  w.letters.reserve(s.size());
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    w.letters.push_back(Letter{kind_from_code(u >> 6), u & 0x3f});
  }
  return w;
}

struct Node {
  int32_t parent = -1;
  int32_t rel_idx = -1;
  uint32_t pos = 0;
  Direction dir = Direction::L2R;
};

struct Candidate {
  std::string word;
  int32_t rel_idx;
  uint32_t pos;
  Direction dir;
  bool operator<(const Candidate& o) const {
    if (word.size() != o.word.size()) return word.size() < o.word.size();
    if (word != o.word) return word < o.word;
    if (rel_idx != o.rel_idx) return rel_idx < o.rel_idx;
    if (pos != o.pos) return pos < o.pos;
    return static_cast<int>(dir) < static_cast<int>(o.dir);
  }
};

}  // namespace

EquivResult equivalent_bounded_generic(const BraidWord& a, const BraidWord& b,
                                       const std::vector<Relation>& rels,
                                       const SearchBudget& budget) {
  if (a.n != b.n) throw domain_error("equivalent_bounded requires equal strand counts");
  const int n = a.n;

  // Every relation preserves these, so differing values are conclusive.
  if (permutation_image(a) != permutation_image(b) || tau_count(a) != tau_count(b) ||
      sigma_exponent_sum(a) != sigma_exponent_sum(b)) {
    return EquivResult{false, std::nullopt, 0};
  }

  // side 0 grows from a, side 1 from b.
  std::unordered_map<std::string, int32_t> seen[2];
  std::vector<std::string> words[2];
  std::vector<Node> nodes[2];
  std::vector<int32_t> frontier[2];
  size_t states = 0;

  auto add_root = [&](int side, const BraidWord& w) {
    std::string key = encode(w);
    seen[side].emplace(key, 0);
    words[side].push_back(key);
    nodes[side].push_back(Node{});
    frontier[side].push_back(0);
    ++states;
  };
  add_root(0, a);
  add_root(1, b);

  // Builds the witness from the two meeting nodes.
  auto build = [&](int32_t ida, int32_t idb, size_t explored) {
    std::vector<ScriptStep> fwd;
    for (int32_t at = ida; nodes[0][at].parent >= 0; at = nodes[0][at].parent) {
      const Node& nd = nodes[0][at];
      fwd.push_back(ScriptStep{rels[nd.rel_idx].family, rels[nd.rel_idx].params, nd.pos, nd.dir});
    }
    std::reverse(fwd.begin(), fwd.end());
    for (int32_t at = idb; nodes[1][at].parent >= 0; at = nodes[1][at].parent) {
      const Node& nd = nodes[1][at];
      Direction flip = (nd.dir == Direction::L2R) ? Direction::R2L : Direction::L2R;
      fwd.push_back(ScriptStep{rels[nd.rel_idx].family, rels[nd.rel_idx].params, nd.pos, flip});
    }
    RewriteScript script;
    script.n = n;
    script.start = a;
    script.end = b;
    script.steps = std::move(fwd);
    return EquivResult{true, std::move(script), explored};
  };

  if (words[0][0] == words[1][0]) return build(0, 0, states);

  size_t depth[2] = {0, 0};
  while (!frontier[0].empty() && !frontier[1].empty()) {
    if (depth[0] + depth[1] >= budget.max_depth) break;
    int side = (frontier[0].size() <= frontier[1].size()) ? 0 : 1;
    int other = 1 - side;
    // Expand one full level of `side`, processing states in deterministic
    // (length, encoding) order.
    std::sort(frontier[side].begin(), frontier[side].end(), [&](int32_t x, int32_t y) {
      const std::string& wx = words[side][x];
      const std::string& wy = words[side][y];
      if (wx.size() != wy.size()) return wx.size() < wy.size();
      return wx < wy;
    });
    std::vector<int32_t> next;
    for (int32_t id : frontier[side]) {
      BraidWord w = decode(words[side][id], n);
      std::vector<Candidate> cands;
      for (size_t ri = 0; ri < rels.size(); ++ri) {
        const Relation& rel = rels[ri];
        bool in_range = true;
        for (const Letter& l : rel.lhs)
          if (l.index > n - 1) in_range = false;
        if (!in_range) continue;
        for (int d = 0; d < 2; ++d) {
          Direction dir = d ? Direction::R2L : Direction::L2R;
          const std::vector<Letter>& src = (dir == Direction::L2R) ? rel.lhs : rel.rhs;
          const std::vector<Letter>& dst = (dir == Direction::L2R) ? rel.rhs : rel.lhs;
          if (w.letters.size() - src.size() + dst.size() > budget.max_word_length) continue;
          for (size_t pos = 0; pos + src.size() <= w.letters.size(); ++pos) {
            bool match = true;
            for (size_t k = 0; k < src.size() && match; ++k)
              match = (w.letters[pos + k] == src[k]);
            if (!match) continue;
            BraidWord nb = apply_relation(w, rel, pos, dir);
            cands.push_back(Candidate{encode(nb), static_cast<int32_t>(ri),
                                      static_cast<uint32_t>(pos), dir});
          }
        }
      }
      std::sort(cands.begin(), cands.end());
      for (const Candidate& c : cands) {
        if (seen[side].count(c.word)) continue;
        if (states >= budget.max_states) return EquivResult{false, std::nullopt, states};
        int32_t nid = static_cast<int32_t>(words[side].size());
        seen[side].emplace(c.word, nid);
        words[side].push_back(c.word);
        nodes[side].push_back(Node{id, c.rel_idx, c.pos, c.dir});
        ++states;
        auto hit = seen[other].find(c.word);
        if (hit != seen[other].end()) {
          return side == 0 ? build(nid, hit->second, states) : build(hit->second, nid, states);
        }
        next.push_back(nid);
      }
    }
    frontier[side] = std::move(next);
    ++depth[side];
  }
  return EquivResult{false, std::nullopt, states};
}

namespace {
bool all_virtual_letters(const BraidWord& w) {
  for (const Letter& l : w.letters) {
    if (l.kind != LetterKind::Virtual) return false;
  }
  return true;
}
}  // namespace

EquivResult equivalent_bounded(const BraidWord& a, const BraidWord& b,
                               const std::vector<Relation>& rels, const SearchBudget& budget) {
  if (a.n != b.n) throw domain_error("equivalent_bounded requires equal strand counts");
  if (a.n <= 6 && all_virtual_letters(a) && all_virtual_letters(b) &&
      is_virtual_reduced_set(rels, a.n)) {
    return equivalent_bounded_virtual(a, b, budget);
  }
  if (a.n >= 3 && a.n <= 5 && is_reduced_alphabet(a) && is_reduced_alphabet(b) &&
      is_reduced_set(rels, a.n)) {
    return equivalent_bounded_reduced(a, b, budget);
  }
  return equivalent_bounded_generic(a, b, rels, budget);
}

}  // namespace vsb
