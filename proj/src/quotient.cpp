#include "vsb/quotient.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace vsb {

// ---------------------------------------------------------------------------
// PermCtx

PermCtx::PermCtx(int n) : n_(n) {
  if (n < 2 || n > 6) throw domain_error("PermCtx supports 2 <= n <= 6");
  fact_ = 1;
  for (int k = 2; k <= n; ++k) fact_ *= k;

  std::array<uint8_t, 6> cur{};
  for (int k = 0; k < 6; ++k) cur[k] = static_cast<uint8_t>(k);
  perms_.reserve(static_cast<size_t>(fact_));
  do {
    perms_.push_back(cur);
  } while (std::next_permutation(cur.begin(), cur.begin() + n));

  auto code_of = [&](const std::array<uint8_t, 6>& p) {
    int c = 0;
    for (int k = 0; k < n; ++k) c = c * 6 + p[k];
    return c;
  };
  std::vector<uint16_t> rank(46656, 0);
  for (int a = 0; a < fact_; ++a) rank[code_of(perms_[a])] = static_cast<uint16_t>(a);

  comp_.assign(static_cast<size_t>(fact_) * fact_, 0);
  for (int a = 0; a < fact_; ++a) {
    for (int b = 0; b < fact_; ++b) {
      std::array<uint8_t, 6> r{};
      for (int k = 0; k < 6; ++k) r[k] = static_cast<uint8_t>(k);
      for (int x = 0; x < n; ++x) r[x] = perms_[b][perms_[a][x]];
      comp_[static_cast<size_t>(a) * fact_ + b] = rank[code_of(r)];
    }
  }

  inv_.assign(fact_, 0);
  len_.assign(fact_, 0);
  for (int a = 0; a < fact_; ++a) {
    std::array<uint8_t, 6> r{};
    for (int x = 0; x < n; ++x) r[perms_[a][x]] = static_cast<uint8_t>(x);
    for (int x = n; x < 6; ++x) r[x] = static_cast<uint8_t>(x);
    inv_[a] = rank[code_of(r)];
    int invs = 0;
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        if (perms_[a][x] > perms_[a][y]) ++invs;
    len_[a] = static_cast<uint8_t>(invs);
  }

  gen_.assign(static_cast<size_t>(n), 0);
  for (int i = 1; i <= n - 1; ++i) {
    std::array<uint8_t, 6> p{};
    for (int k = 0; k < 6; ++k) p[k] = static_cast<uint8_t>(k);
    std::swap(p[i - 1], p[i]);
    gen_[i] = rank[code_of(p)];
  }

  // Canonical reduced words by breadth-first levels. Within one level the
  // candidate extensions arise in lexicographic word order (parents are in
  // lex order of their canonical words, suffix letters ascend), so the
  // first word assigned to a permutation is its lex-least reduced word.
  canon_.assign(fact_, {});
  std::vector<char> have(fact_, 0);
  have[0] = 1;
  std::vector<uint16_t> level{0};
  while (!level.empty()) {
    std::vector<uint16_t> nxt;
    for (uint16_t p : level) {
      for (int i = 1; i <= n - 1; ++i) {
        uint16_t q = compose(p, gen_[i]);
        if (have[q]) continue;
        have[q] = 1;
        canon_[q] = canon_[p];
        canon_[q].push_back(static_cast<uint8_t>(i));
        nxt.push_back(q);
      }
    }
    level = std::move(nxt);
  }

  splits_.assign(fact_, {});
  for (int a = 0; a < fact_; ++a) {
    auto& sp = splits_[a];
    sp.reserve(static_cast<size_t>(fact_));
    for (int rho = 0; rho < fact_; ++rho) {
      uint16_t mu = compose(inv_[rho], static_cast<uint16_t>(a));
      sp.push_back({static_cast<uint16_t>(rho), mu});
    }
    std::sort(sp.begin(), sp.end(),
              [&](const std::pair<uint16_t, uint16_t>& x, const std::pair<uint16_t, uint16_t>& y) {
                int lx = len_[x.first] + len_[x.second];
                int ly = len_[y.first] + len_[y.second];
                if (lx != ly) return lx < ly;
                return x.first < y.first;
              });
  }
}

const PermCtx& PermCtx::get(int n) {
  static std::array<std::unique_ptr<PermCtx>, 7> cache;
  if (n < 2 || n > 6) throw domain_error("PermCtx supports 2 <= n <= 6");
  if (!cache[n]) cache[n] = std::make_unique<PermCtx>(n);
  return *cache[n];
}

uint16_t PermCtx::of_letters(const std::vector<uint8_t>& w) const {
  uint16_t p = 0;
  for (uint8_t i : w) {
    if (i < 1 || i > n_ - 1) throw domain_error("virtual generator index out of range");
    p = compose(p, gen_[i]);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Relation set recognition

namespace {
bool same_rels(const std::vector<Relation>& a, const std::vector<Relation>& b) {
  if (a.size() != b.size()) return false;
  for (size_t k = 0; k < a.size(); ++k) {
    if (a[k].family != b[k].family || a[k].params != b[k].params || a[k].lhs != b[k].lhs ||
        a[k].rhs != b[k].rhs)
      return false;
  }
  return true;
}
}  // namespace

bool is_reduced_set(const std::vector<Relation>& rels, int n) {
  if (n < 2) return false;
  return same_rels(rels, reduced_relation_set(n));
}

bool is_virtual_reduced_set(const std::vector<Relation>& rels, int n) {
  if (n < 2) return false;
  return same_rels(rels, virtual_reduced_relation_set(n));
}

bool is_reduced_alphabet(const BraidWord& w) {
  for (const Letter& l : w.letters) {
    if (l.kind != LetterKind::Virtual && l.index != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Elementary rewriting of all-virtual words

namespace {

using VWord = std::vector<uint8_t>;

struct BudgetExceeded {};

// Walks the graph of all-virtual words under V3r/VFarComm/VInvol moves and
// emits elementary steps. Throws BudgetExceeded past `cap` explored nodes.
struct VirtualRewriter {
  const PermCtx& P;
  size_t explored = 0;
  size_t cap = static_cast<size_t>(-1);

  explicit VirtualRewriter(const PermCtx& p) : P(p) {}

  void bump() {
    if (++explored > cap) throw BudgetExceeded{};
  }

  uint16_t perm_of(const VWord& w) const { return P.of_letters(w); }

  struct BNode {
    VWord w;
    int parent;
    ScriptStep step;
  };

  // Breadth-first search through length-preserving braid moves from `start`
  // until goal(word) holds; emits the path's steps at global `offset` and
  // returns the goal word. Deterministic: positions ascend, V3r before
  // VFarComm at a position, first-wins deduplication.
  template <class Goal>
  VWord braid_search(const VWord& start, Goal goal, size_t offset, std::vector<ScriptStep>& out) {
    std::vector<BNode> nodes;
    std::map<VWord, int> seen;
    nodes.push_back(BNode{start, -1, {}});
    seen.emplace(start, 0);
    bump();
    size_t head = 0;
    while (head < nodes.size()) {
      int id = static_cast<int>(head);
      VWord w = nodes[head].w;
      ++head;
      if (goal(w)) {
        std::vector<ScriptStep> path;
        for (int at = id; nodes[at].parent >= 0; at = nodes[at].parent)
          path.push_back(nodes[at].step);
        std::reverse(path.begin(), path.end());
        for (ScriptStep& s : path) {
          s.pos += offset;
          out.push_back(std::move(s));
        }
        return w;
      }
      auto try_add = [&](VWord nw, ScriptStep st) {
        if (seen.count(nw)) return;
        seen.emplace(nw, static_cast<int>(nodes.size()));
        nodes.push_back(BNode{std::move(nw), id, std::move(st)});
        bump();
      };
      for (size_t p = 0; p + 1 < w.size(); ++p) {
        if (p + 2 < w.size()) {
          uint8_t x = w[p], y = w[p + 1], z = w[p + 2];
          if (z == x && y == x + 1) {
            VWord nw = w;
            nw[p] = static_cast<uint8_t>(x + 1);
            nw[p + 1] = x;
            nw[p + 2] = static_cast<uint8_t>(x + 1);
            try_add(std::move(nw), ScriptStep{"V3r", {x}, p, Direction::L2R});
          }
          if (z == x && y + 1 == x) {
            VWord nw = w;
            nw[p] = y;
            nw[p + 1] = x;
            nw[p + 2] = y;
            try_add(std::move(nw), ScriptStep{"V3r", {y}, p, Direction::R2L});
          }
        }
        int dx = static_cast<int>(w[p]) - static_cast<int>(w[p + 1]);
        if (dx > 1 || dx < -1) {
          VWord nw = w;
          std::swap(nw[p], nw[p + 1]);
          try_add(std::move(nw), ScriptStep{"VFarComm", {w[p], w[p + 1]}, p, Direction::L2R});
        }
      }
    }
    throw domain_error("virtual rewrite goal unreachable");
  }

  // Rewrites w into the canonical reduced word of its permutation image,
  // emitting the elementary steps at global `offset`.
  VWord to_canonical(VWord w, size_t offset, std::vector<ScriptStep>& out) {
    for (;;) {
      uint16_t p = perm_of(w);
      if (w.size() == static_cast<size_t>(P.len(p))) {
        if (w == P.canonical(p)) return w;
        const VWord& target = P.canonical(p);
        return braid_search(
            w, [&](const VWord& u) { return u == target; }, offset, out);
      }
      // Find the first letter where the running prefix length drops. The
      // prefix before it is reduced, and some braid-equivalent spelling of
      // it ends with that letter; steering there exposes a double letter.
      uint16_t pre = P.identity();
      size_t k = 0;
      for (;; ++k) {
        uint16_t q = P.compose(pre, P.gen(w[k]));
        if (P.len(q) < P.len(pre)) break;
        pre = q;
      }
      uint8_t x = w[k];
      VWord prefix(w.begin(), w.begin() + static_cast<long>(k));
      VWord steered = braid_search(
          prefix, [&](const VWord& u) { return !u.empty() && u.back() == x; }, offset, out);
      out.push_back(ScriptStep{"VInvol", {x}, offset + k - 1, Direction::L2R});
      VWord nw(steered.begin(), steered.end() - 1);
      nw.insert(nw.end(), w.begin() + static_cast<long>(k) + 1, w.end());
      w = std::move(nw);
    }
  }

  // from -> to (same permutation required), emitting steps at `offset`.
  bool connect(const VWord& from, const VWord& to, size_t offset, std::vector<ScriptStep>& out) {
    if (perm_of(from) != perm_of(to)) return false;
    if (from == to) return true;
    to_canonical(from, offset, out);
    std::vector<ScriptStep> back;
    to_canonical(to, offset, back);
    for (auto it = back.rbegin(); it != back.rend(); ++it) {
      ScriptStep s = *it;
      s.dir = (s.dir == Direction::L2R) ? Direction::R2L : Direction::L2R;
      out.push_back(std::move(s));
    }
    return true;
  }
};

VWord virtual_indices(const BraidWord& w) {
  VWord out;
  out.reserve(w.letters.size());
  for (const Letter& l : w.letters) {
    if (l.kind != LetterKind::Virtual)
      throw domain_error("expected an all-virtual word");
    out.push_back(static_cast<uint8_t>(l.index));
  }
  return out;
}

}  // namespace

bool virtual_path(int n, const std::vector<uint8_t>& from, const std::vector<uint8_t>& to,
                  size_t offset, std::vector<ScriptStep>& out) {
  VirtualRewriter r(PermCtx::get(n));
  return r.connect(from, to, offset, out);
}

EquivResult equivalent_bounded_virtual(const BraidWord& a, const BraidWord& b,
                                       const SearchBudget& budget) {
  if (a.n != b.n) throw domain_error("equivalent_bounded requires equal strand counts");
  const PermCtx& P = PermCtx::get(a.n);
  VWord wa = virtual_indices(a);
  VWord wb = virtual_indices(b);
  VirtualRewriter r(P);
  r.cap = budget.max_states;
  if (r.perm_of(wa) != r.perm_of(wb)) return EquivResult{false, std::nullopt, 0};
  RewriteScript script;
  script.n = a.n;
  script.start = a;
  script.end = b;
  try {
    if (!r.connect(wa, wb, 0, script.steps))
      return EquivResult{false, std::nullopt, r.explored};
  } catch (const BudgetExceeded&) {
    return EquivResult{false, std::nullopt, r.explored};
  }
  return EquivResult{true, std::move(script), r.explored};
}

// ---------------------------------------------------------------------------
// Quotient-state search over the full reduced presentation

namespace {

// A word over the reduced alphabet, seen as alternating segments (virtual
// runs, stored by permutation image) and anchors s1/S1/t1 (codes 0/1/2).
struct QState {
  std::vector<uint16_t> segs;    // segs.size() == anchors.size() + 1
  std::vector<uint8_t> anchors;  // 0 = s1, 1 = S1, 2 = t1
};

enum QKind : uint8_t { QInsert, QCancel, QSwapST, QTransfer, QR3, QRS3, QFar };

struct QMove {
  uint8_t kind = 0;
  uint8_t j = 0;     // segment index (QInsert) or leading anchor index (others)
  uint8_t ord = 0;   // orientation/pattern selector where applicable
  uint8_t vi = 0;    // QTransfer: the commuting virtual generator index
  uint16_t rho = 0;  // QInsert: left factor of the split
  uint16_t mu = 0;   // QInsert: right factor of the split
};

std::string q_encode(const QState& s) {
  std::string out;
  out.reserve(s.segs.size() + s.anchors.size());
  out.push_back(static_cast<char>(s.segs[0]));
  for (size_t j = 0; j < s.anchors.size(); ++j) {
    out.push_back(static_cast<char>(0x80u | s.anchors[j]));
    out.push_back(static_cast<char>(s.segs[j + 1]));
  }
  return out;
}

QState q_decode(const std::string& s) {
  QState st;
  st.segs.push_back(static_cast<uint8_t>(s[0]));
  for (size_t k = 1; k + 1 < s.size(); k += 2) {
    st.anchors.push_back(static_cast<uint8_t>(s[k]) & 0x03u);
    st.segs.push_back(static_cast<uint8_t>(s[k + 1]));
  }
  return st;
}

// Search context: tables plus the distinguished permutations of the braided
// and distant-strand relation cores.
struct QCtx {
  const PermCtx& P;
  int n;
  uint16_t C = 0;    // image of v1 v2
  uint16_t Cp = 0;   // image of v2 v1
  uint16_t D = 0;    // image of v2 v3 v1 v2 (n >= 4 only)
  bool has_d = false;
  size_t cap = 0;    // bound on state minlen

  explicit QCtx(int n_, size_t cap_) : P(PermCtx::get(n_)), n(n_), cap(cap_) {
    C = P.of_letters({1, 2});
    Cp = P.of_letters({2, 1});
    if (n >= 4) {
      D = P.of_letters({2, 3, 1, 2});
      has_d = true;
    }
  }

  size_t minlen(const QState& s) const {
    size_t m = s.anchors.size();
    for (uint16_t g : s.segs) m += static_cast<size_t>(P.len(g));
    return m;
  }
};

QState apply_qmove(const QCtx& ctx, const QState& s, const QMove& m) {
  const PermCtx& P = ctx.P;
  QState r = s;
  size_t j = m.j;
  switch (m.kind) {
    case QInsert: {
      r.segs[j] = m.rho;
      r.segs.insert(r.segs.begin() + static_cast<long>(j) + 1, {P.identity(), m.mu});
      uint8_t first = m.ord == 0 ? 0 : 1;
      uint8_t second = m.ord == 0 ? 1 : 0;
      r.anchors.insert(r.anchors.begin() + static_cast<long>(j), {first, second});
      break;
    }
    case QCancel: {
      r.segs[j] = P.compose(r.segs[j], r.segs[j + 2]);
      r.segs.erase(r.segs.begin() + static_cast<long>(j) + 1,
                   r.segs.begin() + static_cast<long>(j) + 3);
      r.anchors.erase(r.anchors.begin() + static_cast<long>(j),
                      r.anchors.begin() + static_cast<long>(j) + 2);
      break;
    }
    case QSwapST:
      std::swap(r.anchors[j], r.anchors[j + 1]);
      break;
    case QTransfer: {
      uint16_t g = P.gen(m.vi);
      r.segs[j] = P.compose(r.segs[j], g);
      r.segs[j + 1] = P.compose(g, r.segs[j + 1]);
      break;
    }
    case QR3: {
      uint16_t left = m.ord == 0 ? ctx.C : ctx.Cp;
      uint16_t right = m.ord == 0 ? ctx.Cp : ctx.C;
      r.segs[j] = P.compose(r.segs[j], left);
      r.segs[j + 1] = right;
      r.segs[j + 2] = left;
      r.segs[j + 3] = P.compose(right, r.segs[j + 3]);
      break;
    }
    case QRS3: {
      if (m.ord == 0) {
        // (t1, C, s1, C', s1) -> (s1, C', s1, C, t1), boundaries .C / C'.
        r.anchors[j] = 0;
        r.anchors[j + 1] = 0;
        r.anchors[j + 2] = 2;
        r.segs[j] = P.compose(r.segs[j], ctx.C);
        r.segs[j + 1] = ctx.Cp;
        r.segs[j + 2] = ctx.C;
        r.segs[j + 3] = P.compose(ctx.Cp, r.segs[j + 3]);
      } else {
        r.anchors[j] = 2;
        r.anchors[j + 1] = 0;
        r.anchors[j + 2] = 0;
        r.segs[j] = P.compose(r.segs[j], ctx.Cp);
        r.segs[j + 1] = ctx.C;
        r.segs[j + 2] = ctx.Cp;
        r.segs[j + 3] = P.compose(ctx.C, r.segs[j + 3]);
      }
      break;
    }
    case QFar: {
      std::swap(r.anchors[j], r.anchors[j + 1]);
      r.segs[j] = P.compose(r.segs[j], ctx.D);
      r.segs[j + 2] = P.compose(ctx.D, r.segs[j + 2]);
      break;
    }
  }
  return r;
}

// The move undoing `m`, expressed against the state `m` was applied to.
QMove inverse_qmove(const QMove& m, const QState& before) {
  QMove r = m;
  switch (m.kind) {
    case QInsert:
      r.kind = QCancel;
      r.rho = 0;
      r.mu = 0;
      break;
    case QCancel:
      r.kind = QInsert;
      r.rho = before.segs[m.j];
      r.mu = before.segs[m.j + 2];
      break;
    case QSwapST:
      r.ord = static_cast<uint8_t>(1 - m.ord);
      break;
    case QTransfer:
      break;
    case QR3:
    case QRS3:
      r.ord = static_cast<uint8_t>(1 - m.ord);
      break;
    case QFar:
      break;
  }
  return r;
}

// Deterministic neighbor enumeration: anchor-pair moves, transfers, window
// moves, then insertions (splits in ascending added-length order).
void enumerate_qmoves(const QCtx& ctx, const QState& s, std::vector<QMove>& out) {
  const PermCtx& P = ctx.P;
  size_t k = s.anchors.size();
  size_t base = ctx.minlen(s);
  out.clear();
  for (size_t j = 0; j + 1 < k; ++j) {
    uint16_t mid = s.segs[j + 1];
    uint8_t g = s.anchors[j], h = s.anchors[j + 1];
    if (mid == P.identity()) {
      if (g == 0 && h == 1) out.push_back(QMove{QCancel, static_cast<uint8_t>(j), 0, 0, 0, 0});
      if (g == 1 && h == 0) out.push_back(QMove{QCancel, static_cast<uint8_t>(j), 1, 0, 0, 0});
      if (g == 0 && h == 2) out.push_back(QMove{QSwapST, static_cast<uint8_t>(j), 0, 0, 0, 0});
      if (g == 2 && h == 0) out.push_back(QMove{QSwapST, static_cast<uint8_t>(j), 1, 0, 0, 0});
    }
    if (ctx.has_d && mid == ctx.D && (g == 0 || g == 2) && (h == 0 || h == 2)) {
      QMove m{QFar, static_cast<uint8_t>(j), 0, 0, 0, 0};
      QState t = apply_qmove(ctx, s, m);
      if (ctx.minlen(t) <= ctx.cap) out.push_back(m);
    }
  }
  for (size_t j = 0; j < k; ++j) {
    for (int vi = 3; vi <= ctx.n - 1; ++vi) {
      QMove m{QTransfer, static_cast<uint8_t>(j), 0, static_cast<uint8_t>(vi), 0, 0};
      long dl = P.len(P.compose(s.segs[j], P.gen(vi))) - P.len(s.segs[j]) +
                P.len(P.compose(P.gen(vi), s.segs[j + 1])) - P.len(s.segs[j + 1]);
      if (static_cast<long>(base) + dl <= static_cast<long>(ctx.cap)) out.push_back(m);
    }
  }
  for (size_t j = 0; j + 2 < k; ++j) {
    uint8_t g0 = s.anchors[j], g1 = s.anchors[j + 1], g2 = s.anchors[j + 2];
    uint16_t s1 = s.segs[j + 1], s2 = s.segs[j + 2];
    auto within = [&](const QMove& m) {
      QState t = apply_qmove(ctx, s, m);
      return ctx.minlen(t) <= ctx.cap;
    };
    if (g0 == 0 && g1 == 0 && g2 == 0) {
      if (s1 == ctx.C && s2 == ctx.Cp) {
        QMove m{QR3, static_cast<uint8_t>(j), 0, 0, 0, 0};
        if (within(m)) out.push_back(m);
      }
      if (s1 == ctx.Cp && s2 == ctx.C) {
        QMove m{QR3, static_cast<uint8_t>(j), 1, 0, 0, 0};
        if (within(m)) out.push_back(m);
      }
    }
    if (g0 == 2 && g1 == 0 && g2 == 0 && s1 == ctx.C && s2 == ctx.Cp) {
      QMove m{QRS3, static_cast<uint8_t>(j), 0, 0, 0, 0};
      if (within(m)) out.push_back(m);
    }
    if (g0 == 0 && g1 == 0 && g2 == 2 && s1 == ctx.Cp && s2 == ctx.C) {
      QMove m{QRS3, static_cast<uint8_t>(j), 1, 0, 0, 0};
      if (within(m)) out.push_back(m);
    }
  }
  for (size_t j = 0; j < s.segs.size(); ++j) {
    size_t rest = base - static_cast<size_t>(P.len(s.segs[j]));
    for (const auto& [rho, mu] : P.splits(s.segs[j])) {
      size_t nl = rest + static_cast<size_t>(P.len(rho)) + static_cast<size_t>(P.len(mu)) + 2;
      if (nl > ctx.cap) break;  // splits are sorted by added length
      out.push_back(QMove{QInsert, static_cast<uint8_t>(j), 0, 0, rho, mu});
      out.push_back(QMove{QInsert, static_cast<uint8_t>(j), 1, 0, rho, mu});
    }
  }
}

// ---------------------------------------------------------------------------
// Witness assembly: replays a quotient path as elementary steps, keeping
// every segment spelled canonically between moves.

struct Staged {
  std::vector<VWord> w;
  std::vector<uint16_t> pid;
  std::vector<uint8_t> anchors;
};

struct Assembler {
  const QCtx& ctx;
  VirtualRewriter vr;
  Staged st;
  std::vector<ScriptStep>& out;

  Assembler(const QCtx& c, std::vector<ScriptStep>& o) : ctx(c), vr(c.P), out(o) {}

  size_t off_seg(size_t j) const {
    size_t o = 0;
    for (size_t q = 0; q < j; ++q) o += st.w[q].size() + 1;
    return o;
  }
  size_t off_anchor(size_t j) const { return off_seg(j) + st.w[j].size(); }

  void set_form(size_t j, VWord target) {
    if (!vr.connect(st.w[j], target, off_seg(j), out))
      throw domain_error("segment respelling changed the permutation");
    st.w[j] = std::move(target);
  }

  void restage(size_t j) { set_form(j, ctx.P.canonical(st.pid[j])); }

  static VWord join(std::initializer_list<VWord> parts) {
    VWord r;
    for (const VWord& p : parts) r.insert(r.end(), p.begin(), p.end());
    return r;
  }

  void expand(const QMove& m) {
    const PermCtx& P = ctx.P;
    size_t j = m.j;
    const VWord cw{1, 2}, cpw{2, 1}, dw{2, 3, 1, 2}, dw2{2, 1, 3, 2};
    switch (m.kind) {
      case QInsert: {
        const VWord& cr = P.canonical(m.rho);
        const VWord& cm = P.canonical(m.mu);
        set_form(j, join({cr, cm}));
        size_t pos = off_seg(j) + cr.size();
        out.push_back(ScriptStep{"Base20a", {m.ord == 0 ? 1 : 2}, pos, Direction::R2L});
        st.w[j] = cr;
        st.pid[j] = m.rho;
        st.w.insert(st.w.begin() + static_cast<long>(j) + 1, {VWord{}, cm});
        st.pid.insert(st.pid.begin() + static_cast<long>(j) + 1, {P.identity(), m.mu});
        uint8_t first = m.ord == 0 ? 0 : 1;
        uint8_t second = m.ord == 0 ? 1 : 0;
        st.anchors.insert(st.anchors.begin() + static_cast<long>(j), {first, second});
        break;
      }
      case QCancel: {
        size_t pos = off_anchor(j);
        out.push_back(
            ScriptStep{"Base20a", {st.anchors[j] == 0 ? 1 : 2}, pos, Direction::L2R});
        VWord merged = join({st.w[j], st.w[j + 2]});
        uint16_t mp = P.compose(st.pid[j], st.pid[j + 2]);
        st.w.erase(st.w.begin() + static_cast<long>(j) + 1, st.w.begin() + static_cast<long>(j) + 3);
        st.pid.erase(st.pid.begin() + static_cast<long>(j) + 1,
                     st.pid.begin() + static_cast<long>(j) + 3);
        st.anchors.erase(st.anchors.begin() + static_cast<long>(j),
                         st.anchors.begin() + static_cast<long>(j) + 2);
        st.w[j] = std::move(merged);
        st.pid[j] = mp;
        restage(j);
        break;
      }
      case QSwapST: {
        size_t pos = off_anchor(j);
        Direction d = st.anchors[j] == 0 ? Direction::L2R : Direction::R2L;
        out.push_back(ScriptStep{"Base20a", {0}, pos, d});
        std::swap(st.anchors[j], st.anchors[j + 1]);
        break;
      }
      case QTransfer: {
        uint16_t shifted = P.compose(st.pid[j], P.gen(m.vi));
        VWord target = P.canonical(shifted);
        target.push_back(m.vi);
        set_form(j, target);
        size_t p = off_seg(j) + st.w[j].size() - 1;
        uint8_t g = st.anchors[j];
        if (g == 0) {
          out.push_back(ScriptStep{"Base23", {1, m.vi}, p, Direction::R2L});
        } else if (g == 2) {
          out.push_back(ScriptStep{"Base23", {0, m.vi}, p, Direction::R2L});
        } else {
          out.push_back(ScriptStep{"Base20a", {2}, p, Direction::R2L});
          out.push_back(ScriptStep{"Base23", {1, m.vi}, p + 1, Direction::L2R});
          out.push_back(ScriptStep{"Base20a", {1}, p + 2, Direction::L2R});
        }
        st.w[j].pop_back();
        st.pid[j] = shifted;
        VWord head{m.vi};
        st.w[j + 1].insert(st.w[j + 1].begin(), head.begin(), head.end());
        st.pid[j + 1] = P.compose(P.gen(m.vi), st.pid[j + 1]);
        restage(j + 1);
        break;
      }
      case QR3: {
        if (m.ord == 0) {
          out.push_back(ScriptStep{"BaseR3", {}, off_anchor(j), Direction::L2R});
          st.w[j] = join({st.w[j], cw});
          st.pid[j] = P.compose(st.pid[j], ctx.C);
          st.w[j + 1] = cpw;
          st.pid[j + 1] = ctx.Cp;
          st.w[j + 2] = cw;
          st.pid[j + 2] = ctx.C;
          st.w[j + 3] = join({cpw, st.w[j + 3]});
          st.pid[j + 3] = P.compose(ctx.Cp, st.pid[j + 3]);
          restage(j);
          restage(j + 3);
        } else {
          set_form(j, join({P.canonical(P.compose(st.pid[j], ctx.Cp)), cw}));
          set_form(j + 3, join({cpw, P.canonical(P.compose(ctx.C, st.pid[j + 3]))}));
          out.push_back(
              ScriptStep{"BaseR3", {}, off_seg(j) + st.w[j].size() - 2, Direction::R2L});
          st.w[j].resize(st.w[j].size() - 2);
          st.pid[j] = P.compose(st.pid[j], ctx.Cp);
          st.w[j + 1] = cw;
          st.pid[j + 1] = ctx.C;
          st.w[j + 2] = cpw;
          st.pid[j + 2] = ctx.Cp;
          st.w[j + 3].erase(st.w[j + 3].begin(), st.w[j + 3].begin() + 2);
          st.pid[j + 3] = P.compose(ctx.C, st.pid[j + 3]);
        }
        break;
      }
      case QRS3: {
        if (m.ord == 0) {
          out.push_back(ScriptStep{"BaseRS3", {}, off_anchor(j), Direction::L2R});
          st.anchors[j] = 0;
          st.anchors[j + 1] = 0;
          st.anchors[j + 2] = 2;
          st.w[j] = join({st.w[j], cw});
          st.pid[j] = P.compose(st.pid[j], ctx.C);
          st.w[j + 1] = cpw;
          st.pid[j + 1] = ctx.Cp;
          st.w[j + 2] = cw;
          st.pid[j + 2] = ctx.C;
          st.w[j + 3] = join({cpw, st.w[j + 3]});
          st.pid[j + 3] = P.compose(ctx.Cp, st.pid[j + 3]);
          restage(j);
          restage(j + 3);
        } else {
          set_form(j, join({P.canonical(P.compose(st.pid[j], ctx.Cp)), cw}));
          set_form(j + 3, join({cpw, P.canonical(P.compose(ctx.C, st.pid[j + 3]))}));
          out.push_back(
              ScriptStep{"BaseRS3", {}, off_seg(j) + st.w[j].size() - 2, Direction::R2L});
          st.anchors[j] = 2;
          st.anchors[j + 1] = 0;
          st.anchors[j + 2] = 0;
          st.w[j].resize(st.w[j].size() - 2);
          st.pid[j] = P.compose(st.pid[j], ctx.Cp);
          st.w[j + 1] = cw;
          st.pid[j + 1] = ctx.C;
          st.w[j + 2] = cpw;
          st.pid[j + 2] = ctx.Cp;
          st.w[j + 3].erase(st.w[j + 3].begin(), st.w[j + 3].begin() + 2);
          st.pid[j + 3] = P.compose(ctx.C, st.pid[j + 3]);
        }
        break;
      }
      case QFar: {
        uint8_t g = st.anchors[j], h = st.anchors[j + 1];
        if (!(g == 0 && h == 2)) {
          const char* fam = (g == 0 && h == 0)   ? "BaseFarRR"
                            : (g == 2 && h == 0) ? "BaseFarRT"
                                                 : "BaseFarTT";
          set_form(j + 1, dw);
          set_form(j + 2, join({dw2, P.canonical(P.compose(ctx.D, st.pid[j + 2]))}));
          out.push_back(ScriptStep{fam, {}, off_anchor(j), Direction::L2R});
          std::swap(st.anchors[j], st.anchors[j + 1]);
          st.w[j] = join({st.w[j], dw});
          st.pid[j] = P.compose(st.pid[j], ctx.D);
          st.w[j + 1] = dw2;
          st.w[j + 2].erase(st.w[j + 2].begin(), st.w[j + 2].begin() + 4);
          st.pid[j + 2] = P.compose(ctx.D, st.pid[j + 2]);
          restage(j);
          restage(j + 1);
        } else {
          set_form(j, join({P.canonical(P.compose(st.pid[j], ctx.D)), dw}));
          set_form(j + 1, dw2);
          out.push_back(
              ScriptStep{"BaseFarRT", {}, off_seg(j) + st.w[j].size() - 4, Direction::R2L});
          std::swap(st.anchors[j], st.anchors[j + 1]);
          st.w[j].resize(st.w[j].size() - 4);
          st.pid[j] = P.compose(st.pid[j], ctx.D);
          st.w[j + 1] = dw;
          st.w[j + 2] = join({dw2, st.w[j + 2]});
          st.pid[j + 2] = P.compose(ctx.D, st.pid[j + 2]);
          restage(j + 1);
          restage(j + 2);
        }
        break;
      }
    }
  }
};

void split_runs(const BraidWord& w, std::vector<VWord>& runs, std::vector<uint8_t>& anchors) {
  runs.assign(1, {});
  anchors.clear();
  for (const Letter& l : w.letters) {
    if (l.kind == LetterKind::Virtual) {
      runs.back().push_back(static_cast<uint8_t>(l.index));
    } else {
      switch (l.kind) {
        case LetterKind::RealPos: anchors.push_back(0); break;
        case LetterKind::RealNeg: anchors.push_back(1); break;
        default: anchors.push_back(2); break;
      }
      runs.push_back({});
    }
  }
}

}  // namespace

EquivResult equivalent_bounded_reduced(const BraidWord& a, const BraidWord& b,
                                       const SearchBudget& budget) {
  if (a.n != b.n) throw domain_error("equivalent_bounded requires equal strand counts");
  if (a.n < 3 || a.n > 5)
    throw domain_error("reduced-presentation search supports 3 <= n <= 5");
  if (!is_reduced_alphabet(a) || !is_reduced_alphabet(b))
    throw domain_error("reduced-presentation search needs reduced-alphabet words");
  const int n = a.n;

  if (permutation_image(a) != permutation_image(b) || tau_count(a) != tau_count(b) ||
      sigma_exponent_sum(a) != sigma_exponent_sum(b)) {
    return EquivResult{false, std::nullopt, 0};
  }

  QCtx ctx(n, budget.max_word_length);

  std::vector<VWord> runs[2];
  std::vector<uint8_t> runanchors[2];
  split_runs(a, runs[0], runanchors[0]);
  split_runs(b, runs[1], runanchors[1]);
  QState roots[2];
  for (int side = 0; side < 2; ++side) {
    for (const VWord& r : runs[side]) roots[side].segs.push_back(ctx.P.of_letters(r));
    roots[side].anchors = runanchors[side];
  }

  struct Node {
    int32_t parent = -1;
    QMove move;
    const std::string* key = nullptr;
  };
  std::unordered_map<std::string, int32_t> seen[2];
  std::vector<Node> nodes[2];
  std::vector<int32_t> frontier[2];
  size_t states = 0;

  auto add_root = [&](int side) {
    auto [it, fresh] = seen[side].emplace(q_encode(roots[side]), 0);
    (void)fresh;
    nodes[side].push_back(Node{-1, QMove{}, &it->first});
    frontier[side].push_back(0);
    ++states;
  };
  add_root(0);
  add_root(1);

  // Replays the quotient path as elementary steps between the exact input
  // words, staging segments canonically around every move.
  auto build = [&](int32_t ida, int32_t idb, size_t explored) {
    std::vector<std::pair<QState, QMove>> path;  // (state before move, move)
    {
      std::vector<int32_t> up;
      for (int32_t at = ida; at >= 0; at = nodes[0][at].parent) up.push_back(at);
      std::reverse(up.begin(), up.end());
      for (size_t k = 1; k < up.size(); ++k) {
        path.push_back({q_decode(*nodes[0][up[k - 1]].key), nodes[0][up[k]].move});
      }
    }
    for (int32_t at = idb; nodes[1][at].parent >= 0; at = nodes[1][at].parent) {
      QState parent = q_decode(*nodes[1][nodes[1][at].parent].key);
      QState child = q_decode(*nodes[1][at].key);
      path.push_back({std::move(child), inverse_qmove(nodes[1][at].move, parent)});
    }

    RewriteScript script;
    script.n = n;
    script.start = a;
    script.end = b;
    Assembler as(ctx, script.steps);
    as.st.anchors = roots[0].anchors;
    as.st.pid = roots[0].segs;
    as.st.w = runs[0];
    for (size_t j = 0; j < as.st.w.size(); ++j) as.restage(j);
    for (const auto& [state, move] : path) {
      (void)state;
      as.expand(move);
    }
    for (size_t j = 0; j < as.st.w.size(); ++j) as.set_form(j, runs[1][j]);
    return EquivResult{true, std::move(script), explored};
  };

  if (*nodes[0][0].key == *nodes[1][0].key) return build(0, 0, states);

  std::vector<QMove> moves;
  size_t depth[2] = {0, 0};
  while (!frontier[0].empty() && !frontier[1].empty()) {
    if (depth[0] + depth[1] >= budget.max_depth) break;
    int side = (frontier[0].size() <= frontier[1].size()) ? 0 : 1;
    int other = 1 - side;
    std::vector<int32_t> next;
    for (int32_t id : frontier[side]) {
      QState s = q_decode(*nodes[side][id].key);
      enumerate_qmoves(ctx, s, moves);
      for (const QMove& m : moves) {
        QState t = apply_qmove(ctx, s, m);
        if (ctx.minlen(t) > ctx.cap) continue;
        std::string key = q_encode(t);
        if (seen[side].count(key)) continue;
        if (states >= budget.max_states) return EquivResult{false, std::nullopt, states};
        int32_t nid = static_cast<int32_t>(nodes[side].size());
        auto [it, fresh] = seen[side].emplace(std::move(key), nid);
        (void)fresh;
        nodes[side].push_back(Node{id, m, &it->first});
        ++states;
        auto hit = seen[other].find(it->first);
        if (hit != seen[other].end()) {
          return side == 0 ? build(nid, hit->second, states)
                           : build(hit->second, nid, states);
        }
        next.push_back(nid);
      }
    }
    frontier[side] = std::move(next);
    ++depth[side];
  }
  return EquivResult{false, std::nullopt, states};
}

}  // namespace vsb
