#include "vsb/markov.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace vsb {

namespace {

const std::vector<Relation>& cached_relation_set(int n) {
  static std::map<int, std::vector<Relation>> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, n >= 2 ? relation_set(n) : std::vector<Relation>{}).first;
  return it->second;
}

bool no_letter_with_index(const std::vector<Letter>& letters, size_t count, int index) {
  for (size_t k = 0; k < count; ++k)
    if (letters[k].index == index) return false;
  return true;
}

bool tail_matches(const BraidWord& w, const std::vector<Letter>& pattern) {
  if (w.letters.size() < pattern.size()) return false;
  size_t off = w.letters.size() - pattern.size();
  for (size_t k = 0; k < pattern.size(); ++k)
    if (!(w.letters[off + k] == pattern[k])) return false;
  return true;
}

BraidWord replace_tail(const BraidWord& w, size_t count, const std::vector<Letter>& repl) {
  BraidWord out;
  out.n = w.n;
  out.letters.assign(w.letters.begin(), w.letters.end() - count);
  out.letters.insert(out.letters.end(), repl.begin(), repl.end());
  return out;
}

Letter transported_letter(const MarkovMove& move, int n) {
  if (move.index < 1 || move.index > n - 1)
    throw domain_error("generator index out of range for conjugation");
  switch (move.kind) {
    case MarkovKind::ConjReal:
      return move.sign >= 0 ? sigma(move.index) : sigma_inv(move.index);
    case MarkovKind::ConjVirtual:
      return virt(move.index);
    default:
      return tau(move.index);
  }
}

BraidWord transport(const BraidWord& w, const MarkovMove& move) {
  Letter g = transported_letter(move, w.n);
  if (w.letters.empty()) throw domain_error("cannot conjugate the empty word");
  BraidWord out;
  out.n = w.n;
  if (move.direction == MarkovDirection::Forward) {
    if (!(w.letters.front() == g))
      throw domain_error("word does not begin with the designated letter");
    out.letters.assign(w.letters.begin() + 1, w.letters.end());
    out.letters.push_back(g);
  } else {
    if (!(w.letters.back() == g))
      throw domain_error("word does not end with the designated letter");
    out.letters.push_back(g);
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end() - 1);
  }
  return out;
}

BraidWord stab_right(const BraidWord& w, const Letter& g) {
  BraidWord out = embed_right(w);
  out.letters.push_back(g);
  return out;
}

// removes the trailing letter, which must equal g and be the only letter
// touching the last strand, then drops that strand
BraidWord unstab_right(const BraidWord& w, const Letter& g) {
  if (w.n < 2) throw domain_error("no strand to remove");
  if (w.letters.empty() || !(w.letters.back() == g))
    throw domain_error("word does not end with the designated letter");
  if (!no_letter_with_index(w.letters, w.letters.size() - 1, w.n - 1))
    throw domain_error("another letter still uses the last strand");
  BraidWord out;
  out.n = w.n - 1;
  out.letters.assign(w.letters.begin(), w.letters.end() - 1);
  return out;
}

std::vector<Letter> under_thread_right_tail(int n) {
  return {sigma_inv(n - 1), virt(n - 2), sigma(n - 1)};
}

std::vector<Letter> under_thread_left_tail() { return {sigma(1), virt(2), sigma_inv(1)}; }

}  // namespace

std::string markov_kind_name(MarkovKind k) {
  switch (k) {
    case MarkovKind::ConjReal: return "ConjReal";
    case MarkovKind::ConjVirtual: return "ConjVirtual";
    case MarkovKind::CommuteSingular: return "CommuteSingular";
    case MarkovKind::StabRealRight: return "StabRealRight";
    case MarkovKind::StabVirtualRight: return "StabVirtualRight";
    case MarkovKind::DestabRight: return "DestabRight";
    case MarkovKind::UnderThreadRight: return "UnderThreadRight";
    case MarkovKind::UnderThreadLeft: return "UnderThreadLeft";
    case MarkovKind::RsThreadRight: return "RsThreadRight";
    default: return "RsThreadLeft";
  }
}

MarkovKind markov_kind_from_name(const std::string& name) {
  static const std::map<std::string, MarkovKind> table = {
      {"ConjReal", MarkovKind::ConjReal},
      {"ConjVirtual", MarkovKind::ConjVirtual},
      {"CommuteSingular", MarkovKind::CommuteSingular},
      {"StabRealRight", MarkovKind::StabRealRight},
      {"StabVirtualRight", MarkovKind::StabVirtualRight},
      {"DestabRight", MarkovKind::DestabRight},
      {"UnderThreadRight", MarkovKind::UnderThreadRight},
      {"UnderThreadLeft", MarkovKind::UnderThreadLeft},
      {"RsThreadRight", MarkovKind::RsThreadRight},
      {"RsThreadLeft", MarkovKind::RsThreadLeft},
  };
  auto it = table.find(name);
  if (it == table.end()) throw domain_error("unknown Markov move '" + name + "'");
  return it->second;
}

std::string markov_direction_name(MarkovDirection d) {
  return d == MarkovDirection::Forward ? "Forward" : "Inverse";
}

MarkovDirection markov_direction_from_name(const std::string& name) {
  if (name == "Forward") return MarkovDirection::Forward;
  if (name == "Inverse") return MarkovDirection::Inverse;
  throw domain_error("unknown Markov direction '" + name + "'");
}

BraidWord left_shift(const BraidWord& w) {
  BraidWord out;
  out.n = w.n + 1;
  out.letters.reserve(w.letters.size());
  for (const Letter& l : w.letters) out.letters.push_back(Letter{l.kind, l.index + 1});
  return out;
}

BraidWord embed_right(const BraidWord& w) {
  BraidWord out = w;
  out.n = w.n + 1;
  return out;
}

BraidWord apply_markov(const BraidWord& w, const MarkovMove& move) {
  bool fwd = move.direction == MarkovDirection::Forward;
  switch (move.kind) {
    case MarkovKind::ConjReal:
    case MarkovKind::ConjVirtual:
    case MarkovKind::CommuteSingular:
      return transport(w, move);
    case MarkovKind::StabRealRight: {
      Letter g = move.sign >= 0 ? sigma(w.n + (fwd ? 0 : -1)) : sigma_inv(w.n + (fwd ? 0 : -1));
      return fwd ? stab_right(w, g) : unstab_right(w, g);
    }
    case MarkovKind::StabVirtualRight:
      return fwd ? stab_right(w, virt(w.n)) : unstab_right(w, virt(w.n - 1));
    case MarkovKind::DestabRight: {
      if (!fwd)
        throw domain_error("destabilization has no inverse direction; use a stabilization");
      if (w.n < 2 || w.letters.empty()) throw domain_error("no strand to remove");
      Letter last = w.letters.back();
      if (last.index != w.n - 1 ||
          (last.kind != LetterKind::Virtual && last.kind != LetterKind::RealPos &&
           last.kind != LetterKind::RealNeg))
        throw domain_error("word does not end in a removable letter on the last strand");
      return unstab_right(w, last);
    }
    case MarkovKind::UnderThreadRight: {
      if (fwd) {
        if (w.n < 2) throw domain_error("threading needs at least two strands");
        BraidWord out = embed_right(w);
        for (const Letter& l : under_thread_right_tail(out.n)) out.letters.push_back(l);
        return out;
      }
      if (w.n < 3) throw domain_error("word is too narrow to unthread");
      std::vector<Letter> tail = under_thread_right_tail(w.n);
      if (!tail_matches(w, tail)) throw domain_error("word does not end with the thread");
      if (!no_letter_with_index(w.letters, w.letters.size() - 3, w.n - 1))
        throw domain_error("another letter still uses the last strand");
      BraidWord out = replace_tail(w, 3, {});
      out.n = w.n - 1;
      return out;
    }
    case MarkovKind::UnderThreadLeft: {
      if (fwd) {
        if (w.n < 2) throw domain_error("threading needs at least two strands");
        BraidWord out = left_shift(w);
        for (const Letter& l : under_thread_left_tail()) out.letters.push_back(l);
        return out;
      }
      if (w.n < 3) throw domain_error("word is too narrow to unthread");
      std::vector<Letter> tail = under_thread_left_tail();
      if (!tail_matches(w, tail)) throw domain_error("word does not end with the thread");
      if (!no_letter_with_index(w.letters, w.letters.size() - 3, 1))
        throw domain_error("another letter still uses the first strand");
      BraidWord out;
      out.n = w.n - 1;
      for (size_t k = 0; k + 3 < w.letters.size(); ++k) {
        const Letter& l = w.letters[k];
        out.letters.push_back(Letter{l.kind, l.index - 1});
      }
      return out;
    }
    case MarkovKind::RsThreadRight: {
      if (w.n < 3) throw domain_error("threading needs at least three strands");
      Letter s = move.sign >= 0 ? sigma(w.n - 1) : sigma_inv(w.n - 1);
      std::vector<Letter> from = {tau(w.n - 1), virt(w.n - 2), s};
      std::vector<Letter> to = {s, virt(w.n - 2), tau(w.n - 1)};
      if (!fwd) std::swap(from, to);
      if (!tail_matches(w, from)) throw domain_error("word does not end with the thread");
      if (!no_letter_with_index(w.letters, w.letters.size() - 3, w.n - 1))
        throw domain_error("another letter still uses the last strand");
      return replace_tail(w, 3, to);
    }
    default: {  // RsThreadLeft
      if (w.n < 3) throw domain_error("threading needs at least three strands");
      Letter s = move.sign >= 0 ? sigma(1) : sigma_inv(1);
      std::vector<Letter> from = {tau(1), virt(2), s};
      std::vector<Letter> to = {s, virt(2), tau(1)};
      if (!fwd) std::swap(from, to);
      if (!tail_matches(w, from)) throw domain_error("word does not end with the thread");
      if (!no_letter_with_index(w.letters, w.letters.size() - 3, 1))
        throw domain_error("another letter still uses the first strand");
      return replace_tail(w, 3, to);
    }
  }
}

namespace {

MarkovStep markov_step(MarkovKind kind, MarkovDirection dir, int sign = +1, int index = 1) {
  MarkovStep s;
  s.is_markov = true;
  s.move = MarkovMove{kind, dir, sign, index};
  return s;
}

// Enumerates every word one relation rewrite or one Markov move away,
// pairing each with the step that produced it. Destabilizations are
// reported as Inverse stabilizations so every step can be inverted by
// flipping its direction.
template <class Visit>
void for_each_markov_neighbor(const BraidWord& w, const SearchBudget& caps, Visit&& visit) {
  size_t m = w.letters.size();
  auto len_ok = [&](size_t len) {
    return caps.max_word_length == 0 || len <= caps.max_word_length;
  };
  bool can_widen = caps.max_strands == 0 || static_cast<size_t>(w.n) + 1 <= caps.max_strands;

  // one-step relation rewrites
  for (const Relation& rel : cached_relation_set(w.n)) {
    for (Direction dir : {Direction::L2R, Direction::R2L}) {
      const std::vector<Letter>& src = dir == Direction::L2R ? rel.lhs : rel.rhs;
      const std::vector<Letter>& dst = dir == Direction::L2R ? rel.rhs : rel.lhs;
      if (!len_ok(m - src.size() + dst.size())) continue;
      for (size_t pos = 0; pos + src.size() <= m; ++pos) {
        bool match = true;
        for (size_t k = 0; k < src.size() && match; ++k)
          match = w.letters[pos + k] == src[k];
        if (!match) continue;
        MarkovStep step;
        step.rel = ScriptStep{rel.family, rel.params, pos, dir};
        visit(apply_relation(w, rel, pos, dir), step);
      }
    }
  }

  // conjugation and commuting as letter transport
  if (m >= 1) {
    for (MarkovDirection dir : {MarkovDirection::Forward, MarkovDirection::Inverse}) {
      const Letter& l =
          dir == MarkovDirection::Forward ? w.letters.front() : w.letters.back();
      MarkovKind kind = MarkovKind::ConjVirtual;
      int sign = +1;
      switch (l.kind) {
        case LetterKind::RealPos: kind = MarkovKind::ConjReal; break;
        case LetterKind::RealNeg: kind = MarkovKind::ConjReal; sign = -1; break;
        case LetterKind::Singular: kind = MarkovKind::CommuteSingular; break;
        case LetterKind::Virtual: break;
      }
      MarkovStep step = markov_step(kind, dir, sign, l.index);
      visit(apply_markov(w, step.move), step);
    }
  }

  // stabilizations
  if (can_widen && len_ok(m + 1)) {
    for (int sign : {+1, -1}) {
      MarkovStep step = markov_step(MarkovKind::StabRealRight, MarkovDirection::Forward, sign);
      visit(apply_markov(w, step.move), step);
    }
    MarkovStep step = markov_step(MarkovKind::StabVirtualRight, MarkovDirection::Forward);
    visit(apply_markov(w, step.move), step);
  }

  // destabilizations, phrased as Inverse stabilizations
  if (w.n >= 2 && m >= 1 && w.letters.back().index == w.n - 1 &&
      no_letter_with_index(w.letters, m - 1, w.n - 1)) {
    const Letter& last = w.letters.back();
    if (last.kind == LetterKind::Virtual)
      visit(apply_markov(w, MarkovMove{MarkovKind::StabVirtualRight, MarkovDirection::Inverse}),
            markov_step(MarkovKind::StabVirtualRight, MarkovDirection::Inverse));
    else if (last.kind == LetterKind::RealPos || last.kind == LetterKind::RealNeg) {
      int sign = last.kind == LetterKind::RealPos ? +1 : -1;
      visit(apply_markov(w, MarkovMove{MarkovKind::StabRealRight, MarkovDirection::Inverse, sign}),
            markov_step(MarkovKind::StabRealRight, MarkovDirection::Inverse, sign));
    }
  }

  // threading moves
  if (w.n >= 2 && can_widen && len_ok(m + 3)) {
    for (MarkovKind kind : {MarkovKind::UnderThreadRight, MarkovKind::UnderThreadLeft}) {
      MarkovStep step = markov_step(kind, MarkovDirection::Forward);
      visit(apply_markov(w, step.move), step);
    }
  }
  if (w.n >= 3 && m >= 3) {
    if (tail_matches(w, under_thread_right_tail(w.n)) &&
        no_letter_with_index(w.letters, m - 3, w.n - 1)) {
      MarkovStep step = markov_step(MarkovKind::UnderThreadRight, MarkovDirection::Inverse);
      visit(apply_markov(w, step.move), step);
    }
    if (tail_matches(w, under_thread_left_tail()) && no_letter_with_index(w.letters, m - 3, 1)) {
      MarkovStep step = markov_step(MarkovKind::UnderThreadLeft, MarkovDirection::Inverse);
      visit(apply_markov(w, step.move), step);
    }
    for (int sign : {+1, -1}) {
      for (MarkovDirection dir : {MarkovDirection::Forward, MarkovDirection::Inverse}) {
        for (MarkovKind kind : {MarkovKind::RsThreadRight, MarkovKind::RsThreadLeft}) {
          MarkovMove move{kind, dir, sign};
          int hi = kind == MarkovKind::RsThreadRight ? w.n - 1 : 1;
          int lo = kind == MarkovKind::RsThreadRight ? w.n - 2 : 2;
          Letter s = sign >= 0 ? sigma(hi) : sigma_inv(hi);
          std::vector<Letter> from = {tau(hi), virt(lo), s};
          std::vector<Letter> to = {s, virt(lo), tau(hi)};
          if (dir == MarkovDirection::Inverse) std::swap(from, to);
          if (!tail_matches(w, from) || !no_letter_with_index(w.letters, m - 3, hi)) continue;
          MarkovStep step;
          step.is_markov = true;
          step.move = move;
          visit(apply_markov(w, move), step);
        }
      }
    }
  }
}

MarkovStep inverted(const MarkovStep& s) {
  MarkovStep out = s;
  if (s.is_markov) {
    out.move.direction = s.move.direction == MarkovDirection::Forward
                             ? MarkovDirection::Inverse
                             : MarkovDirection::Forward;
  } else {
    out.rel.dir = s.rel.dir == Direction::L2R ? Direction::R2L : Direction::L2R;
  }
  return out;
}

}  // namespace

std::set<BraidWord> markov_neighbors(const BraidWord& w, const SearchBudget& caps) {
  std::set<BraidWord> out;
  for_each_markov_neighbor(w, caps,
                           [&](const BraidWord& nb, const MarkovStep&) { out.insert(nb); });
  return out;
}

SearchBudget default_markov_budget(const BraidWord& a, const BraidWord& b) {
  SearchBudget budget = default_budget(a, b);
  budget.max_strands = static_cast<size_t>(std::max(a.n, b.n)) + 2;
  return budget;
}

MarkovEquivResult markov_equivalent_bounded(const BraidWord& a, const BraidWord& b,
                                            const SearchBudget& budget_in) {
  SearchBudget defaults = default_markov_budget(a, b);
  SearchBudget budget = budget_in;
  if (budget.max_word_length == 0) budget.max_word_length = defaults.max_word_length;
  if (budget.max_states == 0) budget.max_states = defaults.max_states;
  if (budget.max_depth == 0) budget.max_depth = defaults.max_depth;
  if (budget.max_strands == 0) budget.max_strands = defaults.max_strands;

  MarkovEquivResult result;
  if (tau_count(a) != tau_count(b)) {
    result.provably_inequivalent = true;
    result.reason = "tau counts differ";
    return result;
  }
  if (closure_component_count(a) != closure_component_count(b)) {
    result.provably_inequivalent = true;
    result.reason = "closure component counts differ";
    return result;
  }
  if (a == b) {
    result.equivalent = true;
    result.trace = MarkovTrace{a, b, {}};
    result.states_explored = 1;
    return result;
  }

  std::map<BraidWord, std::pair<BraidWord, MarkovStep>> fpar, bpar;
  std::set<BraidWord> fseen{a}, bseen{b};
  std::vector<BraidWord> ffront{a}, bfront{b};
  size_t states = 2;
  std::optional<BraidWord> meet;

  auto assemble = [&](const BraidWord& x) {
    std::vector<MarkovStep> steps;
    BraidWord cur = x;
    while (!(cur == a)) {
      const auto& [prev, step] = fpar.at(cur);
      steps.push_back(step);
      cur = prev;
    }
    std::reverse(steps.begin(), steps.end());
    cur = x;
    while (!(cur == b)) {
      const auto& [prev, step] = bpar.at(cur);
      steps.push_back(inverted(step));
      cur = prev;
    }
    return MarkovTrace{a, b, std::move(steps)};
  };

  for (size_t depth = 0; depth < budget.max_depth && !meet; ++depth) {
    if (ffront.empty() && bfront.empty()) break;
    bool from_a = !ffront.empty() && (bfront.empty() || ffront.size() <= bfront.size());
    auto& front = from_a ? ffront : bfront;
    auto& seen = from_a ? fseen : bseen;
    auto& parents = from_a ? fpar : bpar;
    auto& other = from_a ? bseen : fseen;
    std::vector<BraidWord> next;
    for (const BraidWord& cur : front) {
      if (meet || states >= budget.max_states) break;
      for_each_markov_neighbor(cur, budget, [&](const BraidWord& nb, const MarkovStep& step) {
        if (meet || states >= budget.max_states) return;
        if (!seen.insert(nb).second) return;
        parents.emplace(nb, std::make_pair(cur, step));
        next.push_back(nb);
        ++states;
        if (other.count(nb)) meet = nb;
      });
    }
    front = std::move(next);
  }

  result.states_explored = states;
  if (meet) {
    result.equivalent = true;
    result.trace = assemble(*meet);
  }
  return result;
}

MarkovCheckResult check_markov_trace(const MarkovTrace& trace) {
  BraidWord cur = trace.start;
  for (size_t k = 0; k < trace.steps.size(); ++k) {
    const MarkovStep& step = trace.steps[k];
    try {
      if (step.is_markov) {
        cur = apply_markov(cur, step.move);
      } else {
        const Relation* found = nullptr;
        for (const Relation& rel : cached_relation_set(cur.n))
          if (rel.family == step.rel.rel && rel.params == step.rel.params) {
            found = &rel;
            break;
          }
        if (!found)
          return {false, k, "no relation " + step.rel.rel + " at this strand count"};
        cur = apply_relation(cur, *found, step.rel.pos, step.rel.dir);
      }
    } catch (const domain_error& e) {
      return {false, k, e.what()};
    }
  }
  if (!(cur == trace.end)) return {false, trace.steps.size(), "endpoint mismatch"};
  return {true, 0, ""};
}

MarkovTrace markov_trace_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw domain_error(std::string("bad trace JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("end_n") || !j.contains("start") ||
      !j.contains("end") || !j.contains("steps") || !j["steps"].is_array())
    throw domain_error("trace JSON needs n, end_n, start, end and a steps array");
  MarkovTrace t;
  try {
    t.start = parse_word(j["start"].get<std::string>(), j["n"].get<int>());
    t.end = parse_word(j["end"].get<std::string>(), j["end_n"].get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw domain_error(std::string("bad trace JSON: ") + e.what());
  }
  for (const auto& js : j["steps"]) {
    if (!js.is_object() || !js.contains("kind") || !js["kind"].is_string())
      throw domain_error("each trace step needs a string \"kind\"");
    std::string kind = js["kind"].get<std::string>();
    MarkovStep step;
    try {
      if (kind == "relation") {
        step.is_markov = false;
        step.rel.rel = js.at("rel").get<std::string>();
        step.rel.params = js.at("params").get<std::vector<int>>();
        step.rel.pos = js.at("pos").get<size_t>();
        step.rel.dir = direction_from_name(js.at("dir").get<std::string>());
      } else if (kind == "markov") {
        step.is_markov = true;
        step.move.kind = markov_kind_from_name(js.at("move").get<std::string>());
        step.move.direction = markov_direction_from_name(js.at("dir").get<std::string>());
        if (js.contains("sign")) step.move.sign = js["sign"].get<int>();
        if (js.contains("index")) step.move.index = js["index"].get<int>();
      } else {
        throw domain_error("unknown trace step kind '" + kind + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw domain_error(std::string("bad trace step: ") + e.what());
    }
    t.steps.push_back(step);
  }
  return t;
}

std::string markov_trace_to_json(const MarkovTrace& trace) {
  nlohmann::ordered_json j;
  j["n"] = trace.start.n;
  j["end_n"] = trace.end.n;
  j["start"] = format_word(trace.start);
  j["end"] = format_word(trace.end);
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const MarkovStep& s : trace.steps) {
    nlohmann::ordered_json js;
    if (s.is_markov) {
      js["kind"] = "markov";
      js["move"] = markov_kind_name(s.move.kind);
      js["dir"] = markov_direction_name(s.move.direction);
      if (s.move.kind == MarkovKind::ConjReal || s.move.kind == MarkovKind::StabRealRight ||
          s.move.kind == MarkovKind::RsThreadRight || s.move.kind == MarkovKind::RsThreadLeft)
        js["sign"] = s.move.sign;
      if (s.move.kind == MarkovKind::ConjReal || s.move.kind == MarkovKind::ConjVirtual ||
          s.move.kind == MarkovKind::CommuteSingular)
        js["index"] = s.move.index;
    } else {
      js["kind"] = "relation";
      js["rel"] = s.rel.rel;
      js["params"] = s.rel.params;
      js["pos"] = s.rel.pos;
      js["dir"] = direction_name(s.rel.dir);
    }
    steps.push_back(js);
  }
  j["steps"] = steps;
  return j.dump(2) + "\n";
}

}  // namespace vsb
