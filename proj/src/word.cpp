#include "vsb/word.hpp"

#include <json.hpp>

#include <numeric>
#include <sstream>

namespace vsb {

Letter sigma(int i) { return Letter{LetterKind::RealPos, i}; }
Letter sigma_inv(int i) { return Letter{LetterKind::RealNeg, i}; }
Letter tau(int i) { return Letter{LetterKind::Singular, i}; }
Letter virt(int i) { return Letter{LetterKind::Virtual, i}; }

std::string letter_token(const Letter& l) {
  char c = '?';
  switch (l.kind) {
    case LetterKind::RealPos: c = 's'; break;
    case LetterKind::RealNeg: c = 'S'; break;
    case LetterKind::Singular: c = 't'; break;
    case LetterKind::Virtual: c = 'v'; break;
  }
  return std::string(1, c) + std::to_string(l.index);
}

BraidWord parse_word(const std::string& text, int n) {
  if (n < 1) throw domain_error("strand count must be at least 1");
  BraidWord w;
  w.n = n;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;  // identity token contributes no letters
    if (tok.size() < 2) throw domain_error("malformed token '" + tok + "'");
    LetterKind kind;
    switch (tok[0]) {
      case 's': kind = LetterKind::RealPos; break;
      case 'S': kind = LetterKind::RealNeg; break;
      case 't': kind = LetterKind::Singular; break;
      case 'v': kind = LetterKind::Virtual; break;
      default: throw domain_error("malformed token '" + tok + "'");
    }
    int idx = 0;
    for (size_t k = 1; k < tok.size(); ++k) {
      if (tok[k] < '0' || tok[k] > '9') throw domain_error("malformed token '" + tok + "'");
      idx = idx * 10 + (tok[k] - '0');
      if (idx > 1000) throw domain_error("index out of range in token '" + tok + "'");
    }
    if (idx < 1 || idx > n - 1)
      throw domain_error("index " + std::to_string(idx) + " out of range for n=" +
                         std::to_string(n) + " in token '" + tok + "'");
    w.letters.push_back(Letter{kind, idx});
  }
  return w;
}

std::string format_word(const BraidWord& w) {
  if (w.letters.empty()) return "1";
  std::string out;
  for (size_t k = 0; k < w.letters.size(); ++k) {
    if (k) out += ' ';
    out += letter_token(w.letters[k]);
  }
  return out;
}

BraidWord compose(const BraidWord& a, const BraidWord& b) {
  if (a.n != b.n)
    throw domain_error("cannot compose words with different strand counts (" +
                       std::to_string(a.n) + " vs " + std::to_string(b.n) + ")");
  BraidWord w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

BraidWord invert(const BraidWord& w) {
  BraidWord out;
  out.n = w.n;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    switch (it->kind) {
      case LetterKind::RealPos: out.letters.push_back(sigma_inv(it->index)); break;
      case LetterKind::RealNeg: out.letters.push_back(sigma(it->index)); break;
      case LetterKind::Virtual: out.letters.push_back(virt(it->index)); break;
      case LetterKind::Singular:
        throw domain_error("cannot invert a word containing t" + std::to_string(it->index) +
                           ": singular crossings are not invertible");
    }
  }
  return out;
}

namespace {
bool cancels(const Letter& a, const Letter& b) {
  if (a.index != b.index) return false;
  if (a.kind == LetterKind::Virtual && b.kind == LetterKind::Virtual) return true;
  if (a.kind == LetterKind::RealPos && b.kind == LetterKind::RealNeg) return true;
  if (a.kind == LetterKind::RealNeg && b.kind == LetterKind::RealPos) return true;
  return false;
}
}  // namespace

BraidWord free_reduce(const BraidWord& w) {
  BraidWord out;
  out.n = w.n;
  // Leftmost-first deletion to a fixpoint is equivalent to a single stack
  // pass: after deleting the leftmost pair the next candidate can only be
  // at or left of the deletion site.
  for (const Letter& l : w.letters) {
    if (!out.letters.empty() && cancels(out.letters.back(), l)) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

std::vector<int> permutation_image(const BraidWord& w) {
  // occupant[p] = strand currently at position p (all 0-based internally).
  std::vector<int> occupant(w.n);
  std::iota(occupant.begin(), occupant.end(), 0);
  for (const Letter& l : w.letters) {
    std::swap(occupant[l.index - 1], occupant[l.index]);
  }
  std::vector<int> result(w.n);
  for (int p = 0; p < w.n; ++p) result[occupant[p]] = p + 1;
  return result;
}

int tau_count(const BraidWord& w) {
  int c = 0;
  for (const Letter& l : w.letters) c += (l.kind == LetterKind::Singular);
  return c;
}

int sigma_exponent_sum(const BraidWord& w) {
  int c = 0;
  for (const Letter& l : w.letters) {
    if (l.kind == LetterKind::RealPos) ++c;
    if (l.kind == LetterKind::RealNeg) --c;
  }
  return c;
}

int closure_component_count(const BraidWord& w) {
  std::vector<int> pi = permutation_image(w);
  std::vector<char> seen(w.n, 0);
  int cycles = 0;
  for (int k = 0; k < w.n; ++k) {
    if (seen[k]) continue;
    ++cycles;
    int at = k;
    while (!seen[at]) {
      seen[at] = 1;
      at = pi[at] - 1;
    }
  }
  return cycles;
}

BraidWord word_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw domain_error(std::string("bad word JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("word") ||
      !j["n"].is_number_integer() || !j["word"].is_string())
    throw domain_error("word JSON must be an object { \"n\": int, \"word\": string }");
  return parse_word(j["word"].get<std::string>(), j["n"].get<int>());
}

std::string word_to_json(const BraidWord& w) {
  nlohmann::ordered_json j;
  j["n"] = w.n;
  j["word"] = format_word(w);
  return j.dump();
}

}  // namespace vsb
