// Braid words over the virtual singular braid monoid VSB_n:
// letter grammar, parsing/formatting, free reduction, and the
// permutation-level invariants used throughout the library.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsb {

// Domain error for parse failures and precondition violations.
// The CLI maps this to exit code 1.
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

enum class LetterKind : uint8_t {
  RealPos,   // s<i>  : positive real crossing, sigma_i
  RealNeg,   // S<i>  : negative real crossing, sigma_i^{-1}
  Singular,  // t<i>  : singular crossing, tau_i (not invertible)
  Virtual,   // v<i>  : virtual crossing, v_i
};

struct Letter {
  LetterKind kind;
  int index;  // 1-based strand index, 1 <= index <= n-1

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.kind == b.kind && a.index == b.index;
  }
  friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
  friend bool operator<(const Letter& a, const Letter& b) {
    if (a.index != b.index) return a.index < b.index;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  }
};

// A word in VSB_n. The strand count n is explicit and never inferred from
// the letter indices: the same letter sequence is a different monoid element
// in VSB_n and VSB_{n+1}.
struct BraidWord {
  int n = 1;
  std::vector<Letter> letters;

  friend bool operator==(const BraidWord& a, const BraidWord& b) {
    return a.n == b.n && a.letters == b.letters;
  }
  friend bool operator!=(const BraidWord& a, const BraidWord& b) { return !(a == b); }
  friend bool operator<(const BraidWord& a, const BraidWord& b) {
    if (a.n != b.n) return a.n < b.n;
    return a.letters < b.letters;
  }
  size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
};

// Single-letter constructors.
Letter sigma(int i);      // s<i>
Letter sigma_inv(int i);  // S<i>
Letter tau(int i);        // t<i>
Letter virt(int i);       // v<i>

std::string letter_token(const Letter& l);

// Parses the ASCII token grammar: whitespace-separated tokens s<i>, S<i>,
// t<i>, v<i>; the token "1" denotes the identity (empty) word. Throws
// domain_error on malformed tokens or indices outside 1..n-1.
BraidWord parse_word(const std::string& text, int n);

// Formats a word in the exact grammar parse_word accepts: single spaces,
// no trailing whitespace, "1" for the empty word.
std::string format_word(const BraidWord& w);

// Concatenation in the monoid. Requires a.n == b.n.
BraidWord compose(const BraidWord& a, const BraidWord& b);

// Reverses the word and flips real crossing signs. Throws domain_error if
// the word contains a singular letter: tau_i has no inverse in the monoid.
BraidWord invert(const BraidWord& w);

// Deletes canceling adjacent pairs (s_i S_i, S_i s_i, v_i v_i), always the
// leftmost reducible pair first, looping to a fixpoint.
BraidWord free_reduce(const BraidWord& w);

// Image of the word under the projection VSB_n -> S_n. Scanning the word
// top to bottom, each letter of index i swaps the strands currently at
// positions i and i+1. The result maps strand (start position, 1-based)
// to its end position: result[k-1] is the end position of strand k.
std::vector<int> permutation_image(const BraidWord& w);

// Number of singular letters.
int tau_count(const BraidWord& w);

// (#RealPos) - (#RealNeg).
int sigma_exponent_sum(const BraidWord& w);

// Number of cycles of permutation_image(w); equals the number of link
// components of the braid closure.
int closure_component_count(const BraidWord& w);

// JSON word file format: { "n": <int>, "word": "<token string>" }.
BraidWord word_from_json(const std::string& json_text);
std::string word_to_json(const BraidWord& w);

}  // namespace vsb
