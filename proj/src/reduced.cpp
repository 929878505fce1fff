#include "vsb/reduced.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace vsb {

BraidWord expand_to_reduced(const BraidWord& w) {
  BraidWord out;
  out.n = w.n;
  for (const Letter& l : w.letters) {
    if (l.kind == LetterKind::Virtual || l.index == 1) {
      out.letters.push_back(l);
      continue;
    }
    int i = l.index - 1;
    for (int k = i; k >= 1; --k) out.letters.push_back(virt(k));
    for (int k = i + 1; k >= 2; --k) out.letters.push_back(virt(k));
    out.letters.push_back(Letter{l.kind, 1});
    for (int k = 2; k <= i + 1; ++k) out.letters.push_back(virt(k));
    for (int k = 1; k <= i; ++k) out.letters.push_back(virt(k));
  }
  return out;
}

BraidWord shift_identity_side(int from, int to, int n) {
  if (from == to || from < 1 || to < 1 || from > n - 1 || to > n - 1)
    throw domain_error("shift identity needs distinct indices within 1..n-1");
  BraidWord w;
  w.n = n;
  int step = (to >= from) ? 1 : -1;
  for (int k = from; k != to; k += step) w.letters.push_back(virt(k));
  for (int k = to; k != from; k -= step) w.letters.push_back(virt(k));
  w.letters.push_back(virt(from));
  return w;
}

EquivResult verify_shift_identity(int i, int j, int n, const SearchBudget& budget) {
  if (i == j || std::abs(i - j) < 2)
    throw domain_error("shift identity requires |i-j| >= 2");
  BraidWord lhs = shift_identity_side(i, j, n);
  BraidWord rhs = shift_identity_side(j, i, n);
  return equivalent_bounded(lhs, rhs, virtual_reduced_relation_set(n), budget);
}

namespace {

void lemma_require(bool cond, const std::string& msg) {
  if (!cond) throw domain_error(msg);
}

BraidWord make_word(int n, std::vector<Letter> letters) {
  BraidWord w;
  w.n = n;
  w.letters = std::move(letters);
  return w;
}

}  // namespace

std::pair<BraidWord, BraidWord> lemma_sides(int lemma, const std::vector<int>& indices,
                                            const std::string& variant, int n) {
  const std::string id = "identity " + std::to_string(lemma);
  auto need_indices = [&](size_t k) {
    lemma_require(indices.size() == k,
                  id + " takes " + std::to_string(k) + (k == 1 ? " index" : " indices"));
  };
  auto in_range = [&](int i) {
    lemma_require(i >= 1 && i <= n - 1,
                  id + ": index " + std::to_string(i) + " out of 1.." + std::to_string(n - 1));
  };
  auto no_variant = [&]() { lemma_require(variant.empty(), id + " takes no variant"); };
  switch (lemma) {
    case 1: {
      need_indices(2);
      no_variant();
      int i = indices[0], j = indices[1];
      in_range(i);
      in_range(j);
      lemma_require(std::abs(i - j) >= 2, id + " requires |i-j| >= 2");
      return {shift_identity_side(i, j, n), shift_identity_side(j, i, n)};
    }
    case 2: {
      need_indices(2);
      int i = indices[0], j = indices[1];
      in_range(i);
      in_range(j);
      lemma_require(std::abs(i - j) > 1, id + " requires |i-j| > 1");
      Letter g{};
      if (variant == "sigma")
        g = sigma(i);
      else if (variant == "tau")
        g = tau(i);
      else
        throw domain_error(id + " variant must be sigma or tau");
      return {make_word(n, {g, virt(j)}), make_word(n, {virt(j), g})};
    }
    case 3: {
      need_indices(2);
      int i = indices[0], j = indices[1];
      in_range(i);
      in_range(j);
      lemma_require(std::abs(i - j) > 1, id + " requires |i-j| > 1");
      Letter gi{}, gj{};
      if (variant == "sigma-sigma") {
        gi = sigma(i);
        gj = sigma(j);
      } else if (variant == "tau-tau") {
        gi = tau(i);
        gj = tau(j);
      } else if (variant == "sigma-tau") {
        gi = sigma(i);
        gj = tau(j);
      } else {
        throw domain_error(id + " variant must be sigma-sigma, tau-tau or sigma-tau");
      }
      return {make_word(n, {gi, gj}), make_word(n, {gj, gi})};
    }
    case 4: {
      need_indices(2);
      no_variant();
      int i = indices[0], j = indices[1];
      in_range(i);
      in_range(j);
      lemma_require(std::abs(i - j) == 1, id + " requires |i-j| = 1");
      return {make_word(n, {sigma(i), sigma(j), sigma(i)}),
              make_word(n, {sigma(j), sigma(i), sigma(j)})};
    }
    case 5: {
      need_indices(2);
      no_variant();
      int i = indices[0], j = indices[1];
      in_range(i);
      in_range(j);
      lemma_require(std::abs(i - j) == 1, id + " requires |i-j| = 1");
      return {make_word(n, {sigma(j), sigma(i), tau(j)}),
              make_word(n, {tau(i), sigma(j), sigma(i)})};
    }
    case 6: {
      need_indices(1);
      no_variant();
      int i = indices[0];
      in_range(i);
      return {make_word(n, {sigma(i), sigma_inv(i)}), make_word(n, {})};
    }
    case 7: {
      need_indices(1);
      no_variant();
      int i = indices[0];
      in_range(i);
      return {make_word(n, {tau(i), sigma(i)}), make_word(n, {sigma(i), tau(i)})};
    }
    case 8: {
      need_indices(2);
      int i = indices[0], j = indices[1];
      in_range(i);
      in_range(j);
      lemma_require(std::abs(i - j) == 1, id + " requires |i-j| = 1");
      Letter gj{}, gi{};
      if (variant == "sigma") {
        gj = sigma(j);
        gi = sigma(i);
      } else if (variant == "tau") {
        gj = tau(j);
        gi = tau(i);
      } else {
        throw domain_error(id + " variant must be sigma or tau");
      }
      return {make_word(n, {virt(i), gj, virt(i)}), make_word(n, {virt(j), gi, virt(j)})};
    }
    default:
      throw domain_error("unknown identity number " + std::to_string(lemma));
  }
}

std::string lemma_script_filename(int lemma, const std::vector<int>& indices,
                                  const std::string& variant) {
  std::string name = "lemma" + std::to_string(lemma);
  if (!variant.empty()) {
    std::string v = variant;
    for (char& c : v)
      if (c == '-') c = '_';
    name += "_" + v;
  }
  for (int i : indices) name += "_" + std::to_string(i);
  return name + ".json";
}

LemmaResult verify_lemma(int lemma, const std::vector<int>& indices,
                         const std::string& variant, int n, LemmaMode mode,
                         const SearchBudget& budget, const std::string& scripts_dir) {
  auto sides = lemma_sides(lemma, indices, variant, n);
  BraidWord ea = expand_to_reduced(sides.first);
  BraidWord eb = expand_to_reduced(sides.second);

  if (mode == LemmaMode::Script) {
    std::string path = scripts_dir + "/" + lemma_script_filename(lemma, indices, variant);
    std::ifstream in(path);
    if (!in) return {false, "missing bundled derivation: " + path};
    std::stringstream buf;
    buf << in.rdbuf();
    RewriteScript script;
    try {
      script = script_from_json(buf.str());
    } catch (const std::exception& e) {
      return {false, "unreadable bundled derivation " + path + ": " + e.what()};
    }
    if (script.n > n)
      return {false, "bundled derivation needs n >= " + std::to_string(script.n)};
    if (script.start.letters != ea.letters || script.end.letters != eb.letters)
      return {false, "bundled endpoints differ from the side expansions"};
    CheckResult res = check_rewrite_script(script, reduced_relation_set(script.n));
    if (!res.valid)
      return {false,
              "replay failed at step " + std::to_string(res.failed_step) + ": " + res.reason};
    return {true, "replayed " + std::to_string(script.steps.size()) + " steps"};
  }

  std::vector<Relation> rels = reduced_relation_set(n);
  size_t states = 0;
  auto run = [&](const BraidWord& a, const BraidWord& b) {
    EquivResult r = equivalent_bounded(a, b, rels, budget);
    states += r.states_explored;
    return r.equivalent;
  };
  bool ok = run(ea, eb);
  if (ok && lemma == 6) {
    // the other cancellation order
    BraidWord rev = make_word(n, {sigma_inv(indices[0]), sigma(indices[0])});
    ok = run(expand_to_reduced(rev), eb);
  }
  if (ok) return {true, "connected (" + std::to_string(states) + " states)"};
  return {false, "not connected within budget (" + std::to_string(states) + " states)"};
}

const std::vector<LemmaInstance>& lemma_catalogue() {
  static const std::vector<LemmaInstance> table = {
      {1, {1, 3}, "", LemmaMode::Script},
      {1, {1, 4}, "", LemmaMode::Script},
      {1, {2, 4}, "", LemmaMode::Script},
      {1, {3, 1}, "", LemmaMode::Script},
      {1, {4, 1}, "", LemmaMode::Script},
      {1, {4, 2}, "", LemmaMode::Script},
      {2, {1, 3}, "sigma", LemmaMode::Script},
      {2, {2, 4}, "sigma", LemmaMode::Script},
      {2, {3, 1}, "sigma", LemmaMode::Script},
      {2, {4, 2}, "sigma", LemmaMode::Script},
      {2, {1, 3}, "tau", LemmaMode::Script},
      {2, {2, 4}, "tau", LemmaMode::Script},
      {2, {3, 1}, "tau", LemmaMode::Script},
      {2, {4, 2}, "tau", LemmaMode::Script},
      {3, {1, 3}, "sigma-sigma", LemmaMode::Script},
      {3, {3, 1}, "sigma-sigma", LemmaMode::Script},
      {3, {1, 3}, "sigma-tau", LemmaMode::Search},
      {3, {3, 1}, "sigma-tau", LemmaMode::Search},
      {3, {1, 3}, "tau-tau", LemmaMode::Script},
      {3, {3, 1}, "tau-tau", LemmaMode::Script},
      {4, {1, 2}, "", LemmaMode::Script},
      {4, {2, 1}, "", LemmaMode::Script},
      {4, {2, 3}, "", LemmaMode::Script},
      {4, {3, 2}, "", LemmaMode::Script},
      {5, {1, 2}, "", LemmaMode::Script},
      {5, {2, 3}, "", LemmaMode::Script},
      {6, {1}, "", LemmaMode::Search},
      {6, {2}, "", LemmaMode::Search},
      {6, {3}, "", LemmaMode::Search},
      {6, {4}, "", LemmaMode::Search},
      {7, {1}, "", LemmaMode::Search},
      {7, {2}, "", LemmaMode::Search},
      {7, {3}, "", LemmaMode::Search},
      {7, {4}, "", LemmaMode::Search},
      {8, {1, 2}, "sigma", LemmaMode::Script},
      {8, {2, 1}, "sigma", LemmaMode::Script},
      {8, {2, 3}, "sigma", LemmaMode::Script},
      {8, {3, 2}, "sigma", LemmaMode::Script},
      {8, {1, 2}, "tau", LemmaMode::Script},
      {8, {2, 1}, "tau", LemmaMode::Script},
      {8, {2, 3}, "tau", LemmaMode::Script},
      {8, {3, 2}, "tau", LemmaMode::Script},
  };
  return table;
}

}  // namespace vsb
