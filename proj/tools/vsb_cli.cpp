// Command-line front end. One subcommand per operation group, budget flags
// mirroring the library defaults, byte-deterministic stdout, and exit codes
// 0 (success), 1 (domain error), 2 (equivalence not found within budget).
#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "vsb/diagram.hpp"
#include "vsb/markov.hpp"
#include "vsb/prng.hpp"
#include "vsb/reduced.hpp"
#include "vsb/relations.hpp"
#include "vsb/script.hpp"
#include "vsb/search.hpp"
#include "vsb/word.hpp"

namespace {

using namespace vsb;

// Operation registry: every library operation is owned by exactly one
// subcommand. Kept as one table so the coverage test can freeze it;
// --ops prints it verbatim.
struct OpEntry {
  const char* op;
  const char* subcommand;
};

constexpr OpEntry kOpRegistry[] = {
    {"parse_word", "normalize"},
    {"compose", "normalize"},
    {"invert", "normalize"},
    {"free_reduce", "normalize"},
    {"left_shift", "normalize"},
    {"embed_right", "normalize"},
    {"permutation_image", "perm"},
    {"tau_count", "invariants"},
    {"sigma_exponent_sum", "invariants"},
    {"closure_component_count", "invariants"},
    {"validate", "invariants"},
    {"invariants", "invariants"},
    {"close", "close"},
    {"braid", "braid"},
    {"expand_to_reduced", "expand"},
    {"relation_set", "equiv"},
    {"reduced_relation_set", "equiv"},
    {"equivalent_bounded", "equiv"},
    {"markov_neighbors", "markov-equiv"},
    {"markov_equivalent_bounded", "markov-equiv"},
    {"verify_shift_identity", "verify-lemmas"},
    {"verify_lemma", "verify-lemmas"},
    {"apply_relation", "check-script"},
    {"check_rewrite_script", "check-script"},
    {"neighbors", "random-test"},
    {"apply_markov", "random-test"},
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw domain_error("cannot read file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw domain_error("cannot write file: " + path);
  out << text;
}

// stdout with exactly one trailing newline
void print_block(const std::string& text) {
  std::fputs(text.c_str(), stdout);
  if (text.empty() || text.back() != '\n') std::fputc('\n', stdout);
}

std::vector<int> parse_csv_ints(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw domain_error("bad integer list: " + csv);
    }
  }
  if (out.empty()) throw domain_error("bad integer list: " + csv);
  return out;
}

std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(xs[k]);
  }
  return out;
}

// Budget flags shared by the search subcommands; zero means the library
// default for the words at hand.
struct BudgetFlags {
  size_t max_len = 0;
  size_t max_states = 0;
  size_t max_depth = 0;
  size_t max_strands = 0;

  void attach(CLI::App* cmd, bool with_strands) {
    cmd->add_option("--max-len", max_len,
                    "longest word the search may visit (default: longer side + 6)");
    cmd->add_option("--max-states", max_states, "visited-state cap (default: 2000000)");
    cmd->add_option("--max-depth", max_depth, "combined BFS depth cap (default: 24)");
    if (with_strands)
      cmd->add_option("--max-strands", max_strands,
                      "strand-count cap (default: larger strand count + 2)");
  }

  SearchBudget merge(SearchBudget b) const {
    if (max_len) b.max_word_length = max_len;
    if (max_states) b.max_states = max_states;
    if (max_depth) b.max_depth = max_depth;
    if (max_strands) b.max_strands = max_strands;
    return b;
  }
};

// Same word distribution as the library test suites: strand count 2..max_n,
// length 0..max_len, uniform letter kinds and indices.
BraidWord seeded_word(SplitMix64& rng, int max_n, int max_len) {
  int n = 2 + static_cast<int>(rng.next_below(static_cast<uint64_t>(max_n - 1)));
  BraidWord w;
  w.n = n;
  uint64_t len = rng.next_below(static_cast<uint64_t>(max_len) + 1);
  for (uint64_t k = 0; k < len; ++k) {
    int idx = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(n - 1)));
    switch (rng.next_below(4)) {
      case 0: w.letters.push_back(sigma(idx)); break;
      case 1: w.letters.push_back(sigma_inv(idx)); break;
      case 2: w.letters.push_back(tau(idx)); break;
      default: w.letters.push_back(virt(idx)); break;
    }
  }
  return w;
}

int run_normalize(int n, const std::vector<std::string>& words, bool do_invert, bool do_lshift,
                  bool do_embed) {
  BraidWord acc = parse_word(words[0], n);
  for (size_t k = 1; k < words.size(); ++k) acc = compose(acc, parse_word(words[k], n));
  if (do_invert) acc = invert(acc);
  if (do_lshift) acc = left_shift(acc);
  if (do_embed) acc = embed_right(acc);
  print_block(format_word(free_reduce(acc)));
  return 0;
}

int run_perm(int n, const std::string& word) {
  std::vector<int> p = permutation_image(parse_word(word, n));
  std::string line;
  for (size_t k = 0; k < p.size(); ++k) {
    if (k) line += " ";
    line += std::to_string(p[k]);
  }
  print_block(line);
  return 0;
}

int run_invariants(int n, const std::string& word, const std::string& diagram_path) {
  if (!diagram_path.empty()) {
    MorseDiagram d = diagram_from_json(read_file(diagram_path));
    ValidateResult v = validate(d);
    if (!v.valid) {
      std::cerr << "invalid diagram at row " << v.row << ": " << v.reason << "\n";
      return 1;
    }
    DiagramInvariants inv = invariants(d);
    std::printf("component_count: %d\n", inv.component_count);
    std::printf("real_pos: %d\n", inv.real_pos);
    std::printf("real_neg: %d\n", inv.real_neg);
    std::printf("singular: %d\n", inv.singular);
    std::printf("virtual_count: %d\n", inv.virtual_count);
    return 0;
  }
  BraidWord w = parse_word(word, n);
  std::printf("tau_count: %d\n", tau_count(w));
  std::printf("sigma_exponent_sum: %d\n", sigma_exponent_sum(w));
  std::printf("closure_component_count: %d\n", closure_component_count(w));
  return 0;
}

int run_close(int n, const std::string& word, const std::string& out_path) {
  std::string json = diagram_to_json(close(parse_word(word, n)));
  if (out_path.empty())
    print_block(json);
  else
    write_file(out_path, json);
  return 0;
}

int run_braid(const std::string& diagram_path) {
  BraidWord w = braid(diagram_from_json(read_file(diagram_path)));
  std::printf("strands: %d\n", w.n);
  std::printf("word: %s\n", format_word(w).c_str());
  return 0;
}

int run_expand(int n, const std::string& word) {
  print_block(format_word(expand_to_reduced(parse_word(word, n))));
  return 0;
}

int run_equiv(int n, const std::string& word_a, const std::string& word_b, bool reduced,
              const BudgetFlags& bf, const std::string& witness_path) {
  BraidWord a = parse_word(word_a, n);
  BraidWord b = parse_word(word_b, n);
  std::vector<Relation> rels = reduced ? reduced_relation_set(n) : relation_set(n);
  EquivResult r = equivalent_bounded(a, b, rels, bf.merge(default_budget(a, b)));
  if (r.equivalent) {
    std::printf("equivalent\nsteps: %zu\n", r.witness->steps.size());
    if (!witness_path.empty()) write_file(witness_path, script_to_json(*r.witness));
    return 0;
  }
  std::printf("not found within budget\nstates: %zu\n", r.states_explored);
  return 2;
}

int run_markov_equiv(int n, int m, const std::string& word_a, const std::string& word_b,
                     const BudgetFlags& bf, const std::string& witness_path) {
  BraidWord a = parse_word(word_a, n);
  BraidWord b = parse_word(word_b, m > 0 ? m : n);
  MarkovEquivResult r = markov_equivalent_bounded(a, b, bf.merge(default_markov_budget(a, b)));
  if (r.equivalent) {
    std::printf("equivalent\nsteps: %zu\n", r.trace->steps.size());
    if (!witness_path.empty()) write_file(witness_path, markov_trace_to_json(*r.trace));
    return 0;
  }
  if (r.provably_inequivalent) {
    std::printf("provably inequivalent\nreason: %s\n", r.reason.c_str());
    return 2;
  }
  std::printf("not found within budget\nstates: %zu\n", r.states_explored);
  return 2;
}

LemmaMode resolve_mode(const std::string& mode_name, int lemma, const std::vector<int>& indices,
                       const std::string& variant, LemmaMode catalogue_mode, bool from_catalogue,
                       const std::string& scripts_dir) {
  if (mode_name == "script") return LemmaMode::Script;
  if (mode_name == "search") return LemmaMode::Search;
  if (from_catalogue) return catalogue_mode;
  std::ifstream probe(scripts_dir + "/" + lemma_script_filename(lemma, indices, variant));
  return probe ? LemmaMode::Script : LemmaMode::Search;
}

int run_verify_lemmas(bool all, int lemma, const std::string& indices_csv,
                      const std::string& variant, const std::string& mode_name,
                      const std::string& shift_csv, int n, const std::string& scripts_dir,
                      const BudgetFlags& bf) {
  if (!shift_csv.empty()) {
    std::vector<int> ij = parse_csv_ints(shift_csv);
    if (ij.size() != 2) throw domain_error("--shift needs two indices, e.g. 1,3");
    BraidWord a = shift_identity_side(ij[0], ij[1], n);
    BraidWord b = shift_identity_side(ij[1], ij[0], n);
    EquivResult r = verify_shift_identity(ij[0], ij[1], n, bf.merge(default_budget(a, b)));
    if (r.equivalent) {
      std::printf("shift identity (%d,%d): Verified (steps: %zu)\n", ij[0], ij[1],
                  r.witness->steps.size());
      return 0;
    }
    std::printf("shift identity (%d,%d): not found within budget (states: %zu)\n", ij[0], ij[1],
                r.states_explored);
    return 2;
  }

  struct Job {
    LemmaInstance inst;
    bool from_catalogue;
  };
  std::vector<Job> jobs;
  if (all) {
    for (const LemmaInstance& li : lemma_catalogue()) {
      int max_index = 0;
      for (int i : li.indices) max_index = std::max(max_index, i);
      if (max_index < n) jobs.push_back({li, true});
    }
  } else {
    if (lemma == 0) throw domain_error("pass --all or --lemma with --indices");
    LemmaInstance li;
    li.lemma = lemma;
    li.indices = parse_csv_ints(indices_csv);
    li.variant = variant;
    jobs.push_back({li, false});
  }

  bool all_ok = true;
  for (const Job& job : jobs) {
    const LemmaInstance& li = job.inst;
    LemmaMode mode = resolve_mode(mode_name, li.lemma, li.indices, li.variant, li.mode,
                                  job.from_catalogue, scripts_dir);
    auto sides = lemma_sides(li.lemma, li.indices, li.variant, n);
    SearchBudget budget =
        bf.merge(default_budget(expand_to_reduced(sides.first), expand_to_reduced(sides.second)));
    LemmaResult r = verify_lemma(li.lemma, li.indices, li.variant, n, mode, budget, scripts_dir);
    std::string label = "lemma " + std::to_string(li.lemma);
    if (!li.variant.empty()) label += " " + li.variant;
    label += " (" + join_ints(li.indices) + ")";
    if (r.verified) {
      std::printf("%s: Verified (%s)\n", label.c_str(), r.detail.c_str());
    } else {
      all_ok = false;
      std::printf("%s: Failed (%s)\n", label.c_str(), r.detail.c_str());
    }
  }
  return all_ok ? 0 : 1;
}

int run_check_script(const std::string& path, const std::string& set_name) {
  RewriteScript script = script_from_json(read_file(path));
  std::vector<Relation> rels =
      set_name == "full" ? relation_set(script.n) : reduced_relation_set(script.n);
  CheckResult r = check_rewrite_script(script, rels);
  if (r.valid) {
    std::printf("valid\nsteps: %zu\n", script.steps.size());
    return 0;
  }
  std::cerr << "invalid at step " << r.failed_step << ": " << r.reason << "\n";
  return 1;
}

int run_random_test(uint64_t seed, int count, int max_n, int max_len) {
  struct KindRow {
    MarkovKind kind;
    bool uses_sign;
    bool uses_index;
  };
  const KindRow kinds[] = {
      {MarkovKind::ConjReal, true, true},
      {MarkovKind::ConjVirtual, false, true},
      {MarkovKind::CommuteSingular, false, true},
      {MarkovKind::StabRealRight, true, false},
      {MarkovKind::StabVirtualRight, false, false},
      {MarkovKind::DestabRight, false, false},
      {MarkovKind::UnderThreadRight, false, false},
      {MarkovKind::UnderThreadLeft, false, false},
      {MarkovKind::RsThreadRight, true, false},
      {MarkovKind::RsThreadLeft, true, false},
  };

  SplitMix64 rng(seed);
  uint64_t rewrite_checks = 0;
  uint64_t move_checks = 0;
  uint64_t round_trips = 0;

  for (int trial = 0; trial < count; ++trial) {
    BraidWord w = seeded_word(rng, max_n, max_len);
    std::vector<int> perm = permutation_image(w);
    int taus = tau_count(w);
    int sigmas = sigma_exponent_sum(w);
    int components = closure_component_count(w);

    for (const BraidWord& nb : neighbors(w, relation_set(w.n), w.size() + 4)) {
      if (permutation_image(nb) != perm || tau_count(nb) != taus ||
          sigma_exponent_sum(nb) != sigmas) {
        std::cerr << "rewrite broke an invariant: " << format_word(w) << " -> " << format_word(nb)
                  << "\n";
        return 1;
      }
      ++rewrite_checks;
    }

    for (const KindRow& row : kinds) {
      for (int sign : row.uses_sign ? std::vector<int>{+1, -1} : std::vector<int>{+1}) {
        int index_hi = row.uses_index ? w.n - 1 : 1;
        for (int index = 1; index <= index_hi; ++index) {
          for (MarkovDirection dir : {MarkovDirection::Forward, MarkovDirection::Inverse}) {
            MarkovMove move{row.kind, dir, sign, index};
            BraidWord out;
            try {
              out = apply_markov(w, move);
            } catch (const domain_error&) {
              continue;
            }
            ++move_checks;
            int delta = sigma_exponent_sum(out) - sigmas;
            bool delta_ok = row.kind == MarkovKind::StabRealRight
                                ? (delta == sign || delta == -sign) && delta != 0
                                : delta == 0;
            if (tau_count(out) != taus || closure_component_count(out) != components ||
                !delta_ok) {
              std::cerr << "move " << markov_kind_name(row.kind)
                        << " broke an invariant on: " << format_word(w) << "\n";
              return 1;
            }
            if (dir == MarkovDirection::Forward && row.kind != MarkovKind::DestabRight) {
              MarkovMove back{row.kind, MarkovDirection::Inverse, sign, index};
              BraidWord round = apply_markov(out, back);
              if (round != w) {
                std::cerr << "forward then inverse " << markov_kind_name(row.kind)
                          << " is not the identity on: " << format_word(w) << "\n";
                return 1;
              }
              ++round_trips;
            }
          }
        }
      }
    }
  }

  std::printf("seed: %llu\n", static_cast<unsigned long long>(seed));
  std::printf("words: %d\n", count);
  std::printf("rewrite checks: %llu\n", static_cast<unsigned long long>(rewrite_checks));
  std::printf("markov move checks: %llu\n", static_cast<unsigned long long>(move_checks));
  std::printf("round trips: %llu\n", static_cast<unsigned long long>(round_trips));
  std::printf("OK\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"virtual singular braid words, diagrams, and bounded equivalence search"};
  app.require_subcommand(0, 1);

  bool list_ops = false;
  app.add_flag("--ops", list_ops,
               "print the operation registry as 'operation<TAB>subcommand' lines and exit");

  auto* norm = app.add_subcommand("normalize", "compose words and free-reduce the result");
  int norm_n = 0;
  std::vector<std::string> norm_words;
  bool norm_invert = false;
  bool norm_lshift = false;
  bool norm_embed = false;
  norm->add_option("-n,--strands", norm_n, "strand count")->required();
  norm->add_option("word", norm_words, "words in the token grammar (s1, S1, t1, v1, or 1)")
      ->required()
      ->expected(-1);
  norm->add_flag("--invert", norm_invert, "invert the composition (fails on singular letters)");
  norm->add_flag("--left-shift", norm_lshift, "raise every index by one onto a new left strand");
  norm->add_flag("--embed-right", norm_embed, "reread the word with one extra strand on the right");

  auto* perm = app.add_subcommand("perm", "permutation image of a word");
  int perm_n = 0;
  std::string perm_word;
  perm->add_option("-n,--strands", perm_n, "strand count")->required();
  perm->add_option("word", perm_word, "word in the token grammar")->required();

  auto* inv = app.add_subcommand("invariants", "conserved counts of a word or a diagram");
  int inv_n = 0;
  std::string inv_word;
  std::string inv_diagram;
  inv->add_option("-n,--strands", inv_n, "strand count (word form)");
  inv->add_option("word", inv_word, "word in the token grammar");
  inv->add_option("--diagram", inv_diagram, "JSON diagram file instead of a word");

  auto* close_cmd = app.add_subcommand("close", "standard closure diagram of a braid word");
  int close_n = 0;
  std::string close_word;
  std::string close_out;
  close_cmd->add_option("-n,--strands", close_n, "strand count")->required();
  close_cmd->add_option("word", close_word, "word in the token grammar")->required();
  close_cmd->add_option("-o,--out", close_out, "write the JSON diagram here instead of stdout");

  auto* braid_cmd = app.add_subcommand("braid", "turn a closed diagram into a braid word");
  std::string braid_path;
  braid_cmd->add_option("diagram", braid_path, "JSON diagram file")->required();

  auto* expand = app.add_subcommand("expand", "rewrite a word over the reduced generating set");
  int expand_n = 0;
  std::string expand_word;
  expand->add_option("-n,--strands", expand_n, "strand count")->required();
  expand->add_option("word", expand_word, "word in the token grammar")->required();

  auto* equiv = app.add_subcommand("equiv", "bounded equivalence search between two words");
  int equiv_n = 0;
  std::string equiv_a;
  std::string equiv_b;
  bool equiv_reduced = false;
  std::string equiv_witness;
  BudgetFlags equiv_budget;
  equiv->add_option("-n,--strands", equiv_n, "strand count")->required();
  equiv->add_option("a", equiv_a, "first word")->required();
  equiv->add_option("b", equiv_b, "second word")->required();
  equiv->add_flag("--reduced", equiv_reduced,
                  "search over the reduced presentation instead of the defining one");
  equiv->add_option("--witness", equiv_witness, "write the witness script JSON here");
  equiv_budget.attach(equiv, false);

  auto* mequiv = app.add_subcommand("markov-equiv",
                                    "bounded search interleaving moves that preserve the closure");
  int mequiv_n = 0;
  int mequiv_m = 0;
  std::string mequiv_a;
  std::string mequiv_b;
  std::string mequiv_witness;
  BudgetFlags mequiv_budget;
  mequiv->add_option("-n,--strands", mequiv_n, "strand count of the first word")->required();
  mequiv->add_option("-m,--strands-b", mequiv_m, "strand count of the second word (default: -n)");
  mequiv->add_option("a", mequiv_a, "first word")->required();
  mequiv->add_option("b", mequiv_b, "second word")->required();
  mequiv->add_option("--witness", mequiv_witness, "write the trace JSON here");
  mequiv_budget.attach(mequiv, true);

  auto* verify = app.add_subcommand("verify-lemmas",
                                    "check the catalogued identities of the reduced presentation");
  bool verify_all = false;
  int verify_lemma_no = 0;
  std::string verify_indices;
  std::string verify_variant;
  std::string verify_mode = "auto";
  std::string verify_shift;
  int verify_n = 0;
  std::string verify_scripts = "data/scripts";
  BudgetFlags verify_budget;
  verify->add_flag("--all", verify_all, "verify every catalogued instance legal at -n");
  verify->add_option("--lemma", verify_lemma_no, "identity number 1..8");
  verify->add_option("--indices", verify_indices, "comma-separated indices, e.g. 3,1");
  verify->add_option("--variant", verify_variant, "identity variant where one exists");
  verify->add_option("--mode", verify_mode, "auto, script, or search")
      ->check(CLI::IsMember({"auto", "script", "search"}));
  verify->add_option("--shift", verify_shift, "check the staircase shift identity at i,j");
  verify->add_option("-n,--strands", verify_n, "strand count")->required();
  verify->add_option("--scripts", verify_scripts, "directory with the bundled derivations");
  verify_budget.attach(verify, false);

  auto* check = app.add_subcommand("check-script", "replay a rewrite script step by step");
  std::string check_path;
  std::string check_set = "reduced";
  check->add_option("script", check_path, "JSON script file")->required();
  check->add_option("--set", check_set, "relation set to replay against: reduced or full")
      ->check(CLI::IsMember({"reduced", "full"}));

  auto* rnd = app.add_subcommand("random-test", "seeded conservation-law sweep");
  uint64_t rnd_seed = 1;
  int rnd_count = 100;
  int rnd_max_n = 5;
  int rnd_max_len = 12;
  rnd->add_option("--seed", rnd_seed, "PRNG seed (SplitMix64)");
  rnd->add_option("--count", rnd_count, "number of seeded words")->check(CLI::PositiveNumber);
  rnd->add_option("--max-n", rnd_max_n, "largest strand count")->check(CLI::Range(2, 16));
  rnd->add_option("--max-len", rnd_max_len, "longest seeded word")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (list_ops) {
    for (const OpEntry& entry : kOpRegistry) std::printf("%s\t%s\n", entry.op, entry.subcommand);
    return 0;
  }

  try {
    if (norm->parsed())
      return run_normalize(norm_n, norm_words, norm_invert, norm_lshift, norm_embed);
    if (perm->parsed()) return run_perm(perm_n, perm_word);
    if (inv->parsed()) {
      if (inv_diagram.empty() && (inv_n == 0 || inv_word.empty()))
        throw domain_error("pass -n with a word, or --diagram with a JSON file");
      return run_invariants(inv_n, inv_word, inv_diagram);
    }
    if (close_cmd->parsed()) return run_close(close_n, close_word, close_out);
    if (braid_cmd->parsed()) return run_braid(braid_path);
    if (expand->parsed()) return run_expand(expand_n, expand_word);
    if (equiv->parsed())
      return run_equiv(equiv_n, equiv_a, equiv_b, equiv_reduced, equiv_budget, equiv_witness);
    if (mequiv->parsed())
      return run_markov_equiv(mequiv_n, mequiv_m, mequiv_a, mequiv_b, mequiv_budget,
                              mequiv_witness);
    if (verify->parsed())
      return run_verify_lemmas(verify_all, verify_lemma_no, verify_indices, verify_variant,
                               verify_mode, verify_shift, verify_n, verify_scripts, verify_budget);
    if (check->parsed()) return run_check_script(check_path, check_set);
    if (rnd->parsed()) return run_random_test(rnd_seed, rnd_count, rnd_max_n, rnd_max_len);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::cerr << app.help();
  return 1;
}
