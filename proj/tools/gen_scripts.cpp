// Regenerates the bundled derivation scripts under data/scripts/. Every
// script is found by the bounded equivalence engines and validated against
// the reduced relation set before it is written, so the bundle never
// contains an unreplayable file. Usage: gen_scripts [output_dir]
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "vsb/reduced.hpp"
#include "vsb/relations.hpp"
#include "vsb/script.hpp"
#include "vsb/search.hpp"
#include "vsb/word.hpp"

using namespace vsb;

namespace {

struct BundleEntry {
  int lemma;
  std::vector<int> indices;
  std::string variant;
  int n;
  size_t extra_length;  // slack over max(|lhs|,|rhs|) for intermediate words
  size_t max_states;
};

const std::vector<BundleEntry> kBundle = {
    {1, {3, 1}, "", 4, 6, 2000000},
    {1, {1, 3}, "", 4, 6, 2000000},
    {1, {4, 1}, "", 5, 6, 2000000},
    {1, {1, 4}, "", 5, 6, 2000000},
    {1, {4, 2}, "", 5, 6, 2000000},
    {1, {2, 4}, "", 5, 6, 2000000},
    {2, {3, 1}, "sigma", 4, 10, 2000000},
    {2, {3, 1}, "tau", 4, 10, 2000000},
    {2, {1, 3}, "sigma", 4, 10, 2000000},
    {2, {1, 3}, "tau", 4, 10, 2000000},
    {2, {4, 2}, "sigma", 5, 10, 2000000},
    {2, {4, 2}, "tau", 5, 10, 2000000},
    {2, {2, 4}, "sigma", 5, 10, 2000000},
    {2, {2, 4}, "tau", 5, 10, 2000000},
    {3, {1, 3}, "sigma-sigma", 4, 10, 2000000},
    {3, {3, 1}, "sigma-sigma", 4, 10, 2000000},
    {3, {1, 3}, "tau-tau", 4, 10, 2000000},
    {3, {3, 1}, "tau-tau", 4, 10, 2000000},
    {4, {1, 2}, "", 3, 6, 2000000},
    {4, {2, 1}, "", 3, 6, 2000000},
    {4, {2, 3}, "", 4, 6, 4200000},
    {4, {3, 2}, "", 4, 6, 4200000},
    {5, {1, 2}, "", 3, 6, 2000000},
    {5, {2, 3}, "", 4, 6, 4200000},
    {8, {1, 2}, "sigma", 3, 6, 2000000},
    {8, {2, 1}, "sigma", 3, 6, 2000000},
    {8, {1, 2}, "tau", 3, 6, 2000000},
    {8, {2, 1}, "tau", 3, 6, 2000000},
    {8, {2, 3}, "sigma", 4, 6, 2000000},
    {8, {3, 2}, "sigma", 4, 6, 2000000},
    {8, {2, 3}, "tau", 4, 6, 2000000},
    {8, {3, 2}, "tau", 4, 6, 2000000},
};

}  // namespace

int main(int argc, char** argv) {
  std::string out_dir = argc > 1 ? argv[1] : "data/scripts";
  std::filesystem::create_directories(out_dir);

  int failures = 0;
  for (const BundleEntry& e : kBundle) {
    auto sides = lemma_sides(e.lemma, e.indices, e.variant, e.n);
    BraidWord a = expand_to_reduced(sides.first);
    BraidWord b = expand_to_reduced(sides.second);
    SearchBudget budget{std::max(a.size(), b.size()) + e.extra_length, e.max_states, 48};
    EquivResult res = equivalent_bounded(a, b, reduced_relation_set(e.n), budget);
    std::string name = lemma_script_filename(e.lemma, e.indices, e.variant);
    if (!res.equivalent || !res.witness) {
      std::fprintf(stderr, "FAILED %-28s no derivation within budget (%zu states)\n",
                   name.c_str(), res.states_explored);
      ++failures;
      continue;
    }
    RewriteScript script = *res.witness;
    CheckResult check = check_rewrite_script(script, reduced_relation_set(e.n));
    bool endpoints = script.start.letters == a.letters && script.end.letters == b.letters;
    if (!check.valid || !endpoints) {
      std::fprintf(stderr, "FAILED %-28s witness invalid (%s)\n", name.c_str(),
                   check.valid ? "endpoint mismatch" : check.reason.c_str());
      ++failures;
      continue;
    }
    std::ofstream out(out_dir + "/" + name);
    out << script_to_json(script) << "\n";
    std::printf("wrote %-28s n=%d steps=%zu states=%zu\n", name.c_str(), e.n,
                script.steps.size(), res.states_explored);
  }
  if (failures) {
    std::fprintf(stderr, "%d script(s) failed\n", failures);
    return 1;
  }
  std::printf("%zu scripts written to %s\n", kBundle.size(), out_dir.c_str());
  return 0;
}
