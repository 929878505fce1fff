// Rewrite scripts: serialized derivations where every step applies one
// relation instance at one position. Scripts are both the witnesses
// returned by the equivalence search and the bundled transcriptions of
// the reduced-presentation derivations.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vsb/relations.hpp"
#include "vsb/word.hpp"

namespace vsb {

struct ScriptStep {
  std::string rel;          // relation family name
  std::vector<int> params;  // relation parameters
  size_t pos = 0;           // 0-based position in the word before this step
  Direction dir = Direction::L2R;
};

struct RewriteScript {
  int n = 1;
  BraidWord start;
  BraidWord end;
  std::vector<ScriptStep> steps;
};

struct CheckResult {
  bool valid = false;
  size_t failed_step = 0;  // meaningful when !valid; steps.size() means endpoint mismatch
  std::string reason;      // empty when valid
};

// Replays every step against the supplied relation set; Valid iff each
// step's source side matches at its position and the final word equals
// script.end exactly.
CheckResult check_rewrite_script(const RewriteScript& script, const std::vector<Relation>& rels);

// Script algebra used by the witness assembler and the script generator.
// reversed: swaps start/end, reverses the step order, flips directions.
RewriteScript reversed(const RewriteScript& s);
// concatenated: requires a.end == b.start.
RewriteScript concatenated(const RewriteScript& a, const RewriteScript& b);
// shifted: the same derivation replayed inside a larger word that carries
// `prefix` extra letters on the left (positions shift by |prefix|) and any
// suffix on the right; start/end are rewritten accordingly.
RewriteScript shifted(const RewriteScript& s, const std::vector<Letter>& prefix,
                      const std::vector<Letter>& suffix);

// JSON round trip:
//   { "n": int, "start": "<tokens>", "end": "<tokens>",
//     "steps": [ { "rel": "<family>", "params": [ints], "pos": int,
//                  "dir": "L2R"|"R2L" } ] }
RewriteScript script_from_json(const std::string& json_text);
std::string script_to_json(const RewriteScript& s);

}  // namespace vsb
