// Morse-encoded oriented virtual singular link diagrams: validation,
// crossing/component invariants, braid closure, and the braiding algorithm
// that turns any valid diagram into a braid word with the same closure.
#pragma once

#include <string>
#include <vector>

#include "vsb/word.hpp"

namespace vsb {

enum class EventKind : uint8_t {
  Cup,            // local maximum: births two strands at pos, pos+1
  Cap,            // local minimum: joins the strands at pos, pos+1
  CrossRealPos,   // x+ : the strand from upper-left passes over
  CrossRealNeg,   // x- : the strand from upper-right passes over
  CrossSingular,  // xs : rigid double point
  CrossVirtual,   // xv : detourable planar artifact
};

enum class CupOrientation : uint8_t {
  CCW,  // left leg directed downward
  CW,   // right leg directed downward
};

struct MorseEvent {
  EventKind kind;
  int pos = 1;  // 1-based position among the live strands
  CupOrientation cup_orientation = CupOrientation::CCW;  // cups only

  friend bool operator==(const MorseEvent& a, const MorseEvent& b) {
    if (a.kind != b.kind || a.pos != b.pos) return false;
    if (a.kind == EventKind::Cup) return a.cup_orientation == b.cup_orientation;
    return true;
  }
  friend bool operator!=(const MorseEvent& a, const MorseEvent& b) { return !(a == b); }
};

// One event per row, scanned top to bottom. A closed diagram starts and ends
// with zero live strands.
struct MorseDiagram {
  std::vector<MorseEvent> events;

  friend bool operator==(const MorseDiagram& a, const MorseDiagram& b) {
    return a.events == b.events;
  }
  friend bool operator!=(const MorseDiagram& a, const MorseDiagram& b) { return !(a == b); }
};

struct DiagramInvariants {
  int component_count = 0;
  int real_pos = 0;
  int real_neg = 0;
  int singular = 0;
  int virtual_count = 0;

  friend bool operator==(const DiagramInvariants& a, const DiagramInvariants& b) {
    return a.component_count == b.component_count && a.real_pos == b.real_pos &&
           a.real_neg == b.real_neg && a.singular == b.singular &&
           a.virtual_count == b.virtual_count;
  }
  friend bool operator!=(const DiagramInvariants& a, const DiagramInvariants& b) {
    return !(a == b);
  }
};

// Result of validate: valid, or the 0-based row of the first offending event
// (row == events.size() for end-of-diagram failures) plus a reason.
struct ValidateResult {
  bool valid = true;
  size_t row = 0;
  std::string reason;
};

// Checks, scanning top to bottom, that every event is applicable (positions
// in range, enough live strands), that the live strand count ends at zero,
// and that orientation tracing is globally consistent (every cap joins one
// downward and one upward strand).
ValidateResult validate(const MorseDiagram& d);

// Crossing counts by kind plus the number of link components obtained by
// tracing arcs through the events. Throws domain_error if the diagram is
// invalid.
DiagramInvariants invariants(const MorseDiagram& d);

// Standard closure of a braid word: n nested cups above, the letters as
// crossing rows in the middle, n nested caps below, with the return arcs
// routed to the right of the braid without any new crossings. The result is
// always valid; its component count equals closure_component_count(w) and
// its crossing counts match the letter counts of w exactly.
MorseDiagram close(const BraidWord& w);

// The braiding algorithm. Traces orientations, then eliminates every upward
// arc: each crossing on an upward strand is remade between descending
// replacement strands at its own row, and each remaining upward piece is cut
// and rerouted through a fresh rightmost column, crossing everything on the
// way virtually. The output is a braid word whose closure has the same
// real/singular crossing counts and component count as d, and at least as
// many virtual crossings. Throws domain_error if the diagram is invalid.
BraidWord braid(const MorseDiagram& d);

// JSON diagram format:
//   { "events": [ { "kind": "cup"|"cap"|"x+"|"x-"|"xs"|"xv",
//                   "pos": int, "orient": "ccw"|"cw" (cups only) } ] }
MorseDiagram diagram_from_json(const std::string& json_text);
std::string diagram_to_json(const MorseDiagram& d);

}  // namespace vsb
