#include "vsb/diagram.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace vsb {

namespace {

struct UnionFind {
  std::vector<int> parent;
  int make() {
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(parent.size()) - 1;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool is_crossing(EventKind k) {
  return k != EventKind::Cup && k != EventKind::Cap;
}

struct TraceSlot {
  bool down;  // strand direction at this position
  int comp;   // union-find id of the strand's component
};

struct TraceOutcome {
  ValidateResult check;
  int components = 0;
};

// Shared scan: position/count validation, orientation tracing, components.
TraceOutcome trace(const MorseDiagram& d) {
  TraceOutcome out;
  UnionFind uf;
  std::vector<TraceSlot> slots;
  for (size_t row = 0; row < d.events.size(); ++row) {
    const MorseEvent& e = d.events[row];
    auto fail = [&](const std::string& reason) {
      out.check = ValidateResult{false, row, reason};
      return out;
    };
    if (e.pos < 1) return fail("position must be at least 1");
    size_t i = static_cast<size_t>(e.pos - 1);
    switch (e.kind) {
      case EventKind::Cup: {
        if (i > slots.size()) return fail("cup position out of range");
        int id = uf.make();
        bool left_down = e.cup_orientation == CupOrientation::CCW;
        slots.insert(slots.begin() + i, {TraceSlot{left_down, id}, TraceSlot{!left_down, id}});
        break;
      }
      case EventKind::Cap: {
        if (slots.empty()) return fail("cap with no live strands");
        if (i + 1 >= slots.size()) return fail("cap exceeds live strands");
        if (slots[i].down == slots[i + 1].down)
          return fail("cap joins two strands with the same vertical direction");
        uf.unite(slots[i].comp, slots[i + 1].comp);
        slots.erase(slots.begin() + i, slots.begin() + i + 2);
        break;
      }
      default: {
        if (i + 1 >= slots.size()) return fail("crossing exceeds live strands");
        std::swap(slots[i], slots[i + 1]);
        break;
      }
    }
  }
  if (!slots.empty()) {
    out.check = ValidateResult{false, d.events.size(), "diagram not closed"};
    return out;
  }
  std::vector<int> roots;
  for (int id = 0; id < static_cast<int>(uf.parent.size()); ++id) roots.push_back(uf.find(id));
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  out.components = static_cast<int>(roots.size());
  return out;
}

}  // namespace

ValidateResult validate(const MorseDiagram& d) { return trace(d).check; }

DiagramInvariants invariants(const MorseDiagram& d) {
  TraceOutcome t = trace(d);
  if (!t.check.valid)
    throw domain_error("invalid diagram at row " + std::to_string(t.check.row) + ": " +
                       t.check.reason);
  DiagramInvariants inv;
  inv.component_count = t.components;
  for (const MorseEvent& e : d.events) {
    switch (e.kind) {
      case EventKind::CrossRealPos: ++inv.real_pos; break;
      case EventKind::CrossRealNeg: ++inv.real_neg; break;
      case EventKind::CrossSingular: ++inv.singular; break;
      case EventKind::CrossVirtual: ++inv.virtual_count; break;
      default: break;
    }
  }
  return inv;
}

MorseDiagram close(const BraidWord& w) {
  MorseDiagram d;
  // nested cups: braid strand tops end up at positions 1..n, the return
  // arcs at positions n+1..2n in mirrored order
  for (int k = 1; k <= w.n; ++k)
    d.events.push_back(MorseEvent{EventKind::Cup, k, CupOrientation::CCW});
  for (const Letter& l : w.letters) {
    EventKind k = EventKind::CrossVirtual;
    switch (l.kind) {
      case LetterKind::RealPos: k = EventKind::CrossRealPos; break;
      case LetterKind::RealNeg: k = EventKind::CrossRealNeg; break;
      case LetterKind::Singular: k = EventKind::CrossSingular; break;
      case LetterKind::Virtual: k = EventKind::CrossVirtual; break;
    }
    d.events.push_back(MorseEvent{k, l.index, CupOrientation::CCW});
  }
  // innermost cap first joins strand n's bottom to its return arc
  for (int k = w.n; k >= 1; --k)
    d.events.push_back(MorseEvent{EventKind::Cap, k, CupOrientation::CCW});
  return d;
}

namespace {

// Sweep state for the braiding algorithm: one entry per diagram slot.
// Upward slots carry no braid strand of their own; `ret` names the
// rightmost-column pair their next rerouted piece must return to.
struct BraidSlot {
  bool down;
  int ret = 0;
};

LetterKind crossing_letter(EventKind k) {
  switch (k) {
    case EventKind::CrossRealPos: return LetterKind::RealPos;
    case EventKind::CrossRealNeg: return LetterKind::RealNeg;
    case EventKind::CrossSingular: return LetterKind::Singular;
    default: return LetterKind::Virtual;
  }
}

}  // namespace

BraidWord braid(const MorseDiagram& d) {
  ValidateResult check = validate(d);
  if (!check.valid)
    throw domain_error("invalid diagram at row " + std::to_string(check.row) + ": " +
                       check.reason);

  // lanes: current left-to-right cross-section of the output braid.
  // 0 marks a strand currently traveling the main (diagram) region,
  // -1 an acting piece mid-reroute, and a positive tag a strand that has
  // descended into the aux region to fill the bottom half of that pair.
  std::vector<int> lanes;
  std::vector<BraidSlot> dslots;
  std::vector<Letter> out;
  int allocs = 0;

  auto emit = [&](int q, LetterKind k) {
    out.push_back(Letter{k, q + 1});
    std::swap(lanes[q], lanes[q + 1]);
  };
  // moves the strand at position f to position t, crossing everything on
  // the way virtually
  auto run_virtual = [&](int f, int t) {
    for (; f > t; --f) emit(f - 1, LetterKind::Virtual);
    for (; f < t; ++f) emit(f, LetterKind::Virtual);
    return t;
  };
  // retires the strand at position f: it descends to the bottom boundary
  // as the bottom half of pair `tag`, kept sorted by pair allocation order
  // so the right-routed closure reconnects each pair
  auto retire = [&](int f, int tag) {
    while (f + 1 < static_cast<int>(lanes.size()) &&
           (lanes[f + 1] == 0 || (lanes[f + 1] > 0 && lanes[f + 1] < tag)))
      f = run_virtual(f, f + 1);
    while (f > 0 && (lanes[f - 1] == -1 || lanes[f - 1] > tag)) f = run_virtual(f, f - 1);
    lanes[f] = tag;
  };
  auto main_position = [&](size_t slot) {
    int q = 0;
    for (size_t j = 0; j < slot; ++j)
      if (dslots[j].down) ++q;
    return q;
  };

  for (const MorseEvent& e : d.events) {
    size_t i = static_cast<size_t>(e.pos - 1);
    switch (e.kind) {
      case EventKind::Cup: {
        // the upward leg's arc arrives here from above; its final rerouted
        // piece descends a fresh rightmost column and runs in to continue
        // as the downward leg
        int a = ++allocs;
        bool left_down = e.cup_orientation == CupOrientation::CCW;
        size_t down_slot = left_down ? i : i + 1;
        dslots.insert(dslots.begin() + i,
                      {BraidSlot{left_down, left_down ? 0 : a},
                       BraidSlot{!left_down, left_down ? a : 0}});
        lanes.push_back(-1);
        int q = run_virtual(static_cast<int>(lanes.size()) - 1, main_position(down_slot));
        lanes[q] = 0;
        break;
      }
      case EventKind::Cap: {
        // the downward strand turns and descends the aux column reserved
        // when the upward leg's arc was last seen
        size_t down_slot = dslots[i].down ? i : i + 1;
        size_t up_slot = dslots[i].down ? i + 1 : i;
        int q = main_position(down_slot);
        lanes[q] = -1;
        retire(q, dslots[up_slot].ret);
        dslots.erase(dslots.begin() + i, dslots.begin() + i + 2);
        break;
      }
      default: {
        LetterKind K = crossing_letter(e.kind);
        bool d1 = dslots[i].down, d2 = dslots[i + 1].down;
        if (d1 && d2) {
          emit(main_position(i), K);
        } else if (d1 != d2) {
          // remake the crossing between the downward strand and the upward
          // arc's rerouted piece, entering on the side the arc held in d
          size_t up_slot = d1 ? i + 1 : i;
          int q_w = main_position(d1 ? i : i + 1);
          int a = ++allocs;
          lanes.push_back(-1);
          int p = run_virtual(static_cast<int>(lanes.size()) - 1,
                              up_slot == i ? q_w : q_w + 1);
          emit(q_w, K);
          retire(p == q_w ? q_w + 1 : q_w, dslots[up_slot].ret);
          dslots[up_slot].ret = a;
        } else {
          // both strands upward: remake between the two rerouted pieces in
          // the aux region, left piece first to keep the original sides
          int a_left = ++allocs;
          lanes.push_back(-1);
          int a_right = ++allocs;
          lanes.push_back(-1);
          int p = static_cast<int>(lanes.size()) - 2;
          emit(p, K);
          retire(p + 1, dslots[i].ret);
          int p_right = 0;
          for (size_t j = 0; j < lanes.size(); ++j)
            if (lanes[j] == -1) p_right = static_cast<int>(j);
          retire(p_right, dslots[i + 1].ret);
          dslots[i].ret = a_left;
          dslots[i + 1].ret = a_right;
        }
        std::swap(dslots[i], dslots[i + 1]);
        break;
      }
    }
  }

  for (size_t j = 0; j < lanes.size(); ++j)
    if (lanes[j] != static_cast<int>(j) + 1)
      throw std::logic_error("braiding sweep left a strand out of place");

  BraidWord w;
  w.n = std::max(allocs, 1);
  w.letters = std::move(out);
  return w;
}

MorseDiagram diagram_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw domain_error(std::string("bad diagram JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("events") || !j["events"].is_array())
    throw domain_error("diagram JSON must be an object with an \"events\" array");
  MorseDiagram d;
  for (const auto& je : j["events"]) {
    if (!je.is_object() || !je.contains("kind") || !je["kind"].is_string() ||
        !je.contains("pos") || !je["pos"].is_number_integer())
      throw domain_error("each event needs a string \"kind\" and integer \"pos\"");
    std::string kind = je["kind"].get<std::string>();
    MorseEvent e;
    e.pos = je["pos"].get<int>();
    if (kind == "cup") e.kind = EventKind::Cup;
    else if (kind == "cap") e.kind = EventKind::Cap;
    else if (kind == "x+") e.kind = EventKind::CrossRealPos;
    else if (kind == "x-") e.kind = EventKind::CrossRealNeg;
    else if (kind == "xs") e.kind = EventKind::CrossSingular;
    else if (kind == "xv") e.kind = EventKind::CrossVirtual;
    else throw domain_error("unknown event kind '" + kind + "'");
    if (e.kind == EventKind::Cup) {
      if (!je.contains("orient") || !je["orient"].is_string())
        throw domain_error("cup events need an \"orient\" of \"ccw\" or \"cw\"");
      std::string o = je["orient"].get<std::string>();
      if (o == "ccw") e.cup_orientation = CupOrientation::CCW;
      else if (o == "cw") e.cup_orientation = CupOrientation::CW;
      else throw domain_error("unknown cup orientation '" + o + "'");
    } else if (je.contains("orient")) {
      throw domain_error("\"orient\" is only valid on cup events");
    }
    d.events.push_back(e);
  }
  return d;
}

std::string diagram_to_json(const MorseDiagram& d) {
  nlohmann::ordered_json events = nlohmann::ordered_json::array();
  for (const MorseEvent& e : d.events) {
    nlohmann::ordered_json je;
    switch (e.kind) {
      case EventKind::Cup: je["kind"] = "cup"; break;
      case EventKind::Cap: je["kind"] = "cap"; break;
      case EventKind::CrossRealPos: je["kind"] = "x+"; break;
      case EventKind::CrossRealNeg: je["kind"] = "x-"; break;
      case EventKind::CrossSingular: je["kind"] = "xs"; break;
      case EventKind::CrossVirtual: je["kind"] = "xv"; break;
    }
    je["pos"] = e.pos;
    if (e.kind == EventKind::Cup)
      je["orient"] = e.cup_orientation == CupOrientation::CCW ? "ccw" : "cw";
    events.push_back(je);
  }
  nlohmann::ordered_json j;
  j["events"] = events;
  return j.dump(2) + "\n";
}

}  // namespace vsb
