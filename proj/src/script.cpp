#include "vsb/script.hpp"

#include <json.hpp>

namespace vsb {

CheckResult check_rewrite_script(const RewriteScript& script, const std::vector<Relation>& rels) {
  if (script.start.n != script.n || script.end.n != script.n)
    return {false, 0, "start/end strand count differs from script n"};
  BraidWord cur = script.start;
  for (size_t k = 0; k < script.steps.size(); ++k) {
    const ScriptStep& st = script.steps[k];
    const Relation* rel = nullptr;
    for (const Relation& r : rels) {
      if (r.family == st.rel && r.params == st.params) {
        rel = &r;
        break;
      }
    }
    if (!rel) {
      std::string p;
      for (size_t q = 0; q < st.params.size(); ++q) {
        if (q) p += ",";
        p += std::to_string(st.params[q]);
      }
      return {false, k, "unknown relation " + st.rel + "(" + p + ") for the supplied set"};
    }
    try {
      cur = apply_relation(cur, *rel, st.pos, st.dir);
    } catch (const domain_error& e) {
      return {false, k, e.what()};
    }
  }
  if (cur != script.end) {
    return {false, script.steps.size(),
            "final word '" + format_word(cur) + "' differs from declared end '" +
                format_word(script.end) + "'"};
  }
  return {true, 0, ""};
}

RewriteScript reversed(const RewriteScript& s) {
  RewriteScript out;
  out.n = s.n;
  out.start = s.end;
  out.end = s.start;
  out.steps.reserve(s.steps.size());
  for (auto it = s.steps.rbegin(); it != s.steps.rend(); ++it) {
    ScriptStep st = *it;
    st.dir = (st.dir == Direction::L2R) ? Direction::R2L : Direction::L2R;
    out.steps.push_back(std::move(st));
  }
  return out;
}

RewriteScript concatenated(const RewriteScript& a, const RewriteScript& b) {
  if (a.n != b.n || a.end != b.start)
    throw domain_error("cannot concatenate scripts: endpoint mismatch");
  RewriteScript out = a;
  out.end = b.end;
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  return out;
}

RewriteScript shifted(const RewriteScript& s, const std::vector<Letter>& prefix,
                      const std::vector<Letter>& suffix) {
  RewriteScript out;
  out.n = s.n;
  auto wrap = [&](const BraidWord& w) {
    BraidWord r;
    r.n = w.n;
    r.letters = prefix;
    r.letters.insert(r.letters.end(), w.letters.begin(), w.letters.end());
    r.letters.insert(r.letters.end(), suffix.begin(), suffix.end());
    return r;
  };
  out.start = wrap(s.start);
  out.end = wrap(s.end);
  out.steps = s.steps;
  for (ScriptStep& st : out.steps) st.pos += prefix.size();
  return out;
}

RewriteScript script_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw domain_error(std::string("bad script JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("start") || !j.contains("end") ||
      !j.contains("steps") || !j["steps"].is_array())
    throw domain_error("script JSON must carry n, start, end, steps");
  RewriteScript s;
  s.n = j["n"].get<int>();
  s.start = parse_word(j["start"].get<std::string>(), s.n);
  s.end = parse_word(j["end"].get<std::string>(), s.n);
  for (const auto& stepj : j["steps"]) {
    ScriptStep st;
    st.rel = stepj.at("rel").get<std::string>();
    for (const auto& p : stepj.at("params")) st.params.push_back(p.get<int>());
    long pos = stepj.at("pos").get<long>();
    if (pos < 0) throw domain_error("script step position must be non-negative");
    st.pos = static_cast<size_t>(pos);
    st.dir = direction_from_name(stepj.at("dir").get<std::string>());
    s.steps.push_back(std::move(st));
  }
  return s;
}

std::string script_to_json(const RewriteScript& s) {
  nlohmann::ordered_json j;
  j["n"] = s.n;
  j["start"] = format_word(s.start);
  j["end"] = format_word(s.end);
  j["steps"] = nlohmann::ordered_json::array();
  for (const ScriptStep& st : s.steps) {
    nlohmann::ordered_json stepj;
    stepj["rel"] = st.rel;
    stepj["params"] = st.params;
    stepj["pos"] = st.pos;
    stepj["dir"] = direction_name(st.dir);
    j["steps"].push_back(std::move(stepj));
  }
  return j.dump(1);
}

}  // namespace vsb
