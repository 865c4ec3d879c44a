#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "sydy/dsl.hpp"

namespace sydy {

/// One catalogued relation: its DSL source, parsed form and the checks that apply to it.
struct SuiteRelation {
  std::string id;
  std::string suite;
  std::string text;
  Relation relation;
  bool rational = true;
  bool distributional = false;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"summary", "derivation", "corrected"};
  return names;
}

/// X and unsigned E/F are differences of two expansions of one rational function, so like δ they
/// have no rational shadow. Mode checks are needed for those and for mixed ±.
inline void tag_relation(SuiteRelation& r) {
  bool delta = false;
  bool unsigned_current = false;
  bool plus = false;
  bool minus = false;
  auto visit = [&](const Node& n) {
    if (n.as<DeltaNode>()) {
      delta = true;
      return;
    }
    const AtomNode* a = n.as<AtomNode>();
    if (a->kind == AtomKind::X || a->sign == AtomSign::none) unsigned_current = true;
    plus = plus || a->sign == AtomSign::plus;
    minus = minus || a->sign == AtomSign::minus;
  };
  for_each_leaf(r.relation.lhs, visit);
  for_each_leaf(r.relation.rhs, visit);
  r.rational = !delta && !unsigned_current;
  r.distributional = delta || unsigned_current || (plus && minus);
}

namespace detail {

inline void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) s.replace(pos, from.size(), to);
}

/// {s} is the chosen sign, {t} its opposite; {Us} is u shifted by s·ħc/4, and so on.
inline std::string instantiate(std::string t, char s) {
  const char o = s == '+' ? '-' : '+';
  for (const char* x : {"U", "V"}) {
    const std::string var(1, static_cast<char>(x[0] - 'A' + 'a'));
    replace_all(t, std::string("{") + x + "s}", "(" + var + " " + s + " hbar*c/4)");
    replace_all(t, std::string("{") + x + "t}", "(" + var + " " + o + " hbar*c/4)");
  }
  replace_all(t, "{s}", std::string(1, s));
  replace_all(t, "{t}", std::string(1, o));
  return t;
}

struct Template {
  const char* id;
  const char* text;
  bool both_signs;
};

// clang-format off
inline const std::vector<Template>& summary_templates() {
  static const std::vector<Template> t{
    {"summary.k1k1", "[k1{s}(u), k1{s}(v)] = 0", true},
    {"summary.k1k1.pm", "[k1+(u), k1-(v)] = 0", false},
    {"summary.k1k2", "[k1{s}(u), k2{s}(v)] = 0", true},
    {"summary.k2k2", "[k2{s}(u), k2{s}(v)] = 0", true},
    {"summary.k1k2inv", "({Us} - {Vt})/({Us} - {Vt} + hbar)*k1{s}(u)*inv(k2{t}(v)) = ({Ut} - {Vs})/({Ut} - {Vs} + hbar)*inv(k2{t}(v))*k1{s}(u)", true},
    {"summary.k2invk2inv", "((u - hbar*c/4) - (v + hbar*c/4) - hbar)/((u - hbar*c/4) - (v + hbar*c/4) + hbar)*inv(k2+(u))*inv(k2-(v)) = ((u + hbar*c/4) - (v - hbar*c/4) - hbar)/((u + hbar*c/4) - (v - hbar*c/4) + hbar)*inv(k2-(v))*inv(k2+(u))", false},
    {"summary.k1X+", "inv(k1{s}(u))*X+(v)*k1{s}(u) = ({Us} - v + hbar)/({Us} - v)*X+(v)", true},
    {"summary.k2X+", "inv(k2{s}(u))*X+(v)*k2{s}(u) = ({Us} - v + hbar)/({Us} - v)*X+(v)", true},
    {"summary.k1X-", "k1{s}(u)*X-(v)*inv(k1{s}(u)) = ({Ut} - v + hbar)/({Ut} - v)*X-(v)", true},
    {"summary.k2X-", "k2{s}(u)*X-(v)*inv(k2{s}(u)) = ({Ut} - v + hbar)/({Ut} - v)*X-(v)", true},
    {"summary.X+X+", "{X+(u), X+(v)} = 0", false},
    {"summary.X-X-", "{X-(u), X-(v)} = 0", false},
    {"summary.X+X-", "{X+(u), X-(v)} = hbar*(delta(u-, v+)*inv(k1+(u-))*k2+(u-) - delta(u+, v-)*inv(k1-(v-))*k2-(v-))", false},
    {"summary.KK", "[K{s}(u), K{s}(v)] = 0", true},
    {"summary.KK.pm", "[K+(u), K-(v)] = 0", false},
    {"summary.HH", "[H{s}(u), H{s}(v)] = 0", true},
    {"summary.KH", "[K{s}(u), H{s}(v)] = 0", true},
    {"summary.HK", "({Ut} - {Vs} - hbar)/({Ut} - {Vs} + hbar)*H{s}(u)*K{t}(v) = K{t}(v)*H{s}(u)*({Us} - {Vt} - hbar)/({Us} - {Vt} + hbar)", true},
    {"summary.HH.pm", "(({Ut} - {Vs} - hbar)/({Ut} - {Vs} + hbar))^2*H{s}(u)*H{t}(v) = H{t}(v)*H{s}(u)*(({Us} - {Vt} - hbar)/({Us} - {Vt} + hbar))^2", true},
    {"summary.KE", "[K{s}(u), E(v)] = 0", true},
    {"summary.KF", "[K{s}(u), F(v)] = 0", true},
    {"summary.EH", "E(v)*H{s}(u) = ({Us} - v + hbar)/({Us} - v - hbar)*H{s}(u)*E(v)", true},
    {"summary.HF", "H{s}(u)*F(v) = ({Ut} - v + hbar)/({Ut} - v - hbar)*F(v)*H{s}(u)", true},
    {"summary.EF", "{E(u), F(v)} = hbar*(delta(u-, v+)*K+(u-) - delta(u+, v-)*K-(v-))", false},
  };
  return t;
}

inline const std::vector<Template>& derivation_templates() {
  static const std::vector<Template> t{
    {"derivation.k1e", "k1{s}(u)*k1{s}(v)*e{s}(v) - (u - v)/(u - v + hbar)*k1{s}(v)*e{s}(v)*k1{s}(u) - hbar/(u - v + hbar)*k1{s}(v)*k1{s}(u)*e{s}(u) = 0", true},
    {"derivation.k1e.pm", "k1{s}(u)*k1{t}(v)*e{t}(v) - ({Us} - {Vt})/({Us} - {Vt} + hbar)*k1{t}(v)*e{t}(v)*k1{s}(u) - hbar/({Us} - {Vt} + hbar)*k1{t}(v)*k1{s}(u)*e{s}(u) = 0", true},
    {"derivation.fk1", "f{s}(v)*k1{s}(v)*k1{s}(u) - (u - v)/(u - v + hbar)*k1{s}(u)*f{s}(v)*k1{s}(v) - hbar/(u - v + hbar)*f{s}(u)*k1{s}(u)*k1{s}(v) = 0", true},
    {"derivation.fk1.pm", "f{t}(v)*k1{t}(v)*k1{s}(u) - ({Ut} - {Vs})/({Ut} - {Vs} + hbar)*k1{s}(u)*f{t}(v)*k1{t}(v) - hbar/({Ut} - {Vs} + hbar)*f{s}(u)*k1{s}(u)*k1{t}(v) = 0", true},
    {"derivation.k1e.conj", "({Us} - v + hbar)*e{s}(v{t}) - ({Us} - v)*inv(k1{s}(u))*e{s}(v{t})*k1{s}(u) - hbar*e{s}(u) = 0", true},
    {"derivation.k1e.conj.pm", "({Us} - v + hbar)*e{t}(v{s}) - ({Us} - v)*inv(k1{s}(u))*e{t}(v{s})*k1{s}(u) - hbar*e{s}(u) = 0", true},
    {"derivation.k1f.conj", "({Ut} - v + hbar)*f{s}(v{s}) - ({Ut} - v)*k1{s}(u)*f{s}(v{s})*inv(k1{s}(u)) - hbar*f{s}(u) = 0", true},
    {"derivation.k1f.conj.pm", "({Ut} - v + hbar)*f{t}(v{t}) - ({Ut} - v)*k1{s}(u)*f{t}(v{t})*inv(k1{s}(u)) - hbar*f{s}(u) = 0", true},
    {"derivation.ek2", "(u - v - hbar)/(u - v + hbar)*e{s}(u)*inv(k2{s}(u))*inv(k2{s}(v)) - (u - v)/(u - v + hbar)*inv(k2{s}(v))*e{s}(u)*inv(k2{s}(u)) + hbar/(u - v + hbar)*e{s}(v)*inv(k2{s}(v))*inv(k2{s}(u)) = 0", true},
    {"derivation.ek2.pm", "({Ut} - {Vs} - hbar)/({Ut} - {Vs} + hbar)*e{s}(u)*inv(k2{s}(u))*inv(k2{t}(v)) - ({Us} - {Vt})/({Us} - {Vt} + hbar)*inv(k2{t}(v))*e{s}(u)*inv(k2{s}(u)) + hbar/({Us} - {Vt} + hbar)*e{t}(v)*inv(k2{t}(v))*inv(k2{s}(u)) = 0", true},
    {"derivation.k2f", "(u - v - hbar)/(u - v + hbar)*inv(k2{s}(v))*inv(k2{s}(u))*f{s}(u) - (u - v)/(u - v + hbar)*inv(k2{s}(u))*f{s}(u)*inv(k2{s}(v)) + hbar/(u - v + hbar)*inv(k2{s}(u))*inv(k2{s}(v))*f{s}(v) = 0", true},
    {"derivation.k2f.pm", "({Us} - {Vt} - hbar)/({Us} - {Vt} + hbar)*inv(k2{t}(v))*inv(k2{s}(u))*f{s}(u) - ({Ut} - {Vs})/({Ut} - {Vs} + hbar)*inv(k2{s}(u))*f{s}(u)*inv(k2{t}(v)) + hbar/({Ut} - {Vs} + hbar)*inv(k2{s}(u))*inv(k2{t}(v))*f{t}(v) = 0", true},
    {"derivation.k2e.conj", "({Ut} - v - hbar)*e{s}(u{t}) - ({Ut} - v)*inv(k2{s}(v))*e{s}(u{t})*k2{s}(v) + hbar*e{s}(v) = 0", true},
    {"derivation.k2e.conj.pm", "(u - {Vt} - hbar)*e{s}(u{t}) - (u - {Vt})*inv(k2{t}(v))*e{s}(u{t})*k2{t}(v) + hbar*e{t}(v) = 0", true},
    {"derivation.k2f.conj", "({Us} - v - hbar)*f{s}(u{s}) - ({Us} - v)*k2{s}(v)*f{s}(u{s})*inv(k2{s}(v)) + hbar*f{s}(v) = 0", true},
    {"derivation.k2f.conj.pm", "(u - {Vs} - hbar)*f{s}(u{s}) - (u - {Vs})*k2{t}(v)*f{s}(u{s})*inv(k2{t}(v)) + hbar*f{t}(v) = 0", true},
    {"derivation.ee", "k1{s}(u)*e{s}(u)*k1{s}(v)*e{s}(v) + (u - v - hbar)/(u - v + hbar)*k1{s}(v)*e{s}(v)*k1{s}(u)*e{s}(u) = 0", true},
    {"derivation.ee.pm", "k1{s}(u)*e{s}(u)*k1{t}(v)*e{t}(v) + ({Us} - {Vt} - hbar)/({Us} - {Vt} + hbar)*k1{t}(v)*e{t}(v)*k1{s}(u)*e{s}(u) = 0", true},
    {"derivation.ff", "(u - v - hbar)/(u - v + hbar)*f{s}(u)*k1{s}(u)*f{s}(v)*k1{s}(v) + f{s}(v)*k1{s}(v)*f{s}(u)*k1{s}(u) = 0", true},
    {"derivation.ff.pm", "({Ut} - {Vs} - hbar)/({Ut} - {Vs} + hbar)*f{s}(u)*k1{s}(u)*f{t}(v)*k1{t}(v) + f{t}(v)*k1{t}(v)*f{s}(u)*k1{s}(u) = 0", true},
    {"derivation.ef", "(u - v)/(u - v + hbar)*k1{s}(u)*e{s}(u)*f{s}(v)*k1{s}(v) + (u - v)/(u - v + hbar)*f{s}(v)*k1{s}(v)*k1{s}(u)*e{s}(u) - hbar/(u - v + hbar)*(k2{s}(u) + f{s}(u)*k1{s}(u)*e{s}(u))*k1{s}(v) - hbar/(u - v + hbar)*(k2{s}(v) + f{s}(v)*k1{s}(v)*e{s}(v))*k1{s}(u) = 0", true},
    {"derivation.ef.pm", "({Ut} - {Vs})/({Ut} - {Vs} + hbar)*k1{s}(u)*e{s}(u)*f{t}(v)*k1{t}(v) + ({Us} - {Vt})/({Us} - {Vt} + hbar)*f{t}(v)*k1{t}(v)*k1{s}(u)*e{s}(u) - hbar/({Ut} - {Vs} + hbar)*(k2{s}(u) + f{s}(u)*k1{s}(u)*e{s}(u))*k1{t}(v) - hbar/({Us} - {Vt} + hbar)*(k2{t}(v) + f{t}(v)*k1{t}(v)*e{t}(v))*k1{s}(u) = 0", true},
    {"derivation.kek", "k1{s}(u)*e{s}(u)*k1{s}(v) - (u - v)/(u - v + hbar)*k1{s}(v)*k1{s}(u)*e{s}(u) - hbar/(u - v + hbar)*k1{s}(v)*e{s}(v)*k1{s}(u) = 0", true},
    {"derivation.kek.pm", "k1{s}(u)*e{s}(u)*k1{t}(v) - ({Us} - {Vt})/({Us} - {Vt} + hbar)*k1{t}(v)*k1{s}(u)*e{s}(u) - hbar/({Us} - {Vt} + hbar)*k1{t}(v)*e{t}(v)*k1{s}(u) = 0", true},
    {"derivation.ef.anti", "e{s}(u)*f{s}(v) + f{s}(v)*e{s}(u) = hbar/(u - v)*inv(k1{s}(u))*k2{s}(u) - hbar/(u - v)*inv(k1{s}(v))*k2{s}(v)", true},
    {"derivation.ef.anti.pm", "e{s}(u)*f{t}(v) + f{t}(v)*e{s}(u) = hbar/({Ut} - {Vs})*inv(k1{s}(u))*k2{s}(u) - hbar/({Us} - {Vt})*inv(k1{t}(v))*k2{t}(v)", true},
  };
  return t;
}

/// Sign-corrected companions of relations that fail as printed.
inline const std::vector<Template>& corrected_templates() {
  static const std::vector<Template> t{
    {"corrected.X+X-", "{X+(u), X-(v)} = -hbar*(delta(u-, v+)*inv(k1+(u-))*k2+(u-) - delta(u+, v-)*inv(k1-(v-))*k2-(v-))", false},
    {"corrected.EF", "{E(u), F(v)} = -hbar*(delta(u-, v+)*K+(u-) - delta(u+, v-)*K-(v-))", false},
    {"corrected.ef", "(u - v)/(u - v + hbar)*k1{s}(u)*e{s}(u)*f{s}(v)*k1{s}(v) + (u - v)/(u - v + hbar)*f{s}(v)*k1{s}(v)*k1{s}(u)*e{s}(u) - hbar/(u - v + hbar)*(k2{s}(u) + f{s}(u)*k1{s}(u)*e{s}(u))*k1{s}(v) + hbar/(u - v + hbar)*(k2{s}(v) + f{s}(v)*k1{s}(v)*e{s}(v))*k1{s}(u) = 0", true},
    {"corrected.ef.pm", "({Ut} - {Vs})/({Ut} - {Vs} + hbar)*k1{s}(u)*e{s}(u)*f{t}(v)*k1{t}(v) + ({Us} - {Vt})/({Us} - {Vt} + hbar)*f{t}(v)*k1{t}(v)*k1{s}(u)*e{s}(u) - hbar/({Ut} - {Vs} + hbar)*(k2{s}(u) + f{s}(u)*k1{s}(u)*e{s}(u))*k1{t}(v) + hbar/({Us} - {Vt} + hbar)*(k2{t}(v) + f{t}(v)*k1{t}(v)*e{t}(v))*k1{s}(u) = 0", true},
  };
  return t;
}
// clang-format on

inline void instantiate_into(std::vector<SuiteRelation>& out, const std::string& suite, const std::vector<Template>& ts) {
  for (const auto& t : ts) {
    auto add = [&](std::string id, std::string text) {
      SuiteRelation r{std::move(id), suite, text, parse_relation(text)};
      tag_relation(r);
      out.push_back(std::move(r));
    };
    if (t.both_signs) {
      add(std::string(t.id) + ".p", instantiate(t.text, '+'));
      add(std::string(t.id) + ".m", instantiate(t.text, '-'));
    } else {
      add(t.id, t.text);
    }
  }
}

}  // namespace detail

/// The full catalogue, sorted by id.
inline std::vector<SuiteRelation> encode_paper_suite() {
  std::vector<SuiteRelation> out;
  detail::instantiate_into(out, "summary", detail::summary_templates());
  detail::instantiate_into(out, "derivation", detail::derivation_templates());
  detail::instantiate_into(out, "corrected", detail::corrected_templates());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

/// Relations of one suite; "all" selects everything.
inline std::vector<SuiteRelation> suite_relations(const std::string& name) {
  std::vector<SuiteRelation> all = encode_paper_suite();
  if (name == "all") return all;
  std::vector<SuiteRelation> out;
  for (auto& r : all)
    if (r.suite == name) out.push_back(std::move(r));
  return out;
}

}  // namespace sydy
