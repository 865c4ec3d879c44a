#pragma once

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sydy/hopf.hpp"
#include "sydy/modealg.hpp"
#include "sydy/suite.hpp"

namespace sydy {

class ConfigError : public Error {
 public:
  using Error::Error;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"ybe", "unitarity", "weight", "rll-eval", "relations", "hopf", "ideal", "file"};
  return names;
}

struct RunConfig {
  std::string command = "relations";
  std::string suite = "all";
  long window = 8;
  long degree = 2;
  long modes = 2;
  std::string family = "plus-plus";
  std::string candidate_file;
  std::string relation_file;
  Specialization specialize;
  std::string format = "text";
  bool deterministic = false;
  unsigned jobs = 1;
  std::size_t basis_cap = 20000;

  void validate() const {
    if (std::find(command_names().begin(), command_names().end(), command) == command_names().end())
      throw ConfigError("unknown command '" + command + "'");
    if (window < 2) throw ConfigError("window must be at least 2");
    if (degree < 2) throw ConfigError("degree must be at least 2");
    if (modes < 1) throw ConfigError("modes must be at least 1");
    if (jobs < 1) throw ConfigError("jobs must be at least 1");
    if (format != "text" && format != "json") throw ConfigError("format must be text or json");
    if (!family_from_name(family)) throw ConfigError("unknown family '" + family + "'");
    if (command == "relations") {
      const auto& names = suite_names();
      if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
        throw ConfigError("unknown suite '" + suite + "'");
    }
    if (command == "file" && relation_file.empty()) throw ConfigError("check file needs a path");
    for (const auto& [x, value] : specialize) {
      if (x == Var::u || x == Var::v) throw ConfigError("spectral variables cannot be specialized");
      if (x == Var::hbar && value.is_zero()) throw ConfigError("hbar = 0 is not allowed: the checks divide by hbar");
    }
  }
};

/// Parses "hbar=1,w=2/3" into a specialization map.
inline Specialization parse_specialization(const std::vector<std::string>& items) {
  Specialization out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("specialization '" + item + "' is not of the form var=value");
    const auto var = var_from_name(item.substr(0, eq));
    if (!var) throw ConfigError("unknown variable '" + item.substr(0, eq) + "'");
    Rational value;
    try {
      value = Rational(item.substr(eq + 1));
      value.canonicalize();
    } catch (const std::invalid_argument&) {
      throw ConfigError("value '" + item.substr(eq + 1) + "' is not a rational number");
    }
    out[*var] = RationalFunction(value);
  }
  return out;
}

struct SuiteReport {
  RunConfig config;
  std::vector<CheckReport> results;
  std::int64_t millis = 0;

  std::size_t count(Verdict v) const {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [v](const CheckReport& r) { return r.verdict == v; }));
  }
  bool all_passed() const { return count(Verdict::pass) == results.size(); }
  int exit_code() const { return all_passed() ? 0 : 1; }
};

namespace detail {

using Task = std::function<std::vector<CheckReport>()>;

/// Runs the tasks on up to `jobs` threads; results keep task order.
inline std::vector<CheckReport> run_tasks(const std::vector<Task>& tasks, unsigned jobs) {
  std::vector<std::vector<CheckReport>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) slots[t] = tasks[t]();
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
  }
  std::vector<CheckReport> out;
  for (auto& s : slots)
    for (auto& r : s) out.push_back(std::move(r));
  return out;
}

/// Rational and/or mode-by-mode check of one relation, folded into one report.
inline CheckReport check_tagged(const SuiteRelation& r, const RepContext& ctx, long n) {
  Stopwatch clock;
  CheckReport rep{.id = r.id};
  std::vector<std::string> kinds;
  if (r.rational) {
    kinds.emplace_back("rational");
    CheckReport x = check_relation_rational(r.relation, ctx, r.id);
    if (x.witness) x.witness->location = "rational " + x.witness->location;
    rep.absorb(CheckReport{.verdict = x.verdict, .witness = x.witness});
  }
  if (r.distributional && rep.verdict != Verdict::fail) {
    kinds.emplace_back("modes");
    rep.window = static_cast<int>(n);
    const CheckReport x = check_relation_distributional(r.relation, ctx, n, r.id);
    rep.absorb(CheckReport{.verdict = x.verdict, .witness = x.witness});
  }
  for (std::size_t k = 0; k < kinds.size(); ++k) rep.note += (k ? "+" : "") + kinds[k];
  rep.millis = clock.millis();
  return rep;
}

inline std::vector<Task> relation_tasks(std::vector<SuiteRelation> rels, const RunConfig& cfg) {
  std::vector<Task> tasks;
  for (auto& r : rels)
    tasks.push_back([r = std::move(r), &cfg] {
      const RepContext ctx = RepContext::evaluation(Var::w, cfg.specialize);
      return std::vector<CheckReport>{check_tagged(r, ctx, cfg.window)};
    });
  return tasks;
}

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

/// Relation file: one relation per line, '#' starts a comment, blank lines are skipped.
inline std::vector<SuiteRelation> read_relation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::vector<SuiteRelation> out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      char id[32];
      std::snprintf(id, sizeof id, "line.%04zu", no);
      SuiteRelation r{id, "file", line, parse_relation(line)};
      tag_relation(r);
      out.push_back(std::move(r));
    } catch (const ParseError& e) {
      throw ConfigError(path + ":" + std::to_string(no) + ":" + std::to_string(e.span().column) + ": " + e.message());
    }
  }
  return out;
}

inline std::vector<std::pair<std::string, FreeElement>> read_candidate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::vector<std::pair<std::string, FreeElement>> out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      out.emplace_back(line, parse_free_element(line));
    } catch (const ParseError& e) {
      throw ConfigError(path + ":" + std::to_string(no) + ":" + std::to_string(e.span().column) + ": " + e.message());
    }
  }
  return out;
}

inline std::vector<Task> ideal_tasks(const RunConfig& cfg) {
  const Family fam = *family_from_name(cfg.family);
  std::vector<Task> tasks;
  tasks.push_back([fam, &cfg] {
    CheckReport r = check_relations_in_rep(fam, cfg.modes);
    if (!cfg.specialize.empty()) r.note += "; specialization ignored for the representation modes";
    return std::vector<CheckReport>{r};
  });
  auto candidates = cfg.candidate_file.empty() ? standard_candidates(cfg.modes) : read_candidate_file(cfg.candidate_file);
  std::vector<FreeElement> elems;
  auto labels = std::make_shared<std::vector<std::string>>();
  for (auto& r : extract_mode_relations(fam, cfg.modes)) {
    if (r.element.is_zero()) continue;
    labels->push_back(r.label());
    elems.push_back(std::move(r.element));
  }
  auto relations = std::make_shared<const std::vector<FreeElement>>(std::move(elems));
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    char id[64];
    std::snprintf(id, sizeof id, "modealg.ideal.%02zu", k);
    tasks.push_back([name = candidates[k].first, cand = candidates[k].second, relations, labels, id = std::string(id), &cfg] {
      Stopwatch clock;
      CheckReport rep{.id = id, .window = static_cast<int>(cfg.degree)};
      try {
        const MembershipResult m = ideal_membership(cand, *relations, static_cast<std::size_t>(cfg.degree), cfg.basis_cap, id);
        rep = m.report;
        for (const auto& t : m.certificate) rep.details.push_back(to_string(t) + "  " + (*labels)[t.relation]);
      } catch (const BasisCapExceeded& e) {
        rep.fail({"basis cap", std::to_string(e.size()), "cap " + std::to_string(e.cap())});
      } catch (const Error& e) {
        rep.fail({"candidate", e.what(), ""});
      }
      rep.note = name + (rep.note.empty() ? "" : "; " + rep.note);
      rep.millis = clock.millis();
      return std::vector<CheckReport>{rep};
    });
  }
  return tasks;
}

}  // namespace detail

/// Executes the selected suite; results are ordered by id.
inline SuiteReport run(const RunConfig& cfg) {
  cfg.validate();
  Stopwatch clock;
  SuiteReport report{cfg};
  std::vector<detail::Task> tasks;
  const std::string& c = cfg.command;
  if (c == "ybe") {
    tasks.push_back([] { return std::vector<CheckReport>{check_sybe(build_r(Var::u))}; });
  } else if (c == "unitarity") {
    tasks.push_back([] { return std::vector<CheckReport>{check_unitarity(build_r(Var::u))}; });
  } else if (c == "weight") {
    tasks.push_back([] { return std::vector<CheckReport>{check_weight_conservation(build_r(Var::u))}; });
  } else if (c == "rll-eval") {
    tasks.push_back([] { return std::vector<CheckReport>{check_rll(build_eval_L(Var::w))}; });
  } else if (c == "relations") {
    tasks = detail::relation_tasks(suite_relations(cfg.suite), cfg);
  } else if (c == "file") {
    tasks = detail::relation_tasks(detail::read_relation_file(cfg.relation_file), cfg);
  } else if (c == "hopf") {
    tasks.push_back([&cfg] { return run_hopf_suite(cfg.window); });
  } else if (c == "ideal") {
    tasks = detail::ideal_tasks(cfg);
  }
  report.results = detail::run_tasks(tasks, cfg.jobs);
  std::stable_sort(report.results.begin(), report.results.end(),
                   [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
  report.millis = clock.millis();
  if (cfg.deterministic) {
    report.millis = 0;
    for (auto& r : report.results) r.millis = 0;
  }
  return report;
}

inline std::string specialization_caveat() {
  return "results hold for the specialized values only, not as identities in the symbolic parameters";
}

inline nlohmann::ordered_json to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["command"] = cfg.command;
  if (cfg.command == "relations") j["suite"] = cfg.suite;
  if (cfg.command == "file") j["file"] = cfg.relation_file;
  j["window"] = cfg.window;
  if (cfg.command == "ideal") {
    j["family"] = cfg.family;
    j["modes"] = cfg.modes;
    j["degree"] = cfg.degree;
    if (!cfg.candidate_file.empty()) j["candidate"] = cfg.candidate_file;
  }
  nlohmann::ordered_json spec = nlohmann::ordered_json::object();
  for (const auto& [x, v] : cfg.specialize) spec[std::string(var_name(x, Style::dsl))] = v.to_string();
  j["specialize"] = spec;
  if (!cfg.specialize.empty()) j["caveat"] = specialization_caveat();
  j["deterministic"] = cfg.deterministic;
  return j;
}

inline nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["verdict"] = to_string(r.verdict);
  if (r.witness) j["witness"] = {{"location", r.witness->location}, {"lhs", r.witness->lhs}, {"rhs", r.witness->rhs}};
  j["millis"] = r.millis;
  if (r.window) j["window"] = *r.window;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

inline std::string emit_json(const SuiteReport& rep) {
  nlohmann::ordered_json j;
  j["config"] = to_json(rep.config);
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : rep.results) j["results"].push_back(to_json(r));
  j["summary"] = {{"pass", rep.count(Verdict::pass)}, {"fail", rep.count(Verdict::fail)}};
  if (const auto n = rep.count(Verdict::window_exhausted)) j["summary"]["window-exhausted"] = n;
  j["millis"] = rep.millis;
  return j.dump(2) + "\n";
}

/// Compact "{"results": [], "summary": {...}}" form for an empty suite.
inline std::string emit_results_only(const std::vector<CheckReport>& results) {
  SuiteReport rep;
  rep.results = results;
  nlohmann::ordered_json j;
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : results) j["results"].push_back(to_json(r));
  j["summary"] = {{"pass", rep.count(Verdict::pass)}, {"fail", rep.count(Verdict::fail)}};
  return j.dump();
}

namespace detail {

inline std::string clip(const std::string& s, std::size_t n) { return s.size() <= n ? s : s.substr(0, n - 3) + "..."; }

}  // namespace detail

inline std::string emit_text(const SuiteReport& rep) {
  std::ostringstream os;
  os << std::left << std::setw(34) << "ID" << std::setw(18) << "VERDICT" << std::right << std::setw(8) << "MS"
     << "  DETAIL\n";
  for (const auto& r : rep.results) {
    os << std::left << std::setw(34) << r.id << std::setw(18) << to_string(r.verdict) << std::right << std::setw(8)
       << r.millis << "  ";
    if (r.witness) {
      os << r.witness->location << ": " << detail::clip(r.witness->lhs, 80) << " != " << detail::clip(r.witness->rhs, 80);
    } else {
      os << r.note;
    }
    os << "\n";
    for (const auto& d : r.details) os << std::string(62, ' ') << d << "\n";
  }
  os << "pass " << rep.count(Verdict::pass) << ", fail " << rep.count(Verdict::fail);
  if (const auto n = rep.count(Verdict::window_exhausted)) os << ", window-exhausted " << n;
  os << ", " << rep.millis << " ms\n";
  if (!rep.config.specialize.empty()) os << "caveat: " << specialization_caveat() << "\n";
  return os.str();
}

inline std::string emit_report(const SuiteReport& rep, const std::string& format) {
  return format == "json" ? emit_json(rep) : emit_text(rep);
}

}  // namespace sydy
