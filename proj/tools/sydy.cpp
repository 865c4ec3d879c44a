#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sydy/runner.hpp"

namespace {

constexpr int kUsageError = 2;

int show_currents(const std::string& at, const std::string& format) {
  const auto var = sydy::var_from_name(at);
  if (!var || *var == sydy::Var::u || *var == sydy::Var::hbar || *var == sydy::Var::c) {
    std::cerr << "error: --at must be one of w, w1, w2, v\n";
    return kUsageError;
  }
  const sydy::CurrentSet cs = sydy::transform_currents(sydy::gauss_decompose(sydy::build_eval_L(*var)));
  const std::pair<const char*, const sydy::GradedMatrix*> rows[] = {{"k1", &cs.k1}, {"k2", &cs.k2}, {"e", &cs.e},
                                                                   {"f", &cs.f},   {"K", &cs.K},   {"H", &cs.H},
                                                                   {"E", &cs.E},   {"F", &cs.F}};
  if (format == "json") {
    nlohmann::ordered_json j;
    j["at"] = at;
    for (const auto& [name, m] : rows) j[name] = m->to_string();
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& [name, m] : rows) std::cout << std::left << std::setw(4) << name << m->to_string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic checks for the super Yangian double DY(gl(1|1))"};
  app.require_subcommand(1);

  sydy::RunConfig cfg;
  std::vector<std::string> spec;
  std::string target;
  std::string path;

  CLI::App* check = app.add_subcommand("check", "Run a check suite");
  check->add_option("target", target, "ybe|unitarity|weight|rll-eval|relations|hopf|ideal|file")
      ->required()
      ->check(CLI::IsMember(sydy::command_names()));
  check->add_option("path", path, "Relation file for 'check file'");
  check->add_option("--window", cfg.window, "Mode window N")->capture_default_str();
  check->add_option("--degree", cfg.degree, "Ideal-membership degree D")->capture_default_str();
  check->add_option("--modes", cfg.modes, "Mode bound for extracted relations")->capture_default_str();
  check->add_option("--family", cfg.family, "plus-plus|minus-minus|plus-minus")->capture_default_str();
  check->add_option("--candidate", cfg.candidate_file, "Candidate file for 'check ideal'");
  check->add_option("--suite", cfg.suite, "summary|derivation|corrected|all")->capture_default_str();
  check->add_option("--specialize", spec, "Specializations such as hbar=1")->delimiter(',');
  check->add_option("--format", cfg.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  check->add_flag("--deterministic", cfg.deterministic, "Zero all timing fields");
  check->add_option("--jobs", cfg.jobs, "Parallelism")->capture_default_str();
  check->add_option("--basis-cap", cfg.basis_cap, "Largest ideal-membership word basis")->capture_default_str();

  std::string what;
  std::string at = "w";
  std::string show_format = "text";
  CLI::App* show = app.add_subcommand("show", "Print representation data");
  show->add_option("what", what, "currents")->required()->check(CLI::IsMember({"currents"}));
  show->add_option("--at", at, "Evaluation point")->capture_default_str();
  show->add_option("--format", show_format, "text|json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  if (*show) return show_currents(at, show_format);

  try {
    cfg.command = target;
    if (target == "file") {
      if (path.empty()) throw sydy::ConfigError("check file needs a path");
      cfg.relation_file = path;
    } else if (!path.empty()) {
      throw sydy::ConfigError("unexpected argument '" + path + "'");
    }
    cfg.specialize = sydy::parse_specialization(spec);
    const sydy::SuiteReport report = sydy::run(cfg);
    std::cout << sydy::emit_report(report, cfg.format);
    return report.exit_code();
  } catch (const sydy::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
