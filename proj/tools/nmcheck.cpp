// nmcheck: generate, verify, simulate and export the N-M switching controller.
//
// Exit codes: 0 all selected obligations met, 1 some obligation violated,
// 2 usage or input error.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nmcheck/check.hpp"
#include "nmcheck/kripke.hpp"
#include "nmcheck/ltl.hpp"
#include "nmcheck/nm_model.hpp"
#include "nmcheck/report.hpp"
#include "nmcheck/sim.hpp"
#include "nmcheck/smv_export.hpp"
#include "nmcheck/specs.hpp"

namespace {

using namespace nmcheck;

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kUsage = 2;

struct ModelArgs {
  int sections = 0;
  int levels = 0;
};

void add_model_args(CLI::App* cmd, ModelArgs& args) {
  cmd->add_option("--sections,-N", args.sections, "number of sections N")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--levels,-M", args.levels, "number of regulator levels M")->required()->check(CLI::PositiveNumber);
}

NMParams params_of(const ModelArgs& a) { return {a.sections, a.levels}; }

const std::map<std::string, ControllerVariant> kControllers{
    {"correct", ControllerVariant::Correct},
    {"always-level-up-on-low", ControllerVariant::AlwaysLevelUpOnLow},
    {"skip-section-increment", ControllerVariant::SkipSectionIncrement},
    {"hold-on-high-at-minimum", ControllerVariant::HoldOnHighAtMinimum},
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::set<SpecId> spec_list(const std::string& text, const char* flag) {
  try {
    return parse_spec_list(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

int cmd_build(const ModelArgs& args, const std::string& out_path) {
  const auto model = build_transition_system(params_of(args));
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw UsageError("--out: cannot write '" + out_path + "'");
    write_model(out, model.system);
  }
  std::cout << "reachable states: " << reachable(model.system).size() << '\n';
  return kOk;
}

int cmd_check(const ModelArgs& args, const std::string& specs, const SpecOptions& options,
              const std::string& controller, const std::string& format) {
  const auto which = spec_list(specs, "--spec");
  const auto model = build_transition_system(params_of(args), kControllers.at(controller));
  const auto report = run_suite(model, which, options);
  if (format == "json") {
    std::cout << suite_json(report, model).dump(2) << '\n';
  } else {
    write_suite_text(std::cout, report, model);
  }
  return report.all_met() ? kOk : kViolated;
}

int cmd_check_file(const std::string& model_path, const std::string& formula_text, const std::string& format) {
  TransitionSystem ts = [&] {
    try {
      return read_model_file(model_path);
    } catch (const std::runtime_error& e) {
      throw UsageError("--model: " + std::string(e.what()));
    }
  }();
  Formula f = [&] {
    try {
      return parse(formula_text);
    } catch (const LtlSyntaxError& e) {
      throw UsageError("--formula: " + std::string(e.what()));
    }
  }();
  Verdict v;
  try {
    v = check(ts, f);
  } catch (const KripkeError& e) {
    throw UsageError("--formula: " + std::string(e.what()));
  }
  if (format == "json") {
    nlohmann::json j{{"formula", to_display(f)}, {"holds", v.holds}};
    if (v.counterexample) j["counterexample"] = counterexample_json(ts, *v.counterexample);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << to_display(f) << ": " << (v.holds ? "holds" : "VIOLATED") << '\n';
    if (v.counterexample) write_counterexample(std::cout, ts, *v.counterexample);
  }
  return v.holds ? kOk : kViolated;
}

int cmd_simulate(const ModelArgs& args, const std::string& trace_path, const std::string& specs,
                 const SpecOptions& options, const std::string& controller, const std::string& format) {
  const auto which = spec_list(specs, "--monitor");
  Trace trace;
  try {
    trace = read_trace_file(trace_path);
  } catch (const std::runtime_error& e) {
    throw UsageError("--trace: " + std::string(e.what()));
  }
  const auto r = run(params_of(args), trace, kControllers.at(controller));
  const auto report = monitor(r, which, options);
  if (format == "json") {
    std::cout << run_json(r, report).dump(2) << '\n';
  } else {
    write_run(std::cout, r);
    write_monitor_text(std::cout, report);
  }
  return report.violations.empty() ? kOk : kViolated;
}

int cmd_export(const ModelArgs& args, const std::string& specs, const SpecOptions& options,
               const std::string& out_path) {
  const auto text = export_smv(params_of(args), spec_list(specs, "--spec"), options);
  std::ofstream out(out_path);
  if (!out) throw UsageError("--out: cannot write '" + out_path + "'");
  out << text;
  return kOk;
}

int cmd_encodings(const ModelArgs& args, bool list) {
  const auto params = params_of(args);
  std::cout << count_valid_encodings(params) << '\n';
  if (list) {
    for (const auto& s : enumerate_valid_encodings(params)) std::cout << s << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit-state LTL checker for the N-M switching control system"};
  app.require_subcommand(1);

  ModelArgs model_args;
  std::string out_path;
  std::string specs = "all";
  std::string format = "text";
  std::string controller = "correct";
  std::string model_path;
  std::string formula_text;
  std::string trace_path;
  SpecOptions options;
  bool list = false;

  auto add_spec_flags = [&](CLI::App* cmd) {
    cmd->add_flag("--strict", options.strict, "pin the boundary section in requirement consequents");
    cmd->add_flag("--literal-paper", options.literal_paper, "anchor D1 at L1 and D2 at LM");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_controller = [&](CLI::App* cmd) {
    cmd->add_option("--controller", controller, "controller variant (fault injection)")
        ->check(CLI::IsMember({"correct", "always-level-up-on-low", "skip-section-increment",
                               "hold-on-high-at-minimum"}));
  };

  auto* build = app.add_subcommand("build", "write the generated model in model text format");
  add_model_args(build, model_args);
  build->add_option("--out", out_path, "model file to write");

  auto* check_cmd = app.add_subcommand("check", "check requirements D1..D8 on the generated model");
  add_model_args(check_cmd, model_args);
  check_cmd->add_option("--spec", specs, "comma-separated requirement list or 'all'");
  add_spec_flags(check_cmd);
  add_format(check_cmd);
  add_controller(check_cmd);

  auto* check_file = app.add_subcommand("check-file", "check an LTL formula against a model file");
  check_file->add_option("--model", model_path, "model text file")->required();
  check_file->add_option("--formula", formula_text, "LTL formula")->required();
  add_format(check_file);

  auto* simulate = app.add_subcommand("simulate", "replay a reading trace and monitor requirements");
  add_model_args(simulate, model_args);
  simulate->add_option("--trace", trace_path, "trace file, one reading per line")->required();
  simulate->add_option("--monitor", specs, "comma-separated requirement list or 'all'");
  add_spec_flags(simulate);
  add_format(simulate);
  add_controller(simulate);

  auto* export_cmd = app.add_subcommand("export-smv", "emit the model and requirements as SMV text");
  add_model_args(export_cmd, model_args);
  export_cmd->add_option("--spec", specs, "comma-separated requirement list or 'all'");
  export_cmd->add_option("--out", out_path, "SMV file to write")->required();
  add_spec_flags(export_cmd);

  auto* encodings = app.add_subcommand("encodings", "count (and list) the valid bit strings");
  add_model_args(encodings, model_args);
  encodings->add_flag("--list", list, "print every valid bit string");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*build) return cmd_build(model_args, out_path);
    if (*check_cmd) return cmd_check(model_args, specs, options, controller, format);
    if (*check_file) return cmd_check_file(model_path, formula_text, format);
    if (*simulate) return cmd_simulate(model_args, trace_path, specs, options, controller, format);
    if (*export_cmd) return cmd_export(model_args, specs, options, out_path);
    if (*encodings) return cmd_encodings(model_args, list);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
