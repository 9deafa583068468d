#include "nmcheck/specs.hpp"

#include <algorithm>
#include <cctype>
#include <exception>
#include <stdexcept>

namespace nmcheck {

std::string to_string(SpecId id) { return "D" + std::to_string(static_cast<int>(id)); }

std::optional<SpecId> parse_spec_id(std::string_view text) {
  if (text.size() == 3 && text.back() == '\'') text.remove_suffix(1);
  if (text.size() != 2 || std::toupper(static_cast<unsigned char>(text[0])) != 'D') return std::nullopt;
  const int n = text[1] - '0';
  if (n < 1 || n > 8) return std::nullopt;
  return static_cast<SpecId>(n);
}

std::set<SpecId> all_specs() {
  std::set<SpecId> out;
  for (int i = 1; i <= 8; ++i) out.insert(static_cast<SpecId>(i));
  return out;
}

std::set<SpecId> parse_spec_list(std::string_view text) {
  if (text == "all" || text == "ALL") return all_specs();
  std::set<SpecId> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    auto item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    auto id = parse_spec_id(item);
    if (!id) throw std::invalid_argument("unknown requirement '" + std::string(item) + "'");
    out.insert(*id);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("empty requirement list");
  return out;
}

std::string SpecInstance::label() const {
  std::string out = to_string(id);
  if (id == SpecId::D8) return out + "'";
  if (indices.empty()) return out;
  static constexpr const char* names[] = {"i", "j"};
  out += '[';
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k > 0) out += ',';
    out += names[k];
    out += '=' + std::to_string(indices[k]);
  }
  return out + ']';
}

namespace {

Formula section(int i) { return Formula::atom("W" + std::to_string(i)); }
Formula level(int j) { return Formula::atom("L" + std::to_string(j)); }

// W1 .. Wi appended to `parts`.
void add_prefix(std::vector<Formula>& parts, int i) {
  for (int k = 1; k <= i; ++k) parts.push_back(section(k));
}

Formula step_rule(const std::vector<Formula>& antecedent, const std::vector<Formula>& consequent) {
  return globally(implies(conj(antecedent), next(conj(consequent))));
}

}  // namespace

std::size_t expected_instance_count(const NMParams& params, SpecId id) {
  const auto n = static_cast<std::size_t>(params.sections);
  const auto m = static_cast<std::size_t>(params.levels);
  switch (id) {
    case SpecId::D1: return n;
    case SpecId::D2: return 1;
    case SpecId::D3: return n * (m - 1);
    case SpecId::D4: return n * (m - 1);
    case SpecId::D5: return n - 1;
    case SpecId::D6: return 1;
    case SpecId::D7: return n * (n - 1) / 2;
    case SpecId::D8: return 1;
  }
  return 0;
}

std::vector<SpecInstance> instantiate(const NMParams& params, const std::set<SpecId>& which,
                                      const SpecOptions& options) {
  params.validate();
  const int n = params.sections;
  const int m = params.levels;
  const Formula low = Formula::atom("l");
  const Formula normal = Formula::atom("n");
  const Formula high = Formula::atom("h");
  const bool strict = options.strict;

  // Strict antecedents describe exactly i powered sections.
  auto exactly = [&](std::vector<Formula>& parts, int i) {
    add_prefix(parts, i);
    if (strict && i < n) parts.push_back(!section(i + 1));
  };

  std::vector<SpecInstance> out;
  for (auto id : which) {
    switch (id) {
      case SpecId::D1: {
        const int anchor = options.literal_paper ? 1 : m;
        for (int i = 1; i <= n; ++i) {
          std::vector<Formula> ante{level(anchor), low};
          exactly(ante, i);
          std::vector<Formula> cons;
          add_prefix(cons, i - 1);
          if (strict) cons.push_back(!section(i));
          out.push_back({id, {i}, step_rule(ante, cons), Polarity::Universal});
        }
        break;
      }
      case SpecId::D2: {
        const int anchor = options.literal_paper ? m : 1;
        std::vector<Formula> cons;
        for (int i = 1; i <= n; ++i) cons.push_back(!section(i));
        out.push_back({id, {}, step_rule({level(anchor), high}, cons), Polarity::Universal});
        break;
      }
      case SpecId::D3:
      case SpecId::D4: {
        const bool up = id == SpecId::D3;
        for (int i = 1; i <= n; ++i) {
          for (int j = up ? 1 : 2; j <= (up ? m - 1 : m); ++j) {
            std::vector<Formula> ante{level(j), up ? low : high};
            exactly(ante, i);
            std::vector<Formula> cons{level(up ? j + 1 : j - 1)};
            exactly(cons, i);
            out.push_back({id, {i, j}, step_rule(ante, cons), Polarity::Universal});
          }
        }
        break;
      }
      case SpecId::D5:
        for (int i = 1; i <= n - 1; ++i) {
          std::vector<Formula> ante{normal};
          add_prefix(ante, i);
          std::vector<Formula> cons;
          add_prefix(cons, i + 1);
          out.push_back({id, {i}, step_rule(ante, cons), Polarity::Universal});
        }
        break;
      case SpecId::D6: {
        std::vector<Formula> ante{normal};
        add_prefix(ante, n);
        std::vector<Formula> cons;
        add_prefix(cons, n);
        out.push_back({id, {}, step_rule(ante, cons), Polarity::Universal});
        break;
      }
      case SpecId::D7:
        for (int i = 1; i <= n; ++i) {
          for (int j = i + 1; j <= n; ++j) {
            out.push_back({id, {i, j}, globally(!(!section(i) && section(j))), Polarity::Universal});
          }
        }
        break;
      case SpecId::D8: {
        std::vector<Formula> all;
        add_prefix(all, n);
        out.push_back({id, {}, !finally(conj(all)), Polarity::RefutationWitness});
        break;
      }
    }
  }
  return out;
}

bool SuiteReport::all_met() const {
  return std::all_of(results.begin(), results.end(), [](const SpecResult& r) { return r.met; });
}

namespace {

// First all-powered state along the refutation of !F(goal).
std::optional<Witness> reachability_witness(const TransitionSystem& ts, const Formula& goal,
                                            const Counterexample& cex) {
  Witness w;
  for (const auto& part : {cex.stem, cex.cycle}) {
    for (auto s : part) {
      w.states.push_back(s);
      if (eval_propositional(goal, ts.label(s), ts.atoms())) return w;
    }
  }
  return std::nullopt;
}

SpecResult check_instance(const TransitionSystem& ts, const SpecInstance& inst) {
  SpecResult r{inst, check(ts, inst.formula), false, std::nullopt};
  if (inst.polarity == Polarity::Universal) {
    r.met = r.verdict.holds;
  } else {
    r.met = !r.verdict.holds;
    if (r.verdict.counterexample) {
      // formula is !F(goal)
      r.witness = reachability_witness(ts, inst.formula.child().child(), *r.verdict.counterexample);
    }
  }
  return r;
}

}  // namespace

SuiteReport run_suite(const NMModel& model, const std::set<SpecId>& which, const SpecOptions& options,
                      Execution exec) {
  SuiteReport report;
  report.params = model.params;
  report.options = options;
  report.variant = model.variant;
  report.reachable_states = reachable(model.system).size();

  const auto instances = instantiate(model.params, which, options);
  for (auto id : which) {
    if (expected_instance_count(model.params, id) == 0) {
      report.notes.push_back(to_string(id) + ": index range is empty for N=" +
                             std::to_string(model.params.sections) + ", M=" +
                             std::to_string(model.params.levels) + "; no instances");
    }
  }

  std::vector<std::optional<SpecResult>> slots(instances.size());
  const auto count = static_cast<long long>(instances.size());
  if (exec == Execution::Serial) {
    for (long long k = 0; k < count; ++k) slots[k] = check_instance(model.system, instances[k]);
  } else {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long long k = 0; k < count; ++k) {
      try {
        slots[k] = check_instance(model.system, instances[k]);
      } catch (...) {
#pragma omp critical(nmcheck_suite_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  for (auto& s : slots) report.results.push_back(std::move(*s));
  return report;
}

SuiteReport run_suite(const NMParams& params, const std::set<SpecId>& which, const SpecOptions& options,
                      ControllerVariant variant, Execution exec) {
  return run_suite(build_transition_system(params, variant), which, options, exec);
}

}  // namespace nmcheck
