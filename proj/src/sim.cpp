#include "nmcheck/sim.hpp"

#include <algorithm>
#include <cctype>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>

namespace nmcheck {

std::optional<Reading> parse_reading(std::string_view word) {
  std::string w;
  for (char c : word) w += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (w == "low" || w == "l") return Reading::Low;
  if (w == "normal" || w == "n") return Reading::Normal;
  if (w == "high" || w == "h") return Reading::High;
  return std::nullopt;
}

Trace parse_trace(std::istream& in) {
  Trace trace;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const auto word = std::string_view(line).substr(first, last - first + 1);
    auto r = parse_reading(word);
    if (!r) throw TraceError(lineno, "bad reading '" + std::string(word) + "'");
    trace.readings.push_back(*r);
  }
  if (trace.readings.empty()) throw TraceError(0, "trace contains no readings");
  return trace;
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file '" + path + "'");
  return parse_trace(in);
}

Run run(const NMParams& params, const Trace& trace, ControllerVariant variant) {
  if (trace.readings.empty()) throw std::invalid_argument("trace contains no readings");
  Run out{params, {}};
  out.states.reserve(trace.readings.size() + 1);
  auto current = start_state(params);
  for (auto r : trace.readings) {
    if (r == Reading::None) throw std::invalid_argument("trace contains an empty reading");
    current.reading = r;
    out.states.push_back(current);
    const auto next = controller_step(params, current, variant);
    current = {next.powered, next.level, Reading::None};
  }
  out.states.push_back(current);
  return out;
}

void write_run(std::ostream& out, const Run& run) {
  for (std::size_t t = 0; t < run.states.size(); ++t) {
    const auto& s = run.states[t];
    out << t << ": " << encode(run.params, s);
    if (s.reading != Reading::None) out << " <- " << to_string(s.reading);
    out << '\n';
  }
}

namespace {

enum class Shape { NextStep, Invariant, Reachability };

struct SafetyPattern {
  Shape shape;
  Formula first;   // antecedent, invariant or goal
  Formula second;  // consequent for NextStep
};

SafetyPattern classify(const Formula& f) {
  if (f.op() == Op::Globally) {
    const auto& body = f.child();
    if (body.op() == Op::Implies && body.lhs().is_propositional() && body.rhs().op() == Op::Next &&
        body.rhs().child().is_propositional()) {
      return {Shape::NextStep, body.lhs(), body.rhs().child()};
    }
    if (body.is_propositional()) return {Shape::Invariant, body, Formula::tt()};
  }
  if (f.op() == Op::Not && f.child().op() == Op::Finally && f.child().child().is_propositional()) {
    return {Shape::Reachability, f.child().child(), Formula::tt()};
  }
  throw std::invalid_argument("monitor: unsupported formula shape " + to_string(f));
}

}  // namespace

MonitorReport monitor(const Run& run, const std::set<SpecId>& which, const SpecOptions& options) {
  const auto atoms = nm_atoms(run.params);
  std::vector<LabelSet> labels;
  labels.reserve(run.states.size());
  for (const auto& s : run.states) labels.push_back(nm_label(run.params, s));
  const auto holds = [&](const Formula& f, std::size_t t) { return eval_propositional(f, labels[t], atoms); };

  MonitorReport report;
  for (const auto& inst : instantiate(run.params, which, options)) {
    const auto pattern = classify(inst.formula);
    auto flag = [&](std::size_t t) { report.violations.push_back({inst.id, inst.label(), inst.indices, t}); };
    switch (pattern.shape) {
      case Shape::NextStep:
        for (std::size_t t = 0; t + 1 < labels.size(); ++t) {
          if (holds(pattern.first, t) && !holds(pattern.second, t + 1)) flag(t);
        }
        break;
      case Shape::Invariant:
        for (std::size_t t = 0; t < labels.size(); ++t) {
          if (!holds(pattern.first, t)) flag(t);
        }
        break;
      case Shape::Reachability:
        for (std::size_t t = 0; t < labels.size(); ++t) {
          if (holds(pattern.first, t)) {
            report.goal_reached = t;
            break;
          }
        }
        break;
    }
  }
  return report;
}

std::vector<std::size_t> monitor_batch(const NMParams& params, std::span<const Trace> traces,
                                       const std::set<SpecId>& which, const SpecOptions& options,
                                       ControllerVariant variant, Execution exec) {
  std::vector<std::size_t> counts(traces.size(), 0);
  const auto n = static_cast<long long>(traces.size());
  if (exec == Execution::Serial) {
    for (long long k = 0; k < n; ++k) {
      counts[k] = monitor(run(params, traces[k], variant), which, options).violations.size();
    }
    return counts;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64)
  for (long long k = 0; k < n; ++k) {
    try {
      counts[k] = monitor(run(params, traces[k], variant), which, options).violations.size();
    } catch (...) {
#pragma omp critical(nmcheck_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return counts;
}

}  // namespace nmcheck
