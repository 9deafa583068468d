#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nmcheck/execution.hpp"
#include "nmcheck/nm_model.hpp"
#include "nmcheck/specs.hpp"

namespace nmcheck {

struct Trace {
  std::vector<Reading> readings;  // nonempty, never Reading::None
};

class TraceError : public std::runtime_error {
 public:
  TraceError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// low/normal/high or l/n/h, case-insensitive.
std::optional<Reading> parse_reading(std::string_view word);

// One reading per line; '#' comments and blank lines are skipped.
Trace parse_trace(std::istream& in);
Trace read_trace_file(const std::string& path);

// states[t] carries readings[t]; the final state has no reading yet.
struct Run {
  NMParams params;
  std::vector<NMState> states;
};

Run run(const NMParams& params, const Trace& trace, ControllerVariant variant = ControllerVariant::Correct);

// "t: <bits> <- reading" per step, final state without a reading.
void write_run(std::ostream& out, const Run& run);

struct Violation {
  SpecId id;
  std::string label;
  std::vector<int> indices;
  std::size_t position;
};

struct MonitorReport {
  std::vector<Violation> violations;  // ordered by instance, then position
  std::optional<std::size_t> goal_reached;  // first all-powered position
};

// Weak finite-trace reading of the schemata: G(a -> X c) is violated at t when
// a holds at t and c fails at t+1; trailing obligations are not violations.
MonitorReport monitor(const Run& run, const std::set<SpecId>& which, const SpecOptions& options = {});

// Replays and monitors every trace; returns the violation count per trace.
std::vector<std::size_t> monitor_batch(const NMParams& params, std::span<const Trace> traces,
                                       const std::set<SpecId>& which, const SpecOptions& options = {},
                                       ControllerVariant variant = ControllerVariant::Correct,
                                       Execution exec = Execution::Parallel);

}  // namespace nmcheck
