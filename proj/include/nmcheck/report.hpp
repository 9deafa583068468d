#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "nmcheck/check.hpp"
#include "nmcheck/nm_model.hpp"
#include "nmcheck/sim.hpp"
#include "nmcheck/specs.hpp"

namespace nmcheck {

// When `model` is given, states also show their decoded bit string.
void write_counterexample(std::ostream& out, const TransitionSystem& ts, const Counterexample& cex,
                          const NMModel* model = nullptr);
nlohmann::json counterexample_json(const TransitionSystem& ts, const Counterexample& cex,
                                   const NMModel* model = nullptr);

// One-line outcome, e.g. "D1..D7 hold; D8 witnessed".
std::string suite_summary(const SuiteReport& report);

void write_suite_text(std::ostream& out, const SuiteReport& report, const NMModel& model);
nlohmann::json suite_json(const SuiteReport& report, const NMModel& model);

void write_monitor_text(std::ostream& out, const MonitorReport& report);
nlohmann::json run_json(const Run& run, const MonitorReport& report);

}  // namespace nmcheck
