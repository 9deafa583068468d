#include "nmcheck/report.hpp"

#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace nmcheck {

namespace {

std::string label_text(const TransitionSystem& ts, StateId s) {
  std::string out = "{";
  bool first = true;
  for (auto a : ts.label(s).members()) {
    if (!first) out += ' ';
    out += ts.atoms().name(a);
    first = false;
  }
  return out + "}";
}

nlohmann::json state_json(const TransitionSystem& ts, StateId s, const NMModel* model) {
  nlohmann::json labels = nlohmann::json::array();
  for (auto a : ts.label(s).members()) labels.push_back(ts.atoms().name(a));
  nlohmann::json j{{"id", s}, {"labels", labels}};
  if (model) j["bits"] = encode(model->params, model->states[s]);
  return j;
}

const char* mode_name(const SpecOptions& o) { return o.strict ? "strict" : "faithful"; }

}  // namespace

void write_counterexample(std::ostream& out, const TransitionSystem& ts, const Counterexample& cex,
                          const NMModel* model) {
  out << "    counterexample: stem " << cex.stem.size() << ", cycle " << cex.cycle.size() << '\n';
  std::size_t pos = 0;
  auto line = [&](const char* part, StateId s) {
    out << "      " << part << ' ' << std::setw(3) << pos++ << ": s" << s;
    if (model) out << "  " << encode(model->params, model->states[s]);
    out << "  " << label_text(ts, s) << '\n';
  };
  for (auto s : cex.stem) line("stem ", s);
  for (auto s : cex.cycle) line("cycle", s);
  out << "      (cycle returns to position " << cex.stem.size() << ")\n";
}

nlohmann::json counterexample_json(const TransitionSystem& ts, const Counterexample& cex, const NMModel* model) {
  nlohmann::json states = nlohmann::json::array();
  for (auto s : cex.stem) states.push_back(state_json(ts, s, model));
  for (auto s : cex.cycle) states.push_back(state_json(ts, s, model));
  return {{"stem", cex.stem}, {"cycle", cex.cycle}, {"loop_start", cex.stem.size()}, {"states", states}};
}

std::string suite_summary(const SuiteReport& report) {
  // Per requirement: (instances, instances met).
  std::map<SpecId, std::pair<std::size_t, std::size_t>> tally;
  for (const auto& r : report.results) {
    auto& [total, met] = tally[r.instance.id];
    ++total;
    if (r.met) ++met;
  }
  std::vector<std::string> held;
  std::vector<std::string> parts;
  for (const auto& [id, counts] : tally) {
    if (id == SpecId::D8) continue;
    if (counts.first == counts.second) {
      held.push_back(to_string(id));
    } else {
      parts.push_back(to_string(id) + " violated (" + std::to_string(counts.first - counts.second) + " of " +
                      std::to_string(counts.first) + " instances)");
    }
  }
  std::string held_text;
  if (!held.empty()) {
    bool contiguous = held.size() > 2;
    for (std::size_t k = 1; k < held.size() && contiguous; ++k) {
      contiguous = parse_spec_id(held[k]) == static_cast<SpecId>(static_cast<int>(*parse_spec_id(held[k - 1])) + 1);
    }
    if (contiguous) {
      held_text = held.front() + ".." + held.back();
    } else {
      for (std::size_t k = 0; k < held.size(); ++k) held_text += (k ? ", " : "") + held[k];
    }
    held_text += held.size() == 1 ? " holds" : " hold";
    parts.insert(parts.begin(), held_text);
  }
  if (auto it = tally.find(SpecId::D8); it != tally.end()) {
    parts.push_back(it->second.second == it->second.first ? "D8 witnessed" : "D8 not witnessed");
  }
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "; " : "") + parts[k];
  return out.empty() ? "no requirements selected" : out;
}

void write_suite_text(std::ostream& out, const SuiteReport& report, const NMModel& model) {
  out << "N-M model: N=" << report.params.sections << " M=" << report.params.levels << ", "
      << report.reachable_states << " reachable states, " << mode_name(report.options) << " requirements";
  if (report.options.literal_paper) out << ", literal level anchors";
  if (report.variant != ControllerVariant::Correct) out << ", controller " << to_string(report.variant);
  out << '\n';
  for (const auto& note : report.notes) out << "note: " << note << '\n';
  for (const auto& r : report.results) {
    out << "  " << std::left << std::setw(16) << r.instance.label() << std::right;
    if (r.instance.polarity == Polarity::Universal) {
      out << (r.verdict.holds ? "holds   " : "VIOLATED");
    } else {
      out << (r.met ? "refuted " : "HOLDS   ");
    }
    out << "  " << to_display(r.instance.formula) << '\n';
    if (r.instance.polarity == Polarity::Universal && r.verdict.counterexample) {
      write_counterexample(out, model.system, *r.verdict.counterexample, &model);
    }
    if (r.witness) {
      out << "    D8 witness (" << r.witness->length() << " steps):";
      for (auto s : r.witness->states) out << "  " << encode(model.params, model.states[s]);
      out << '\n';
    }
  }
  out << "summary: " << suite_summary(report) << '\n';
}

nlohmann::json suite_json(const SuiteReport& report, const NMModel& model) {
  nlohmann::json results = nlohmann::json::array();
  for (const auto& r : report.results) {
    nlohmann::json j{{"label", r.instance.label()},
                     {"id", to_string(r.instance.id)},
                     {"indices", r.instance.indices},
                     {"formula", to_display(r.instance.formula)},
                     {"polarity", r.instance.polarity == Polarity::Universal ? "universal" : "refutation-witness"},
                     {"holds", r.verdict.holds},
                     {"met", r.met}};
    if (r.verdict.counterexample) {
      j["counterexample"] = counterexample_json(model.system, *r.verdict.counterexample, &model);
    }
    if (r.witness) {
      nlohmann::json bits = nlohmann::json::array();
      for (auto s : r.witness->states) bits.push_back(encode(model.params, model.states[s]));
      j["witness"] = {{"states", r.witness->states}, {"length", r.witness->length()}, {"bits", bits}};
    }
    results.push_back(std::move(j));
  }
  return {{"sections", report.params.sections},
          {"levels", report.params.levels},
          {"mode", mode_name(report.options)},
          {"literal_paper", report.options.literal_paper},
          {"controller", to_string(report.variant)},
          {"reachable_states", report.reachable_states},
          {"notes", report.notes},
          {"results", results},
          {"summary", suite_summary(report)},
          {"all_met", report.all_met()}};
}

void write_monitor_text(std::ostream& out, const MonitorReport& report) {
  if (report.violations.empty()) {
    out << "violations: none\n";
  } else {
    out << "violations: " << report.violations.size() << '\n';
    for (const auto& v : report.violations) out << "  " << v.label << " at position " << v.position << '\n';
  }
  if (report.goal_reached) {
    out << "D8 goal reached at position " << *report.goal_reached << '\n';
  }
}

nlohmann::json run_json(const Run& run, const MonitorReport& report) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t t = 0; t < run.states.size(); ++t) {
    const auto& s = run.states[t];
    nlohmann::json j{{"t", t}, {"bits", encode(run.params, s)}, {"powered", s.powered}, {"level", s.level}};
    if (s.reading != Reading::None) j["reading"] = to_string(s.reading);
    steps.push_back(std::move(j));
  }
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"label", v.label}, {"id", to_string(v.id)}, {"indices", v.indices}, {"position", v.position}});
  }
  nlohmann::json out{{"steps", steps}, {"violations", violations}};
  out["goal_reached"] = report.goal_reached ? nlohmann::json(*report.goal_reached) : nlohmann::json(nullptr);
  return out;
}

}  // namespace nmcheck
