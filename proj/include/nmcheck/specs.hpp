#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nmcheck/check.hpp"
#include "nmcheck/execution.hpp"
#include "nmcheck/ltl.hpp"
#include "nmcheck/nm_model.hpp"

namespace nmcheck {

enum class SpecId { D1 = 1, D2, D3, D4, D5, D6, D7, D8 };

std::string to_string(SpecId id);
// "D1".."D8", case-insensitive; "D8'" accepted for D8.
std::optional<SpecId> parse_spec_id(std::string_view text);
// "all" or a comma-separated list. Throws std::invalid_argument.
std::set<SpecId> parse_spec_list(std::string_view text);
std::set<SpecId> all_specs();

enum class Polarity {
  Universal,          // must hold on every path
  RefutationWitness,  // must fail; the counterexample witnesses reachability
};

struct SpecOptions {
  // Pin the boundary section so "drop one"/"keep" are distinguished from
  // "hold"; the antecedent is pinned to exactly i powered sections as well.
  bool strict = false;
  // Level anchors as printed in the original formulas (D1 at L1, D2 at LM).
  bool literal_paper = false;
};

struct SpecInstance {
  SpecId id;
  std::vector<int> indices;  // (i) or (i, j) where the schema is parameterized
  Formula formula;
  Polarity polarity;

  // "D3[i=1,j=2]", "D2", "D8'".
  std::string label() const;
};

// Instances in canonical order: by id, then lexicographic indices.
std::vector<SpecInstance> instantiate(const NMParams& params, const std::set<SpecId>& which,
                                      const SpecOptions& options = {});

// Closed-form instance count for one schema.
std::size_t expected_instance_count(const NMParams& params, SpecId id);

struct SpecResult {
  SpecInstance instance;
  Verdict verdict;
  // Holds for universal specs, refuted for the reachability witness.
  bool met = false;
  // D8: prefix of the refutation up to the first all-powered state.
  std::optional<Witness> witness;
};

struct SuiteReport {
  NMParams params;
  SpecOptions options;
  ControllerVariant variant = ControllerVariant::Correct;
  std::size_t reachable_states = 0;
  std::vector<SpecResult> results;   // canonical instance order
  std::vector<std::string> notes;    // e.g. schemata with empty index ranges

  bool all_met() const;
};

// Builds the model once and checks every instance. The parallel path checks
// instances concurrently; results are identical to the serial path.
SuiteReport run_suite(const NMParams& params, const std::set<SpecId>& which, const SpecOptions& options = {},
                      ControllerVariant variant = ControllerVariant::Correct,
                      Execution exec = Execution::Parallel);

// Same, against an already built model.
SuiteReport run_suite(const NMModel& model, const std::set<SpecId>& which, const SpecOptions& options = {},
                      Execution exec = Execution::Parallel);

}  // namespace nmcheck
