#pragma once

#include <set>
#include <string>

#include "nmcheck/nm_model.hpp"
#include "nmcheck/specs.hpp"

namespace nmcheck {

// Single SMV module over k : 0..N, j : 1..M, v : {none, low, normal, high}.
// Atoms are DEFINEs, so the SMV state space matches build_transition_system.
// One LTLSPEC per instantiated requirement; D8' carries a "must be refuted"
// comment. Output is deterministic.
std::string export_smv(const NMParams& params, const std::set<SpecId>& which, const SpecOptions& options = {});

}  // namespace nmcheck
