#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nmcheck/execution.hpp"
#include "nmcheck/kripke.hpp"

namespace nmcheck {

// N switchable sections W1..WN, M regulator levels L1..LM.
struct NMParams {
  int sections = 1;
  int levels = 1;

  // Throws std::invalid_argument unless both counts are >= 1.
  void validate() const;
  int start_level() const { return (levels + 1) / 2; }
  int bit_width() const { return sections + levels + 3; }
};

enum class Reading { None, Low, Normal, High };

const char* to_string(Reading r);

struct NMState {
  int powered = 0;  // sections W1..W_powered are on
  int level = 1;
  Reading reading = Reading::None;

  friend auto operator<=>(const NMState&, const NMState&) = default;
};

struct Configuration {
  int powered = 0;
  int level = 1;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

// Deliberately broken controllers, used to show the requirement suite and the
// monitor catch real faults.
enum class ControllerVariant {
  Correct,
  AlwaysLevelUpOnLow,     // low at the top level keeps all sections
  SkipSectionIncrement,   // normal never adds the last section (guard k < N-1)
  HoldOnHighAtMinimum,    // high at L1 keeps the sections powered
};

const char* to_string(ControllerVariant v);

NMState start_state(const NMParams& params);

Configuration controller_step(const NMParams& params, const NMState& state,
                              ControllerVariant variant = ControllerVariant::Correct);

// Kripke structure of the closed loop: every state steps the controller and
// then branches over the three possible next readings.
struct NMModel {
  NMParams params;
  ControllerVariant variant = ControllerVariant::Correct;
  TransitionSystem system;
  std::vector<NMState> states;  // indexed by StateId

  AtomId section_atom(int i) const { return static_cast<AtomId>(i - 1); }
  AtomId level_atom(int j) const { return static_cast<AtomId>(params.sections + j - 1); }
  AtomId low_atom() const { return static_cast<AtomId>(params.sections + params.levels); }
  AtomId normal_atom() const { return low_atom() + 1; }
  AtomId high_atom() const { return low_atom() + 2; }
};

// W1..WN, L1..LM, l, n, h.
AtomTable nm_atoms(const NMParams& params);
LabelSet nm_label(const NMParams& params, const NMState& state);

NMModel build_transition_system(const NMParams& params,
                                ControllerVariant variant = ControllerVariant::Correct);

// Display form "WWW LL lnh": sections ascending, levels descending (L_M first),
// then the one-hot reading field (000 before the first reading).
std::string encode(const NMParams& params, const NMState& state);

enum class InvalidEncoding {
  BadChar,
  BadLength,
  PrefixViolation,
  LevelNotOneHot,
  VoltageNotOneHotOrZero,
};

const char* to_string(InvalidEncoding e);

using DecodeResult = std::variant<NMState, InvalidEncoding>;

// Spaces are ignored. Reports the first violated constraint in field order.
DecodeResult decode(const NMParams& params, std::string_view bits);
// Every violated constraint in field order; empty iff the string decodes.
std::vector<InvalidEncoding> classify(const NMParams& params, std::string_view bits);

// (N+1) * 4M.
long long count_valid_encodings(const NMParams& params);
// Display form, ascending by compact bit string.
std::vector<std::string> enumerate_valid_encodings(const NMParams& params);

// Counts the strings among all 2^(N+M+3) candidates that decode accepts.
// Throws std::invalid_argument above 30 bits.
long long count_decodable_strings(const NMParams& params, Execution exec = Execution::Parallel);

}  // namespace nmcheck
