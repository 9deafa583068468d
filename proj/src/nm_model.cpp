#include "nmcheck/nm_model.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace nmcheck {

void NMParams::validate() const {
  if (sections < 1) throw std::invalid_argument("number of sections must be >= 1");
  if (levels < 1) throw std::invalid_argument("number of levels must be >= 1");
}

const char* to_string(Reading r) {
  switch (r) {
    case Reading::None: return "none";
    case Reading::Low: return "low";
    case Reading::Normal: return "normal";
    case Reading::High: return "high";
  }
  return "?";
}

const char* to_string(ControllerVariant v) {
  switch (v) {
    case ControllerVariant::Correct: return "correct";
    case ControllerVariant::AlwaysLevelUpOnLow: return "always-level-up-on-low";
    case ControllerVariant::SkipSectionIncrement: return "skip-section-increment";
    case ControllerVariant::HoldOnHighAtMinimum: return "hold-on-high-at-minimum";
  }
  return "?";
}

const char* to_string(InvalidEncoding e) {
  switch (e) {
    case InvalidEncoding::BadChar: return "BadChar";
    case InvalidEncoding::BadLength: return "BadLength";
    case InvalidEncoding::PrefixViolation: return "PrefixViolation";
    case InvalidEncoding::LevelNotOneHot: return "LevelNotOneHot";
    case InvalidEncoding::VoltageNotOneHotOrZero: return "VoltageNotOneHotOrZero";
  }
  return "?";
}

NMState start_state(const NMParams& params) {
  params.validate();
  return {0, params.start_level(), Reading::None};
}

Configuration controller_step(const NMParams& params, const NMState& s, ControllerVariant variant) {
  const int n = params.sections;
  const int m = params.levels;
  switch (s.reading) {
    case Reading::None:
      return {s.powered, s.level};
    case Reading::Low:
      if (s.level < m) return {s.powered, s.level + 1};
      if (variant == ControllerVariant::AlwaysLevelUpOnLow) return {s.powered, m};
      return {std::max(s.powered - 1, 0), m};
    case Reading::Normal:
      if (variant == ControllerVariant::SkipSectionIncrement && s.powered + 1 >= n) return {s.powered, s.level};
      return {std::min(s.powered + 1, n), s.level};
    case Reading::High:
      if (s.level > 1) return {s.powered, s.level - 1};
      if (variant == ControllerVariant::HoldOnHighAtMinimum) return {s.powered, 1};
      return {0, 1};
  }
  return {s.powered, s.level};
}

AtomTable nm_atoms(const NMParams& params) {
  params.validate();
  AtomTable atoms;
  for (int i = 1; i <= params.sections; ++i) atoms.add("W" + std::to_string(i));
  for (int j = 1; j <= params.levels; ++j) atoms.add("L" + std::to_string(j));
  atoms.add("l");
  atoms.add("n");
  atoms.add("h");
  return atoms;
}

LabelSet nm_label(const NMParams& params, const NMState& state) {
  LabelSet label;
  for (int i = 1; i <= state.powered; ++i) label.insert(static_cast<AtomId>(i - 1));
  label.insert(static_cast<AtomId>(params.sections + state.level - 1));
  const auto voltage = static_cast<AtomId>(params.sections + params.levels);
  switch (state.reading) {
    case Reading::Low: label.insert(voltage); break;
    case Reading::Normal: label.insert(voltage + 1); break;
    case Reading::High: label.insert(voltage + 2); break;
    case Reading::None: break;
  }
  return label;
}

NMModel build_transition_system(const NMParams& params, ControllerVariant variant) {
  params.validate();
  const auto slot = [&](const NMState& s) {
    return (static_cast<std::size_t>(s.powered) * static_cast<std::size_t>(params.levels) +
            static_cast<std::size_t>(s.level - 1)) * 4 + static_cast<std::size_t>(s.reading);
  };
  constexpr StateId kUnassigned = ~StateId{0};
  std::vector<StateId> ids(static_cast<std::size_t>(params.sections + 1) * params.levels * 4, kUnassigned);

  std::vector<NMState> states;
  std::vector<std::pair<StateId, StateId>> transitions;

  auto intern = [&](const NMState& s) {
    auto& id = ids[slot(s)];
    if (id == kUnassigned) {
      id = static_cast<StateId>(states.size());
      states.push_back(s);
    }
    return id;
  };

  intern(start_state(params));
  for (std::size_t cur = 0; cur < states.size(); ++cur) {
    const auto config = controller_step(params, states[cur], variant);
    for (auto r : {Reading::Low, Reading::Normal, Reading::High}) {
      const auto to = intern({config.powered, config.level, r});
      transitions.emplace_back(static_cast<StateId>(cur), to);
    }
  }

  std::vector<LabelSet> labels;
  labels.reserve(states.size());
  for (const auto& s : states) labels.push_back(nm_label(params, s));
  auto system = TransitionSystem::build(nm_atoms(params), std::move(labels), transitions, 0);
  return {params, variant, std::move(system), std::move(states)};
}

std::string encode(const NMParams& params, const NMState& state) {
  std::string out;
  out.reserve(static_cast<std::size_t>(params.bit_width()) + 2);
  for (int i = 1; i <= params.sections; ++i) out += i <= state.powered ? '1' : '0';
  out += ' ';
  for (int j = params.levels; j >= 1; --j) out += j == state.level ? '1' : '0';
  out += ' ';
  out += state.reading == Reading::Low ? '1' : '0';
  out += state.reading == Reading::Normal ? '1' : '0';
  out += state.reading == Reading::High ? '1' : '0';
  return out;
}

namespace {

struct Fields {
  std::string bits;  // compact, spaces removed
  std::vector<InvalidEncoding> errors;
};

Fields check_fields(const NMParams& params, std::string_view text) {
  Fields f;
  for (char c : text) {
    if (c == ' ') continue;
    if (c != '0' && c != '1') {
      f.errors.push_back(InvalidEncoding::BadChar);
      return f;
    }
    f.bits += c;
  }
  if (static_cast<int>(f.bits.size()) != params.bit_width()) {
    f.errors.push_back(InvalidEncoding::BadLength);
    return f;
  }
  const int n = params.sections;
  const int m = params.levels;
  bool seen_off = false;
  for (int i = 0; i < n; ++i) {
    if (f.bits[i] == '0') {
      seen_off = true;
    } else if (seen_off) {
      f.errors.push_back(InvalidEncoding::PrefixViolation);
      break;
    }
  }
  if (std::count(f.bits.begin() + n, f.bits.begin() + n + m, '1') != 1) {
    f.errors.push_back(InvalidEncoding::LevelNotOneHot);
  }
  if (std::count(f.bits.begin() + n + m, f.bits.end(), '1') > 1) {
    f.errors.push_back(InvalidEncoding::VoltageNotOneHotOrZero);
  }
  return f;
}

}  // namespace

std::vector<InvalidEncoding> classify(const NMParams& params, std::string_view bits) {
  return check_fields(params, bits).errors;
}

DecodeResult decode(const NMParams& params, std::string_view text) {
  const auto f = check_fields(params, text);
  if (!f.errors.empty()) return f.errors.front();
  const int n = params.sections;
  const int m = params.levels;
  NMState s;
  s.powered = static_cast<int>(std::count(f.bits.begin(), f.bits.begin() + n, '1'));
  for (int t = 0; t < m; ++t) {
    if (f.bits[static_cast<std::size_t>(n + t)] == '1') s.level = m - t;
  }
  const auto v = f.bits.substr(static_cast<std::size_t>(n + m));
  s.reading = v == "100" ? Reading::Low : v == "010" ? Reading::Normal : v == "001" ? Reading::High : Reading::None;
  return s;
}

long long count_valid_encodings(const NMParams& params) {
  params.validate();
  return static_cast<long long>(params.sections + 1) * 4LL * params.levels;
}

std::vector<std::string> enumerate_valid_encodings(const NMParams& params) {
  params.validate();
  std::vector<std::string> out;
  for (int k = 0; k <= params.sections; ++k) {
    for (int j = 1; j <= params.levels; ++j) {
      for (auto r : {Reading::None, Reading::Low, Reading::Normal, Reading::High}) {
        out.push_back(encode(params, {k, j, r}));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long long count_decodable_strings(const NMParams& params, Execution exec) {
  params.validate();
  const int width = params.bit_width();
  if (width > 30) throw std::invalid_argument("exhaustive decode limited to 30 bits");
  const long long total = 1LL << width;

  auto accepted = [&](long long mask) {
    std::string bits(static_cast<std::size_t>(width), '0');
    for (int b = 0; b < width; ++b) {
      if ((mask >> (width - 1 - b)) & 1) bits[static_cast<std::size_t>(b)] = '1';
    }
    return std::holds_alternative<NMState>(decode(params, bits)) ? 1LL : 0LL;
  };

  long long count = 0;
  if (exec == Execution::Serial) {
    for (long long mask = 0; mask < total; ++mask) count += accepted(mask);
    return count;
  }
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (long long mask = 0; mask < total; ++mask) count += accepted(mask);
  return count;
}

}  // namespace nmcheck
