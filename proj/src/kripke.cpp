#include "nmcheck/kripke.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace nmcheck {

std::vector<AtomId> LabelSet::members() const {
  std::vector<AtomId> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto bits = words_[w];
    while (bits != 0) {
      const auto bit = static_cast<AtomId>(std::countr_zero(bits));
      out.push_back(static_cast<AtomId>(w * 64) + bit);
      bits &= bits - 1;
    }
  }
  return out;
}

bool LabelSet::intersects(const LabelSet& other) const {
  const auto n = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < n; ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

bool LabelSet::subset_of(const LabelSet& other) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const auto theirs = w < other.words_.size() ? other.words_[w] : 0;
    if ((words_[w] & ~theirs) != 0) return false;
  }
  return true;
}

AtomTable::AtomTable(const std::vector<std::string>& names) {
  for (const auto& n : names) add(n);
}

AtomId AtomTable::add(std::string name) {
  if (name.empty()) throw KripkeError(KripkeError::Kind::Syntax, "empty atom name");
  if (index_.contains(name)) {
    throw KripkeError(KripkeError::Kind::DuplicateAtom, "duplicate atom '" + name + "'");
  }
  const auto id = static_cast<AtomId>(names_.size());
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  return id;
}

std::optional<AtomId> AtomTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AtomId AtomTable::id(std::string_view name) const {
  if (auto found = find(name)) return *found;
  throw KripkeError(KripkeError::Kind::UnknownAtom, "unknown atom '" + std::string(name) + "'");
}

TransitionSystem TransitionSystem::build(AtomTable atoms, std::vector<LabelSet> labels,
                                         const std::vector<std::pair<StateId, StateId>>& transitions,
                                         StateId initial) {
  const auto n = labels.size();
  if (n == 0) throw KripkeError(KripkeError::Kind::DanglingEdge, "transition system has no states");
  if (initial >= n) {
    throw KripkeError(KripkeError::Kind::DanglingEdge,
                      "initial state " + std::to_string(initial) + " out of range");
  }
  for (std::size_t s = 0; s < n; ++s) {
    for (auto a : labels[s].members()) {
      if (a >= atoms.size()) {
        throw KripkeError(KripkeError::Kind::UnknownAtom,
                          "state " + std::to_string(s) + " carries unknown atom id " + std::to_string(a));
      }
    }
  }

  std::vector<std::vector<StateId>> succ(n);
  for (auto [from, to] : transitions) {
    if (from >= n || to >= n) {
      throw KripkeError(KripkeError::Kind::DanglingEdge, "edge " + std::to_string(from) + " -> " +
                                                             std::to_string(to) + " out of range");
    }
    succ[from].push_back(to);
  }
  for (std::size_t s = 0; s < n; ++s) {
    auto& out = succ[s];
    if (out.empty()) {
      throw KripkeError(KripkeError::Kind::NonTotal, "state " + std::to_string(s) + " has no successor");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }

  TransitionSystem ts;
  ts.atoms_ = std::move(atoms);
  ts.labels_ = std::move(labels);
  ts.successors_ = std::move(succ);
  ts.initial_ = initial;
  return ts;
}

bool TransitionSystem::has_edge(StateId from, StateId to) const {
  if (from >= num_states()) return false;
  const auto& out = successors_[from];
  return std::binary_search(out.begin(), out.end(), to);
}

std::size_t TransitionSystem::num_transitions() const {
  std::size_t total = 0;
  for (const auto& out : successors_) total += out.size();
  return total;
}

std::vector<StateId> reachable(const TransitionSystem& ts) {
  std::vector<bool> seen(ts.num_states(), false);
  std::queue<StateId> frontier;
  frontier.push(ts.initial());
  seen[ts.initial()] = true;
  while (!frontier.empty()) {
    const auto s = frontier.front();
    frontier.pop();
    for (auto t : ts.successors(s)) {
      if (!seen[t]) {
        seen[t] = true;
        frontier.push(t);
      }
    }
  }
  std::vector<StateId> out;
  for (StateId s = 0; s < seen.size(); ++s) {
    if (seen[s]) out.push_back(s);
  }
  return out;
}

bool satisfies_label(const TransitionSystem& ts, StateId state, AtomId atom) {
  return ts.label(state).contains(atom);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] void syntax_error(std::size_t line, const std::string& msg) {
  throw KripkeError(KripkeError::Kind::Syntax, "line " + std::to_string(line) + ": " + msg);
}

StateId parse_id(std::string_view text, std::size_t line) {
  text = trim(text);
  StateId value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    syntax_error(line, "expected state id, got '" + std::string(text) + "'");
  }
  return value;
}

// Splits "key rest" on the first ':' for header lines.
std::optional<std::string_view> header_value(std::string_view line, std::string_view key) {
  if (!line.starts_with(key)) return std::nullopt;
  auto rest = trim(line.substr(key.size()));
  if (rest.empty() || rest.front() != ':') return std::nullopt;
  return trim(rest.substr(1));
}

}  // namespace

TransitionSystem read_model(std::istream& in) {
  std::optional<AtomTable> atoms;
  std::optional<std::size_t> num_states;
  std::optional<StateId> initial;
  std::vector<std::pair<StateId, std::vector<std::string>>> label_lines;
  std::vector<std::pair<StateId, StateId>> transitions;
  std::vector<std::size_t> label_line_numbers;

  std::string raw;
  for (std::size_t lineno = 1; std::getline(in, raw); ++lineno) {
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (auto v = header_value(line, "atoms")) {
      if (atoms) syntax_error(lineno, "duplicate 'atoms' section");
      atoms.emplace();
      for (auto& w : split_words(*v)) atoms->add(std::move(w));
    } else if (auto v = header_value(line, "states")) {
      if (num_states) syntax_error(lineno, "duplicate 'states' section");
      num_states = parse_id(*v, lineno);
    } else if (auto v = header_value(line, "init")) {
      if (initial) syntax_error(lineno, "duplicate 'init' section");
      initial = parse_id(*v, lineno);
    } else if (line.starts_with("label")) {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) syntax_error(lineno, "label line needs ':'");
      const auto state = parse_id(line.substr(5, colon - 5), lineno);
      label_lines.emplace_back(state, split_words(line.substr(colon + 1)));
      label_line_numbers.push_back(lineno);
    } else if (line.starts_with("trans")) {
      const auto body = line.substr(5);
      const auto arrow = body.find("->");
      if (arrow == std::string_view::npos) syntax_error(lineno, "trans line needs '->'");
      transitions.emplace_back(parse_id(body.substr(0, arrow), lineno),
                               parse_id(body.substr(arrow + 2), lineno));
    } else {
      syntax_error(lineno, "unrecognized line '" + std::string(line) + "'");
    }
  }

  if (!atoms) syntax_error(0, "missing 'atoms' section");
  if (!num_states) syntax_error(0, "missing 'states' section");
  if (!initial) syntax_error(0, "missing 'init' section");

  std::vector<LabelSet> labels(*num_states);
  for (std::size_t i = 0; i < label_lines.size(); ++i) {
    const auto& [state, names] = label_lines[i];
    if (state >= *num_states) {
      throw KripkeError(KripkeError::Kind::DanglingEdge,
                        "line " + std::to_string(label_line_numbers[i]) + ": label for state " +
                            std::to_string(state) + " out of range");
    }
    for (const auto& n : names) labels[state].insert(atoms->id(n));
  }
  return TransitionSystem::build(std::move(*atoms), std::move(labels), transitions, *initial);
}

TransitionSystem read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
  return read_model(in);
}

void write_model(std::ostream& out, const TransitionSystem& ts) {
  out << "atoms:";
  for (const auto& n : ts.atoms().names()) out << ' ' << n;
  out << "\nstates: " << ts.num_states() << "\ninit: " << ts.initial() << '\n';
  for (StateId s = 0; s < ts.num_states(); ++s) {
    const auto members = ts.label(s).members();
    if (members.empty()) continue;
    out << "label " << s << ':';
    for (auto a : members) out << ' ' << ts.atoms().name(a);
    out << '\n';
  }
  for (StateId s = 0; s < ts.num_states(); ++s) {
    for (auto t : ts.successors(s)) out << "trans " << s << " -> " << t << '\n';
  }
}

}  // namespace nmcheck
