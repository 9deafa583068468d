#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nmcheck {

using StateId = std::uint32_t;
using AtomId = std::uint32_t;

// Dense set of atom ids, stored as 64-bit words.
class LabelSet {
 public:
  LabelSet() = default;

  bool contains(AtomId atom) const {
    const auto word = atom / 64;
    return word < words_.size() && ((words_[word] >> (atom % 64)) & 1U) != 0;
  }

  void insert(AtomId atom) {
    const auto word = atom / 64;
    if (word >= words_.size()) words_.resize(word + 1, 0);
    words_[word] |= std::uint64_t{1} << (atom % 64);
  }

  void erase(AtomId atom) {
    const auto word = atom / 64;
    if (word < words_.size()) words_[word] &= ~(std::uint64_t{1} << (atom % 64));
    trim();
  }

  bool empty() const { return words_.empty(); }

  // Ascending member ids.
  std::vector<AtomId> members() const;

  bool intersects(const LabelSet& other) const;
  bool subset_of(const LabelSet& other) const;

  friend bool operator==(const LabelSet&, const LabelSet&) = default;
  friend auto operator<=>(const LabelSet&, const LabelSet&) = default;

 private:
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<std::uint64_t> words_;
};

class KripkeError : public std::runtime_error {
 public:
  enum class Kind { DanglingEdge, NonTotal, UnknownAtom, DuplicateAtom, Syntax };

  KripkeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class AtomTable {
 public:
  AtomTable() = default;
  explicit AtomTable(const std::vector<std::string>& names);

  AtomId add(std::string name);
  std::optional<AtomId> find(std::string_view name) const;
  // Throws KripkeError(UnknownAtom).
  AtomId id(std::string_view name) const;

  const std::string& name(AtomId id) const { return names_.at(id); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }

  friend bool operator==(const AtomTable& a, const AtomTable& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, AtomId> index_;
};

// Finite Kripke structure with a total transition relation and one initial
// state. Immutable once built; successor lists are sorted and duplicate-free.
class TransitionSystem {
 public:
  static TransitionSystem build(AtomTable atoms, std::vector<LabelSet> labels,
                                const std::vector<std::pair<StateId, StateId>>& transitions,
                                StateId initial);

  const AtomTable& atoms() const { return atoms_; }
  std::size_t num_states() const { return labels_.size(); }
  StateId initial() const { return initial_; }
  const LabelSet& label(StateId s) const { return labels_.at(s); }
  const std::vector<StateId>& successors(StateId s) const { return successors_.at(s); }
  bool has_edge(StateId from, StateId to) const;
  std::size_t num_transitions() const;

  friend bool operator==(const TransitionSystem&, const TransitionSystem&) = default;

 private:
  TransitionSystem() = default;

  AtomTable atoms_;
  std::vector<LabelSet> labels_;
  std::vector<std::vector<StateId>> successors_;
  StateId initial_ = 0;
};

// States reachable from the initial state, ascending.
std::vector<StateId> reachable(const TransitionSystem& ts);

bool satisfies_label(const TransitionSystem& ts, StateId state, AtomId atom);

// Line-oriented model text format:
//   atoms: p q r
//   states: 3
//   init: 0
//   label 0: p q
//   trans 0 -> 1
TransitionSystem read_model(std::istream& in);
TransitionSystem read_model_file(const std::string& path);
void write_model(std::ostream& out, const TransitionSystem& ts);

}  // namespace nmcheck
