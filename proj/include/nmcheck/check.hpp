#pragma once

#include <optional>
#include <vector>

#include "nmcheck/buchi.hpp"
#include "nmcheck/kripke.hpp"
#include "nmcheck/ltl.hpp"

namespace nmcheck {

enum class Emptiness {
  NestedDfs,  // on-the-fly, classic two-phase search
  Scc,        // explicit product + Tarjan, accepting state in a nontrivial SCC
};

// Infinite system path stem . cycle^omega, as state ids.
struct Counterexample {
  std::vector<StateId> stem;
  std::vector<StateId> cycle;
};

struct Verdict {
  bool holds = true;
  std::optional<Counterexample> counterexample;
};

// Label-set view of a counterexample, for eval_on_lasso.
Lasso to_lasso(const TransitionSystem& ts, const Counterexample& cex);

// M, s0 |= f, by emptiness of M x A(!f). Throws KripkeError(UnknownAtom).
Verdict check(const TransitionSystem& ts, const Formula& f, Emptiness algorithm = Emptiness::NestedDfs);

// Same, against an already translated automaton for the negated property.
Verdict check_negated(const TransitionSystem& ts, const BuchiAutomaton& negated, Emptiness algorithm);

// Finite path from the initial state; length() counts transitions.
struct Witness {
  std::vector<StateId> states;
  std::size_t length() const { return states.empty() ? 0 : states.size() - 1; }
};

// Shortest path to a state satisfying a propositional goal.
// Throws std::invalid_argument for temporal goals.
std::optional<Witness> exists_path_reaching(const TransitionSystem& ts, const Formula& goal);

// Edges exist, the cycle closes, the path starts at the initial state and
// the lasso violates f.
bool validate_counterexample(const TransitionSystem& ts, const Formula& f, const Counterexample& cex);

// Starts at the initial state, follows edges and ends in a goal state.
bool validate_witness(const TransitionSystem& ts, const Formula& goal, const Witness& w);

}  // namespace nmcheck
