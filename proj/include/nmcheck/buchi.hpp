#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "nmcheck/kripke.hpp"
#include "nmcheck/ltl.hpp"

namespace nmcheck {

// Conjunction of literals over atom ids. Matches a full label set when every
// positive atom is present and no negative atom is.
struct LiteralSet {
  LabelSet positive;
  LabelSet negative;

  bool matches(const LabelSet& label) const {
    return positive.subset_of(label) && !negative.intersects(label);
  }
  bool consistent() const { return !positive.intersects(negative); }

  friend bool operator==(const LiteralSet&, const LiteralSet&) = default;
};

class NotInNnfError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// State-labelled generalized Büchi automaton produced by tableau expansion.
// A run n0 n1 ... reads letter i in node n_i, which must match its obligation.
struct GeneralizedBuchi {
  struct Node {
    LiteralSet obligation;
    std::vector<std::size_t> successors;
  };

  std::vector<Node> nodes;
  std::vector<std::size_t> initial;
  // One set per Until subformula, as membership flags over nodes.
  std::vector<std::vector<bool>> acceptance;
};

// Büchi automaton with literal-labelled edges. A run q0 q1 ... over letters
// a0 a1 ... takes an edge (q_i, λ, q_{i+1}) with λ matching a_i.
struct BuchiAutomaton {
  struct Edge {
    std::size_t target;
    LiteralSet label;
  };

  std::vector<std::vector<Edge>> edges;  // per state, ascending target
  std::vector<std::size_t> initial;      // ascending
  std::vector<bool> accepting;

  std::size_t num_states() const { return edges.size(); }
};

// Requires f in NNF (throws NotInNnfError); atoms resolved against `atoms`
// (throws KripkeError(UnknownAtom)).
GeneralizedBuchi translate(const Formula& f, const AtomTable& atoms);

BuchiAutomaton degeneralize(const GeneralizedBuchi& g);

// to_nnf, translate and degeneralize in one call.
BuchiAutomaton automaton_for(const Formula& f, const AtomTable& atoms);

// Decided by building the product with the lasso positions and searching for
// a reachable accepting product state that lies on a cycle.
bool accepts_lasso(const BuchiAutomaton& a, const Lasso& path);
bool accepts_lasso(const GeneralizedBuchi& g, const Lasso& path);

// Debug dump; not a stable format.
void dump(std::ostream& out, const BuchiAutomaton& a, const AtomTable& atoms);

}  // namespace nmcheck
