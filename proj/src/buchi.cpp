#include "nmcheck/buchi.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>

namespace nmcheck {

namespace {

constexpr std::size_t kInit = std::numeric_limits<std::size_t>::max();

// Subformula closure with dense ids.
class Closure {
 public:
  int intern(const Formula& f) {
    if (auto it = ids_.find(f); it != ids_.end()) return it->second;
    int lhs = -1;
    int rhs = -1;
    if (is_unary(f.op())) lhs = intern(f.child());
    if (is_binary(f.op())) {
      lhs = intern(f.lhs());
      rhs = intern(f.rhs());
    }
    const int id = static_cast<int>(formulas_.size());
    ids_.emplace(f, id);
    formulas_.push_back(f);
    lhs_.push_back(lhs);
    rhs_.push_back(rhs);
    return id;
  }

  std::optional<int> find(const Formula& f) const {
    if (auto it = ids_.find(f); it != ids_.end()) return it->second;
    return std::nullopt;
  }

  const Formula& at(int id) const { return formulas_[static_cast<std::size_t>(id)]; }
  Op op(int id) const { return at(id).op(); }
  int lhs(int id) const { return lhs_[static_cast<std::size_t>(id)]; }
  int rhs(int id) const { return rhs_[static_cast<std::size_t>(id)]; }
  int size() const { return static_cast<int>(formulas_.size()); }

 private:
  std::map<Formula, int> ids_;
  std::vector<Formula> formulas_;
  std::vector<int> lhs_;
  std::vector<int> rhs_;
};

struct TableauNode {
  std::vector<std::size_t> incoming;
  std::set<int> pending;
  std::set<int> old;
  std::set<int> next;
};

// Complementary literal of an atom or negated atom, when it occurs in the closure.
std::optional<int> complement(const Closure& cl, int id) {
  const auto& f = cl.at(id);
  if (f.op() == Op::Atom) return cl.find(!f);
  return cl.lhs(id);
}

}  // namespace

GeneralizedBuchi translate(const Formula& f, const AtomTable& atoms) {
  if (!is_nnf(f)) throw NotInNnfError("translate: formula is not in negation normal form: " + to_string(f));
  for (const auto& name : f.atom_names()) atoms.id(name);

  Closure cl;
  const int root = cl.intern(f);

  std::vector<TableauNode> finals;
  std::vector<TableauNode> work;
  work.push_back({{kInit}, {root}, {}, {}});

  while (!work.empty()) {
    auto node = std::move(work.back());
    work.pop_back();

    bool discarded = false;
    while (!node.pending.empty() && !discarded) {
      const int eta = *node.pending.begin();
      node.pending.erase(node.pending.begin());
      if (node.old.contains(eta)) continue;

      switch (cl.op(eta)) {
        case Op::False:
          discarded = true;
          break;
        case Op::True:
          break;
        case Op::Atom:
        case Op::Not: {
          const auto comp = complement(cl, eta);
          if (comp && node.old.contains(*comp)) {
            discarded = true;
          } else {
            node.old.insert(eta);
          }
          break;
        }
        case Op::And:
          node.old.insert(eta);
          for (int part : {cl.lhs(eta), cl.rhs(eta)}) {
            if (!node.old.contains(part)) node.pending.insert(part);
          }
          break;
        case Op::Next:
          node.old.insert(eta);
          node.next.insert(cl.lhs(eta));
          break;
        case Op::Or:
        case Op::Until:
        case Op::Release: {
          const int a = cl.lhs(eta);
          const int b = cl.rhs(eta);
          node.old.insert(eta);
          TableauNode other = node;
          if (cl.op(eta) == Op::Or) {
            node.pending.insert(a);
            other.pending.insert(b);
          } else if (cl.op(eta) == Op::Until) {
            node.pending.insert(a);
            node.next.insert(eta);
            other.pending.insert(b);
          } else {
            node.pending.insert(b);
            node.next.insert(eta);
            other.pending.insert(a);
            other.pending.insert(b);
          }
          work.push_back(std::move(other));
          break;
        }
        default:
          throw NotInNnfError("translate: unexpected operator");
      }
    }
    if (discarded) continue;

    auto same = std::find_if(finals.begin(), finals.end(), [&](const TableauNode& existing) {
      return existing.old == node.old && existing.next == node.next;
    });
    if (same != finals.end()) {
      for (auto in : node.incoming) {
        if (std::find(same->incoming.begin(), same->incoming.end(), in) == same->incoming.end()) {
          same->incoming.push_back(in);
        }
      }
      continue;
    }
    const auto id = finals.size();
    TableauNode successor{{id}, node.next, {}, {}};
    finals.push_back(std::move(node));
    work.push_back(std::move(successor));
  }

  GeneralizedBuchi g;
  g.nodes.resize(finals.size());
  for (std::size_t i = 0; i < finals.size(); ++i) {
    auto& obligation = g.nodes[i].obligation;
    for (int id : finals[i].old) {
      const auto& sub = cl.at(id);
      if (sub.op() == Op::Atom) obligation.positive.insert(atoms.id(sub.name()));
      if (sub.op() == Op::Not) obligation.negative.insert(atoms.id(sub.child().name()));
    }
    for (auto in : finals[i].incoming) {
      if (in == kInit) {
        g.initial.push_back(i);
      } else {
        g.nodes[in].successors.push_back(i);
      }
    }
  }
  for (auto& n : g.nodes) std::sort(n.successors.begin(), n.successors.end());
  std::sort(g.initial.begin(), g.initial.end());

  for (int id = 0; id < cl.size(); ++id) {
    if (cl.op(id) != Op::Until) continue;
    const int goal = cl.rhs(id);
    std::vector<bool> set(finals.size());
    for (std::size_t i = 0; i < finals.size(); ++i) {
      set[i] = !finals[i].old.contains(id) || cl.op(goal) == Op::True || finals[i].old.contains(goal);
    }
    g.acceptance.push_back(std::move(set));
  }
  return g;
}

BuchiAutomaton degeneralize(const GeneralizedBuchi& g) {
  BuchiAutomaton a;
  const auto k = g.acceptance.size();

  if (k <= 1) {
    a.edges.resize(g.nodes.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      for (auto t : g.nodes[i].successors) a.edges[i].push_back({t, g.nodes[i].obligation});
    }
    a.initial = g.initial;
    a.accepting = k == 0 ? std::vector<bool>(g.nodes.size(), true) : g.acceptance[0];
    return a;
  }

  // States are (node, counter); the counter advances past set c when the
  // node belongs to it.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
  std::vector<std::pair<std::size_t, std::size_t>> states;
  auto id_of = [&](std::size_t node, std::size_t counter) {
    auto [it, fresh] = ids.emplace(std::pair{node, counter}, states.size());
    if (fresh) states.emplace_back(node, counter);
    return it->second;
  };
  for (auto n : g.initial) a.initial.push_back(id_of(n, 0));

  for (std::size_t s = 0; s < states.size(); ++s) {
    const auto [node, counter] = states[s];
    const auto next_counter = g.acceptance[counter][node] ? (counter + 1) % k : counter;
    std::vector<BuchiAutomaton::Edge> out;
    for (auto t : g.nodes[node].successors) out.push_back({id_of(t, next_counter), g.nodes[node].obligation});
    if (a.edges.size() <= s) a.edges.resize(s + 1);
    a.edges[s] = std::move(out);
  }
  a.edges.resize(states.size());
  a.accepting.resize(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    a.accepting[s] = states[s].second == 0 && g.acceptance[0][states[s].first];
    std::sort(a.edges[s].begin(), a.edges[s].end(),
              [](const auto& x, const auto& y) { return x.target < y.target; });
  }
  std::sort(a.initial.begin(), a.initial.end());
  return a;
}

BuchiAutomaton automaton_for(const Formula& f, const AtomTable& atoms) {
  return degeneralize(translate(to_nnf(f), atoms));
}

namespace {

// Explicit product of an automaton-like graph with lasso positions; returns
// whether some reachable nontrivial SCC meets every acceptance set.
template <typename Successors>
bool product_has_fair_cycle(std::size_t num_automaton_states, const std::vector<std::size_t>& initial,
                            const Lasso& path, Successors&& successors,
                            const std::vector<std::vector<bool>>& acceptance) {
  const auto positions = path.positions();
  const auto encode = [&](std::size_t pos, std::size_t q) { return pos * num_automaton_states + q; };
  const auto total = positions * num_automaton_states;

  std::vector<std::vector<std::size_t>> adj(total);
  std::vector<bool> seen(total, false);
  std::vector<std::size_t> stack;
  for (auto q : initial) {
    const auto v = encode(0, q);
    if (!seen[v]) {
      seen[v] = true;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    const auto pos = v / num_automaton_states;
    const auto q = v % num_automaton_states;
    successors(q, path.at(pos), [&](std::size_t q2) {
      const auto w = encode(path.successor(pos), q2);
      adj[v].push_back(w);
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    });
  }

  // Tarjan, iterative.
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(total, kUnset), low(total, 0);
  std::vector<bool> on_stack(total, false);
  std::vector<std::size_t> scc_stack;
  std::size_t counter = 0;
  struct Frame {
    std::size_t v;
    std::size_t edge;
  };
  for (std::size_t root = 0; root < total; ++root) {
    if (!seen[root] || index[root] != kUnset) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    scc_stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& frame = call.back();
      const auto v = frame.v;
      if (frame.edge < adj[v].size()) {
        const auto w = adj[v][frame.edge++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          scc_stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> component;
        std::size_t w = 0;
        do {
          w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        const bool nontrivial =
            component.size() > 1 || std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
        if (nontrivial) {
          const bool fair = std::all_of(acceptance.begin(), acceptance.end(), [&](const auto& set) {
            return std::any_of(component.begin(), component.end(),
                               [&](std::size_t x) { return set[x % num_automaton_states]; });
          });
          if (fair) return true;
        }
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  return false;
}

}  // namespace

bool accepts_lasso(const BuchiAutomaton& a, const Lasso& path) {
  if (path.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
  if (a.num_states() == 0) return false;
  return product_has_fair_cycle(
      a.num_states(), a.initial, path,
      [&](std::size_t q, const LabelSet& letter, auto&& emit) {
        for (const auto& e : a.edges[q]) {
          if (e.label.matches(letter)) emit(e.target);
        }
      },
      {a.accepting});
}

bool accepts_lasso(const GeneralizedBuchi& g, const Lasso& path) {
  if (path.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
  if (g.nodes.empty()) return false;
  return product_has_fair_cycle(
      g.nodes.size(), g.initial, path,
      [&](std::size_t q, const LabelSet& letter, auto&& emit) {
        if (!g.nodes[q].obligation.matches(letter)) return;
        for (auto t : g.nodes[q].successors) emit(t);
      },
      g.acceptance);
}

void dump(std::ostream& out, const BuchiAutomaton& a, const AtomTable& atoms) {
  out << "states: " << a.num_states() << "\ninit:";
  for (auto q : a.initial) out << ' ' << q;
  out << '\n';
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    out << "state " << q << (a.accepting[q] ? " accepting" : "") << '\n';
    for (const auto& e : a.edges[q]) {
      out << "  -> " << e.target << " [";
      bool first = true;
      for (auto id : e.label.positive.members()) {
        out << (first ? "" : " & ") << atoms.name(id);
        first = false;
      }
      for (auto id : e.label.negative.members()) {
        out << (first ? "" : " & ") << '!' << atoms.name(id);
        first = false;
      }
      out << (first ? "true" : "") << "]\n";
    }
  }
}

}  // namespace nmcheck
