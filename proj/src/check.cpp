#include "nmcheck/check.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace nmcheck {

Lasso to_lasso(const TransitionSystem& ts, const Counterexample& cex) {
  Lasso out;
  for (auto s : cex.stem) out.stem.push_back(ts.label(s));
  for (auto s : cex.cycle) out.cycle.push_back(ts.label(s));
  return out;
}

namespace {

using ProductState = std::uint64_t;

// Lazily explored product of a transition system with a Büchi automaton.
class Product {
 public:
  Product(const TransitionSystem& ts, const BuchiAutomaton& a) : ts_(ts), a_(a) {}

  ProductState make(StateId s, std::size_t q) const {
    return static_cast<ProductState>(s) * a_.num_states() + q;
  }
  StateId system_state(ProductState p) const { return static_cast<StateId>(p / a_.num_states()); }
  std::size_t automaton_state(ProductState p) const { return p % a_.num_states(); }
  bool accepting(ProductState p) const { return a_.accepting[automaton_state(p)]; }

  std::vector<ProductState> initial() const {
    std::vector<ProductState> out;
    for (auto q : a_.initial) out.push_back(make(ts_.initial(), q));
    return out;
  }

  // Ascending system successor, then ascending automaton target.
  std::vector<ProductState> successors(ProductState p) const {
    const auto s = system_state(p);
    const auto& letter = ts_.label(s);
    std::vector<std::size_t> targets;
    for (const auto& e : a_.edges[automaton_state(p)]) {
      if (e.label.matches(letter)) targets.push_back(e.target);
    }
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    std::vector<ProductState> out;
    out.reserve(targets.size() * ts_.successors(s).size());
    for (auto t : ts_.successors(s)) {
      for (auto q : targets) out.push_back(make(t, q));
    }
    return out;
  }

  bool has_edge(ProductState from, ProductState to) const {
    const auto succ = successors(from);
    return std::find(succ.begin(), succ.end(), to) != succ.end();
  }

 private:
  const TransitionSystem& ts_;
  const BuchiAutomaton& a_;
};

// Keeps the stem a product path while skipping ahead wherever a direct edge
// allows it; the acceptance argument only depends on the cycle.
std::vector<ProductState> shortcut_stem(const Product& product, const std::vector<ProductState>& path) {
  if (path.size() <= 2) return path;
  std::vector<ProductState> out{path.front()};
  std::size_t i = 0;
  while (i + 1 < path.size()) {
    std::size_t j = path.size() - 1;
    while (j > i + 1 && !product.has_edge(path[i], path[j])) --j;
    out.push_back(path[j]);
    i = j;
  }
  return out;
}

Counterexample project(const Product& product, const std::vector<ProductState>& stem_to_seed,
                       const std::vector<ProductState>& cycle_from_seed) {
  Counterexample cex;
  const auto stem = shortcut_stem(product, stem_to_seed);
  for (std::size_t i = 0; i + 1 < stem.size(); ++i) cex.stem.push_back(product.system_state(stem[i]));
  for (auto p : cycle_from_seed) cex.cycle.push_back(product.system_state(p));
  return cex;
}

Verdict nested_dfs(const Product& product) {
  enum : std::uint8_t { kBlue = 1, kRed = 2, kOnStack = 4 };
  std::unordered_map<ProductState, std::uint8_t> flags;

  struct Frame {
    ProductState state;
    std::vector<ProductState> succ;
    std::size_t next = 0;
  };

  // Red phase: search for a path from `seed` back to itself.
  auto red_search = [&](ProductState seed) -> std::optional<std::vector<ProductState>> {
    std::vector<Frame> stack;
    stack.push_back({seed, product.successors(seed)});
    while (!stack.empty()) {
      auto& top = stack.back();
      if (top.next == top.succ.size()) {
        stack.pop_back();
        continue;
      }
      const auto t = top.succ[top.next++];
      if (t == seed) {
        std::vector<ProductState> cycle;
        for (const auto& f : stack) cycle.push_back(f.state);
        return cycle;
      }
      auto& fl = flags[t];
      if (fl & kRed) continue;
      fl |= kRed;
      stack.push_back({t, product.successors(t)});
    }
    return std::nullopt;
  };

  for (auto init : product.initial()) {
    if (flags[init] & kBlue) continue;
    std::vector<Frame> stack;
    flags[init] |= kBlue | kOnStack;
    stack.push_back({init, product.successors(init)});
    while (!stack.empty()) {
      auto& top = stack.back();
      if (top.next < top.succ.size()) {
        const auto t = top.succ[top.next++];
        auto& fl = flags[t];
        if (!(fl & kBlue)) {
          fl |= kBlue | kOnStack;
          stack.push_back({t, product.successors(t)});
        }
        continue;
      }
      const auto v = top.state;
      if (product.accepting(v)) {
        if (auto cycle = red_search(v)) {
          std::vector<ProductState> stem;
          for (const auto& f : stack) stem.push_back(f.state);
          return {false, project(product, stem, *cycle)};
        }
      }
      flags[v] &= static_cast<std::uint8_t>(~kOnStack);
      stack.pop_back();
    }
  }
  return {true, std::nullopt};
}

Verdict scc_emptiness(const Product& product) {
  // Materialize the reachable product.
  std::unordered_map<ProductState, std::size_t> index_of;
  std::vector<ProductState> states;
  std::vector<std::vector<std::size_t>> adj;
  auto intern = [&](ProductState p) {
    auto [it, fresh] = index_of.emplace(p, states.size());
    if (fresh) {
      states.push_back(p);
      adj.emplace_back();
    }
    return it->second;
  };
  std::vector<std::size_t> roots;
  for (auto p : product.initial()) roots.push_back(intern(p));
  for (std::size_t v = 0; v < states.size(); ++v) {
    for (auto p : product.successors(states[v])) {
      const auto w = intern(p);
      adj[v].push_back(w);
    }
  }
  const auto n = states.size();

  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnset), low(n, 0), component(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> scc_stack;
  std::size_t counter = 0;
  std::size_t components = 0;
  std::vector<bool> nontrivial;
  struct CallFrame {
    std::size_t v;
    std::size_t edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<CallFrame> call{{root, 0}};
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
        std::size_t size = 0;
        std::size_t w = 0;
        do {
          w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[w] = false;
          component[w] = components;
          ++size;
        } while (w != v);
        nontrivial.push_back(size > 1 || std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end());
        ++components;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }

  std::optional<std::size_t> seed;
  for (std::size_t v = 0; v < n; ++v) {
    if (product.accepting(states[v]) && nontrivial[component[v]]) {
      seed = v;
      break;
    }
  }
  if (!seed) return {true, std::nullopt};

  // Shortest stem from the roots, then shortest cycle through the seed inside its SCC.
  auto bfs_path = [&](const std::vector<std::size_t>& sources, auto&& allowed,
                      std::size_t target) -> std::vector<std::size_t> {
    std::vector<std::size_t> parent(n, kUnset);
    std::queue<std::size_t> q;
    for (auto s : sources) {
      if (parent[s] == kUnset) {
        parent[s] = s;
        q.push(s);
      }
    }
    while (!q.empty()) {
      const auto v = q.front();
      q.pop();
      if (v == target) break;
      for (auto w : adj[v]) {
        if (parent[w] == kUnset && allowed(w)) {
          parent[w] = v;
          q.push(w);
        }
      }
    }
    std::vector<std::size_t> path{target};
    while (parent[path.back()] != path.back()) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
  };

  const auto stem = bfs_path(roots, [](std::size_t) { return true; }, *seed);
  std::vector<std::size_t> cycle{*seed};
  if (std::find(adj[*seed].begin(), adj[*seed].end(), *seed) == adj[*seed].end()) {
    const auto c = component[*seed];
    std::vector<std::size_t> inside;
    for (auto w : adj[*seed]) {
      if (component[w] == c) inside.push_back(w);
    }
    // Path from a successor of the seed back to a predecessor of the seed.
    std::vector<std::size_t> parent(n, kUnset);
    std::queue<std::size_t> q;
    for (auto w : inside) {
      if (parent[w] == kUnset) {
        parent[w] = w;
        q.push(w);
      }
    }
    std::size_t last = kUnset;
    while (!q.empty() && last == kUnset) {
      const auto v = q.front();
      q.pop();
      for (auto w : adj[v]) {
        if (w == *seed) {
          last = v;
          break;
        }
        if (parent[w] == kUnset && component[w] == c) {
          parent[w] = v;
          q.push(w);
        }
      }
    }
    std::vector<std::size_t> back{last};
    while (parent[back.back()] != back.back()) back.push_back(parent[back.back()]);
    cycle.insert(cycle.end(), back.rbegin(), back.rend());
  }

  std::vector<ProductState> stem_states;
  for (auto v : stem) stem_states.push_back(states[v]);
  std::vector<ProductState> cycle_states;
  for (auto v : cycle) cycle_states.push_back(states[v]);
  return {false, project(product, stem_states, cycle_states)};
}

void require_atoms(const TransitionSystem& ts, const Formula& f) {
  for (const auto& name : f.atom_names()) ts.atoms().id(name);
}

}  // namespace

Verdict check_negated(const TransitionSystem& ts, const BuchiAutomaton& negated, Emptiness algorithm) {
  if (negated.num_states() == 0) return {true, std::nullopt};
  const Product product(ts, negated);
  return algorithm == Emptiness::NestedDfs ? nested_dfs(product) : scc_emptiness(product);
}

Verdict check(const TransitionSystem& ts, const Formula& f, Emptiness algorithm) {
  require_atoms(ts, f);
  return check_negated(ts, automaton_for(!f, ts.atoms()), algorithm);
}

std::optional<Witness> exists_path_reaching(const TransitionSystem& ts, const Formula& goal) {
  if (!goal.is_propositional()) throw std::invalid_argument("goal must be propositional: " + to_string(goal));
  require_atoms(ts, goal);
  constexpr auto kUnset = std::numeric_limits<StateId>::max();
  std::vector<StateId> parent(ts.num_states(), kUnset);
  std::queue<StateId> q;
  parent[ts.initial()] = ts.initial();
  q.push(ts.initial());
  while (!q.empty()) {
    const auto s = q.front();
    q.pop();
    if (eval_propositional(goal, ts.label(s), ts.atoms())) {
      Witness w{{s}};
      while (parent[w.states.back()] != w.states.back()) w.states.push_back(parent[w.states.back()]);
      std::reverse(w.states.begin(), w.states.end());
      return w;
    }
    for (auto t : ts.successors(s)) {
      if (parent[t] == kUnset) {
        parent[t] = s;
        q.push(t);
      }
    }
  }
  return std::nullopt;
}

bool validate_counterexample(const TransitionSystem& ts, const Formula& f, const Counterexample& cex) {
  if (cex.cycle.empty()) return false;
  std::vector<StateId> path = cex.stem;
  path.insert(path.end(), cex.cycle.begin(), cex.cycle.end());
  for (auto s : path) {
    if (s >= ts.num_states()) return false;
  }
  if (path.front() != ts.initial()) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!ts.has_edge(path[i], path[i + 1])) return false;
  }
  if (!ts.has_edge(cex.cycle.back(), cex.cycle.front())) return false;
  try {
    return eval_on_lasso(!f, to_lasso(ts, cex), ts.atoms());
  } catch (const KripkeError&) {
    return false;
  }
}

bool validate_witness(const TransitionSystem& ts, const Formula& goal, const Witness& w) {
  if (w.states.empty() || w.states.front() != ts.initial()) return false;
  for (auto s : w.states) {
    if (s >= ts.num_states()) return false;
  }
  for (std::size_t i = 0; i + 1 < w.states.size(); ++i) {
    if (!ts.has_edge(w.states[i], w.states[i + 1])) return false;
  }
  return eval_propositional(goal, ts.label(w.states.back()), ts.atoms());
}

}  // namespace nmcheck
