#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nmcheck/kripke.hpp"

namespace nmcheck {

enum class Op {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Next,
  Finally,
  Globally,
  Until,
  WeakUntil,
  Release,
};

bool is_unary(Op op);
bool is_binary(Op op);
bool is_temporal(Op op);

// Immutable LTL syntax tree. Copies share structure.
class Formula {
 public:
  static Formula tt();
  static Formula ff();
  static Formula atom(std::string name);
  static Formula unary(Op op, Formula child);
  static Formula binary(Op op, Formula lhs, Formula rhs);

  Op op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  const Formula& child() const { return node_->kids[0]; }
  const Formula& lhs() const { return node_->kids[0]; }
  const Formula& rhs() const { return node_->kids[1]; }

  std::size_t size() const;
  std::size_t depth() const;
  // Atom names in first-occurrence order.
  std::vector<std::string> atom_names() const;
  bool is_propositional() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    Op op;
    std::string name;
    std::vector<Formula> kids;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Builders. `conj`/`disj` fold left and return true/false for empty input.
Formula operator!(Formula f);
Formula operator&&(Formula a, Formula b);
Formula operator||(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula next(Formula f);
Formula finally(Formula f);
Formula globally(Formula f);
Formula until(Formula a, Formula b);
Formula weak_until(Formula a, Formula b);
Formula release(Formula a, Formula b);
Formula conj(const std::vector<Formula>& parts);
Formula disj(const std::vector<Formula>& parts);

class LtlSyntaxError : public std::runtime_error {
 public:
  enum class Kind { SyntaxError, UnknownToken };

  LtlSyntaxError(Kind kind, std::size_t position, const std::string& msg);
  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

// Grammar, loosest to tightest:
//   implies := or ('->' implies)?
//   or      := and ('|' and)*
//   and     := temporal ('&' temporal)*
//   temporal:= unary (('U'|'W'|'R') temporal)?
//   unary   := ('!'|'X'|'F'|'G') unary | '(' implies ')' | 'true' | 'false' | ident
Formula parse(std::string_view text);

// Fully parenthesized canonical form; parse(to_string(f)) == f.
std::string to_string(const Formula& f);
// Minimal parentheses by operator precedence; also round-trips through parse.
std::string to_display(const Formula& f);
// Same shape with SMV operator spellings (V for release, TRUE/FALSE).
// Weak until is expanded into until/globally.
std::string to_smv(const Formula& f);

// Negation normal form: negations only on atoms, no Implies/F/G/W.
Formula to_nnf(const Formula& f);
bool is_nnf(const Formula& f);

// Ultimately periodic word stem . cycle^omega over label sets.
struct Lasso {
  std::vector<LabelSet> stem;
  std::vector<LabelSet> cycle;

  std::size_t positions() const { return stem.size() + cycle.size(); }
  std::size_t successor(std::size_t pos) const {
    return pos + 1 < positions() ? pos + 1 : stem.size();
  }
  const LabelSet& at(std::size_t pos) const {
    return pos < stem.size() ? stem[pos] : cycle[pos - stem.size()];
  }
};

// Exact truth of f at position 0. Throws KripkeError(UnknownAtom).
bool eval_on_lasso(const Formula& f, const Lasso& path, const AtomTable& atoms);
// Truth of f at every distinct lasso position.
std::vector<bool> eval_positions(const Formula& f, const Lasso& path, const AtomTable& atoms);
// Propositional f against one label set; throws std::invalid_argument on temporal operators.
bool eval_propositional(const Formula& f, const LabelSet& label, const AtomTable& atoms);

}  // namespace nmcheck
