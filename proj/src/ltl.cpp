#include "nmcheck/ltl.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace nmcheck {

bool is_unary(Op op) {
  return op == Op::Not || op == Op::Next || op == Op::Finally || op == Op::Globally;
}

bool is_binary(Op op) {
  switch (op) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Until:
    case Op::WeakUntil:
    case Op::Release:
      return true;
    default:
      return false;
  }
}

bool is_temporal(Op op) {
  switch (op) {
    case Op::Next:
    case Op::Finally:
    case Op::Globally:
    case Op::Until:
    case Op::WeakUntil:
    case Op::Release:
      return true;
    default:
      return false;
  }
}

Formula Formula::tt() {
  static const Formula t(std::make_shared<const Node>(Node{Op::True, {}, {}}));
  return t;
}

Formula Formula::ff() {
  static const Formula f(std::make_shared<const Node>(Node{Op::False, {}, {}}));
  return f;
}

Formula Formula::atom(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Op::Atom, std::move(name), {}}));
}

Formula Formula::unary(Op op, Formula child) {
  if (!is_unary(op)) throw std::invalid_argument("Formula::unary: not a unary operator");
  return Formula(std::make_shared<const Node>(Node{op, {}, {std::move(child)}}));
}

Formula Formula::binary(Op op, Formula lhs, Formula rhs) {
  if (!is_binary(op)) throw std::invalid_argument("Formula::binary: not a binary operator");
  return Formula(std::make_shared<const Node>(Node{op, {}, {std::move(lhs), std::move(rhs)}}));
}

std::size_t Formula::size() const {
  std::size_t n = 1;
  for (const auto& k : node_->kids) n += k.size();
  return n;
}

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (const auto& k : node_->kids) d = std::max(d, k.depth() + 1);
  return d;
}

std::vector<std::string> Formula::atom_names() const {
  std::vector<std::string> out;
  auto visit = [&](auto&& self, const Formula& f) -> void {
    if (f.op() == Op::Atom) {
      if (std::find(out.begin(), out.end(), f.name()) == out.end()) out.push_back(f.name());
      return;
    }
    for (const auto& k : f.node_->kids) self(self, k);
  };
  visit(visit, *this);
  return out;
}

bool Formula::is_propositional() const {
  if (is_temporal(op())) return false;
  return std::all_of(node_->kids.begin(), node_->kids.end(),
                     [](const Formula& k) { return k.is_propositional(); });
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.op() == b.op() && a.name() == b.name() && a.node_->kids == b.node_->kids;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  return std::lexicographical_compare_three_way(ka.begin(), ka.end(), kb.begin(), kb.end());
}

Formula operator!(Formula f) { return Formula::unary(Op::Not, std::move(f)); }
Formula operator&&(Formula a, Formula b) { return Formula::binary(Op::And, std::move(a), std::move(b)); }
Formula operator||(Formula a, Formula b) { return Formula::binary(Op::Or, std::move(a), std::move(b)); }
Formula implies(Formula a, Formula b) { return Formula::binary(Op::Implies, std::move(a), std::move(b)); }
Formula next(Formula f) { return Formula::unary(Op::Next, std::move(f)); }
Formula finally(Formula f) { return Formula::unary(Op::Finally, std::move(f)); }
Formula globally(Formula f) { return Formula::unary(Op::Globally, std::move(f)); }
Formula until(Formula a, Formula b) { return Formula::binary(Op::Until, std::move(a), std::move(b)); }
Formula weak_until(Formula a, Formula b) {
  return Formula::binary(Op::WeakUntil, std::move(a), std::move(b));
}
Formula release(Formula a, Formula b) { return Formula::binary(Op::Release, std::move(a), std::move(b)); }

Formula conj(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::tt();
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = out && parts[i];
  return out;
}

Formula disj(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::ff();
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = out || parts[i];
  return out;
}

// ---------------------------------------------------------------------------
// Parser

LtlSyntaxError::LtlSyntaxError(Kind kind, std::size_t position, const std::string& msg)
    : std::runtime_error("at position " + std::to_string(position) + ": " + msg),
      kind_(kind),
      position_(position) {}

namespace {

enum class Tok { Ident, True, False, Not, And, Or, Arrow, LParen, RParen, Next, Finally, Globally,
                 Until, WeakUntil, Release, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const auto start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      std::string word(text.substr(start, i - start));
      Tok kind = Tok::Ident;
      if (word == "true") kind = Tok::True;
      else if (word == "false") kind = Tok::False;
      else if (word == "X") kind = Tok::Next;
      else if (word == "F") kind = Tok::Finally;
      else if (word == "G") kind = Tok::Globally;
      else if (word == "U") kind = Tok::Until;
      else if (word == "W") kind = Tok::WeakUntil;
      else if (word == "R") kind = Tok::Release;
      out.push_back({kind, std::move(word), start});
      continue;
    }
    switch (c) {
      case '!':
        out.push_back({Tok::Not, "!", start});
        ++i;
        break;
      case '&':
        i += (i + 1 < text.size() && text[i + 1] == '&') ? 2 : 1;
        out.push_back({Tok::And, "&", start});
        break;
      case '|':
        i += (i + 1 < text.size() && text[i + 1] == '|') ? 2 : 1;
        out.push_back({Tok::Or, "|", start});
        break;
      case '(':
        out.push_back({Tok::LParen, "(", start});
        ++i;
        break;
      case ')':
        out.push_back({Tok::RParen, ")", start});
        ++i;
        break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", start});
          i += 2;
          break;
        }
        [[fallthrough]];
      default:
        throw LtlSyntaxError(LtlSyntaxError::Kind::UnknownToken, start,
                             std::string("unknown token '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse_all() {
    auto f = parse_implies();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw LtlSyntaxError(LtlSyntaxError::Kind::SyntaxError, peek().pos, msg);
  }

  Formula parse_implies() {
    auto lhs = parse_or();
    if (accept(Tok::Arrow)) return implies(std::move(lhs), parse_implies());
    return lhs;
  }

  Formula parse_or() {
    auto lhs = parse_and();
    while (accept(Tok::Or)) lhs = std::move(lhs) || parse_and();
    return lhs;
  }

  Formula parse_and() {
    auto lhs = parse_temporal();
    while (accept(Tok::And)) lhs = std::move(lhs) && parse_temporal();
    return lhs;
  }

  Formula parse_temporal() {
    auto lhs = parse_unary();
    if (accept(Tok::Until)) return until(std::move(lhs), parse_temporal());
    if (accept(Tok::WeakUntil)) return weak_until(std::move(lhs), parse_temporal());
    if (accept(Tok::Release)) return release(std::move(lhs), parse_temporal());
    return lhs;
  }

  Formula parse_unary() {
    const auto& tok = peek();
    switch (tok.kind) {
      case Tok::Not:
        advance();
        return !parse_unary();
      case Tok::Next:
        advance();
        return next(parse_unary());
      case Tok::Finally:
        advance();
        return finally(parse_unary());
      case Tok::Globally:
        advance();
        return globally(parse_unary());
      case Tok::True:
        advance();
        return Formula::tt();
      case Tok::False:
        advance();
        return Formula::ff();
      case Tok::Ident:
        return Formula::atom(advance().text);
      case Tok::LParen: {
        advance();
        auto inner = parse_implies();
        if (!accept(Tok::RParen)) fail("expected ')'");
        return inner;
      }
      case Tok::End:
        fail("unexpected end of formula");
      default:
        fail("unexpected '" + tok.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

const char* binary_symbol(Op op, bool smv) {
  switch (op) {
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::Until: return "U";
    case Op::WeakUntil: return "W";
    case Op::Release: return smv ? "V" : "R";
    default: return "?";
  }
}

const char* unary_symbol(Op op) {
  switch (op) {
    case Op::Not: return "!";
    case Op::Next: return "X";
    case Op::Finally: return "F";
    case Op::Globally: return "G";
    default: return "?";
  }
}

std::string print_full(const Formula& f, bool smv) {
  switch (f.op()) {
    case Op::True: return smv ? "TRUE" : "true";
    case Op::False: return smv ? "FALSE" : "false";
    case Op::Atom: return f.name();
    default: break;
  }
  if (is_unary(f.op())) {
    auto inner = print_full(f.child(), smv);
    std::string out = unary_symbol(f.op());
    if (f.op() != Op::Not && inner.front() != '(') out += ' ';
    return out + inner;
  }
  if (smv && f.op() == Op::WeakUntil) {
    const auto a = print_full(f.lhs(), smv);
    return "((" + a + " U " + print_full(f.rhs(), smv) + ") | G" + (a.front() == '(' ? "" : " ") + a + ")";
  }
  return "(" + print_full(f.lhs(), smv) + " " + binary_symbol(f.op(), smv) + " " +
         print_full(f.rhs(), smv) + ")";
}

int precedence(Op op) {
  switch (op) {
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Until:
    case Op::WeakUntil:
    case Op::Release: return 4;
    case Op::Not:
    case Op::Next:
    case Op::Finally:
    case Op::Globally: return 5;
    default: return 6;
  }
}

std::string print_display(const Formula& f, int min_prec, bool force_paren) {
  std::string out;
  const int prec = precedence(f.op());
  if (prec == 6) {
    out = f.op() == Op::True ? "true" : f.op() == Op::False ? "false" : f.name();
  } else if (is_unary(f.op())) {
    auto inner = print_display(f.child(), 5, false);
    out = unary_symbol(f.op());
    if (f.op() != Op::Not && inner.front() != '(') out += ' ';
    out += inner;
  } else {
    const bool left_assoc = f.op() == Op::And || f.op() == Op::Or;
    // Operands of '->' are parenthesized whenever they are binary, for readability.
    const bool wrap = f.op() == Op::Implies;
    out = print_display(f.lhs(), left_assoc ? prec : prec + 1, wrap && is_binary(f.lhs().op())) + " " +
          binary_symbol(f.op(), false) + " " +
          print_display(f.rhs(), left_assoc ? prec + 1 : prec, wrap && is_binary(f.rhs().op()));
  }
  if (force_paren || prec < min_prec) return "(" + out + ")";
  return out;
}

}  // namespace

std::string to_display(const Formula& f) { return print_display(f, 0, false); }

Formula parse(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

std::string to_string(const Formula& f) { return print_full(f, false); }

std::string to_smv(const Formula& f) { return print_full(f, true); }

// ---------------------------------------------------------------------------
// Negation normal form

namespace {

Formula nnf(const Formula& f, bool neg) {
  switch (f.op()) {
    case Op::True:
      return neg ? Formula::ff() : Formula::tt();
    case Op::False:
      return neg ? Formula::tt() : Formula::ff();
    case Op::Atom:
      return neg ? !f : f;
    case Op::Not:
      return nnf(f.child(), !neg);
    case Op::And:
      return neg ? nnf(f.lhs(), true) || nnf(f.rhs(), true) : nnf(f.lhs(), false) && nnf(f.rhs(), false);
    case Op::Or:
      return neg ? nnf(f.lhs(), true) && nnf(f.rhs(), true) : nnf(f.lhs(), false) || nnf(f.rhs(), false);
    case Op::Implies:
      return neg ? nnf(f.lhs(), false) && nnf(f.rhs(), true) : nnf(f.lhs(), true) || nnf(f.rhs(), false);
    case Op::Next:
      return next(nnf(f.child(), neg));
    case Op::Finally:
      return neg ? release(Formula::ff(), nnf(f.child(), true)) : until(Formula::tt(), nnf(f.child(), false));
    case Op::Globally:
      return neg ? until(Formula::tt(), nnf(f.child(), true)) : release(Formula::ff(), nnf(f.child(), false));
    case Op::Until:
      return neg ? release(nnf(f.lhs(), true), nnf(f.rhs(), true))
                 : until(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Release:
      return neg ? until(nnf(f.lhs(), true), nnf(f.rhs(), true))
                 : release(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::WeakUntil:
      // a W b == b R (a | b)
      if (neg) return until(nnf(f.rhs(), true), nnf(f.lhs(), true) && nnf(f.rhs(), true));
      return release(nnf(f.rhs(), false), nnf(f.lhs(), false) || nnf(f.rhs(), false));
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

bool is_nnf(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return true;
    case Op::Not:
      return f.child().op() == Op::Atom;
    case Op::Next:
      return is_nnf(f.child());
    case Op::And:
    case Op::Or:
    case Op::Until:
    case Op::Release:
      return is_nnf(f.lhs()) && is_nnf(f.rhs());
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Lasso semantics

namespace {

enum class Fixpoint { Least, Greatest };

// Solves val[i] = now[i] || (keep[i] && val[succ(i)]) (least) or the
// greatest solution of val[i] = now[i] && (keep[i] || val[succ(i)]).
std::vector<bool> solve(const Lasso& path, const std::vector<bool>& a, const std::vector<bool>& b, Fixpoint fp,
                        bool until_shape) {
  const auto n = path.positions();
  std::vector<bool> val(n, fp == Fixpoint::Greatest);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = n; k-- > 0;) {
      const bool later = val[path.successor(k)];
      const bool v = until_shape ? (b[k] || (a[k] && later)) : (b[k] && (a[k] || later));
      if (v != val[k]) {
        val[k] = v;
        changed = true;
      }
    }
  }
  return val;
}

std::vector<bool> eval_all(const Formula& f, const Lasso& path, const AtomTable& atoms) {
  const auto n = path.positions();
  switch (f.op()) {
    case Op::True:
      return std::vector<bool>(n, true);
    case Op::False:
      return std::vector<bool>(n, false);
    case Op::Atom: {
      const auto id = atoms.id(f.name());
      std::vector<bool> out(n);
      for (std::size_t k = 0; k < n; ++k) out[k] = path.at(k).contains(id);
      return out;
    }
    case Op::Not: {
      auto out = eval_all(f.child(), path, atoms);
      out.flip();
      return out;
    }
    case Op::Next: {
      const auto sub = eval_all(f.child(), path, atoms);
      std::vector<bool> out(n);
      for (std::size_t k = 0; k < n; ++k) out[k] = sub[path.successor(k)];
      return out;
    }
    case Op::Finally:
      return solve(path, std::vector<bool>(n, true), eval_all(f.child(), path, atoms), Fixpoint::Least, true);
    case Op::Globally:
      return solve(path, std::vector<bool>(n, false), eval_all(f.child(), path, atoms), Fixpoint::Greatest,
                   false);
    default:
      break;
  }

  const auto a = eval_all(f.lhs(), path, atoms);
  const auto b = eval_all(f.rhs(), path, atoms);
  std::vector<bool> out(n);
  switch (f.op()) {
    case Op::And:
      for (std::size_t k = 0; k < n; ++k) out[k] = a[k] && b[k];
      return out;
    case Op::Or:
      for (std::size_t k = 0; k < n; ++k) out[k] = a[k] || b[k];
      return out;
    case Op::Implies:
      for (std::size_t k = 0; k < n; ++k) out[k] = !a[k] || b[k];
      return out;
    case Op::Until:
      return solve(path, a, b, Fixpoint::Least, true);
    case Op::WeakUntil:
      return solve(path, a, b, Fixpoint::Greatest, true);
    case Op::Release:
      return solve(path, a, b, Fixpoint::Greatest, false);
    default:
      throw std::logic_error("eval_on_lasso: unhandled operator");
  }
}

}  // namespace

std::vector<bool> eval_positions(const Formula& f, const Lasso& path, const AtomTable& atoms) {
  if (path.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
  return eval_all(f, path, atoms);
}

bool eval_on_lasso(const Formula& f, const Lasso& path, const AtomTable& atoms) {
  return eval_positions(f, path, atoms)[0];
}

bool eval_propositional(const Formula& f, const LabelSet& label, const AtomTable& atoms) {
  switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return label.contains(atoms.id(f.name()));
    case Op::Not: return !eval_propositional(f.child(), label, atoms);
    case Op::And: return eval_propositional(f.lhs(), label, atoms) && eval_propositional(f.rhs(), label, atoms);
    case Op::Or: return eval_propositional(f.lhs(), label, atoms) || eval_propositional(f.rhs(), label, atoms);
    case Op::Implies:
      return !eval_propositional(f.lhs(), label, atoms) || eval_propositional(f.rhs(), label, atoms);
    default:
      throw std::invalid_argument("eval_propositional: temporal operator in '" + to_string(f) + "'");
  }
}

}  // namespace nmcheck
