#include <doctest.h>

#include "nmcheck/ltl.hpp"
#include "support/generators.hpp"

using namespace nmcheck;

namespace {

Formula a(const char* n) { return Formula::atom(n); }

LabelSet with(const AtomTable& atoms, std::initializer_list<const char*> names) {
  LabelSet l;
  for (auto n : names) l.insert(atoms.id(n));
  return l;
}

LtlSyntaxError::Kind parse_error(std::string_view text) {
  try {
    parse(text);
  } catch (const LtlSyntaxError& e) {
    return e.kind();
  }
  FAIL("parsed: " << text);
  return LtlSyntaxError::Kind::SyntaxError;
}

}  // namespace

TEST_CASE("parse examples") {
  CHECK(parse("G(l -> X n)") == globally(implies(a("l"), next(a("n")))));
  CHECK(parse("!F(W1 & W2)") == !finally(a("W1") && a("W2")));
  CHECK(parse("p U q U r") == until(a("p"), until(a("q"), a("r"))));
  CHECK(parse("p -> q -> r") == implies(a("p"), implies(a("q"), a("r"))));
  CHECK(parse("a & b & c") == ((a("a") && a("b")) && a("c")));
  CHECK(parse("a | b & c") == (a("a") || (a("b") && a("c"))));
  CHECK(parse("a && b || c") == ((a("a") && a("b")) || a("c")));
  CHECK(parse("a U b & c") == (until(a("a"), a("b")) && a("c")));
  CHECK(parse("!a U b") == until(!a("a"), a("b")));
  CHECK(parse("X F G p") == next(finally(globally(a("p")))));
  CHECK(parse("p W q R r") == weak_until(a("p"), release(a("q"), a("r"))));
  CHECK(parse(" true | false ") == (Formula::tt() || Formula::ff()));
  CHECK(parse("Xp") == a("Xp"));
  CHECK(parse("F_1 U Gx") == until(a("F_1"), a("Gx")));
  CHECK(parse("((p))") == a("p"));
}

TEST_CASE("parse errors") {
  CHECK(parse_error("") == LtlSyntaxError::Kind::SyntaxError);
  CHECK(parse_error("p &") == LtlSyntaxError::Kind::SyntaxError);
  CHECK(parse_error("(p | q") == LtlSyntaxError::Kind::SyntaxError);
  CHECK(parse_error("p q") == LtlSyntaxError::Kind::SyntaxError);
  CHECK(parse_error("p # q") == LtlSyntaxError::Kind::UnknownToken);
  CHECK(parse_error("p - q") == LtlSyntaxError::Kind::UnknownToken);
  try {
    parse("p & $");
  } catch (const LtlSyntaxError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("printers") {
  const auto d3 = parse("G((L1 & l & W1) -> X(L2 & W1))");
  CHECK(to_display(d3) == "G((L1 & l & W1) -> X(L2 & W1))");
  CHECK(to_display(parse("!F(W1 & W2)")) == "!F(W1 & W2)");
  CHECK(to_display(parse("G !(!W1 & W2)")) == "G !(!W1 & W2)");
  CHECK(to_string(parse("X p")) == "X p");
  CHECK(to_string(parse("a U b")) == "(a U b)");
  CHECK(to_smv(parse("a W b")) == "((a U b) | G a)");
  CHECK(to_smv(parse("a R true")) == "(a V TRUE)");
}

TEST_CASE("print and parse round trip") {
  testing::Rng rng(1);
  const auto atoms = testing::small_atoms(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto f = testing::random_formula(rng, atoms, 5);
    CHECK(parse(to_string(f)) == f);
    CHECK(parse(to_display(f)) == f);
  }
}

TEST_CASE("formula queries") {
  const auto f = parse("G(p -> X q) & r");
  CHECK(f.size() == 7);
  CHECK(f.depth() == 4);
  CHECK(f.atom_names() == std::vector<std::string>{"p", "q", "r"});
  CHECK_FALSE(f.is_propositional());
  CHECK(parse("p & !q -> r").is_propositional());
  CHECK(conj({}) == Formula::tt());
  CHECK(disj({}) == Formula::ff());
  CHECK(conj({a("x")}) == a("x"));
}

TEST_CASE("nnf examples") {
  CHECK(to_nnf(parse("!G p")) == until(Formula::tt(), !a("p")));
  CHECK(to_nnf(parse("!X p")) == next(!a("p")));
  CHECK(to_nnf(parse("G p")) == release(Formula::ff(), a("p")));
  CHECK(to_nnf(parse("p -> q")) == (!a("p") || a("q")));
  CHECK(to_nnf(parse("!!p")) == a("p"));
  CHECK(to_nnf(parse("!true")) == Formula::ff());
  CHECK(is_nnf(to_nnf(parse("!(a W b)"))));
  CHECK_FALSE(is_nnf(parse("F p")));
  CHECK_FALSE(is_nnf(parse("!(p & q)")));
}

TEST_CASE("eval examples") {
  const auto atoms = testing::small_atoms(2);  // a, b
  const LabelSet none;
  const auto pa = with(atoms, {"a"});
  CHECK(eval_on_lasso(parse("G true"), {{none}, {pa, none}}, atoms));
  CHECK_FALSE(eval_on_lasso(parse("F a"), {{none, none}, {none}}, atoms));
  CHECK(eval_on_lasso(parse("X a"), {{none}, {pa}}, atoms));
  CHECK_FALSE(eval_on_lasso(parse("X X a"), {{none, pa}, {none}}, atoms));
  CHECK(eval_on_lasso(parse("F a"), {{}, {pa}}, atoms));  // witness at position 0
  CHECK(eval_on_lasso(parse("G F a"), {{none}, {none, pa}}, atoms));
  CHECK_FALSE(eval_on_lasso(parse("F G a"), {{pa}, {none, pa}}, atoms));
  CHECK(eval_on_lasso(parse("a U b"), {{pa, pa}, {with(atoms, {"b"})}}, atoms));
  CHECK_FALSE(eval_on_lasso(parse("a U b"), {{}, {pa}}, atoms));
  CHECK(eval_on_lasso(parse("a W b"), {{}, {pa}}, atoms));
  CHECK(eval_on_lasso(parse("b R a"), {{}, {pa}}, atoms));
  CHECK_THROWS_AS(eval_on_lasso(parse("z"), {{}, {pa}}, atoms), KripkeError);
  CHECK_THROWS_AS(eval_on_lasso(parse("a"), {{pa}, {}}, atoms), std::invalid_argument);
  CHECK(eval_propositional(parse("a & !b"), pa, atoms));
  CHECK_THROWS_AS(eval_propositional(parse("X a"), pa, atoms), std::invalid_argument);
}

TEST_CASE("G and F agree with position scans") {
  testing::Rng rng(2);
  const auto atoms = testing::small_atoms(2);
  for (int trial = 0; trial < 500; ++trial) {
    const auto path = testing::random_lasso(rng, atoms, 5, 4);
    bool all = true;
    bool any = false;
    for (std::size_t pos = 0; pos < path.positions(); ++pos) {
      all = all && path.at(pos).contains(0);
      any = any || path.at(pos).contains(0);
    }
    CHECK(eval_on_lasso(parse("G a"), path, atoms) == all);
    CHECK(eval_on_lasso(parse("F a"), path, atoms) == any);
  }
}

TEST_CASE("eval agrees with the path-walk oracle, nnf and expansion laws") {
  testing::Rng rng(3);
  const auto atoms = testing::small_atoms(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto f = testing::random_formula(rng, atoms, 4);
    const auto g = testing::random_formula(rng, atoms, 3);
    const auto path = testing::random_lasso(rng, atoms, 5, 4);
    const auto values = eval_positions(f, path, atoms);
    REQUIRE(values.size() == path.positions());
    for (std::size_t pos = 0; pos < path.positions(); ++pos) {
      CHECK(values[pos] == testing::oracle_eval(f, path, atoms, pos));
    }
    CHECK(eval_on_lasso(to_nnf(f), path, atoms) == values[0]);
    CHECK(eval_on_lasso(to_nnf(!f), path, atoms) == !values[0]);
    CHECK(is_nnf(to_nnf(f)));

    const auto u = eval_positions(until(f, g), path, atoms);
    const auto expand_u = eval_positions(g || (f && next(until(f, g))), path, atoms);
    CHECK(u == expand_u);
    const auto gl = eval_positions(globally(f), path, atoms);
    CHECK(gl == eval_positions(f && next(globally(f)), path, atoms));
  }
}
