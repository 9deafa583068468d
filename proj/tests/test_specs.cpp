#include <doctest.h>

#include "nmcheck/check.hpp"
#include "nmcheck/specs.hpp"

using namespace nmcheck;

namespace {

std::vector<SpecInstance> only(const NMParams& p, SpecId id, SpecOptions o = {}) { return instantiate(p, {id}, o); }

bool some_violation_validated(const SuiteReport& r, const NMModel& model, SpecId id) {
  for (const auto& res : r.results) {
    if (res.instance.id != id || res.met) continue;
    if (res.verdict.counterexample &&
        validate_counterexample(model.system, res.instance.formula, *res.verdict.counterexample)) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("spec ids") {
  CHECK(to_string(SpecId::D4) == "D4");
  CHECK(parse_spec_id("D7") == SpecId::D7);
  CHECK(parse_spec_id("D8'") == SpecId::D8);
  CHECK_FALSE(parse_spec_id("D9").has_value());
  CHECK(parse_spec_list("all") == all_specs());
  CHECK(parse_spec_list("D1,D3") == std::set<SpecId>{SpecId::D1, SpecId::D3});
  CHECK(parse_spec_list(" D2 , D2 ") == std::set<SpecId>{SpecId::D2});
  CHECK_THROWS_AS(parse_spec_list("D1,X"), std::invalid_argument);
  CHECK_THROWS_AS(parse_spec_list(""), std::invalid_argument);
  CHECK(all_specs().size() == 8);
}

TEST_CASE("instance examples") {
  const NMParams p{3, 2};
  const auto d3 = only(p, SpecId::D3);
  REQUIRE(d3.size() == 3);
  CHECK(d3[0].indices == std::vector<int>{1, 1});
  CHECK(to_display(d3[0].formula) == "G((L1 & l & W1) -> X(L2 & W1))");
  CHECK(d3[0].label() == "D3[i=1,j=1]");

  const auto d7 = only(p, SpecId::D7);
  REQUIRE(d7.size() == 3);
  CHECK(d7[0].indices == std::vector<int>{1, 2});
  CHECK(d7[1].indices == std::vector<int>{1, 3});
  CHECK(d7[2].indices == std::vector<int>{2, 3});
  CHECK(to_display(d7[2].formula) == "G !(!W2 & W3)");

  const auto d8 = only({2, 2}, SpecId::D8);
  REQUIRE(d8.size() == 1);
  CHECK(to_display(d8[0].formula) == "!F(W1 & W2)");
  CHECK(d8[0].polarity == Polarity::RefutationWitness);
  CHECK(d8[0].label() == "D8'");

  const auto d1 = only(p, SpecId::D1);
  CHECK(to_display(d1[0].formula) == "G((L2 & l & W1) -> X true)");
  CHECK(to_display(d1[2].formula) == "G((L2 & l & W1 & W2 & W3) -> X(W1 & W2))");
  CHECK(to_display(only(p, SpecId::D2)[0].formula) == "G((L1 & h) -> X(!W1 & !W2 & !W3))");
  CHECK(to_display(only(p, SpecId::D5)[1].formula) == "G((n & W1 & W2) -> X(W1 & W2 & W3))");
  CHECK(to_display(only(p, SpecId::D6)[0].formula) == "G((n & W1 & W2 & W3) -> X(W1 & W2 & W3))");

  const auto one = instantiate({1, 1}, {SpecId::D3, SpecId::D4, SpecId::D5});
  CHECK(one.empty());
}

TEST_CASE("literal and strict variants") {
  const NMParams p{3, 2};
  CHECK(to_display(only(p, SpecId::D1, {false, true})[2].formula) == "G((L1 & l & W1 & W2 & W3) -> X(W1 & W2))");
  CHECK(to_display(only(p, SpecId::D2, {false, true})[0].formula) == "G((L2 & h) -> X(!W1 & !W2 & !W3))");
  CHECK(to_display(only(p, SpecId::D1, {true, false})[1].formula) == "G((L2 & l & W1 & W2 & !W3) -> X(W1 & !W2))");
  CHECK(to_display(only(p, SpecId::D3, {true, false})[0].formula) ==
        "G((L1 & l & W1 & !W2) -> X(L2 & W1 & !W2))");
  CHECK(to_display(only(p, SpecId::D4, {true, false})[2].formula) == "G((L2 & h & W1 & W2 & W3) -> X(L1 & W1 & W2 & W3))");
}

TEST_CASE("instance counts match closed forms") {
  for (int n = 1; n <= 6; ++n) {
    for (int m = 1; m <= 6; ++m) {
      const NMParams p{n, m};
      const std::size_t expected[] = {0,
                                      static_cast<std::size_t>(n),
                                      1,
                                      static_cast<std::size_t>(n * (m - 1)),
                                      static_cast<std::size_t>(n * (m - 1)),
                                      static_cast<std::size_t>(n - 1),
                                      1,
                                      static_cast<std::size_t>(n * (n - 1) / 2),
                                      1};
      for (auto id : all_specs()) {
        const auto k = static_cast<int>(id);
        CHECK(only(p, id).size() == expected[k]);
        CHECK(only(p, id, {true, false}).size() == expected[k]);
        CHECK(expected_instance_count(p, id) == expected[k]);
      }
    }
  }
}

TEST_CASE("instances round trip through the printer") {
  for (int n = 1; n <= 4; ++n) {
    for (int m = 1; m <= 4; ++m) {
      for (bool strict : {false, true}) {
        for (const auto& inst : instantiate({n, m}, all_specs(), {strict, false})) {
          CHECK(parse(to_string(inst.formula)) == inst.formula);
          CHECK(parse(to_display(inst.formula)) == inst.formula);
          const auto atoms = nm_atoms({n, m});
          for (const auto& name : inst.formula.atom_names()) CHECK(atoms.find(name).has_value());
        }
      }
    }
  }
}

TEST_CASE("faithful and strict suites pass for N, M <= 5") {
  for (int n = 1; n <= 5; ++n) {
    for (int m = 1; m <= 5; ++m) {
      const auto model = build_transition_system({n, m});
      for (bool strict : {false, true}) {
        const auto report = run_suite(model, all_specs(), {strict, false});
        CHECK_MESSAGE(report.all_met(), "N=" << n << " M=" << m << " strict=" << strict);
        CHECK(report.reachable_states == static_cast<std::size_t>(3 * (n + 1) * m + 1));
        const auto& last = report.results.back();
        REQUIRE(last.instance.id == SpecId::D8);
        REQUIRE(last.witness);
        std::vector<Formula> all;
        for (int i = 1; i <= n; ++i) all.push_back(Formula::atom("W" + std::to_string(i)));
        const auto shortest = exists_path_reaching(model.system, conj(all));
        REQUIRE(shortest);
        CHECK(shortest->length() == static_cast<std::size_t>(n + 1));  // startup, then n normal readings
        CHECK(last.witness->length() >= shortest->length());
        CHECK(model.states[last.witness->states.back()].powered == n);
        CHECK(validate_witness(model.system, conj(all), *last.witness));
      }
    }
  }
}

TEST_CASE("empty index ranges are noted") {
  const auto report = run_suite(NMParams{1, 1}, all_specs());
  CHECK(report.all_met());
  CHECK(report.notes.size() == 4);  // D3, D4, D5, D7
}

TEST_CASE("literal anchoring fails") {
  const auto model = build_transition_system({3, 2});
  const auto d2 = run_suite(model, {SpecId::D2}, {false, true});
  CHECK_FALSE(d2.all_met());
  CHECK(some_violation_validated(d2, model, SpecId::D2));

  // Low at L1 raises the level and keeps every section, so the literal D1
  // consequent is still met; only the strict form sees the missing decrement.
  CHECK(run_suite(model, {SpecId::D1}, {false, true}).all_met());
  const auto d1 = run_suite(model, {SpecId::D1}, {true, true});
  CHECK_FALSE(d1.all_met());
  CHECK(some_violation_validated(d1, model, SpecId::D1));
}

TEST_CASE("mutants are caught") {
  const NMParams p{3, 2};
  const auto a = build_transition_system(p, ControllerVariant::AlwaysLevelUpOnLow);
  const auto ra = run_suite(a, all_specs(), {true, false});
  CHECK(some_violation_validated(ra, a, SpecId::D1));

  const auto b = build_transition_system(p, ControllerVariant::SkipSectionIncrement);
  const auto rb = run_suite(b, all_specs(), {});
  CHECK(some_violation_validated(rb, b, SpecId::D5));
  CHECK_FALSE(rb.all_met());

  const auto c = build_transition_system(p, ControllerVariant::HoldOnHighAtMinimum);
  const auto rc = run_suite(c, all_specs(), {});
  CHECK(some_violation_validated(rc, c, SpecId::D2));
}

TEST_CASE("serial and parallel suites agree") {
  for (auto variant : {ControllerVariant::Correct, ControllerVariant::SkipSectionIncrement}) {
    const auto model = build_transition_system({3, 3}, variant);
    const auto serial = run_suite(model, all_specs(), {true, false}, Execution::Serial);
    const auto parallel = run_suite(model, all_specs(), {true, false}, Execution::Parallel);
    REQUIRE(serial.results.size() == parallel.results.size());
    for (std::size_t k = 0; k < serial.results.size(); ++k) {
      const auto& s = serial.results[k];
      const auto& q = parallel.results[k];
      CHECK(s.instance.label() == q.instance.label());
      CHECK(s.met == q.met);
      CHECK(s.verdict.counterexample.has_value() == q.verdict.counterexample.has_value());
      if (s.verdict.counterexample) {
        CHECK(s.verdict.counterexample->stem == q.verdict.counterexample->stem);
        CHECK(s.verdict.counterexample->cycle == q.verdict.counterexample->cycle);
      }
    }
  }
}
