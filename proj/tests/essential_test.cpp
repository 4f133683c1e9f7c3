#include <doctest.h>

#include <chrono>

#include "fixtures.hpp"
#include "fta/error.hpp"
#include "fta/essential.hpp"
#include "fta/verify.hpp"
#include "oracle.hpp"

using namespace fta;
using fixtures::term;
using fixtures::tuple;

namespace {

StateId q(const char* name) { return *fixtures::a_ex().find_state(name); }

// g forgets its argument, f2 returns its second argument.
const Automaton& forgetful() {
  static const Automaton aut = parse_automaton(
      "signature: 0/0 1/0 g/1 f2/2\nstates: q0 q1\nfinal: q1\n"
      "rule: 0 -> q0\nrule: 1 -> q1\nrule: g(q0) -> q0\nrule: g(q1) -> q0\n"
      "rule: f2(q0,q0) -> q0\nrule: f2(q0,q1) -> q1\nrule: f2(q1,q0) -> q0\nrule: f2(q1,q1) -> q1\n");
  return aut;
}

}  // namespace

TEST_SUITE("essential") {

TEST_CASE("assignment enumeration order") {
  const auto& sig = fixtures::a_ex().signature();
  const auto one = enumerate_assignments({1}, sig);
  REQUIRE(one.size() == 2);
  CHECK(one[0] == tuple({"0"}));
  CHECK(one[1] == tuple({"1"}));
  const auto none = enumerate_assignments({}, sig);
  REQUIRE(none.size() == 1);
  CHECK(none[0].empty());
  const auto all = enumerate_assignments({1, 2, 3, 4}, sig);
  CHECK(all.size() == 16);
  CHECK(all[1] == tuple({"0", "0", "0", "1"}));
  CHECK(all[2] == tuple({"0", "0", "1", "0"}));
  CHECK(all[15] == tuple({"1", "1", "1", "1"}));
}

TEST_CASE("verdicts on the worked example") {
  const Automaton& aut = fixtures::a_ex();
  const Term& t = fixtures::t_ex();
  const auto w = is_essential_subtree(aut, t, Position{1, 1});
  REQUIRE(w.has_value());
  CHECK(check_witness(aut, t, *w));
  CHECK(w->position == Position{1, 1});
  // first pair in canonical order
  CHECK(w->gamma1 == tuple({"0", "0", "0", "0"}));
  CHECK(w->gamma2 == tuple({"1", "1", "0", "0"}));
  CHECK(w->sub_states == std::pair{q("q0"), q("q1")});
  CHECK(w->root_states == std::pair{q("q1"), q("q0")});
  CHECK_FALSE(is_essential_subtree(aut, t, Position{2, 1}).has_value());
  CHECK_FALSE(is_essential_subtree(aut, term("f1(0,g(1))"), Position::root()).has_value());
  CHECK_THROWS_AS(is_essential_subtree(aut, t, Position{3}), InvalidPosition);
}

TEST_CASE("a second witness pair for 1.1 is accepted") {
  const Automaton& aut = fixtures::a_ex();
  const Term& t = fixtures::t_ex();
  WitnessPair w{tuple({"0", "1", "1", "0"}), tuple({"1", "1", "1", "0"}), Position{1, 1}, {q("q0"), q("q1")},
                {q("q1"), q("q0")}};
  CHECK(check_witness(aut, t, w));
  // the pair from the 2.1 discussion agrees outside 2.1 but not on the root
  WitnessPair bad{tuple({"0", "0", "0", "1"}), tuple({"0", "0", "1", "1"}), Position{2, 1}, {q("q1"), q("q0")},
                  {q("q1"), q("q1")}};
  CHECK_FALSE(check_witness(aut, t, bad));
  // disagreeing outside the subtree
  WitnessPair outside{tuple({"0", "1", "1", "0"}), tuple({"1", "1", "0", "0"}), Position{1, 1}, {q("q0"), q("q1")},
                      {q("q1"), q("q0")}};
  CHECK_FALSE(check_witness(aut, t, outside));
}

TEST_CASE("full report on the worked example") {
  const Automaton& aut = fixtures::a_ex();
  const Term& t = fixtures::t_ex();
  const auto r = essential_positions(aut, t);
  CHECK(r.essential_positions.contains(Position{1, 1}));
  CHECK(r.fictive_positions.contains(Position{2, 1}));
  CHECK(r.essential_positions.contains(Position::root()));
  CHECK(r.essential_positions.contains(Position{1}));
  CHECK(is_prefix_closed(r.essential_positions));
  CHECK(r.essential_positions.size() + r.fictive_positions.size() == 16);
  CHECK(r.essential_vars == VarSet{1, 2});
  for (const auto& [p, w] : r.witnesses) CHECK(check_witness(aut, t, w));
  for (const auto& p : positions(t))
    CHECK(r.essential_positions.contains(p) == oracle::essential(aut, t, oracle::to_path(p)));

  const auto ground = essential_positions(aut, term("1"));
  CHECK(ground.essential_positions.empty());
  CHECK(ground.fictive_positions == positions(term("1")));
}

TEST_CASE("essential variables") {
  const Automaton& aut = fixtures::a_ex();
  CHECK(essential_vars(aut, fixtures::t_ex()) == VarSet{1, 2});
  CHECK(essential_vars(aut, term("g(x1)")) == VarSet{1});
  CHECK(essential_vars(aut, term("f1(0,g(1))")).empty());
  CHECK(essential_vars(aut, term("f1(x1,0)")).empty());
}

TEST_CASE("a repeated variable breaks prefix-closure") {
  const Automaton& aut = forgetful();
  const Term t = parse_term("f2(g(x1),x1)", aut.signature());
  const auto r = essential_positions(aut, t);
  CHECK(r.essential_positions.contains(Position{1, 1}));
  CHECK_FALSE(r.essential_positions.contains(Position{1}));
  CHECK_FALSE(is_prefix_closed(r.essential_positions));
  CHECK(oracle::essential(aut, t, {1, 1}));
  CHECK_FALSE(oracle::essential(aut, t, {1}));
}

TEST_CASE("set independence") {
  const Term& t = fixtures::t_ex();
  CHECK(sets_independent(t, PositionSet{Position{1, 1}}, PositionSet{Position{2, 1}, Position{2, 2}}));
  CHECK_FALSE(sets_independent(t, PositionSet{Position{1}}, PositionSet{Position{1, 1}}));
  CHECK(sets_independent(t, PositionSet{}, PositionSet{Position{1}}));
  CHECK(ind_of_set(t, PositionSet{Position{2}}) == ind_positions(t, Position{2}));
  CHECK_THROWS_AS(sets_independent(t, PositionSet{Position{7}}, PositionSet{}), InvalidPosition);
}

TEST_CASE("separability on the worked example") {
  const Automaton& aut = fixtures::a_ex();
  const Term& t = fixtures::t_ex();
  const auto s = is_separable(aut, t, PositionSet{Position{1, 1}});
  CHECK(s.separable);
  REQUIRE(s.witness.has_value());
  CHECK(s.witness->to_string() == "x3=0 x4=0");

  try {
    is_separable(aut, t, PositionSet{Position{2, 1}});
    FAIL("expected NotEssential");
  } catch (const NotEssential& e) {
    CHECK(std::string(e.what()) == "position 2.1 is not essential");
  }
  try {
    is_separable(aut, t, PositionSet{Position{1}}, PositionSet{Position{1, 1}});
    FAIL("expected NotIndependent");
  } catch (const NotIndependent& e) {
    CHECK(std::string(e.what()) == "sets not independent");
  }
  // D is empty: nothing is independent of the root
  const auto d_empty = is_separable(aut, t, PositionSet{Position::root()});
  CHECK(d_empty.separable);
  CHECK(d_empty.witness->empty());
}

TEST_CASE("separability agrees with substitution by hand") {
  const Automaton& aut = fixtures::a_ex();
  const Term& t = fixtures::t_ex();
  const auto report = essential_positions(aut, t);
  for (const auto& y : report.essential_positions) {
    const auto res = is_separable(aut, t, PositionSet{y});
    const auto z = ind_positions(t, y);
    VarSet d;
    for (const auto& p : z)
      for (auto v : vars(subterm_at(t, p))) d.insert(v);
    for (auto v : vars(subterm_at(t, y))) d.erase(v);
    bool expected = false;
    for (const auto& b : oracle::assignments(d, aut.signature().constants()))
      if (oracle::essential(aut, oracle::bind(t, b), oracle::to_path(y))) {
        expected = true;
        break;
      }
    CHECK_MESSAGE(res.separable == expected, y.to_string());
  }
}

TEST_CASE("enumeration budget is checked before any work") {
  const Automaton& aut = fixtures::a_ex();
  std::string text = "x1";
  for (int i = 2; i <= 25; ++i) text = "f1(" + text + ",x" + std::to_string(i) + ")";
  const Term big = term(text);
  const auto start = std::chrono::steady_clock::now();
  CHECK_THROWS_AS(essential_positions(aut, big), EnumerationBudgetExceeded);
  CHECK_THROWS_AS(is_essential_subtree(aut, big, Position::root()), EnumerationBudgetExceeded);
  CHECK_THROWS_AS(enumerate_assignments(vars(big), aut.signature()), EnumerationBudgetExceeded);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::milliseconds(100));
  try {
    essential_vars(aut, big);
    FAIL("expected EnumerationBudgetExceeded");
  } catch (const EnumerationBudgetExceeded& e) {
    CHECK(e.required() == (std::uint64_t{1} << 25));
    CHECK(e.cap() == kDefaultMaxAssignments);
  }
  // 20 variables fit exactly
  CHECK(enumerate_assignments(vars(subterm_at(big, Position{1, 1, 1, 1, 1})), aut.signature()).size() ==
        (std::size_t{1} << 20));
  CHECK_THROWS_AS(is_essential_subtree(aut, term("f1(x1,x2)"), Position{1}, 3), EnumerationBudgetExceeded);
}

TEST_CASE("indexed search agrees with the double-loop oracle") {
  SuiteParams params;
  params.seed = 77;
  params.max_vars = 3;
  for (std::size_t i = 0; i < 150; ++i) {
    const auto inst = random_instance(params, i);
    const auto r = essential_positions(inst.automaton, inst.term);
    for (const auto& p : positions(inst.term)) {
      const bool fast = r.essential_positions.contains(p);
      CHECK(fast == oracle::essential(inst.automaton, inst.term, oracle::to_path(p)));
      CHECK(fast == is_essential_subtree(inst.automaton, inst.term, p).has_value());
      if (fast) CHECK(check_witness(inst.automaton, inst.term, r.witnesses.at(p)));
    }
    CHECK(r.essential_vars == oracle::essential_vars(inst.automaton, inst.term));
  }
}

TEST_CASE("every leaf of an essential variable is an essential position") {
  SuiteParams params;
  params.seed = 31;
  for (std::size_t i = 0; i < 200; ++i) {
    const auto inst = random_instance(params, i);
    const auto r = essential_positions(inst.automaton, inst.term);
    for (const auto& p : positions(inst.term)) {
      const Term& leaf = subterm_at(inst.term, p);
      if (leaf.is_variable() && r.essential_vars.count(leaf.variable_index()))
        CHECK(r.essential_positions.contains(p));
    }
  }
}

}  // TEST_SUITE
