#include <doctest.h>

#include "fixtures.hpp"
#include "fta/error.hpp"
#include "fta/term.hpp"
#include "oracle.hpp"

using namespace fta;
using fixtures::term;

namespace {

std::set<std::string> strings(const PositionSet& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(p.to_string());
  return out;
}

PositionSet set_of(std::initializer_list<const char*> items) {
  PositionSet s;
  for (const char* i : items) s.insert(Position::parse(i));
  return s;
}

}  // namespace

TEST_SUITE("term") {

TEST_CASE("parse and render the worked example") {
  const Term& t = fixtures::t_ex();
  CHECK(render_term(t) == fixtures::kTexText);
  CHECK(t.size() == 16);
  CHECK(term("0") == Term::node("0"));
  CHECK(render_term(Term::variable(1)) == "x1");
  CHECK(render_term(Term::node("g", {Term::variable(2)})) == "g(x2)");
  CHECK(term("  f1( x1 ,\n 0 ) # trailing comment") == term("f1(x1,0)"));
}

TEST_CASE("parse errors carry byte offsets") {
  const auto& sig = fixtures::a_ex().signature();
  CHECK_THROWS_AS(parse_term("f1(x1)", sig), ArityMismatch);
  CHECK_THROWS_AS(parse_term("h(x1)", sig), UnknownSymbol);
  CHECK_THROWS_AS(parse_term("x1(0)", sig), ArityMismatch);
  CHECK_THROWS_AS(parse_term("f1(x1,", sig), SyntaxError);
  CHECK_THROWS_AS(parse_term("x0", sig), UnknownSymbol);
  try {
    parse_term("f1(x1,h)", sig);
    FAIL("expected UnknownSymbol");
  } catch (const UnknownSymbol& e) {
    CHECK(e.offset() == 6);
  }
  try {
    parse_term("g(x1) g", sig);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 6);
  }
}

TEST_CASE("signature validation") {
  CHECK_THROWS_AS(Signature({{"g", 1}}), SignatureError);
  CHECK_THROWS_AS(Signature({{"0", 0}, {"0", 1}}), SignatureError);
  CHECK_THROWS_AS(Signature({{"x3", 0}}), SignatureError);
  CHECK_THROWS_AS(Signature({{"a b", 0}}), SignatureError);
  const Signature sig({{"a", 0}, {"h", 3}});
  CHECK(sig.max_arity() == 3);
  CHECK(sig.constants() == std::vector<std::string>{"a"});
}

TEST_CASE("positions of the worked example") {
  const std::set<std::string> expected{"ε",       "1",       "2",         "1.1",       "1.1.1",     "1.1.2",
                                       "2.1",     "2.1.1",   "2.1.1.1",   "2.1.1.2",   "2.1.1.2.1", "2.1.1.2.2",
                                       "2.2",     "2.2.1",   "2.2.1.1",   "2.2.1.2"};
  const auto ps = positions(fixtures::t_ex());
  CHECK(ps.size() == 16);
  CHECK(strings(ps) == expected);
  CHECK(strings(positions(Term::variable(1))) == std::set<std::string>{"ε"});
  CHECK(strings(positions(term("g(x1)"))) == std::set<std::string>{"ε", "1"});
}

TEST_CASE("position syntax and order") {
  CHECK(Position::parse("e") == Position::root());
  CHECK(Position::parse("ε") == Position::root());
  CHECK(Position::parse("") == Position::root());
  CHECK(Position::parse("2.1.1") == Position{2, 1, 1});
  CHECK(Position{2, 1}.to_string() == "2.1");
  CHECK(Position::root().to_string() == "ε");
  CHECK_THROWS_AS(Position::parse("1..2"), SyntaxError);
  CHECK_THROWS_AS(Position::parse("0"), SyntaxError);
  CHECK_THROWS_AS(Position::parse("a"), SyntaxError);
  CHECK(Position{2} < Position{1, 1});
  CHECK(Position{1, 2} < Position{2, 1});
  CHECK(Position{1}.is_prefix_of(Position{1, 2}));
  CHECK(Position{1}.is_prefix_of(Position{1}));
  CHECK_FALSE(Position{1}.is_proper_prefix_of(Position{1}));
  CHECK(*Position{2, 1, 1}.relative_to(Position{2}) == Position{1, 1});
  CHECK_FALSE(Position{2, 1}.relative_to(Position{1}).has_value());
  CHECK(PositionSet::parse_list("1.1, 2,e") == set_of({"ε", "2", "1.1"}));
  CHECK(set_of({"1", "ε"}).to_string() == "{ε, 1}");
}

TEST_CASE("subterms, depth, variables") {
  const Term& t = fixtures::t_ex();
  CHECK(subterm_at(t, Position{1}) == term("g(f1(x1,x2))"));
  CHECK(subterm_at(t, Position::root()) == t);
  CHECK(subterm_at(t, Position{2, 1}) == term("g(f1(x3,f1(x4,x3)))"));
  CHECK_THROWS_AS(subterm_at(t, Position{3}), InvalidPosition);
  CHECK_THROWS_AS(subterm_at(t, Position{1, 1, 1, 1}), InvalidPosition);
  CHECK(depth(Term::variable(3)) == 0);
  CHECK(depth(term("g(f1(x1,x2))")) == 2);
  CHECK(depth(t) == 5);
  CHECK(vars(t) == VarSet{1, 2, 3, 4});
  CHECK(vars(term("f1(0,g(1))")).empty());
  CHECK(vars(subterm_at(t, Position{2, 1})) == VarSet{3, 4});
  CHECK(vars_outside(t, Position{2, 1}) == VarSet{1, 2});
  CHECK(vars_outside(t, Position{1}) == VarSet{1, 2, 3, 4});
  CHECK(vars_outside(t, Position::root()).empty());
}

TEST_CASE("substitution and replacement") {
  Substitution s{{1, term("0")}, {2, term("1")}};
  CHECK(substitute(term("f1(x1,x2)"), s) == term("f1(0,1)"));
  CHECK(substitute(fixtures::t_ex(), {}) == fixtures::t_ex());
  CHECK(substitute(term("f1(x1,x1)"), {{1, term("g(x2)")}}) == term("f1(g(x2),g(x2))"));
  // replacements are not revisited
  CHECK(substitute(term("f1(x1,x2)"), {{1, term("x2")}, {2, term("x1")}}) == term("f1(x2,x1)"));
  CHECK(replace_at(term("f1(x1,x2)"), Position{2}, term("g(0)")) == term("f1(x1,g(0))"));
  CHECK(replace_at(term("f1(x1,x2)"), Position::root(), term("1")) == term("1"));
  CHECK_THROWS_AS(replace_at(term("f1(x1,x2)"), Position{3}, term("1")), InvalidPosition);
}

TEST_CASE("independence") {
  const Term& t = fixtures::t_ex();
  CHECK(independent(Position{1}, Position{2}));
  CHECK_FALSE(independent(Position::root(), Position{1, 1}));
  CHECK(independent(Position{2}, Position{1, 1, 1}));
  CHECK(ind_positions(t, Position{2}) == set_of({"1", "1.1", "1.1.1", "1.1.2"}));
  CHECK(ind_positions(t, Position::root()).empty());
  CHECK(ind_positions(t, Position{1, 1, 1}) ==
        set_of({"1.1.2", "2", "2.1", "2.1.1", "2.1.1.1", "2.1.1.2", "2.1.1.2.1", "2.1.1.2.2", "2.2", "2.2.1",
                "2.2.1.1", "2.2.1.2"}));
  CHECK_THROWS_AS(ind_positions(t, Position{4}), InvalidPosition);
}

TEST_CASE("prefix predicates") {
  CHECK(is_prefix_closed(set_of({"ε", "1", "2"})));
  CHECK_FALSE(is_prefix_closed(set_of({"1.1"})));
  CHECK(is_prefix_closed(PositionSet{}));
  const auto all = positions(fixtures::t_ex());
  CHECK(is_prefix_determined(ind_positions(fixtures::t_ex(), Position{2}), all));
  CHECK_FALSE(is_prefix_determined(set_of({"ε"}), set_of({"ε", "1"})));
  CHECK(is_prefix_determined(PositionSet{}, all));
}

TEST_CASE("strong chains") {
  const Term& t = fixtures::t_ex();
  CHECK(is_strong_chain(t, {Position{1, 1, 1}, Position{1, 1}, Position{1}, Position::root()}));
  CHECK_FALSE(is_strong_chain(t, {Position{1, 1, 1}, Position{1}, Position::root()}));
  CHECK(is_strong_chain(t, {Position{2}}));
  CHECK_FALSE(is_strong_chain(t, {Position{1}, Position{1, 1}}));
  CHECK_THROWS_AS(is_strong_chain(t, {Position{9}}), InvalidPosition);
}

TEST_CASE("positions agree with an independent traversal") {
  const Term& t = fixtures::t_ex();
  CHECK(strings(positions(t)) == oracle::position_strings(t));
  for (const auto& p : positions(t))
    for (const auto& q : positions(t))
      CHECK(independent(p, q) == oracle::independent(t, oracle::to_path(p), oracle::to_path(q)));
}

}  // TEST_SUITE
