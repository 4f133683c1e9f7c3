#include <doctest.h>

#include <array>

#include "fixtures.hpp"
#include "fta/essential.hpp"
#include "fta/generate.hpp"
#include "fta/random.hpp"

using namespace fta;

TEST_SUITE("generate") {

TEST_CASE("splitmix64 reference outputs") {
  std::uint64_t s = 0;
  CHECK(splitmix64(s) == 0xe220a8397b1dcdafULL);
  CHECK(splitmix64(s) == 0x6e789e6aa1b965f4ULL);
  CHECK(splitmix64(s) == 0x06c45d188009454fULL);
}

TEST_CASE("xorshift64* is deterministic and bounded") {
  Xorshift64Star a(99), b(99), c(100);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs = differs || x != c.next();
  }
  CHECK(differs);
  Xorshift64Star r(0);
  std::array<int, 3> counts{};
  for (int i = 0; i < 30000; ++i) {
    const auto v = r.below(3);
    REQUIRE(v < 3);
    ++counts[v];
  }
  for (int n : counts) CHECK(n > 9000);
  CHECK(r.below(1) == 0);
}

TEST_CASE("random terms") {
  GenParams p;
  p.max_depth = 0;
  p.var_pool = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    p.seed = seed;
    const Term t = random_term(p);
    CHECK(t.is_leaf());
    CHECK_FALSE(t.is_variable());
  }
  GenParams q;
  q.max_depth = 2;
  q.var_pool = 2;
  q.seed = 7;
  CHECK(random_term(q) == random_term(q));

  GenParams r;
  r.max_depth = 3;
  r.var_pool = 4;
  bool saw_var = false;
  for (std::uint64_t seed = 1; seed < 200; ++seed) {
    r.seed = seed;
    const Term t = random_term(r);
    CHECK(depth(t) <= 3);
    CHECK(depth(t) >= 1);
    CHECK_NOTHROW(check_term(t, fixtures::a_ex().signature()));
    for (auto v : vars(t)) CHECK((v >= 1 && v <= 4));
    saw_var = saw_var || !vars(t).empty();
  }
  CHECK(saw_var);
}

TEST_CASE("random automata") {
  GenParams p;
  p.state_count = 2;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    p.seed = seed;
    const Automaton a = random_automaton(p);
    const auto src = parse_automaton_source(render_automaton(a));
    CHECK(validate(src.signature, src.definition).empty());
    CHECK(a.rule_count() == 2 + 2 + 4 + 4);
    CHECK(random_automaton(p) == a);
    CHECK(a.signature() == fixtures::a_ex().signature());
  }
  GenParams one;
  one.state_count = 1;
  const Automaton single = random_automaton(one);
  CHECK(single.is_final(0));
  for (const char* text : {"0", "g(x1)", "f1(x1,f2(x2,1))"}) {
    const Term t = parse_term(text, single.signature());
    const auto first = accepts(single, t);
    CHECK(first.has_value());
  }
  GenParams none;
  none.state_count = 0;
  CHECK_THROWS(random_automaton(none));
}

}  // TEST_SUITE
