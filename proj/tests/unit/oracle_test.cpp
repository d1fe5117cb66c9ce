#include <gtest/gtest.h>

#include <set>

#include "support/reference.hpp"
#include "vsc/oracle.hpp"

using namespace vsc;

TEST(Enumerate, SmallSizes) {
  EXPECT_TRUE(enumerate_terms(0, 1, true).empty());
  auto one = enumerate_terms(1, 0, true);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(alpha_eq(one[0], parse_term("\\x. x")));
}

TEST(Enumerate, MatchesHandListUpToThree) {
  auto got = enumerate_terms(3, 0, true, false);
  std::set<std::string> keys;
  for (const auto& t : got) keys.insert(canonical_key(t));
  std::set<std::string> want;
  for (const auto& s : vsc_test::hand_listed_closed_terms_up_to_3()) want.insert(canonical_key(parse_term(s)));
  EXPECT_EQ(keys, want);
  EXPECT_EQ(got.size(), want.size());
}

TEST(Enumerate, NoDuplicatesAndWithinMeasure) {
  auto got = enumerate_terms(4, 2, false, true);
  std::set<std::string> keys;
  for (const auto& t : got) {
    EXPECT_TRUE(keys.insert(canonical_key(t)).second) << print_term(t);
    EXPECT_LE(measure(t, SizeKind::Strong) + es_count(t), 4u);
    for (const auto& x : free_vars(t)) EXPECT_TRUE(x == "a" || x == "b") << print_term(t);
  }
  bool has_es = false;
  for (const auto& t : got) has_es = has_es || es_count(t) > 0;
  EXPECT_TRUE(has_es);
}

TEST(Graph, NormalFormIsSingleNode) {
  for (Strategy s : {Strategy::Open, Strategy::External, Strategy::Full}) {
    ReductionGraph g = reduction_graph(parse_term("\\y. y"), s);
    EXPECT_EQ(g.nodes.size(), 1u);
    EXPECT_TRUE(g.edges.empty());
    EXPECT_TRUE(check_diamond(g).ok);
    EXPECT_TRUE(check_commutation(g, StepKind::Mult, StepKind::Expo).ok);
    DescentVerdict d = check_random_descent(g);
    EXPECT_TRUE(d.ok && d.normalizing);
  }
}

TEST(Graph, DeltaLExternal) {
  ReductionGraph g = reduction_graph(parse_term("(\\x. x x) (\\y. y)"), Strategy::External);
  EXPECT_FALSE(g.truncated);
  EXPECT_TRUE(check_diamond(g).ok);
  EXPECT_TRUE(check_commutation(g, StepKind::Expo, StepKind::Mult).ok);
  DescentVerdict d = check_random_descent(g);
  ASSERT_TRUE(d.ok && d.counts.has_value());
  EXPECT_EQ(d.counts->m, 2u);
  EXPECT_EQ(d.counts->e, 2u);
}

TEST(Graph, FullReductionIsNotDiamond) {
  ReductionGraph g = reduction_graph(parse_term("(x x)[x <- \\y. (\\z. z) (\\z. z)]"), Strategy::Full);
  EXPECT_FALSE(g.truncated);
  Verdict v = check_diamond(g);
  EXPECT_FALSE(v.ok);
  EXPECT_FALSE(v.message.empty());
}

TEST(Graph, ExternalRelaxedDeterminism) {
  TermPtr t = parse_term("(x (\\y. (\\z. z) (\\z. z)))[x <- x ((\\z. z) (\\z. z))]");
  ReductionGraph g = reduction_graph(t, Strategy::External);
  std::size_t mults = 0;
  for (std::size_t e : g.out[0]) mults += g.edges[e].kind == StepKind::Mult;
  EXPECT_EQ(mults, 2u);
  EXPECT_TRUE(check_diamond(g).ok);
}

TEST(Graph, EdgesReproducible) {
  ReductionGraph g = reduction_graph(parse_term("(\\x. x x) ((\\y. y) (\\z. z))"), Strategy::External);
  for (const auto& e : g.edges)
    EXPECT_TRUE(alpha_eq(step_at(g.nodes[e.from], e.path, e.kind), g.nodes[e.to]));
}

TEST(Graph, TruncationAtCap) {
  ReductionGraph g = reduction_graph(parse_term("(\\x. x x x) (\\x. x x x)"), Strategy::External, 20);
  EXPECT_TRUE(g.truncated);
  EXPECT_LE(g.nodes.size(), 20u);
  EXPECT_THROW(check_diamond(g), std::invalid_argument);
  EXPECT_THROW(check_random_descent(g), std::invalid_argument);
  std::string dump = dump_graph(reduction_graph(parse_term("(\\x. x) (\\y. y)"), Strategy::Open));
  EXPECT_NE(dump.find("m"), std::string::npos);
}

TEST(Graph, DivergentLoop) {
  ReductionGraph g = reduction_graph(parse_term("(\\x. x x) (\\x. x x)"), Strategy::External);
  EXPECT_FALSE(g.truncated);
  DescentVerdict d = check_random_descent(g);
  EXPECT_TRUE(d.ok);
  EXPECT_FALSE(d.normalizing);
}

TEST(RandomTerms, Properties) {
  RandomTermParams p;
  EXPECT_TRUE(alpha_eq(random_term(7, p), random_term(7, p)));
  for (std::uint64_t seed = 0; seed < 200; ++seed) EXPECT_TRUE(free_vars(random_term(seed, p)).empty());
  RandomTermParams shallow;
  shallow.max_depth = 1;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    TermPtr t = random_term(seed, shallow);
    EXPECT_TRUE(t->is_var() || (t->is_abs() && t->left->is_var())) << print_term(t);
  }
  RandomTermParams open;
  open.closed = false;
  bool any_free = false;
  for (std::uint64_t seed = 0; seed < 50; ++seed) any_free = any_free || !free_vars(random_term(seed, open)).empty();
  EXPECT_TRUE(any_free);
}
