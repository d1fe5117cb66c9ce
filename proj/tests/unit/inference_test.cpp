#include <gtest/gtest.h>

#include "support/reference.hpp"
#include "vsc/inference.hpp"

using namespace vsc;
using vsc_test::hand_built_delta_l;
using vsc_test::same_derivation;

namespace {

const char* kDelta = "\\x. x x";
const char* kDeltaL = "(\\x. x x) (\\y. y)";
const char* kOmega = "(\\x. x x) (\\x. x x)";

LinearType X2() { return parse_linear("[X] -o [X]"); }
LinearType X2sq() { return LinearType::arrow(singleton(X2()), singleton(X2())); }

// \y. y at [[X2] -o [X2], X2].
DerivPtr psi_identity() { return hand_built_delta_l()->premises[1]; }

}  // namespace

TEST(TypeNormalForm, Identity) {
  DerivPtr d = type_normal_form(parse_term("\\y. y"), TypingMode::StrongUnitary);
  EXPECT_TRUE(check_derivation(d).ok);
  EXPECT_TRUE(d->concl.ctx.empty());
  EXPECT_EQ(d->concl.multi, parse_multi("[[X] -o [X]]"));
  EXPECT_EQ(sizes(d).mult, 1u);
}

TEST(TypeNormalForm, Delta) {
  DerivPtr d = type_normal_form(parse_term(kDelta), TypingMode::StrongUnitary);
  EXPECT_EQ(d->concl.multi, parse_multi("[[[X] -o [X], X] -o [X]]"));
  EXPECT_EQ(sizes(d).mult, 2u);
  EXPECT_TRUE(same_derivation(d, vsc_test::hand_built_delta()));
}

TEST(TypeNormalForm, OpenTightAbstraction) {
  DerivPtr d = type_normal_form(parse_term("\\x. (\\y. y y) (\\y. y y)"), TypingMode::OpenTight);
  EXPECT_TRUE(d->concl.multi.empty());
  EXPECT_EQ(sizes(d).mult, 0u);
  EXPECT_TRUE(classify_derivation(d).tight);
}

TEST(TypeNormalForm, InertTargets) {
  DerivPtr d = type_normal_form(parse_term("x (\\y. y)"), TypingMode::StrongUnitary);
  EXPECT_EQ(d->concl.multi, parse_multi("[X]"));
  EXPECT_TRUE(classify_derivation(d).unitary_shrinking);
  DerivPtr e = type_normal_form(parse_term("x y"), TypingMode::StrongUnitary, parse_multi("[X, X]"));
  EXPECT_EQ(e->concl.multi, parse_multi("[X, X]"));
  EXPECT_TRUE(check_derivation(e).ok);
  DerivPtr o = type_normal_form(parse_term("x y"), TypingMode::OpenTight);
  EXPECT_TRUE(classify_derivation(o).tight);
  EXPECT_THROW(type_normal_form(parse_term("\\x. x"), TypingMode::StrongUnitary, parse_multi("[X]")),
               std::invalid_argument);
  EXPECT_THROW(type_normal_form(parse_term(kDeltaL), TypingMode::StrongUnitary), std::invalid_argument);
}

TEST(Split, DeltaIdentityArgumentParts) {
  auto [small, big] = split_value(psi_identity(), singleton(X2()), singleton(X2sq()));
  EXPECT_EQ(small->concl.multi, singleton(X2()));
  EXPECT_EQ(big->concl.multi, singleton(X2sq()));
  EXPECT_TRUE(same_derivation(small, vsc_test::hand_built_l()));
  EXPECT_EQ(sizes(small).mult + sizes(big).mult, sizes(psi_identity()).mult);
}

TEST(Split, DegenerateAndInverse) {
  DerivPtr d = psi_identity();
  auto [all, none] = split_value(d, d->concl.multi, MultiType());
  EXPECT_TRUE(same_derivation(all, d));
  EXPECT_TRUE(none->premises.empty());
  EXPECT_TRUE(none->concl.multi.empty());
  auto [a, b] = split_value(d, singleton(X2()), singleton(X2sq()));
  DerivPtr m = merge_values(a, b);
  EXPECT_TRUE(same_derivation(m, d));
  EXPECT_EQ(sizes(m).mult, 2u);
  EXPECT_TRUE(same_derivation(merge_values(d, none), d));
  auto parts = split_value(m, {singleton(X2()), singleton(X2sq())});
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_TRUE(same_derivation(parts[0], a));
  EXPECT_TRUE(same_derivation(parts[1], b));
  EXPECT_THROW(split_value(d, singleton(X2()), singleton(X2())), std::invalid_argument);
}

TEST(Substitution, BodyOfDeltaWithIdentity) {
  DerivPtr body = hand_built_delta_l()->premises[0]->premises[0]->premises[0];
  ASSERT_EQ(body->rule, Rule::App);
  DerivPtr r = subst_derivation(body, "x", psi_identity());
  EXPECT_TRUE(check_derivation(r).ok);
  EXPECT_TRUE(alpha_eq(r->concl.subject, parse_term("(\\y. y) (\\y. y)")));
  EXPECT_EQ(r->concl.multi, singleton(X2()));
  EXPECT_EQ(sizes(r).mult, 3u);
  auto [dt, dv] = anti_subst_derivation(r, body->concl.subject, "x", parse_term("\\y. y"));
  EXPECT_EQ(sizes(dt).mult, 1u);
  EXPECT_EQ(sizes(dv).mult, 2u);
  EXPECT_EQ(dt->concl.ctx.at("x"), dv->concl.multi);
}

TEST(Substitution, DegenerateCases) {
  DerivPtr dz = make_many(var("z"), {make_ax("z", LinearType::ground())});
  DerivPtr none = make_many(parse_term("\\y. y"), {});
  DerivPtr same = subst_derivation(dz, "x", none);
  EXPECT_TRUE(same_derivation(same, dz));
  DerivPtr dx = make_many(var("x"), {make_ax("x", X2())});
  EXPECT_TRUE(same_derivation(subst_derivation(dx, "x", vsc_test::hand_built_l()), vsc_test::hand_built_l()));
  auto [t1, v1] = anti_subst_derivation(dz, var("z"), "x", parse_term("\\y. y"));
  EXPECT_TRUE(same_derivation(t1, dz));
  EXPECT_TRUE(v1->concl.multi.empty());
  auto [t2, v2] = anti_subst_derivation(vsc_test::hand_built_l(), var("x"), "x", parse_term("\\y. y"));
  EXPECT_EQ(t2->concl.ctx.at("x"), parse_multi("[[X] -o [X]]"));
  EXPECT_TRUE(same_derivation(v2, vsc_test::hand_built_l()));
}

TEST(Reduce, DeltaIdentitySteps) {
  DerivPtr d = hand_built_delta_l();
  TermPtr t0 = parse_term(kDeltaL);
  DerivPtr d1 = reduce_derivation(d, {}, StepKind::Mult);
  EXPECT_TRUE(check_derivation(d1).ok);
  EXPECT_EQ(sizes(d1).mult, 3u);
  EXPECT_TRUE(alpha_eq(d1->concl.subject, parse_term("(x x)[x <- \\y. y]")));
  DerivPtr d2 = reduce_derivation(d1, {}, StepKind::Expo);
  EXPECT_EQ(sizes(d2).mult, 3u);
  EXPECT_LT(sizes(d2).general, sizes(d1).general);
  EXPECT_TRUE(alpha_eq(d2->concl.subject, parse_term("(\\y. y) (\\y. y)")));
  EXPECT_EQ(d2->concl.multi, d->concl.multi);
  DerivPtr b1 = expand_derivation(d2, d1->concl.subject, {}, StepKind::Expo);
  DerivPtr b0 = expand_derivation(b1, t0, {}, StepKind::Mult);
  EXPECT_TRUE(check_derivation(b0).ok);
  EXPECT_EQ(sizes(b0).mult, 5u);
  EXPECT_EQ(b0->concl.multi, d->concl.multi);
}

TEST(Reduce, ErasedUnderEmptyMany) {
  TermPtr t = parse_term("\\z. (\\y. y) (\\y. y)");
  DerivPtr d = make_many(t, {});
  DerivPtr r = reduce_derivation(d, {Step::Body}, StepKind::Mult);
  EXPECT_EQ(sizes(r).mult, 0u);
  EXPECT_TRUE(alpha_eq(r->concl.subject, step_at(t, {Step::Body}, StepKind::Mult)));
  DerivPtr e = expand_derivation(r, t, {Step::Body}, StepKind::Mult);
  EXPECT_TRUE(alpha_eq(e->concl.subject, t));
  EXPECT_TRUE(e->premises.empty());
}

TEST(Reduce, MultiplicityScalesMultChange) {
  // After the first step the argument is typed by a many rule with two premises.
  PipelineResult r = derive(parse_term("(\\x. x x) (\\z. (\\y. y) z)"), TypingMode::StrongUnitary);
  ASSERT_TRUE(r.derivation.has_value());
  DerivPtr d1 = reduce_derivation(*r.derivation, {}, StepKind::Mult);
  ASSERT_TRUE(alpha_eq(d1->concl.subject, parse_term("(x x)[x <- \\z. (\\y. y) z]")));
  Path inner = {Step::Arg, Step::Body};
  std::size_t n = multiplicity_at(d1, inner);
  EXPECT_EQ(n, 2u);
  DerivPtr d2 = reduce_derivation(d1, inner, StepKind::Mult);
  EXPECT_TRUE(check_derivation(d2).ok);
  EXPECT_EQ(sizes(d1).mult - sizes(d2).mult, 2 * n);
  EXPECT_EQ(d2->concl.multi, d1->concl.multi);
  DerivPtr back = expand_derivation(d2, d1->concl.subject, inner, StepKind::Mult);
  EXPECT_EQ(sizes(back).mult, sizes(d1).mult);
}

TEST(Derive, Examples) {
  PipelineResult dl = derive(parse_term(kDeltaL), TypingMode::StrongUnitary);
  ASSERT_TRUE(dl.derivation.has_value());
  EXPECT_EQ(dl.mult, 5u);
  EXPECT_EQ(dl.lhs, 5u);
  EXPECT_TRUE(dl.identity_holds);
  EXPECT_TRUE(same_derivation(*dl.derivation, hand_built_delta_l()));
  PipelineResult l = derive(parse_term("\\y. y"), TypingMode::StrongUnitary);
  EXPECT_EQ(l.mult, 1u);
  EXPECT_TRUE(l.identity_holds);
  PipelineResult w = derive(parse_term(kOmega), TypingMode::StrongUnitary, 200);
  EXPECT_FALSE(w.derivation.has_value());
  EXPECT_EQ(w.trace.status, Status::FuelExhausted);
}

TEST(Derive, OpenIdentityUsesOpenSize) {
  PipelineResult r = derive(parse_term("(\\x. \\z. x x) (\\y. y)"), TypingMode::OpenTight);
  ASSERT_TRUE(r.derivation.has_value());
  EXPECT_TRUE(classify_derivation(*r.derivation).tight);
  EXPECT_TRUE(r.identity_holds);
  EXPECT_EQ(r.mult, 2 * r.trace.m_steps);
  EXPECT_FALSE(r.strong_size_identity_holds);
}

TEST(Renaming, FreeVariable) {
  DerivPtr d = make_many(var("x"), {make_ax("x", LinearType::ground())});
  DerivPtr r = rename_free(d, "x", "w");
  EXPECT_TRUE(alpha_eq(r->concl.subject, var("w")));
  EXPECT_TRUE(r->concl.ctx.contains("w"));
  EXPECT_TRUE(all_names(hand_built_delta_l()).count("x"));
}
