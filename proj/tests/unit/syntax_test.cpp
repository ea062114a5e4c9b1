#include <gtest/gtest.h>

#include "adaptt/inductive.hpp"
#include "adaptt/normalize.hpp"
#include "adaptt/subst.hpp"
#include "adaptt/syntax.hpp"
#include "gen.hpp"

namespace adaptt {
namespace {

const Type A = base("A");
const Type B = base("B");
const Type C = base("C");

Ctx tyCtx(Dir x, Dir y) { return Ctx{}.extTy(x, Dir::Pos, {}, "X").extTy(y, Dir::Pos, {}, "Y"); }

TEST(Dualize, FlipsEveryEntry) {
  Ctx g = dualize(tyCtx(Dir::Neg, Dir::Pos));
  EXPECT_EQ(g[0].dir, Dir::Pos);
  EXPECT_EQ(g[1].dir, Dir::Neg);
  // dependency telescopes flip along with the entry
  EXPECT_EQ(g[0].telDir, Dir::Neg);
  EXPECT_EQ(g[1].telDir, Dir::Neg);
}

TEST(Dualize, EmptyIsFixed) { EXPECT_TRUE(dualize(Ctx{}).empty()); }

TEST(Dualize, PositiveDirectionIsIdentity) {
  Ctx g = tyCtx(Dir::Neg, Dir::Pos);
  EXPECT_TRUE(eq(dualize(g, Dir::Pos), g));
}

TEST(Dualize, InvolutionOnRandomContexts) {
  gen::Gen r(11);
  for (int i = 0; i < 200; ++i) {
    Ctx g = r.ctx(6);
    EXPECT_TRUE(eq(dualize(dualize(g)), g));
  }
}

TEST(Extend, EmptyTelescope) {
  Ctx g = tyCtx(Dir::Pos, Dir::Neg);
  EXPECT_TRUE(eq(extendCtxByTel(g, Dir::Pos, {}), g));
}

TEST(Extend, OneEntry) {
  Ctx g = Ctx{}.extTy(Dir::Pos, Dir::Pos, {});
  EXPECT_TRUE(eq(extendCtxByTel(g, Dir::Pos, {tyVar(0)}), g.extTm(Dir::Pos, tyVar(0))));
}

TEST(Extend, NegativeTwoEntries) {
  Ctx g = extendCtxByTel(Ctx{}, Dir::Neg, {A, B});
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].dir, Dir::Neg);
  EXPECT_EQ(g[1].dir, Dir::Neg);
  EXPECT_EQ(g.tmCount(), 2);
}

TEST(Vinst, Shapes) {
  EXPECT_TRUE(vinst(0).empty());
  EXPECT_TRUE(eq(vinst(1), Inst{var(0)}));
  EXPECT_TRUE(eq(vinst(2), Inst{var(1), var(0)}));
  EXPECT_TRUE(eq(varInstantiation({A, B}), Inst{var(1), var(0)}));
}

TEST(Constructors, CastDropsIdAndSplitsComp) {
  Term t = var(0);
  EXPECT_TRUE(eq(cast(t, idAd(A)), t));
  Adapter f = gen::postAd("A", "B"), g = gen::postAd("B", "C");
  Term c = cast(t, comp(g, f));
  EXPECT_TRUE(eq(c, cast(cast(t, f), g)));
  EXPECT_TRUE(castInvariantHolds(c));
}

TEST(Constructors, CompIsFlatAndIdFree) {
  Adapter f = gen::postAd("A", "B"), g = gen::postAd("B", "C"), h = gen::postAd("C", "A");
  EXPECT_TRUE(eq(comp(idAd(B), f), f));
  EXPECT_TRUE(eq(comp(f, idAd(A)), f));
  EXPECT_TRUE(eq(comp(h, comp(g, f)), comp(comp(h, g), f)));
  auto ch = as<ad::Comp>(comp(h, comp(g, f)));
  ASSERT_TRUE(ch);
  EXPECT_EQ(ch->chain.size(), 3u);
  EXPECT_TRUE(compInvariantHolds(comp(h, comp(g, f))));
}

TEST(Subst, TypeVariableHead) {
  Ctx x = Ctx{}.extTy(Dir::Pos, Dir::Pos, {});
  EXPECT_TRUE(eq(subst(tyVar(0), Env::of({SubComp::type(A)}, x)), A));
}

TEST(Subst, IdentityIsNeutral) {
  gen::Gen r(12);
  Ctx g = gen::tyVarCtx();
  for (int i = 0; i < 100; ++i) {
    Type a = r.ty(g, {.depth = 3, .baseDom = false});
    EXPECT_TRUE(eq(applySub(a, idSub(g)), a));
  }
}

TEST(Subst, PiGoesUnderTheBinder) {
  Ctx x = Ctx{}.extTy(Dir::Pos, Dir::Pos, {});
  Env e = Env::of({SubComp::type(A)}, x);
  Type p = pi(tyVar(0), sigma(tyVar(0), tyVar(0)));
  EXPECT_TRUE(eq(subst(p, e), pi(A, sigma(A, A))));
  Type dep = pi(natTy(), ind("Vec", {SubComp::type(tyVar(0))}, {var(0)}));
  EXPECT_TRUE(eq(subst(dep, e), pi(natTy(), ind("Vec", {SubComp::type(A)}, {var(0)}))));
}

TEST(Subst, ShiftSkipsBoundVariables) {
  Term t = lam(A, app(var(1), var(0)));
  EXPECT_TRUE(eq(shift(t, 2), lam(A, app(var(3), var(0)))));
}

TEST(Subst, Inst1ReplacesTheInnermostVariable) {
  Term t = app(var(1), var(0));
  EXPECT_TRUE(eq(inst1(t, var(5)), app(var(0), var(5))));
}

TEST(ComposeSub, IdentityLaws) {
  Ctx g = Ctx{}.extTm(Dir::Pos, A).extTm(Dir::Pos, B);
  Ctx d = Ctx{}.extTm(Dir::Pos, B).extTm(Dir::Pos, A);
  Sub s{g, d, {SubComp::term(var(0)), SubComp::term(var(1))}};
  EXPECT_TRUE(eq(composeSub(idSub(d), s).comps, s.comps));
  EXPECT_TRUE(eq(composeSub(s, idSub(g)).comps, s.comps));
}

TEST(ComposeSub, SingleComponentIntoEmptySource) {
  Ctx d = Ctx{}.extTm(Dir::Pos, natTy());
  Sub t{Ctx{}, d, {SubComp::term(natLit(1))}};
  Sub empty{Ctx{}, Ctx{}, {}};
  EXPECT_TRUE(eq(composeSub(t, empty).comps, t.comps));
}

TEST(ComposeSub, Associative) {
  Ctx g = Ctx{}.extTm(Dir::Pos, A).extTm(Dir::Pos, A).extTm(Dir::Pos, A);
  gen::Gen r(13);
  auto randomSub = [&] {
    SubComps cs;
    for (int i = 0; i < 3; ++i) {
      Term t = var(r.pick(3));
      if (r.coin()) t = cast(cast(t, gen::postAd("A", "B")), gen::postAd("B", "A"));
      cs.push_back(SubComp::term(t));
    }
    return Sub{g, g, cs};
  };
  for (int i = 0; i < 50; ++i) {
    Sub a = randomSub(), b = randomSub(), c = randomSub();
    EXPECT_TRUE(eq(composeSub(composeSub(a, b), c).comps, composeSub(a, composeSub(b, c)).comps));
  }
}

TEST(WeakenSub, SkipsTheExtension) {
  Ctx g = Ctx{}.extTm(Dir::Pos, A);
  Ctx ext = g.extTm(Dir::Pos, B);
  Sub w = weakenSub(g, ext);
  EXPECT_TRUE(eq(applySub(var(0), w), var(1)));
}

TEST(PiTel, Unfolds) {
  EXPECT_TRUE(eq(piTel({}, C), C));
  EXPECT_TRUE(eq(piTel({A}, B), pi(A, B)));
  EXPECT_TRUE(eq(piTel({A, B}, C), pi(A, pi(B, C))));
}

TEST(Eq, IgnoresNames) {
  Ctx a = Ctx{}.extTm(Dir::Pos, A, "x");
  Ctx b = Ctx{}.extTm(Dir::Pos, A, "y");
  EXPECT_TRUE(eq(a, b));
  EXPECT_FALSE(eq(a, Ctx{}.extTm(Dir::Neg, A, "x")));
}

}  // namespace
}  // namespace adaptt
