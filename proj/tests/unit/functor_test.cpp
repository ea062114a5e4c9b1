#include <gtest/gtest.h>

#include "adaptt/check.hpp"
#include "adaptt/functor.hpp"
#include "adaptt/inductive.hpp"
#include "adaptt/pretty.hpp"
#include "adaptt/subst.hpp"
#include "gen.hpp"

namespace adaptt {
namespace {

const Type A = base("A");
const Type B = base("B");
const Type C = base("C");
const Adapter fAB = gen::postAd("A", "B");
const Adapter fBC = gen::postAd("B", "C");
const Adapter fCA = gen::postAd("C", "A");

Ctx oneTy() { return Ctx{}.extTy(Dir::Pos, Dir::Pos, {}, "X"); }

class FunctorTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { gen::registerTree(); }
};

TEST_F(FunctorTest, TypeVariableHead) {
  TransData m = transData(oneTy(), {TransComp::adapter(fAB, A, B)});
  EXPECT_TRUE(eq(nf(pushTransTy(tyVar(0), m)), fAB));
  EXPECT_TRUE(eq(m.sigma[0].ty, A));
  EXPECT_TRUE(eq(m.tau[0].ty, B));
}

TEST_F(FunctorTest, ListOfTypeVariable) {
  TransData m = transData(oneTy(), {TransComp::adapter(fAB, A, B)});
  Type l = ind("List", {SubComp::type(tyVar(0))}, {});
  EXPECT_TRUE(conv(pushTransTy(l, m), indAd("List", {TransComp::adapter(fAB, A, B)})));
}

TEST_F(FunctorTest, FunctionTypeIsContravariantInTheDomain) {
  // (X : Ty-) (Y : Ty+), X -> Y; the X component goes from the target end back.
  Ctx d = Ctx{}.extTy(Dir::Neg, Dir::Pos, {}, "X").extTy(Dir::Pos, Dir::Pos, {}, "Y");
  TransData m = transData(d, {TransComp::adapter(fCA, A, C), TransComp::adapter(fBC, B, C)});
  Adapter want = piAd(fCA, shift(fBC, 1), B);
  EXPECT_TRUE(conv(pushTransTy(pi(tyVar(1), tyVar(0)), m), want));
  Checker c;
  auto [s, t] = c.checkAd(Ctx{}, pushTransTy(pi(tyVar(1), tyVar(0)), m));
  EXPECT_TRUE(conv(s, pi(A, B)));
  EXPECT_TRUE(conv(t, pi(C, C)));
}

TEST_F(FunctorTest, TelescopeAction) {
  TransData m = transData(oneTy(), {TransComp::adapter(fAB, A, B)});
  EXPECT_TRUE(pushTransTel({}, m).empty());
  TelAdapter one = pushTransTel({tyVar(0)}, m);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(conv(one[0], fAB));
  TelAdapter two = pushTransTel({tyVar(0), tyVar(0)}, m);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_TRUE(conv(two[1], shift(fAB, 1)));
}

TEST_F(FunctorTest, Whiskering) {
  Ctx d = gen::tyVarCtx();
  gen::Gen r(31);
  TransData m = r.trans(Ctx{}, d);
  EXPECT_TRUE(conv(leftWhisker(idComps(d), d, m), m.comps));
  EXPECT_TRUE(conv(rightWhisker(m, Env{}), m.comps));
  Type a = ind("Sum", {SubComp::type(tyVar(1)), SubComp::type(pi(tyVar(0), tyVar(1)))}, {});
  TransComps w = leftWhisker({SubComp::type(a)}, oneTy(), m);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_TRUE(conv(w[0].ad, pushTransTy(a, m)));
}

TEST_F(FunctorTest, VerticalComposition) {
  TransData f = transData(oneTy(), {TransComp::adapter(fAB, A, B)});
  TransData g = transData(oneTy(), {TransComp::adapter(fBC, B, C)});
  TransComps gf = vcomp(g, f);
  ASSERT_EQ(gf.size(), 1u);
  EXPECT_TRUE(conv(gf[0].ad, comp(fBC, fAB)));
  EXPECT_TRUE(conv(vcomp(idTrans(oneTy(), f.tau), f), f.comps));
  EXPECT_TRUE(conv(vcomp(f, idTrans(oneTy(), f.sigma)), f.comps));
}

TEST_F(FunctorTest, InterchangeOnTwoEntries) {
  Ctx d = gen::tyVarCtx();
  gen::Gen r(32);
  for (int i = 0; i < 40; ++i) {
    TransData mu = r.trans(Ctx{}, d);
    TransData nu = r.transAfter(Ctx{}, mu);
    Type a = r.ty(d, {.depth = 2, .baseDom = false});
    Type b = r.ty(d, {.depth = 2, .baseDom = false});
    Ctx xi = Ctx{}.extTy(Dir::Pos, Dir::Pos, {}).extTy(Dir::Pos, Dir::Pos, {});
    SubComps rho = {SubComp::type(a), SubComp::type(b)};
    TransData lm = transData(xi, leftWhisker(rho, xi, mu));
    TransData ln = transData(xi, leftWhisker(rho, xi, nu));
    TransData both = transData(d, vcomp(nu, mu));
    EXPECT_TRUE(conv(leftWhisker(rho, xi, both), vcomp(ln, lm)));
  }
}

TEST_F(FunctorTest, IdentityAndCompositionLaws) {
  Ctx d = gen::tyVarCtx();
  gen::Gen r(33);
  for (int i = 0; i < 150; ++i) {
    Type a = r.ty(d, {.depth = 3, .baseDom = false});
    TransData mu = r.trans(Ctx{}, d);
    TransData nu = r.transAfter(Ctx{}, mu);
    Type as = applySub(a, Sub{Ctx{}, d, mu.sigma});
    EXPECT_TRUE(conv(pushTransTy(a, idTrans(d, mu.sigma)), idAd(as))) << showType(d, a);
    Adapter lhs = pushTransTy(a, transData(d, vcomp(nu, mu)));
    Adapter rhs = comp(pushTransTy(a, nu), pushTransTy(a, mu));
    EXPECT_TRUE(conv(lhs, rhs)) << showType(d, a);
  }
}

TEST_F(FunctorTest, NaturalityExamples) {
  // t = x over (X : Ty+) (x : X)
  Ctx d = oneTy().extTm(Dir::Pos, tyVar(0), "x");
  TransData m = transData(d, {TransComp::adapter(fAB, A, B), TransComp::term(var(0))});
  EXPECT_TRUE(checkNaturalityTm(var(0), tyVar(0), m));
  EXPECT_TRUE(conv(m.tau[1].tm, cast(var(0), fAB)));
  EXPECT_TRUE(checkNaturalityTm(natLit(2), natTy(), m));
  EXPECT_TRUE(checkNaturalityAd(idAd(tyVar(0)), m));
}

TEST_F(FunctorTest, NaturalityOfGeneratedTerms) {
  gen::Gen r(34);
  Ctx d = gen::natCtx();
  Ctx src = gen::termCtx();
  int n = 0;
  for (int i = 0; i < 200 && n < 100; ++i) {
    try {
      Type a = r.ty(d, {.depth = 2, .baseDom = true, .vec = true, .tree = true});
      Term t = r.tm(d, a, 2);
      TransData m = r.trans(src, d);
      EXPECT_TRUE(checkNaturalityTm(t, a, m)) << showTerm(d, t);
      auto [f, b] = r.adFrom(d, a, 2);
      EXPECT_TRUE(checkNaturalityAd(f, m)) << showAdapter(d, f);
      ++n;
    } catch (const gen::GenFail&) {
    }
  }
  EXPECT_GE(n, 50);
}

TEST_F(FunctorTest, DualTransformationIsAnInvolution) {
  gen::Gen r(35);
  for (int i = 0; i < 100; ++i) {
    TransData m = r.trans(gen::termCtx(), gen::natCtx());
    TransData dd = dual(dual(m));
    EXPECT_TRUE(eq(dd.comps, m.comps));
    EXPECT_TRUE(eq(dd.delta, m.delta));
  }
}

TEST_F(FunctorTest, EndpointsOfAnnotatedAdapters) {
  Adapter p = piAd(fCA, shift(fBC, 1), B);
  EXPECT_TRUE(eq(adSrc(p), pi(A, B)));
  EXPECT_TRUE(eq(adTgt(p), pi(C, C)));
  EXPECT_TRUE(eq(adSrc(fAB), A));
  EXPECT_TRUE(eq(adTgt(comp(fBC, fAB)), C));
}

}  // namespace
}  // namespace adaptt
