#include <gtest/gtest.h>

#include "adaptt/check.hpp"
#include "adaptt/inductive.hpp"
#include "adaptt/normalize.hpp"
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

Term nil(const Type& x) { return constr("List", 0, {SubComp::type(x)}, {}); }
Term cons(const Type& x, const Term& h, const Term& t) { return constr("List", 1, {SubComp::type(x)}, {h, t}); }

class NormalizeTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { gen::registerTree(); }
};

TEST_F(NormalizeTest, ComposeIdentityAndAssociativity) {
  const Normalizer& n = defaultNormalizer();
  EXPECT_TRUE(eq(n.composeAd(idAd(B), fAB), fAB));
  EXPECT_TRUE(eq(n.composeAd(fCA, n.composeAd(fBC, fAB)), n.composeAd(n.composeAd(fCA, fBC), fAB)));
  EXPECT_TRUE(eq(n.composeAd(idAd(A), idAd(A)), idAd(A)));
}

TEST_F(NormalizeTest, CastByIdentity) {
  Term t = var(0);
  EXPECT_TRUE(eq(defaultNormalizer().castNf(t, idAd(A)), t));
  EXPECT_TRUE(eq(nf(rawCast(t, idAd(A))), t));
}

TEST_F(NormalizeTest, ListMapOnCons) {
  // over (a : A) (l : List A)
  Term lhs = cast(cons(A, var(1), var(0)), indAd("List", {TransComp::adapter(fAB, A, B)}));
  Term rhs = cons(B, cast(var(1), fAB), cast(var(0), indAd("List", {TransComp::adapter(fAB, A, B)})));
  EXPECT_TRUE(eq(nf(lhs), nf(rhs)));
  EXPECT_TRUE(eq(nf(cast(nil(A), indAd("List", {TransComp::adapter(fAB, A, B)}))), nil(B)));
}

TEST_F(NormalizeTest, IdentityTypeRefl) {
  // over (a : A)
  Term refl = constr("Id", 0, {SubComp::type(A), SubComp::term(var(0))}, {});
  Adapter f = indAd("Id", {TransComp::adapter(fAB, A, B), TransComp::term(var(0)), TransComp::term(var(0))});
  Term want = constr("Id", 0, {SubComp::type(B), SubComp::term(cast(var(0), fAB))}, {});
  EXPECT_TRUE(eq(nf(cast(refl, f)), want));
}

TEST_F(NormalizeTest, Beta) {
  const Normalizer& n = defaultNormalizer();
  EXPECT_TRUE(eq(n.apply(lam(A, var(0)), var(3)), var(3)));
  EXPECT_TRUE(eq(nf(app(lam(A, app(var(1), var(0))), var(4))), app(var(0), var(4))));
}

TEST_F(NormalizeTest, FunctionAdapterOnNeutral) {
  // over (k : A -> B) (u : C); Π[fCA ▷ fBC] : (A -> B) => (C -> C)
  Adapter p = piAd(fCA, shift(fBC, 1), B);
  Term lhs = app(cast(var(1), p), var(0));
  Term rhs = cast(app(var(1), cast(var(0), fCA)), fBC);
  EXPECT_TRUE(eq(nf(lhs), nf(rhs)));
}

TEST_F(NormalizeTest, PairAdapterFirstProjection) {
  // over (p : A * B)
  Adapter s = sigmaAd(fAB, shift(fBC, 1), C);
  EXPECT_TRUE(eq(nf(fst(cast(var(0), s))), cast(fst(var(0)), fAB)));
  EXPECT_TRUE(eq(nf(snd(cast(var(0), s))), cast(snd(var(0)), fBC)));
}

TEST_F(NormalizeTest, ComposedCastsConvert) {
  Term t = var(0);
  EXPECT_TRUE(conv(cast(t, comp(fBC, fAB)), cast(cast(t, fAB), fBC)));
}

TEST_F(NormalizeTest, EtaForFunctions) {
  Term f = var(0);
  EXPECT_TRUE(conv(f, lam(A, app(shift(f, 1), var(0)))));
  Normalizer plain(NormOptions{.fuse = false});
  EXPECT_TRUE(plain.conv(f, lam(A, app(shift(f, 1), var(0)))));
}

TEST_F(NormalizeTest, EtaForPairs) {
  Term p = var(0);
  EXPECT_TRUE(conv(p, pair(fst(p), snd(p), shift(B, 1))));
}

TEST_F(NormalizeTest, DistinctConstructors) {
  EXPECT_FALSE(conv(nil(A), cons(A, var(0), nil(A))));
  EXPECT_FALSE(conv(natLit(1), natLit(2)));
}

TEST_F(NormalizeTest, PostulatesDoNotCancel) {
  Term t = var(0);
  EXPECT_FALSE(conv(cast(cast(t, fAB), gen::postAd("B", "A")), t));
}

// Generated terms: normal forms are stable, typed, and the same with fusion
// or memoisation switched off.
TEST_F(NormalizeTest, NormalFormProperties) {
  gen::Gen r(21);
  Ctx g = gen::termCtx();
  Normalizer plain(NormOptions{.fuse = false});
  Normalizer memo(NormOptions{.fuse = true, .memo = true});
  int n = 0;
  for (int i = 0; i < 400; ++i) {
    Type a = r.ty(Ctx{}, {});
    Term t;
    try {
      t = r.tm(g, a, 3);
    } catch (const gen::GenFail&) {
      continue;
    }
    ++n;
    Term v = nf(t);
    EXPECT_TRUE(eq(nf(v), v)) << showTerm(g, t);
    EXPECT_TRUE(castInvariantHolds(v));
    Checker c;
    EXPECT_NO_THROW(c.checkTmAgainst(g, v, a)) << showTerm(g, v);
    EXPECT_TRUE(plain.conv(t, v)) << showTerm(g, t);
    EXPECT_TRUE(eq(memo.nf(t), v));
  }
  EXPECT_GT(n, 300);
}

TEST_F(NormalizeTest, AdapterNormalFormsKeepEndpoints) {
  gen::Gen r(22);
  Ctx g = gen::tyVarCtx();
  for (int i = 0; i < 300; ++i) {
    Type a = r.ty(g, {.depth = 2, .baseDom = false});
    auto [f, b] = r.adFrom(g, a, 3);
    Adapter v = nf(f);
    EXPECT_TRUE(eq(nf(v), v));
    EXPECT_TRUE(compInvariantHolds(v));
    Checker c;
    auto [s, t] = c.checkAd(g, v);
    EXPECT_TRUE(conv(s, a) && conv(t, b)) << showAdapter(g, f);
  }
}

TEST_F(NormalizeTest, ConversionIsAnEquivalenceOnSamples) {
  gen::Gen r(23);
  Ctx g = gen::termCtx();
  std::vector<Term> ts;
  Type a = base("B");
  for (int i = 0; i < 60; ++i) ts.push_back(r.tm(g, a, 3));
  for (const auto& x : ts) {
    EXPECT_TRUE(conv(x, x));
    for (const auto& y : ts) {
      EXPECT_EQ(conv(x, y), conv(y, x));
      if (!conv(x, y)) continue;
      for (const auto& z : ts) EXPECT_TRUE(!conv(y, z) || conv(x, z));
    }
  }
}

}  // namespace
}  // namespace adaptt
