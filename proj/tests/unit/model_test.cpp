#include <gtest/gtest.h>

#include <set>

#include "adaptt/golden.hpp"
#include "adaptt/model.hpp"
#include "adaptt/normalize.hpp"
#include "adaptt/pretty.hpp"
#include "adaptt/subst.hpp"
#include "adaptt/surface.hpp"
#include "gen.hpp"

namespace adaptt {
namespace {

const Type A = base("A");
const Type B = base("B");
const Adapter f = post("f", A, B);

Binding inclusion() {
  return Binding::fromJson(R"({"types": {"A": ["0", "1"], "B": ["0", "1", "2"]},
                               "adapters": {"f": {"A->B": {"0": "0", "1": "1"}}}})")[0];
}

Term nilA(const Type& x) { return constr("List", 0, {SubComp::type(x)}, {}); }
Term consA(const Type& x, const Term& h, const Term& t) {
  return constr("List", 1, {SubComp::type(x)}, {h, t});
}

TEST(Model, InclusionOfAnElement) {
  Model m(inclusion());
  SemEnv env{{atomVal("1")}, {}};
  EXPECT_EQ(show(m.evalTm(cast(var(0), f), env)), "1");
}

TEST(Model, ListMapOverTheTree) {
  Model m(inclusion());
  // (x : A) (y : A) with x = 0, y = 1
  SemEnv env{{atomVal("0"), atomVal("1")}, {}};
  Term l = consA(A, var(1), consA(A, var(0), nilA(A)));
  Val v = m.evalTm(cast(l, indAd("List", {TransComp::adapter(f, A, B)})), env);
  EXPECT_EQ(show(v), "List.cons(0, List.cons(1, List.nil))");
  Val want = conVal("List", 1, {atomVal("0"), conVal("List", 1, {atomVal("1"), conVal("List", 0, {})})});
  EXPECT_TRUE(m.semEq(v, want, m.evalTy(ind("List", {SubComp::type(B)}, {}), env)));
}

TEST(Model, NilDiffersFromCons) {
  Model m(inclusion());
  SemEnv env{{atomVal("0")}, {}};
  SemTypeP la = m.evalTy(ind("List", {SubComp::type(A)}, {}), env);
  EXPECT_FALSE(m.semEq(m.evalTm(nilA(A), env), m.evalTm(consA(A, var(0), nilA(A)), env), la));
}

TEST(Model, IdentityCastIsInvisible) {
  gen::registerTree();
  gen::Gen r(51);
  Model m(r.binding({2, 2, 1}));
  Ctx g = gen::termCtx();
  for (int i = 0; i < 100; ++i) {
    Type a = r.ty(Ctx{}, {});
    Term t = r.tm(g, a, 2);
    EXPECT_TRUE(m.agreeTm(g, rawCast(t, idAd(a)), t, a)) << showTerm(g, t);
  }
}

TEST(Model, FunctionAdapterComputationAtFiniteSets) {
  // (k : A -> B) (u : C)^- ; both sides of the function-adapter equation
  gen::Gen r(52);
  const Type C = base("C");
  Adapter a = gen::postAd("C", "A"), b = gen::postAd("B", "C");
  Ctx g = Ctx{}.extTm(Dir::Pos, pi(A, B), "k").extTm(Dir::Neg, C, "u");
  Term lhs = app(cast(var(1), piAd(a, shift(b, 1), B)), var(0));
  Term rhs = cast(app(var(1), cast(var(0), a)), b);
  for (const auto& sizes : std::vector<std::vector<int>>{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}) {
    Model m(r.binding(sizes));
    EXPECT_TRUE(m.agreeTm(g, lhs, rhs, C));
  }
}

TEST(Model, FunctorLawsHoldPointwise) {
  gen::Gen r(53);
  for (int k = 0; k < 3; ++k) {
    Model m(r.binding({1 + k, 3 - k, 2}));
    SemEnv env;
    for (int i = 0; i < 60; ++i) {
      Type a = r.ty(Ctx{}, {.depth = 1, .baseDom = true, .vec = false, .tree = false, .ind = false});
      auto [f1, b1] = r.adFrom(Ctx{}, a, 2);
      auto [f2, b2] = r.adFrom(Ctx{}, b1, 2);
      AdFn both = m.evalAd(comp(f2, f1), env), first = m.evalAd(f1, env), second = m.evalAd(f2, env);
      AdFn ident = m.evalAd(idAd(a), env);
      SemTypeP sa = m.evalTy(a, env), sb = m.evalTy(b2, env);
      for (const auto& v : m.enumerate(sa)) {
        EXPECT_TRUE(m.semEq(both(v), second(first(v)), sb));
        EXPECT_TRUE(m.semEq(ident(v), v, sa));
      }
    }
  }
}

TEST(Model, NonEnumerableDomainIsReported) {
  Model m(inclusion());
  Ctx g = Ctx{}.extTm(Dir::Pos, pi(ind("List", {SubComp::type(A)}, {}), A), "p");
  EXPECT_THROW(m.environments(g), NonEnumerableDomain);
  EXPECT_THROW(m.environments(gen::tyVarCtx()), NonEnumerableDomain);
}

// Hypotheses of inductive type are instantiated with generated values; the W
// row needs an empty fibre so that its function hypothesis is enumerable.
TEST(Model, GoldenRowsAtFiniteSets) {
  Elaborator el("<golden>");
  el.elaborate(parse(goldenPrelude(), "<golden>"));
  for (const auto& row : goldenRows()) el.declare(parse(row.source, row.name)[0]);
  auto bindings = Binding::fromJson(R"([
    {"types": {"A": ["a0", "a1"], "A'": ["x0", "x1", "x2"], "B": ["b0", "b1"], "B'": ["y0"]},
     "adapters": {"f": {"A->A'": {"a0": "x2", "a1": "x0"}}, "g": {"B->B'": {"b0": "y0", "b1": "y0"}},
                  "h": {"B'->B": {"y0": "b1"}}}},
    {"types": {"A": ["a0", "a1"], "A'": ["x0"], "B": [], "B'": []},
     "adapters": {"f": {"A->A'": {"a0": "x0", "a1": "x0"}}, "g": {"B->B'": {}}, "h": {"B'->B": {}}}}])");
  gen::Gen r(55);
  r.setCasts(false);
  std::set<std::string> checked;
  for (const auto& b : bindings) {
    Model m(b);
    auto keep = [&](const Ctx& h) {
      try {
        m.environments(h);
        return true;
      } catch (const NonEnumerableDomain&) {
        return false;
      }
    };
    std::size_t row = 0;
    for (const auto& d : el.program().decls) {
      if (d.kind != Decl::Assert) continue;
      const std::string name = goldenRows()[row++].name;
      for (int k = 0; k < 8; ++k) {
        gen::Instance in;
        try {
          in = r.instantiate(d.ctx, keep, 2);
        } catch (const gen::GenFail&) {
          continue;
        }
        Env e = Env::of(in.comps, d.ctx);
        Term x = subst(d.tm, e), y = subst(d.tm2, e);
        Type a = subst(d.ty, e);
        EXPECT_TRUE(conv(x, y)) << name;
        EXPECT_TRUE(m.agreeTm(in.ctx, x, y, a)) << name << " at " << showTerm(in.ctx, x);
        checked.insert(name);
      }
    }
  }
  EXPECT_EQ(checked.size(), goldenRows().size());
}

TEST(Binding, RejectsPartialTables) {
  EXPECT_THROW(Binding::fromJson(R"({"types": {"A": ["a0", "a1"], "B": ["b0"]},
                                     "adapters": {"f": {"A->B": {"a0": "b0"}}}})"),
               ModelError);
  EXPECT_THROW(Binding::fromJson(R"({"types": {"A": ["a0"], "B": ["b0"]},
                                     "adapters": {"f": {"A->B": {"a0": "zz"}}}})"),
               ModelError);
  EXPECT_THROW(Binding::fromJson("[1, 2]"), ModelError);
  EXPECT_THROW(Binding::fromJson("{"), ModelError);
}

TEST(Binding, JsonRoundTrip) {
  gen::Gen r(54);
  Binding b = r.binding({2, 3, 1});
  Binding c = Binding::fromJson(b.json())[0];
  EXPECT_EQ(b.types, c.types);
  EXPECT_EQ(b.adapters, c.adapters);
}

}  // namespace
}  // namespace adaptt
