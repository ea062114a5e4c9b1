#include <gtest/gtest.h>

#include "adaptt/check.hpp"
#include "adaptt/desc_table.hpp"
#include "adaptt/inductive.hpp"
#include "adaptt/normalize.hpp"
#include "adaptt/ruledoc.hpp"
#include "adaptt/subst.hpp"
#include "gen.hpp"

namespace adaptt {
namespace {

const Type A = base("A");
const Type A2 = base("A2");
const Type B = base("B");
const Type B2 = base("B2");
const Adapter f = post("f", A, A2);
const Adapter g = post("g", B, B2);

int con(const IndDesc& d, const std::string& c) { return d.conIndex(c); }

TEST(Descriptions, Shapes) {
  IndDesc l = listDesc();
  ASSERT_EQ(l.cons.size(), 2u);
  EXPECT_EQ(l.cons[0].name, "nil");
  EXPECT_EQ(l.cons[1].name, "cons");
  EXPECT_TRUE(l.indices.empty());
  EXPECT_EQ(l.params.size(), 1u);
  IndDesc w = wDesc();
  ASSERT_EQ(w.cons.size(), 1u);
  ASSERT_EQ(w.cons[0].rec.size(), 1u);
  EXPECT_EQ(w.cons[0].rec[0].arit.size(), 1u);
  IndDesc id = idDesc();
  EXPECT_TRUE(eq(id.indices, Telescope{tyVar(0)}));
}

TEST(Descriptions, BuiltinsPassTheDescriptionCheck) {
  for (const auto& d : {natDesc(), listDesc(), vecDesc(), sumDesc(), wDesc(), idDesc(), treeDesc()})
    EXPECT_NO_THROW(checkDesc(d)) << d.name;
}

TEST(Descriptions, VecConsResultIndexIsSuccessor) {
  IndDesc v = vecDesc();
  const ConDesc& c = v.cons[con(v, "cons")];
  ASSERT_EQ(c.ind.size(), 1u);
  // over (X : Ty+) (x : X) (n : Nat)
  EXPECT_TRUE(eq(c.ind[0], constr("Nat", 1, {}, {var(0)})));
}

TEST(Descriptions, TableRejectsConflictingRedeclaration) {
  DescTable& t = DescTable::global();
  EXPECT_NO_THROW(t.add(listDesc()));
  IndDesc other = listDesc();
  other.cons.pop_back();
  EXPECT_THROW(t.add(other), KernelError);
}

TEST(RecData, ListConsIsTheBarePlaceholder) {
  IndDesc l = listDesc();
  EXPECT_TRUE(eq(elabRecData(l, l.cons[1], 0), tyVar(0)));
}

TEST(RecData, WSupIsAFunctionIntoThePlaceholder) {
  IndDesc w = wDesc();
  EXPECT_TRUE(eq(elabRecData(w, w.cons[0], 0), pi(tyVar(1, {var(0)}), tyVar(0))));
}

TEST(RecData, VecConsIsThePlaceholderAtN) {
  IndDesc v = vecDesc();
  EXPECT_TRUE(eq(elabRecData(v, v.cons[1], 0), tyVar(0, {var(0)})));
}

TEST(ConData, Shapes) {
  IndDesc l = listDesc();
  EXPECT_TRUE(elabConData(l, l.cons[0]).empty());
  EXPECT_TRUE(eq(elabConData(l, l.cons[1]), Telescope{tyVar(1), tyVar(0)}));
  IndDesc w = wDesc();
  EXPECT_TRUE(eq(elabConData(w, w.cons[0]), Telescope{tyVar(2), pi(tyVar(1, {var(0)}), tyVar(0))}));
}

TEST(ConstrType, ListNil) {
  auto [g, t] = constrType("List", 0);
  EXPECT_EQ(g.size(), 1u);
  EXPECT_TRUE(eq(t, ind("List", {SubComp::type(tyVar(0))}, {})));
}

TEST(ConstrType, VecCons) {
  auto [g, t] = constrType("Vec", 1);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_TRUE(eq(g[1].ty, tyVar(0)));
  EXPECT_TRUE(eq(g[2].ty, natTy()));
  EXPECT_TRUE(eq(g[3].ty, ind("Vec", {SubComp::type(tyVar(0))}, {var(0)})));
  EXPECT_TRUE(eq(t, ind("Vec", {SubComp::type(tyVar(0))}, {constr("Nat", 1, {}, {var(1)})})));
}

TEST(ConstrType, IdRefl) {
  auto [g, t] = constrType("Id", 0);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_TRUE(eq(t, ind("Id", {SubComp::type(tyVar(0)), SubComp::term(var(0))}, {var(0)})));
}

TEST(CastConstr, ListNil) {
  Term nil = constr("List", 0, {SubComp::type(A)}, {});
  Term r = nf(cast(nil, indAd("List", {TransComp::adapter(f, A, A2)})));
  EXPECT_TRUE(eq(r, constr("List", 0, {SubComp::type(A2)}, {})));
}

TEST(CastConstr, SumInr) {
  // over (b : B)
  SubComps ps = {SubComp::type(A), SubComp::type(B)};
  Adapter h = indAd("Sum", {TransComp::adapter(f, A, A2), TransComp::adapter(g, B, B2)});
  Term r = nf(cast(constr("Sum", 1, ps, {var(0)}), h));
  EXPECT_TRUE(eq(r, constr("Sum", 1, {SubComp::type(A2), SubComp::type(B2)}, {cast(var(0), g)})));
}

TEST(CastConstr, WSup) {
  // W A (fun x => B) => W A2 (fun x => B2), with the fibre adapter k : B2 => B
  Adapter k = post("k", B2, B);
  SubComps src = {SubComp::type(A), SubComp::type(shift(B, 1))};
  SubComps tgt = {SubComp::type(A2), SubComp::type(shift(B2, 1))};
  Adapter wf = indAd("W", {TransComp::adapter(f, A, A2), TransComp::adapter(shift(k, 1), shift(B, 1), shift(B2, 1))});
  // over (a : A) (s : B -> W A B)
  Type wa = ind("W", src, {});
  Term sup = constr("W", 0, src, {var(1), var(0)});
  Term want = constr("W", 0, tgt, {cast(var(1), f), cast(var(0), piAd(k, shift(wf, 1), shift(wa, 1)))});
  EXPECT_TRUE(conv(cast(sup, wf), want));
  Checker c;
  Ctx gam = Ctx{}.extTm(Dir::Pos, A).extTm(Dir::Pos, pi(B, shift(wa, 1)));
  EXPECT_NO_THROW(c.checkTmAgainst(gam, cast(sup, wf), ind("W", tgt, {})));
}

TEST(CastConstr, MismatchedIndexIsRejected) {
  Term nil = constr("Vec", 0, {SubComp::type(A)}, {});
  ad::Ind h{"Vec", {TransComp::adapter(f, A, A2), TransComp::term(natLit(1))}};
  EXPECT_THROW(castConstr(*as<tm::Constr>(nil), h, defaultNormalizer()), KernelError);
}

TEST(RuleDoc, ListConclusion) {
  RuleDoc r = deriveAdapterRule("List");
  ASSERT_EQ(r.premises.size(), 1u);
  EXPECT_EQ(r.premises[0], "f : A => A'");
  EXPECT_EQ(r.conclusion, "List [f] : List A => List A'");
  EXPECT_EQ(r.computation.size(), 2u);
  EXPECT_NE(r.json().find("\"conclusion\": \"List [f] : List A => List A'\""), std::string::npos);
}

TEST(RuleDoc, IdTransportsTheEndpoints) {
  RuleDoc r = deriveAdapterRule("Id");
  EXPECT_EQ(r.conclusion, "Id [f > x > y] : Id A x y => Id A' (x <| f) (y <| f)");
}

TEST(RuleDoc, WFibreIsContravariant) {
  RuleDoc r = deriveAdapterRule("W");
  ASSERT_EQ(r.premises.size(), 2u);
  EXPECT_EQ(r.premises[1], "(x : A)^- |- g : B' (x <| f) => B x");
}

TEST(RuleDoc, GenericInstanceChecks) {
  for (const char* d : {"List", "Vec", "Sum", "W", "Id", "Nat"}) {
    const IndDesc& desc = descOf(d);
    GenericInstance gi = genericInstance(desc);
    Checker c;
    EXPECT_NO_THROW(c.checkTransComps(gi.gamma, gi.comps, desc.fullCtx())) << d;
  }
}

}  // namespace
}  // namespace adaptt
