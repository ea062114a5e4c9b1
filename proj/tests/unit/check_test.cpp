#include <gtest/gtest.h>

#include "adaptt/check.hpp"
#include "adaptt/inductive.hpp"
#include "adaptt/normalize.hpp"
#include "adaptt/subst.hpp"
#include "gen.hpp"

namespace adaptt {
namespace {

const Type A = base("A");
const Type B = base("B");
const Adapter fAB = gen::postAd("A", "B");

std::string codeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const CheckError& e) {
    return e.diag.code;
  } catch (const KernelError& e) {
    return e.code;
  }
  return "ok";
}

Ctx posX() { return Ctx{}.extTy(Dir::Pos, Dir::Pos, {}, "X"); }
Ctx negX() { return Ctx{}.extTy(Dir::Neg, Dir::Pos, {}, "X"); }

TEST(Checker, CovariantVariable) {
  Ctx g = posX().extTm(Dir::Pos, tyVar(0), "x");
  EXPECT_TRUE(eq(Checker().checkTm(g, var(0)), tyVar(0)));
}

TEST(Checker, ContravariantVariableIsNotDirectlyAccessible) {
  Ctx g = negX().extTm(Dir::Neg, tyVar(0), "x");
  EXPECT_EQ(codeOf([&] { Checker().checkTm(g, var(0)); }), "VarianceViolation");
  EXPECT_EQ(codeOf([&] { Checker().checkTm(dualize(g), var(0)); }), "ok");
}

TEST(Checker, IdentityFunctionIsNotTypable) {
  EXPECT_EQ(codeOf([&] { Checker().checkTm(Ctx{}, lam(A, var(0))); }), "VarianceViolation");
}

TEST(Checker, EtaExpandedVariableIsTypable) {
  Ctx g = Ctx{}.extTm(Dir::Pos, pi(A, B), "k");
  EXPECT_TRUE(conv(Checker().checkTm(g, lam(A, app(var(1), var(0)))), pi(A, B)));
}

TEST(Checker, ArgumentsAreCheckedInTheDualContext) {
  Ctx pos = Ctx{}.extTm(Dir::Pos, A, "a").extTm(Dir::Pos, pi(A, B), "k");
  EXPECT_EQ(codeOf([&] { Checker().checkTm(pos, app(var(0), var(1))); }), "VarianceViolation");
  Ctx neg = Ctx{}.extTm(Dir::Neg, A, "a").extTm(Dir::Pos, pi(A, B), "k");
  EXPECT_TRUE(eq(Checker().checkTm(neg, app(var(0), var(1))), B));
}

TEST(Checker, ApplyingANonFunction) {
  Ctx g = Ctx{}.extTm(Dir::Pos, A, "a").extTm(Dir::Neg, A, "b");
  EXPECT_EQ(codeOf([&] { Checker().checkTm(g, app(var(1), var(0))); }), "ClassifierMismatch");
}

TEST(Checker, CastSourceMustMatch) {
  Ctx g = Ctx{}.extTm(Dir::Pos, B, "b");
  EXPECT_EQ(codeOf([&] { Checker().checkTm(g, cast(var(0), fAB)); }), "ClassifierMismatch");
  Ctx h = Ctx{}.extTm(Dir::Pos, A, "a");
  EXPECT_TRUE(eq(Checker().checkTm(h, cast(var(0), fAB)), B));
}

TEST(Checker, FunctionDomainIsContravariant) {
  EXPECT_EQ(codeOf([&] { Checker().checkTy(posX(), pi(tyVar(0), A)); }), "VarianceViolation");
  EXPECT_EQ(codeOf([&] { Checker().checkTy(negX(), pi(tyVar(0), A)); }), "ok");
  EXPECT_EQ(codeOf([&] { Checker().checkTy(negX(), pi(A, tyVar(0))); }), "VarianceViolation");
}

TEST(Checker, ParameterDirectionsOfDatatypes) {
  gen::registerTree();
  Ctx g = posX();
  Type bad = ind("Tree", {SubComp::type(tyVar(0)), SubComp::type(tyVar(0))}, {});
  EXPECT_EQ(codeOf([&] { Checker().checkTy(g, bad); }), "VarianceViolation");
  Type good = ind("Tree", {SubComp::type(tyVar(0)), SubComp::type(A)}, {});
  EXPECT_EQ(codeOf([&] { Checker().checkTy(g, good); }), "ok");
}

TEST(Checker, FunctionAdapterEndpoints) {
  Adapter p = piAd(gen::postAd("B", "A"), shift(gen::postAd("B", "C"), 1), B);
  auto [s, t] = Checker().checkAd(Ctx{}, p);
  EXPECT_TRUE(eq(s, pi(A, B)));
  EXPECT_TRUE(eq(t, pi(B, base("C"))));
}

TEST(Checker, CompositionMustLineUp) {
  Adapter bad = compChain({fAB, fAB});
  EXPECT_EQ(codeOf([&] { Checker().checkAd(Ctx{}, bad); }), "ClassifierMismatch");
}

TEST(Checker, VecDescription) { EXPECT_NO_THROW(checkDesc(vecDesc())); }

TEST(Checker, ConstructorArity) {
  Term t = constr("List", 1, {SubComp::type(A)}, {});
  EXPECT_EQ(codeOf([&] { Checker().checkTm(Ctx{}, t); }), "ArityMismatch");
}

TEST(Checker, ConstructorIndexMustMatch) {
  Ctx g = Ctx{}.extTm(Dir::Pos, A, "a");
  Term v = constr("Vec", 1, {SubComp::type(A)},
                  {var(0), natLit(1), constr("Vec", 0, {SubComp::type(A)}, {})});
  EXPECT_EQ(codeOf([&] { Checker().checkTm(g, v); }), "ClassifierMismatch");
}

TEST(Checker, UnboundVariable) {
  EXPECT_EQ(codeOf([&] { Checker().checkTm(Ctx{}, var(0)); }), "UnboundVariable");
}

TEST(Diagnostic, Format) {
  Diagnostic d{"VarianceViolation", "msg", Span{"f.adt", 3, 7}, "a covariant variable", "x"};
  EXPECT_EQ(d.str(), "ERROR VarianceViolation f.adt:3:7 expected a covariant variable got x");
}

}  // namespace
}  // namespace adaptt
