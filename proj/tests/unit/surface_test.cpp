#include <gtest/gtest.h>

#include "adaptt/desc_table.hpp"
#include "adaptt/golden.hpp"
#include "adaptt/inductive.hpp"
#include "adaptt/pretty.hpp"
#include "adaptt/surface.hpp"
#include "gen.hpp"

namespace adaptt {
namespace {

std::string codeOf(const std::string& src) {
  try {
    elaborateProgram(parse(src, "t.adt"), "t.adt");
  } catch (const SyntaxError& e) {
    return e.diag().code;
  } catch (const CheckError& e) {
    return e.diag.code;
  }
  return "ok";
}

Diagnostic diagOf(const std::string& src) {
  try {
    elaborateProgram(parse(src, "t.adt"), "t.adt");
  } catch (const SyntaxError& e) {
    return e.diag();
  } catch (const CheckError& e) {
    return e.diag;
  }
  return {};
}

const char* kPrelude = R"(
data List (X : Ty+) { nil : List X ; cons : (x : X)(xs : List X) -> List X }
data Sum (X : Ty+) (Y : Ty+) { inl : (x : X) -> Sum X Y ; inr : (y : Y) -> Sum X Y }
data W (X : Ty+) (Y : (x : X) -> Ty-) { sup : (x : X) -> (z : (y : Y x) -> W X Y) -> W X Y }
data Vec (X : Ty+) : (n : Nat) -> Type { nil : Vec X 0 ; cons : (x : X) -> (n : Nat) -> (xs : Vec X n) -> Vec X (suc n) }
data Id (X : Ty+) (x : X) : (y : X) -> Type { refl : Id X x x }
data Tree (X : Ty+) (Y : Ty-) { leaf : Tree X Y ; node : (x : X) -> (r : Y -> Tree X Y) -> Tree X Y }
)";

TEST(Parse, PostulatedAdapter) {
  auto ds = parse("type A ; type B ; postulate adapter f : A => B ;");
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds[2].kind, Decl::Postulate);
  EXPECT_EQ(ds[2].name, "f");
}

TEST(Parse, UnterminatedDataIsASyntaxError) {
  try {
    parse("data List (X : Ty+", "t.adt");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.diag().code, "ParseError");
    EXPECT_EQ(e.span.line, 1);
    EXPECT_NE(e.got.find("end-of-input"), std::string::npos) << e.got;
  }
}

TEST(Parse, CommentsAndLayout) {
  auto ds = parse("-- a comment\ntype A ;\n\n  -- another\ntype B ;");
  EXPECT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds[1].span.line, 4 + 1);
}

TEST(Elaborate, SurfaceDatatypesEqualTheBuiltins) {
  CoreProgram p = elaborateProgram(parse(kPrelude));
  std::vector<IndDesc> want = {listDesc(), sumDesc(), wDesc(), vecDesc(), idDesc(), treeDesc()};
  ASSERT_EQ(p.decls.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_TRUE(eq(p.decls[i].desc, want[i])) << want[i].name;
}

TEST(Elaborate, WRecursiveArgumentHasArity) {
  CoreProgram p = elaborateProgram(parse(kPrelude));
  const IndDesc& w = p.decls[2].desc;
  ASSERT_EQ(w.cons[0].rec.size(), 1u);
  EXPECT_TRUE(eq(w.cons[0].rec[0].arit, Telescope{tyVar(0, {var(0)})}));
  EXPECT_TRUE(w.cons[0].rec[0].rind.empty());
}

TEST(Elaborate, PositivityError) {
  EXPECT_EQ(codeOf("data Bad (X : Ty+) { bad : (f : (Bad X -> X)) -> Bad X }"), "PositivityError");
}

TEST(Elaborate, Diagnostics) {
  EXPECT_EQ(codeOf("check |- x : A ;"), "UnboundVariable");
  EXPECT_EQ(codeOf("type A ; check (a : A) |- List.cons A a : List A ;"), "ArityMismatch");
  EXPECT_EQ(codeOf("type A ; type B ; check (a : A) |- a : B ;"), "ClassifierMismatch");
  EXPECT_EQ(codeOf("type A ; check |- fun (x : A) => x : A -> A ;"), "VarianceViolation");
  EXPECT_EQ(codeOf("type A ; type B ; postulate adapter f : A => B ;"
                   "assert (a : A) |- a <| f == a <| f <| id B : B ;"),
            "ok");
  EXPECT_EQ(codeOf("type A ; type B ; postulate adapter f : A => B ; postulate adapter g : B => A ;"
                   "assert (a : A) |- a <| f <| g == a : A ;"),
            "NotConvertible");
  EXPECT_EQ(codeOf("type A ; type A ;"), "IllFormedDescription");
}

TEST(Elaborate, DiagnosticPositions) {
  Diagnostic d = diagOf("type A ;\ncheck (a : A) |- b : A ;");
  EXPECT_EQ(d.code, "UnboundVariable");
  EXPECT_EQ(d.span.file, "t.adt");
  EXPECT_EQ(d.span.line, 2);
  EXPECT_EQ(d.span.col, 18);
  EXPECT_EQ(d.got, "b");
}

TEST(Elaborate, GoldenRowsHold) {
  for (const auto& r : runGolden()) EXPECT_TRUE(r.ok) << r.name << ": " << r.detail;
}

TEST(RoundTrip, PreludeAndDeclarations) {
  std::string src = std::string(kPrelude) + R"(
type A ;
type B ;
postulate adapter f : A => B ;
def l : List A := List.nil A ;
check (a : A) |- List.cons A a l : List A ;
assert (a : A) |- List.cons A a l <| List [f] == List.cons B (a <| f) (List.nil B) : List B ;
normalize (a : A) |- List.cons A a l <| List [f] ;
check (g : A -> B) |- fun (x : A) => g x : A -> B ;
check |- Pi [f > fun x => id B ; fun x => B] : (B -> B) => (A -> B) ;
)";
  CoreProgram p = elaborateProgram(parse(src));
  std::string printed = prettyProgram(p);
  CoreProgram q = elaborateProgram(parse(printed, "<printed>"), "<printed>");
  ASSERT_EQ(p.decls.size(), q.decls.size()) << printed;
  for (std::size_t i = 0; i < p.decls.size(); ++i) EXPECT_TRUE(eq(p.decls[i], q.decls[i])) << printed;
  EXPECT_EQ(prettyProgram(q), printed);
}

// Generated judgments print to text that elaborates back to the same core.
TEST(RoundTrip, GeneratedJudgments) {
  gen::registerTree();
  Elaborator el("<world>");
  el.elaborate(parse(gen::worldSource(), "<world>"));
  gen::Gen r(41);
  Ctx g = gen::termCtx();
  int n = 0;
  for (int i = 0; i < 300; ++i) {
    CoreDecl d;
    d.kind = Decl::Check;
    d.ctx = g;
    Type a = r.ty(Ctx{}, {});
    if (i % 2 == 0) {
      try {
        d.tm = r.tm(g, a, 3);
      } catch (const gen::GenFail&) {
        continue;
      }
      d.sort = Sort::Term;
      d.ty = a;
    } else {
      auto [f, b] = r.adFrom(g, a, 3);
      d.sort = Sort::Adapter;
      d.ad = f;
      d.src = a;
      d.tgt = b;
    }
    std::string text = prettyDecl(d);
    auto ds = parse(text, "<gen>");
    ASSERT_EQ(ds.size(), 1u) << text;
    el.declare(ds[0]);
    EXPECT_TRUE(eq(el.program().decls.back(), d)) << text;
    ++n;
  }
  EXPECT_GT(n, 250);
}

}  // namespace
}  // namespace adaptt
