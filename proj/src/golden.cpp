#include "adaptt/golden.hpp"

#include "adaptt/surface.hpp"

namespace adaptt {

const std::string& goldenPrelude() {
  static const std::string text = R"(type A ;
type A' ;
type B ;
type B' ;
postulate adapter f : A => A' ;
postulate adapter g : B => B' ;
postulate adapter h : B' => B ;
data Tree (X : Ty+) (Y : Ty-) {
  leaf : Tree X Y ;
  node : (x : X) -> (r : Y -> Tree X Y) -> Tree X Y
}
)";
  return text;
}

const std::vector<GoldenRow>& goldenRows() {
  static const std::vector<GoldenRow> rows = {
      {"List.nil", "assert |- List.nil A <| List [f] == List.nil A' : List A' ;"},
      {"List.cons",
       "assert (a : A) (l : List A) |- List.cons A a l <| List [f]"
       " == List.cons A' (a <| f) (l <| List [f]) : List A' ;"},
      {"Vec.nil", "assert |- Vec.nil A <| Vec [f > 0] == Vec.nil A' : Vec A' 0 ;"},
      {"Vec.cons",
       "assert (a : A) (n : Nat) (v : Vec A n) |- Vec.cons A a n v <| Vec [f > Nat.suc n]"
       " == Vec.cons A' (a <| f) n (v <| Vec [f > n]) : Vec A' (Nat.suc n) ;"},
      {"Sum.inl", "assert (a : A) |- Sum.inl A B a <| Sum [f > g] == Sum.inl A' B' (a <| f) : Sum A' B' ;"},
      {"Sum.inr", "assert (b : B) |- Sum.inr A B b <| Sum [f > g] == Sum.inr A' B' (b <| g) : Sum A' B' ;"},
      {"W.sup",
       "assert (a : A) (s : B -> W A (fun x => B)) |- W.sup A (fun x => B) a s <| W [f > fun x => h : B => B']"
       " == W.sup A' (fun x => B') (a <| f)"
       " (s <| Pi [h > fun b => W [f > fun x => h : B => B'] ; fun b => W A (fun x => B)])"
       " : W A' (fun x => B') ;"},
      {"Id.refl",
       "assert (a : A) |- Id.refl A a <| Id [f > a > a] == Id.refl A' (a <| f)"
       " : Id A' (a <| f) (a <| f) ;"},
      {"Tree.leaf", "assert |- Tree.leaf A B <| Tree [f > h] == Tree.leaf A' B' : Tree A' B' ;", false},
      {"Tree.node",
       "assert (a : A) (r : B -> Tree A B) |- Tree.node A B a r <| Tree [f > h]"
       " == Tree.node A' B' (a <| f) (fun (y : B') => r (y <| h) <| Tree [f > h]) : Tree A' B' ;",
       false},
  };
  return rows;
}

std::vector<GoldenResult> runGolden() {
  std::vector<GoldenResult> out;
  Elaborator el("<golden>");
  try {
    el.elaborate(parse(goldenPrelude(), "<golden>"));
  } catch (const SyntaxError& e) {
    out.push_back({"prelude", false, e.diag().str()});
    return out;
  } catch (const CheckError& e) {
    out.push_back({"prelude", false, e.diag.str()});
    return out;
  }
  for (const auto& row : goldenRows()) {
    GoldenResult r{row.name, false, {}};
    try {
      for (const auto& d : parse(row.source, "<golden:" + row.name + ">")) el.declare(d);
      r.ok = true;
    } catch (const SyntaxError& e) {
      r.detail = e.diag().str();
    } catch (const CheckError& e) {
      r.detail = e.diag.str();
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace adaptt
