#pragma once

#include "adaptt/syntax.hpp"

namespace adaptt {

struct TyImg {
  Type ty;         // over the image context extended by telLen term variables
  int telLen = 0;
};

// A substitution in index form: term variable j (counted from the innermost
// entry) maps to tms[j]; the ones past the end map to Var(j - |tms| + tmOff).
// Type variables likewise, through tys and tyOff.
struct Env {
  std::vector<Term> tms;
  int tmOff = 0;
  std::vector<TyImg> tys;
  int tyOff = 0;

  static Env shift(int tm, int ty = 0);
  // Spine components ordered like the target context entries.
  static Env of(const SubComps& comps, const Ctx& tgt, int tmOff = 0, int tyOff = 0);
  // Instantiates the innermost |inst| term variables, keeping the rest.
  static Env top(const Inst& inst, int tmOff = 0);

  bool isIdentity() const { return tms.empty() && tys.empty() && tmOff == 0 && tyOff == 0; }
};

// Apply under `depth` additional term binders.
Type subst(const Type& a, const Env& e, int depth = 0);
Term subst(const Term& t, const Env& e, int depth = 0);
Adapter subst(const Adapter& f, const Env& e, int depth = 0);
Inst substInst(const Inst& i, const Env& e, int depth = 0);
Telescope substTel(const Telescope& tel, const Env& e, int depth = 0);
TelAdapter substTelAd(const TelAdapter& ta, const Env& e, int depth = 0);
SubComps substComps(const SubComps& cs, const Ctx& tgt, const Env& e, int depth = 0);
TransComps substTransComps(const TransComps& cs, const Ctx& tgt, const Env& e, int depth = 0);

// Weakening by n term variables (and m type variables) above the cutoff.
Type shift(const Type& a, int n, int cutoff = 0, int m = 0);
Term shift(const Term& t, int n, int cutoff = 0, int m = 0);
Adapter shift(const Adapter& f, int n, int cutoff = 0, int m = 0);
Inst shiftInst(const Inst& i, int n, int cutoff = 0);

// x[id ▷ u] for objects over Γ ▷ A.
Type inst1(const Type& a, const Term& u);
Term inst1(const Term& t, const Term& u);
Adapter inst1(const Adapter& f, const Term& u);

Type applySub(const Type& a, const Sub& s);
Term applySub(const Term& t, const Sub& s);
Adapter applySub(const Adapter& f, const Sub& s);
Telescope applySub(const Telescope& tel, const Sub& s);
Inst applySub(const Inst& i, const Sub& s);

// tau ∘ sigma: components of tau substituted by sigma.
Sub composeSub(const Sub& tau, const Sub& sigma);

// Weakening substitution Γ ▷ extra → Γ as an explicit spine.
Sub weakenSub(const Ctx& gamma, const Ctx& extended);

// Parameter context of a registered description.
const Ctx& paramCtx(const DescRef& d);

}  // namespace adaptt
