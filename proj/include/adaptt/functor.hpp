#pragma once

#include "adaptt/normalize.hpp"
#include "adaptt/subst.hpp"
#include "adaptt/syntax.hpp"

namespace adaptt {

// A transformation spine into `delta` together with its two endpoints.
// Term entries store one end (source for positive, target for negative);
// the other end is computed here once.
struct TransData {
  Ctx delta;
  TransComps comps;
  SubComps sigma;
  SubComps tau;

  std::size_t size() const { return comps.size(); }
};

TransData transData(const Ctx& delta, const TransComps& comps);
TransData transData(const Trans& t);
TransData dual(const TransData& m);
TransData prefix(const TransData& m, std::size_t n);
// m ∘ ↑: weaken the source side by n term variables.
TransData weaken(const TransData& m, int n);
// m ▷_d t. The type is over delta (or its dual when d is Neg).
TransData extendTm(const TransData& m, Dir d, const Type& ty, const Term& t);
// m ▷_d vinst over a telescope whose variables are the innermost n of the source.
TransData extendVinst(const TransData& m, Dir d, const Telescope& tel);
// Identity transformation on a substitution spine.
TransData idTrans(const Ctx& delta, const SubComps& s);

Sub transSrc(const Trans& t);
Sub transTgt(const Trans& t);

// A⟦μ⟧ : A[σ] ⇒ A[τ].
Adapter pushTransTy(const Type& a, const TransData& m);
// Θ⟦μ⟧, entry k over the source extended by k variables.
TelAdapter pushTransTel(const Telescope& tel, const TransData& m);
// ι ↦ ι⟨Θ⟦μ⟧⟩, casting entry k by Θ_k⟦μ ▷ ι_<k⟧.
Inst castInst(const Inst& iota, const Telescope& tel, const TransData& m);

// ρ ∘ μ for ρ : delta → xi.
TransComps leftWhisker(const SubComps& rho, const Ctx& xi, const TransData& m);
// μ ∘ δ for δ given as an index substitution over μ's source.
TransComps rightWhisker(const TransData& m, const Env& delta);
// ν ∘ μ, with μ's target endpoint equal to ν's source endpoint.
TransComps vcomp(const TransData& nu, const TransData& mu);

// Expected shape of the adapter stored in a type-variable component of a
// transformation, given the transformation on the earlier entries. The adapter
// lives over the source (dualized by the entry direction) extended by `tel`
// with direction `ext`, and goes from `src` to `tgt`.
struct CompSignature {
  Dir ext;
  Telescope tel;
  Type src;
  Type tgt;
};
CompSignature compSignature(const TransData& before, const CtxEntry& e, const Type& srcTy, const Type& tgtTy);

// Endpoints of an adapter, recovered from its annotations.
Type adSrc(const Adapter& f);
Type adTgt(const Adapter& f);

// t[σ]⟨A⟦μ⟧⟩ ≡ t[τ], for t over delta with type A.
bool checkNaturalityTm(const Term& t, const Type& a, const TransData& m,
                       const Normalizer& n = defaultNormalizer());
// B⟦μ⟧ ∘ f[σ] ≡ f[τ] ∘ A⟦μ⟧, for f : A ⇒ B over delta.
bool checkNaturalityAd(const Adapter& f, const TransData& m,
                       const Normalizer& n = defaultNormalizer());

}  // namespace adaptt
