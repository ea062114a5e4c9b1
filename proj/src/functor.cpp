#include "adaptt/functor.hpp"

#include "adaptt/desc_table.hpp"
#include "adaptt/trace.hpp"

namespace adaptt {

namespace {

template <class T>
std::vector<T> take(const std::vector<T>& v, std::size_t n) {
  return std::vector<T>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
}

Env envOf(const SubComps& s, const Ctx& delta) { return Env::of(s, delta); }

}  // namespace

TransData dual(const TransData& m) {
  return TransData{dualize(m.delta), dualizeComps(m.comps), m.tau, m.sigma};
}

TransData prefix(const TransData& m, std::size_t n) {
  return TransData{m.delta.prefix(n), take(m.comps, n), take(m.sigma, n), take(m.tau, n)};
}

TransData weaken(const TransData& m, int n) {
  if (n == 0) return m;
  Env e = Env::shift(n);
  return TransData{m.delta, substTransComps(m.comps, m.delta, e), substComps(m.sigma, m.delta, e),
                   substComps(m.tau, m.delta, e)};
}

TransData extendTm(const TransData& m, Dir d, const Type& ty, const Term& t) {
  TransData out = m;
  if (d == Dir::Pos) {
    Adapter a = pushTransTy(ty, m);
    out.sigma.push_back(SubComp::term(t));
    out.tau.push_back(SubComp::term(cast(t, a)));
  } else {
    Adapter a = pushTransTy(ty, dual(m));
    out.sigma.push_back(SubComp::term(cast(t, a)));
    out.tau.push_back(SubComp::term(t));
  }
  out.comps.push_back(TransComp::term(t));
  out.delta.entries.push_back(CtxEntry::tmVar(d, ty));
  return out;
}

TransData extendVinst(const TransData& m, Dir d, const Telescope& tel) {
  TransData out = m;
  const int n = static_cast<int>(tel.size());
  for (int k = 0; k < n; ++k) out = extendTm(out, d, tel[k], var(n - 1 - k));
  return out;
}

TransData transData(const Ctx& delta, const TransComps& comps) {
  if (comps.size() != delta.size())
    throw KernelError("ArityMismatch", "transformation spine length differs from its target context");
  TransData m;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const auto& e = delta[i];
    const auto& c = comps[i];
    if (e.isTy != c.isTy())
      throw KernelError("ClassifierMismatch", "transformation component sort differs from its entry");
    if (e.isTy) {
      m.delta.entries.push_back(e);
      m.comps.push_back(c);
      m.sigma.push_back(SubComp::type(c.srcTy));
      m.tau.push_back(SubComp::type(c.tgtTy));
    } else {
      m = extendTm(m, e.dir, e.ty, c.tm);
      m.delta.entries.back() = e;
    }
  }
  return m;
}

TransData transData(const Trans& t) { return transData(t.tgt, t.comps); }

TransData idTrans(const Ctx& delta, const SubComps& s) {
  TransComps comps;
  for (const auto& c : s) {
    if (c.isTy())
      comps.push_back(TransComp::adapter(idAd(c.ty), c.ty, c.ty));
    else
      comps.push_back(TransComp::term(c.tm));
  }
  return transData(delta, comps);
}

Sub transSrc(const Trans& t) { return Sub{t.src, t.tgt, transData(t).sigma}; }
Sub transTgt(const Trans& t) { return Sub{t.src, t.tgt, transData(t).tau}; }

Adapter pushTransTy(const Type& a, const TransData& m) {
  if (is<ty::Base>(a)) {
    traceRule("TRANS-CONST");
    return idAd(a);
  }
  if (auto v = as<ty::Var>(a)) {
    int p = m.delta.tyPos(v->index);
    if (p < 0) throw KernelError("UnboundVariable", "type variable outside the transformation target");
    const auto& e = m.delta[p];
    if (e.dir != Dir::Pos)
      throw KernelError("VarianceViolation", "contravariant type variable used covariantly");
    traceRule("TRANS-HD-AD");
    const auto& side = e.telDir == Dir::Pos ? m.sigma : m.tau;
    Inst inst = substInst(v->inst, envOf(side, m.delta));
    return subst(m.comps[p].ad, Env::top(inst));
  }
  if (auto p = as<ty::Pi>(a)) {
    traceRule("TRANS-PI");
    PathGuard g("pi");
    Adapter dom = pushTransTy(p->dom, dual(m));
    TransData ext = extendTm(weaken(m, 1), Dir::Neg, p->dom, var(0));
    Adapter cod = pushTransTy(p->cod, ext);
    Type srcCod = subst(p->cod, envOf(m.sigma, m.delta), 1);
    return piAd(dom, cod, srcCod);
  }
  if (auto s = as<ty::Sigma>(a)) {
    traceRule("TRANS-SIGMA");
    PathGuard g("sigma");
    Adapter fa = pushTransTy(s->fst, m);
    TransData ext = extendTm(weaken(m, 1), Dir::Pos, s->fst, var(0));
    Adapter sa = pushTransTy(s->snd, ext);
    Type tgtSnd = subst(s->snd, envOf(m.tau, m.delta), 1);
    return sigmaAd(fa, sa, tgtSnd);
  }
  if (auto i = as<ty::Ind>(a)) {
    traceRule("TRANS-IND");
    const IndDesc& d = descOf(i->desc);
    SubComps rho = i->params;
    for (const auto& t : i->indices) rho.push_back(SubComp::term(t));
    return indAd(i->desc, leftWhisker(rho, d.fullCtx(), m));
  }
  throw KernelError("IllFormed", "unknown type node");
}

TelAdapter pushTransTel(const Telescope& tel, const TransData& m) {
  TelAdapter out;
  for (std::size_t k = 0; k < tel.size(); ++k) {
    Telescope before(tel.begin(), tel.begin() + static_cast<std::ptrdiff_t>(k));
    TransData ext = extendVinst(weaken(m, static_cast<int>(k)), Dir::Pos, before);
    out.push_back(pushTransTy(tel[k], ext));
  }
  return out;
}

Inst castInst(const Inst& iota, const Telescope& tel, const TransData& m) {
  if (iota.size() != tel.size())
    throw KernelError("ArityMismatch", "instantiation length differs from its telescope");
  TransData ext = m;
  Inst out;
  for (std::size_t k = 0; k < tel.size(); ++k) {
    ext = extendTm(ext, Dir::Pos, tel[k], iota[k]);
    out.push_back(ext.tau.back().tm);
  }
  return out;
}

TransComps leftWhisker(const SubComps& rho, const Ctx& xi, const TransData& m) {
  if (rho.size() != xi.size())
    throw KernelError("ArityMismatch", "substitution spine length differs from its target context");
  Env envS = envOf(m.sigma, m.delta);
  Env envT = envOf(m.tau, m.delta);
  TransComps out;
  for (std::size_t j = 0; j < xi.size(); ++j) {
    const auto& e = xi[j];
    const auto& c = rho[j];
    if (!e.isTy) {
      out.push_back(TransComp::term(subst(c.tm, e.dir == Dir::Pos ? envS : envT)));
      continue;
    }
    const int n = static_cast<int>(e.tel.size());
    Telescope thetaRho = substTel(e.tel, Env::of(take(rho, j), xi.prefix(j)));
    TransData md = e.dir == Dir::Neg ? dual(m) : m;
    TransData ext = extendVinst(weaken(md, n), e.telDir * e.dir, thetaRho);
    Adapter f = pushTransTy(c.ty, ext);
    out.push_back(TransComp::adapter(f, subst(c.ty, envS, n), subst(c.ty, envT, n)));
  }
  return out;
}

TransComps rightWhisker(const TransData& m, const Env& delta) {
  return substTransComps(m.comps, m.delta, delta);
}

TransComps vcomp(const TransData& nu, const TransData& mu) {
  if (nu.size() != mu.size())
    throw KernelError("ArityMismatch", "composed transformations have different targets");
  TransComps out;
  for (std::size_t p = 0; p < mu.size(); ++p) {
    const auto& e = mu.delta[p];
    if (!e.isTy) {
      out.push_back(e.dir == Dir::Pos ? mu.comps[p] : nu.comps[p]);
      continue;
    }
    const int n = static_cast<int>(e.tel.size());
    Adapter fm = mu.comps[p].ad;
    Adapter fn = nu.comps[p].ad;
    if (e.telDir == Dir::Pos) {
      Inst ci = castInst(vinst(n), e.tel, weaken(prefix(mu, p), n));
      fn = subst(fn, Env::top(ci, n));
    } else {
      Inst ci = castInst(vinst(n), e.tel, weaken(dual(prefix(nu, p)), n));
      fm = subst(fm, Env::top(ci, n));
    }
    Adapter f = e.dir == Dir::Pos ? compChain({fm, fn}) : compChain({fn, fm});
    out.push_back(TransComp::adapter(f, mu.comps[p].srcTy, nu.comps[p].tgtTy));
  }
  return out;
}

CompSignature compSignature(const TransData& m, const CtxEntry& e, const Type& srcTy, const Type& tgtTy) {
  const int n = static_cast<int>(e.tel.size());
  const Dir dd = e.telDir * e.dir;
  // Work in the dual when the entry is contravariant.
  TransData md = e.dir == Dir::Neg ? dual(m) : m;
  const Type& src = e.dir == Dir::Neg ? tgtTy : srcTy;
  const Type& tgt = e.dir == Dir::Neg ? srcTy : tgtTy;
  if (dd == Dir::Pos) {
    Inst ci = castInst(vinst(n), e.tel, weaken(md, n));
    return {dd, substTel(e.tel, envOf(md.sigma, md.delta)), src, subst(tgt, Env::top(ci, n))};
  }
  Inst ci = castInst(vinst(n), e.tel, weaken(dual(md), n));
  return {dd, substTel(e.tel, envOf(md.tau, md.delta)), subst(src, Env::top(ci, n)), tgt};
}

namespace {
Type indEndpoint(const ad::Ind& f, bool src) {
  const IndDesc& d = descOf(f.desc);
  TransData m = transData(d.fullCtx(), f.comps);
  const auto& side = src ? m.sigma : m.tau;
  SubComps ps = take(side, d.params.size());
  Inst is;
  for (std::size_t k = d.params.size(); k < side.size(); ++k) is.push_back(side[k].tm);
  return ind(f.desc, ps, is);
}
}  // namespace

Type adSrc(const Adapter& f) {
  if (auto i = as<ad::Id>(f)) return i->ty;
  if (auto c = as<ad::Comp>(f)) return adSrc(c->chain.front());
  if (auto p = as<ad::Post>(f)) return p->src;
  if (auto p = as<ad::Pi>(f)) return pi(adTgt(p->dom), p->srcCod);
  if (auto s = as<ad::Sigma>(f)) return sigma(adSrc(s->fst), adSrc(s->snd));
  if (auto i = as<ad::Ind>(f)) return indEndpoint(*i, true);
  throw KernelError("IllFormed", "unknown adapter node");
}

Type adTgt(const Adapter& f) {
  if (auto i = as<ad::Id>(f)) return i->ty;
  if (auto c = as<ad::Comp>(f)) return adTgt(c->chain.back());
  if (auto p = as<ad::Post>(f)) return p->tgt;
  if (auto p = as<ad::Pi>(f)) return pi(adSrc(p->dom), adTgt(p->cod));
  if (auto s = as<ad::Sigma>(f)) return sigma(adTgt(s->fst), s->tgtSnd);
  if (auto i = as<ad::Ind>(f)) return indEndpoint(*i, false);
  throw KernelError("IllFormed", "unknown adapter node");
}

bool checkNaturalityTm(const Term& t, const Type& a, const TransData& m, const Normalizer& n) {
  Term lhs = cast(subst(t, envOf(m.sigma, m.delta)), pushTransTy(a, m));
  Term rhs = subst(t, envOf(m.tau, m.delta));
  return n.conv(lhs, rhs);
}

bool checkNaturalityAd(const Adapter& f, const TransData& m, const Normalizer& n) {
  Env s = envOf(m.sigma, m.delta);
  Env t = envOf(m.tau, m.delta);
  Adapter lhs = comp(pushTransTy(adTgt(f), m), subst(f, s));
  Adapter rhs = comp(subst(f, t), pushTransTy(adSrc(f), m));
  return n.conv(lhs, rhs);
}

}  // namespace adaptt
