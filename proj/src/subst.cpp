#include "adaptt/subst.hpp"

#include <algorithm>

#include "adaptt/desc_table.hpp"
#include "adaptt/trace.hpp"

namespace adaptt {

Env Env::shift(int tm, int ty) {
  Env e;
  e.tmOff = tm;
  e.tyOff = ty;
  return e;
}

Env Env::of(const SubComps& comps, const Ctx& tgt, int tmOff, int tyOff) {
  if (comps.size() != tgt.size())
    throw KernelError("ArityMismatch", "substitution spine length differs from its target context");
  Env e;
  e.tmOff = tmOff;
  e.tyOff = tyOff;
  for (std::size_t i = comps.size(); i-- > 0;) {
    if (tgt[i].isTy != comps[i].isTy())
      throw KernelError("ClassifierMismatch", "substitution component sort differs from its entry");
    if (comps[i].isTy())
      e.tys.push_back(TyImg{comps[i].ty, static_cast<int>(tgt[i].tel.size())});
    else
      e.tms.push_back(comps[i].tm);
  }
  return e;
}

Env Env::top(const Inst& inst, int tmOff) {
  Env e;
  e.tmOff = tmOff;
  e.tms.assign(inst.rbegin(), inst.rend());
  return e;
}

const Ctx& paramCtx(const DescRef& d) { return descOf(d).params; }

namespace {

Term substVar(int i, const Env& e, int k) {
  if (i < k) return nullptr;
  int j = i - k;
  if (j < static_cast<int>(e.tms.size())) {
    traceRule("SUB-VAR");
    return shift(e.tms[j], k);
  }
  int out = j - static_cast<int>(e.tms.size()) + e.tmOff + k;
  return out == i ? nullptr : var(out);
}

template <class T>
bool sameVec(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

Inst substInst(const Inst& in, const Env& e, int k) {
  Inst out;
  out.reserve(in.size());
  for (const auto& t : in) out.push_back(subst(t, e, k));
  return sameVec(in, out) ? in : out;
}

Telescope substTel(const Telescope& tel, const Env& e, int k) {
  Telescope out;
  out.reserve(tel.size());
  for (std::size_t i = 0; i < tel.size(); ++i) out.push_back(subst(tel[i], e, k + static_cast<int>(i)));
  return sameVec(tel, out) ? tel : out;
}

TelAdapter substTelAd(const TelAdapter& ta, const Env& e, int k) {
  TelAdapter out;
  out.reserve(ta.size());
  for (std::size_t i = 0; i < ta.size(); ++i) out.push_back(subst(ta[i], e, k + static_cast<int>(i)));
  return sameVec(ta, out) ? ta : out;
}

SubComps substComps(const SubComps& cs, const Ctx& tgt, const Env& e, int k) {
  SubComps out;
  out.reserve(cs.size());
  bool changed = false;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].isTy()) {
      int n = static_cast<int>(tgt[i].tel.size());
      auto t = subst(cs[i].ty, e, k + n);
      changed |= t != cs[i].ty;
      out.push_back(SubComp::type(t));
    } else {
      auto t = subst(cs[i].tm, e, k);
      changed |= t != cs[i].tm;
      out.push_back(SubComp::term(t));
    }
  }
  return changed ? out : cs;
}

TransComps substTransComps(const TransComps& cs, const Ctx& tgt, const Env& e, int k) {
  TransComps out;
  out.reserve(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].isTy()) {
      int n = static_cast<int>(tgt[i].tel.size());
      out.push_back(TransComp::adapter(subst(cs[i].ad, e, k + n), subst(cs[i].srcTy, e, k + n),
                                       subst(cs[i].tgtTy, e, k + n)));
    } else {
      out.push_back(TransComp::term(subst(cs[i].tm, e, k)));
    }
  }
  return out;
}

Type subst(const Type& a, const Env& e, int k) {
  if (!a || e.isIdentity()) return a;
  if (auto v = as<ty::Var>(a)) {
    Inst inst = substInst(v->inst, e, k);
    if (v->index < static_cast<int>(e.tys.size())) {
      traceRule("SUB-HD-TY");
      const TyImg& img = e.tys[v->index];
      if (static_cast<int>(inst.size()) != img.telLen)
        throw KernelError("ArityMismatch", "type variable instantiated at the wrong arity");
      return subst(img.ty, Env::top(inst, k));
    }
    int idx = v->index - static_cast<int>(e.tys.size()) + e.tyOff;
    if (idx == v->index && inst == v->inst) return a;
    return tyVar(idx, std::move(inst));
  }
  if (auto p = as<ty::Pi>(a)) {
    traceRule("SUB-PI");
    auto d = subst(p->dom, e, k);
    auto c = subst(p->cod, e, k + 1);
    return d == p->dom && c == p->cod ? a : pi(d, c);
  }
  if (auto s = as<ty::Sigma>(a)) {
    traceRule("SUB-SIGMA");
    auto f = subst(s->fst, e, k);
    auto g = subst(s->snd, e, k + 1);
    return f == s->fst && g == s->snd ? a : sigma(f, g);
  }
  if (auto i = as<ty::Ind>(a)) {
    traceRule("SUB-IND");
    auto ps = substComps(i->params, paramCtx(i->desc), e, k);
    auto is = substInst(i->indices, e, k);
    bool same = is == i->indices && ps.size() == i->params.size();
    for (std::size_t j = 0; same && j < ps.size(); ++j)
      same = ps[j].tm == i->params[j].tm && ps[j].ty == i->params[j].ty;
    return same ? a : ind(i->desc, ps, is);
  }
  return a;
}

Term subst(const Term& t, const Env& e, int k) {
  if (!t || e.isIdentity()) return t;
  if (auto v = as<tm::Var>(t)) {
    auto r = substVar(v->index, e, k);
    return r ? r : t;
  }
  if (auto l = as<tm::Lam>(t)) {
    traceRule("SUB-LAM");
    auto d = subst(l->dom, e, k);
    auto b = subst(l->body, e, k + 1);
    return d == l->dom && b == l->body ? t : lam(d, b);
  }
  if (auto a = as<tm::App>(t)) {
    traceRule("SUB-APP");
    auto f = subst(a->fn, e, k);
    auto u = subst(a->arg, e, k);
    return f == a->fn && u == a->arg ? t : app(f, u);
  }
  if (auto p = as<tm::Pair>(t)) {
    traceRule("SUB-PAIR");
    auto x = subst(p->fst, e, k);
    auto y = subst(p->snd, e, k);
    auto fam = subst(p->fam, e, k + 1);
    return x == p->fst && y == p->snd && fam == p->fam ? t : pair(x, y, fam);
  }
  if (auto p = as<tm::Fst>(t)) {
    traceRule("SUB-FST");
    auto x = subst(p->p, e, k);
    return x == p->p ? t : fst(x);
  }
  if (auto p = as<tm::Snd>(t)) {
    traceRule("SUB-SND");
    auto x = subst(p->p, e, k);
    return x == p->p ? t : snd(x);
  }
  if (auto c = as<tm::Cast>(t)) {
    traceRule("SUB-CAST");
    auto x = subst(c->tm, e, k);
    auto f = subst(c->ad, e, k);
    if (x == c->tm && f == c->ad) return t;
    return cast(x, f);
  }
  if (auto c = as<tm::Constr>(t)) {
    traceRule("SUB-CONSTR");
    auto ps = substComps(c->params, paramCtx(c->desc), e, k);
    auto as_ = substInst(c->args, e, k);
    return constr(c->desc, c->con, ps, as_);
  }
  return t;
}

Adapter subst(const Adapter& f, const Env& e, int k) {
  if (!f || e.isIdentity()) return f;
  if (auto i = as<ad::Id>(f)) {
    traceRule("SUB-AD-ID");
    auto ty = subst(i->ty, e, k);
    return ty == i->ty ? f : idAd(ty);
  }
  if (auto c = as<ad::Comp>(f)) {
    traceRule("SUB-AD-COMP");
    std::vector<Adapter> chain;
    chain.reserve(c->chain.size());
    for (const auto& g : c->chain) chain.push_back(subst(g, e, k));
    return sameVec(chain, c->chain) ? f : compChain(chain);
  }
  if (auto p = as<ad::Post>(f)) {
    traceRule("SUB-AD-POST");
    auto s = subst(p->src, e, k);
    auto t = subst(p->tgt, e, k);
    return s == p->src && t == p->tgt ? f : post(p->name, s, t);
  }
  if (auto p = as<ad::Pi>(f)) {
    traceRule("SUB-AD-PI");
    auto d = subst(p->dom, e, k);
    auto c = subst(p->cod, e, k + 1);
    auto sc = subst(p->srcCod, e, k + 1);
    return d == p->dom && c == p->cod && sc == p->srcCod ? f : piAd(d, c, sc);
  }
  if (auto s = as<ad::Sigma>(f)) {
    traceRule("SUB-AD-SIGMA");
    auto a = subst(s->fst, e, k);
    auto b = subst(s->snd, e, k + 1);
    auto ts = subst(s->tgtSnd, e, k + 1);
    return a == s->fst && b == s->snd && ts == s->tgtSnd ? f : sigmaAd(a, b, ts);
  }
  if (auto i = as<ad::Ind>(f)) {
    traceRule("SUB-AD-IND");
    return indAd(i->desc, substTransComps(i->comps, paramCtx(i->desc), e, k));
  }
  return f;
}

Type shift(const Type& a, int n, int cutoff, int m) {
  if (n == 0 && m == 0) return a;
  return subst(a, Env::shift(n, m), cutoff);
}
Term shift(const Term& t, int n, int cutoff, int m) {
  if (n == 0 && m == 0) return t;
  return subst(t, Env::shift(n, m), cutoff);
}
Adapter shift(const Adapter& f, int n, int cutoff, int m) {
  if (n == 0 && m == 0) return f;
  return subst(f, Env::shift(n, m), cutoff);
}
Inst shiftInst(const Inst& i, int n, int cutoff) {
  if (n == 0) return i;
  return substInst(i, Env::shift(n), cutoff);
}

Type inst1(const Type& a, const Term& u) { return subst(a, Env::top({u})); }
Term inst1(const Term& t, const Term& u) { return subst(t, Env::top({u})); }
Adapter inst1(const Adapter& f, const Term& u) { return subst(f, Env::top({u})); }

Type applySub(const Type& a, const Sub& s) { return subst(a, Env::of(s.comps, s.tgt)); }
Term applySub(const Term& t, const Sub& s) { return subst(t, Env::of(s.comps, s.tgt)); }
Adapter applySub(const Adapter& f, const Sub& s) { return subst(f, Env::of(s.comps, s.tgt)); }
Telescope applySub(const Telescope& tel, const Sub& s) {
  return substTel(tel, Env::of(s.comps, s.tgt));
}
Inst applySub(const Inst& i, const Sub& s) { return substInst(i, Env::of(s.comps, s.tgt)); }

Sub composeSub(const Sub& tau, const Sub& sigma) {
  return Sub{sigma.src, tau.tgt, substComps(tau.comps, tau.tgt, Env::of(sigma.comps, sigma.tgt))};
}

Sub weakenSub(const Ctx& gamma, const Ctx& extended) {
  int tm = extended.tmCountFrom(gamma.size());
  int ty = extended.tyCountFrom(gamma.size());
  SubComps comps;
  for (const auto& c : idComps(gamma)) {
    if (c.isTy()) {
      auto v = as<ty::Var>(c.ty);
      comps.push_back(SubComp::type(tyVar(v->index + ty, v->inst)));
    } else {
      comps.push_back(SubComp::term(shift(c.tm, tm)));
    }
  }
  return Sub{extended, gamma, comps};
}

}  // namespace adaptt
