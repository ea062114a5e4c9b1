#include "adaptt/normalize.hpp"

#include "adaptt/desc_table.hpp"
#include "adaptt/functor.hpp"
#include "adaptt/inductive.hpp"
#include "adaptt/subst.hpp"
#include "adaptt/trace.hpp"

namespace adaptt {

const Normalizer& defaultNormalizer() {
  static const Normalizer n;
  return n;
}

Type piTel(const Telescope& tel, const Type& body) {
  if (tel.empty()) {
    traceRule("PI-TEL-NIL");
    return body;
  }
  Type out = body;
  for (std::size_t i = tel.size(); i-- > 0;) {
    traceRule("PI-TEL-CONS");
    out = pi(tel[i], out);
  }
  return out;
}

// ---- types ----

Type Normalizer::nf(const Type& a) const {
  if (!a) return a;
  if (auto v = as<ty::Var>(a)) {
    PathGuard g("inst");
    auto inst = nfInst(v->inst);
    return inst == v->inst ? a : tyVar(v->index, inst);
  }
  if (auto p = as<ty::Pi>(a)) {
    Type d, c;
    {
      PathGuard g("dom");
      d = nf(p->dom);
    }
    {
      PathGuard g("cod");
      c = nf(p->cod);
    }
    return d == p->dom && c == p->cod ? a : pi(d, c);
  }
  if (auto s = as<ty::Sigma>(a)) {
    Type x, y;
    {
      PathGuard g("fst");
      x = nf(s->fst);
    }
    {
      PathGuard g("snd");
      y = nf(s->snd);
    }
    return x == s->fst && y == s->snd ? a : sigma(x, y);
  }
  if (auto i = as<ty::Ind>(a)) {
    PathGuard g("ind");
    return ind(i->desc, nfComps(i->params), nfInst(i->indices));
  }
  return a;
}

Inst Normalizer::nfInst(const Inst& in) const {
  Inst out;
  out.reserve(in.size());
  bool same = true;
  for (const auto& t : in) {
    out.push_back(nf(t));
    same &= out.back() == t;
  }
  return same ? in : out;
}

Telescope Normalizer::nfTel(const Telescope& tel) const {
  Telescope out;
  out.reserve(tel.size());
  for (const auto& t : tel) out.push_back(nf(t));
  return out;
}

SubComps Normalizer::nfComps(const SubComps& cs) const {
  SubComps out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back(c.isTy() ? SubComp::type(nf(c.ty)) : SubComp::term(nf(c.tm)));
  return out;
}

TransComps Normalizer::nfTransComps(const TransComps& cs) const {
  TransComps out;
  out.reserve(cs.size());
  for (const auto& c : cs) {
    if (c.isTy())
      out.push_back(TransComp::adapter(nf(c.ad), nf(c.srcTy), nf(c.tgtTy)));
    else
      out.push_back(TransComp::term(nf(c.tm)));
  }
  return out;
}

Sub Normalizer::nf(const Sub& s) const { return Sub{s.src, s.tgt, nfComps(s.comps)}; }

// ---- terms ----

Term Normalizer::nf(const Term& t) const {
  if (!t) return t;
  if (opts_.memo) {
    auto it = memo_.find(t.get());
    if (it != memo_.end()) return it->second.second;
  }
  Term r;
  if (is<tm::Var>(t)) {
    r = t;
  } else if (auto l = as<tm::Lam>(t)) {
    Type d;
    Term b;
    {
      PathGuard g("dom");
      d = nf(l->dom);
    }
    {
      PathGuard g("body");
      b = nf(l->body);
    }
    r = d == l->dom && b == l->body ? t : lam(d, b);
  } else if (auto a = as<tm::App>(t)) {
    Term f, u;
    {
      PathGuard g("fn");
      f = nf(a->fn);
    }
    {
      PathGuard g("arg");
      u = nf(a->arg);
    }
    r = apply(f, u);
  } else if (auto p = as<tm::Pair>(t)) {
    Term x, y;
    Type fam;
    {
      PathGuard g("fst");
      x = nf(p->fst);
    }
    {
      PathGuard g("snd");
      y = nf(p->snd);
    }
    {
      PathGuard g("fam");
      fam = nf(p->fam);
    }
    r = x == p->fst && y == p->snd && fam == p->fam ? t : pair(x, y, fam);
  } else if (auto p = as<tm::Fst>(t)) {
    PathGuard g("p");
    r = proj1(nf(p->p));
  } else if (auto p = as<tm::Snd>(t)) {
    PathGuard g("p");
    r = proj2(nf(p->p));
  } else if (auto c = as<tm::Cast>(t)) {
    Term x;
    Adapter f;
    {
      PathGuard g("tm");
      x = nf(c->tm);
    }
    {
      PathGuard g("ad");
      f = nf(c->ad);
    }
    r = castNf(x, f);
  } else if (auto c = as<tm::Constr>(t)) {
    PathGuard g("constr");
    r = constr(c->desc, c->con, nfComps(c->params), nfInst(c->args));
  } else {
    r = t;
  }
  if (opts_.memo) memo_.emplace(t.get(), std::make_pair(t, r));
  return r;
}

Term Normalizer::apply(const Term& f, const Term& u) const {
  if (auto l = as<tm::Lam>(f)) {
    traceRule("BETA");
    return nf(inst1(l->body, u));
  }
  if (auto c = as<tm::Cast>(f)) {
    if (auto p = as<ad::Pi>(c->ad)) {
      traceRule("AD-FUN-EQ");
      Term inner = apply(c->tm, castNf(u, p->dom));
      return castNf(inner, nf(inst1(p->cod, u)));
    }
  }
  return app(f, u);
}

Term Normalizer::proj1(const Term& p) const {
  if (auto pr = as<tm::Pair>(p)) {
    traceRule("FST-BETA");
    return pr->fst;
  }
  if (auto c = as<tm::Cast>(p)) {
    if (auto s = as<ad::Sigma>(c->ad)) {
      traceRule("AD-PAIR-EQ1");
      return castNf(proj1(c->tm), s->fst);
    }
  }
  return fst(p);
}

Term Normalizer::proj2(const Term& p) const {
  if (auto pr = as<tm::Pair>(p)) {
    traceRule("SND-BETA");
    return pr->snd;
  }
  if (auto c = as<tm::Cast>(p)) {
    if (auto s = as<ad::Sigma>(c->ad)) {
      traceRule("AD-PAIR-EQ2");
      Term q1 = proj1(c->tm);
      return castNf(proj2(c->tm), nf(inst1(s->snd, q1)));
    }
  }
  return snd(p);
}

Term Normalizer::castNf(const Term& t, const Adapter& f) const {
  if (is<ad::Id>(f)) {
    traceRule("ADAPT-ID");
    return t;
  }
  if (auto c = as<ad::Comp>(f)) {
    traceRule("ADAPT-COMP");
    Term out = t;
    for (const auto& g : c->chain) out = castNf(out, g);
    return out;
  }
  if (auto k = as<tm::Constr>(t)) {
    if (auto i = as<ad::Ind>(f); i && i->desc == k->desc) {
      traceRule("IND-AD-EQ");
      return nf(castConstr(*k, *i, *this));
    }
  }
  if (auto pr = as<tm::Pair>(t)) {
    if (auto s = as<ad::Sigma>(f)) {
      traceRule("AD-PAIR-LIT");
      Term a = castNf(pr->fst, s->fst);
      Term b = castNf(pr->snd, nf(inst1(s->snd, pr->fst)));
      return pair(a, b, s->tgtSnd);
    }
  }
  if (opts_.fuse) {
    if (auto c = as<tm::Cast>(t)) {
      if (Adapter h = fuse(c->ad, f)) {
        traceRule("TY-TRANS-COMP");
        return castNf(c->tm, h);
      }
    }
  }
  return rawCast(t, f);
}

// ---- adapters ----

Adapter Normalizer::nf(const Adapter& f) const {
  if (!f) return f;
  if (auto i = as<ad::Id>(f)) {
    auto ty = nf(i->ty);
    return ty == i->ty ? f : idAd(ty);
  }
  if (auto c = as<ad::Comp>(f)) return nfChain(c->chain);
  if (auto p = as<ad::Post>(f)) {
    auto s = nf(p->src);
    auto t = nf(p->tgt);
    return s == p->src && t == p->tgt ? f : post(p->name, s, t);
  }
  if (auto p = as<ad::Pi>(f)) {
    Adapter d, c;
    Type sc;
    {
      PathGuard g("dom");
      d = nf(p->dom);
    }
    {
      PathGuard g("cod");
      c = nf(p->cod);
      sc = nf(p->srcCod);
    }
    return collapse(piAd(d, c, sc));
  }
  if (auto s = as<ad::Sigma>(f)) {
    Adapter a, b;
    Type ts;
    {
      PathGuard g("fst");
      a = nf(s->fst);
    }
    {
      PathGuard g("snd");
      b = nf(s->snd);
      ts = nf(s->tgtSnd);
    }
    return collapse(sigmaAd(a, b, ts));
  }
  if (auto i = as<ad::Ind>(f)) {
    PathGuard g("ind");
    return collapse(indAd(i->desc, nfTransComps(i->comps)));
  }
  return f;
}

Adapter Normalizer::composeAd(const Adapter& g, const Adapter& f) const { return nfChain({f, g}); }

Adapter Normalizer::nfChain(const std::vector<Adapter>& chain) const {
  std::vector<Adapter> out;
  Adapter first;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    PathGuard pg("c" + std::to_string(i));
    Adapter g = nf(chain[i]);
    if (!first) first = g;
    std::vector<Adapter> parts;
    if (auto c = as<ad::Comp>(g)) {
      traceRule("ASSOC");
      parts = c->chain;
    } else {
      parts.push_back(g);
    }
    for (Adapter h : parts) {
      if (is<ad::Id>(h)) {
        traceRule(out.empty() ? "ID-RIGHT" : "ID-LEFT");
        continue;
      }
      while (h && opts_.fuse && !out.empty()) {
        Adapter fused = fuse(out.back(), h);
        if (!fused) break;
        traceRule("TY-TRANS-COMP");
        out.pop_back();
        h = is<ad::Id>(fused) ? nullptr : fused;
      }
      if (h) out.push_back(h);
    }
  }
  if (out.empty()) return first ? (is<ad::Id>(first) ? first : idAd(nf(adSrc(first)))) : nullptr;
  return compChain(out);
}

Adapter Normalizer::fuse(const Adapter& first, const Adapter& second) const {
  if (auto p1 = as<ad::Pi>(first)) {
    auto p2 = as<ad::Pi>(second);
    if (!p2) return nullptr;
    Env re;
    re.tms = {cast(var(0), shift(p2->dom, 1))};
    re.tmOff = 1;
    Adapter dom = nfChain({p2->dom, p1->dom});
    Adapter cod = nfChain({nf(subst(p1->cod, re)), p2->cod});
    return collapse(piAd(dom, cod, p1->srcCod));
  }
  if (auto s1 = as<ad::Sigma>(first)) {
    auto s2 = as<ad::Sigma>(second);
    if (!s2) return nullptr;
    Env re;
    re.tms = {cast(var(0), shift(s1->fst, 1))};
    re.tmOff = 1;
    Adapter a = nfChain({s1->fst, s2->fst});
    Adapter b = nfChain({s1->snd, nf(subst(s2->snd, re))});
    return collapse(sigmaAd(a, b, s2->tgtSnd));
  }
  if (auto i1 = as<ad::Ind>(first)) {
    auto i2 = as<ad::Ind>(second);
    if (!i2 || i2->desc != i1->desc) return nullptr;
    Ctx full = descOf(i1->desc).fullCtx();
    TransData mu = transData(full, i1->comps);
    TransData nu = transData(full, i2->comps);
    return collapse(indAd(i1->desc, nfTransComps(vcomp(nu, mu))));
  }
  return nullptr;
}

Adapter Normalizer::collapse(const Adapter& f) const {
  if (auto p = as<ad::Pi>(f)) {
    if (is<ad::Id>(p->dom) && is<ad::Id>(p->cod)) {
      traceRule("TY-TRANS-ID");
      return idAd(pi(as<ad::Id>(p->dom)->ty, p->srcCod));
    }
    return f;
  }
  if (auto s = as<ad::Sigma>(f)) {
    if (is<ad::Id>(s->fst) && is<ad::Id>(s->snd)) {
      traceRule("TY-TRANS-ID");
      return idAd(sigma(as<ad::Id>(s->fst)->ty, as<ad::Id>(s->snd)->ty));
    }
    return f;
  }
  if (auto i = as<ad::Ind>(f)) {
    for (const auto& c : i->comps)
      if (c.isTy() && !is<ad::Id>(c.ad)) return f;
    traceRule("TY-TRANS-ID");
    return idAd(nf(adSrc(f)));
  }
  return f;
}

// ---- conversion ----

bool Normalizer::conv(const Type& a, const Type& b) const { return convTyNf(nf(a), nf(b)); }
bool Normalizer::conv(const Term& a, const Term& b) const { return convTmNf(nf(a), nf(b)); }
bool Normalizer::conv(const Adapter& a, const Adapter& b) const { return convAdNf(nf(a), nf(b)); }

bool Normalizer::conv(const Inst& a, const Inst& b) const {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!conv(a[i], b[i])) return false;
  return true;
}

bool Normalizer::conv(const Telescope& a, const Telescope& b) const {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!conv(a[i], b[i])) return false;
  return true;
}

bool Normalizer::conv(const SubComps& a, const SubComps& b) const {
  return convCompsNf(nfComps(a), nfComps(b));
}

bool Normalizer::conv(const TransComps& a, const TransComps& b) const {
  return convTransCompsNf(nfTransComps(a), nfTransComps(b));
}

bool Normalizer::conv(const Sub& a, const Sub& b) const { return conv(a.comps, b.comps); }

bool Normalizer::convCompsNf(const SubComps& a, const SubComps& b) const {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].isTy() != b[i].isTy()) return false;
    if (a[i].isTy() ? !convTyNf(a[i].ty, b[i].ty) : !convTmNf(a[i].tm, b[i].tm)) return false;
  }
  return true;
}

bool Normalizer::convTransCompsNf(const TransComps& a, const TransComps& b) const {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].isTy() != b[i].isTy()) return false;
    if (a[i].isTy() ? !convAdNf(a[i].ad, b[i].ad) : !convTmNf(a[i].tm, b[i].tm)) return false;
  }
  return true;
}

bool Normalizer::convTyNf(const Type& a, const Type& b) const {
  if (a == b) return true;
  if (!a || !b || a->v.index() != b->v.index()) return false;
  if (auto x = as<ty::Var>(a)) {
    auto y = as<ty::Var>(b);
    if (x->index != y->index || x->inst.size() != y->inst.size()) return false;
    for (std::size_t i = 0; i < x->inst.size(); ++i)
      if (!convTmNf(x->inst[i], y->inst[i])) return false;
    return true;
  }
  if (auto x = as<ty::Pi>(a)) {
    auto y = as<ty::Pi>(b);
    return convTyNf(x->dom, y->dom) && convTyNf(x->cod, y->cod);
  }
  if (auto x = as<ty::Sigma>(a)) {
    auto y = as<ty::Sigma>(b);
    return convTyNf(x->fst, y->fst) && convTyNf(x->snd, y->snd);
  }
  if (auto x = as<ty::Ind>(a)) {
    auto y = as<ty::Ind>(b);
    if (x->desc != y->desc || !convCompsNf(x->params, y->params)) return false;
    if (x->indices.size() != y->indices.size()) return false;
    for (std::size_t i = 0; i < x->indices.size(); ++i)
      if (!convTmNf(x->indices[i], y->indices[i])) return false;
    return true;
  }
  return as<ty::Base>(a)->name == as<ty::Base>(b)->name;
}

namespace {
bool isPiShaped(const Term& t) {
  if (is<tm::Lam>(t)) return true;
  auto c = as<tm::Cast>(t);
  return c && is<ad::Pi>(c->ad);
}
bool isSigmaShaped(const Term& t) {
  if (is<tm::Pair>(t)) return true;
  auto c = as<tm::Cast>(t);
  return c && is<ad::Sigma>(c->ad);
}
}  // namespace

bool Normalizer::convTmNf(const Term& a, const Term& b) const {
  if (a == b) return true;
  if (!a || !b) return false;
  if (isPiShaped(a) || isPiShaped(b)) {
    auto la = as<tm::Lam>(a);
    auto lb = as<tm::Lam>(b);
    if (la && lb) return convTmNf(la->body, lb->body);
    traceRule("ETA-PI");
    return convTmNf(apply(shift(a, 1), var(0)), apply(shift(b, 1), var(0)));
  }
  if (isSigmaShaped(a) || isSigmaShaped(b)) {
    traceRule("ETA-SIGMA");
    return convTmNf(proj1(a), proj1(b)) && convTmNf(proj2(a), proj2(b));
  }
  if (a->v.index() != b->v.index()) return false;
  if (auto x = as<tm::Var>(a)) return x->index == as<tm::Var>(b)->index;
  if (auto x = as<tm::App>(a)) {
    auto y = as<tm::App>(b);
    return convTmNf(x->fn, y->fn) && convTmNf(x->arg, y->arg);
  }
  if (auto x = as<tm::Fst>(a)) return convTmNf(x->p, as<tm::Fst>(b)->p);
  if (auto x = as<tm::Snd>(a)) return convTmNf(x->p, as<tm::Snd>(b)->p);
  if (auto x = as<tm::Cast>(a)) {
    auto y = as<tm::Cast>(b);
    return convTmNf(x->tm, y->tm) && convAdNf(x->ad, y->ad);
  }
  if (auto x = as<tm::Constr>(a)) {
    auto y = as<tm::Constr>(b);
    if (x->desc != y->desc || x->con != y->con || !convCompsNf(x->params, y->params)) return false;
    if (x->args.size() != y->args.size()) return false;
    for (std::size_t i = 0; i < x->args.size(); ++i)
      if (!convTmNf(x->args[i], y->args[i])) return false;
    return true;
  }
  return false;
}

bool Normalizer::convAdNf(const Adapter& a, const Adapter& b) const {
  if (a == b) return true;
  if (!a || !b || a->v.index() != b->v.index()) return false;
  if (auto x = as<ad::Id>(a)) return convTyNf(x->ty, as<ad::Id>(b)->ty);
  if (auto x = as<ad::Comp>(a)) {
    auto y = as<ad::Comp>(b);
    if (x->chain.size() != y->chain.size()) return false;
    for (std::size_t i = 0; i < x->chain.size(); ++i)
      if (!convAdNf(x->chain[i], y->chain[i])) return false;
    return true;
  }
  if (auto x = as<ad::Post>(a)) {
    auto y = as<ad::Post>(b);
    return x->name == y->name && convTyNf(x->src, y->src) && convTyNf(x->tgt, y->tgt);
  }
  if (auto x = as<ad::Pi>(a)) {
    auto y = as<ad::Pi>(b);
    return convAdNf(x->dom, y->dom) && convAdNf(x->cod, y->cod);
  }
  if (auto x = as<ad::Sigma>(a)) {
    auto y = as<ad::Sigma>(b);
    return convAdNf(x->fst, y->fst) && convAdNf(x->snd, y->snd);
  }
  if (auto x = as<ad::Ind>(a)) {
    auto y = as<ad::Ind>(b);
    return x->desc == y->desc && convTransCompsNf(x->comps, y->comps);
  }
  return false;
}

}  // namespace adaptt
