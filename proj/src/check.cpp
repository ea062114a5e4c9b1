#include "adaptt/check.hpp"

#include "adaptt/desc_table.hpp"
#include "adaptt/inductive.hpp"
#include "adaptt/pretty.hpp"
#include "adaptt/subst.hpp"

namespace adaptt {

std::string Diagnostic::str() const {
  std::string file = span.file.empty() ? "<input>" : span.file;
  std::string x = expected.empty() ? message : expected;
  std::string y = got.empty() ? "-" : got;
  return "ERROR " + code + " " + file + ":" + std::to_string(span.line) + ":" + std::to_string(span.col) +
         " expected " + x + " got " + y;
}

Type weakenFrom(const Ctx& g, std::size_t p, const Type& a) {
  int tm = g.tmCountFrom(p);
  int ty = g.tyCountFrom(p);
  if (tm == 0 && ty == 0) return a;
  return subst(a, Env::shift(tm, ty));
}

Telescope weakenTelFrom(const Ctx& g, std::size_t p, const Telescope& tel) {
  int tm = g.tmCountFrom(p);
  int ty = g.tyCountFrom(p);
  if (tm == 0 && ty == 0) return tel;
  return substTel(tel, Env::shift(tm, ty));
}

// Keeps the node on the span stack and gives kernel errors raised below it a
// position.
struct Checker::Frame {
  Checker& c;
  Frame(Checker& ch, const void* node) : c(ch) { c.stack_.push_back(node); }
  ~Frame() { c.stack_.pop_back(); }
  Frame(const Frame&) = delete;
  Frame& operator=(const Frame&) = delete;

  template <class F>
  auto run(F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const CheckError&) {
      throw;
    } catch (const KernelError& e) {
      c.fail(e.code, e.what());
    }
  }
};

void Checker::fail(const std::string& code, const std::string& msg, const std::string& expected,
                   const std::string& got) {
  Diagnostic d{code, msg, {}, expected, got};
  if (spans_) {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
      auto s = spans_->find(*it);
      if (s != spans_->end()) {
        d.span = s->second;
        break;
      }
    }
  }
  throw CheckError(std::move(d));
}

void Checker::expectConv(const Ctx& g, const Type& want, const Type& got, const std::string& what) {
  if (n_.conv(want, got)) return;
  fail("ClassifierMismatch", what, showType(g, n_.nf(want)), showType(g, n_.nf(got)));
}

void Checker::checkCtx(const Ctx& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& e = g[i];
    Ctx p = g.prefix(i);
    if (e.isTy)
      checkTel(dualize(p, e.telDir), e.tel);
    else
      checkTy(dualize(p, e.dir), e.ty);
  }
}

void Checker::checkTel(const Ctx& g, const Telescope& tel) {
  Ctx c = g;
  for (std::size_t i = 0; i < tel.size(); ++i) {
    checkTy(c, tel[i]);
    c = c.extTm(Dir::Pos, tel[i]);
  }
}

void Checker::checkInst(const Ctx& g, const Inst& in, const Telescope& tel) {
  if (in.size() != tel.size())
    fail("ArityMismatch", "instantiation length", std::to_string(tel.size()) + " arguments",
         std::to_string(in.size()) + " arguments");
  for (std::size_t k = 0; k < in.size(); ++k) {
    Inst before(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(k));
    checkTmAgainst(g, in[k], subst(tel[k], Env::top(before)));
  }
}

void Checker::checkTy(const Ctx& g, const Type& a) {
  Frame fr(*this, a.get());
  fr.run([&] {
    if (is<ty::Base>(a)) return;
    if (auto v = as<ty::Var>(a)) {
      int p = g.tyPos(v->index);
      if (p < 0) fail("UnboundVariable", "type variable", "a bound type variable", "index " + std::to_string(v->index));
      const auto& e = g[p];
      if (e.dir != Dir::Pos)
        fail("VarianceViolation", "type variable " + e.name, "a covariant variable", "contravariant " + e.name);
      Telescope tel = weakenTelFrom(g, p, e.tel);
      checkInst(dualize(g, e.telDir), v->inst, tel);
      return;
    }
    if (auto p = as<ty::Pi>(a)) {
      checkTy(dualize(g), p->dom);
      checkTy(g.extTm(Dir::Neg, p->dom), p->cod);
      return;
    }
    if (auto s = as<ty::Sigma>(a)) {
      checkTy(g, s->fst);
      checkTy(g.extTm(Dir::Pos, s->fst), s->snd);
      return;
    }
    auto i = as<ty::Ind>(a);
    const IndDesc& d = descOf(i->desc);
    checkSubComps(g, i->params, d.params);
    checkInst(g, i->indices, substTel(d.indices, Env::of(i->params, d.params)));
  });
}

void Checker::checkTmAgainst(const Ctx& g, const Term& t, const Type& a) {
  Type got = checkTm(g, t);
  Frame fr(*this, t.get());
  expectConv(g, a, got, "term type");
}

Type Checker::checkTm(const Ctx& g, const Term& t) {
  Frame fr(*this, t.get());
  return fr.run([&]() -> Type {
    if (auto v = as<tm::Var>(t)) {
      int p = g.tmPos(v->index);
      if (p < 0) fail("UnboundVariable", "term variable", "a bound variable", "index " + std::to_string(v->index));
      const auto& e = g[p];
      if (e.dir != Dir::Pos)
        fail("VarianceViolation", "variable " + e.name, "a covariant variable", "contravariant " + e.name);
      return weakenFrom(g, p, e.ty);
    }
    if (auto l = as<tm::Lam>(t)) {
      checkTy(dualize(g), l->dom);
      Type b = checkTm(g.extTm(Dir::Neg, l->dom), l->body);
      return pi(l->dom, b);
    }
    if (auto a = as<tm::App>(t)) {
      Type f = n_.nf(checkTm(g, a->fn));
      auto p = as<ty::Pi>(f);
      if (!p) fail("ClassifierMismatch", "application head", "a function type", showType(g, f));
      checkTmAgainst(dualize(g), a->arg, p->dom);
      return n_.nf(inst1(p->cod, a->arg));
    }
    if (auto p = as<tm::Pair>(t)) {
      if (!p->fam) fail("ClassifierMismatch", "pair", "an annotated pair", "no family");
      Type a = checkTm(g, p->fst);
      checkTy(g.extTm(Dir::Pos, a), p->fam);
      checkTmAgainst(g, p->snd, inst1(p->fam, p->fst));
      return sigma(a, p->fam);
    }
    if (auto f = as<tm::Fst>(t)) {
      Type s = n_.nf(checkTm(g, f->p));
      auto sg = as<ty::Sigma>(s);
      if (!sg) fail("ClassifierMismatch", "projection", "a pair type", showType(g, s));
      return sg->fst;
    }
    if (auto f = as<tm::Snd>(t)) {
      Type s = n_.nf(checkTm(g, f->p));
      auto sg = as<ty::Sigma>(s);
      if (!sg) fail("ClassifierMismatch", "projection", "a pair type", showType(g, s));
      return n_.nf(inst1(sg->snd, fst(f->p)));
    }
    if (auto c = as<tm::Cast>(t)) {
      auto [src, tgt] = checkAd(g, c->ad);
      checkTmAgainst(g, c->tm, src);
      return tgt;
    }
    auto k = as<tm::Constr>(t);
    const IndDesc& d = descOf(k->desc);
    if (k->con < 0 || k->con >= static_cast<int>(d.cons.size()))
      fail("UnboundVariable", "constructor", "a constructor of " + d.name, std::to_string(k->con));
    checkSubComps(g, k->params, d.params);
    checkInst(g, k->args, substTel(conDataTied(k->desc, k->con), Env::of(k->params, d.params)));
    return constrResultType(*k);
  });
}

namespace {
// x⟨f↑⟩ in place of the innermost variable.
Env castTop(const Adapter& f) {
  Env e;
  e.tms.push_back(cast(var(0), shift(f, 1)));
  e.tmOff = 1;
  return e;
}
}  // namespace

std::pair<Type, Type> Checker::checkAd(const Ctx& g, const Adapter& f) {
  Frame fr(*this, f.get());
  return fr.run([&]() -> std::pair<Type, Type> {
    if (auto i = as<ad::Id>(f)) {
      checkTy(g, i->ty);
      return {i->ty, i->ty};
    }
    if (auto c = as<ad::Comp>(f)) {
      auto [s, t] = checkAd(g, c->chain.front());
      for (std::size_t k = 1; k < c->chain.size(); ++k) {
        auto [s2, t2] = checkAd(g, c->chain[k]);
        Frame inner(*this, c->chain[k].get());
        expectConv(g, t, s2, "composable adapters");
        t = t2;
      }
      return {s, t};
    }
    if (auto p = as<ad::Post>(f)) {
      checkTy(g, p->src);
      checkTy(g, p->tgt);
      return {p->src, p->tgt};
    }
    if (auto p = as<ad::Pi>(f)) {
      auto [a2, a] = checkAd(dualize(g), p->dom);
      auto [bs, bt] = checkAd(g.extTm(Dir::Neg, a2), p->cod);
      checkTy(g.extTm(Dir::Neg, a), p->srcCod);
      expectConv(g.extTm(Dir::Neg, a2), subst(p->srcCod, castTop(p->dom)), bs, "codomain adapter source");
      return {pi(a, p->srcCod), pi(a2, bt)};
    }
    if (auto s = as<ad::Sigma>(f)) {
      auto [a, a2] = checkAd(g, s->fst);
      auto [bs, bt] = checkAd(g.extTm(Dir::Pos, a), s->snd);
      checkTy(g.extTm(Dir::Pos, a2), s->tgtSnd);
      expectConv(g.extTm(Dir::Pos, a), subst(s->tgtSnd, castTop(s->fst)), bt, "second adapter target");
      return {sigma(a, bs), sigma(a2, s->tgtSnd)};
    }
    auto i = as<ad::Ind>(f);
    const IndDesc& d = descOf(i->desc);
    TransData m = checkTransComps(g, i->comps, d.fullCtx());
    const std::size_t np = d.params.size();
    auto endpoint = [&](const SubComps& side) {
      SubComps ps(side.begin(), side.begin() + static_cast<std::ptrdiff_t>(np));
      Inst is;
      for (std::size_t k = np; k < side.size(); ++k) is.push_back(side[k].tm);
      return ind(i->desc, ps, is);
    };
    return {endpoint(m.sigma), endpoint(m.tau)};
  });
}

void Checker::checkSubComps(const Ctx& g, const SubComps& s, const Ctx& delta) {
  if (s.size() != delta.size())
    fail("ArityMismatch", "substitution length", std::to_string(delta.size()) + " components",
         std::to_string(s.size()) + " components");
  for (std::size_t j = 0; j < s.size(); ++j) {
    const auto& e = delta[j];
    const auto& c = s[j];
    if (e.isTy != c.isTy())
      fail("ClassifierMismatch", "substitution component", e.isTy ? "a type" : "a term", e.isTy ? "a term" : "a type");
    SubComps before(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(j));
    Env env = Env::of(before, delta.prefix(j));
    if (e.isTy) {
      Telescope tel = substTel(e.tel, env);
      checkTy(extendCtxByTel(dualize(g, e.dir), e.telDir * e.dir, tel), c.ty);
    } else {
      checkTmAgainst(dualize(g, e.dir), c.tm, subst(e.ty, env));
    }
  }
}

void Checker::checkSub(const Sub& s) {
  checkCtx(s.src);
  checkCtx(s.tgt);
  checkSubComps(s.src, s.comps, s.tgt);
}

TransData Checker::checkTransComps(const Ctx& g, const TransComps& comps, const Ctx& delta) {
  if (comps.size() != delta.size())
    fail("ArityMismatch", "transformation length", std::to_string(delta.size()) + " components",
         std::to_string(comps.size()) + " components");
  TransData m;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    const auto& e = delta[j];
    const auto& c = comps[j];
    if (e.isTy != c.isTy())
      fail("ClassifierMismatch", "transformation component", e.isTy ? "an adapter" : "a term",
           e.isTy ? "a term" : "an adapter");
    if (!e.isTy) {
      const auto& side = e.dir == Dir::Pos ? m.sigma : m.tau;
      checkTmAgainst(dualize(g, e.dir), c.tm, subst(e.ty, Env::of(side, m.delta)));
      m = extendTm(m, e.dir, e.ty, c.tm);
      m.delta.entries.back() = e;
      continue;
    }
    const Dir dd = e.telDir * e.dir;
    Ctx gd = dualize(g, e.dir);
    Telescope thS = substTel(e.tel, Env::of(m.sigma, m.delta));
    Telescope thT = substTel(e.tel, Env::of(m.tau, m.delta));
    checkTy(extendCtxByTel(gd, dd, thS), c.srcTy);
    checkTy(extendCtxByTel(gd, dd, thT), c.tgtTy);

    CompSignature sig = compSignature(m, e, c.srcTy, c.tgtTy);
    Ctx fctx = extendCtxByTel(gd, sig.ext, sig.tel);
    const Type& wantS = sig.src;
    const Type& wantT = sig.tgt;
    auto [s, t] = checkAd(fctx, c.ad);
    Frame fr(*this, c.ad.get());
    expectConv(fctx, wantS, s, "component adapter source");
    expectConv(fctx, wantT, t, "component adapter target");
    m.delta.entries.push_back(e);
    m.comps.push_back(c);
    m.sigma.push_back(SubComp::type(c.srcTy));
    m.tau.push_back(SubComp::type(c.tgtTy));
  }
  return m;
}

void Checker::checkTrans(const Trans& t) {
  checkCtx(t.src);
  checkCtx(t.tgt);
  checkTransComps(t.src, t.comps, t.tgt);
}

Telescope Checker::checkTelAd(const Ctx& g, const TelAdapter& ta, const Telescope& src) {
  if (ta.size() != src.size())
    fail("ArityMismatch", "telescope adapter length", std::to_string(src.size()), std::to_string(ta.size()));
  Telescope out;
  Ctx c = g;
  for (std::size_t k = 0; k < ta.size(); ++k) {
    auto [s, t] = checkAd(c, ta[k]);
    expectConv(c, src[k], s, "telescope adapter source");
    out.push_back(t);
    c = c.extTm(Dir::Pos, src[k]);
  }
  return out;
}

void Checker::checkDesc(const IndDesc& d) {
  try {
    checkCtx(d.params);
    checkTel(d.params, d.indices);
    Ctx self = d.params.extTy(Dir::Pos, Dir::Pos, d.indices, d.name);
    for (const auto& c : d.cons) {
      checkTel(d.params, c.nrec);
      Ctx nr = extendCtxByTel(d.params, Dir::Pos, c.nrec);
      const int nn = static_cast<int>(c.nrec.size());
      for (const auto& r : c.rec) {
        checkTel(dualize(nr), r.arit);
        Ctx ar = extendCtxByTel(nr, Dir::Neg, r.arit);
        checkInst(ar, r.rind, substTel(d.indices, Env::shift(nn + static_cast<int>(r.arit.size()))));
      }
      checkInst(nr, c.ind, substTel(d.indices, Env::shift(nn)));
      checkTel(self, elabConData(d, c));
    }
  } catch (const CheckError& e) {
    Diagnostic diag = e.diag;
    diag.message = d.name + ": " + diag.message;
    diag.code = diag.code == "VarianceViolation" ? "PositivityError" : "IllFormedDescription";
    throw CheckError(std::move(diag));
  }
}

void checkDesc(const IndDesc& d) {
  Checker c;
  c.checkDesc(d);
}

}  // namespace adaptt
