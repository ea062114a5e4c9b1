#include <functional>
#include <map>

#include "adaptt/check.hpp"
#include "adaptt/desc_table.hpp"
#include "adaptt/functor.hpp"
#include "adaptt/inductive.hpp"
#include "adaptt/pretty.hpp"
#include "adaptt/subst.hpp"
#include "adaptt/surface.hpp"

namespace adaptt {

using Hint = std::function<Type()>;

struct Elaborator::Impl {
  std::string file;
  CoreProgram* prog;
  Normalizer norm;
  std::set<std::string> bases;
  std::map<std::string, std::pair<Type, Type>> posts;
  struct DefInfo {
    Sort sort;
    Term tm;
    Type ty;
    Adapter ad;
  };
  std::map<std::string, DefInfo> defs;
  std::set<std::string> declared;

  Impl(std::string f, CoreProgram* p) : file(std::move(f)), prog(p) {}

  [[noreturn]] void fail(const std::string& code, const Span& s, const std::string& expected,
                         const std::string& got) {
    throw CheckError(Diagnostic{code, "expected " + expected + " got " + got, s, expected, got});
  }

  template <class P>
  P mark(P node, const ExprP& e) {
    if (node && e) {
      prog->spans[node.get()] = e->span;
      prog->pins.push_back(node);
    }
    return node;
  }

  Checker checker() { return Checker(norm, &prog->spans); }

  // ---- scope ----

  static int lookup(const Ctx& g, const std::string& name) {
    if (name == "_" || name.empty()) return -1;
    for (int p = static_cast<int>(g.size()) - 1; p >= 0; --p)
      if (g[p].name == name) return p;
    return -1;
  }

  static std::string kindName(const Expr& e) {
    switch (e.kind) {
      case Expr::Num: return "a numeral";
      case Expr::Arrow: return "a function type";
      case Expr::Prod: return "a pair type";
      case Expr::Fun: return "a function";
      case Expr::Cast: return "a cast";
      case Expr::Comp: return "a composite adapter";
      case Expr::IndSpine:
      case Expr::PiSpine:
      case Expr::SigmaSpine: return "a structural adapter";
      default: return "'" + e.name + "'";
    }
  }

  // Head name and arguments of a Name or App node.
  std::pair<std::string, std::vector<ExprP>> spine(const ExprP& e) {
    if (e->kind == Expr::Name) return {e->name, {}};
    if (e->kind == Expr::App && e->args[0]->kind == Expr::Name)
      return {e->args[0]->name, std::vector<ExprP>(e->args.begin() + 1, e->args.end())};
    return {{}, {}};
  }

  // Constructor reference, qualified `D.c` or unique unqualified `c`.
  std::pair<const IndDesc*, int> findCon(const std::string& name, const Span& s) {
    auto& table = DescTable::global();
    if (auto dot = name.find('.'); dot != std::string::npos) {
      const IndDesc* d = table.find(name.substr(0, dot));
      if (!d) return {nullptr, -1};
      int c = d->conIndex(name.substr(dot + 1));
      return c < 0 ? std::pair<const IndDesc*, int>{nullptr, -1} : std::pair{d, c};
    }
    std::pair<const IndDesc*, int> found{nullptr, -1};
    for (const auto& dn : table.names()) {
      const IndDesc& d = table.get(dn);
      int c = d.conIndex(name);
      if (c < 0) continue;
      if (found.first) fail("UnboundVariable", s, "an unambiguous constructor", name + " (qualify it)");
      found = {&d, c};
    }
    return found;
  }

  Sort guessSort(const Ctx& g, const ExprP& e) {
    switch (e->kind) {
      case Expr::Num:
      case Expr::Cast: return Sort::Term;
      case Expr::Fun:
        for (const auto& b : e->binders)
          if (!b.type) fail("ClassifierMismatch", e->span, "annotated binders", "a bare binder");
        return Sort::Term;
      case Expr::Arrow:
      case Expr::Prod: return Sort::Type;
      case Expr::Comp:
      case Expr::IndSpine:
      case Expr::PiSpine:
      case Expr::SigmaSpine: return Sort::Adapter;
      default: break;
    }
    auto [h, args] = spine(e);
    if (h.empty()) fail("ClassifierMismatch", e->span, "a named head", kindName(*e));
    if (h == "id") return Sort::Adapter;
    if (h == "fst" || h == "snd" || h == "pair") return Sort::Term;
    if (int p = lookup(g, h); p >= 0) return g[p].isTy ? Sort::Type : Sort::Term;
    if (bases.count(h)) return Sort::Type;
    if (posts.count(h)) return Sort::Adapter;
    if (auto it = defs.find(h); it != defs.end()) return it->second.sort;
    if (DescTable::global().find(h)) return Sort::Type;
    if (findCon(h, e->span).first) return Sort::Term;
    fail("UnboundVariable", e->span, "a bound name", h);
  }

  // ---- types ----

  Type elabTy(const Ctx& g, const ExprP& e) { return mark(elabTyRaw(g, e), e); }

  Type elabTyRaw(const Ctx& g, const ExprP& e) {
    if (e->kind == Expr::Arrow || e->kind == Expr::Prod) {
      Type a = elabTy(g, e->args[0]);
      std::string x = e->name.empty() ? "_" : e->name;
      if (e->kind == Expr::Arrow) return pi(a, elabTy(g.extTm(Dir::Neg, a, x), e->args[1]));
      return sigma(a, elabTy(g.extTm(Dir::Pos, a, x), e->args[1]));
    }
    auto [h, args] = spine(e);
    if (h.empty()) fail("ClassifierMismatch", e->span, "a type", kindName(*e));
    if (int p = lookup(g, h); p >= 0) {
      const auto& en = g[p];
      if (!en.isTy) fail("ClassifierMismatch", e->span, "a type", "term variable " + h);
      if (args.size() != en.tel.size())
        fail("ArityMismatch", e->span, std::to_string(en.tel.size()) + " arguments to " + h,
             std::to_string(args.size()));
      Inst inst;
      for (const auto& a : args) inst.push_back(elabTm(g, a));
      return tyVar(g.tyCountFrom(p + 1), inst);
    }
    if (bases.count(h)) {
      if (!args.empty()) fail("ArityMismatch", e->span, "no arguments to " + h, std::to_string(args.size()));
      return base(h);
    }
    if (auto it = defs.find(h); it != defs.end()) {
      if (it->second.sort != Sort::Type) fail("ClassifierMismatch", e->span, "a type", h);
      if (!args.empty()) fail("ArityMismatch", e->span, "no arguments to " + h, std::to_string(args.size()));
      return it->second.ty;
    }
    if (const IndDesc* d = DescTable::global().find(h)) {
      const std::size_t np = d->params.size();
      if (args.size() != np + d->indices.size())
        fail("ArityMismatch", e->span, std::to_string(np + d->indices.size()) + " arguments to " + h,
             std::to_string(args.size()));
      SubComps ps = elabParams(g, d->params, {args.begin(), args.begin() + static_cast<std::ptrdiff_t>(np)});
      Inst is;
      for (std::size_t k = np; k < args.size(); ++k) is.push_back(elabTm(g, args[k]));
      return ind(h, ps, is);
    }
    if (h == "Type") fail("ClassifierMismatch", e->span, "a type", "'Type'");
    if (guessSortQuiet(g, e)) fail("ClassifierMismatch", e->span, "a type", h);
    fail("UnboundVariable", e->span, "a bound name", h);
  }

  bool guessSortQuiet(const Ctx& g, const ExprP& e) {
    try {
      guessSort(g, e);
      return true;
    } catch (const CheckError&) {
      return false;
    }
  }

  // A type family over n term variables: `fun x.. => T`, a bare type variable
  // of matching arity, or a plain type when n is 0.
  Type elabFamily(const Ctx& g, Dir ext, const Telescope& tel, const ExprP& e) {
    const std::size_t n = tel.size();
    if (n == 0) return elabTy(g, e);
    if (e->kind == Expr::Fun) {
      if (e->binders.size() != n)
        fail("ArityMismatch", e->span, "a family of " + std::to_string(n) + " arguments",
             std::to_string(e->binders.size()) + " binders");
      std::vector<std::string> bn;
      for (const auto& b : e->binders) bn.push_back(b.name);
      return elabTy(extendCtxByTel(g, ext, tel, bn), e->body);
    }
    if (e->kind == Expr::Name) {
      int p = lookup(g, e->name);
      if (p >= 0 && g[p].isTy && g[p].tel.size() == n) return mark(tyVar(g.tyCountFrom(p + 1), vinst(n)), e);
    }
    fail("ArityMismatch", e->span, "a family of " + std::to_string(n) + " arguments", kindName(*e));
  }

  SubComps elabParams(const Ctx& g, const Ctx& params, const std::vector<ExprP>& args) {
    SubComps out;
    for (std::size_t j = 0; j < params.size(); ++j) {
      const auto& en = params[j];
      if (en.isTy) {
        Telescope tel = substTel(en.tel, Env::of(out, params.prefix(j)));
        out.push_back(SubComp::type(elabFamily(g, en.telDir * en.dir, tel, args[j])));
      } else {
        out.push_back(SubComp::term(elabTm(g, args[j])));
      }
    }
    return out;
  }

  // ---- terms ----

  Term elabTm(const Ctx& g, const ExprP& e) { return mark(elabTmRaw(g, e), e); }

  Type infer(const Ctx& g, const Term& t) { return norm.nf(checker().checkTm(g, t)); }

  Term applyRest(const Ctx& g, Term head, const std::vector<ExprP>& args, std::size_t from) {
    for (std::size_t k = from; k < args.size(); ++k) head = app(head, elabTm(g, args[k]));
    return head;
  }

  Term elabTmRaw(const Ctx& g, const ExprP& e) {
    switch (e->kind) {
      case Expr::Num: return natLit(e->num);
      case Expr::Fun: {
        Ctx c = g;
        std::vector<Type> doms;
        for (const auto& b : e->binders) {
          if (!b.type) fail("ClassifierMismatch", b.span, "an annotated binder", b.name);
          Type a = elabTy(c, b.type);
          doms.push_back(a);
          c = c.extTm(Dir::Neg, a, b.name);
        }
        Term body = elabTm(c, e->body);
        for (auto it = doms.rbegin(); it != doms.rend(); ++it) body = lam(*it, body);
        return body;
      }
      case Expr::Cast: {
        Term t = elabTm(g, e->args[0]);
        Adapter f = elabAd(g, e->args[1], [&] { return infer(g, t); });
        return cast(t, f);
      }
      case Expr::Name:
      case Expr::App: break;
      default: fail("ClassifierMismatch", e->span, "a term", kindName(*e));
    }
    auto [h, args] = spine(e);
    if (h.empty()) {
      Term f = elabTm(g, e->args[0]);
      std::vector<ExprP> rest(e->args.begin() + 1, e->args.end());
      return applyRest(g, f, rest, 0);
    }
    if (int p = lookup(g, h); p >= 0) {
      if (g[p].isTy) fail("ClassifierMismatch", e->span, "a term", "type variable " + h);
      return applyRest(g, var(g.tmCountFrom(p + 1)), args, 0);
    }
    if (h == "fst" || h == "snd") {
      if (args.empty()) fail("ArityMismatch", e->span, "an argument to " + h, "none");
      Term p = elabTm(g, args[0]);
      return applyRest(g, h == "fst" ? fst(p) : snd(p), args, 1);
    }
    if (h == "pair") {
      if (args.size() < 3) fail("ArityMismatch", e->span, "3 arguments to pair", std::to_string(args.size()));
      Term a = elabTm(g, args[1]);
      Type fam;
      if (args[0]->kind == Expr::Fun) {
        if (args[0]->binders.size() != 1) fail("ArityMismatch", args[0]->span, "one binder", "several");
        fam = elabTy(g.extTm(Dir::Pos, infer(g, a), args[0]->binders[0].name), args[0]->body);
      } else {
        fam = shift(elabTy(g, args[0]), 1);
      }
      Term b = elabTm(g, args[2]);
      return applyRest(g, pair(a, b, fam), args, 3);
    }
    if (auto it = defs.find(h); it != defs.end()) {
      if (it->second.sort != Sort::Term) fail("ClassifierMismatch", e->span, "a term", h);
      return applyRest(g, it->second.tm, args, 0);
    }
    auto [d, c] = findCon(h, e->span);
    if (d) {
      const std::size_t np = d->params.size();
      const Telescope& data = conDataTied(d->name, c);
      if (args.size() != np + data.size())
        fail("ArityMismatch", e->span, std::to_string(np + data.size()) + " arguments to " + h,
             std::to_string(args.size()));
      SubComps ps = elabParams(g, d->params, {args.begin(), args.begin() + static_cast<std::ptrdiff_t>(np)});
      Inst as;
      for (std::size_t k = np; k < args.size(); ++k) as.push_back(elabTm(g, args[k]));
      return constr(d->name, c, ps, as);
    }
    if (bases.count(h) || posts.count(h) || DescTable::global().find(h))
      fail("ClassifierMismatch", e->span, "a term", h);
    fail("UnboundVariable", e->span, "a bound name", h);
  }

  // ---- adapters ----

  Adapter elabAd(const Ctx& g, const ExprP& e, const Hint& hint) { return mark(elabAdRaw(g, e, hint), e); }

  // Elaborates the body of a one-binder element, binding `x : a` in direction d.
  template <class F>
  auto underOne(const Ctx& g, Dir d, const Type& a, const ExprP& e, F&& f) {
    if (e->kind == Expr::Fun) {
      if (e->binders.size() != 1) fail("ArityMismatch", e->span, "one binder", std::to_string(e->binders.size()));
      return f(g.extTm(d, a, e->binders[0].name), e->body);
    }
    return f(g.extTm(d, a, "_"), e);
  }

  Adapter elabAdRaw(const Ctx& g, const ExprP& e, const Hint& hint) {
    switch (e->kind) {
      case Expr::Comp: {
        std::vector<Adapter> chain;
        Hint h = hint;
        for (auto it = e->args.rbegin(); it != e->args.rend(); ++it) {
          Adapter f = elabAd(g, *it, h);
          chain.push_back(f);
          h = [f] { return adTgt(f); };
        }
        return compChain(chain);
      }
      case Expr::PiSpine: {
        Adapter dom = elabAd(dualize(g), e->spine[0].e, nullptr);
        Type a2 = adSrc(dom);
        Type a = adTgt(dom);
        Adapter cod = underOne(g, Dir::Neg, a2, e->spine[1].e,
                               [&](const Ctx& c, const ExprP& b) { return elabAd(c, b, nullptr); });
        Type srcCod;
        if (e->annot) {
          srcCod = underOne(g, Dir::Neg, a, e->annot, [&](const Ctx& c, const ExprP& b) { return elabTy(c, b); });
        } else {
          Type h = hint ? norm.nf(hint()) : nullptr;
          auto p = h ? as<ty::Pi>(h) : nullptr;
          if (!p) fail("ClassifierMismatch", e->span, "a source codomain annotation", "none");
          srcCod = p->cod;
        }
        return piAd(dom, cod, srcCod);
      }
      case Expr::SigmaSpine: {
        Adapter fa = elabAd(g, e->spine[0].e, nullptr);
        Type a = adSrc(fa);
        Type a2 = adTgt(fa);
        Adapter sa = underOne(g, Dir::Pos, a, e->spine[1].e,
                              [&](const Ctx& c, const ExprP& b) { return elabAd(c, b, nullptr); });
        if (!e->annot) fail("ClassifierMismatch", e->span, "a target family annotation", "none");
        Type tgt = underOne(g, Dir::Pos, a2, e->annot, [&](const Ctx& c, const ExprP& b) { return elabTy(c, b); });
        return sigmaAd(fa, sa, tgt);
      }
      case Expr::IndSpine: return elabIndAd(g, e);
      case Expr::Name:
      case Expr::App: break;
      default: fail("ClassifierMismatch", e->span, "an adapter", kindName(*e));
    }
    auto [h, args] = spine(e);
    if (h == "id") {
      if (args.size() == 1) return idAd(elabTy(g, args[0]));
      if (args.empty() && hint) return idAd(hint());
      fail("ArityMismatch", e->span, "id applied to a type", std::to_string(args.size()) + " arguments");
    }
    if (auto it = posts.find(h); it != posts.end()) {
      if (!args.empty()) fail("ArityMismatch", e->span, "no arguments to " + h, std::to_string(args.size()));
      return post(h, it->second.first, it->second.second);
    }
    if (auto it = defs.find(h); it != defs.end() && it->second.sort == Sort::Adapter) {
      if (!args.empty()) fail("ArityMismatch", e->span, "no arguments to " + h, std::to_string(args.size()));
      return it->second.ad;
    }
    if (h.empty()) fail("ClassifierMismatch", e->span, "an adapter", kindName(*e));
    if (guessSortQuiet(g, e)) fail("ClassifierMismatch", e->span, "an adapter", h);
    fail("UnboundVariable", e->span, "a bound name", h);
  }

  Adapter elabIndAd(const Ctx& g, const ExprP& e) {
    const IndDesc* d = DescTable::global().find(e->name);
    if (!d) fail("UnboundVariable", e->span, "a datatype", e->name);
    Ctx full = d->fullCtx();
    if (e->spine.size() != full.size())
      fail("ArityMismatch", e->span, std::to_string(full.size()) + " components for " + e->name,
           std::to_string(e->spine.size()));
    TransData m;
    for (std::size_t j = 0; j < full.size(); ++j) {
      const auto& en = full[j];
      const auto& el = e->spine[j];
      if (!en.isTy) {
        if (el.srcAnn) fail("ClassifierMismatch", el.srcAnn->span, "no annotation on a term component", "one");
        Term t = elabTm(g, el.e);
        m = extendTm(m, en.dir, en.ty, t);
        m.delta.entries.back() = en;
        continue;
      }
      const std::size_t n = en.tel.size();
      const Dir dd = en.telDir * en.dir;
      Ctx gd = dualize(g, en.dir);
      TransData md = en.dir == Dir::Neg ? dual(m) : m;
      Telescope ftel = substTel(en.tel, Env::of(dd == Dir::Pos ? md.sigma : md.tau, md.delta));
      std::vector<std::string> names;
      ExprP body = el.e;
      if (n > 0) {
        if (body->kind != Expr::Fun || body->binders.size() != n)
          fail("ArityMismatch", body->span, "fun with " + std::to_string(n) + " binders", kindName(*body));
        for (const auto& b : body->binders) names.push_back(b.name);
        body = body->body;
      }
      Adapter f = elabAd(extendCtxByTel(gd, dd, ftel, names), body, nullptr);
      Type srcTy, tgtTy;
      if (el.srcAnn) {
        srcTy = elabTy(extendCtxByTel(gd, dd, substTel(en.tel, Env::of(m.sigma, m.delta)), names), el.srcAnn);
        tgtTy = elabTy(extendCtxByTel(gd, dd, substTel(en.tel, Env::of(m.tau, m.delta)), names), el.tgtAnn);
      } else {
        if (n > 0) fail("ClassifierMismatch", body->span, "an endpoint annotation `: S => T`", "none");
        srcTy = en.dir == Dir::Pos ? adSrc(f) : adTgt(f);
        tgtTy = en.dir == Dir::Pos ? adTgt(f) : adSrc(f);
      }
      m.delta.entries.push_back(en);
      m.comps.push_back(TransComp::adapter(f, srcTy, tgtTy));
      m.sigma.push_back(SubComp::type(srcTy));
      m.tau.push_back(SubComp::type(tgtTy));
    }
    return indAd(d->name, m.comps);
  }

  // ---- hypotheses ----

  Ctx elabHyps(const std::vector<Hyp>& hyps, Ctx g = {}) {
    for (const auto& h : hyps) {
      if (h.isTy) {
        Ctx c = g;
        Telescope tel;
        std::vector<std::string> names;
        for (const auto& b : h.tel) {
          Type a = elabTy(c, b.type);
          tel.push_back(a);
          names.push_back(b.name);
          c = c.extTm(Dir::Pos, a, b.name);
        }
        g.entries.push_back(CtxEntry::tyVarE(h.neg ? Dir::Neg : Dir::Pos, h.telNeg ? Dir::Neg : Dir::Pos, tel,
                                             h.name, names));
      } else {
        g.entries.push_back(CtxEntry::tmVar(h.neg ? Dir::Neg : Dir::Pos, elabTy(g, h.type), h.name));
      }
    }
    return g;
  }

  // ---- declarations ----

  void claim(const std::string& name, const Span& s) {
    if (!declared.insert(name).second) fail("IllFormedDescription", s, "a fresh name", name + " (already declared)");
    if (isKeyword(name)) fail("ParseError", s, "an identifier", name);
  }

  // Conversion side-conditions of the classifiers.
  void expectTyConv(const Ctx& g, const Type& want, const Type& got, const Span& s) {
    if (!norm.conv(want, got)) fail("ClassifierMismatch", s, showType(g, norm.nf(want)), showType(g, norm.nf(got)));
  }

  void subject(CoreDecl& out, const Decl& d, const Ctx& g, const ExprP& e, Sort sort, bool second) {
    Checker ck = checker();
    if (sort == Sort::Type) {
      Type t = elabTy(g, e);
      ck.checkTy(g, t);
      (second ? out.ty2 : out.ty) = t;
    } else if (sort == Sort::Adapter) {
      Type s = d.src ? elabTy(g, d.src) : nullptr;
      Adapter f = elabAd(g, e, s ? Hint([s] { return s; }) : Hint());
      auto [fs, ft] = ck.checkAd(g, f);
      if (d.src) {
        Type t = elabTy(g, d.tgt);
        expectTyConv(g, s, fs, e->span);
        expectTyConv(g, t, ft, e->span);
        out.src = s;
        out.tgt = t;
      }
      (second ? out.ad2 : out.ad) = f;
    } else {
      Term t = elabTm(g, e);
      Type got = ck.checkTm(g, t);
      if (d.cls) {
        Type want = elabTy(g, d.cls);
        ck.checkTy(g, want);
        if (!norm.conv(want, got))
          fail("ClassifierMismatch", e->span, showType(g, norm.nf(want)), showType(g, norm.nf(got)));
        out.ty = want;
      }
      (second ? out.tm2 : out.tm) = t;
    }
  }

  static Sort clsSort(const Decl& d) {
    if (d.typeCls) return Sort::Type;
    if (d.src) return Sort::Adapter;
    return Sort::Term;
  }

  CoreDecl declare(const Decl& d) {
    CoreDecl out;
    out.kind = d.kind;
    out.name = d.name;
    out.span = d.span;
    switch (d.kind) {
      case Decl::BaseType:
        claim(d.name, d.span);
        bases.insert(d.name);
        break;
      case Decl::Postulate: {
        claim(d.name, d.span);
        out.src = elabTy({}, d.src);
        out.tgt = elabTy({}, d.tgt);
        checker().checkTy({}, out.src);
        checker().checkTy({}, out.tgt);
        posts[d.name] = {out.src, out.tgt};
        break;
      }
      case Decl::Data:
        claim(d.name, d.span);
        out.desc = elabData(d);
        break;
      case Decl::Def: {
        claim(d.name, d.span);
        out.sort = clsSort(d);
        subject(out, d, {}, d.lhs, out.sort, false);
        defs[d.name] = DefInfo{out.sort, out.tm, out.ty, out.ad};
        break;
      }
      case Decl::Check:
      case Decl::Assert: {
        out.ctx = elabHyps(d.hyps);
        checker().checkCtx(out.ctx);
        out.sort = clsSort(d);
        subject(out, d, out.ctx, d.lhs, out.sort, false);
        if (d.kind == Decl::Assert) {
          subject(out, d, out.ctx, d.rhs, out.sort, true);
          bool ok = out.sort == Sort::Term   ? norm.conv(out.tm, out.tm2)
                    : out.sort == Sort::Type ? norm.conv(out.ty, out.ty2)
                                             : norm.conv(out.ad, out.ad2);
          if (!ok) {
            std::string l, r;
            if (out.sort == Sort::Term) {
              l = showTerm(out.ctx, norm.nf(out.tm));
              r = showTerm(out.ctx, norm.nf(out.tm2));
            } else if (out.sort == Sort::Type) {
              l = showType(out.ctx, norm.nf(out.ty));
              r = showType(out.ctx, norm.nf(out.ty2));
            } else {
              l = showAdapter(out.ctx, norm.nf(out.ad));
              r = showAdapter(out.ctx, norm.nf(out.ad2));
            }
            fail("NotConvertible", d.rhs->span, l, r);
          }
        }
        break;
      }
      case Decl::Normalize: {
        out.ctx = elabHyps(d.hyps);
        checker().checkCtx(out.ctx);
        out.sort = guessSort(out.ctx, d.lhs);
        Decl plain = d;
        plain.src = plain.tgt = plain.cls = nullptr;
        subject(out, plain, out.ctx, d.lhs, out.sort, false);
        break;
      }
    }
    return out;
  }

  // ---- datatypes ----

  // Peels a chain of arrows into binders and the final codomain.
  static std::pair<std::vector<Binder>, ExprP> peel(ExprP e) {
    std::vector<Binder> bs;
    while (e->kind == Expr::Arrow) {
      bs.push_back(Binder{e->name.empty() ? "_" : e->name, e->args[0], false, e->args[0]->span});
      e = e->args[1];
    }
    return {bs, e};
  }

  static bool mentions(const ExprP& e, const std::string& name) {
    if (!e) return false;
    if ((e->kind == Expr::Name || e->kind == Expr::IndSpine) && e->name == name) return true;
    for (const auto& a : e->args)
      if (mentions(a, name)) return true;
    for (const auto& b : e->binders)
      if (mentions(b.type, name)) return true;
    for (const auto& s : e->spine)
      if (mentions(s.e, name) || mentions(s.srcAnn, name) || mentions(s.tgtAnn, name)) return true;
    return mentions(e->body, name) || mentions(e->annot, name);
  }

  bool isSelf(const ExprP& e, const std::string& self) { return spine(e).first == self; }

  // Arguments of a `Self params indices` occurrence; checks the parameters
  // are the declared ones and returns the index arguments.
  Inst selfIndices(const Ctx& g, const Ctx& params, const ExprP& e, const std::string& self,
                   std::size_t nIndices) {
    auto [h, args] = spine(e);
    for (const auto& a : args)
      if (mentions(a, self)) fail("PositivityError", a->span, "no occurrence of " + self, "a nested occurrence");
    if (args.size() != params.size() + nIndices)
      fail("ArityMismatch", e->span, std::to_string(params.size() + nIndices) + " arguments to " + self,
           std::to_string(args.size()));
    SubComps ps =
        elabParams(g, params, {args.begin(), args.begin() + static_cast<std::ptrdiff_t>(params.size())});
    SubComps expect = substComps(idComps(params), params, Env::shift(g.tmCount() - params.tmCount()));
    if (!eq(ps, expect)) fail("IllFormedDescription", e->span, "the declared parameters of " + self, "others");
    Inst is;
    for (std::size_t k = params.size(); k < args.size(); ++k) is.push_back(elabTm(g, args[k]));
    return is;
  }

  IndDesc elabData(const Decl& d) {
    IndDesc desc;
    desc.name = d.name;
    desc.params = elabHyps(d.params);
    Ctx c = desc.params;
    for (const auto& b : d.indices) {
      if (mentions(b.type, d.name)) fail("PositivityError", b.span, "no occurrence of " + d.name, "one in an index");
      Type a = elabTy(c, b.type);
      desc.indices.push_back(a);
      desc.indexNames.push_back(b.name);
      c = c.extTm(Dir::Pos, a, b.name);
    }
    const std::size_t ni = desc.indices.size();
    for (const auto& cd : d.cons) {
      ConDesc con;
      con.name = cd.name;
      if (cd.raw) {
        Ctx nr = desc.params;
        for (const auto& b : cd.nrec) {
          if (mentions(b.type, d.name)) fail("PositivityError", b.span, "no occurrence of " + d.name, "one");
          Type a = elabTy(nr, b.type);
          con.nrec.push_back(a);
          con.nrecNames.push_back(b.name);
          nr = nr.extTm(Dir::Pos, a, b.name);
        }
        for (const auto& r : cd.rec) {
          RecDesc rd;
          Ctx ar = nr;
          for (const auto& b : r.arit) {
            if (mentions(b.type, d.name)) fail("PositivityError", b.span, "no occurrence of " + d.name, "one");
            Type a = elabTy(ar, b.type);
            rd.arit.push_back(a);
            rd.aritNames.push_back(b.name);
            ar = ar.extTm(Dir::Neg, a, b.name);
          }
          for (const auto& t : r.rind) rd.rind.push_back(elabTm(ar, t));
          con.rec.push_back(rd);
          con.recNames.push_back(r.name);
        }
        for (const auto& t : cd.ind) con.ind.push_back(elabTm(nr, t));
        desc.cons.push_back(con);
        continue;
      }
      auto [args, result] = peel(cd.type);
      if (!isSelf(result, d.name)) fail("IllFormedDescription", result->span, d.name + " as the result", kindName(*result));
      Ctx nr = desc.params;
      bool seenRec = false;
      for (const auto& b : args) {
        auto [arit, head] = peel(b.type);
        if (isSelf(head, d.name)) {
          seenRec = true;
          RecDesc rd;
          Ctx ar = nr;
          for (const auto& ab : arit) {
            if (mentions(ab.type, d.name))
              fail("PositivityError", ab.span, "no occurrence of " + d.name, "one left of an arrow");
            Type a = elabTy(ar, ab.type);
            rd.arit.push_back(a);
            rd.aritNames.push_back(ab.name);
            ar = ar.extTm(Dir::Neg, a, ab.name);
          }
          rd.rind = selfIndices(ar, desc.params, head, d.name, ni);
          con.rec.push_back(rd);
          con.recNames.push_back(b.name);
          continue;
        }
        if (mentions(b.type, d.name))
          fail("PositivityError", b.span, "a strictly positive occurrence of " + d.name, "another shape");
        if (seenRec)
          fail("IllFormedDescription", b.span, "non-recursive arguments before recursive ones", b.name);
        Type a = elabTy(nr, b.type);
        con.nrec.push_back(a);
        con.nrecNames.push_back(b.name);
        nr = nr.extTm(Dir::Pos, a, b.name);
      }
      con.ind = selfIndices(nr, desc.params, result, d.name, ni);
      desc.cons.push_back(con);
    }
    DescTable::global().add(desc);
    return desc;
  }
};

Elaborator::Elaborator(std::string file) : file_(std::move(file)), impl_(std::make_shared<Impl>(file_, &prog_)) {}

void Elaborator::declare(const Decl& d) {
  try {
    prog_.decls.push_back(impl_->declare(d));
  } catch (CheckError& e) {
    if (e.diag.span.line == 0) e.diag.span = d.span;
    throw;
  } catch (const KernelError& e) {
    throw CheckError(Diagnostic{e.code, e.what(), d.span, {}, {}});
  }
}

CoreProgram Elaborator::elaborate(const std::vector<Decl>& ds) {
  for (const auto& d : ds) declare(d);
  return prog_;
}

Elaborator::Query Elaborator::query(const std::vector<Hyp>& hyps, const ExprP& e) {
  try {
    Query q;
    q.ctx = impl_->elabHyps(hyps);
    Checker ck = impl_->checker();
    ck.checkCtx(q.ctx);
    q.sort = impl_->guessSort(q.ctx, e);
    if (q.sort == Sort::Term) {
      q.tm = impl_->elabTm(q.ctx, e);
      ck.checkTm(q.ctx, q.tm);
    } else if (q.sort == Sort::Type) {
      q.ty = impl_->elabTy(q.ctx, e);
      ck.checkTy(q.ctx, q.ty);
    } else {
      q.ad = impl_->elabAd(q.ctx, e, nullptr);
      ck.checkAd(q.ctx, q.ad);
    }
    return q;
  } catch (CheckError& err) {
    if (err.diag.span.line == 0) err.diag.span = e->span;
    throw;
  } catch (const KernelError& err) {
    throw CheckError(Diagnostic{err.code, err.what(), e->span, {}, {}});
  }
}

CoreProgram elaborateProgram(const std::vector<Decl>& ds, const std::string& file) {
  Elaborator el(file);
  return el.elaborate(ds);
}

}  // namespace adaptt
