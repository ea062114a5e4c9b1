#include "adaptt/syntax.hpp"

#include <algorithm>

namespace adaptt {

namespace {
template <class N, class V>
std::shared_ptr<const N> mk(V v) {
  return std::make_shared<const N>(N{std::move(v)});
}
}  // namespace

Type tyVar(int index, Inst inst) { return mk<TypeNode>(ty::Var{index, std::move(inst)}); }
Type pi(Type dom, Type cod) { return mk<TypeNode>(ty::Pi{std::move(dom), std::move(cod)}); }
Type sigma(Type a, Type b) { return mk<TypeNode>(ty::Sigma{std::move(a), std::move(b)}); }
Type ind(DescRef desc, SubComps params, Inst indices) {
  return mk<TypeNode>(ty::Ind{std::move(desc), std::move(params), std::move(indices)});
}
Type base(std::string name) { return mk<TypeNode>(ty::Base{std::move(name)}); }

Term var(int index) { return mk<TermNode>(tm::Var{index}); }
Term lam(Type dom, Term body) { return mk<TermNode>(tm::Lam{std::move(dom), std::move(body)}); }
Term app(Term fn, Term arg) { return mk<TermNode>(tm::App{std::move(fn), std::move(arg)}); }
Term pair(Term a, Term b, Type fam) {
  return mk<TermNode>(tm::Pair{std::move(a), std::move(b), std::move(fam)});
}
Term fst(Term p) { return mk<TermNode>(tm::Fst{std::move(p)}); }
Term snd(Term p) { return mk<TermNode>(tm::Snd{std::move(p)}); }
Term rawCast(Term t, Adapter f) { return mk<TermNode>(tm::Cast{std::move(t), std::move(f)}); }

Term cast(Term t, const Adapter& f) {
  if (is<ad::Id>(f)) return t;
  if (auto c = as<ad::Comp>(f)) {
    for (const auto& g : c->chain) t = cast(std::move(t), g);
    return t;
  }
  return rawCast(std::move(t), f);
}

Term constr(DescRef desc, int con, SubComps params, Inst args) {
  return mk<TermNode>(tm::Constr{std::move(desc), con, std::move(params), std::move(args)});
}

Adapter idAd(Type ty) { return mk<AdapterNode>(ad::Id{std::move(ty)}); }

Adapter compChain(const std::vector<Adapter>& chain) {
  std::vector<Adapter> out;
  Type idTy;
  for (const auto& f : chain) {
    if (auto i = as<ad::Id>(f)) {
      if (!idTy) idTy = i->ty;
      continue;
    }
    if (auto c = as<ad::Comp>(f)) {
      for (const auto& g : c->chain) out.push_back(g);
      continue;
    }
    out.push_back(f);
  }
  if (out.empty()) return idAd(idTy);
  if (out.size() == 1) return out.front();
  return mk<AdapterNode>(ad::Comp{std::move(out)});
}

Adapter comp(const Adapter& g, const Adapter& f) { return compChain({f, g}); }

Adapter post(std::string name, Type src, Type tgt) {
  return mk<AdapterNode>(ad::Post{std::move(name), std::move(src), std::move(tgt)});
}
Adapter piAd(Adapter dom, Adapter cod, Type srcCod) {
  return mk<AdapterNode>(ad::Pi{std::move(dom), std::move(cod), std::move(srcCod)});
}
Adapter sigmaAd(Adapter a, Adapter b, Type tgtSnd) {
  return mk<AdapterNode>(ad::Sigma{std::move(a), std::move(b), std::move(tgtSnd)});
}
Adapter indAd(DescRef desc, TransComps comps) {
  return mk<AdapterNode>(ad::Ind{std::move(desc), std::move(comps)});
}

bool isAtomic(const Adapter& f) { return !is<ad::Id>(f) && !is<ad::Comp>(f); }

CtxEntry CtxEntry::tmVar(Dir d, Type t, std::string name) {
  CtxEntry e;
  e.isTy = false;
  e.dir = d;
  e.ty = std::move(t);
  e.name = std::move(name);
  return e;
}

CtxEntry CtxEntry::tyVarE(Dir d, Dir telDir, Telescope tel, std::string name,
                          std::vector<std::string> telNames) {
  CtxEntry e;
  e.isTy = true;
  e.dir = d;
  e.telDir = telDir;
  e.tel = std::move(tel);
  e.name = std::move(name);
  e.telNames = std::move(telNames);
  return e;
}

int Ctx::tmPos(int index) const {
  if (index < 0) return -1;
  for (int i = static_cast<int>(entries.size()) - 1; i >= 0; --i) {
    if (entries[i].isTy) continue;
    if (index == 0) return i;
    --index;
  }
  return -1;
}

int Ctx::tyPos(int index) const {
  if (index < 0) return -1;
  for (int i = static_cast<int>(entries.size()) - 1; i >= 0; --i) {
    if (!entries[i].isTy) continue;
    if (index == 0) return i;
    --index;
  }
  return -1;
}

int Ctx::tmCountFrom(std::size_t from) const {
  int n = 0;
  for (std::size_t i = from; i < entries.size(); ++i) n += entries[i].isTy ? 0 : 1;
  return n;
}

int Ctx::tyCountFrom(std::size_t from) const {
  int n = 0;
  for (std::size_t i = from; i < entries.size(); ++i) n += entries[i].isTy ? 1 : 0;
  return n;
}

Ctx Ctx::prefix(std::size_t n) const {
  Ctx c;
  c.entries.assign(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(n));
  return c;
}

Ctx Ctx::extTm(Dir d, Type t, std::string name) const {
  Ctx c = *this;
  c.entries.push_back(CtxEntry::tmVar(d, std::move(t), std::move(name)));
  return c;
}

Ctx Ctx::extTy(Dir d, Dir td, Telescope tel, std::string name) const {
  Ctx c = *this;
  c.entries.push_back(CtxEntry::tyVarE(d, td, std::move(tel), std::move(name)));
  return c;
}

Ctx IndDesc::fullCtx() const {
  std::vector<std::string> names = indexNames;
  names.resize(indices.size());
  return extendCtxByTel(params, Dir::Pos, indices, names);
}

int IndDesc::conIndex(const std::string& con) const {
  for (std::size_t i = 0; i < cons.size(); ++i)
    if (cons[i].name == con) return static_cast<int>(i);
  return -1;
}

Ctx dualize(const Ctx& c, Dir d) {
  if (d == Dir::Pos) return c;
  Ctx out = c;
  for (auto& e : out.entries) {
    e.dir = flip(e.dir);
    if (e.isTy) e.telDir = flip(e.telDir);
  }
  return out;
}

Sub dualize(const Sub& s, Dir d) {
  if (d == Dir::Pos) return s;
  return Sub{dualize(s.src), dualize(s.tgt), s.comps};
}

TransComps dualizeComps(const TransComps& comps) {
  TransComps out = comps;
  for (auto& c : out)
    if (c.isTy()) std::swap(c.srcTy, c.tgtTy);
  return out;
}

Trans dualize(const Trans& t, Dir d) {
  if (d == Dir::Pos) return t;
  return Trans{dualize(t.src), dualize(t.tgt), dualizeComps(t.comps)};
}

Ctx extendCtxByTel(const Ctx& c, Dir d, const Telescope& tel, const std::vector<std::string>& names) {
  Ctx out = c;
  for (std::size_t i = 0; i < tel.size(); ++i)
    out.entries.push_back(CtxEntry::tmVar(d, tel[i], i < names.size() ? names[i] : std::string{}));
  return out;
}

Inst vinst(std::size_t n) {
  Inst out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(var(static_cast<int>(n - 1 - i)));
  return out;
}

Inst varInstantiation(const Telescope& tel) { return vinst(tel.size()); }

SubComps idComps(const Ctx& c) {
  SubComps out;
  out.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& e = c[i];
    if (e.isTy) {
      int k = c.tyCountFrom(i + 1);
      out.push_back(SubComp::type(tyVar(k, vinst(e.tel.size()))));
    } else {
      int k = c.tmCountFrom(i + 1);
      out.push_back(SubComp::term(var(k)));
    }
  }
  return out;
}

Sub idSub(const Ctx& c) { return Sub{c, c, idComps(c)}; }

// ---- structural equality ----

namespace {
template <class T>
bool eqVec(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!eq(a[i], b[i])) return false;
  return true;
}

bool eqComp(const SubComp& a, const SubComp& b) {
  if (a.isTy() != b.isTy()) return false;
  return a.isTy() ? eq(a.ty, b.ty) : eq(a.tm, b.tm);
}

bool eqTComp(const TransComp& a, const TransComp& b) {
  if (a.isTy() != b.isTy()) return false;
  if (!a.isTy()) return eq(a.tm, b.tm);
  return eq(a.ad, b.ad) && eq(a.srcTy, b.srcTy) && eq(a.tgtTy, b.tgtTy);
}
}  // namespace

bool eq(const SubComps& a, const SubComps& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!eqComp(a[i], b[i])) return false;
  return true;
}

bool eq(const TransComps& a, const TransComps& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!eqTComp(a[i], b[i])) return false;
  return true;
}

bool eq(const Telescope& a, const Telescope& b) { return eqVec(a, b); }
bool eq(const Inst& a, const Inst& b) { return eqVec(a, b); }

bool eq(const Type& a, const Type& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->v.index() != b->v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->v);
        if constexpr (std::is_same_v<T, ty::Var>) return x.index == y.index && eq(x.inst, y.inst);
        if constexpr (std::is_same_v<T, ty::Pi>) return eq(x.dom, y.dom) && eq(x.cod, y.cod);
        if constexpr (std::is_same_v<T, ty::Sigma>) return eq(x.fst, y.fst) && eq(x.snd, y.snd);
        if constexpr (std::is_same_v<T, ty::Ind>)
          return x.desc == y.desc && eq(x.params, y.params) && eq(x.indices, y.indices);
        if constexpr (std::is_same_v<T, ty::Base>) return x.name == y.name;
      },
      a->v);
}

bool eq(const Term& a, const Term& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->v.index() != b->v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->v);
        if constexpr (std::is_same_v<T, tm::Var>) return x.index == y.index;
        if constexpr (std::is_same_v<T, tm::Lam>) return eq(x.dom, y.dom) && eq(x.body, y.body);
        if constexpr (std::is_same_v<T, tm::App>) return eq(x.fn, y.fn) && eq(x.arg, y.arg);
        if constexpr (std::is_same_v<T, tm::Pair>)
          return eq(x.fst, y.fst) && eq(x.snd, y.snd) && eq(x.fam, y.fam);
        if constexpr (std::is_same_v<T, tm::Fst>) return eq(x.p, y.p);
        if constexpr (std::is_same_v<T, tm::Snd>) return eq(x.p, y.p);
        if constexpr (std::is_same_v<T, tm::Cast>) return eq(x.tm, y.tm) && eq(x.ad, y.ad);
        if constexpr (std::is_same_v<T, tm::Constr>)
          return x.desc == y.desc && x.con == y.con && eq(x.params, y.params) && eq(x.args, y.args);
      },
      a->v);
}

bool eq(const Adapter& a, const Adapter& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->v.index() != b->v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->v);
        if constexpr (std::is_same_v<T, ad::Id>) return eq(x.ty, y.ty);
        if constexpr (std::is_same_v<T, ad::Comp>) return eqVec(x.chain, y.chain);
        if constexpr (std::is_same_v<T, ad::Post>)
          return x.name == y.name && eq(x.src, y.src) && eq(x.tgt, y.tgt);
        if constexpr (std::is_same_v<T, ad::Pi>)
          return eq(x.dom, y.dom) && eq(x.cod, y.cod) && eq(x.srcCod, y.srcCod);
        if constexpr (std::is_same_v<T, ad::Sigma>)
          return eq(x.fst, y.fst) && eq(x.snd, y.snd) && eq(x.tgtSnd, y.tgtSnd);
        if constexpr (std::is_same_v<T, ad::Ind>) return x.desc == y.desc && eq(x.comps, y.comps);
      },
      a->v);
}

bool eq(const Ctx& a, const Ctx& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (x.isTy != y.isTy || x.dir != y.dir) return false;
    if (x.isTy) {
      if (x.telDir != y.telDir || !eq(x.tel, y.tel)) return false;
    } else if (!eq(x.ty, y.ty)) {
      return false;
    }
  }
  return true;
}

bool eq(const Sub& a, const Sub& b) {
  return eq(a.src, b.src) && eq(a.tgt, b.tgt) && eq(a.comps, b.comps);
}

bool eq(const Trans& a, const Trans& b) {
  return eq(a.src, b.src) && eq(a.tgt, b.tgt) && eq(a.comps, b.comps);
}

bool eq(const RecDesc& a, const RecDesc& b) { return eq(a.arit, b.arit) && eq(a.rind, b.rind); }

bool eq(const ConDesc& a, const ConDesc& b) {
  if (!eq(a.nrec, b.nrec) || !eq(a.ind, b.ind) || a.rec.size() != b.rec.size()) return false;
  for (std::size_t i = 0; i < a.rec.size(); ++i)
    if (!eq(a.rec[i], b.rec[i])) return false;
  return true;
}

bool eq(const IndDesc& a, const IndDesc& b) {
  if (!eq(a.params, b.params) || !eq(a.indices, b.indices) || a.cons.size() != b.cons.size())
    return false;
  for (std::size_t i = 0; i < a.cons.size(); ++i)
    if (!eq(a.cons[i], b.cons[i])) return false;
  return true;
}

// ---- invariant scans ----

namespace {
bool scanTy(const Type& t);
bool scanTm(const Term& t);
bool scanAd(const Adapter& f, bool top);

bool scanComps(const SubComps& cs) {
  for (const auto& c : cs)
    if (c.isTy() ? !scanTy(c.ty) : !scanTm(c.tm)) return false;
  return true;
}

bool scanInst(const Inst& i) {
  return std::all_of(i.begin(), i.end(), [](const Term& t) { return scanTm(t); });
}

bool scanTy(const Type& t) {
  if (!t) return true;
  if (auto v = as<ty::Var>(t)) return scanInst(v->inst);
  if (auto p = as<ty::Pi>(t)) return scanTy(p->dom) && scanTy(p->cod);
  if (auto s = as<ty::Sigma>(t)) return scanTy(s->fst) && scanTy(s->snd);
  if (auto i = as<ty::Ind>(t)) return scanComps(i->params) && scanInst(i->indices);
  return true;
}

bool scanTm(const Term& t) {
  if (!t) return true;
  if (auto l = as<tm::Lam>(t)) return scanTy(l->dom) && scanTm(l->body);
  if (auto a = as<tm::App>(t)) return scanTm(a->fn) && scanTm(a->arg);
  if (auto p = as<tm::Pair>(t)) return scanTm(p->fst) && scanTm(p->snd) && scanTy(p->fam);
  if (auto p = as<tm::Fst>(t)) return scanTm(p->p);
  if (auto p = as<tm::Snd>(t)) return scanTm(p->p);
  if (auto c = as<tm::Cast>(t)) return isAtomic(c->ad) && scanTm(c->tm) && scanAd(c->ad, true);
  if (auto c = as<tm::Constr>(t)) return scanComps(c->params) && scanInst(c->args);
  return true;
}

bool scanAd(const Adapter& f, bool top) {
  if (!f) return true;
  if (auto c = as<ad::Comp>(f)) {
    if (c->chain.size() < 2) return false;
    for (const auto& g : c->chain)
      if (!isAtomic(g) || !scanAd(g, false)) return false;
    return true;
  }
  (void)top;
  if (auto p = as<ad::Post>(f)) return scanTy(p->src) && scanTy(p->tgt);
  if (auto p = as<ad::Pi>(f)) return scanAd(p->dom, true) && scanAd(p->cod, true) && scanTy(p->srcCod);
  if (auto s = as<ad::Sigma>(f)) return scanAd(s->fst, true) && scanAd(s->snd, true) && scanTy(s->tgtSnd);
  if (auto i = as<ad::Ind>(f)) {
    for (const auto& c : i->comps) {
      if (c.isTy()) {
        if (!scanAd(c.ad, true) || !scanTy(c.srcTy) || !scanTy(c.tgtTy)) return false;
      } else if (!scanTm(c.tm)) {
        return false;
      }
    }
    return true;
  }
  if (auto i = as<ad::Id>(f)) return scanTy(i->ty);
  return true;
}
}  // namespace

bool castInvariantHolds(const Term& t) { return scanTm(t); }
bool compInvariantHolds(const Adapter& f) { return scanAd(f, true); }

}  // namespace adaptt
