#include "adaptt/model.hpp"

#include <algorithm>
#include <json.hpp>

#include "adaptt/desc_table.hpp"
#include "adaptt/pretty.hpp"

namespace adaptt {

namespace {

constexpr std::size_t kMaxEnum = 4096;
constexpr std::size_t kMaxEnvs = 100000;

void validate(const Binding& b) {
  for (const auto& [name, tables] : b.adapters) {
    for (const auto& [key, table] : tables) {
      auto arrow = key.find("->");
      if (arrow == std::string::npos) throw ModelError("adapter " + name + ": key '" + key + "' is not Src->Tgt");
      std::string src = key.substr(0, arrow), tgt = key.substr(arrow + 2);
      if (auto s = b.types.find(src); s != b.types.end())
        for (const auto& x : s->second)
          if (!table.count(x)) throw ModelError("adapter " + name + " is not total: missing " + x);
      if (auto t = b.types.find(tgt); t != b.types.end())
        for (const auto& [x, y] : table)
          if (std::find(t->second.begin(), t->second.end(), y) == t->second.end())
            throw ModelError("adapter " + name + " maps " + x + " outside " + tgt);
    }
  }
}

Binding bindingOf(const nlohmann::json& j) {
  Binding b;
  if (!j.is_object()) throw ModelError("binding must be a JSON object");
  if (j.contains("types")) b.types = j.at("types").get<decltype(b.types)>();
  if (j.contains("adapters")) b.adapters = j.at("adapters").get<decltype(b.adapters)>();
  validate(b);
  return b;
}

}  // namespace

std::vector<Binding> Binding::fromJson(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    std::vector<Binding> out;
    if (j.is_array())
      for (const auto& e : j) out.push_back(bindingOf(e));
    else
      out.push_back(bindingOf(j));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("bad binding JSON: ") + e.what());
  }
}

std::string Binding::json() const {
  nlohmann::json j;
  j["types"] = types;
  j["adapters"] = adapters;
  return j.dump();
}

// ---- values ----

Val atomVal(std::string name) {
  auto v = std::make_shared<SemValue>();
  v->kind = SemValue::Atom;
  v->atom = std::move(name);
  return v;
}

Val pairVal(Val a, Val b) {
  auto v = std::make_shared<SemValue>();
  v->kind = SemValue::Pair;
  v->a = std::move(a);
  v->b = std::move(b);
  return v;
}

Val funVal(AdFn f) {
  auto v = std::make_shared<SemValue>();
  v->kind = SemValue::Fun;
  v->fn = std::move(f);
  return v;
}

Val conVal(DescRef desc, int con, std::vector<Val> args) {
  auto v = std::make_shared<SemValue>();
  v->kind = SemValue::Con;
  v->desc = std::move(desc);
  v->con = con;
  v->args = std::move(args);
  return v;
}

Val applyFn(const Val& f, const Val& x) {
  if (f->kind != SemValue::Fun) throw ModelError("applying a non-function value " + show(f));
  return f->fn(x);
}

std::string show(const Val& v) {
  switch (v->kind) {
    case SemValue::Atom: return v->atom;
    case SemValue::Pair: return "(" + show(v->a) + ", " + show(v->b) + ")";
    case SemValue::Fun: return "<fun>";
    case SemValue::Con: break;
  }
  if (v->desc == "Nat") {
    int n = 0;
    const SemValue* p = v.get();
    while (p->kind == SemValue::Con && p->desc == "Nat" && !p->args.empty()) {
      ++n;
      p = p->args.back().get();
    }
    if (p->kind == SemValue::Con && p->args.empty()) return std::to_string(n);
  }
  std::string out = v->desc + "." + descOf(v->desc).cons[v->con].name;
  if (v->args.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < v->args.size(); ++i) out += (i ? ", " : "") + show(v->args[i]);
  return out + ")";
}

const Val& SemEnv::tm(int index) const {
  if (index < 0 || index >= static_cast<int>(tms.size())) throw ModelError("unbound term variable");
  return tms[tms.size() - 1 - static_cast<std::size_t>(index)];
}

const TyFam& SemEnv::ty(int index) const {
  if (index < 0 || index >= static_cast<int>(tys.size())) throw ModelError("unbound type variable");
  return tys[tys.size() - 1 - static_cast<std::size_t>(index)];
}

SemEnv SemEnv::withTm(Val v) const {
  SemEnv e = *this;
  e.tms.push_back(std::move(v));
  return e;
}

SemEnv SemEnv::withTms(const std::vector<Val>& vs) const {
  SemEnv e = *this;
  e.tms.insert(e.tms.end(), vs.begin(), vs.end());
  return e;
}

// A semantic transformation between two environments of one context. The
// adapter of a positive type entry maps the src family into the tgt family;
// of a negative one, the other way. Telescope arguments of an adapter sit on
// the src side when telDir*dir is positive, on the tgt side otherwise.
struct Model::Trans {
  struct Ad {
    Dir dd;
    std::function<Val(const std::vector<Val>&, const Val&)> fn;
  };
  SemEnv src, tgt;
  std::vector<Ad> ads;

  Trans dual() const { return Trans{tgt, src, ads}; }
  Trans oriented(Dir d) const { return d == Dir::Pos ? *this : dual(); }
  Trans withTm(Val s, Val t) const {
    Trans r = *this;
    r.src.tms.push_back(std::move(s));
    r.tgt.tms.push_back(std::move(t));
    return r;
  }
  void pushTy(Ad a, TyFam s, TyFam t) {
    ads.push_back(std::move(a));
    src.tys.push_back(std::move(s));
    tgt.tys.push_back(std::move(t));
  }
  const Ad& ad(int index) const {
    if (index < 0 || index >= static_cast<int>(ads.size())) throw ModelError("unbound type variable");
    return ads[ads.size() - 1 - static_cast<std::size_t>(index)];
  }
};

Model::Model(Binding b) : b_(std::move(b)) { validate(b_); }

// ---- evaluation ----

SemTypeP Model::evalTy(const Type& a, const SemEnv& env) const {
  auto out = std::make_shared<SemType>();
  if (auto b = as<ty::Base>(a)) {
    auto it = b_.types.find(b->name);
    if (it == b_.types.end()) throw ModelError("base type " + b->name + " is not bound");
    out->kind = SemType::Finite;
    for (const auto& x : it->second) out->elems.push_back(atomVal(x));
    return out;
  }
  if (auto v = as<ty::Var>(a)) {
    std::vector<Val> xs;
    for (const auto& t : v->inst) xs.push_back(evalTm(t, env));
    return env.ty(v->index)(xs);
  }
  if (auto p = as<ty::Pi>(a)) {
    out->kind = SemType::Pi;
    out->dom = evalTy(p->dom, env);
    Type cod = p->cod;
    out->cod = [this, cod, env](const Val& x) { return evalTy(cod, env.withTm(x)); };
    return out;
  }
  if (auto s = as<ty::Sigma>(a)) {
    out->kind = SemType::Sigma;
    out->dom = evalTy(s->fst, env);
    Type snd = s->snd;
    out->cod = [this, snd, env](const Val& x) { return evalTy(snd, env.withTm(x)); };
    return out;
  }
  const auto* i = as<ty::Ind>(a);
  out->kind = SemType::Ind;
  out->desc = i->desc;
  for (const auto& c : i->params) {
    if (c.isTy()) {
      Type fam = c.ty;
      out->paramTys.push_back([this, fam, env](const std::vector<Val>& xs) { return evalTy(fam, env.withTms(xs)); });
    } else {
      out->paramTms.push_back(evalTm(c.tm, env));
    }
  }
  return out;
}

Val Model::evalTm(const Term& t, const SemEnv& env) const {
  if (auto v = as<tm::Var>(t)) return env.tm(v->index);
  if (auto l = as<tm::Lam>(t)) {
    Term body = l->body;
    return funVal([this, body, env](const Val& x) { return evalTm(body, env.withTm(x)); });
  }
  if (auto a = as<tm::App>(t)) return applyFn(evalTm(a->fn, env), evalTm(a->arg, env));
  if (auto p = as<tm::Pair>(t)) return pairVal(evalTm(p->fst, env), evalTm(p->snd, env));
  if (auto f = as<tm::Fst>(t)) {
    Val p = evalTm(f->p, env);
    if (p->kind != SemValue::Pair) throw ModelError("projection from a non-pair");
    return p->a;
  }
  if (auto s = as<tm::Snd>(t)) {
    Val p = evalTm(s->p, env);
    if (p->kind != SemValue::Pair) throw ModelError("projection from a non-pair");
    return p->b;
  }
  if (auto c = as<tm::Cast>(t)) return evalAd(c->ad, env)(evalTm(c->tm, env));
  const auto* k = as<tm::Constr>(t);
  std::vector<Val> args;
  for (const auto& a : k->args) args.push_back(evalTm(a, env));
  return conVal(k->desc, k->con, std::move(args));
}

AdFn Model::evalAd(const Adapter& f, const SemEnv& env) const {
  if (is<ad::Id>(f)) return [](const Val& v) { return v; };
  if (auto c = as<ad::Comp>(f)) {
    std::vector<AdFn> fs;
    for (const auto& g : c->chain) fs.push_back(evalAd(g, env));
    return [fs](const Val& v) {
      Val r = v;
      for (const auto& g : fs) r = g(r);
      return r;
    };
  }
  if (auto p = as<ad::Post>(f)) {
    std::string name = p->name;
    Type src = p->src, tgt = p->tgt;
    return [this, name, src, tgt](const Val& v) { return postulate(name, src, tgt, v); };
  }
  if (auto p = as<ad::Pi>(f)) {
    AdFn dom = evalAd(p->dom, env);
    Adapter cod = p->cod;
    return [this, dom, cod, env](const Val& h) {
      return funVal([this, dom, cod, env, h](const Val& x2) {
        return evalAd(cod, env.withTm(x2))(applyFn(h, dom(x2)));
      });
    };
  }
  if (auto s = as<ad::Sigma>(f)) {
    AdFn fa = evalAd(s->fst, env);
    Adapter sa = s->snd;
    return [this, fa, sa, env](const Val& p) {
      if (p->kind != SemValue::Pair) throw ModelError("pair adapter on a non-pair");
      return pairVal(fa(p->a), evalAd(sa, env.withTm(p->a))(p->b));
    };
  }
  const auto* i = as<ad::Ind>(f);
  const IndDesc& d = descOf(i->desc);
  Trans mu;
  for (std::size_t j = 0; j < d.params.size(); ++j) {
    const CtxEntry& e = d.params[j];
    const TransComp& c = i->comps.at(j);
    if (!e.isTy) {
      if (e.dir == Dir::Pos) {
        Val s = evalTm(c.tm, env);
        mu = mu.withTm(s, act(e.ty, mu, s));
      } else {
        Val t = evalTm(c.tm, env);
        mu = mu.withTm(act(e.ty, mu.dual(), t), t);
      }
      continue;
    }
    Adapter g = c.ad;
    Type s = c.srcTy, t = c.tgtTy;
    mu.pushTy(Trans::Ad{e.telDir * e.dir,
                        [this, g, env](const std::vector<Val>& xs, const Val& v) {
                          return evalAd(g, env.withTms(xs))(v);
                        }},
              [this, s, env](const std::vector<Val>& xs) { return evalTy(s, env.withTms(xs)); },
              [this, t, env](const std::vector<Val>& xs) { return evalTy(t, env.withTms(xs)); });
  }
  return [this, &d, mu](const Val& v) { return indMap(d, mu, v); };
}

Val Model::postulate(const std::string& name, const Type& src, const Type& tgt, const Val& v) const {
  auto it = b_.adapters.find(name);
  if (it == b_.adapters.end()) throw ModelError("adapter " + name + " is not bound");
  if (!is<ty::Base>(tgt)) throw ModelError("adapter " + name + " has a non-base target");
  std::string key = showType({}, src) + "->" + showType({}, tgt);
  auto tab = it->second.find(key);
  if (tab == it->second.end()) {
    if (it->second.size() != 1) throw ModelError("adapter " + name + " has no table for " + key);
    tab = it->second.begin();
  }
  auto r = tab->second.find(show(v));
  if (r == tab->second.end()) throw ModelError("adapter " + name + " is undefined at " + show(v));
  return atomVal(r->second);
}

// ---- functorial action ----

Val Model::act(const Type& a, const Trans& mu, const Val& v) const {
  if (is<ty::Base>(a)) return v;
  if (auto x = as<ty::Var>(a)) {
    const Trans::Ad& ad = mu.ad(x->index);
    const SemEnv& side = ad.dd == Dir::Pos ? mu.src : mu.tgt;
    std::vector<Val> xs;
    for (const auto& t : x->inst) xs.push_back(evalTm(t, side));
    return ad.fn(xs, v);
  }
  if (auto p = as<ty::Pi>(a)) {
    Type dom = p->dom, cod = p->cod;
    return funVal([this, dom, cod, mu, v](const Val& xt) {
      Val xs = act(dom, mu.dual(), xt);
      return act(cod, mu.withTm(xs, xt), applyFn(v, xs));
    });
  }
  if (auto s = as<ty::Sigma>(a)) {
    if (v->kind != SemValue::Pair) throw ModelError("pair type acting on a non-pair");
    Val a2 = act(s->fst, mu, v->a);
    return pairVal(a2, act(s->snd, mu.withTm(v->a, a2), v->b));
  }
  const auto* i = as<ty::Ind>(a);
  const IndDesc& d = descOf(i->desc);
  return indMap(d, paramTrans(d, i->params, mu), v);
}

// The parameters of an inductive type occurrence, transported along mu.
Model::Trans Model::paramTrans(const IndDesc& d, const SubComps& ps, const Trans& mu) const {
  Trans nu;
  for (std::size_t j = 0; j < d.params.size(); ++j) {
    const CtxEntry& e = d.params[j];
    if (!e.isTy) {
      if (e.dir == Dir::Pos) {
        Val s = evalTm(ps[j].tm, mu.src);
        nu = nu.withTm(s, act(e.ty, nu, s));
      } else {
        Val t = evalTm(ps[j].tm, mu.tgt);
        nu = nu.withTm(act(e.ty, nu.dual(), t), t);
      }
      continue;
    }
    Type fam = ps[j].ty;
    Telescope tel = e.tel;
    Dir td = e.telDir, dd = e.telDir * e.dir;
    Trans prefix = nu;
    auto fn = [this, fam, tel, td, dd, prefix, mu](const std::vector<Val>& xs, const Val& v) {
      Trans tn = prefix.oriented(td);
      Trans tm = mu.oriented(td);
      for (std::size_t k = 0; k < tel.size(); ++k) {
        Val t = act(tel[k], tn, xs[k]);
        tn = tn.withTm(xs[k], t);
        tm = tm.withTm(xs[k], t);
      }
      return act(fam, tm.oriented(dd), v);
    };
    SemEnv s = mu.src, t = mu.tgt;
    nu.pushTy(Trans::Ad{dd, fn},
              [this, fam, s](const std::vector<Val>& xs) { return evalTy(fam, s.withTms(xs)); },
              [this, fam, t](const std::vector<Val>& xs) { return evalTy(fam, t.withTms(xs)); });
  }
  return nu;
}

namespace {

// Maps a recursive argument with arity binders arit[i..] through `leaf`.
Val mapRec(const std::function<Val(const Type&, const Model::Trans&, const Val&)>& act,
           const std::function<Val(const Val&)>& leaf, const Model::Trans& t, const Telescope& arit, std::size_t i,
           const Val& r) {
  if (i == arit.size()) return leaf(r);
  return funVal([act, leaf, t, arit, i, r](const Val& yt) {
    Val ys = act(arit[i], t.dual(), yt);
    return mapRec(act, leaf, t.withTm(ys, yt), arit, i + 1, applyFn(r, ys));
  });
}

}  // namespace

Val Model::indMap(const IndDesc& d, const Trans& nu, const Val& v) const {
  if (v->kind != SemValue::Con || v->desc != d.name) throw ModelError(d.name + " adapter on a foreign value");
  const ConDesc& c = d.cons.at(static_cast<std::size_t>(v->con));
  Trans t = nu;
  std::vector<Val> out;
  for (std::size_t j = 0; j < c.nrec.size(); ++j) {
    Val s = v->args.at(j);
    Val u = act(c.nrec[j], t, s);
    t = t.withTm(s, u);
    out.push_back(u);
  }
  auto actFn = [this](const Type& a, const Trans& m, const Val& x) { return act(a, m, x); };
  auto leaf = [this, &d, nu](const Val& r) { return indMap(d, nu, r); };
  for (std::size_t k = 0; k < c.rec.size(); ++k)
    out.push_back(mapRec(actFn, leaf, t, c.rec[k].arit, 0, v->args.at(c.nrec.size() + k)));
  return conVal(d.name, v->con, std::move(out));
}

// ---- comparison ----

namespace {

SemTypeP recType(const Model& m, const SemTypeP& self, const SemEnv& env, const Telescope& arit, std::size_t i) {
  if (i == arit.size()) return self;
  auto out = std::make_shared<SemType>();
  out->kind = SemType::Pi;
  out->dom = m.evalTy(arit[i], env);
  out->cod = [&m, self, env, arit, i](const Val& y) { return recType(m, self, env.withTm(y), arit, i + 1); };
  return out;
}

}  // namespace

bool Model::semEq(const Val& x, const Val& y, const SemTypeP& a) const {
  switch (a->kind) {
    case SemType::Finite: return x->kind == SemValue::Atom && y->kind == SemValue::Atom && x->atom == y->atom;
    case SemType::Pi:
      for (const auto& e : enumerate(a->dom))
        if (!semEq(applyFn(x, e), applyFn(y, e), a->cod(e))) return false;
      return true;
    case SemType::Sigma: return semEq(x->a, y->a, a->dom) && semEq(x->b, y->b, a->cod(x->a));
    case SemType::Ind: break;
  }
  if (x->kind != SemValue::Con || y->kind != SemValue::Con) throw ModelError("inductive value expected");
  if (x->desc != y->desc || x->con != y->con) return false;
  const IndDesc& d = descOf(a->desc);
  const ConDesc& c = d.cons.at(static_cast<std::size_t>(x->con));
  SemEnv env{a->paramTms, a->paramTys};
  for (std::size_t j = 0; j < c.nrec.size(); ++j) {
    if (!semEq(x->args[j], y->args[j], evalTy(c.nrec[j], env))) return false;
    env = env.withTm(x->args[j]);
  }
  for (std::size_t k = 0; k < c.rec.size(); ++k) {
    std::size_t j = c.nrec.size() + k;
    if (!semEq(x->args[j], y->args[j], recType(*this, a, env, c.rec[k].arit, 0))) return false;
  }
  return true;
}

std::vector<Val> Model::enumerate(const SemTypeP& a) const {
  switch (a->kind) {
    case SemType::Finite: return a->elems;
    case SemType::Ind: throw NonEnumerableDomain("inductive type " + a->desc + " is not enumerated");
    case SemType::Sigma: {
      std::vector<Val> out;
      for (const auto& x : enumerate(a->dom))
        for (const auto& y : enumerate(a->cod(x))) {
          out.push_back(pairVal(x, y));
          if (out.size() > kMaxEnum) throw NonEnumerableDomain("pair type too large");
        }
      return out;
    }
    case SemType::Pi: break;
  }
  std::vector<Val> dom = enumerate(a->dom);
  std::vector<std::vector<Val>> cods;
  std::size_t total = 1;
  for (const auto& x : dom) {
    cods.push_back(enumerate(a->cod(x)));
    total *= cods.back().size();
    if (total > kMaxEnum) throw NonEnumerableDomain("function space too large");
  }
  std::vector<Val> out;
  std::vector<std::size_t> pick(dom.size(), 0);
  SemTypeP domTy = a->dom;
  for (std::size_t n = 0; n < total; ++n) {
    std::vector<Val> table;
    for (std::size_t i = 0; i < dom.size(); ++i) table.push_back(cods[i][pick[i]]);
    out.push_back(funVal([this, dom, table, domTy](const Val& x) {
      for (std::size_t i = 0; i < dom.size(); ++i)
        if (semEq(x, dom[i], domTy)) return table[i];
      throw ModelError("function table applied outside its domain: " + show(x));
    }));
    for (std::size_t i = 0; i < pick.size(); ++i) {
      if (++pick[i] < cods[i].size()) break;
      pick[i] = 0;
    }
  }
  return out;
}

std::vector<SemEnv> Model::environments(const Ctx& g) const {
  std::vector<SemEnv> envs{SemEnv{}};
  for (const auto& e : g.entries) {
    if (e.isTy) throw NonEnumerableDomain("type variable " + e.name + " in the context");
    std::vector<SemEnv> next;
    for (const auto& env : envs)
      for (const auto& v : enumerate(evalTy(e.ty, env))) {
        next.push_back(env.withTm(v));
        if (next.size() > kMaxEnvs) throw NonEnumerableDomain("too many environments");
      }
    envs = std::move(next);
  }
  return envs;
}

bool Model::agreeTm(const Ctx& g, const Term& x, const Term& y, const Type& a) const {
  for (const auto& env : environments(g))
    if (!semEq(evalTm(x, env), evalTm(y, env), evalTy(a, env))) return false;
  return true;
}

bool Model::agreeAd(const Ctx& g, const Adapter& f, const Adapter& h, const Type& src, const Type& tgt) const {
  for (const auto& env : environments(g)) {
    AdFn ff = evalAd(f, env), hh = evalAd(h, env);
    SemTypeP t = evalTy(tgt, env);
    for (const auto& v : enumerate(evalTy(src, env)))
      if (!semEq(ff(v), hh(v), t)) return false;
  }
  return true;
}

bool Model::agreeTy(const Ctx& g, const Type& a, const Type& b) const {
  for (const auto& env : environments(g)) {
    SemTypeP sa = evalTy(a, env), sb = evalTy(b, env);
    std::vector<Val> xa = enumerate(sa), xb = enumerate(sb);
    if (xa.size() != xb.size()) return false;
    for (const auto& x : xa) {
      bool found = false;
      for (const auto& y : xb)
        if (semEq(x, y, sa)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace adaptt
