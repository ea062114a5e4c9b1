#include "adaptt/pretty.hpp"

#include <algorithm>
#include <array>

#include "adaptt/desc_table.hpp"
#include "adaptt/subst.hpp"
#include "adaptt/trace.hpp"

namespace adaptt {

namespace {

enum Prec { kBind = 0, kArrow = 1, kProd = 2, kCast = 3, kComp = 4, kApp = 5, kAtom = 6 };

std::string paren(const std::string& s, int need, int have) { return have < need ? "(" + s + ")" : s; }

constexpr std::array<const char*, 19> kKeywords = {
    "fun", "type", "postulate", "adapter", "data", "def", "check", "assert", "normalize", "id",
    "fst", "snd", "pair", "Pi", "Sigma", "Type", "nrec", "rec", "ind"};

// Closed Nat numeral, or -1.
int numeral(const Term& t) {
  int n = 0;
  const Term* cur = &t;
  while (auto c = as<tm::Constr>(*cur)) {
    if (c->desc != "Nat") return -1;
    if (c->con == 0) return c->args.empty() ? n : -1;
    if (c->con != 1 || c->args.size() != 1) return -1;
    ++n;
    cur = &c->args[0];
  }
  return -1;
}

}  // namespace

bool isKeyword(const std::string& s) {
  return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end();
}

bool usesVar0(const Type& a) {
  // Substitution shares unchanged nodes, so the result differs from the
  // input exactly when variable 0 occurs.
  TraceScope quiet(nullptr);
  Env e;
  e.tms.push_back(var(1 << 28));
  e.tmOff = 1;
  return subst(a, e).get() != a.get();
}

std::set<std::string> defaultGlobals() {
  auto names = DescTable::global().names();
  return {names.begin(), names.end()};
}

Printer::Printer(std::set<std::string> globals) : globals_(std::move(globals)) {}

bool Printer::taken(const std::string& n) const {
  return isKeyword(n) || globals_.count(n) || std::find(tms_.begin(), tms_.end(), n) != tms_.end() ||
         std::find(tys_.begin(), tys_.end(), n) != tys_.end();
}

std::string Printer::fresh(const std::string& hint, bool isTy) {
  if (hint == "_") return hint;
  std::string base = hint.empty() ? (isTy ? "X" : "x") : hint;
  if (!taken(base)) return base;
  for (int i = 1;; ++i) {
    std::string c = base + std::to_string(i);
    if (!taken(c)) return c;
  }
}

std::string Printer::bindTm(const std::string& hint) {
  tms_.push_back(fresh(hint, false));
  return tms_.back();
}

std::string Printer::bindTy(const std::string& hint) {
  tys_.push_back(fresh(hint, true));
  return tys_.back();
}

void Printer::popTm(std::size_t n) { tms_.resize(tms_.size() - n); }
void Printer::popTy(std::size_t n) { tys_.resize(tys_.size() - n); }

std::string Printer::telescope(const Telescope& tel, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < tel.size(); ++i) {
    std::string ty = type(tel[i]);
    std::string n = bindTm(i < names.size() ? names[i] : std::string{});
    out += "(" + n + " : " + ty + ")";
  }
  return out;
}

std::string Printer::entry(const CtxEntry& e) {
  if (!e.isTy) {
    std::string ty = type(e.ty);
    std::string n = bindTm(e.name);
    return "(" + n + " : " + ty + ")" + (e.dir == Dir::Neg ? "^-" : "");
  }
  std::string kind;
  if (!e.tel.empty()) {
    kind = telescope(e.tel, e.telNames);
    popTm(e.tel.size());
    if (e.telDir == Dir::Neg) kind += " ^-";
    kind += " -> ";
  }
  kind += std::string("Ty") + dirName(e.dir);
  std::string n = bindTy(e.name);
  return "(" + n + " : " + kind + ")";
}

std::string Printer::bindCtx(const Ctx& g) {
  std::string out;
  for (const auto& e : g.entries) {
    if (!out.empty()) out += " ";
    out += entry(e);
  }
  return out;
}

void Printer::enterCtx(const Ctx& g) { bindCtx(g); }

std::string Printer::family(std::size_t n, const std::vector<std::string>& names, const Type& body) {
  std::string head = "fun";
  for (std::size_t i = 0; i < n; ++i) head += " " + bindTm(i < names.size() ? names[i] : std::string{});
  std::string out = head + " => " + type(body);
  popTm(n);
  return out;
}

std::string Printer::spineArg(const CtxEntry& e, const SubComp& c) {
  if (!e.isTy) return term(c.tm, kAtom);
  if (e.tel.empty()) return type(c.ty, kAtom);
  return "(" + family(e.tel.size(), e.telNames, c.ty) + ")";
}

std::string Printer::type(const Type& a, int prec) {
  if (auto b = as<ty::Base>(a)) return b->name;
  if (auto v = as<ty::Var>(a)) {
    std::string n = v->index < static_cast<int>(tys_.size()) ? tys_[tys_.size() - 1 - v->index]
                                                             : "#T" + std::to_string(v->index);
    if (v->inst.empty()) return n;
    for (const auto& t : v->inst) n += " " + term(t, kAtom);
    return paren(n, prec, kApp);
  }
  if (auto p = as<ty::Pi>(a)) {
    std::string dom = type(p->dom, usesVar0(p->cod) ? kBind : kProd);
    if (usesVar0(p->cod)) {
      std::string x = bindTm("x");
      std::string s = "(" + x + " : " + dom + ") -> " + type(p->cod, kBind);
      popTm();
      return paren(s, prec, kBind);
    }
    bindTm("_");
    std::string s = dom + " -> " + type(p->cod, kArrow);
    popTm();
    return paren(s, prec, kArrow);
  }
  if (auto s = as<ty::Sigma>(a)) {
    bool dep = usesVar0(s->snd);
    std::string fst = type(s->fst, dep ? kBind : kCast);
    if (dep) {
      std::string x = bindTm("x");
      std::string out = "(" + x + " : " + fst + ") * " + type(s->snd, kBind);
      popTm();
      return paren(out, prec, kBind);
    }
    bindTm("_");
    std::string out = fst + " * " + type(s->snd, kProd);
    popTm();
    return paren(out, prec, kProd);
  }
  auto i = as<ty::Ind>(a);
  const IndDesc* d = DescTable::global().find(i->desc);
  std::string out = i->desc;
  for (std::size_t k = 0; k < i->params.size(); ++k) {
    if (d && k < d->params.size())
      out += " " + spineArg(d->params[k], i->params[k]);
    else
      out += " " + (i->params[k].isTy() ? type(i->params[k].ty, kAtom) : term(i->params[k].tm, kAtom));
  }
  for (const auto& t : i->indices) out += " " + term(t, kAtom);
  return out == i->desc ? out : paren(out, prec, kApp);
}

std::string Printer::term(const Term& t, int prec) {
  if (auto v = as<tm::Var>(t))
    return v->index < static_cast<int>(tms_.size()) ? tms_[tms_.size() - 1 - v->index]
                                                     : "#" + std::to_string(v->index);
  if (auto l = as<tm::Lam>(t)) {
    std::string dom = type(l->dom);
    std::string x = bindTm("x");
    std::string s = "fun (" + x + " : " + dom + ") => " + term(l->body, kBind);
    popTm();
    return paren(s, prec, kBind);
  }
  if (auto a = as<tm::App>(t)) return paren(term(a->fn, kApp) + " " + term(a->arg, kAtom), prec, kApp);
  if (auto p = as<tm::Pair>(t)) {
    std::string fam = p->fam ? "(" + family(1, {"x"}, p->fam) + ")" : "_";
    return paren("pair " + fam + " " + term(p->fst, kAtom) + " " + term(p->snd, kAtom), prec, kApp);
  }
  if (auto f = as<tm::Fst>(t)) return paren("fst " + term(f->p, kAtom), prec, kApp);
  if (auto f = as<tm::Snd>(t)) return paren("snd " + term(f->p, kAtom), prec, kApp);
  if (auto c = as<tm::Cast>(t)) return paren(term(c->tm, kCast) + " <| " + adapter(c->ad, kComp), prec, kCast);
  auto k = as<tm::Constr>(t);
  if (int n = numeral(t); n >= 0) return std::to_string(n);
  const IndDesc* d = DescTable::global().find(k->desc);
  std::string out = k->desc + "." +
                    (d && k->con < static_cast<int>(d->cons.size()) ? d->cons[k->con].name : std::to_string(k->con));
  std::size_t head = out.size();
  for (std::size_t j = 0; j < k->params.size(); ++j) {
    if (d && j < d->params.size())
      out += " " + spineArg(d->params[j], k->params[j]);
    else
      out += " " + (k->params[j].isTy() ? type(k->params[j].ty, kAtom) : term(k->params[j].tm, kAtom));
  }
  for (const auto& a : k->args) out += " " + term(a, kAtom);
  return out.size() == head ? out : paren(out, prec, kApp);
}

std::string Printer::transComp(const CtxEntry& e, const TransComp& c) {
  if (!e.isTy) return term(c.tm);
  const std::size_t n = e.tel.size();
  std::string head;
  if (n > 0) {
    head = "fun";
    for (std::size_t i = 0; i < n; ++i) head += " " + bindTm(i < e.telNames.size() ? e.telNames[i] : std::string{});
    head += " => ";
  }
  std::string out = head + adapter(c.ad) + " : " + type(c.srcTy) + " => " + type(c.tgtTy);
  popTm(n);
  return out;
}

std::string Printer::adapter(const Adapter& f, int prec) {
  if (auto i = as<ad::Id>(f)) return paren("id " + type(i->ty, kAtom), prec, kApp);
  if (auto c = as<ad::Comp>(f)) {
    std::string out;
    for (auto it = c->chain.rbegin(); it != c->chain.rend(); ++it) {
      if (!out.empty()) out += " . ";
      out += adapter(*it, kApp);
    }
    return paren(out, prec, kComp);
  }
  if (auto p = as<ad::Post>(f)) return p->name;
  if (auto p = as<ad::Pi>(f)) {
    std::string dom = adapter(p->dom);
    std::string x = bindTm("x");
    std::string out = "Pi [" + dom + " > fun " + x + " => " + adapter(p->cod) + " ; fun " + x + " => " +
                      type(p->srcCod) + "]";
    popTm();
    return out;
  }
  if (auto s = as<ad::Sigma>(f)) {
    std::string fst = adapter(s->fst);
    std::string x = bindTm("x");
    std::string out = "Sigma [" + fst + " > fun " + x + " => " + adapter(s->snd) + " ; fun " + x + " => " +
                      type(s->tgtSnd) + "]";
    popTm();
    return out;
  }
  auto i = as<ad::Ind>(f);
  const IndDesc* d = DescTable::global().find(i->desc);
  std::string out = i->desc + " [";
  Ctx full = d ? d->fullCtx() : Ctx{};
  for (std::size_t k = 0; k < i->comps.size(); ++k) {
    if (k) out += " > ";
    if (k < full.size())
      out += transComp(full[k], i->comps[k]);
    else
      out += i->comps[k].isTy() ? adapter(i->comps[k].ad) : term(i->comps[k].tm);
  }
  return out + "]";
}

std::string showType(const Ctx& g, const Type& a) {
  Printer p(defaultGlobals());
  p.enterCtx(g);
  return p.type(a);
}

std::string showTerm(const Ctx& g, const Term& t) {
  Printer p(defaultGlobals());
  p.enterCtx(g);
  return p.term(t);
}

std::string showAdapter(const Ctx& g, const Adapter& f) {
  Printer p(defaultGlobals());
  p.enterCtx(g);
  return p.adapter(f);
}

std::string showCtx(const Ctx& g) {
  Printer p(defaultGlobals());
  return p.bindCtx(g);
}

}  // namespace adaptt
