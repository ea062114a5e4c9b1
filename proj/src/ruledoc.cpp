#include "adaptt/ruledoc.hpp"

#include <json.hpp>
#include <set>
#include <sstream>

#include "adaptt/check.hpp"
#include "adaptt/desc_table.hpp"
#include "adaptt/functor.hpp"
#include "adaptt/inductive.hpp"
#include "adaptt/pretty.hpp"
#include "adaptt/subst.hpp"

namespace adaptt {

namespace {

TransData weakenBoth(const TransData& m, int tm, int ty) {
  if (tm == 0 && ty == 0) return m;
  Env e = Env::shift(tm, ty);
  return TransData{m.delta, substTransComps(m.comps, m.delta, e), substComps(m.sigma, m.delta, e),
                   substComps(m.tau, m.delta, e)};
}

struct PremiseData {
  std::size_t at;  // rule context size when the premise was formed
  CtxEntry entry;
  std::string adName;
  CompSignature sig;
};

struct Built {
  Ctx gamma;
  TransData m;
  std::vector<std::string> adNames;
  std::vector<PremiseData> premises;
};

std::string primed(const std::string& s) { return s + "'"; }

// Source and target variables for every entry of `target`, each with the
// direction of its entry, and the transformation between them whose type
// components are postulates.
Built build(const Ctx& target) {
  static const char* kAdNames[] = {"f", "g", "h", "k", "l", "m"};
  static const char* kTyNames[] = {"A", "B", "C", "D", "E", "F"};
  Built b;
  std::size_t nty = 0;
  for (const auto& e : target.entries) {
    if (e.isTy) {
      const int n = static_cast<int>(e.tel.size());
      std::string src = nty < 6 ? kTyNames[nty] : "T" + std::to_string(nty);
      std::string adn = nty < 6 ? kAdNames[nty] : "f" + std::to_string(nty);
      ++nty;
      b.gamma.entries.push_back(
          CtxEntry::tyVarE(e.dir, e.telDir, substTel(e.tel, Env::of(b.m.sigma, b.m.delta)), src, e.telNames));
      b.m = weakenBoth(b.m, 0, 1);
      b.gamma.entries.push_back(CtxEntry::tyVarE(e.dir, e.telDir, substTel(e.tel, Env::of(b.m.tau, b.m.delta)),
                                                 primed(src), e.telNames));
      b.m = weakenBoth(b.m, 0, 1);
      Type srcTy = tyVar(1, vinst(n));
      Type tgtTy = tyVar(0, vinst(n));
      CompSignature sig = compSignature(b.m, e, srcTy, tgtTy);
      b.premises.push_back(PremiseData{b.gamma.size(), e, adn, sig});
      b.adNames.push_back(adn);
      b.m.delta.entries.push_back(e);
      b.m.comps.push_back(TransComp::adapter(post(adn, sig.src, sig.tgt), srcTy, tgtTy));
      b.m.sigma.push_back(SubComp::type(srcTy));
      b.m.tau.push_back(SubComp::type(tgtTy));
      continue;
    }
    const auto& side = e.dir == Dir::Pos ? b.m.sigma : b.m.tau;
    Type t = subst(e.ty, Env::of(side, b.m.delta));
    b.gamma.entries.push_back(CtxEntry::tmVar(e.dir, t, e.name.empty() ? "a" : e.name));
    b.premises.push_back(PremiseData{b.gamma.size() - 1, e, {}, {}});
    b.m = weakenBoth(b.m, 1, 0);
    b.m = extendTm(b.m, e.dir, e.ty, var(0));
    b.m.delta.entries.back() = e;
    b.adNames.emplace_back();
  }
  return b;
}

std::string spineShort(Printer& p, const DescRef& name, const TransData& m, const std::vector<std::string>& ad) {
  std::string out = name + " [";
  for (std::size_t k = 0; k < m.comps.size(); ++k) {
    if (k) out += " > ";
    out += m.comps[k].isTy() ? ad[k] : p.term(m.comps[k].tm);
  }
  return out + "]";
}

Type endpoint(const IndDesc& d, const SubComps& side) {
  const std::size_t np = d.params.size();
  SubComps ps(side.begin(), side.begin() + static_cast<std::ptrdiff_t>(np));
  Inst is;
  for (std::size_t k = np; k < side.size(); ++k) is.push_back(side[k].tm);
  return ind(d.name, ps, is);
}

}  // namespace

GenericInstance genericInstance(const IndDesc& d) {
  Built b = build(d.fullCtx());
  return GenericInstance{b.gamma, b.m.comps, b.adNames};
}

RuleDoc deriveAdapterRule(const DescRef& name) {
  const IndDesc& d = descOf(name);
  RuleDoc r;
  r.name = d.name;
  std::set<std::string> globals = defaultGlobals();

  // Description fields, printed in the parameter scope.
  {
    Printer p(globals);
    for (const auto& e : d.params.entries) {
      RuleParam rp;
      rp.dir = dirName(e.dir);
      rp.isType = e.isTy;
      if (e.isTy) {
        for (std::size_t i = 0; i < e.tel.size(); ++i) {
          rp.telescope.push_back(p.type(e.tel[i]));
          p.bindTm(i < e.telNames.size() ? e.telNames[i] : std::string{});
        }
        p.popTm(e.tel.size());
        rp.telDir = dirName(e.telDir);
        rp.name = p.bindTy(e.name);
      } else {
        rp.type = p.type(e.ty);
        rp.name = p.bindTm(e.name);
      }
      r.params.push_back(rp);
    }
    for (std::size_t i = 0; i < d.indices.size(); ++i) {
      r.indices.push_back(p.type(d.indices[i]));
      p.bindTm(i < d.indexNames.size() ? d.indexNames[i] : std::string{});
    }
    p.popTm(d.indices.size());
    for (const auto& c : d.cons) {
      RuleCon rc;
      rc.name = c.name;
      for (std::size_t i = 0; i < c.nrec.size(); ++i) {
        rc.nrec.push_back(p.type(c.nrec[i]));
        p.bindTm(i < c.nrecNames.size() ? c.nrecNames[i] : std::string{});
      }
      for (const auto& rec : c.rec) {
        RuleRec rr;
        for (std::size_t i = 0; i < rec.arit.size(); ++i) {
          rr.arit.push_back(p.type(rec.arit[i]));
          p.bindTm(i < rec.aritNames.size() ? rec.aritNames[i] : std::string{});
        }
        for (const auto& t : rec.rind) rr.rind.push_back(p.term(t));
        p.popTm(rec.arit.size());
        rc.rec.push_back(rr);
      }
      for (const auto& t : c.ind) rc.ind.push_back(p.term(t));
      p.popTm(c.nrec.size());
      r.constructors.push_back(rc);
    }
  }

  // Adapter rule over the full context.
  {
    Built b = build(d.fullCtx());
    Printer p(globals);
    p.enterCtx(b.gamma);
    for (const auto& pd : b.premises) {
      const int tm = b.gamma.tmCountFrom(pd.at);
      const int ty = b.gamma.tyCountFrom(pd.at);
      if (!pd.entry.isTy) {
        const auto& ge = b.gamma[pd.at];
        std::string nm = p.term(var(b.gamma.tmCountFrom(pd.at + 1)));
        r.premises.push_back(nm + " : " + p.type(weakenFrom(b.gamma, pd.at, ge.ty)));
        continue;
      }
      Env sh = Env::shift(tm, ty);
      const std::size_t n = pd.sig.tel.size();
      std::string hyps = p.telescope(substTel(pd.sig.tel, sh), pd.entry.telNames);
      if (n > 0 && pd.sig.ext == Dir::Neg) hyps += "^-";
      std::string s = p.type(subst(pd.sig.src, sh, static_cast<int>(n)));
      std::string t = p.type(subst(pd.sig.tgt, sh, static_cast<int>(n)));
      p.popTm(n);
      r.premises.push_back((hyps.empty() ? "" : hyps + " |- ") + pd.adName + " : " + s + " => " + t);
    }
    r.conclusion = spineShort(p, d.name, b.m, b.adNames) + " : " + p.type(nf(endpoint(d, b.m.sigma))) + " => " +
                   p.type(nf(endpoint(d, b.m.tau)));
  }

  // One computation equation per constructor.
  for (std::size_t ci = 0; ci < d.cons.size(); ++ci) {
    const ConDesc& c = d.cons[ci];
    Built b = build(d.params);
    const Telescope& data = conDataTied(d.name, static_cast<int>(ci));
    std::vector<std::string> names = c.nrecNames;
    names.resize(c.nrec.size());
    for (std::size_t k = 0; k < c.rec.size(); ++k) names.push_back(k < c.recNames.size() ? c.recNames[k] : "");
    const int nargs = static_cast<int>(data.size());
    Ctx gc = extendCtxByTel(b.gamma, Dir::Pos, substTel(data, Env::of(b.m.sigma, b.m.delta)), names);
    TransData m = weakenBoth(b.m, nargs, 0);
    Term k = constr(d.name, static_cast<int>(ci), m.sigma, vinst(static_cast<std::size_t>(nargs)));
    Type resTy = constrResultType(*as<tm::Constr>(k));
    const auto* res = as<ty::Ind>(resTy);
    TransComps comps = m.comps;
    for (const auto& t : res->indices) comps.push_back(TransComp::term(t));
    Adapter f = indAd(d.name, comps);
    Term rhs = nf(castConstr(*as<tm::Constr>(k), *as<ad::Ind>(f), defaultNormalizer()));

    TransData full = transData(d.fullCtx(), comps);
    std::vector<std::string> adNames = b.adNames;
    adNames.resize(comps.size());
    Printer p(globals);
    p.enterCtx(gc);
    r.computation.push_back({p.term(k) + " <| " + spineShort(p, d.name, full, adNames), p.term(rhs)});
  }
  return r;
}

std::string RuleDoc::json(int indent) const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["name"] = name;
  j["params"] = ordered_json::array();
  for (const auto& p : params) {
    ordered_json o;
    o["name"] = p.name;
    o["dir"] = p.dir;
    o["telescope"] = p.telescope;
    if (!p.isType) o["type"] = p.type;
    if (!p.telescope.empty() && p.telDir == "-") o["telDir"] = p.telDir;
    j["params"].push_back(o);
  }
  j["indices"] = indices;
  j["constructors"] = ordered_json::array();
  for (const auto& c : constructors) {
    ordered_json o;
    o["name"] = c.name;
    o["nrec"] = c.nrec;
    o["rec"] = ordered_json::array();
    for (const auto& r : c.rec) o["rec"].push_back(ordered_json{{"arit", r.arit}, {"rind", r.rind}});
    o["ind"] = c.ind;
    j["constructors"].push_back(o);
  }
  j["adapterRule"] = ordered_json{{"premises", premises}, {"conclusion", conclusion}};
  j["computation"] = ordered_json::array();
  for (const auto& e : computation) j["computation"].push_back(ordered_json{{"lhs", e.lhs}, {"rhs", e.rhs}});
  return j.dump(indent);
}

std::string RuleDoc::text() const {
  std::ostringstream o;
  o << "rule " << name << "\n";
  for (const auto& p : premises) o << "  " << p << "\n";
  o << "  ----\n  " << conclusion << "\n";
  for (const auto& e : computation) o << "  " << e.lhs << "\n    == " << e.rhs << "\n";
  return o.str();
}

}  // namespace adaptt
