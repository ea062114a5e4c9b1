#include "adaptt/inductive.hpp"

#include <map>
#include <mutex>

#include "adaptt/desc_table.hpp"
#include "adaptt/functor.hpp"
#include "adaptt/subst.hpp"

namespace adaptt {

Type elabRecData(const IndDesc&, const ConDesc& c, std::size_t k) {
  const RecDesc& r = c.rec.at(k);
  Telescope arit;
  for (const auto& a : r.arit) arit.push_back(shift(a, 0, 0, 1));
  Inst rind;
  for (const auto& t : r.rind) rind.push_back(shift(t, 0, 0, 1));
  return piTel(arit, tyVar(0, rind));
}

Telescope elabConData(const IndDesc& d, const ConDesc& c) {
  Telescope out;
  for (std::size_t i = 0; i < c.nrec.size(); ++i) out.push_back(shift(c.nrec[i], 0, 0, 1));
  for (std::size_t k = 0; k < c.rec.size(); ++k)
    out.push_back(shift(elabRecData(d, c, k), static_cast<int>(k)));
  return out;
}

Type indSelf(const IndDesc& d) {
  Ctx full = d.fullCtx();
  return ind(d.name, weakenSub(d.params, full).comps, vinst(d.indices.size()));
}

namespace {
std::mutex cacheMu;
std::map<std::pair<std::string, int>, Telescope> tiedCache;
}  // namespace

const Telescope& conDataTied(const DescRef& name, int con) {
  {
    std::lock_guard<std::mutex> lk(cacheMu);
    auto it = tiedCache.find({name, con});
    if (it != tiedCache.end()) return it->second;
  }
  const IndDesc& d = descOf(name);
  if (con < 0 || con >= static_cast<int>(d.cons.size()))
    throw KernelError("UnboundVariable", "no constructor " + std::to_string(con) + " in " + name);
  Env e;
  e.tys.push_back(TyImg{indSelf(d), static_cast<int>(d.indices.size())});
  Telescope tied = substTel(elabConData(d, d.cons[con]), e);
  std::lock_guard<std::mutex> lk(cacheMu);
  return tiedCache.emplace(std::make_pair(name, con), std::move(tied)).first->second;
}

void forgetConData(const DescRef& name) {
  std::lock_guard<std::mutex> lk(cacheMu);
  for (auto it = tiedCache.begin(); it != tiedCache.end();)
    it = it->first.first == name ? tiedCache.erase(it) : std::next(it);
}

ElaboratedCon elaborateCon(const DescRef& name, int con) {
  const IndDesc& d = descOf(name);
  const ConDesc& c = d.cons.at(con);
  ElaboratedCon out;
  out.conData = elabConData(d, c);
  std::vector<std::string> names = c.nrecNames;
  names.resize(c.nrec.size());
  for (std::size_t k = 0; k < c.rec.size(); ++k)
    names.push_back(k < c.recNames.size() ? c.recNames[k] : std::string{});
  out.constructorContext = extendCtxByTel(d.params, Dir::Pos, conDataTied(name, con), names);
  out.resultIndices = shiftInst(c.ind, static_cast<int>(c.rec.size()));
  return out;
}

std::pair<Ctx, Type> constrType(const DescRef& name, int con) {
  const IndDesc& d = descOf(name);
  ElaboratedCon e = elaborateCon(name, con);
  Type t = ind(name, weakenSub(d.params, e.constructorContext).comps, e.resultIndices);
  return {e.constructorContext, t};
}

Type constrResultType(const tm::Constr& k) {
  const IndDesc& d = descOf(k.desc);
  const ConDesc& c = d.cons.at(k.con);
  SubComps env = k.params;
  for (std::size_t i = 0; i < c.nrec.size() && i < k.args.size(); ++i)
    env.push_back(SubComp::term(k.args[i]));
  Ctx ctx = extendCtxByTel(d.params, Dir::Pos, c.nrec);
  return ind(k.desc, k.params, substInst(c.ind, Env::of(env, ctx)));
}

Term castConstr(const tm::Constr& k, const ad::Ind& f, const Normalizer& n) {
  const IndDesc& d = descOf(k.desc);
  const std::size_t np = d.params.size();
  if (f.comps.size() != np + d.indices.size())
    throw KernelError("ArityMismatch", "inductive adapter spine has the wrong length");
  TransComps mu(f.comps.begin(), f.comps.begin() + static_cast<std::ptrdiff_t>(np));
  TransData m = transData(d.params, mu);
  if (!n.conv(m.sigma, k.params))
    throw KernelError("ClassifierMismatch", "adapter source parameters differ from the constructor's");
  Type srcTy = constrResultType(k);
  const auto* src = as<ty::Ind>(srcTy);
  for (std::size_t i = 0; i < d.indices.size(); ++i) {
    if (!n.conv(f.comps[np + i].tm, src->indices[i]))
      throw KernelError("IndexMismatch", "adapter source index differs from the constructor's index");
  }
  Inst args = castInst(k.args, conDataTied(k.desc, k.con), m);
  return constr(k.desc, k.con, m.tau, args);
}

// ---- builtin descriptions ----

Type natTy() { return ind("Nat", {}, {}); }

Term natLit(int n) {
  Term t = constr("Nat", 0, {}, {});
  for (int i = 0; i < n; ++i) t = constr("Nat", 1, {}, {t});
  return t;
}

namespace {
CtxEntry tyParam(const std::string& name, Dir d = Dir::Pos, Telescope tel = {}, Dir telDir = Dir::Pos,
                 std::vector<std::string> telNames = {}) {
  return CtxEntry::tyVarE(d, telDir, std::move(tel), name, std::move(telNames));
}
}  // namespace

IndDesc natDesc() {
  IndDesc d;
  d.name = "Nat";
  d.cons.push_back(ConDesc{"zero", {}, {}, {}, {}, {}});
  d.cons.push_back(ConDesc{"suc", {}, {RecDesc{{}, {}, {}}}, {}, {}, {"n"}});
  return d;
}

IndDesc listDesc() {
  IndDesc d;
  d.name = "List";
  d.params.entries.push_back(tyParam("X"));
  d.cons.push_back(ConDesc{"nil", {}, {}, {}, {}, {}});
  d.cons.push_back(ConDesc{"cons", {tyVar(0)}, {RecDesc{{}, {}, {}}}, {}, {"x"}, {"xs"}});
  return d;
}

IndDesc vecDesc() {
  IndDesc d;
  d.name = "Vec";
  d.params.entries.push_back(tyParam("X"));
  d.indices = {natTy()};
  d.indexNames = {"n"};
  d.cons.push_back(ConDesc{"nil", {}, {}, {natLit(0)}, {}, {}});
  d.cons.push_back(ConDesc{"cons",
                           {tyVar(0), natTy()},
                           {RecDesc{{}, {var(0)}, {}}},
                           {constr("Nat", 1, {}, {var(0)})},
                           {"x", "n"},
                           {"xs"}});
  return d;
}

IndDesc sumDesc() {
  IndDesc d;
  d.name = "Sum";
  d.params.entries.push_back(tyParam("X"));
  d.params.entries.push_back(tyParam("Y"));
  d.cons.push_back(ConDesc{"inl", {tyVar(1)}, {}, {}, {"x"}, {}});
  d.cons.push_back(ConDesc{"inr", {tyVar(0)}, {}, {}, {"y"}, {}});
  return d;
}

IndDesc wDesc() {
  IndDesc d;
  d.name = "W";
  d.params.entries.push_back(tyParam("X"));
  d.params.entries.push_back(tyParam("Y", Dir::Neg, {tyVar(0)}, Dir::Pos, {"x"}));
  d.cons.push_back(ConDesc{"sup",
                           {tyVar(1)},
                           {RecDesc{{tyVar(0, {var(0)})}, {}, {"y"}}},
                           {},
                           {"x"},
                           {"z"}});
  return d;
}

IndDesc idDesc() {
  IndDesc d;
  d.name = "Id";
  d.params.entries.push_back(tyParam("X"));
  d.params.entries.push_back(CtxEntry::tmVar(Dir::Pos, tyVar(0), "x"));
  d.indices = {tyVar(0)};
  d.indexNames = {"y"};
  d.cons.push_back(ConDesc{"refl", {}, {}, {var(0)}, {}, {}});
  return d;
}

IndDesc treeDesc() {
  IndDesc d;
  d.name = "Tree";
  d.params.entries.push_back(tyParam("X"));
  d.params.entries.push_back(tyParam("Y", Dir::Neg));
  d.cons.push_back(ConDesc{"leaf", {}, {}, {}, {}, {}});
  d.cons.push_back(
      ConDesc{"node", {tyVar(1)}, {RecDesc{{tyVar(0)}, {}, {"y"}}}, {}, {"x"}, {"r"}});
  return d;
}

void registerBuiltins(DescTable& t) {
  t.add(natDesc());
  t.add(listDesc());
  t.add(vecDesc());
  t.add(sumDesc());
  t.add(wDesc());
  t.add(idDesc());
}

}  // namespace adaptt
