#pragma once

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaptt/syntax.hpp"

namespace adaptt {

// Finite interpretation of base types and postulated adapters.
// Adapter tables are keyed by "Src->Tgt" and map printed source values to
// printed target values.
struct Binding {
  std::map<std::string, std::vector<std::string>> types;
  std::map<std::string, std::map<std::string, std::map<std::string, std::string>>> adapters;

  // One binding object, or an array of them.
  static std::vector<Binding> fromJson(const std::string& text);
  std::string json() const;
};

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The judgment mentions a function space or type the model cannot enumerate.
struct NonEnumerableDomain : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SemValue;
struct SemType;
using Val = std::shared_ptr<const SemValue>;
using SemTypeP = std::shared_ptr<const SemType>;
using AdFn = std::function<Val(const Val&)>;
using TyFam = std::function<SemTypeP(const std::vector<Val>&)>;

struct SemValue {
  enum Kind { Atom, Pair, Fun, Con };
  Kind kind = Atom;
  std::string atom;
  Val a, b;
  AdFn fn;
  DescRef desc;
  int con = 0;
  std::vector<Val> args;
};

struct SemType {
  enum Kind { Finite, Pi, Sigma, Ind };
  Kind kind = Finite;
  std::vector<Val> elems;
  SemTypeP dom;                              // Pi domain / Sigma first
  std::function<SemTypeP(const Val&)> cod;   // Pi codomain / Sigma second
  DescRef desc;
  std::vector<Val> paramTms;                 // Ind parameter environment
  std::vector<TyFam> paramTys;
};

struct SemEnv {
  std::vector<Val> tms;
  std::vector<TyFam> tys;

  const Val& tm(int index) const;
  const TyFam& ty(int index) const;
  SemEnv withTm(Val v) const;
  SemEnv withTms(const std::vector<Val>& vs) const;
};

Val atomVal(std::string name);
Val pairVal(Val a, Val b);
Val funVal(AdFn f);
Val conVal(DescRef desc, int con, std::vector<Val> args);
Val applyFn(const Val& f, const Val& x);
std::string show(const Val& v);

class Model {
 public:
  explicit Model(Binding b);
  const Binding& binding() const { return b_; }

  SemTypeP evalTy(const Type& a, const SemEnv& env) const;
  Val evalTm(const Term& t, const SemEnv& env) const;
  AdFn evalAd(const Adapter& f, const SemEnv& env) const;

  // Extensional equality; functions are compared over their whole domain.
  bool semEq(const Val& x, const Val& y, const SemTypeP& a) const;
  std::vector<Val> enumerate(const SemTypeP& a) const;
  // Every assignment of values to the term variables of g.
  std::vector<SemEnv> environments(const Ctx& g) const;

  // Semantic agreement of two judgments under every environment of g.
  bool agreeTm(const Ctx& g, const Term& x, const Term& y, const Type& a) const;
  bool agreeAd(const Ctx& g, const Adapter& f, const Adapter& h, const Type& src, const Type& tgt) const;
  bool agreeTy(const Ctx& g, const Type& a, const Type& b) const;

  struct Trans;

 private:
  Val act(const Type& a, const Trans& mu, const Val& v) const;
  Val indMap(const IndDesc& d, const Trans& nu, const Val& v) const;
  Trans paramTrans(const IndDesc& d, const SubComps& ps, const Trans& mu) const;
  Val postulate(const std::string& name, const Type& src, const Type& tgt, const Val& v) const;

  Binding b_;
};

}  // namespace adaptt
