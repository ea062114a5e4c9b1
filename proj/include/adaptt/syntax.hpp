#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace adaptt {

enum class Dir : std::uint8_t { Pos, Neg };

inline Dir operator*(Dir a, Dir b) { return a == b ? Dir::Pos : Dir::Neg; }
inline Dir flip(Dir d) { return d == Dir::Pos ? Dir::Neg : Dir::Pos; }
inline const char* dirName(Dir d) { return d == Dir::Pos ? "+" : "-"; }

struct TypeNode;
struct TermNode;
struct AdapterNode;

using Type = std::shared_ptr<const TypeNode>;
using Term = std::shared_ptr<const TermNode>;
using Adapter = std::shared_ptr<const AdapterNode>;

using Telescope = std::vector<Type>;
using Inst = std::vector<Term>;
using TelAdapter = std::vector<Adapter>;
using DescRef = std::string;

// One component of a substitution spine. Exactly one of tm / ty is set,
// matching the kind of the target context entry.
struct SubComp {
  Term tm;
  Type ty;
  static SubComp term(Term t) { return {std::move(t), nullptr}; }
  static SubComp type(Type t) { return {nullptr, std::move(t)}; }
  bool isTy() const { return ty != nullptr; }
};
using SubComps = std::vector<SubComp>;

// One component of a transformation spine.
// Term variable entries store the free-end term: the source side for a
// positive entry, the target side for a negative one. The other end is
// forced and recomputed.
// Type variable entries store the adapter together with both endpoint
// types (the sigma and tau components of that entry).
struct TransComp {
  Term tm;
  Adapter ad;
  Type srcTy;
  Type tgtTy;
  static TransComp term(Term t) { return {std::move(t), nullptr, nullptr, nullptr}; }
  static TransComp adapter(Adapter a, Type s, Type t) {
    return {nullptr, std::move(a), std::move(s), std::move(t)};
  }
  bool isTy() const { return ad != nullptr; }
};
using TransComps = std::vector<TransComp>;

namespace ty {
struct Var { int index; Inst inst; };
struct Pi { Type dom; Type cod; };
struct Sigma { Type fst; Type snd; };
struct Ind { DescRef desc; SubComps params; Inst indices; };
struct Base { std::string name; };
}  // namespace ty

namespace tm {
struct Var { int index; };
struct Lam { Type dom; Term body; };
struct App { Term fn; Term arg; };
struct Pair { Term fst; Term snd; Type fam; };
struct Fst { Term p; };
struct Snd { Term p; };
struct Cast { Term tm; Adapter ad; };
struct Constr { DescRef desc; int con; SubComps params; Inst args; };
}  // namespace tm

namespace ad {
struct Id { Type ty; };
struct Comp { std::vector<Adapter> chain; };  // applied first to last
struct Post { std::string name; Type src; Type tgt; };
struct Pi { Adapter dom; Adapter cod; Type srcCod; };
struct Sigma { Adapter fst; Adapter snd; Type tgtSnd; };
struct Ind { DescRef desc; TransComps comps; };
}  // namespace ad

struct TypeNode {
  std::variant<ty::Var, ty::Pi, ty::Sigma, ty::Ind, ty::Base> v;
};
struct TermNode {
  std::variant<tm::Var, tm::Lam, tm::App, tm::Pair, tm::Fst, tm::Snd, tm::Cast, tm::Constr> v;
};
struct AdapterNode {
  std::variant<ad::Id, ad::Comp, ad::Post, ad::Pi, ad::Sigma, ad::Ind> v;
};

template <class T, class P>
const T* as(const P& p) {
  return std::get_if<T>(&p->v);
}
template <class T, class P>
bool is(const P& p) {
  return std::holds_alternative<T>(p->v);
}

// Constructors. cast and comp enforce the normal-form invariants:
// a Cast never carries Id or Comp, a Comp chain is flat and Id-free.
Type tyVar(int index, Inst inst = {});
Type pi(Type dom, Type cod);
Type sigma(Type fst, Type snd);
Type ind(DescRef desc, SubComps params, Inst indices);
Type base(std::string name);

Term var(int index);
Term lam(Type dom, Term body);
Term app(Term fn, Term arg);
Term pair(Term a, Term b, Type fam);
Term fst(Term p);
Term snd(Term p);
Term cast(Term t, const Adapter& f);
Term rawCast(Term t, Adapter f);  // no splitting; caller guarantees atomicity
Term constr(DescRef desc, int con, SubComps params, Inst args);

Adapter idAd(Type ty);
Adapter comp(const Adapter& g, const Adapter& f);  // g after f
Adapter compChain(const std::vector<Adapter>& chain);
Adapter post(std::string name, Type src, Type tgt);
Adapter piAd(Adapter dom, Adapter cod, Type srcCod);
Adapter sigmaAd(Adapter fst, Adapter snd, Type tgtSnd);
Adapter indAd(DescRef desc, TransComps comps);

bool isAtomic(const Adapter& f);

struct CtxEntry {
  bool isTy = false;
  Dir dir = Dir::Pos;
  Type ty;                // term variable type
  Dir telDir = Dir::Pos;  // type variable telescope direction
  Telescope tel;          // type variable dependency telescope
  std::string name;
  std::vector<std::string> telNames;

  static CtxEntry tmVar(Dir d, Type t, std::string name = {});
  static CtxEntry tyVarE(Dir d, Dir telDir, Telescope tel, std::string name = {},
                         std::vector<std::string> telNames = {});
};

struct Ctx {
  std::vector<CtxEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  const CtxEntry& operator[](std::size_t i) const { return entries[i]; }

  // Entry position of term variable `index`, or -1.
  int tmPos(int index) const;
  // Entry position of type variable `index`, or -1.
  int tyPos(int index) const;
  // Number of term / type variable entries at positions >= from.
  int tmCountFrom(std::size_t from) const;
  int tyCountFrom(std::size_t from) const;
  int tmCount() const { return tmCountFrom(0); }
  int tyCount() const { return tyCountFrom(0); }

  Ctx prefix(std::size_t n) const;
  Ctx extTm(Dir d, Type t, std::string name = {}) const;
  Ctx extTy(Dir d, Dir telDir, Telescope tel, std::string name = {}) const;
};

struct Sub {
  Ctx src;
  Ctx tgt;
  SubComps comps;
};

struct Trans {
  Ctx src;
  Ctx tgt;
  TransComps comps;
};

struct RecDesc {
  Telescope arit;
  Inst rind;
  std::vector<std::string> aritNames;
};

struct ConDesc {
  std::string name;
  Telescope nrec;
  std::vector<RecDesc> rec;
  Inst ind;
  std::vector<std::string> nrecNames;
  std::vector<std::string> recNames;
};

struct IndDesc {
  std::string name;
  Ctx params;
  Telescope indices;
  std::vector<ConDesc> cons;
  std::vector<std::string> indexNames;

  // Params followed by the index telescope as positive term entries.
  Ctx fullCtx() const;
  int conIndex(const std::string& con) const;
};

// Dualization (eager; flips entry flags).
Ctx dualize(const Ctx& c, Dir d = Dir::Neg);
Sub dualize(const Sub& s, Dir d = Dir::Neg);
Trans dualize(const Trans& t, Dir d = Dir::Neg);
TransComps dualizeComps(const TransComps& comps);

Ctx extendCtxByTel(const Ctx& c, Dir d, const Telescope& tel,
                   const std::vector<std::string>& names = {});
Inst varInstantiation(const Telescope& tel);
Inst vinst(std::size_t n);

// Identity substitution spine of a context, over the context itself.
SubComps idComps(const Ctx& c);
Sub idSub(const Ctx& c);

// Structural equality (names and other printing metadata ignored).
bool eq(const Type& a, const Type& b);
bool eq(const Term& a, const Term& b);
bool eq(const Adapter& a, const Adapter& b);
bool eq(const SubComps& a, const SubComps& b);
bool eq(const TransComps& a, const TransComps& b);
bool eq(const Telescope& a, const Telescope& b);
bool eq(const Inst& a, const Inst& b);
bool eq(const Ctx& a, const Ctx& b);
bool eq(const Sub& a, const Sub& b);
bool eq(const Trans& a, const Trans& b);
bool eq(const RecDesc& a, const RecDesc& b);
bool eq(const ConDesc& a, const ConDesc& b);
bool eq(const IndDesc& a, const IndDesc& b);

// Invariant scans.
bool castInvariantHolds(const Term& t);
bool compInvariantHolds(const Adapter& f);

struct KernelError : std::runtime_error {
  std::string code;
  KernelError(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

}  // namespace adaptt
