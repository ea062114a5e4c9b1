#pragma once

#include <set>
#include <string>
#include <vector>

#include "adaptt/syntax.hpp"

namespace adaptt {

// Prints core syntax in the surface notation. Bound names are made unique
// within the scope so the output parses back to the same de Bruijn terms.
class Printer {
 public:
  explicit Printer(std::set<std::string> globals = {});

  // Binds every entry of g, returning the hypotheses text `(x : A) (X : Ty+) ...`.
  std::string bindCtx(const Ctx& g);
  // Binds the entries without producing text.
  void enterCtx(const Ctx& g);
  std::string bindTm(const std::string& hint);
  std::string bindTy(const std::string& hint);
  void popTm(std::size_t n = 1);
  void popTy(std::size_t n = 1);

  // Binder list `(x : A)(y : B)` for a telescope; binds its names.
  std::string telescope(const Telescope& tel, const std::vector<std::string>& names);

  std::string type(const Type& a, int prec = 0);
  std::string term(const Term& t, int prec = 0);
  std::string adapter(const Adapter& f, int prec = 0);

 private:
  std::string fresh(const std::string& hint, bool isTy);
  bool taken(const std::string& n) const;
  std::string entry(const CtxEntry& e);
  std::string family(std::size_t n, const std::vector<std::string>& names, const Type& body);
  std::string transComp(const CtxEntry& e, const TransComp& c);
  std::string spineArg(const CtxEntry& e, const SubComp& c);

  std::set<std::string> globals_;
  std::vector<std::string> tms_;
  std::vector<std::string> tys_;
};

// Names that a printed term must not capture: registered datatypes.
std::set<std::string> defaultGlobals();

std::string showType(const Ctx& g, const Type& a);
std::string showTerm(const Ctx& g, const Term& t);
std::string showAdapter(const Ctx& g, const Adapter& f);
std::string showCtx(const Ctx& g);

// Reserved words of the surface language.
bool isKeyword(const std::string& s);

// True when the innermost term variable occurs in x.
bool usesVar0(const Type& a);

}  // namespace adaptt
