#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "adaptt/functor.hpp"
#include "adaptt/normalize.hpp"
#include "adaptt/syntax.hpp"

namespace adaptt {

struct Span {
  std::string file;
  int line = 0;
  int col = 0;
};

// Core node identity -> surface position, filled by the elaborator.
using SpanMap = std::unordered_map<const void*, Span>;

struct Diagnostic {
  std::string code;
  std::string message;
  Span span;
  std::string expected;
  std::string got;

  // ERROR <code> <file>:<line>:<col> expected <X> got <Y>
  std::string str() const;
};

struct CheckError : KernelError {
  Diagnostic diag;
  explicit CheckError(Diagnostic d) : KernelError(d.code, d.message), diag(std::move(d)) {}
};

class Checker {
 public:
  explicit Checker(const Normalizer& n = defaultNormalizer(), const SpanMap* spans = nullptr)
      : n_(n), spans_(spans) {}

  void checkCtx(const Ctx& g);
  void checkTy(const Ctx& g, const Type& a);
  Type checkTm(const Ctx& g, const Term& t);
  void checkTmAgainst(const Ctx& g, const Term& t, const Type& a);
  std::pair<Type, Type> checkAd(const Ctx& g, const Adapter& f);
  void checkSubComps(const Ctx& g, const SubComps& s, const Ctx& delta);
  void checkSub(const Sub& s);
  TransData checkTransComps(const Ctx& g, const TransComps& m, const Ctx& delta);
  void checkTrans(const Trans& t);
  void checkTel(const Ctx& g, const Telescope& tel);
  void checkInst(const Ctx& g, const Inst& i, const Telescope& tel);
  // Returns the target types, each over g extended by the source prefix.
  Telescope checkTelAd(const Ctx& g, const TelAdapter& ta, const Telescope& src);
  void checkDesc(const IndDesc& d);

 private:
  [[noreturn]] void fail(const std::string& code, const std::string& msg, const std::string& expected = {},
                         const std::string& got = {});
  void expectConv(const Ctx& g, const Type& want, const Type& got, const std::string& what);

  struct Frame;
  const Normalizer& n_;
  const SpanMap* spans_;
  std::vector<const void*> stack_;
};

// Registration-time description check (used by the description table).
void checkDesc(const IndDesc& d);

// Weaken a telescope or type from a context prefix of length p to the full context.
Type weakenFrom(const Ctx& g, std::size_t p, const Type& a);
Telescope weakenTelFrom(const Ctx& g, std::size_t p, const Telescope& tel);

}  // namespace adaptt
