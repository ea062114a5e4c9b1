#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaptt/check.hpp"
#include "adaptt/syntax.hpp"

namespace adaptt {

// ---- surface AST ----

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

struct Binder {
  std::string name;
  ExprP type;  // null for a bare name
  bool neg = false;
  Span span;
};

struct SpineElem {
  ExprP e;
  ExprP srcAnn;  // `: S => T`, both under the element's binders
  ExprP tgtAnn;
};

struct Expr {
  enum Kind { Name, Num, App, Arrow, Prod, Fun, Cast, Comp, IndSpine, PiSpine, SigmaSpine };
  Kind kind = Name;
  std::string name;            // Name; head of IndSpine; binder name of a dependent Arrow/Prod
  int num = 0;                 // Num
  std::vector<ExprP> args;     // App: head then arguments; Arrow/Prod: dom, cod; Cast: tm, ad; Comp: as written
  std::vector<Binder> binders; // Fun
  ExprP body;                  // Fun
  std::vector<SpineElem> spine;
  ExprP annot;                 // PiSpine/SigmaSpine `; fun x => T`
  Span span;
};

// Hypothesis or datatype parameter.
struct Hyp {
  std::string name;
  bool isTy = false;
  ExprP type;                 // term hypothesis
  bool neg = false;           // direction of the entry
  std::vector<Binder> tel;    // type hypothesis dependency telescope
  bool telNeg = false;
  Span span;
};

struct RawRec {
  std::string name;
  std::vector<Binder> arit;
  std::vector<ExprP> rind;
};

struct ConDecl {
  std::string name;
  Span span;
  bool raw = false;
  ExprP type;                  // arrow form
  std::vector<Binder> nrec;    // record form
  std::vector<RawRec> rec;
  std::vector<ExprP> ind;
};

enum class Sort { Term, Type, Adapter };

struct Decl {
  enum Kind { BaseType, Postulate, Data, Def, Check, Assert, Normalize };
  Kind kind = BaseType;
  std::string name;
  Span span;
  ExprP src, tgt;             // Postulate; adapter classifier of Def / Assert
  std::vector<Hyp> params;    // Data
  std::vector<Binder> indices;
  std::vector<ConDecl> cons;
  std::vector<Hyp> hyps;      // Check / Assert / Normalize
  ExprP lhs, rhs;             // Def body = lhs; Check subject = lhs
  ExprP cls;                  // classifier type, or null with typeCls / src,tgt
  bool typeCls = false;       // `: Type`
};

struct SyntaxError : std::runtime_error {
  Span span;
  std::string expected;
  std::string got;
  SyntaxError(Span s, std::string exp, std::string g)
      : std::runtime_error("expected " + exp + " got " + g), span(std::move(s)), expected(std::move(exp)),
        got(std::move(g)) {}
  Diagnostic diag() const { return Diagnostic{"ParseError", what(), span, expected, got}; }
};

std::vector<Decl> parse(const std::string& text, const std::string& file = "<input>");
// `[hyps |-] expr`, as accepted by the norm command.
std::pair<std::vector<Hyp>, ExprP> parseQuery(const std::string& text, const std::string& file = "<expr>");

// ---- core programs ----

struct CoreDecl {
  Decl::Kind kind = Decl::BaseType;
  std::string name;
  Span span;
  Type src, tgt;              // Postulate; adapter classifiers
  IndDesc desc;               // Data
  Ctx ctx;                    // Check / Assert / Normalize
  Sort sort = Sort::Term;
  Term tm, tm2;               // term subjects (Def/Check/Assert/Normalize)
  Type ty, ty2;               // type subjects, or the classifier of a term
  Adapter ad, ad2;            // adapter subjects
};

struct CoreProgram {
  std::vector<CoreDecl> decls;
  SpanMap spans;
  // Keeps every node named in `spans` alive so addresses stay unique.
  std::vector<std::shared_ptr<const void>> pins;
};

// Names, de Bruijn translation and checking. Datatypes are registered in the
// global description table as they are elaborated. Throws CheckError.
class Elaborator {
 public:
  explicit Elaborator(std::string file = "<input>");
  CoreProgram& program() { return prog_; }

  void declare(const Decl& d);
  CoreProgram elaborate(const std::vector<Decl>& ds);

  // Query elaboration in the scope of the declarations seen so far.
  struct Query {
    Ctx ctx;
    Sort sort;
    Term tm;
    Type ty;
    Adapter ad;
  };
  Query query(const std::vector<Hyp>& hyps, const ExprP& e);

  struct Impl;

 private:
  std::string file_;
  CoreProgram prog_;
  std::shared_ptr<Impl> impl_;
};

CoreProgram elaborateProgram(const std::vector<Decl>& ds, const std::string& file = "<input>");

// Globals are names a printed binder must avoid; empty means the registered
// datatypes only.
std::string prettyDecl(const CoreDecl& d, const std::set<std::string>& globals = {});
std::string prettyProgram(const CoreProgram& p);

// Structural equality of elaborated declarations (names ignored).
bool eq(const CoreDecl& a, const CoreDecl& b);

}  // namespace adaptt
