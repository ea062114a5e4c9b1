#include <sstream>

#include "adaptt/check.hpp"
#include "adaptt/desc_table.hpp"
#include "adaptt/functor.hpp"
#include "adaptt/pretty.hpp"
#include "adaptt/subst.hpp"
#include "adaptt/surface.hpp"

namespace adaptt {

namespace {

std::string recName(const std::string& hint) {
  if (hint.empty() || hint == "_" || isKeyword(hint)) return "r";
  return hint;
}

// `D params indices` seen from `extra` term binders past the parameters.
Type selfType(const IndDesc& d, int extra, const Inst& indices) {
  return ind(d.name, substComps(idComps(d.params), d.params, Env::shift(extra, 0)), indices);
}

std::string dataDecl(const IndDesc& d, const std::set<std::string>& globals) {
  Printer p(globals);
  std::ostringstream o;
  o << "data " << d.name;
  std::string hyps = p.bindCtx(d.params);
  if (!hyps.empty()) o << " " << hyps;
  if (!d.indices.empty()) {
    o << " : " << p.telescope(d.indices, d.indexNames) << " -> Type";
    p.popTm(d.indices.size());
  }
  o << " {";
  for (std::size_t ci = 0; ci < d.cons.size(); ++ci) {
    const ConDesc& c = d.cons[ci];
    o << (ci ? " ;\n  " : "\n  ") << c.name << " : ";
    const int nn = static_cast<int>(c.nrec.size());
    for (int i = 0; i < nn; ++i) {
      std::string ty = p.type(c.nrec[i]);
      std::string x = p.bindTm(i < static_cast<int>(c.nrecNames.size()) ? c.nrecNames[i] : "x");
      o << "(" << x << " : " << ty << ") -> ";
    }
    for (std::size_t k = 0; k < c.rec.size(); ++k) {
      const RecDesc& r = c.rec[k];
      std::string arg;
      for (std::size_t i = 0; i < r.arit.size(); ++i) {
        std::string ty = p.type(r.arit[i]);
        std::string x = p.bindTm(i < r.aritNames.size() ? r.aritNames[i] : "_");
        arg += "(" + x + " : " + ty + ") -> ";
      }
      arg += p.type(selfType(d, nn + static_cast<int>(r.arit.size()), r.rind));
      p.popTm(r.arit.size());
      o << "(" << recName(k < c.recNames.size() ? c.recNames[k] : "") << " : " << arg << ") -> ";
    }
    o << p.type(selfType(d, nn, c.ind));
    p.popTm(c.nrec.size());
  }
  o << "\n}";
  return o.str();
}

std::string subject(Printer& p, const CoreDecl& d, bool second) {
  if (d.sort == Sort::Type) return p.type(second ? d.ty2 : d.ty);
  if (d.sort == Sort::Adapter) return p.adapter(second ? d.ad2 : d.ad);
  return p.term(second ? d.tm2 : d.tm);
}

// `[subject] : classifier`; an assertion prints its right-hand side.
std::string classified(Printer& p, const CoreDecl& d, bool withSubject) {
  const bool second = d.kind == Decl::Assert;
  std::string subj = withSubject ? subject(p, d, second) : "";
  if (d.sort == Sort::Type) return subj + " : Type";
  if (d.sort == Sort::Adapter) {
    Type s = d.src, t = d.tgt;
    if (!s) {
      s = adSrc(d.ad);
      t = adTgt(d.ad);
    }
    return subj + " : " + p.type(s) + " => " + p.type(t);
  }
  Type ty = d.ty;
  if (!ty) ty = Checker().checkTm(d.ctx, d.tm);
  return subj + " : " + p.type(ty);
}

}  // namespace

std::string prettyDecl(const CoreDecl& d, const std::set<std::string>& globals) {
  std::set<std::string> gl = globals.empty() ? defaultGlobals() : globals;
  Printer p(gl);
  switch (d.kind) {
    case Decl::BaseType: return "type " + d.name + " ;";
    case Decl::Postulate:
      return "postulate adapter " + d.name + " : " + p.type(d.src) + " => " + p.type(d.tgt) + " ;";
    case Decl::Data: return dataDecl(d.desc, gl);
    case Decl::Def: {
      if (d.sort == Sort::Type) return "def " + d.name + " : Type := " + p.type(d.ty) + " ;";
      std::string cls = classified(p, d, false);
      return "def " + d.name + cls + " := " + subject(p, d, false) + " ;";
    }
    case Decl::Check: {
      std::string hyps = p.bindCtx(d.ctx);
      return "check " + hyps + (hyps.empty() ? "" : " ") + "|- " + classified(p, d, true) + " ;";
    }
    case Decl::Assert: {
      std::string hyps = p.bindCtx(d.ctx);
      std::string lhs = subject(p, d, false);
      return "assert " + hyps + (hyps.empty() ? "" : " ") + "|- " + lhs + " == " + classified(p, d, true) + " ;";
    }
    case Decl::Normalize: {
      std::string hyps = p.bindCtx(d.ctx);
      return "normalize " + hyps + (hyps.empty() ? "" : " ") + "|- " + subject(p, d, false) + " ;";
    }
  }
  return {};
}

std::string prettyProgram(const CoreProgram& prog) {
  std::set<std::string> gl = defaultGlobals();
  for (const auto& d : prog.decls)
    if (d.kind == Decl::BaseType || d.kind == Decl::Postulate || d.kind == Decl::Data || d.kind == Decl::Def)
      gl.insert(d.name);
  std::string out;
  for (const auto& d : prog.decls) out += prettyDecl(d, gl) + "\n";
  return out;
}

namespace {

template <class T>
bool eqOpt(const T& a, const T& b) {
  if (!a || !b) return !a && !b;
  return eq(a, b);
}

}  // namespace

bool eq(const CoreDecl& a, const CoreDecl& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Decl::BaseType: return true;
    case Decl::Postulate: return eq(a.src, b.src) && eq(a.tgt, b.tgt);
    case Decl::Data: return eq(a.desc, b.desc);
    default: break;
  }
  if (a.sort != b.sort) return false;
  if (a.kind != Decl::Def && !eq(a.ctx, b.ctx)) return false;
  return eqOpt(a.tm, b.tm) && eqOpt(a.tm2, b.tm2) && eqOpt(a.ty, b.ty) && eqOpt(a.ty2, b.ty2) &&
         eqOpt(a.ad, b.ad) && eqOpt(a.ad2, b.ad2) && eqOpt(a.src, b.src) && eqOpt(a.tgt, b.tgt);
}

}  // namespace adaptt
