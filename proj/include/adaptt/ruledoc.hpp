#pragma once

#include <string>
#include <vector>

#include "adaptt/syntax.hpp"

namespace adaptt {

struct RuleParam {
  std::string name;
  std::string dir;  // "+" or "-"
  std::vector<std::string> telescope;
  std::string telDir;  // direction of the dependency telescope
  bool isType = true;
  std::string type;  // term parameters only
};

struct RuleRec {
  std::vector<std::string> arit;
  std::vector<std::string> rind;
};

struct RuleCon {
  std::string name;
  std::vector<std::string> nrec;
  std::vector<RuleRec> rec;
  std::vector<std::string> ind;
};

struct RuleEquation {
  std::string lhs;
  std::string rhs;
};

// The adapter typing rule of a datatype specialised at its parameter context,
// with one computation equation per constructor.
struct RuleDoc {
  std::string name;
  std::vector<RuleParam> params;
  std::vector<std::string> indices;
  std::vector<RuleCon> constructors;
  std::vector<std::string> premises;
  std::string conclusion;
  std::vector<RuleEquation> computation;

  std::string json(int indent = 2) const;
  std::string text() const;
};

RuleDoc deriveAdapterRule(const DescRef& d);

// The generic instance behind a RuleDoc: a rule context holding source and
// target variables, and the transformation into the description's full context.
// Type components are postulates named after the premises.
struct GenericInstance {
  Ctx gamma;
  TransComps comps;     // over gamma, into fullCtx
  std::vector<std::string> adapterNames;
};
GenericInstance genericInstance(const IndDesc& d);

}  // namespace adaptt
