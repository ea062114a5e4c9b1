#include "adaptt/trace.hpp"

#include <algorithm>

namespace adaptt {

const std::vector<std::string>& ruleRegistry() {
  static const std::vector<std::string> rules = {
      // substitution pushed to leaves
      "SUB-VAR", "SUB-HD-TY", "SUB-PI", "SUB-SIGMA", "SUB-IND", "SUB-LAM", "SUB-APP", "SUB-PAIR",
      "SUB-FST", "SUB-SND", "SUB-CAST", "SUB-CONSTR", "SUB-AD-ID", "SUB-AD-COMP", "SUB-AD-POST",
      "SUB-AD-PI", "SUB-AD-SIGMA", "SUB-AD-IND",
      // category structure of adapters and casts
      "ADAPT-ID", "ADAPT-COMP", "ID-LEFT", "ID-RIGHT", "ASSOC",
      // computation
      "BETA", "FST-BETA", "SND-BETA", "AD-FUN-EQ", "AD-PAIR-EQ1", "AD-PAIR-EQ2", "AD-PAIR-LIT",
      "IND-AD-EQ",
      // functorial action
      "TY-TRANS-ID", "TY-TRANS-COMP", "TRANS-HD-AD", "TRANS-PI", "TRANS-SIGMA", "TRANS-IND",
      "TRANS-CONST",
      // telescopes and eta
      "PI-TEL-NIL", "PI-TEL-CONS", "ETA-PI", "ETA-SIGMA"};
  return rules;
}

bool isRegisteredRule(std::string_view name) {
  const auto& r = ruleRegistry();
  return std::find(r.begin(), r.end(), name) != r.end();
}

void Tracer::emit(std::string_view rule) {
  ++steps_;
  if (!isRegisteredRule(rule)) unknown_.emplace_back(rule);
  if (!out_) return;
  *out_ << "RULE " << rule << " AT ";
  if (path_.empty()) {
    *out_ << "root";
  } else {
    for (std::size_t i = 0; i < path_.size(); ++i) *out_ << (i ? "." : "") << path_[i];
  }
  *out_ << '\n';
}

namespace {
thread_local Tracer* tlTracer = nullptr;
}

Tracer* currentTracer() { return tlTracer; }

TraceScope::TraceScope(Tracer* t) : prev_(tlTracer) { tlTracer = t; }
TraceScope::~TraceScope() { tlTracer = prev_; }

}  // namespace adaptt
