#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace adaptt {

// Fixed set of rewrite-rule names. Every traced step uses one of these.
const std::vector<std::string>& ruleRegistry();
bool isRegisteredRule(std::string_view name);

// Per-thread rewrite tracer. Lines have the form `RULE <name> AT <path>`,
// where path is the dot-joined list of child labels from the root.
class Tracer {
 public:
  explicit Tracer(std::ostream* out) : out_(out) {}
  void emit(std::string_view rule);
  void push(std::string_view label) { path_.emplace_back(label); }
  void pop() { path_.pop_back(); }
  std::size_t steps() const { return steps_; }
  const std::vector<std::string>& unknown() const { return unknown_; }

 private:
  std::ostream* out_;
  std::vector<std::string> path_;
  std::size_t steps_ = 0;
  std::vector<std::string> unknown_;
};

Tracer* currentTracer();

// Installs a tracer for the current thread for the lifetime of the scope.
class TraceScope {
 public:
  explicit TraceScope(Tracer* t);
  ~TraceScope();
  TraceScope(const TraceScope&) = delete;
  TraceScope& operator=(const TraceScope&) = delete;

 private:
  Tracer* prev_;
};

inline void traceRule(std::string_view rule) {
  if (auto* t = currentTracer()) t->emit(rule);
}

class PathGuard {
 public:
  explicit PathGuard(std::string_view label) : t_(currentTracer()) {
    if (t_) t_->push(label);
  }
  ~PathGuard() {
    if (t_) t_->pop();
  }
  PathGuard(const PathGuard&) = delete;
  PathGuard& operator=(const PathGuard&) = delete;

 private:
  Tracer* t_;
};

}  // namespace adaptt
