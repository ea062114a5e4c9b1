#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "adaptt/desc_table.hpp"
#include "adaptt/golden.hpp"
#include "adaptt/model.hpp"
#include "adaptt/normalize.hpp"
#include "adaptt/pretty.hpp"
#include "adaptt/ruledoc.hpp"
#include "adaptt/surface.hpp"
#include "adaptt/trace.hpp"

using namespace adaptt;

namespace {

enum Exit { kOk = 0, kTypeError = 1, kParseError = 2, kOracleFailure = 3, kUsage = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// `-` reads standard input.
std::string readFile(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  ss << in.rdbuf();
  return ss.str();
}

int report(const Diagnostic& d) {
  std::cerr << d.str() << "\n";
  return d.code == "ParseError" ? kParseError : kTypeError;
}

std::string shown(const CoreDecl& d) {
  if (d.sort == Sort::Type) return showType(d.ctx, nf(d.ty));
  if (d.sort == Sort::Adapter) return showAdapter(d.ctx, nf(d.ad));
  return showTerm(d.ctx, nf(d.tm));
}

int cmdCheck(const std::vector<std::string>& files) {
  int worst = kOk;
  for (const auto& file : files) {
    try {
      CoreProgram prog = elaborateProgram(parse(readFile(file), file), file);
      for (const auto& d : prog.decls)
        if (d.kind == Decl::Normalize) std::cout << shown(d) << "\n";
      std::cout << "OK " << file << " (" << prog.decls.size() << " declarations)\n";
    } catch (const SyntaxError& e) {
      worst = std::max(worst, report(e.diag()));
    } catch (const CheckError& e) {
      worst = std::max(worst, report(e.diag));
    }
  }
  return worst;
}

int cmdNorm(const std::string& file, const std::string& expr) {
  try {
    Elaborator el(file);
    el.elaborate(parse(readFile(file), file));
    auto [hyps, e] = parseQuery(expr);
    auto q = el.query(hyps, e);
    if (q.sort == Sort::Type)
      std::cout << showType(q.ctx, nf(q.ty)) << "\n";
    else if (q.sort == Sort::Adapter)
      std::cout << showAdapter(q.ctx, nf(q.ad)) << "\n";
    else
      std::cout << showTerm(q.ctx, nf(q.tm)) << "\n";
    return kOk;
  } catch (const SyntaxError& e) {
    return report(e.diag());
  } catch (const CheckError& e) {
    return report(e.diag);
  }
}

int cmdDerive(const std::string& file, const std::string& name, bool json) {
  try {
    elaborateProgram(parse(readFile(file), file), file);
    if (!DescTable::global().find(name)) throw UsageError("no datatype named " + name);
    RuleDoc r = deriveAdapterRule(name);
    std::cout << (json ? r.json(2) + "\n" : r.text());
    return kOk;
  } catch (const SyntaxError& e) {
    return report(e.diag());
  } catch (const CheckError& e) {
    return report(e.diag);
  }
}

int cmdModel(const std::string& file, const std::string& bindingsPath) {
  std::vector<Binding> bindings = Binding::fromJson(readFile(bindingsPath));
  CoreProgram prog;
  try {
    prog = elaborateProgram(parse(readFile(file), file), file);
  } catch (const SyntaxError& e) {
    return report(e.diag());
  } catch (const CheckError& e) {
    return report(e.diag);
  }
  std::size_t agree = 0, skipped = 0, failed = 0;
  for (const auto& d : prog.decls) {
    if (d.kind != Decl::Assert) continue;
    for (std::size_t k = 0; k < bindings.size(); ++k) {
      Model m(bindings[k]);
      std::string where = file + ":" + std::to_string(d.span.line) + " binding " + std::to_string(k);
      try {
        bool ok = d.sort == Sort::Term   ? m.agreeTm(d.ctx, d.tm, d.tm2, d.ty)
                  : d.sort == Sort::Type ? m.agreeTy(d.ctx, d.ty, d.ty2)
                                         : m.agreeAd(d.ctx, d.ad, d.ad2, d.src, d.tgt);
        std::cout << (ok ? "AGREE " : "DISAGREE ") << where << "\n";
        ++(ok ? agree : failed);
      } catch (const NonEnumerableDomain& e) {
        std::cout << "SKIP " << where << ": " << e.what() << "\n";
        ++skipped;
      }
    }
  }
  std::cout << agree << " agree, " << failed << " disagree, " << skipped << " skipped\n";
  return failed ? kOracleFailure : kOk;
}

int cmdSelftest() {
  int status = kOk;
  for (const auto& r : runGolden()) {
    std::cout << (r.ok ? "OK   " : "FAIL ") << r.name << "\n";
    if (!r.ok) {
      std::cout << "     " << r.detail << "\n";
      status = kTypeError;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptt: checker, normalizer and rule derivation for adapter type theory"};
  app.require_subcommand(1);
  bool trace = false;
  app.add_flag("--trace", trace, "Print rewrite steps to stderr");

  std::vector<std::string> checkFiles;
  auto* check = app.add_subcommand("check", "Parse, elaborate and check files");
  check->add_option("files", checkFiles, "Source files")->required()->check(CLI::ExistingFile);

  std::string normFile, normExpr;
  auto* norm = app.add_subcommand("norm", "Normalize an expression in the scope of a file");
  norm->add_option("file", normFile, "Source file")->required()->check(CLI::ExistingFile);
  norm->add_option("-e,--expr", normExpr, "Expression, optionally `hyps |- e`")->required();

  std::string deriveFile, deriveName;
  bool deriveJson = false;
  auto* derive = app.add_subcommand("derive", "Print the derived adapter rule of a datatype");
  derive->add_option("file", deriveFile, "Source file declaring the datatype, or - for stdin")->required();
  derive->add_option("name", deriveName, "Datatype name")->required();
  derive->add_flag("--json", deriveJson, "Emit JSON");

  std::string modelFile, modelBindings;
  auto* model = app.add_subcommand("model", "Check assertions in the finite set model");
  model->add_option("file", modelFile, "Source file")->required()->check(CLI::ExistingFile);
  model->add_option("--bindings", modelBindings, "Binding JSON")->required()->check(CLI::ExistingFile);

  auto* selftest = app.add_subcommand("selftest", "Run the builtin computation-rule suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (const char* env = std::getenv("ADAPTT_TRACE"); env && std::string(env) == "1") trace = true;
  Tracer tracer(&std::cerr);
  std::optional<TraceScope> scope;
  if (trace) scope.emplace(&tracer);

  try {
    if (*check) return cmdCheck(checkFiles);
    if (*norm) return cmdNorm(normFile, normExpr);
    if (*derive) return cmdDerive(deriveFile, deriveName, deriveJson);
    if (*model) return cmdModel(modelFile, modelBindings);
    if (*selftest) return cmdSelftest();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
