#pragma once

#include <string>
#include <vector>

namespace adaptt {

// Computation equations of the builtin datatypes, written out by hand in the
// surface language, plus the rose-tree type declared in the prelude. Each row
// is one `assert`; the kernel must derive its left side by conversion.
struct GoldenRow {
  std::string name;
  std::string source;
  bool builtin = true;  // false for rows over datatypes declared in the prelude
};

const std::string& goldenPrelude();
const std::vector<GoldenRow>& goldenRows();

struct GoldenResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

// Elaborates the prelude and then every row on its own.
std::vector<GoldenResult> runGolden();

}  // namespace adaptt
