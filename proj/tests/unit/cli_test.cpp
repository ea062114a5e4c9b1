#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

namespace {

struct Outcome {
  int rc = -1;
  std::string out;
};

// Runs the CLI through the shell from the source directory. With merge set,
// stderr is appended to out; otherwise args carry their own redirections.
Outcome run(const std::string& args, bool merge = true) {
  std::string cmd = std::string("cd ") + ADAPTT_SOURCE_DIR + " && " + ADAPTT_CLI + " " + args + (merge ? " 2>&1" : "");
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string tempFile(const std::string& name, const std::string& text) {
  std::string path = std::string(::testing::TempDir()) + name;
  std::ofstream(path) << text;
  return path;
}

TEST(Cli, SelftestPrintsOneOkLinePerRow) {
  Outcome r = run("selftest");
  EXPECT_EQ(r.rc, 0) << r.out;
  std::istringstream in(r.out);
  std::string line;
  int ok = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(line.rfind("OK", 0), 0u) << line;
    ++ok;
  }
  EXPECT_EQ(ok, 10);
}

TEST(Cli, DeriveListAsJson) {
  Outcome r = run("derive corpus/prelude.adt List --json");
  EXPECT_EQ(r.rc, 0) << r.out;
  EXPECT_NE(r.out.find("\"conclusion\": \"List [f] : List A => List A'\""), std::string::npos) << r.out;
}

TEST(Cli, DeriveReadsStandardInput) {
  Outcome r = run("derive - Tree < corpus/prelude.adt");
  EXPECT_EQ(r.rc, 0) << r.out;
  EXPECT_NE(r.out.find("Tree [f > g] : Tree A B => Tree A' B'"), std::string::npos) << r.out;
}

TEST(Cli, DeriveIsDeterministic) { EXPECT_EQ(run("derive corpus/prelude.adt W").out, run("derive corpus/prelude.adt W").out); }

TEST(Cli, CheckCorpus) {
  Outcome r = run("check corpus/prelude.adt");
  EXPECT_EQ(r.rc, 0) << r.out;
}

TEST(Cli, TypeErrorExitsWithOne) {
  Outcome r = run("check corpus/broken.adt");
  EXPECT_EQ(r.rc, 1);
  EXPECT_TRUE(std::regex_search(r.out, std::regex("ERROR ClassifierMismatch corpus/broken\\.adt:6:\\d+ expected A got B")))
      << r.out;
}

TEST(Cli, ParseErrorExitsWithTwo) {
  std::string f = tempFile("unterminated.adt", "data List (X : Ty+");
  Outcome r = run("check " + f);
  EXPECT_EQ(r.rc, 2);
  EXPECT_NE(r.out.find("ERROR ParseError"), std::string::npos) << r.out;
}

TEST(Cli, UsageErrorsExitWithFour) {
  EXPECT_EQ(run("").rc, 4);
  EXPECT_EQ(run("frobnicate").rc, 4);
  EXPECT_EQ(run("check no-such-file.adt").rc, 4);
  EXPECT_EQ(run("model corpus/prelude.adt").rc, 4);
  std::string bad = tempFile("partial.json", R"({"types": {"A": ["a0"]}, "adapters": {"f": {"A->A'": {}}}})");
  EXPECT_EQ(run("model corpus/prelude.adt --bindings " + bad).rc, 4);
}

TEST(Cli, ModelAgreesOnTheCorpus) {
  Outcome r = run("model corpus/prelude.adt --bindings corpus/bindings.json");
  EXPECT_EQ(r.rc, 0) << r.out;
  EXPECT_NE(r.out.find(" 0 disagree"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("DISAGREE"), std::string::npos) << r.out;
}

TEST(Cli, NormPrintsTheNormalForm) {
  Outcome r = run("norm corpus/prelude.adt -e \"(a : A) |- List.cons A a (List.nil A) <| List [f]\"");
  EXPECT_EQ(r.rc, 0) << r.out;
  EXPECT_EQ(r.out, "List.cons A' (a <| f) (List.nil A')\n");
}

TEST(Cli, TraceLinesOnStandardError) {
  Outcome r = run("--trace norm corpus/prelude.adt -e \"(a : A) |- a <| f <| id A'\" 2>&1 >/dev/null", false);
  std::istringstream in(r.out);
  std::string line;
  int n = 0;
  std::regex shape("RULE [A-Z0-9-]+ AT [A-Za-z0-9_.]+");
  while (std::getline(in, line)) {
    EXPECT_TRUE(std::regex_match(line, shape)) << line;
    ++n;
  }
  EXPECT_GT(n, 0);
}

}  // namespace
