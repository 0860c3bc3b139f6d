#include <gtest/gtest.h>

#include <sstream>

#include "dsum/cli.hpp"
#include "dsum/report.hpp"
#include "support.hpp"

using namespace dsum;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

CliRun run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string trim(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

const std::string kIntroWitness = R"({
  "f": "x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + 2*x2^3 + 3*x1^2*x3 + 6*x1*x2*x3 + 4*x2^2*x3 + 3*x1*x3^2 + 4*x2*x3^2 + 2*x3^3",
  "basis": [["1", "1", "1"], ["0", "1", "0"], ["0", "0", "1"]],
  "f1": "x1^3",
  "f2": "x2^3 + x2^2*x3 + x2*x3^2 + x3^3"
})";

}  // namespace

TEST(Cli, AnalyzeIntroCubic) {
  const CliRun r = run({"analyze", dsum::test::data_path("intro_cubic.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["verdict"], "direct_sum");
  ASSERT_EQ(j["splits"].size(), 1u);
  EXPECT_EQ(j["splits"][0]["basis_vectors"], Json::parse(R"(["x1 + x2 + x3", "x2", "x3"])"));
  EXPECT_EQ(j["splits"][0]["basis"][0], Json::parse(R"(["1", "1", "1"])"));
  for (const char* key : {"input", "n", "degree", "field", "assumptions_ok", "concise", "smooth",
                          "associated_form", "factors", "splits", "verdict", "fiber_dimension",
                          "maximally_fine", "criteria", "field_note", "timings_ms", "seed"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_TRUE(j["timings_ms"].is_null());
  EXPECT_EQ(j["seed"], 0x5EED);
}

TEST(Cli, AnalyzeMinusSix) {
  const CliRun r = run({"analyze", "--poly", "x1^4 + x2^4 - 6*x1^2*x2^2"});
  ASSERT_EQ(r.code, 0);
  const Json j = r.json();
  EXPECT_EQ(j["verdict"], "not_direct_sum");
  EXPECT_TRUE(j["field_note"].is_string());
}

TEST(Cli, InputErrors) {
  const CliRun nh = run({"analyze", "--poly", "x1^3 + x2"});
  EXPECT_EQ(nh.code, 2);
  EXPECT_EQ(nh.json()["error"], "non_homogeneous");
  EXPECT_FALSE(nh.err.empty());

  EXPECT_EQ(run({"analyze", "--poly", "x1^2 + * x2"}).json()["error"], "syntax_error");
  EXPECT_EQ(run({"analyze", "--field", "fp:8", "--poly", "x1^4 + x2^4"}).code, 2);
  EXPECT_EQ(run({"analyze", "--bogus"}).code, 2);
  EXPECT_EQ(run({"analyze", "/nonexistent/form.txt"}).code, 2);
}

TEST(Cli, GuardExceeded) {
  const CliRun r = run({"analyze", "--max-ambient-dim", "10", "--poly", "x1^4 + x2^4 + x3^4"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.json()["error"], "guard_exceeded");
}

TEST(Cli, AssocForm) {
  EXPECT_EQ(trim(run({"assocform", "--poly", "x1^3 + x2^3 + x3^3"}).out), "z1*z2*z3");
  EXPECT_EQ(trim(run({"assocform", "--poly", "x1^4 + x2^4"}).out), "z1^2*z2^2");
  EXPECT_EQ(trim(run({"assocform", "--poly", "x1^4 + 2*x1^2*x2^2 + x2^4"}).out), "not_smooth");
  const CliRun j = run({"assocform", "--json", "--poly", "x1^4 + 2*x1^2*x2^2 + x2^4"});
  EXPECT_EQ(j.json()["error"], "not_smooth");
  EXPECT_EQ(trim(run({"--command", "assocform", "--poly", "x1^4 + x2^4"}).out), "z1^2*z2^2");
}

TEST(Cli, FactorAndStdin) {
  const CliRun r = run({"factor", "-"}, "x1^2*x2^2\n");
  ASSERT_EQ(r.code, 0) << r.out;
  const CliRun j = run({"factor", "--json", "--poly", "x1^4 - x2^4"});
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(j.json()["factors"].size(), 3u);
}

TEST(Cli, PrimeField) {
  const CliRun r = run({"analyze", "--field", "fp:7", "--poly", "x1^4 + x2^4"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.json()["field"], "fp:7");
  EXPECT_EQ(r.json()["verdict"], "direct_sum");
}

TEST(Cli, VerifyExamples) {
  const CliRun intro = run({"verify", "-"}, kIntroWitness);
  EXPECT_EQ(intro.code, 0) << intro.out;
  EXPECT_EQ(intro.json()["pass"], true);

  const CliRun id = run({"verify", "-"},
                     R"({"f": "x1^4 + x2^4", "basis": [[1, 0], [0, 1]], "f1": "x1^4", "f2": "x2^4"})");
  EXPECT_EQ(id.code, 0);

  const CliRun tampered = run({"verify", "-"},
                           R"({"f": "x1^4 + x2^4", "basis": [[1, 0], [0, 1]], "f1": "2*x1^4", "f2": "x2^4"})");
  EXPECT_EQ(tampered.code, 1);
  EXPECT_EQ(tampered.json()["pass"], false);
  EXPECT_NE(tampered.out.find("mismatch at x1^4"), std::string::npos) << tampered.out;

  const CliRun missing = run({"verify", "-"}, R"({"f": "x1^4 + x2^4", "f1": "x1^4", "f2": "x2^4"})");
  EXPECT_EQ(missing.code, 2);
  EXPECT_EQ(missing.json()["error"], "schema_error");
  EXPECT_NE(missing.out.find("basis"), std::string::npos);

  const CliRun shared = run({"verify", "-"},
                         R"({"f": "x1^4 + x2^4", "basis": [[1, 0], [0, 1]], "f1": "x1^4 + x2^4", "f2": "x2^4 - x2^4 + x2^4"})");
  EXPECT_EQ(shared.code, 1);

  const CliRun singular = run({"verify", "-"},
                           R"({"f": "x1^4 + x2^4", "basis": [[1, 1], [2, 2]], "f1": "x1^4", "f2": "x2^4"})");
  EXPECT_EQ(singular.code, 1);
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> args = {"analyze", "--seed", "12345",
                                         dsum::test::data_path("random_quartic.txt")};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> lds = {"analyze", "--poly", "4*x1*x2^3 + x2^4"};
  EXPECT_EQ(run(lds).out, run(lds).out);
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.begin() + 1, {"--threads", "4"});
  EXPECT_EQ(run(threaded).out, run(args).out);
  EXPECT_EQ(run({"analyze", "--threads", "0", "--poly", "x1^4 + x2^4"}).code, 2);
}

TEST(Cli, ClosedLoopOnCorpus) {
  for (const auto& c : dsum::test::direct_sum_corpus(8)) {
    const CliRun a = run({"analyze", "--poly", print_form(c.f), "--n", std::to_string(c.f.nvars())});
    ASSERT_EQ(a.code, 0) << c.label;
    ASSERT_EQ(a.json()["verdict"], "direct_sum") << c.label;
    const CliRun v = run({"verify", "-"}, a.out);
    EXPECT_EQ(v.code, 0) << c.label << " " << v.out;
  }
}

TEST(Cli, DecomposeAndTimings) {
  const CliRun d = run({"decompose", "--poly", "x1^4 + x2^4 + 6*x1^2*x2^2"});
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(d.json()["verdict"], "direct_sum");
  EXPECT_EQ(d.json()["criteria"]["mt3"]["reason"], "not evaluated by decompose");
  EXPECT_EQ(run({"decompose", "--poly", "x1^3 + x2^3"}).code, 2);
  const CliRun t = run({"analyze", "--timings", "--poly", "x1^4 + x2^4"});
  EXPECT_TRUE(t.json()["timings_ms"].is_object());
}
