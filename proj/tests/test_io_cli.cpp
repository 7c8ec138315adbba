#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "dualint/io.hpp"
#include "support.hpp"

using namespace dualint;
using namespace dualint::testing;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
CliRun cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(DUALINT_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), k);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(DUALINT_DATA) + "/" + name; }

std::string without_timing(const std::string& report) {
  Json j = Json::parse(report);
  j.erase("timing");
  return j.dump();
}

}  // namespace

TEST(ParseSystem, Valid) {
  const LinearSystem sys = parse_system_json(R"({"M": [[1, 1], [-1, 0], [0, -1]], "b": [3, 0, 0]})");
  EXPECT_EQ(sys, triangle());
  const LinearSystem big = parse_system_json(R"({"M": [["123456789012345678901234567890"]], "b": [0]})");
  EXPECT_EQ(big.M(0, 0), Int("123456789012345678901234567890"));
}

TEST(ParseSystem, SyntaxErrorsCarryTheLine) {
  try {
    parse_system_json("{\"M\": [[1, 2],\n [3, 4]\n \"b\": [1]}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseSystem, RationalsAreRejectedWithAScalingHint) {
  try {
    parse_system_json(R"({"M": [[0.5, 1]], "b": [1]})");
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("scale the row"), std::string::npos);
  }
  EXPECT_THROW(parse_system_json(R"({"M": [["1/2"]], "b": [1]})"), UsageError);
  EXPECT_THROW(parse_system_json(R"({"M": [[1, 2], [1]], "b": [1, 1]})"), UsageError);
  EXPECT_THROW(parse_system_json(R"({"M": [[1]], "b": [1, 2]})"), UsageError);
  EXPECT_THROW(parse_system_json(R"({"M": [[1]]})"), UsageError);
}

TEST(ParseClutter, Formats) {
  const Clutter C = parse_clutter_text("# path\n3\n1 2\n\n2 3 # second\n");
  EXPECT_EQ(C, Clutter(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(parse_clutter_text("2\n{}\n"), Clutter(2, {{}}));
  try {
    parse_clutter_text("3\n1 2\n2 4\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_clutter_text("3 4\n"), ParseError);
  EXPECT_THROW(parse_clutter_text(""), ParseError);
  EXPECT_THROW(parse_clutter_text("3\n1 2\n1 2 3\n"), ClutterInvariantError);
}

TEST(Report, VerdictRoundTrip) {
  SearchBudget b;
  b.prime_sample = {2, 3};
  const Verdict vs[] = {decide_TDI_nondegenerate(triangle()), decide_TDI_nondegenerate(quadrilateral()),
                        near_TDI_sample(quadrilateral(), b), check_TDI(two_three(), b),
                        certify_TD_in_L(LinearSystem{IntMat{{3}, {-3}}, IntVec{0, 0}}, LSpec::primes({2}))};
  for (const Verdict& v : vs) {
    const Json j = to_json(v);
    const Verdict back = verdict_from_json(Json::parse(j.dump()));
    EXPECT_EQ(to_json(back).dump(), j.dump());
    EXPECT_EQ(back.bad_weight, v.bad_weight);
    EXPECT_EQ(back.alternative, v.alternative);
    EXPECT_EQ(back.failing_row, v.failing_row);
  }
}

TEST(Report, RationalsAreStrings) {
  EXPECT_EQ(to_json(q(-1, 3)).dump(), "\"-1/3\"");
  EXPECT_EQ(to_json(Int(7)).dump(), "7");
}

TEST(Cli, AnalyzeExamples) {
  const CliRun tdi = cli("analyze " + data("triangle.json") + " --check tdi");
  EXPECT_EQ(tdi.code, 0) << tdi.out;
  EXPECT_NE(tdi.out.find("status: certified"), std::string::npos);

  const CliRun quad = cli("analyze " + data("quadrilateral.json") + " --check tdi");
  EXPECT_EQ(quad.code, 1) << quad.out;
  EXPECT_NE(quad.out.find("not resilient, row 1"), std::string::npos);

  const CliRun tt = cli("analyze " + data("two_three.json") + " --check tdi --box 1 --json");
  EXPECT_EQ(tt.code, 1) << tt.out;
  const Json j = Json::parse(tt.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["verdicts"][0]["evidence"]["bad_weight"], Json::array({1}));

  const CliRun dyadic = cli("analyze " + data("two_three.json") + " --check td-in-l --primes 2 --box 5");
  EXPECT_EQ(dyadic.code, 2) << dyadic.out;

  const CliRun half = cli("analyze " + data("half_triangle.json") + " --check tdd");
  EXPECT_EQ(half.code, 0) << half.out;

  const CliRun near = cli("analyze " + data("quadrilateral.json") + " --check near-tdi --primes 2,3 --json");
  EXPECT_EQ(near.code, 1);
  EXPECT_EQ(Json::parse(near.out)["verdicts"][0]["evidence"]["bad_weight"], Json::array({1, -2}));
}

TEST(Cli, EnvironmentDefaults) {
  const CliRun r = cli("analyze " + data("two_three.json") + " --json", "DUALINT_BOX=1 DUALINT_PRIMES=2,3");
  EXPECT_EQ(r.code, 1) << r.out;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["budget"]["weight_box"], 1);
  EXPECT_EQ(j["budget"]["primes"], Json::array({2, 3}));
  EXPECT_EQ(cli("analyze " + data("triangle.json"), "DUALINT_DENOM_CAP=x").code, 3);
}

TEST(Cli, TiltExamples) {
  const CliRun r = cli("tilt " + data("triangle.json") + " --w 0,1 --face 1,2 --downface 1");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("tilt constraint: u2 = 1"), std::string::npos) << r.out;

  const CliRun v = cli("tilt " + data("quadrilateral.json") + " --w 1,1 --face 1,2 --downface 2 --json");
  EXPECT_EQ(v.code, 0) << v.out;
  const Json j = Json::parse(v.out);
  EXPECT_EQ(j["tilt"]["equation"], "3 u1 = 1");
  EXPECT_EQ(j["solvability"][1]["solvable"], false);

  EXPECT_EQ(cli("tilt " + data("triangle.json") + " --w 0,1 --face 1,2 --downface 3").code, 3);
  EXPECT_EQ(cli("tilt " + data("quadrilateral.json") + " --w 0,1 --face 1,2 --downface 2").code, 3);
  EXPECT_EQ(cli("tilt " + data("triangle.json") + " --w 0,1 --face 1 --downface 1").code, 3);
}

TEST(Cli, ClutterExamples) {
  const CliRun t = cli("clutter " + data("triangle2.clutter") + " --ideal --json");
  EXPECT_EQ(t.code, 0) << t.out;
  const Json j = Json::parse(t.out);
  EXPECT_EQ(j["ideal"]["ideal"], false);
  EXPECT_EQ(j["ideal"]["fractional_vertex"], Json::array({"1/2", "1/2", "1/2"}));

  const CliRun p = cli("clutter " + data("path.clutter") + " --tdd");
  EXPECT_EQ(p.code, 0) << p.out;
  EXPECT_NE(p.out.find("status: certified"), std::string::npos);

  const CliRun s = cli("clutter " + data("singletons.clutter") + " --blocker");
  EXPECT_NE(s.out.find("blocker: {{1,2}}"), std::string::npos) << s.out;

  const CliRun c = cli("clutter " + data("containment.clutter"));
  EXPECT_EQ(c.code, 3);
  EXPECT_NE(c.out.find("{1,2} is contained in {1,2,3}"), std::string::npos) << c.out;
}

TEST(Cli, ErrorsUseCodesAboveTwo) {
  EXPECT_EQ(cli("analyze /nonexistent.json").code, 3);
  EXPECT_EQ(cli("analyze " + data("triangle.json") + " --check nope").code, 3);
  EXPECT_EQ(cli("").code, 3);
}

TEST(Cli, JsonReportsAreDeterministic) {
  const std::string cmds[] = {"analyze " + data("quadrilateral.json") + " --check near-tdi --json",
                              "analyze " + data("two_three.json") + " --check tdd --box 3 --json",
                              "tilt " + data("triangle.json") + " --w 0,1 --face 1,2 --downface 1 --json",
                              "clutter " + data("path.clutter") + " --tdd --blocker --json"};
  for (const std::string& c : cmds) {
    const CliRun a = cli(c), b = cli(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(without_timing(a.out), without_timing(b.out)) << c;
  }
}

// Exit codes 0, 1, 2 match the reported status.
TEST(Cli, ExitCodeMatchesStatus) {
  const std::string cmds[] = {"analyze " + data("triangle.json") + " --json",
                              "analyze " + data("quadrilateral.json") + " --json",
                              "analyze " + data("two_three.json") + " --check td-in-l --primes 2 --json",
                              "clutter " + data("triangle2.clutter") + " --tdd --json"};
  for (const std::string& c : cmds) {
    const CliRun r = cli(c);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(r.code, exit_code(status_from_string(j["verdicts"][0]["status"])));
  }
}
