#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
  int code;
  std::string out;
};

// Runs the CLI through the shell, feeding `input` on standard input.
RunResult run(const std::string& args, const std::string& input = "") {
  std::string cmd;
  if (!input.empty()) {
    std::string quoted = input;
    // Single-quote for the shell; the inputs used here contain no quotes.
    cmd = "printf '%s' '" + quoted + "' | ";
  }
  cmd += std::string(SKEIN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

const char* kC1 = R"({"b":3,"terms":[{"coeff":{"0":"1/1"},"curves":[[1]]}]})";
const char* kPairProduct =
    R"([{"b":3,"terms":[{"coeff":{"0":"1/1"},"curves":[[1,2]]}]},)"
    R"({"b":3,"terms":[{"coeff":{"0":"1/1"},"curves":[[2,3]]}]}])";

}  // namespace

TEST_CASE("counit of a single curve") {
  auto r = run("eps", kC1);
  CHECK(r.code == 0);
  CHECK(r.out == "-2\n");
}

TEST_CASE("product output re-parses and has the right counit") {
  auto r = run("mul", kPairProduct);
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("b") == 3);
  auto r2 = run("eps", j.dump());
  CHECK(r2.out == "4\n");  // (-2)*(-2)
}

TEST_CASE("normal form of a word equals the normal form of the shifted curve") {
  auto w = run("word-class", "[[1,1],[2,1]]");
  CHECK(w.code == 0);
  std::string shifted =
      R"({"b":3,"terms":[{"coeff":{"0":"1/1"},"curves":[[1,2]]},)"
      R"({"coeff":{"0":"2/1"},"curves":[]}]})";
  auto n = run("nf2", shifted);
  CHECK(n.code == 0);
  CHECK(nlohmann::json::parse(w.out) == nlohmann::json::parse(n.out));
}

TEST_CASE("relation checks exit zero") {
  CHECK(run("zeta-check --lantern").code == 0);
  CHECK(run("zeta-check --relation 1 --b 4").code == 0);
}

TEST_CASE("alternating sublink sum of a simple multicurve is zero") {
  auto r = run("ftype-check --b 3", "[[1],[2],[3]]");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("verdict") == "zero");
}

TEST_CASE("certificates refute a false degree claim") {
  // A raw curve has nonzero counit, so any positive-degree claim is refuted.
  std::string c12 = R"({"b":3,"terms":[{"coeff":{"0":"1/1"},"curves":[[1,2]]}]})";
  auto r = run("certify --degree 1", c12);
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.out).at("verdict") == "refuted");
}

TEST_CASE("usage errors exit two") {
  CHECK(run("definitely-not-a-subcommand").code == 2);
  CHECK(run("zeta-check").code == 2);
  CHECK(run("nf2", "not json at all").code == 2);
}

TEST_CASE("gram table emits both formats and is deterministic") {
  auto a = run("gram --b 2");
  auto b = run("gram --b 2");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j.at("table_ok") == true);
  auto c = run("gram --b 2 --csv");
  CHECK(c.code == 0);
  CHECK(c.out.find(",") != std::string::npos);
}

TEST_CASE("packaged suites pass") {
  auto r = run("suite lemma56");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
}
