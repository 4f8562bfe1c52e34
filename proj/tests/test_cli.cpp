#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>

#include "gen.hpp"
#include "lpa/error.hpp"
#include "lpa/parse.hpp"
#include "lpa/script.hpp"
#include "lpa/verify.hpp"

using namespace lpa;

namespace {

struct Run {
  int rc;
  std::string out;
};

// Runs the built binary with stderr folded into stdout.
Run lpa_cli(const std::string& args) {
  std::string cmd = std::string(LPA_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string script(const char* name) { return std::string(LPA_SCRIPTS) + "/" + name; }

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("element syntax") {
  GraphPtr g = rose_graph(2);
  CHECK_THROWS_AS(parse_element("e1 e2'", g), ParseError);
  CHECK(parse_element("-(e1 - 2*e2)", g).str() == "-e1 + 2*e2");
  CHECK(parse_element("e1^0", g) == parse_element("v", g));
  CHECK_THROWS_AS(parse_element("e3", g), ParseError);
  CHECK_THROWS_AS(parse_element("e1 +", g), ParseError);
  CHECK_THROWS_AS(parse_element("(e1", g), ParseError);
  try {
    parse_element("e1 + e3", g);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
    CHECK(contains(e.message(), "e3"));
  }
}

TEST_CASE("printing then parsing is the identity") {
  for (const GraphPtr& g : {rose_graph(2), rose_graph(3), testgen::sink_graph()}) {
    testgen::Gen gen(g, 5150);
    for (int t = 0; t < 170; ++t) {
      Element a = gen.element(5, 4);
      REQUIRE(parse_element(a.str(), g) == a);
    }
  }
}

TEST_CASE("scripts report one line per assertion") {
  Report ok = run_script_text("rose 2\nlet x = e1*e2' + e2*e1'\nassert x*x == v\n");
  REQUIRE(ok.checks.size() == 1);
  CHECK(ok.checks[0].verdict == Verdict::pass);
  CHECK(ok.checks[0].name == "line 3");
  CHECK_FALSE(ok.any_fail());

  Report bad = run_script(script("fail.lpa"));
  REQUIRE(bad.checks.size() == 2);
  CHECK(bad.checks[0].verdict == Verdict::fail);
  CHECK(bad.checks[1].verdict == Verdict::pass);
  CHECK(bad.exit_code() == 1);

  CHECK(run_script_text("").checks.empty());
  CHECK(run_script_text("# nothing\n\n").checks.empty());
  CHECK_THROWS_AS(run_script_text("rose 2\nlet x = e3\n"), ParseError);
  CHECK_THROWS_AS(run_script_text("rose 2\nlet x = v\nlet x = v\n"), Error);
  CHECK_THROWS_AS(run_script_text("rose 2\nlet u = e1\nendo f = fu u e1'\n"), VerificationError);
  try {
    run_script_text("rose 2\n\nfrobnicate\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(contains(e.what(), "line 3"));
  }
}

TEST_CASE("worked-example report is deterministic") {
  auto names = paper_check_names();
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(names.size() == 12);
  Report a = verify_paper(), b = verify_paper();
  CHECK_FALSE(a.any_fail());
  CHECK(a.render(false) == b.render(false));
  Report one = verify_paper(std::string("example-auto-1"));
  REQUIRE(one.checks.size() == 1);
  CHECK(one.checks[0].name == "example-auto-1");
  CHECK_THROWS_AS(verify_paper(std::string("no-such-check")), Error);
}

TEST_CASE("command line exit codes and output") {
  Run eval = lpa_cli("eval -g rose:2 -e \"e1*e2*e2'*e1'\"");
  CHECK(eval.rc == 0);
  CHECK(eval.out == "e1*e1' - e1^2*e1'^2\n");

  CHECK(lpa_cli("eval -g rose:2 -e e3").rc == 2);
  CHECK(lpa_cli("frobnicate").rc == 2);
  CHECK(lpa_cli("--help").rc == 0);

  Run good = lpa_cli("run " + script("examples.lpa") + " --no-timing");
  CHECK(good.rc == 0);
  CHECK(contains(good.out, "PASS: 7 check(s)"));
  Run fail = lpa_cli("run " + script("fail.lpa") + " --no-timing");
  CHECK(fail.rc == 1);
  CHECK(contains(fail.out, "FAIL     line 5"));
  CHECK(lpa_cli("run " + script("bad.lpa")).rc == 2);
  CHECK(lpa_cli("run " + script("missing.lpa")).rc == 2);

  Run cert = lpa_cli(
      "endo -g rose:2 --fu \"(v + e1^2*e2'^2)*(e1*e2' + e2*e1')\" "
      "--uinv \"e1*e2' + e2*e1' - e2*e1*e2'^2\" "
      "--certify \"[0, v; v, -e2*e1']\" --certify-inverse \"[e2*e1', v; v, 0]\"");
  CHECK(cert.rc == 0);
  CHECK(contains(cert.out, "automorphism: certified"));
  Run wrong = lpa_cli(
      "endo -g rose:2 --fu \"(v + e1^2*e2'^2)*(e1*e2' + e2*e1')\" "
      "--uinv \"e1*e2' + e2*e1' - e2*e1*e2'^2\" --certify \"[0, v; v, 0]\"");
  CHECK(wrong.rc == 1);
  CHECK(contains(wrong.out, "FAIL"));

  Run list = lpa_cli("verify-paper --list");
  CHECK(list.rc == 0);
  CHECK(contains(list.out, "exa-theta-3"));
  Run only = lpa_cli("verify-paper --only cuntz-correspondence --no-timing");
  CHECK(only.rc == 0);
  CHECK(contains(only.out, "PASS     cuntz-correspondence"));
  CHECK(lpa_cli("verify-paper --only nope").rc == 2);

  Run act = lpa_cli("module act -g rose:2 --path \"(e1 e2)^inf\" --expr \"e1'\"");
  CHECK(act.rc == 0);
  CHECK(contains(act.out, "(e2 e1)^inf"));
}
