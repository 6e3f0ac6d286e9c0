#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(DURCSP_CLI_PATH) + " " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int rc = pclose(pipe);
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string corpus(const std::string& name) {
  return std::string(DURCSP_CORPUS_DIR) + "/" + name;
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = "/tmp/durcsp-cli-" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("parse echoes a valid spec in canonical form") {
  auto r = run_cli("parse " + corpus("delayed_run.dcsp"));
  CHECK(r.code == 0);
  CHECK(r.out ==
        "durations a=4 b=1;\n"
        "main delayed_run;\n"
        "process delayed_run := a{4}; delay{100} b{0}; stop endproc\n");
}

TEST_CASE("parse reports diagnostics without fabricating positions") {
  std::string bad = temp_file("missing-duration.dcsp",
                              "main m;\nprocess m := a{1}; stop endproc\n");
  auto r = run_cli("parse " + bad);
  CHECK(r.code == 1);
  CHECK(r.out.find("MissingDuration: no duration for action 'a'") != std::string::npos);
  CHECK(r.out.find("line 0") == std::string::npos);

  auto syntax = run_cli("parse " + temp_file("broken.dcsp", "process m := ? endproc\n"));
  CHECK(syntax.code == 2);
}

TEST_CASE("simulate replays a schedule and prints the trace") {
  std::string sched = temp_file("good.sched",
                                "durcsp-schedule v1\nPICK 0\nWAIT 3\nPICK 0\nWAIT 4\n");
  auto r = run_cli("simulate " + corpus("seq_choice.dcsp") + " " + sched);
  CHECK(r.code == 0);
  CHECK(r.out ==
        "durcsp-trace v1\n"
        "ACT {} a e0\n"
        "DELAY 3\n"
        "ACT {e0:a:3} b e1\n"
        "DELAY 4\n");

  std::string rejected = temp_file("bad.sched", "durcsp-schedule v1\nPICK 9\n");
  auto bad = run_cli("simulate " + corpus("seq_choice.dcsp") + " " + rejected, true);
  CHECK(bad.code == 1);
  CHECK(bad.out.find("refused") != std::string::npos);
  CHECK(bad.out.find("pick 9 out of range") != std::string::npos);
}

TEST_CASE("compile emits versioned model text with embedded durations") {
  auto r = run_cli("compile " + corpus("delayed_run.dcsp"));
  CHECK(r.code == 0);
  CHECK(r.out.rfind("durcsp-model v1\n", 0) == 0);
  CHECK(r.out.find("duration a 4\n") != std::string::npos);

  auto dot = run_cli("compile --dot " + corpus("delayed_run.dcsp"));
  CHECK(dot.out.rfind("// durcsp-dot v1\n", 0) == 0);
  CHECK(dot.out.find("0 <= c_e0 <= 4") != std::string::npos);
}

TEST_CASE("export sniffs its input kind") {
  auto from_spec = run_cli("export " + corpus("delayed_run.dcsp"));
  CHECK(from_spec.code == 0);
  CHECK(from_spec.out.rfind("// durcsp-dot v1\n", 0) == 0);

  std::string model = temp_file("delayed.model",
                                run_cli("compile " + corpus("delayed_run.dcsp")).out);
  auto from_model = run_cli("export --model-text " + model);
  CHECK(from_model.code == 0);
  CHECK(from_model.out.rfind("durcsp-model v1\n", 0) == 0);
  auto round = run_cli("export --dot " + model);
  CHECK(round.out == from_spec.out);
}

TEST_CASE("makespan prints the claimed infima") {
  auto p = run_cli("makespan " + corpus("seq_choice.dcsp"));
  CHECK(p.code == 0);
  CHECK(p.out == "infimum 5 (open)\n");

  auto q = run_cli("makespan " + corpus("indep_par.dcsp"));
  CHECK(q.code == 0);
  CHECK(q.out == "infimum 3 (open)\n");

  auto blocked = run_cli("makespan " + corpus("delayed_run.dcsp"));
  CHECK(blocked.code == 0);
  CHECK(blocked.out == "no terminating schedule found (within budget)\n");
}

TEST_CASE("theorem-1 check accepts the bundled specs") {
  auto r = run_cli("check-theorem1 " + corpus("delayed_run.dcsp"));
  CHECK(r.code == 0);
  CHECK(r.out == "Bisimilar (within bounds: depth=40, grid=1/2)\n");
}

TEST_CASE("check-bisim distinguishes the two one-page examples") {
  auto r = run_cli("check-bisim " + corpus("seq_choice.dcsp") + " " + corpus("indep_par.dcsp"));
  CHECK(r.code == 1);
  CHECK(r.out.find("NotBisimilar") != std::string::npos);
  CHECK(r.out.find("unanswered") != std::string::npos);
}

TEST_CASE("mixed spec and model inputs are a usage error") {
  std::string model = temp_file("mixed.model",
                                run_cli("compile " + corpus("delayed_run.dcsp")).out);
  auto r = run_cli("check-bisim " + corpus("seq_choice.dcsp") + " " + model, true);
  CHECK(r.code == 2);
}

TEST_CASE("refine-check wraps both sides in the same refinement") {
  std::string p = temp_file("refp.dcsp",
                            "durations a=2 b=3;\nmain p;\n"
                            "process p := a{9}; b{9}; stop endproc\n");
  std::string q = temp_file("refq.dcsp",
                            "durations a=2 b=3;\nmain q;\n"
                            "process q := a{9}; b{9}; stop + a{9}; b{9}; stop endproc\n");
  std::string body = temp_file("refbody.dcsp",
                               "durations c=1 d=1;\nmain w;\n"
                               "process w := c{9}; d{9}; skip{9} endproc\n");
  auto r = run_cli("refine-check " + p + " " + q + " --action a --body " + body);
  CHECK(r.code == 0);
  CHECK(r.out.find("Bisimilar") == 0);
}

TEST_CASE("errors land on the right exit codes") {
  CHECK(run_cli("parse /nonexistent.dcsp", true).code == 2);
  CHECK(run_cli("frobnicate", true).code == 2);
  CHECK(run_cli("--version").out == "durcsp 1.0.0\n");
}

TEST_CASE("structured output with a fixed seed is byte-identical across runs") {
  std::string args = "makespan --json --seed 7 " + corpus("seq_choice.dcsp");
  auto first = run_cli(args);
  auto second = run_cli(args);
  CHECK(first.code == 0);
  CHECK_FALSE(first.out.empty());
  CHECK(first.out == second.out);

  std::string check = "check-theorem1 --json --seed 7 " + corpus("delayed_run.dcsp");
  auto c1 = run_cli(check);
  auto c2 = run_cli(check);
  CHECK(c1.out == c2.out);
  CHECK(c1.out.find("\"synch_violations\": 0") != std::string::npos);
}
