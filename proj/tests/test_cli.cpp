#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#ifndef MINALG_CLI_PATH
#define MINALG_CLI_PATH "minalg"
#endif

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(MINALG_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/minalg_cli_") + name;
  std::ofstream f(path);
  f << content;
  return path;
}

const char* kL67 =
    R"({"field":"Q","dim":6,"diffs":[[],[],[],
        [{"i":1,"j":2,"c":"1"}],
        [{"i":1,"j":3,"c":"1"}],
        [{"i":1,"j":5,"c":"1"},{"i":2,"j":4,"c":"1"}]]})";

}  // namespace

TEST_CASE("classify prints label and signature") {
  std::string f = write_temp("l67.json", kL67);
  RunResult r = run("classify " + f);
  CHECK(r.code == 0);
  CHECK(r.out.find("L6_7 (3,2,1)") != std::string::npos);
}

TEST_CASE("malformed JSON exits 2") {
  std::string f = write_temp("bad.json", "{this is not json");
  RunResult r = run("classify " + f);
  CHECK(r.code == 2);
}

TEST_CASE("non-Jacobi bracket input exits 3 with the failing triple") {
  // perturb one structure constant of the 5-dim chain into a Jacobi failure
  std::string f = write_temp("nonjacobi.json",
                             R"({"field":"Q","dim":4,"brackets":[
        {"j":1,"k":2,"i":3,"c":"1"},
        {"j":1,"k":3,"i":4,"c":"1"},
        {"j":2,"k":3,"i":4,"c":"1"},
        {"j":2,"k":4,"i":4,"c":"1"}]})");
  RunResult r = run("classify " + f);
  CHECK(r.code == 3);
  CHECK(r.out.find("Jacobi") != std::string::npos);
  CHECK(r.out.find("(X") != std::string::npos);
}

TEST_CASE("non-nilpotent differential input exits 3") {
  std::string f = write_temp("nonnilp.json",
                             R"({"field":"Q","dim":2,"diffs":[[],
        [{"i":1,"j":2,"c":"1"}]]})");
  RunResult r = run("classify " + f);
  CHECK(r.code == 3);
}

TEST_CASE("betti command") {
  std::string f = write_temp("l615.json",
                             R"({"field":"Q","dim":6,"diffs":[[],[],[],
        [{"i":1,"j":2,"c":"1"}],
        [{"i":1,"j":4,"c":"1"},{"i":2,"j":3,"c":"1"}],
        [{"i":1,"j":5,"c":"1"},{"i":3,"j":4,"c":"-1"}]]})");
  RunResult r = run("betti " + f);
  CHECK(r.code == 0);
  CHECK(r.out.find("(1,3,4,4,4,3,1)") != std::string::npos);
}

TEST_CASE("symplectic command on a non-symplectic type") {
  std::string f = write_temp("l63.json",
                             R"({"field":"Q","dim":6,"diffs":[[],[],[],[],
        [{"i":1,"j":2,"c":"1"}],
        [{"i":1,"j":5,"c":"1"},{"i":3,"j":4,"c":"1"}]]})");
  RunResult r = run("--json symplectic " + f);
  CHECK(r.code == 0);
  CHECK(r.out.find("\"symplectic\":false") != std::string::npos);
  CHECK(r.out.find("\"certificate\":\"pfaffian-cubic-zero\"") != std::string::npos);
}

TEST_CASE("homotopy command over Q and C") {
  std::string fa = write_temp("l62a5.json",
                              R"({"field":"Q","dim":6,"diffs":[[],[],[],[],
        [{"i":1,"j":3,"c":"1"},{"i":2,"j":4,"c":"5"}],
        [{"i":1,"j":4,"c":"1"},{"i":2,"j":3,"c":"1"}]]})");
  std::string fb = write_temp("l62a20.json",
                              R"({"field":"Q","dim":6,"diffs":[[],[],[],[],
        [{"i":1,"j":3,"c":"1"},{"i":2,"j":4,"c":"20"}],
        [{"i":1,"j":4,"c":"1"},{"i":2,"j":3,"c":"1"}]]})");
  std::string fc = write_temp("l62a3.json",
                              R"({"field":"Q","dim":6,"diffs":[[],[],[],[],
        [{"i":1,"j":3,"c":"1"},{"i":2,"j":4,"c":"3"}],
        [{"i":1,"j":4,"c":"1"},{"i":2,"j":3,"c":"1"}]]})");
  CHECK(run("homotopy " + fa + " " + fb).out.find("not equivalent") ==
        std::string::npos);
  CHECK(run("homotopy " + fa + " " + fc).out.find("not equivalent") !=
        std::string::npos);
  CHECK(run("--field C homotopy " + fa + " " + fc).out.find("not equivalent") ==
        std::string::npos);
}

TEST_CASE("tables command dimensions") {
  RunResult r5 = run("--field Q tables --dim 5");
  CHECK(r5.code == 0);
  CHECK(r5.out.find("9 classes") != std::string::npos);
  RunResult r2 = run("tables --dim 2");
  CHECK(r2.out.find("1 class") != std::string::npos);
  RunResult r6 = run("--field R --json tables --dim 6");
  CHECK(r6.code == 0);
  CHECK(r6.out.find("\"classes\":34") != std::string::npos);
}

TEST_CASE("machine output is byte-stable across runs") {
  std::string f = write_temp("l67b.json", kL67);
  RunResult a = run("--json classify " + f);
  RunResult b = run("--json classify " + f);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  RunResult fz1 = run("--json fuzz --trials 10 --seed 1");
  RunResult fz2 = run("--json fuzz --trials 10 --seed 1");
  CHECK(fz1.code == 0);
  CHECK(fz1.out == fz2.out);
  CHECK(fz1.out.find("\"failures\":0") != std::string::npos);
}
