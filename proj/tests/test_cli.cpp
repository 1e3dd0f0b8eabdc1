#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CmdResult {
  int code = -1;
  std::string out;
};

CmdResult run_full(const std::string& command) {
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::string out;
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

CmdResult run_cli(const std::string& args) { return run_full(std::string(IV_CLI_BIN) + " " + args); }

const char* four_point_json =
    R"({"kind":"discrete","support":[0,1,2,3],"probs":[0.1,0.4,0.4,0.1]})";

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

}  // namespace

TEST_CASE("functional subcommand") {
  auto r = run_cli(std::string("functional --dist '") + four_point_json +
                   "' --functional si --alpha 0.2");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["length"] == 1.0);
  REQUIRE(j["families"].size() == 1);

  auto e = run_cli(std::string("functional --dist '") + four_point_json +
                   "' --functional eti --alpha 0.2");
  REQUIRE(e.code == 0);
  auto ej = nlohmann::json::parse(e.out);
  CHECK(ej["enumerable"] == true);
  CHECK(ej["lower_set"] == nlohmann::json::array({0.0, 1.0}));

  auto g = run_cli(std::string("functional --dist '") + four_point_json +
                   "' --functional gci --alpha 0.2");
  REQUIRE(g.code == 0);
  CHECK(nlohmann::json::parse(g.out)["members"].size() == 3);

  auto m = run_cli(std::string("functional --dist '") + four_point_json +
                   "' --functional mi --c 0.5");
  REQUIRE(m.code == 0);
  CHECK(nlohmann::json::parse(m.out)["coverage"] == 0.8);
}

TEST_CASE("score subcommand, single reports") {
  auto r = run_cli(
      "score --score '{\"score\":\"winkler\",\"alpha\":0.2}' --lower 1 --upper 2 --obs 0");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["score"] == 11.0);

  auto q = run_cli("score --score '{\"score\":\"quantile\",\"alpha\":0.5}' --x 1 --obs 2");
  REQUIRE(q.code == 0);
  CHECK(nlohmann::json::parse(q.out)["score"] == 0.5);

  CHECK(run_cli("score --score '{\"score\":\"winkler\",\"alpha\":0.2}' --lower 1 --obs 0").code ==
        2);
  CHECK(run_cli("score --score '{\"score\":\"winkler\",\"alpha\":0.2}' --lower 1 --upper 2")
            .code == 2);
  CHECK(run_cli("score --score '{\"score\":\"winkler\",\"alpha\":0.2}'").code == 2);
  CHECK(run_cli(
            "score --score '{\"score\":\"winkler\",\"alpha\":0.2}' --x 1 --lower 0 --upper 2 "
            "--obs 0")
            .code == 2);
}

TEST_CASE("score subcommand, csv evaluation") {
  write_file("/tmp/iv_cli_a.csv", "id,lower,upper,observation\nA,1,2,0\nB,1,2,1.5\n");
  write_file("/tmp/iv_cli_b.csv", "id,lower,upper,observation\nA,0,3,1\nB,0,3,1.5\n");

  auto one = run_cli("score --score '{\"score\":\"winkler\",\"alpha\":0.2}' --cases /tmp/iv_cli_a.csv");
  REQUIRE(one.code == 0);
  auto oj = nlohmann::json::parse(one.out);
  CHECK(oj["mean_score"] == 6.0);
  CHECK(oj["decomposed"] == true);

  auto two = run_cli(
      "score --score '{\"score\":\"winkler\",\"alpha\":0.2}' --cases /tmp/iv_cli_a.csv --cases "
      "/tmp/iv_cli_b.csv --name narrow --name wide");
  REQUIRE(two.code == 0);
  auto tj = nlohmann::json::parse(two.out);
  REQUIRE(tj["ranking"].size() == 2);
  CHECK(tj["names"][tj["ranking"][0].get<std::size_t>()] == "wide");

  CHECK(run_cli("score --score '{\"score\":\"winkler\",\"alpha\":0.2}' --cases /tmp/missing.csv")
            .code == 1);
}

TEST_CASE("lab subcommand") {
  auto list = run_cli("lab --list");
  REQUIRE(list.code == 0);
  auto names = nlohmann::json::parse(list.out);
  CHECK(names.size() == 8);

  auto t = run_cli("lab --experiment table1");
  CHECK(t.code == 0);
  auto rep = nlohmann::json::parse(t.out);
  CHECK(rep["verdict"] == rep["expected_verdict"]);

  // a refuted property still exits 0 when the refutation was expected
  CHECK(run_cli("lab --experiment example-discrete").code == 0);
  CHECK(run_cli("lab --experiment bogus").code == 2);

  auto again = run_cli("lab --experiment table1");
  CHECK(again.out == t.out);
}

TEST_CASE("fixtures subcommand") {
  auto list = run_cli("fixtures --list");
  REQUIRE(list.code == 0);
  CHECK(nlohmann::json::parse(list.out).size() == 5);

  auto t = run_cli("fixtures --name table1");
  REQUIRE(t.code == 0);
  CHECK(nlohmann::json::parse(t.out)["rows"].size() == 4);

  auto c = run_cli("fixtures --name condition1 --alpha 0.2 --b 1 --eps 0.5");
  REQUIRE(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["shortest"] == nlohmann::json::array({0.0, 1.0}));

  CHECK(run_cli("fixtures --name nope").code == 2);
  CHECK(run_cli("fixtures").code == 2);
}

TEST_CASE("error exit codes") {
  CHECK(run_cli("functional --dist '{\"kind\":\"nope\"}' --functional si").code == 1);
  CHECK(run_cli("functional --dist '{' --functional si").code == 1);
  CHECK(run_cli("functional --dist '{}' --functional other").code == 2);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("thread cap env variable") {
  auto base = run_cli("lab --experiment eti-consistency --seed 2");
  REQUIRE(base.code == 0);
  auto capped = run_full(std::string("IV_THREADS=2 ") + IV_CLI_BIN +
                         " lab --experiment eti-consistency --seed 2");
  REQUIRE(capped.code == 0);
  CHECK(capped.out == base.out);
}
