#include <doctest.h>

#include <sstream>

#include "weft/cli.hpp"

using namespace weft;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("gen clique emits the three-term polynomial") {
  CliRun r = run({"gen", "clique", "--n", "3", "--k", "2"});
  CHECK(r.code == 0);
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 3);
}

TEST_CASE("metrics of the weft-1 clique formula") {
  CliRun gen = run({"gen", "clique-weft1", "--n", "3", "--k", "2"});
  REQUIRE(gen.code == 0);
  CliRun me = run({"metrics"}, gen.out);
  CHECK(me.code == 0);
  CHECK(me.out.find("weft=1") != std::string::npos);
}

TEST_CASE("eval pipes a circuit from stdin") {
  std::string circuit =
      "VARS 2 FANIN 2 MODULUS 2305843009213693951\n"
      "0 INPUT 0\n"
      "1 INPUT 1\n"
      "2 MUL 0 1\n"
      "OUTPUT 2\n";
  CliRun r = run({"eval", "--circuit", "-", "--at", "6,7"}, circuit);
  CHECK(r.code == 0);
  CHECK(r.out == "42\n");
}

TEST_CASE("transform pipeline: formula then metrics") {
  std::string circuit =
      "VARS 1 FANIN 2 MODULUS 2305843009213693951\n"
      "0 INPUT 0\n"
      "1 ADD 0 0\n"
      "2 MUL 1 1\n"
      "OUTPUT 2\n";
  CliRun r = run({"transform", "--pass", "formula"}, circuit);
  CHECK(r.code == 0);
  CliRun v = run({"eval", "--circuit", "-", "--at", "3"}, r.out);
  CHECK(v.code == 0);
  CHECK(v.out == "36\n");
}

TEST_CASE("transform hp extracts a homogeneous part") {
  std::string circuit =
      "VARS 1 FANIN 2 MODULUS 2305843009213693951\n"
      "0 INPUT 0\n"
      "1 CONST 1\n"
      "2 ADD 0 1\n"
      "3 MUL 2 2\n"
      "OUTPUT 3\n";
  CliRun r = run({"transform", "--pass", "hp:1"}, circuit);
  REQUIRE(r.code == 0);
  CliRun v = run({"eval", "--circuit", "-", "--at", "5"}, r.out);
  CHECK(v.out == "10\n");  // hp_1 of (1+X)^2 is 2X
}

TEST_CASE("transform divfree removes divisions") {
  std::string circuit =
      "VARS 1 FANIN 2 MODULUS 2305843009213693951\n"
      "0 INPUT 0\n"
      "1 MUL 0 0\n"
      "2 DIV 1 0\n"
      "OUTPUT 2\n";
  CliRun r = run({"transform", "--pass", "divfree:1"}, circuit);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("DIV") == std::string::npos);
  CliRun v = run({"eval", "--circuit", "-", "--at", "9"}, r.out);
  CHECK(v.out == "9\n");
}

TEST_CASE("verify suite reports pass and exit code") {
  CliRun r = run({"verify", "lemma-w1-1", "--max-k", "20"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("jsonl format is machine readable") {
  CliRun r = run({"--format", "jsonl", "verify", "lemma-w1-1", "--max-k", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("{\"") == 0);
}

TEST_CASE("malformed input exits with status 2") {
  CliRun r = run({"eval", "--circuit", "-", "--at", "1"}, "not a circuit\n");
  CHECK(r.code == 2);
  CHECK(!r.err.empty());
}

TEST_CASE("deterministic output across repeated runs") {
  CliRun a = run({"gen", "grid-tiling", "--n", "4", "--k", "2"});
  CliRun b = run({"gen", "grid-tiling", "--n", "4", "--k", "2"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CliRun v1 = run({"verify", "gadget-counts"});
  CliRun v2 = run({"verify", "gadget-counts"});
  CHECK(v1.out == v2.out);
}

TEST_CASE("reduce circuit-cc reports the normalized value") {
  std::string circuit =
      "VARS 2 FANIN 2 MODULUS 2305843009213693951\n"
      "0 INPUT 0\n"
      "1 INPUT 1\n"
      "2 MUL 0 1\n"
      "OUTPUT 2\n";
  CliRun r = run({"reduce", "circuit-cc", "--circuit", "-", "--at", "3,4"}, circuit);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("VALUE 12\n") != std::string::npos);
}

TEST_CASE("custom modulus flows through") {
  CliRun r = run({"--modulus", "101", "gen", "clique-weft1", "--n", "3", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("MODULUS 101") != std::string::npos);
}
