#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "multiarr/cli.hpp"

using namespace multiarr;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(MULTIARR_GOLDEN_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kDoubleLine = R"({"dim":2,"forms":[[1,-1]],"mult":[5]})";
const char* kGenericPlanes = R"({"dim":3,"forms":[[1,0,0],[0,1,0],[0,0,1],[1,1,1],[1,2,3]],"mult":[1,1,1,1,1]})";

}  // namespace

TEST_CASE("catalog entries reproduce the reference tables") {
  const Run a = run({"catalog", "braid:3:3"});
  CHECK(a.code == 0);
  CHECK(a.out == golden("braid_3_3.md") + "key: braid:3:3\nexpected: 4,5\ncomputed: 4,5\nPASS\n");
  const Run b = run({"catalog", "mixed:3:2:2"});
  CHECK(b.code == 0);
  CHECK(b.out == golden("mixed_3_2_2.md") + "key: mixed:3:2:2\nexpected: 5,5\ncomputed: 5,5\nPASS\n");
}

TEST_CASE("exps and free") {
  const Run a = run({"exps", kDoubleLine});
  CHECK(a.code == 0);
  CHECK(a.out == "0,5\n");
  const Run b = run({"exps", kGenericPlanes});
  CHECK(b.code == 1);
  CHECK(b.out.rfind("not free", 0) == 0);
  const Run c = run({"free", kGenericPlanes, "--format", "json"});
  CHECK(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["free"] == false);
  const Run d = run({"free", "braid:3:2", "--format", "json"});
  CHECK(d.code == 0);
  const auto j = nlohmann::json::parse(d.out);
  CHECK(j["free"] == true);
  CHECK(j["exponents"] == nlohmann::json{0, 3, 3});
  CHECK(j.contains("witness"));
}

TEST_CASE("restrict and triple") {
  const Run a = run({"restrict", "braid:4:2", "--h0", "1"});
  CHECK(a.code == 0);
  CHECK(a.out.find("H0: x1-x2") != std::string::npos);
  const Run b = run({"triple", "braid:3:1", "--format", "json"});
  CHECK(b.code == 0);
  const auto j = nlohmann::json::parse(b.out);
  for (const char* key : {"original", "H0", "deleted", "restricted", "provenance", "dropped_coordinate"}) CHECK(j.contains(key));
  CHECK(run({"restrict", "braid:3:1", "--h0", "9"}).code == 2);
}

TEST_CASE("induce, table and verify round trip") {
  const Run a = run({"induce", "braid:4:2", "--strategy", "greedy", "--format", "json"});
  REQUIRE(a.code == 0);
  const Run v = run({"verify", a.out});
  CHECK(v.code == 0);
  CHECK(v.out == "verified\nexponents: 0,4,4,4\n");
  const Run t = run({"table", a.out, "--format", "tsv"});
  CHECK(t.code == 0);
  CHECK(t.out.find('\t') != std::string::npos);

  auto tampered = nlohmann::json::parse(a.out);
  tampered["exponents"] = nlohmann::json{0, 3, 4, 5};
  const Run bad = run({"verify", tampered.dump()});
  CHECK(bad.code == 1);
  CHECK(bad.out.rfind("verification failed", 0) == 0);

  const Run p = run({"induce", "mixed:3:1:1"});
  CHECK(p.code == 0);
  CHECK(p.out.find("exponents: 2,3\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus", "x"}).code == 2);
  CHECK(run({"exps", "{not json"}).code == 2);
  CHECK(run({"exps", "/nonexistent/file.json"}).code == 2);
  CHECK(run({"catalog", "braid:x:1"}).code == 2);
  CHECK(run({"induce", kDoubleLine, "--strategy", "paper-order"}).code == 2);
  CHECK(run({"induce", "braid:3:2", "--format", "yaml"}).code == 2);
  const Run inconclusive = run({"induce", "braid:4:3", "--strategy", "exhaustive", "--budget", "3"});
  CHECK(inconclusive.code == 1);
  CHECK(inconclusive.out == "inconclusive: budget exceeded\n");
  const Run none = run({"induce", kGenericPlanes, "--strategy", "greedy"});
  CHECK(none.code == 1);
  CHECK(none.out.rfind("inconclusive", 0) == 0);
}

TEST_CASE("budget from the environment") {
  ::setenv(kBudgetEnv, "2", 1);
  const Run a = run({"induce", "braid:4:2", "--strategy", "greedy"});
  ::unsetenv(kBudgetEnv);
  CHECK(a.code == 1);
  CHECK(a.out == "inconclusive: budget exceeded\n");
  ::setenv(kBudgetEnv, "-4", 1);
  CHECK(run({"induce", "braid:4:2", "--strategy", "greedy"}).code == 2);
  ::unsetenv(kBudgetEnv);
}
