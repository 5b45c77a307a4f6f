#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>
#include <vector>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<const char*> args) {
  args.insert(args.begin(), "nialg");
  std::ostringstream out, err;
  int code = nialg::cli::run(static_cast<int>(args.size()), args.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("dim") {
  Result r = run({"dim", "--variety", "ls_a1", "--degrees", "1..5"});
  CHECK(r.code == 0);
  CHECK(r.out == "1 2 8 45 314\n");
  r = run({"--json", "dim", "--variety", "perm", "--degrees", "3,4"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["dimensions"].size() == 2);
}

TEST_CASE("check-identity") {
  CHECK(run({"check-identity", "--variety", "ls", "--identity", "(a*b)*c-a*(b*c) = (b*a)*c-b*(a*c)"}).code == 0);
  Result r = run({"check-identity", "--variety", "ls", "--identity", "a*(b*c) = (a*b)*c"});
  CHECK(r.code == 1);
  CHECK(r.out == "false\n");
}

TEST_CASE("dual and includes") {
  Result r = run({"dual", "--variety", "ls"});
  CHECK(r.code == 0);
  CHECK(r.out.find("perm") != std::string::npos);
  CHECK(run({"includes", "--sub", "ls_a1", "--super", "ls"}).out == "true\n");
  CHECK(run({"includes", "--sub", "ls", "--super", "ls_a1"}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"dim"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  Result r = run({"dim", "--variety", "nope"});
  CHECK(r.code == 2);
  CHECK(r.err.find("nope") != std::string::npos);
  CHECK(run({"check-identity", "--variety", "ls", "--identity", "a*"}).code == 2);
  CHECK(run({"derived", "--variety", "ls", "--op", "plus", "--degree", "5"}).code == 2);
}

TEST_CASE("nf keeps the input variable names") {
  Result r = run({"nf", "--family", "a1", "--expr", "x*(y*(z*w))"});
  CHECK(r.code == 0);
  for (const char* v : {"x", "y", "z", "w"}) CHECK(r.out.find(v) != std::string::npos);
  CHECK(r.out.find("x1") == std::string::npos);
  CHECK(run({"nf", "--family", "b1", "--expr", "a*(b*(c*d))", "--max-steps", "1"}).code == 1);
}

TEST_CASE("verify-basis JSON") {
  Result r = run({"--json", "verify-basis", "--family", "B1", "--degree", "4"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["family"] == "b1");
  CHECK(j["mode"] == "full");
  CHECK(j["basis_size"] == 5);
  CHECK(j["dimension"] == 5);
  CHECK(j["status"] == "pass");
  r = run({"--json", "verify-basis", "--family", "a2", "--degree", "6", "--spanning-only"});
  j = nlohmann::json::parse(r.out);
  CHECK(j["mode"] == "spanning-only");
  CHECK(j["status"] == "pass");
}

TEST_CASE("derived") {
  Result r = run({"derived", "--variety", "ls_a2", "--op", "anticommutator", "--degree", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("rank 1 of", 0) == 0);
}
