#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  std::string out;
  int status;
};

// stdout only; stderr is discarded
Run cli(const std::string& args) {
  const std::string cmd = std::string(CONFSPACE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  return {out, WIFEXITED(raw) ? WEXITSTATUS(raw) : -1};
}

}  // namespace

TEST_CASE("documented examples") {
  auto p = cli("arnold poincare --k 4 --n 3");
  CHECK(p.status == 0);
  CHECK(p.out == "1 + 6t^2 + 11t^4 + 6t^6\n");

  auto b = cli("ce betti --preset punctured-torus --k 2 --format json");
  CHECK(b.status == 0);
  auto doc = nlohmann::json::parse(b.out);
  CHECK(doc["betti"]["2"]["2"] == 2);

  auto s = cli("modp swan --p 5");
  CHECK(s.status == 0);
  CHECK(s.out == "8\n");
}

TEST_CASE("csv output") {
  auto r = cli("forest rewrite --n 2 --forest '((23)1)' --format csv");
  CHECK(r.status == 0);
  CHECK(r.out == "forest,coefficient\n((12)3),-1\n((13)2),-1\n");
  auto u = cli("unordered-betti --k 5 --n 2 --format csv");
  CHECK(u.out == "degree,dim\n0,1\n1,1\n");
  auto c = cli("ce betti --preset twice-punctured-plane --k 2 --format csv");
  CHECK(c.out.find("2,2,3\n") != std::string::npos);
  // forests with several components are quoted
  auto f = cli("forest basis --k 3 --n 2 --degree 1 --format csv");
  CHECK(f.out.find("\"") != std::string::npos);
}

TEST_CASE("deterministic output") {
  const std::string args = "braid subgroup --k 3 --kind stabilizer --format json";
  CHECK(cli(args).out == cli(args).out);
  auto j = nlohmann::json::parse(cli(args).out);
  CHECK(j["index"] == 3);
}

TEST_CASE("verification commands report through the exit status") {
  CHECK(cli("braid verify --k 4").status == 0);
  CHECK(cli("braid verify --k 4 --perturb 0").status == 1);
  CHECK(cli("modp vanishing --p 3 --n 3").status == 0);
  CHECK(cli("ce stability --preset handlebody-1 --kmax 3").status == 0);
  auto st = cli("selftest --only 6");
  CHECK(st.status == 0);
  CHECK(st.out.find("1/1 criteria passed") != std::string::npos);
}

TEST_CASE("errors are machine readable on request") {
  auto e = cli("ce betti --preset no-such-thing --k 2 --error-json");
  CHECK(e.status != 0);
  auto doc = nlohmann::json::parse(e.out);
  CHECK(doc["error"]["code"] == "invalid-argument");

  auto h = cli("modp cohen --p 3 --n 2 --error-json");
  CHECK(h.status != 0);
  CHECK(nlohmann::json::parse(h.out)["error"]["code"] == "hypothesis-violation");

  auto s = cli("ce stability --preset punctured-torus --error-json");
  CHECK(nlohmann::json::parse(s.out)["error"]["code"] == "hypothesis-violation");

  auto bound = cli("arnold poincare --k 0 --n 2 --error-json");
  CHECK(bound.status != 0);
  CHECK(nlohmann::json::parse(bound.out)["error"]["code"] == "usage");

  CHECK(cli("arnold poincare --k 3 --n 2 --format xml").status != 0);
  CHECK(cli("").status != 0);
}
