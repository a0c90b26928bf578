#include "branchsys/cli.hpp"
#include "branchsys/json_io.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace branchsys;
using branchsys::testing::fixture_path;

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

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("branchsys_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("check-k exit codes") {
  const auto ok = run({"check-k", fixture_path("example2_graph.json")});
  CHECK(ok.code == kExitOk);
  CHECK(Json::parse(ok.out)["satisfied"] == true);
  const auto bad = run({"check-k", fixture_path("selfloop_graph.json")});
  CHECK(bad.code == kExitFailed);
  CHECK(Json::parse(bad.out)["satisfied"] == false);
  CHECK(run({"check-k", fixture_path("example2_system.json")}).code == kExitOk);
  CHECK(run({"check-k", "/nonexistent/graph.json"}).code == kExitInputError);
}

TEST_CASE("input errors exit with code 2") {
  const auto path = temp_path("broken.json");
  write_file(path, R"({"vertices": ["a"], "edges": [{"id": "e", "src": "a", "dst": "b"}]})");
  const auto r = run({"check-k", path});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("dangling vertex b") != std::string::npos);
  write_file(path, "{not json");
  CHECK(run({"build", path}).code == kExitInputError);
  CHECK(run({"frobnicate"}).code == kExitInputError);
  CHECK(run({"verify", fixture_path("overlapping_ranges_system.json")}).code == kExitInputError);
  CHECK(run({"apply", fixture_path("example2_system.json"), "--word", "",
             "--func", fixture_path("psi_one.json")}).code == kExitInputError);
}

TEST_CASE("build output feeds the other commands") {
  const auto path = temp_path("built.json");
  const auto b = run({"build", fixture_path("example2_graph.json"), "-o", path});
  REQUIRE(b.code == kExitOk);
  CHECK(run({"validate", path}).code == kExitOk);
  const auto v = run({"verify", path, "--trials", "3"});
  CHECK(v.code == kExitOk);
  CHECK(Json::parse(v.out)["pass"] == true);
  CHECK(run({"thm44", path, "--func", fixture_path("phi_indicator_0_4.json")}).code == kExitOk);
  // stdout form equals the written file
  const auto s = run({"build", fixture_path("example2_graph.json")});
  CHECK(Json::parse(s.out) == Json::parse(slurp(path)));
}

TEST_CASE("validate and verify report failures") {
  const auto v = run({"validate", fixture_path("overlapping_ranges_system.json")});
  CHECK(v.code == kExitFailed);
  const auto j = Json::parse(v.out);
  CHECK(j["valid"] == false);
  CHECK(j["violations"][0]["item"] == 1);
}

TEST_CASE("duality and thm44 commands") {
  const auto sys = fixture_path("example2_system.json");
  const auto d = run({"duality", sys, "--func", fixture_path("psi_one.json"), "--set", "-1,0"});
  CHECK(d.code == kExitOk);
  CHECK(Json::parse(d.out)["pass"] == true);
  CHECK(run({"duality", sys, "--func", fixture_path("psi_one.json"), "--set", "0;1"}).code ==
        kExitInputError);
  const auto t = run({"thm44", sys, "--func", fixture_path("psi_one.json")});
  CHECK(t.code == kExitInputError);
}

TEST_CASE("sample outputs") {
  const auto sys = fixture_path("example2_system.json");
  const auto tsv = temp_path("apply.tsv");
  const auto a = run({"apply", sys, "--word", "S_e2", "--func", fixture_path("phi_indicator_0_4.json"),
                      "-o", tsv, "--samples", "10"});
  REQUIRE(a.code == kExitOk);
  std::istringstream lines(slurp(tsv));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "x\tre\tim");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 10);

  const auto pf_tsv = temp_path("pf.tsv");
  const auto p = run({"pf", sys, "--iters", "3", "-o", pf_tsv, "--samples", "5"});
  CHECK(p.code == kExitOk);
  CHECK(slurp(pf_tsv).rfind("step\tx\tre\tim\ttotal_mass\ty_mass", 0) == 0);

  const auto layout = temp_path("layout.tsv");
  CHECK(run({"export", sys, "-o", layout, "--samples", "4"}).code == kExitOk);
  CHECK(slurp(layout).find("R\te3\t2\t3") != std::string::npos);
}

TEST_CASE("outputs are deterministic") {
  const auto sys = fixture_path("example2_system.json");
  const std::vector<std::string> args = {"verify", sys, "--trials", "4", "--seed", "9"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> pf = {"pf", sys, "--iters", "4"};
  CHECK(run(pf).out == run(pf).out);
}
