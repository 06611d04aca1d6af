#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "report.hpp"

using hyperpick::cli::json;
using hyperpick::cli::run;

namespace {

const std::string kData = TEST_DATA_DIR;

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hyperpick_test_" + name);
}

std::filesystem::path write_problem(const std::string& name, const std::string& text) {
  const auto path = scratch(name);
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("solve reproduces the worked example") {
  const auto r = invoke({"solve", kData + "/schur_example.json"});
  REQUIRE(r.code == 0);
  const json rep = r.report();
  CHECK(rep["command"] == "solve");
  CHECK(rep["inputs_digest"].get<std::string>().size() == 16);
  CHECK(rep["results"]["residual"].get<double>() < 1e-10);
  CHECK(rep["results"]["chain"]["diagonal"][1][0].get<double>() == doctest::Approx(0.5));
  CHECK(rep["results"]["grid_check"]["within_unit_disc"] == true);
}

TEST_CASE("solvable reports the boundary case") {
  const auto r = invoke({"solvable", kData + "/identity.json"});
  REQUIRE(r.code == 0);
  CHECK(r.report()["results"]["status"] == "Boundary");
}

TEST_CASE("triangle with every permutation of three nodes") {
  const auto r = invoke({"triangle", kData + "/three_nodes.json", "--permutations", "all"});
  REQUIRE(r.code == 0);
  const json res = r.report()["results"];
  CHECK(res["triangles"].size() == 6);
  CHECK(res["sweep"].contains("epsilon_min"));
  CHECK(res["sweep"]["exhaustive"] == true);
  CHECK(res["sweep"]["permutations_checked"] == 6);
}

TEST_CASE("sampled permutations need a seed") {
  const auto five = write_problem("five.json",
                                  R"({"nodes": [[0,0],[0.1,0],[0.2,0],[0.3,0],[0.4,0]],
                                      "values": [[0,0],[0,0],[0,0],[0,0],[0,0]]})");
  CHECK(invoke({"triangle", five.string(), "--permutations", "10"}).code == 2);
  const auto ok = invoke({"triangle", five.string(), "--permutations", "10", "--seed", "4"});
  REQUIRE(ok.code == 0);
  CHECK(ok.report()["results"]["triangles"].size() == 10);
  CHECK(ok.report()["results"]["sweep"]["exhaustive"] == false);
  CHECK(invoke({"triangle", five.string(), "--permutations", "ten"}).code == 2);
}

TEST_CASE("solve refuses unsolvable data with exit 3") {
  const auto r = invoke({"solve", kData + "/unsolvable.json"});
  CHECK(r.code == 3);
  const json res = r.report()["results"];
  CHECK(res["refused"] == true);
  CHECK(res["verdict"] == "Unsolvable");
}

TEST_CASE("invalid input exits with 2 and a diagnostic") {
  const auto broken = write_problem("broken.json", "{\n  \"nodes\": [[0, 0],\n  [0.5 0]]\n}\n");
  auto r = invoke({"solvable", broken.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);

  const auto outside = write_problem("outside.json", R"({"nodes": [[0,0],[0.8,0.8]], "values": [[0,0],[0,0]]})");
  r = invoke({"solvable", outside.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("nodes[1]") != std::string::npos);

  const auto mismatch = write_problem("mismatch.json", R"({"nodes": [[0,0],[0.5,0]], "values": [[0,0]]})");
  CHECK(invoke({"solvable", mismatch.string()}).code == 2);
  const auto coincide = write_problem("coincide.json", R"({"nodes": [[0.5,0],[0.5,0]], "values": [[0,0],[0,0]]})");
  CHECK(invoke({"solvable", coincide.string()}).code == 2);
  CHECK(invoke({"solvable", kData + "/radial.json"}).code == 2);  // no values
  CHECK(invoke({"frobnicate", kData + "/radial.json"}).code == 2);
  CHECK(invoke({"solvable", "/nonexistent/problem.json"}).code == 2);
  CHECK(invoke({"sampling", kData + "/lattice.json"}).code == 2);  // missing --seed
}

TEST_CASE("reports are deterministic and the digest ignores output paths") {
  const std::vector<std::string> args{"sampling", kData + "/lattice.json", "--seed", "11", "--count", "5",
                                      "--grid-radius", "2", "--grid-step", "0.25"};
  const auto a = invoke(args), b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  auto with_out = args;
  const auto path = scratch("report.json");
  with_out.insert(with_out.end(), {"--out", path.string()});
  const auto c = invoke(with_out);
  REQUIRE(c.code == 0);
  CHECK(c.out.empty());
  CHECK(slurp(path) == a.out);

  auto other_seed = args;
  other_seed[3] = "12";
  CHECK(invoke(other_seed).report()["inputs_digest"] != a.report()["inputs_digest"]);
}

TEST_CASE("density, analyze and denjoy with CSV sidecars") {
  const auto csv = scratch("density.csv");
  const auto d = invoke({"density", kData + "/radial.json", "--depth", "8", "--csv", csv.string()});
  REQUIRE(d.code == 0);
  CHECK(d.report()["results"]["alpha"].get<double>() == doctest::Approx(0.05));
  CHECK(slurp(csv).rfind("alpha,M,admissible\n", 0) == 0);

  const auto a = invoke({"analyze", kData + "/radial.json", "--order", "1", "--grid-radius", "1"});
  REQUIRE(a.code == 0);
  CHECK(a.report()["results"]["separation_condition"] == "pass");
  CHECK(a.report()["results"]["density"]["R"].get<double>() > 0);

  const auto custom = invoke({"density", kData + "/radial.json", "--alpha-grid", "0.2,0.5"});
  REQUIRE(custom.code == 0);
  CHECK(custom.report()["results"]["alpha_grid"].size() == 2);

  CHECK(invoke({"triangle", kData + "/three_nodes.json", "--csv", csv.string()}).code == 2);
}

TEST_CASE("stress and audit") {
  const auto s = invoke({"stress", kData + "/cluster.json", "--eps", "0.1", "--C", "0.25"});
  REQUIRE(s.code == 0);
  const json res = s.report()["results"];
  CHECK(res["subsets"]["passes"] == true);
  CHECK(res["full_problem"]["status"] != "InfinitelyMany");

  const auto a = invoke({"audit", kData + "/schur_example.json", "--grid-radius", "2", "--grid-step", "0.25"});
  REQUIRE(a.code == 0);
  CHECK(a.report()["results"]["prop2_constant"].get<double>() <= 1.0 / 0.1 + 1e-9);
  CHECK(invoke({"audit", kData + "/identity.json"}).code == 3);
}

TEST_CASE("digest and non-finite helpers") {
  CHECK(hyperpick::cli::fnv1a_hex("") == "cbf29ce484222325");
  CHECK(hyperpick::cli::fnv1a_hex("a") == "af63dc4c8601ec8c");
  json j;
  hyperpick::cli::put_real(j, "x", std::numeric_limits<double>::infinity());
  CHECK(j["x"].is_null());
  CHECK(j["x_nonfinite"] == "inf");
  CHECK(hyperpick::cli::complex_json({std::nan(""), 0}).is_null());
}
