#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bcc/cli.hpp"
#include "bcc/json_io.hpp"

using namespace bcc;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("bcc_test_" + name);
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST_CASE("game exact") {
  const Run r = run({"--format", "json", "game", "exact"});
  REQUIRE(r.code == kExitOk);
  const Json j = r.json();
  CHECK(j["p_c_exact"] == "15/22");
  CHECK(j["p_c"].get<double>() == 0.681818181818);
  CHECK(j["sum_abs_g"] == 22);
  CHECK(j["classical_bound"] == 8);
  CHECK(j["quantum_advantage"] == true);
  CHECK(std::abs(j["p_q"].get<double>() - 0.681974) < 1e-4);
  CHECK(j["optimal_strategy"]["A"] == Json::array({1, 1, 1, 1}));
}

TEST_CASE("bell bounds") {
  const Run orig = run({"--format", "json", "bell", "bounds", "--original"});
  REQUIRE(orig.code == kExitOk);
  CHECK(orig.json()["min"] == -13);
  CHECK(orig.json()["max"] == 3);
  CHECK(orig.json()["strategies"] == 64);

  const Run hom = run({"--format", "json", "bell", "bounds", "--homogenized"});
  REQUIRE(hom.code == kExitOk);
  CHECK(hom.json()["max"] == 8);
  CHECK(hom.json()["min"] == -8);
  CHECK(hom.json()["strategies"] == 512);
  CHECK(hom.json()["bound_tight"] == true);

  CHECK(run({"bell", "bounds", "--original", "--homogenized"}).code == kExitUsage);
}

TEST_CASE("bell coefficients and quantum value") {
  const Run c = run({"--format", "json", "bell", "coefficients"});
  REQUIRE(c.code == kExitOk);
  CHECK(c.json()["sum_abs"] == 22);
  CHECK(c.json()["formula_matches_homogenization"] == true);

  const Run q = run({"--format", "json", "bell", "quantum-value"});
  REQUIRE(q.code == kExitOk);
  CHECK(std::abs(q.json()["S"].get<double>() - 8.00685) < 2e-4);
  CHECK(q.json()["terms"].size() == 18);
}

TEST_CASE("state validate and dump round trip") {
  const Run v = run({"--format", "json", "state", "validate"});
  REQUIRE(v.code == kExitOk);
  CHECK(v.json()["pt_invariance_deviation"].get<double>() <= 1e-6);
  CHECK(v.json()["pass"] == true);

  const Run d = run({"--format", "json", "state", "dump"});
  REQUIRE(d.code == kExitOk);
  CHECK(d.json().size() == 64);
  const auto path = temp_file("state.json", d.out);
  const Run again = run({"--format", "json", "state", "validate", "--input", path.string()});
  CHECK(again.code == kExitOk);
  CHECK(again.json()["pass"] == true);

  // Trace 2 violates the density-matrix contract.
  Json twice = d.json();
  for (auto& e : twice) e[0] = 2.0 * e[0].get<double>();
  const auto bad = temp_file("bad_state.json", twice.dump());
  CHECK(run({"state", "validate", "--input", bad.string()}).code == kExitContract);

  const auto garbage = temp_file("garbage.json", "{not json");
  CHECK(run({"state", "validate", "--input", garbage.string()}).code == kExitUsage);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"game", "exact", "--bogus"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"--format", "xml", "game", "exact"}).code == kExitUsage);
  CHECK(run({"game", "simulate", "--shots", "0"}).code == kExitUsage);
  CHECK(run({"game", "simulate", "--protocol", "magic"}).code == kExitUsage);
  CHECK(run({"game", "exact", "--table", "/nonexistent/table.json"}).code == kExitUsage);
  const auto malformed = temp_file("malformed_table.json", R"({"n": 3, "settings": 2, "g": [1], "bound": 1})");
  CHECK(run({"game", "exact", "--table", malformed.string()}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("a table with an unmeasured setting violates the contract") {
  Json table = to_json(homogenize(sliwa5()));
  table["g"][3][0][0] = 1;
  const auto path = temp_file("needs_setting3.json", table.dump());
  const Run r = run({"game", "exact", "--table", path.string()});
  CHECK(r.code == kExitContract);
  CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("custom tables flow through") {
  std::vector<double> g(8, 0.0);
  g[7] = 1.0;  // A1 B1 C1 only
  const auto path =
      temp_file("single.json", to_json(FullCorrelationInequality(2, g, 1.0)).dump());
  const Run r = run({"--format", "json", "bell", "bounds", "--table", path.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.json()["max"] == 1);
  CHECK(r.json()["strategies"] == 8);
  const Run e = run({"--format", "json", "game", "exact", "--table", path.string()});
  REQUIRE(e.code == kExitOk);
  CHECK(e.json()["p_c_exact"] == "1/1");
}

TEST_CASE("human and csv formats") {
  const Run human = run({"game", "exact"});
  CHECK(human.code == kExitOk);
  CHECK(human.out.find("p_c_exact: 15/22") != std::string::npos);

  const Run csv = run({"--format", "csv", "bell", "coefficients"});
  CHECK(csv.code == kExitOk);
  CHECK(csv.out.rfind("x1,x2,x3,g\n", 0) == 0);
  CHECK(csv.out.find("\n0,0,0,5\n") != std::string::npos);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 65);

  const Run sim = run({"--format", "csv", "game", "simulate", "--shots", "1000"});
  CHECK(sim.code == kExitOk);
  CHECK(sim.out.find("successes,") != std::string::npos);
}

TEST_CASE("simulate and gap") {
  const Run a = run({"--format", "json", "game", "simulate", "--shots", "5000", "--seed", "3", "--shards", "2"});
  const Run b = run({"--format", "json", "game", "simulate", "--shots", "5000", "--seed", "3", "--shards", "2"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.json()["successes"] == b.json()["successes"]);
  CHECK(a.json()["protocol"] == "quantum");

  const Run g = run({"--format", "json", "game", "gap", "--shots", "10000"});
  REQUIRE(g.code == kExitOk);
  CHECK(g.json()["underpowered"] == true);
  CHECK(g.json()["p_c_exact"] == "15/22");
  CHECK(g.err.find("warning") != std::string::npos);
}

TEST_CASE("reproduce-paper") {
  const Run r = run({"--format", "json", "reproduce-paper"});
  REQUIRE(r.code == kExitOk);
  const Json j = r.json();
  CHECK(j["pass"] == true);
  CHECK(j["B_orig_min"] == -13);
  CHECK(j["B_orig_max"] == 3);
  CHECK(j["B_hom"] == 8);
  CHECK(j["P_C_exact"] == "15/22");
  for (const auto& c : j["checks"]) CHECK_MESSAGE(c["pass"] == true, c["name"]);
}
