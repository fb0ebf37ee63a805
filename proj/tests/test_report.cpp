#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gcflow/report.hpp"

using namespace gcflow;
using json = nlohmann::json;

namespace {

const CheckRecord* find_check(const RunReport& r, const std::string& target, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.target == target && c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("fibration spec parsing") {
  const FibrationMap c = parse_fibration_spec(json::parse(R"({"kind":"constant","value":[0,1,0]})"));
  CHECK(c.kind() == MapKind::Constant);
  CHECK(c.value().q() == kJ);

  const FibrationMap g =
      parse_fibration_spec(json::parse(R"({"kind":"chart","terms":[[1,0,0.3,0],[0,1,0.1,0]],"domain_radius":1})"));
  CHECK(g.terms().size() == 2);
  CHECK(*g.cap_radius() == 1.0);
  const FibrationMap back = parse_fibration_spec(fibration_to_json(g));
  CHECK(back.terms().size() == 2);
  CHECK(back.terms()[1].q == 1);

  for (const char* bad : {R"({"kind":"rational"})", R"({"kind":"constant","value":[0,2,0]})",
                          R"({"kind":"constant","value":[1,0]})", R"({"kind":"chart","terms":[[1.5,0,1,0]]})",
                          R"({"kind":"chart","terms":[[1,0,1]]})", R"({"value":[0,1,0]})"}) {
    CAPTURE(bad);
    try {
      parse_fibration_spec(json::parse(bad));
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
    }
  }
  CHECK_THROWS_AS(load_fibration_spec("/nonexistent/spec.json"), Error);
}

TEST_CASE("tolerance profiles") {
  CHECK(tolerance_profile("default").key == 1e-4);
  CHECK(tolerance_profile("loose").key == doctest::Approx(1e-3));
  CHECK(tolerance_profile("loose").contact_det_min == doctest::Approx(0.01));
  CHECK_THROWS_AS(tolerance_profile("tight"), Error);
  setenv("GCFLOW_TOL_PROFILE", "loose", 1);
  CHECK(default_tolerances().div == doctest::Approx(1e-4));
  unsetenv("GCFLOW_TOL_PROFILE");
  CHECK(default_tolerances().div == 1e-5);
}

TEST_CASE("classify_fibration examples") {
  const RunReport hopf = classify_fibration({"HOPF", fixture("HOPF")}, 100, 1);
  REQUIRE(hopf.targets.size() == 1);
  CHECK(*hopf.targets[0].field_class == FieldClass::Hopf);
  CHECK(hopf.pass());

  const RunReport conf = classify_fibration({"CONF05", fixture("CONF05")}, 100, 1);
  CHECK(*conf.targets[0].field_class == FieldClass::Conformal);
  CHECK(find_check(conf, "CONF05", "theorem-b/sigma-correspondence")->pass);
  const RunReport sigma = classify_fibration({"CONF05~", fixture("CONF05").conjugated()}, 100, 1);
  CHECK(*sigma.targets[0].field_class == FieldClass::VolumePreserving);

  const RunReport full = classify_fibration({"FULLANTI", fixture("FULLANTI")}, 100, 1);
  CHECK(full.targets[0].rejected);
  CHECK_FALSE(full.targets[0].field_class.has_value());
  CHECK(find_check(full, "FULLANTI", "theorem-b/rejected-dilatation")->value >= 1.0);
  CHECK(full.pass());

  // An unexpected rejection fails the distance-decreasing check.
  const RunReport spec = classify_fibration({"user", fixture("FULLANTI")}, 100, 1);
  CHECK_FALSE(spec.pass());
}

TEST_CASE("verification suite examples") {
  SuiteConfig cfg;
  cfg.fixture = "GEN";
  cfg.suite = "lemma-key";
  const RunReport key = run_verification_suite(cfg);
  const CheckRecord* r = find_check(key, "GEN", "lemma-key/residual");
  REQUIRE(r);
  CHECK(r->value <= 1e-4);
  CHECK(key.pass());

  cfg.suite = "flow";
  cfg.samples = 100;
  const RunReport flow = run_verification_suite(cfg);
  CHECK(find_check(flow, "random", "flow/JJ-commutation")->value <= 1e-8);
  CHECK(flow.pass());

  cfg.suite = "prop-a";
  cfg.fixture = "CONF05";
  cfg.samples = 200;
  const RunReport neg = run_verification_suite(cfg);
  const CheckRecord* j = find_check(neg, "CONF05", "prop-a/J-defect");
  REQUIRE(j);
  CHECK(j->expect == Expectation::Violate);
  CHECK(j->value > j->threshold);  // the property fails ...
  CHECK(j->pass);                  // ... as expected
}

TEST_CASE("suite configuration errors") {
  SuiteConfig cfg;
  cfg.suite = "prop-9";
  CHECK_THROWS_AS(run_verification_suite(cfg), Error);
  cfg.suite = "all";
  cfg.samples = 0;
  CHECK_THROWS_AS(run_verification_suite(cfg), Error);
  cfg.samples = 10;
  cfg.fixture = "HOPF";
  cfg.spec_path = "x.json";
  CHECK_THROWS_AS(run_verification_suite(cfg), Error);
}

TEST_CASE("an expanding user map fails its checks without aborting the suite") {
  const std::string path = "gcflow_test_expanding.json";
  {
    std::ofstream f(path);
    f << R"({"kind":"chart","terms":[[0,2,1,0]],"domain_radius":null})";
  }
  SuiteConfig cfg;
  cfg.suite = "all";
  cfg.samples = 20;
  cfg.spec_path = path;
  const RunReport r = run_verification_suite(cfg);
  std::remove(path.c_str());
  CHECK_FALSE(r.pass());
  const CheckRecord* d = find_check(r, path, "prop-1/distance-decreasing");
  REQUIRE(d);
  CHECK_FALSE(d->pass);
  // The target-independent flow checks still ran.
  REQUIRE(find_check(r, "random", "flow/symplectic"));
  CHECK(find_check(r, "random", "flow/symplectic")->pass);
}

TEST_CASE("report json is deterministic and carries provenance") {
  SuiteConfig cfg;
  cfg.suite = "prop-2-5";
  cfg.samples = 30;
  cfg.seed = 9;
  const std::string a = report_to_json(run_verification_suite(cfg)).dump(2);
  const std::string b = report_to_json(run_verification_suite(cfg)).dump(2);
  CHECK(a == b);
  const json j = json::parse(a);
  CHECK(j["provenance"]["seed"] == 9);
  CHECK(j["provenance"]["samples"] == 30);
  CHECK(j["provenance"]["conventions_hash"].get<std::string>().size() == 16);
  CHECK(j["pass"].is_boolean());
  CHECK(conventions_hash() == conventions_hash());
}

TEST_CASE("export: graph of the Hopf fibration has constant second factor") {
  std::ostringstream out;
  export_samples(fixture("HOPF"), 10, 1, ExportKind::Graph, out);
  const auto rows = parse_csv(out.str());
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == std::vector<std::string>{"m1", "m2", "m3", "n1", "n2", "n3", "status"});
  for (std::size_t r = 1; r < rows.size(); ++r) {
    CHECK(std::stod(rows[r][3]) == 1.0);
    CHECK(std::stod(rows[r][4]) == 0.0);
    CHECK(std::stod(rows[r][5]) == 0.0);
    CHECK(rows[r][6] == "ok");
  }
}

TEST_CASE("export: field rows are unit tangent vectors") {
  for (const char* name : {"HOPF", "GEN"}) {
    std::ostringstream out;
    export_samples(fixture(name), 25, 4, ExportKind::Field, out);
    const auto rows = parse_csv(out.str());
    REQUIRE(rows.size() == 26);
    CHECK(rows[0].size() == 12);
    for (std::size_t r = 1; r < rows.size(); ++r) {
      Quaternion p, X;
      for (int k = 0; k < 4; ++k) {
        p[k] = std::stod(rows[r][k]);
        X[k] = std::stod(rows[r][4 + k]);
      }
      CHECK(std::abs(X.norm() - 1.0) <= 1e-10);
      CHECK(std::abs(dot(X, p)) <= 1e-10);
    }
  }
}

TEST_CASE("export: defects header, byte determinism and errors") {
  std::ostringstream a, b;
  export_samples(fixture("VOL05"), 8, 2, ExportKind::Defects, a);
  export_samples(fixture("VOL05"), 8, 2, ExportKind::Defects, b);
  CHECK(a.str() == b.str());
  CHECK(parse_csv(a.str())[0].size() == 16);
  std::ostringstream c;
  CHECK_THROWS_AS(export_samples(fixture("VOL05"), 0, 2, ExportKind::Defects, c), Error);
  CHECK_THROWS_AS(parse_export_kind("plot"), Error);
}
