// gcflow: classify, verify and export great-circle fibrations of S^3.
//
// Exit status: 0 when every check passes, 1 when any check fails,
// 2 on configuration or parse errors.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "gcflow/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct TolFlag {
  const char* name;
  double gcflow::Tolerances::*member;
};

constexpr TolFlag kTolFlags[] = {
    {"geodesic", &gcflow::Tolerances::geodesic},
    {"lambda", &gcflow::Tolerances::lambda},
    {"reeb", &gcflow::Tolerances::reeb},
    {"contact-det-min", &gcflow::Tolerances::contact_det_min},
    {"dlambda-crosscheck", &gcflow::Tolerances::dlambda_crosscheck},
    {"key", &gcflow::Tolerances::key},
    {"div", &gcflow::Tolerances::div},
    {"jdefect", &gcflow::Tolerances::jdefect},
    {"conf", &gcflow::Tolerances::conf},
    {"neg-div", &gcflow::Tolerances::neg_div},
    {"neg-jdefect", &gcflow::Tolerances::neg_jdefect},
    {"neg-conf", &gcflow::Tolerances::neg_conf},
    {"commute", &gcflow::Tolerances::commute},
    {"symplectic", &gcflow::Tolerances::symplectic},
    {"acs-square", &gcflow::Tolerances::acs_square},
    {"e-invariance", &gcflow::Tolerances::e_invariance},
    {"pullback", &gcflow::Tolerances::pullback},
    {"non-lagrangian", &gcflow::Tolerances::non_lagrangian},
    {"map-verdict", &gcflow::Tolerances::map_verdict},
};

struct Options {
  std::string fixture;
  std::string spec;
  std::string suite{"all"};
  std::size_t samples{200};
  std::uint64_t seed{1};
  std::string out;
  std::size_t grid{100};
  std::string what{"field"};
  std::string profile;
  std::map<std::string, double> tol_overrides;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--fixture", o.fixture, "Built-in fibration (HOPF, VOL05, CONF05, GEN, FULLANTI)");
  cmd->add_option("--spec", o.spec, "JSON fibration spec file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Sampling seed");
  cmd->add_option("--out", o.out, "Output file (default: stdout)");
}

void add_tolerances(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol-profile", o.profile, "Tolerance profile: default or loose (env GCFLOW_TOL_PROFILE)");
  for (const auto& flag : kTolFlags) {
    cmd->add_option_function<double>(std::string("--tol-") + flag.name,
                                     [&o, name = flag.name](double v) { o.tol_overrides[name] = v; },
                                     "Override this threshold")
        ->check(CLI::PositiveNumber)
        ->group("Tolerances");
  }
}

gcflow::Tolerances resolve_tolerances(const Options& o) {
  gcflow::Tolerances tol = o.profile.empty() ? gcflow::default_tolerances() : gcflow::tolerance_profile(o.profile);
  for (const auto& flag : kTolFlags) {
    if (auto it = o.tol_overrides.find(flag.name); it != o.tol_overrides.end()) tol.*flag.member = it->second;
  }
  return tol;
}

gcflow::SuiteConfig make_config(const Options& o) {
  gcflow::SuiteConfig cfg;
  cfg.suite = o.suite;
  if (!o.fixture.empty()) cfg.fixture = o.fixture;
  if (!o.spec.empty()) cfg.spec_path = o.spec;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.tol = resolve_tolerances(o);
  return cfg;
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f || !(f << text)) throw gcflow::Error(gcflow::ErrorCode::Parse, "cannot write '" + o.out + "'");
}

void print_summary(const gcflow::RunReport& report) {
  for (const auto& c : report.checks) {
    if (!c.pass) {
      std::fprintf(stderr, "FAIL %s %s: %s=%.6g %s %.3g%s%s\n", c.target.c_str(), c.name.c_str(),
                   c.statistic.c_str(), c.value, c.relation.c_str(), c.threshold, c.error.empty() ? "" : " ",
                   c.error.c_str());
    }
  }
  std::size_t passed = 0;
  for (const auto& c : report.checks) passed += c.pass ? 1 : 0;
  std::fprintf(stderr, "%zu/%zu checks passed\n", passed, report.checks.size());
}

int emit_report(const Options& o, const gcflow::RunReport& report) {
  write_output(o, report_to_json(report).dump(2) + "\n");
  print_summary(report);
  return report.pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Great-circle fibrations of S^3: classification, verification suites and sample export"};
  app.require_subcommand(1);
  Options o;

  auto* classify = app.add_subcommand("classify", "Classify a fibration map and its unit field");
  add_common(classify, o);
  classify->add_option("--samples", o.samples, "Sample count")->check(CLI::PositiveNumber);
  add_tolerances(classify, o);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  add_common(verify, o);
  verify->add_option("--suite", o.suite, "Suite name")->check(CLI::IsMember(gcflow::suite_names()));
  verify->add_option("--samples", o.samples, "Sample count per target")->check(CLI::PositiveNumber);
  add_tolerances(verify, o);

  auto* exporter = app.add_subcommand("export", "Write per-sample CSV data");
  add_common(exporter, o);
  exporter->add_option("--grid", o.grid, "Number of grid points")->check(CLI::PositiveNumber);
  exporter->add_option("--samples", o.grid, "Alias for --grid")->check(CLI::PositiveNumber);
  exporter->add_option("--what", o.what, "field, graph or defects")->check(CLI::IsMember({"field", "graph", "defects"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*verify) return emit_report(o, gcflow::run_verification_suite(make_config(o)));

    const gcflow::SuiteConfig cfg = make_config(o);
    const auto targets = gcflow::resolve_targets(cfg);
    if (targets.size() != 1) throw gcflow::Error(gcflow::ErrorCode::Parse, "give --fixture or --spec");

    if (*classify) return emit_report(o, gcflow::classify_fibration(targets.front(), o.samples, o.seed, cfg.tol));

    std::ostringstream csv;
    gcflow::export_samples(targets.front().map, o.grid, o.seed, gcflow::parse_export_kind(o.what), csv);
    write_output(o, csv.str());
    return kExitPass;
  } catch (const gcflow::Error& e) {
    std::fprintf(stderr, "gcflow: %s\n", e.what());
    return e.code() == gcflow::ErrorCode::Parse ? kExitConfig : kExitFail;
  }
}
