#pragma once

/**
 * @file report.hpp
 * @brief Verification suites, fibration classification and CSV export
 * behind the `gcflow` command line.
 *
 * Every suite produces a RunReport: a flat list of checks, each a statistic
 * over the sampled points compared with a pinned threshold. Checks whose
 * property is expected NOT to hold (negative controls, e.g. β² = −Id on a
 * conformal non-Hopf fibration) pass only when a sample exceeds a separate
 * witness threshold, so each equivalence is exercised in both directions.
 */

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gcflow/fibration.hpp"

namespace gcflow {

struct Tolerances {
  double geodesic{1e-6};
  double lambda{4.0 * 2.220446049250313e-16};  // |λ(X) − 1|, rounding only
  double reeb{1e-5};
  double contact_det_min{0.1};
  double dlambda_crosscheck{1e-5};
  double key{1e-4};
  double div{1e-5};
  double jdefect{1e-4};
  double conf{1e-4};
  double neg_div{1e-3};
  double neg_jdefect{1e-2};
  double neg_conf{1e-3};
  double comparability_factor{5.0};
  double comparability_slack{1e-8};
  double commute{1e-8};
  double symplectic{1e-10};
  double acs_square{1e-12};
  double e_invariance{1e-6};
  double pullback{1e-5};
  double non_lagrangian{0.05};
  double map_verdict{1e-6};
  double obstruction_dilatation{1.0 - 1e-3};
};

/// "default" (the pinned thresholds) or "loose" (upper bounds ×10, lower bounds ÷10).
Tolerances tolerance_profile(std::string_view name);

/// Profile named by GCFLOW_TOL_PROFILE, "default" when unset.
Tolerances default_tolerances();

enum class Expectation { Hold, Violate };

struct CheckRecord {
  std::string target;
  std::string name;
  std::string statistic;  // "max", "min", "flag", ...
  double value{0.0};
  std::string relation;   // "<=" or ">="
  double threshold{0.0};
  Expectation expect{Expectation::Hold};
  std::optional<double> witness;  // for Violate: value must exceed this
  bool pass{false};
  std::string error;
};

enum class FieldClass { Hopf, VolumePreserving, Conformal, Generic };

const char* to_string(FieldClass c);

struct TargetSummary {
  std::string target;
  std::optional<MapClass> map_class;
  std::optional<FieldClass> field_class;
  bool rejected{false};  // map is not distance decreasing
};

struct RunReport {
  std::string command;
  std::string suite;
  std::uint64_t seed{0};
  std::size_t samples{0};
  std::vector<TargetSummary> targets;
  std::vector<CheckRecord> checks;

  bool pass() const;
};

struct SuiteConfig {
  std::string suite{"all"};
  std::optional<std::string> fixture;
  std::optional<std::string> spec_path;
  std::size_t samples{200};
  std::uint64_t seed{1};
  Tolerances tol{};
};

/// Suite names accepted by run_verification_suite.
std::vector<std::string> suite_names();

struct NamedMap {
  std::string name;
  FibrationMap map;
};

FibrationMap parse_fibration_spec(const nlohmann::json& j);
FibrationMap load_fibration_spec(const std::string& path);
nlohmann::json fibration_to_json(const FibrationMap& f);

/// Fixture or spec file named by the config; all fixtures when neither is set.
std::vector<NamedMap> resolve_targets(const SuiteConfig& config);

RunReport classify_fibration(const NamedMap& target, std::size_t samples, std::uint64_t seed,
                             const Tolerances& tol = {});

RunReport run_verification_suite(const SuiteConfig& config);

nlohmann::ordered_json report_to_json(const RunReport& report);

/// Description of the sign and labeling conventions; hashed into reports.
std::string conventions_text();
std::uint64_t conventions_hash();

enum class ExportKind { Field, Graph, Defects };

ExportKind parse_export_kind(std::string_view what);

/// CSV with a header row and 17 significant digits; failed rows carry their
/// error in the status column.
void export_samples(const FibrationMap& f, std::size_t grid, std::uint64_t seed, ExportKind what, std::ostream& out);

}  // namespace gcflow
