#pragma once

/**
 * @file fibration.hpp
 * @brief Graph maps F between the two S^2 factors of the Grassmannian and
 * the great-circle fields they induce on S^3.
 *
 * A graph map is either a constant or a finite sum F̂(z) = Σ c_pq z^p z̄^q in
 * matched stereographic charts. Both charts project from the pole +k; the
 * S^2_+ chart is complex-conjugated, so that chart-holomorphic maps are
 * exactly the maps commuting with the complex structures
 *   i_- : u ↦ m × u on T S^2_-,   i_+ : u ↦ −(n × u) on T S^2_+.
 *
 * The fibre through p ∈ S^3 is the great circle of the plane (a, F(a)) that
 * contains p, i.e. the solution of a·p = p·F(a); the unit field is X(p) = a·p.
 * With `transposed` set the map goes S^2_+ → S^2_- and the plane is (F(a), a).
 */

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "gcflow/grassmann.hpp"
#include "gcflow/quat.hpp"

namespace gcflow {

using Complex = std::complex<double>;

struct ChartTerm {
  int p{0};  // power of z
  int q{0};  // power of z̄
  Complex c{};
};

enum class MapKind { Constant, Chart };

class FibrationMap {
 public:
  static FibrationMap constant(const ImagUnitQuaternion& value, std::optional<double> cap_radius = std::nullopt);
  static FibrationMap chart(std::vector<ChartTerm> terms, std::optional<double> cap_radius, bool transposed = false);

  MapKind kind() const { return kind_; }
  const ImagUnitQuaternion& value() const { return value_; }
  const std::vector<ChartTerm>& terms() const { return terms_; }
  /// Radius of the domain cap in the domain chart; empty means the whole
  /// sphere minus the chart pole.
  const std::optional<double>& cap_radius() const { return cap_radius_; }
  bool transposed() const { return transposed_; }

  /// σ∘F with σ the conjugation of the target chart (an orientation
  /// reversing isometry of S^2). Constant maps are fixed by σ in this sense.
  FibrationMap conjugated() const;

  /// F̂ evaluated in chart coordinates.
  Complex eval_chart(Complex z) const;

  bool in_domain(const ImagUnitQuaternion& x) const;

 private:
  FibrationMap() = default;
  MapKind kind_{MapKind::Constant};
  ImagUnitQuaternion value_{};
  std::vector<ChartTerm> terms_;
  std::optional<double> cap_radius_;
  bool transposed_{false};
};

// Stereographic charts from the pole +k. The S^2_+ chart is reversed.
Complex chart_minus(const ImagUnitQuaternion& x);
ImagUnitQuaternion chart_minus_inv(Complex z);
Complex chart_plus(const ImagUnitQuaternion& x);
ImagUnitQuaternion chart_plus_inv(Complex z);

/// Chart of the domain factor of F (S^2_- unless transposed) and its inverse.
Complex domain_chart(const FibrationMap& f, const ImagUnitQuaternion& x);
ImagUnitQuaternion domain_chart_inv(const FibrationMap& f, Complex z);

ImagUnitQuaternion eval_map(const FibrationMap& f, const ImagUnitQuaternion& x);

/// Point of the Grassmannian on the graph of F over the domain point a.
GrassPoint graph_point(const FibrationMap& f, const ImagUnitQuaternion& a);

/// Orthonormal frame (e1, x × e1) of T_x S^2, positively oriented with
/// respect to the outward normal.
std::array<Quaternion, 2> sphere2_frame(const ImagUnitQuaternion& x);

struct Differential {
  Eigen::Matrix2d matrix;       // columns: images of the source frame, in the target frame
  double sigma_max{0.0};
  double sigma_min{0.0};
};

inline constexpr double kMapStep = 1e-5;

/// Central differences of F along the geodesics of the source frame.
Differential differential(const FibrationMap& f, const ImagUnitQuaternion& x, double h = kMapStep);

enum class MapVerdict { Constant, Holomorphic, AntiHolomorphic, Generic };

const char* to_string(MapVerdict v);

struct MapClass {
  MapVerdict verdict{MapVerdict::Generic};
  double delta_hol{0.0};
  double delta_anti{0.0};
  double max_dilatation{0.0};
  std::size_t samples{0};
};

/// Deterministic low-discrepancy points of the domain (sunflower pattern in
/// the chart for caps, Fibonacci lattice for the full sphere). `shrink`
/// scales the cap radius.
std::vector<ImagUnitQuaternion> domain_samples(const FibrationMap& f, std::size_t count, double shrink = 1.0);

/// Holomorphy defects and dilatation over `samples` domain points.
/// `tol` scales the verdict threshold tol·(1 + max dilatation).
MapClass classify_map(const FibrationMap& f, std::size_t samples, double tol = 1e-6);

struct FibreSolution {
  ImagUnitQuaternion a;
  int iterations{0};
  /// Spherical distance between successive iterates, one entry per step.
  std::vector<double> residuals;
};

inline constexpr double kFibreTol = 1e-14;
inline constexpr int kFibreMaxIter = 2000;

/**
 * Fixed point of a ↦ p·F(a)·p̄ (or p̄·F(a)·p when transposed) by Banach
 * iteration. Without a seed the iteration starts from the image of the chart
 * origin. Throws Coverage if an iterate leaves the domain and Convergence if
 * the residual does not drop below `tol` in `max_iter` steps.
 */
FibreSolution locate_fibre(const FibrationMap& f, const SpherePoint3& p, int max_iter = kFibreMaxIter,
                           double tol = kFibreTol, std::optional<ImagUnitQuaternion> seed = std::nullopt);

/// X(p) = a·p with a = locate_fibre(f, p).
TangentVector vector_field(const FibrationMap& f, const SpherePoint3& p,
                           std::optional<ImagUnitQuaternion> seed = std::nullopt);

/// X(p) for a known fibre parameter a.
Quaternion field_from_fibre(const FibrationMap& f, const ImagUnitQuaternion& a, const SpherePoint3& p);

// Shipped fixtures: HOPF, VOL05, CONF05, GEN, FULLANTI.
std::vector<std::string> fixture_names();
FibrationMap fixture(std::string_view name);

}  // namespace gcflow
