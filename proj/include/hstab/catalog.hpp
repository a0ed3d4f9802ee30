#pragma once

// The example catalog: flat Lagrangian charts (tori, hyperbola products,
// planes) and closed-form functionals for curved ambients (geodesic tubes in
// the spaces of geodesics of 3-dimensional space forms, rank-one surfaces in
// tangent bundles), addressable by string IDs.

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hstab/functional.hpp"
#include "hstab/immersion.hpp"
#include "hstab/test_function.hpp"

namespace hstab {

enum class VerdictLabel { positive_definite, negative_definite, indefinite, inconclusive };

std::string to_string(VerdictLabel label);

class CatalogError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Default truncation of line axes for catalog charts.
inline constexpr double kDefaultLineTruncation = 8.0;

LagrangianChart make_torus(const std::vector<double>& radii, std::size_t p,
                           OracleKind oracle = OracleKind::closed_form);
LagrangianChart make_hyperbola_product(const std::vector<double>& radii, const std::vector<int>& branch_signs,
                                       OracleKind oracle = OracleKind::closed_form);
/// The real n-plane {y = 0} in C^n_p (pseudo-Kaehler) or in D^n (para-Kaehler).
LagrangianChart make_lagrangian_plane(AmbientKind kind, std::size_t n, std::size_t p = 0);

/// Samples of a curve in a surface N: geodesic curvature and Gaussian curvature
/// of N along the curve, as functions of arclength.
struct CurveData {
  std::string description;
  std::function<double(double)> kappa;
  std::function<double(double)> K_along;
  bool closed = false;
  double length = 0.0;
  std::function<double(double)> a_profile;  // empty means a = 0
  bool a_nonzero = false;

  static CurveData circle_in_plane(double radius);
  static CurveData constant(double kappa, double K, std::optional<double> closed_length = std::nullopt);
};

/// The eight rows of the geodesic-tube table.
struct TubeRow {
  std::string space;  // "S3", "dS3", "AdS3", "H3"
  std::string row;    // e.g. "closed", "closed-definite", "unbounded-indefinite"
  std::array<int, 4> eps;
  AxisDomain::Kind s_kind;
  AxisDomain::Kind t_kind;
  VerdictLabel g_label;
  VerdictLabel gprime_label;
  std::string topology;
};

const std::vector<TubeRow>& tube_rows();
const TubeRow& find_tube_row(const std::string& space, const std::string& row);

enum class TubeMetric { G, Gprime };

/// eps (u_ss eps3 + u_tt eps2)^2 - 2 eps (eps1 u_s^2 + eps4 u_t^2) with eps = eps1 eps3, or
/// eps' (4 u_st^2 + 2 (eps1 u_s^2 + eps4 u_t^2)) with eps' = eps1 eps2.
Functional make_geodesic_tube(const TubeRow& row, TubeMetric metric);
Functional make_geodesic_tube(const std::string& space, const std::string& row, TubeMetric metric);

/// int 4 u_st^2 - (kappa^2 + 2K) u_t^2 (normal bundle), or with (Lap u)^2 in
/// place of 4 u_st^2 when a is not identically zero.
Functional make_rank_one_bundle(const CurveData& curve);

/// A scaling family u -> c(lambda) u(lambda s_axes).
struct ScalingFamily {
  std::string id;
  TestFunction base;
  std::vector<std::size_t> axes;
  /// u^lambda = lambda^exponent u(lambda s_axes); isotropic families use n/2 - 1.
  double exponent = 0.0;
  std::vector<double> schedule;
};

struct SpectralData {
  std::vector<double> radii;  // flat torus with circles of these radii
  double c = 0.0;             // Einstein constant of the ambient
  int eps = 1;
};

struct CatalogEntry {
  std::string id;
  std::string topic;
  Functional functional;
  std::optional<LagrangianChart> chart;
  VerdictLabel expected = VerdictLabel::inconclusive;
  std::vector<SosCertificate> certificates;
  /// Named probes, tried before the generic witness library.
  std::vector<TestFunction> probes;
  std::vector<ScalingFamily> scaling;
  std::optional<SpectralData> spectral;
  std::string default_strategy = "fourier_sweep";
  std::vector<std::string> warnings;
  std::optional<std::array<int, 4>> eps_tuple;
  /// Closed curve data kept for the Wirtinger bound.
  std::optional<CurveData> curve;
};

CatalogEntry torus_entry(const std::vector<double>& radii, std::size_t p);
CatalogEntry hyperbola_entry(const std::vector<double>& radii, const std::vector<int>& signs);
CatalogEntry plane_entry(AmbientKind kind, std::size_t n, std::size_t p);
CatalogEntry tube_entry(const std::string& space, const std::string& row, TubeMetric metric);
CatalogEntry bundle_entry(const CurveData& curve);

/// Parses a catalog ID. Grammar (keys are strict, unknown keys are rejected):
///   torus:n=<n>,r=<r1>,..,<rn>,p=<p>
///   hyperbola:n=<n>,r=<r1>,..,<rn>,eps=<+|->,..
///   plane:kind=<pk|para>,n=<n>[,p=<p>]
///   tube:<S3|dS3|AdS3|H3>:<row>:<G|Gprime>
///   bundle:curve=circle,R=<R>
///   bundle:curve=const,kappa=<k>,K=<K>[,length=<L>][,a=<a>]
CatalogEntry resolve(const std::string& catalog_id);

/// IDs of every tube row/metric pair in table order.
std::vector<std::string> tube_ids();

/// The correlated Gaussian exp(-1/2 s^T A s) with A = I + kappa w w^T / |w|^2,
/// w_j = eps_j r_j, and kappa chosen so that tr(M_Q A) = -tr(M_Q) < 0.
TestFunction hyperbola_negative_probe(const std::vector<double>& radii, const std::vector<int>& signs);

}  // namespace hstab
