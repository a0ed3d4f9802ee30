#pragma once

// Parametrized Lagrangian immersions into the flat ambients of geometry_core.
//
// The extrinsic geometry is stored as the cubic form
//   C_ijk = g(f_ij, J f_k),
// which is fully symmetric for Lagrangian immersions. The mean curvature is
// kept as the covector g(nH, J f_k) = g^ij C_ijk.

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hstab/geometry_core.hpp"
#include "hstab/jet.hpp"
#include "hstab/jet_form.hpp"

namespace hstab {

class DegenerateMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A chart axis: a circle of given circumference or a line whose test
/// functions are supported inside [-truncation, truncation].
struct AxisDomain {
  enum class Kind { circle, line };
  Kind kind = Kind::line;
  double length = 1.0;  // circumference for circles, truncation half-width for lines

  static AxisDomain circle(double circumference);
  static AxisDomain line(double truncation);
  [[nodiscard]] bool is_circle() const { return kind == Kind::circle; }
  /// Natural length scale of the axis (radius for circles, 1 for lines).
  [[nodiscard]] double scale() const;
};

inline constexpr std::size_t kMaxAmbient = 2 * kMaxDim;

/// f, its first partials and second partials at a chart point, in the
/// interleaved ambient coordinates.
struct ImmersionJet {
  std::size_t n = 0;
  std::array<double, kMaxAmbient> f{};
  std::array<std::array<double, kMaxAmbient>, kMaxDim> first{};
  std::array<std::array<std::array<double, kMaxAmbient>, kMaxDim>, kMaxDim> second{};
};

using ImmersionOracle = std::function<ImmersionJet(std::span<const double>)>;
/// An immersion written once over jets; derivatives come from forward AD.
using JetImmersion = std::function<std::vector<Jet>(std::span<const Jet>)>;

enum class OracleKind { closed_form, dual_number };

ImmersionOracle make_dual_oracle(std::size_t n, JetImmersion map);

class LagrangianChart {
 public:
  LagrangianChart(std::string id, AmbientFlat ambient, std::vector<AxisDomain> domains, ImmersionOracle oracle,
                  OracleKind kind, bool flat_induced_metric);

  [[nodiscard]] const std::string& id() const { return id_; }
  [[nodiscard]] const AmbientFlat& ambient() const { return ambient_; }
  [[nodiscard]] const std::vector<AxisDomain>& domains() const { return domains_; }
  [[nodiscard]] std::size_t dim() const { return domains_.size(); }
  [[nodiscard]] OracleKind oracle_kind() const { return kind_; }
  /// True when the induced metric is known to be flat (catalog tori, products
  /// of hyperbolas, planes); the second-variation integrand then has no Ricci term.
  [[nodiscard]] bool flat_induced_metric() const { return flat_; }
  [[nodiscard]] ImmersionJet evaluate(std::span<const double> s) const { return oracle_(s); }

 private:
  std::string id_;
  AmbientFlat ambient_;
  std::vector<AxisDomain> domains_;
  ImmersionOracle oracle_;
  OracleKind kind_;
  bool flat_;
};

struct InducedGeometry {
  std::size_t n = 0;
  int eps = 1;
  SmallVec point;
  SmallMat g;
  SmallMat g_inv;
  double vol_density = 0.0;
  std::array<double, kMaxDim * kMaxDim * kMaxDim> cubic{};
  /// g(nH, J f_k).
  SmallVec mean_curvature;
  /// Christoffel symbols of the second kind, christoffel[k](i, j) = Gamma^k_ij.
  std::array<SmallMat, kMaxDim> christoffel;

  [[nodiscard]] double C(std::size_t i, std::size_t j, std::size_t k) const {
    return cubic[(i * kMaxDim + j) * kMaxDim + k];
  }
  /// Coefficients a^k of nH = sum_k a^k J f_k.
  [[nodiscard]] SmallVec normal_coefficients() const;
  /// The symmetric matrix g(h(d_i, d_j), nH).
  [[nodiscard]] SmallMat h_dot_mean_curvature() const;
};

/// Threshold factor for |det g| < tol * scale^n.
inline constexpr double kDegenerateTolerance = 1e-10;

InducedGeometry induced_geometry(const LagrangianChart& chart, std::span<const double> s);

/// Tensor grid with `per_axis` points per axis: circles sampled over one
/// period, lines over [-length, length] (endpoints included).
std::vector<std::vector<double>> sample_grid(const std::vector<AxisDomain>& domains, std::size_t per_axis);

/// Max |omega(f_i, f_j)| over grid and index pairs.
double check_lagrangian(const LagrangianChart& chart, const std::vector<std::vector<double>>& grid);

/// Max |div(n J H)| over the grid, with the divergence taken by central
/// differences of sqrt|g| (nJH)^l.
double check_h_minimal(const LagrangianChart& chart, const std::vector<std::vector<double>>& grid);

/// Max over the grid of |C_ijk - C_sigma(ijk)|.
double trisymmetry_residual(const LagrangianChart& chart, const std::vector<std::vector<double>>& grid);

}  // namespace hstab
