#pragma once

// The Hamiltonian second variation of volume for Lagrangian charts, its
// Hessian form, and the Bochner / Reilly identities relating the two.
//
// For u in C_c^oo(L) and the normal Hamiltonian field J grad u,
//   d2V(u) = int eps((Lap u)^2 - Ric_M(grad u, grad u) - 2 g(nH, h(grad u, grad u)))
//                + g(nH, J grad u)^2 dv,
// with Lap = div grad. The ambients here are flat, so Ric_M = 0. The Hessian
// form replaces (Lap u)^2 by |Hess u|^2 + Ric_L(grad u, grad u).

#include <array>
#include <functional>
#include <span>

#include "hstab/functional.hpp"
#include "hstab/immersion.hpp"
#include "hstab/jet_form.hpp"
#include "hstab/test_function.hpp"

namespace hstab {

/// A (pseudo-)Riemannian metric on a chart. When `ricci` is empty it is
/// computed by finite differences of the Christoffel symbols.
struct MetricField {
  std::size_t n = 0;
  std::function<SmallMat(std::span<const double>)> g;
  std::function<SmallMat(std::span<const double>)> ricci;
  bool constant = false;
  /// Step for finite differences of g (scaled by 1 on every axis).
  double fd_step = 1e-4;

  static MetricField constant_metric(const SmallMat& g);
  static MetricField from_function(std::size_t n, std::function<SmallMat(std::span<const double>)> g,
                                   std::function<SmallMat(std::span<const double>)> ricci = {});
};

/// Metric, Christoffel symbols, Ricci at a point.
struct MetricPoint {
  SmallMat g, g_inv;
  double vol_density = 1.0;
  std::array<SmallMat, kMaxDim> christoffel;  // christoffel[k](i, j) = Gamma^k_ij
  SmallMat ricci;
};

MetricPoint metric_at(const MetricField& m, std::span<const double> s);

/// Christoffel symbols of the second kind by central differences of g.
std::array<SmallMat, kMaxDim> christoffel_fd(const MetricField& m, std::span<const double> s);
/// Ricci tensor by central differences of the Christoffel symbols.
SmallMat ricci_fd(const MetricField& m, std::span<const double> s);

/// The induced metric of a chart, with Ricci from the Gauss equation.
MetricField induced_metric(const LagrangianChart& chart);

/// Ricci of the induced metric by the Gauss equation:
/// Ric_jk = g(h_jk, nH) - eps g^il g^pq C_ijp C_klq.
SmallMat gauss_ricci(const InducedGeometry& geo);

SmallVec gradient(const TestFunction& u, const MetricField& m, std::span<const double> s);
double laplacian(const TestFunction& u, const MetricField& m, std::span<const double> s);
/// Covariant Hessian u_ij - Gamma^k_ij u_k.
SmallMat covariant_hessian(const TestFunction& u, const MetricField& m, std::span<const double> s);

/// Linear jet forms of the basic operators for a metric with the given data.
struct JetOperators {
  std::size_t n = 0;
  std::vector<LinearJetForm> grad;                  // (grad u)^i
  LinearJetForm laplacian{1};                        // Lap u
  std::vector<std::vector<LinearJetForm>> hessian;  // Hess u_ij
};
JetOperators jet_operators(std::size_t n, const SmallMat& g_inv, const std::array<SmallMat, kMaxDim>& christoffel);

/// Which part of the second-variation integrand to build.
enum class VariationTerm { all, laplacian, curvature, mean_curvature };

/// The second-variation functional of a flat-ambient chart. `constant_coefficients`
/// declares that the induced geometry does not depend on the chart point.
Functional main_functional(const LagrangianChart& chart, bool constant_coefficients = false,
                           VariationTerm term = VariationTerm::all);
/// The Hessian form of the same functional.
Functional raw_functional(const LagrangianChart& chart, bool constant_coefficients = false);

/// Pointwise second-variation form at s.
JetForm main_form(const InducedGeometry& geo, VariationTerm term = VariationTerm::all);
JetForm raw_form(const InducedGeometry& geo);

double second_variation(const LagrangianChart& chart, const TestFunction& u, const GridSpec& grid = {});
double second_variation(const Functional& f, const TestFunction& u, const GridSpec& grid = {});
double second_variation_raw(const LagrangianChart& chart, const TestFunction& u, const GridSpec& grid = {});

/// 1/2 Lap |grad u|^2 - Ric(grad u, grad u) - g(grad u, grad Lap u) - |Hess u|^2 at s,
/// by nested central differences (Richardson-extrapolated) of exact first-level
/// quantities.
double bochner_residual(const TestFunction& u, const MetricField& m, std::span<const double> s, double step = 1e-3);

/// The functional u -> int (Lap u)^2 - |Hess u|^2 - Ric(grad u, grad u) dv.
Functional reilly_functional(const MetricField& m, const std::vector<AxisDomain>& domains);
double reilly_residual(const TestFunction& u, const MetricField& m, const std::vector<AxisDomain>& domains,
                       const GridSpec& grid = {});

}  // namespace hstab
