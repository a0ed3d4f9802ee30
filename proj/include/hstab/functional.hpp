#pragma once

// Quadratic functionals of the form  u -> integral of J(u)^T B(s) J(u) ds,
// where J(u) is the flattened 2-jet and B already contains the volume density.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hstab/immersion.hpp"
#include "hstab/jet_form.hpp"
#include "hstab/quadrature.hpp"
#include "hstab/test_function.hpp"

namespace hstab {

using FormField = std::function<JetForm(std::span<const double>)>;

struct Functional {
  std::string id;
  std::vector<AxisDomain> domains;
  FormField form;
  /// B does not depend on s; quadrature then evaluates it once.
  bool constant_form = false;

  [[nodiscard]] std::size_t dim() const { return domains.size(); }
};

/// One square l(J)^2 of a sum-of-squares certificate, with a weight that may
/// vary over the chart.
struct SosTerm {
  std::function<double(std::span<const double>)> weight;
  LinearJetForm form;
};

/// Claims B(s) = sign * sum_t weight_t(s) l_t l_t^T with weight_t >= 0.
struct SosCertificate {
  std::string id;
  int sign = 1;
  std::vector<SosTerm> terms;
  /// Why the vanishing of every square forces a trivial variation (u constant
  /// on compact charts, u = 0 with compact support on lines).
  std::string kernel_reason;
};

/// delta^2 V(u): integral of the pointwise form over the grid.
double evaluate(const Functional& f, const TestFunction& u, const GridSpec& grid);

/// Bilinear polarization integral of J(u)^T B J(v).
double evaluate_bilinear(const Functional& f, const TestFunction& u, const TestFunction& v, const GridSpec& grid);

/// Max over the sample points of max |B(s) - B_cert(s)| and the smallest weight
/// encountered (a valid certificate needs residual ~ 0 and min weight >= 0).
struct CertificateCheck {
  double residual = 0.0;
  double min_weight = 0.0;
};
CertificateCheck check_certificate(const Functional& f, const SosCertificate& cert,
                                   const std::vector<std::vector<double>>& points);

/// The integral of the certificate's sum of squares on u.
double evaluate_certificate(const Functional& f, const SosCertificate& cert, const TestFunction& u,
                            const GridSpec& grid);

/// Quadratic form matrix Q_ab = integral J(u_a)^T B J(u_b) on a common grid.
Eigen::MatrixXd assemble_form(const Functional& f, const std::vector<TestFunction>& basis, const GridSpec& grid);

/// H^2-type Gram matrix: integral of u_a u_b + du_a.du_b + d2u_a:d2u_b.
Eigen::MatrixXd assemble_gram(std::size_t n, const std::vector<AxisDomain>& domains,
                              const std::vector<TestFunction>& basis, const GridSpec& grid);

/// The pointwise H^2 weight form (identity on the flattened jet, with doubled
/// weight on off-diagonal Hessian slots).
JetForm h2_form(std::size_t n);

}  // namespace hstab
