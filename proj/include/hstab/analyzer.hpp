#pragma once

// Definiteness analysis of second-variation functionals: closed forms, witness
// searches, scaling probes, sum-of-squares certificates and the spectral
// criterion on flat tori.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hstab/catalog.hpp"
#include "hstab/functional.hpp"
#include "hstab/quadrature.hpp"

namespace hstab {

/// Closed-form d2V of cos(sum_j k_j s_j / r_j) on the torus T^n_r in C^n_p.
double torus_mode_value(const std::vector<double>& radii, std::size_t p, const std::vector<int>& k);

enum class Strategy { automatic, fourier_sweep, scaling_probe, sos_certificate, spectral_criterion };

Strategy parse_strategy(const std::string& name);
std::string to_string(Strategy s);

struct Witness {
  std::string probe_id;
  double value = 0.0;
  double norm2 = 0.0;  // int u^2 + |du|^2 + |d2u|^2
};

struct EvidenceRecord {
  std::string group;
  std::size_t basis_size = 0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

struct Tolerances {
  double witness_relative = 1e-8;   // |value| > tol * norm^2
  double certificate_residual = 1e-10;
};

struct StabilityVerdict {
  std::string catalog_id;
  VerdictLabel label = VerdictLabel::inconclusive;
  std::string strategy;
  std::optional<Witness> witness_pos;
  std::optional<Witness> witness_neg;
  std::vector<Witness> witnesses;  // every probe evaluated, in library order
  std::vector<EvidenceRecord> evidence;
  std::string certificate;  // id of the certificate backing a definite label
  double certificate_residual = 0.0;
  std::vector<std::string> notes;
  GridSpec grid;
  Tolerances tolerances;
};

nlohmann::json to_json(const StabilityVerdict& v);

/// Probes for the generic witness search on the given domains, in library
/// order: Fourier modes with |k|_1 <= 4 on all-circle domains, Gaussian and
/// Hermite-modulated bumps on lines, and products on mixed domains.
std::vector<TestFunction> witness_library(const std::vector<AxisDomain>& domains);

/// int u^2 + |du|^2 + |d2u|^2 over the domain.
double h2_norm2(const std::vector<AxisDomain>& domains, const TestFunction& u, const GridSpec& grid);

StabilityVerdict classify(const CatalogEntry& entry, Strategy strategy = Strategy::automatic,
                          const GridSpec& grid = {}, const Tolerances& tol = {});

struct ScalingReport {
  std::string family;
  std::vector<double> parameters;
  std::vector<double> values;
  std::vector<std::size_t> sign_changes;  // index i means a change between i and i+1
  [[nodiscard]] bool found_both_signs() const;
};

/// Evaluates the functional on lambda^exponent u(lambda s_axes) across the
/// family's schedule.
ScalingReport scaling_probe(const Functional& f, const ScalingFamily& family, const GridSpec& grid = {});

/// lambda^exponent u(lambda s_axes).
TestFunction scaling_member(const ScalingFamily& family, double lambda);

struct SpectralMode {
  std::vector<int> k;
  double lambda = 0.0;
  double value = 0.0;  // lambda (lambda - c)
};

struct SpectralResult {
  double lambda1 = 0.0;
  bool stable = false;
  std::vector<SpectralMode> modes;
};

/// Eigenvalues sum (k_j / r_j)^2 of -Lap on the flat torus with the given
/// radii, compared with the Einstein constant c; modes with |k_j| <= bound.
SpectralResult spectral_criterion(const std::vector<double>& radii, double c, int bound = 3);

struct HyperbolaMatrixAnalysis {
  Eigen::MatrixXd m_q;
  Eigen::VectorXd eigenvalues;  // ascending
  Eigen::MatrixXd eigenvectors;
  int positive = 0;
  int negative = 0;
  int zero = 0;
  Eigen::VectorXd w;  // w_j = eps_j r_j
  double w_value = 0.0;
  double e1_value = 0.0;
};

/// M_Q = 2 diag(1/r_j^2) - [eps_i eps_j / (r_i r_j)], the matrix of the
/// first-order part Q(du, du) of -d2V on products of hyperbolas.
HyperbolaMatrixAnalysis hyperbola_matrix_analysis(const std::vector<double>& radii, const std::vector<int>& signs);

/// Q(du, du) = sum du_j^2 / r_j^2 - 2 sum_{j<k} eps_j eps_k du_j du_k / (r_j r_k), expanded term by term.
double hyperbola_q(const std::vector<double>& radii, const std::vector<int>& signs, const Eigen::VectorXd& du);

enum class WirtingerBranch { both, wirtinger_only };

struct WirtingerResult {
  double sup_potential = 0.0;  // sup of kappa^2 + 2K along the curve
  std::optional<double> threshold;
  std::string verdict;  // "stable" or "inconclusive"
  std::string branch;   // "nonpositive" or "wirtinger" or "none"
};

/// The sufficient stability conditions for rank-one surfaces over a curve:
/// sup(kappa^2 + 2K) <= 0, or (closed curves) sup(kappa^2 + 2K) <= 16 pi^2 / L^2.
/// The second branch bounds only variations with zero mean along the curve.
WirtingerResult wirtinger_bound(const CurveData& curve, WirtingerBranch branch = WirtingerBranch::both);

}  // namespace hstab
