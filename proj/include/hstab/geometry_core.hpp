#pragma once

// Flat pseudo- and para-Kaehler model spaces C^n_p and D^n.
//
// Points and tangent vectors of both ambient kinds use one real layout of
// length 2n, interleaved as (x_1, y_1, x_2, y_2, ...). The ambient kind only
// changes the metric signs and the action of J on each (x_j, y_j) pair.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hstab {

/// Per-axis metric signs eps_j together with the structure flag eps
/// (+1 for complex structures, -1 for para-complex ones, so that J^2 = -eps Id).
class Signature {
 public:
  Signature(std::vector<int> signs, int para_flag);

  [[nodiscard]] std::size_t size() const { return signs_.size(); }
  [[nodiscard]] const std::vector<int>& signs() const { return signs_; }
  [[nodiscard]] int sign(std::size_t j) const { return signs_[j]; }
  [[nodiscard]] int para_flag() const { return para_flag_; }

 private:
  std::vector<int> signs_;
  int para_flag_;
};

/// Split-complex number x + tau y with tau^2 = 1.
struct ParaComplex {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const ParaComplex&, const ParaComplex&) = default;
};

ParaComplex pc_mul(ParaComplex z, ParaComplex w);
ParaComplex pc_add(ParaComplex z, ParaComplex w);
ParaComplex pc_conj(ParaComplex z);
/// z * conj(z); the real part is x^2 - y^2 and the imaginary part vanishes.
ParaComplex pc_norm2(ParaComplex z);

/// cosh t + tau sinh t for eps = +1, sinh t + tau cosh t for eps = -1.
/// Satisfies d/dt = tau * value and |value|^2 = eps.
ParaComplex pc_exp_tau(double t, int eps);

/// Sum_j signs[j] x_j y_j.
double inner(const Signature& sig, std::span<const double> x, std::span<const double> y);

enum class AmbientKind { pseudo_kahler, para_kahler };

/// C^n with Hermitian signs (-1 x p, +1 x (n-p)), or D^n with its canonical
/// neutral para-Kaehler structure.
class AmbientFlat {
 public:
  static AmbientFlat pseudo_kahler(std::size_t n, std::size_t p);
  static AmbientFlat para_kahler(std::size_t n);

  [[nodiscard]] AmbientKind kind() const { return kind_; }
  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] std::size_t p() const { return p_; }
  /// The eps of J^2 = -eps Id: +1 pseudo-Kaehler, -1 para-Kaehler.
  [[nodiscard]] int eps() const { return kind_ == AmbientKind::pseudo_kahler ? 1 : -1; }
  /// Signature of the complex (resp. para-complex) axes.
  [[nodiscard]] const Signature& signature() const { return signature_; }
  /// Signature of the underlying real 2n-dimensional metric.
  [[nodiscard]] const Signature& real_signature() const { return real_signature_; }

  [[nodiscard]] double metric(std::span<const double> x, std::span<const double> y) const;
  /// Writes J x into out (both of length 2n).
  void apply_j(std::span<const double> x, std::span<double> out) const;
  [[nodiscard]] std::vector<double> apply_j(std::span<const double> x) const;

  [[nodiscard]] std::string describe() const;

 private:
  AmbientFlat(AmbientKind kind, std::size_t n, std::size_t p);

  AmbientKind kind_;
  std::size_t n_;
  std::size_t p_;
  Signature signature_;
  Signature real_signature_;
};

/// omega(X, Y) = eps g(JX, Y).
double symplectic_form(const AmbientFlat& amb, std::span<const double> x, std::span<const double> y);

}  // namespace hstab
