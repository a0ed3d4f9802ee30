#pragma once

// Pointwise quadratic forms in the 2-jet of a scalar function.
//
// Every second-variation integrand handled by this library is, at a fixed
// chart point, a quadratic form in (u, du, d2u). The flattened jet layout is
//   [u, u_1 .. u_n, u_11, u_12, .., u_1n, u_22, .., u_nn]
// (upper triangle of the Hessian, row-major).

#include <Eigen/Dense>
#include <cstddef>

#include "hstab/jet.hpp"

namespace hstab {

inline constexpr std::size_t kMaxJetSize = 1 + kMaxDim + kMaxDim * (kMaxDim + 1) / 2;

using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using JetVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxJetSize, 1>;
using JetForm =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxJetSize, kMaxJetSize>;

constexpr std::size_t jet_size(std::size_t n) { return 1 + n + n * (n + 1) / 2; }

/// Slot of u_ij (either order) in the flattened jet.
constexpr std::size_t hess_slot(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) {
    const std::size_t t = i;
    i = j;
    j = t;
  }
  // rows before i contribute n, n-1, ..., n-i+1 entries
  return 1 + n + i * n - i * (i - 1) / 2 + (j - i);
}

inline JetVec flatten(const Jet& u, std::size_t n) {
  JetVec out = JetVec::Zero(static_cast<Eigen::Index>(jet_size(n)));
  out(0) = u.v;
  for (std::size_t i = 0; i < n; ++i) out(static_cast<Eigen::Index>(1 + i)) = u.d[i];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) out(static_cast<Eigen::Index>(hess_slot(n, i, j))) = u.hess(i, j);
  }
  return out;
}

/// A linear functional of the 2-jet.
class LinearJetForm {
 public:
  explicit LinearJetForm(std::size_t n) : n_(n), c_(JetVec::Zero(static_cast<Eigen::Index>(jet_size(n)))) {}

  LinearJetForm& value(double c) {
    c_(0) += c;
    return *this;
  }
  LinearJetForm& first(std::size_t i, double c) {
    c_(static_cast<Eigen::Index>(1 + i)) += c;
    return *this;
  }
  /// Adds c * u_ij (a single term; u_ij and u_ji share a slot).
  LinearJetForm& second(std::size_t i, std::size_t j, double c) {
    c_(static_cast<Eigen::Index>(hess_slot(n_, i, j))) += c;
    return *this;
  }

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] const JetVec& coeffs() const { return c_; }
  [[nodiscard]] double operator()(const JetVec& j) const { return c_.dot(j); }

 private:
  std::size_t n_;
  JetVec c_;
};

/// Accumulates a symmetric matrix B so that the integrand reads J^T B J.
class FormBuilder {
 public:
  explicit FormBuilder(std::size_t n)
      : n_(n),
        b_(JetForm::Zero(static_cast<Eigen::Index>(jet_size(n)), static_cast<Eigen::Index>(jet_size(n)))) {}

  FormBuilder& add_square(double w, const LinearJetForm& l) {
    b_.noalias() += w * l.coeffs() * l.coeffs().transpose();
    return *this;
  }
  FormBuilder& add_product(double w, const LinearJetForm& a, const LinearJetForm& b) {
    b_.noalias() += 0.5 * w * (a.coeffs() * b.coeffs().transpose() + b.coeffs() * a.coeffs().transpose());
    return *this;
  }
  FormBuilder& add_form(double w, const JetForm& other) {
    b_ += w * other;
    return *this;
  }

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] const JetForm& form() const { return b_; }

 private:
  std::size_t n_;
  JetForm b_;
};

inline double evaluate_form(const JetForm& b, const JetVec& j) { return j.dot(b * j); }

}  // namespace hstab
