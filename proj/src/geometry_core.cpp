#include "hstab/geometry_core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hstab {

namespace {

void require_pm_one(int v, const char* what) {
  if (v != 1 && v != -1) {
    throw std::invalid_argument(std::string(what) + " must be +1 or -1");
  }
}

std::vector<int> complex_axis_signs(std::size_t n, std::size_t p) {
  std::vector<int> s(n, 1);
  for (std::size_t j = 0; j < p; ++j) s[j] = -1;
  return s;
}

}  // namespace

Signature::Signature(std::vector<int> signs, int para_flag)
    : signs_(std::move(signs)), para_flag_(para_flag) {
  for (int s : signs_) require_pm_one(s, "signature entry");
  require_pm_one(para_flag_, "para flag");
}

ParaComplex pc_mul(ParaComplex z, ParaComplex w) {
  return {z.x * w.x + z.y * w.y, z.x * w.y + z.y * w.x};
}

ParaComplex pc_add(ParaComplex z, ParaComplex w) { return {z.x + w.x, z.y + w.y}; }

ParaComplex pc_conj(ParaComplex z) { return {z.x, -z.y}; }

ParaComplex pc_norm2(ParaComplex z) { return pc_mul(z, pc_conj(z)); }

ParaComplex pc_exp_tau(double t, int eps) {
  require_pm_one(eps, "eps");
  if (eps == 1) return {std::cosh(t), std::sinh(t)};
  return {std::sinh(t), std::cosh(t)};
}

double inner(const Signature& sig, std::span<const double> x, std::span<const double> y) {
  if (x.size() != sig.size() || y.size() != sig.size()) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) acc += sig.sign(j) * x[j] * y[j];
  return acc;
}

AmbientFlat::AmbientFlat(AmbientKind kind, std::size_t n, std::size_t p)
    : kind_(kind),
      n_(n),
      p_(p),
      signature_(kind == AmbientKind::pseudo_kahler ? complex_axis_signs(n, p)
                                                    : std::vector<int>(n, 1),
                 kind == AmbientKind::pseudo_kahler ? 1 : -1),
      real_signature_(std::vector<int>(2 * n, 1), kind == AmbientKind::pseudo_kahler ? 1 : -1) {
  std::vector<int> real(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    if (kind == AmbientKind::pseudo_kahler) {
      real[2 * j] = real[2 * j + 1] = signature_.sign(j);
    } else {
      real[2 * j] = 1;
      real[2 * j + 1] = -1;
    }
  }
  real_signature_ = Signature(std::move(real), signature_.para_flag());
}

AmbientFlat AmbientFlat::pseudo_kahler(std::size_t n, std::size_t p) {
  if (n == 0) throw std::invalid_argument("ambient dimension must be positive");
  if (p > n) throw std::invalid_argument("pseudo_kahler: p out of range");
  return {AmbientKind::pseudo_kahler, n, p};
}

AmbientFlat AmbientFlat::para_kahler(std::size_t n) {
  if (n == 0) throw std::invalid_argument("ambient dimension must be positive");
  return {AmbientKind::para_kahler, n, 0};
}

double AmbientFlat::metric(std::span<const double> x, std::span<const double> y) const {
  return inner(real_signature_, x, y);
}

void AmbientFlat::apply_j(std::span<const double> x, std::span<double> out) const {
  if (x.size() != 2 * n_ || out.size() != 2 * n_) {
    throw std::invalid_argument("apply_j: dimension mismatch");
  }
  for (std::size_t j = 0; j < n_; ++j) {
    const double a = x[2 * j];
    const double b = x[2 * j + 1];
    if (kind_ == AmbientKind::pseudo_kahler) {
      // i (a + i b) = -b + i a
      out[2 * j] = -b;
      out[2 * j + 1] = a;
    } else {
      // tau (a + tau b) = b + tau a
      out[2 * j] = b;
      out[2 * j + 1] = a;
    }
  }
}

std::vector<double> AmbientFlat::apply_j(std::span<const double> x) const {
  std::vector<double> out(x.size());
  apply_j(x, out);
  return out;
}

std::string AmbientFlat::describe() const {
  std::ostringstream os;
  if (kind_ == AmbientKind::pseudo_kahler) {
    os << "C^" << n_ << "_" << p_;
  } else {
    os << "D^" << n_;
  }
  return os.str();
}

double symplectic_form(const AmbientFlat& amb, std::span<const double> x, std::span<const double> y) {
  if (x.size() != 2 * amb.n() || y.size() != 2 * amb.n()) {
    throw std::invalid_argument("symplectic_form: dimension mismatch");
  }
  const std::vector<double> jx = amb.apply_j(x);
  return amb.eps() * amb.metric(jx, y);
}

}  // namespace hstab
