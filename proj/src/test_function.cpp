#include "hstab/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hstab {

Jet TestFunction::eval(std::span<const double> s) const {
  if (s.size() != n) throw std::invalid_argument("test function: point dimension mismatch");
  const std::vector<Jet> x = seed(s);
  return expr(x);
}

TestFunction from_expression(std::string id, std::size_t n, JetExpression expr, std::vector<double> halfwidth) {
  if (n == 0 || n > kMaxDim) throw std::invalid_argument("test function: unsupported dimension");
  if (halfwidth.empty()) halfwidth.assign(n, 0.0);
  if (halfwidth.size() != n) throw std::invalid_argument("test function: one half-width per axis");
  return {std::move(id), n, std::move(expr), std::move(halfwidth)};
}

Jet gaussian_profile(const Jet& x, double sigma) { return exp(-0.5 * square(x) / (sigma * sigma)); }

Jet hermite_profile(const Jet& x, double sigma, int k) {
  const Jet y = x / sigma;
  Jet prev(x.dim, 1.0);
  Jet cur = y;
  if (k == 0) cur = prev;
  for (int j = 1; j < k; ++j) {
    Jet next = y * cur - static_cast<double>(j) * prev;
    prev = cur;
    cur = next;
  }
  return cur * gaussian_profile(x, sigma);
}

TestFunction correlated_gaussian(std::string id, const Eigen::MatrixXd& a) {
  const auto n = static_cast<std::size_t>(a.rows());
  if (a.cols() != a.rows()) throw std::invalid_argument("correlated_gaussian: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.eigenvalues().minCoeff() <= 0.0) throw std::invalid_argument("correlated_gaussian: A must be positive definite");
  const Eigen::MatrixXd cov = a.inverse();
  std::vector<double> hw(n);
  for (std::size_t i = 0; i < n; ++i) {
    hw[i] = kBoxWidths * std::sqrt(cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
  }
  Eigen::MatrixXd coeff = a;
  return from_expression(
      std::move(id), n,
      [coeff, n](std::span<const Jet> s) {
        Jet q(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            const double c = coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (c != 0.0) q = q + c * (s[i] * s[j]);
          }
        }
        return exp(-0.5 * q);
      },
      std::move(hw));
}

TestFunction gaussian_product(std::string id, std::vector<double> sigmas) {
  const std::size_t n = sigmas.size();
  std::vector<double> hw(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) hw[i] = kBoxWidths * sigmas[i];
  return from_expression(
      std::move(id), n,
      [sigmas = std::move(sigmas), n](std::span<const Jet> s) {
        Jet out(n, 1.0);
        for (std::size_t i = 0; i < n; ++i) {
          if (sigmas[i] > 0.0) out = out * gaussian_profile(s[i], sigmas[i]);
        }
        return out;
      },
      std::move(hw));
}

TestFunction fourier_mode(std::string id, std::vector<int> k, std::vector<double> rho) {
  if (k.size() != rho.size()) throw std::invalid_argument("fourier_mode: k and radii differ in length");
  const std::size_t n = k.size();
  return from_expression(
      std::move(id), n,
      [k = std::move(k), rho = std::move(rho), n](std::span<const Jet> s) {
        Jet phase(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
          if (k[j] != 0) phase = phase + (static_cast<double>(k[j]) / rho[j]) * s[j];
        }
        return cos(phase);
      },
      std::vector<double>(n, 0.0));
}

namespace {

void require_same_dim(const TestFunction& a, const TestFunction& b) {
  if (a.n != b.n) throw std::invalid_argument("test function combinator: dimension mismatch");
}

std::vector<double> max_width(const TestFunction& a, const TestFunction& b) {
  std::vector<double> hw(a.n);
  for (std::size_t i = 0; i < a.n; ++i) hw[i] = std::max(a.halfwidth[i], b.halfwidth[i]);
  return hw;
}

}  // namespace

TestFunction product(const TestFunction& a, const TestFunction& b) {
  require_same_dim(a, b);
  // a product vanishes where either factor does
  std::vector<double> hw(a.n);
  for (std::size_t i = 0; i < a.n; ++i) {
    const double x = a.halfwidth[i], y = b.halfwidth[i];
    hw[i] = (x > 0.0 && y > 0.0) ? std::min(x, y) : std::max(x, y);
  }
  return from_expression(a.id + "*" + b.id, a.n,
                         [ea = a.expr, eb = b.expr](std::span<const Jet> s) { return ea(s) * eb(s); }, hw);
}

TestFunction sum(const TestFunction& a, const TestFunction& b) {
  require_same_dim(a, b);
  return from_expression("(" + a.id + ")+(" + b.id + ")", a.n,
                         [ea = a.expr, eb = b.expr](std::span<const Jet> s) { return ea(s) + eb(s); },
                         max_width(a, b));
}

TestFunction difference(const TestFunction& a, const TestFunction& b) {
  require_same_dim(a, b);
  return from_expression("(" + a.id + ")-(" + b.id + ")", a.n,
                         [ea = a.expr, eb = b.expr](std::span<const Jet> s) { return ea(s) - eb(s); },
                         max_width(a, b));
}

TestFunction scaled(const TestFunction& a, double c) {
  return from_expression(a.id, a.n, [ea = a.expr, c](std::span<const Jet> s) { return c * ea(s); }, a.halfwidth);
}

TestFunction rescaled(const TestFunction& a, double c, double t, const std::vector<std::size_t>& axes) {
  if (!(t > 0.0)) throw std::invalid_argument("rescaled: scale must be positive");
  std::vector<bool> mask(a.n, false);
  std::vector<double> hw = a.halfwidth;
  for (std::size_t i : axes) {
    if (i >= a.n) throw std::invalid_argument("rescaled: axis out of range");
    mask[i] = true;
    hw[i] /= t;
  }
  return from_expression(
      a.id, a.n,
      [ea = a.expr, c, t, mask](std::span<const Jet> s) {
        std::vector<Jet> y(s.begin(), s.end());
        for (std::size_t i = 0; i < y.size(); ++i) {
          if (mask[i]) y[i] = t * y[i];
        }
        return c * ea(y);
      },
      std::move(hw));
}

TestFunction isotropic_scaling(const TestFunction& a, double t) {
  std::vector<std::size_t> axes(a.n);
  for (std::size_t i = 0; i < a.n; ++i) axes[i] = i;
  const double c = std::pow(t, 0.5 * static_cast<double>(a.n) - 1.0);
  return rescaled(a, c, t, axes);
}

TestFunction random_trig_polynomial(std::string id, const std::vector<double>& rho, int degree, unsigned seed) {
  const std::size_t n = rho.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  struct Term {
    std::vector<int> k;
    double c, d;
  };
  std::vector<Term> terms;
  std::vector<int> k(n, -degree);
  while (true) {
    int total = 0;
    for (int v : k) total += std::abs(v);
    if (total <= degree) terms.push_back({k, coef(rng), coef(rng)});
    std::size_t i = 0;
    while (i < n && ++k[i] > degree) k[i++] = -degree;
    if (i == n) break;
  }
  return from_expression(
      std::move(id), n,
      [terms, rho, n](std::span<const Jet> s) {
        Jet out(n, 0.0);
        for (const Term& t : terms) {
          Jet phase(n, 0.0);
          for (std::size_t j = 0; j < n; ++j) {
            if (t.k[j] != 0) phase = phase + (static_cast<double>(t.k[j]) / rho[j]) * s[j];
          }
          out = out + t.c * cos(phase) + t.d * sin(phase);
        }
        return out;
      },
      std::vector<double>(n, 0.0));
}

TestFunction random_poly_bump(std::string id, std::size_t n, int degree, double sigma, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> shift(-0.5, 0.5);
  std::vector<double> center(n);
  for (double& c : center) c = shift(rng) * sigma;
  struct Term {
    std::vector<int> e;
    double c;
  };
  std::vector<Term> terms;
  std::vector<int> e(n, 0);
  while (true) {
    int total = 0;
    for (int v : e) total += v;
    if (total <= degree) terms.push_back({e, coef(rng)});
    std::size_t i = 0;
    while (i < n && ++e[i] > degree) e[i++] = 0;
    if (i == n) break;
  }
  // the polynomial factor widens the effective support slightly
  std::vector<double> hw(n, kBoxWidths * sigma + 1.0 * sigma);
  return from_expression(
      std::move(id), n,
      [terms, center, sigma, n](std::span<const Jet> s) {
        std::vector<Jet> x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = (s[j] - center[j]) / sigma;
        Jet poly(n, 0.0);
        for (const Term& t : terms) {
          Jet mono(n, t.c);
          for (std::size_t j = 0; j < n; ++j) {
            for (int p = 0; p < t.e[j]; ++p) mono = mono * x[j];
          }
          poly = poly + mono;
        }
        Jet r2(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) r2 = r2 + square(x[j]);
        return poly * exp(-0.5 * r2);
      },
      std::move(hw));
}

}  // namespace hstab
