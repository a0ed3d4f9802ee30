#pragma once

// Tensor-product quadrature over chart domains with a deterministic,
// thread-count independent reduction order.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hstab/immersion.hpp"
#include "hstab/jet_form.hpp"

namespace hstab {

class SupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  std::size_t circle_nodes = 64;
  std::size_t line_nodes = 96;
  /// Per line-axis truncation half-width; empty (or 0 entries) means "use the
  /// test functions' own half-widths".
  std::vector<double> line_box;
  /// Upper bound on the total node count; line axes are thinned to respect it.
  std::size_t max_total_nodes = std::size_t{1} << 19;
  /// Threshold factor for leakage at line-box faces.
  double support_tolerance = 1e-10;
};

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
Rule1D gauss_legendre(std::size_t n);
/// Equispaced trapezoid rule over one period [0, length).
Rule1D periodic_trapezoid(std::size_t n, double length);

struct TensorGrid {
  std::vector<Rule1D> axes;
  std::vector<double> box;  // half-width per axis (0 on circles)

  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] std::size_t dim() const { return axes.size(); }
  /// Node and weight of the multi-index encoded as `flat` (axis 0 slowest).
  double node(std::size_t flat, std::span<double> s) const;
};

/// Builds the grid for the given domains. `halfwidth` gives per-axis boxes used
/// when the grid spec does not override them; a missing or zero value falls back to
/// the domain's own truncation.
TensorGrid make_grid(const std::vector<AxisDomain>& domains, const GridSpec& spec,
                     const std::vector<double>& halfwidth = {});

void set_thread_count(std::size_t n);
/// Worker threads used by the reductions (HSTAB_THREADS overrides the default).
std::size_t thread_count();

inline constexpr std::size_t kBlockSize = 2048;

/// Runs body(b) for every block index b in [0, blocks) on the worker threads.
void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& body);

/// Accumulates block(begin, end) over fixed node blocks and combines the
/// partial results pairwise, so the result does not depend on the thread count.
template <class T>
T reduce_blocks(std::size_t count, const std::function<T(std::size_t, std::size_t)>& block, const T& zero) {
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
  if (blocks == 0) return zero;
  std::vector<T> partial(blocks, zero);
  parallel_blocks(blocks, [&](std::size_t b) {
    const std::size_t begin = b * kBlockSize;
    const std::size_t end = begin + kBlockSize < count ? begin + kBlockSize : count;
    partial[b] = block(begin, end);
  });
  for (std::size_t stride = 1; stride < blocks; stride *= 2) {
    for (std::size_t i = 0; i + stride < blocks; i += 2 * stride) partial[i] = partial[i] + partial[i + stride];
  }
  return partial[0];
}

double integrate(const std::function<double(std::span<const double>)>& field, const std::vector<AxisDomain>& domains,
                 const GridSpec& spec, const std::vector<double>& halfwidth = {});

/// Max over the faces s_i = +-box of every line axis of |field|, sampled on the
/// tensor grid restricted to the face.
double face_maximum(const std::function<double(std::span<const double>)>& field, const TensorGrid& grid,
                    const std::vector<AxisDomain>& domains);

/// Throws SupportError when a circle-axis function is not periodic or a
/// line-axis function leaks through its box.
void check_support(const std::function<double(std::span<const double>)>& magnitude, const TensorGrid& grid,
                   const std::vector<AxisDomain>& domains, double tolerance);

}  // namespace hstab
