#ifndef QWELL_ORACLE_HPP
#define QWELL_ORACLE_HPP

// Brute-force reference eigensolver. The Hamiltonian -d2/dx2 + V(x) is
// discretized with the 3-point Laplacian on [-pad, d + pad] with Dirichlet
// ends, and the lowest eigenvalues of the resulting symmetric tridiagonal
// matrix are located by Sturm-sequence bisection. Shares nothing with the
// transfer-matrix path except the WellSpec.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "qwell/errors.hpp"
#include "qwell/potential.hpp"

namespace qwell {

struct GridConfig {
  /// Exterior padding on each side; defaults to 8 decay lengths at mid-window.
  /// Must be 0 (or unset) for infinite walls.
  std::optional<double> pad;
  int n = 20000;
  int n_levels = 10;
};

/// Symmetric tridiagonal matrix with a constant off-diagonal.
struct Tridiagonal {
  std::vector<double> diag;
  double off = 0;
  double h = 0;
  double x0 = 0;  ///< coordinate of the first node
};

inline double default_pad(const WellSpec& spec) {
  if (spec.infinite()) return 0.0;
  return 8.0 / std::sqrt(0.5 * spec.wall_min());
}

namespace detail {

inline double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace detail

/// Builds the discretized Hamiltonian. Wall and rect potentials enter as cell
/// averages over [x_i - h/2, x_i + h/2]; a delta adds g/h to its nearest node.
inline Tridiagonal discretize(const WellSpec& spec, int n, double pad) {
  const double length = spec.d + 2.0 * pad;
  Tridiagonal m;
  m.h = length / (n + 1);
  m.x0 = -pad + m.h;
  m.off = -1.0 / (m.h * m.h);
  m.diag.assign(n, 2.0 / (m.h * m.h));

  const double h = m.h;
  for (int i = 0; i < n; ++i) {
    const double c0 = m.x0 + i * h - 0.5 * h, c1 = c0 + h;
    double area = 0;
    if (!spec.infinite()) {
      area += spec.v1 * detail::overlap(c0, c1, -pad - h, 0.0);
      area += spec.v2 * detail::overlap(c0, c1, spec.d, spec.d + pad + h);
    }
    for (const auto& e : spec.elements)
      if (const auto* r = std::get_if<Rect>(&e)) area += r->u * detail::overlap(c0, c1, r->a, r->a + r->w);
    m.diag[i] += area / h;
  }
  for (const auto& e : spec.elements) {
    if (const auto* dl = std::get_if<Delta>(&e)) {
      const long i = std::lround((dl->x - m.x0) / h);
      if (i >= 0 && i < n) m.diag[i] += dl->g / h;
    }
  }
  return m;
}

/// Number of eigenvalues strictly below x (Sturm count of the LDL^T pivots).
inline int sturm_count(const Tridiagonal& m, double x) {
  constexpr double pivmin = 1e-300;
  const double off2 = m.off * m.off;
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < m.diag.size(); ++i) {
    q = m.diag[i] - x - (i == 0 ? 0.0 : off2 / q);
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0) ++count;
  }
  return count;
}

/// j-th eigenvalue (0-based) by bisection on the Sturm count.
inline double sturm_eigenvalue(const Tridiagonal& m, int j) {
  const auto [mn, mx] = std::minmax_element(m.diag.begin(), m.diag.end());
  double lo = *mn - 2.0 * std::abs(m.off), hi = *mx + 2.0 * std::abs(m.off);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(m, mid) > j) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

/// Lowest cfg.n_levels eigenvalues; for finite walls only those below
/// min(v1, v2) are returned.
inline std::vector<double> finite_difference_levels(const WellSpec& well, const GridConfig& cfg = {}) {
  const WellSpec spec = validate(well);
  if (cfg.n < 100) throw GridError("oracle grid needs at least 100 points");
  if (cfg.n_levels < 1 || cfg.n_levels > cfg.n) throw GridError("n_levels must lie in [1, n]");
  const double pad = cfg.pad.value_or(default_pad(spec));
  if (!(pad >= 0) || !std::isfinite(pad)) throw GridError("pad must be non-negative");
  if (spec.infinite() && pad != 0.0) throw GridError("pad must be 0 for infinite walls");

  const Tridiagonal m = discretize(spec, cfg.n, pad);
  int count = cfg.n_levels;
  if (!spec.infinite()) count = std::min(count, sturm_count(m, spec.wall_min()));
  std::vector<double> out;
  out.reserve(count);
  for (int j = 0; j < count; ++j) out.push_back(sturm_eigenvalue(m, j));
  return out;
}

}  // namespace qwell

#endif  // QWELL_ORACLE_HPP
