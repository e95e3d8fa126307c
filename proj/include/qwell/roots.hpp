#ifndef QWELL_ROOTS_HPP
#define QWELL_ROOTS_HPP

// Bracketing root isolation for continuous real functions on an interval.

#include <algorithm>
#include <cmath>
#include <vector>

#include "qwell/errors.hpp"

namespace qwell {

struct ScanOptions {
  int grid_points = 2000;
  double tol_x = 1e-10;
  int max_iter = 200;
  int refine = 16;
};

struct Bracket {
  double lo = 0;
  double hi = 0;
  double f_lo = 0;
  double f_hi = 0;
};

struct Root {
  double x = 0;
  Bracket bracket;
};

namespace detail {

inline bool opposite(double a, double b) { return (a < 0 && b > 0) || (a > 0 && b < 0); }

}  // namespace detail

/// Uniform scan of [lo, hi] for sign changes and exact zeros. Runs of two or
/// more adjacent sign-change cells, together with their neighbouring cells,
/// are rescanned at `refine` times the resolution before bracketing.
template <class F>
std::vector<Bracket> scan_brackets(F&& f, double lo, double hi, int grid_points, int refine) {
  const int n = std::max(grid_points, 2);
  std::vector<double> xs(n), fs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = (i == n - 1) ? hi : lo + (hi - lo) * i / (n - 1);
    fs[i] = f(xs[i]);
  }

  const int cells = n - 1;
  std::vector<char> change(cells, 0), fine(cells, 0);
  for (int i = 0; i < cells; ++i) change[i] = detail::opposite(fs[i], fs[i + 1]);
  for (int i = 0; i + 1 < cells; ++i) {
    if (change[i] && change[i + 1]) {
      for (int j = std::max(0, i - 1); j <= std::min(cells - 1, i + 2); ++j) fine[j] = 1;
    }
  }

  std::vector<Bracket> out;
  for (int i = 0; i < n; ++i)
    if (fs[i] == 0.0) out.push_back({xs[i], xs[i], 0.0, 0.0});
  for (int i = 0; i < cells; ++i) {
    if (!fine[i] || refine <= 1) {
      if (change[i]) out.push_back({xs[i], xs[i + 1], fs[i], fs[i + 1]});
      continue;
    }
    std::vector<double> sx(refine + 1), sf(refine + 1);
    for (int j = 0; j <= refine; ++j) {
      sx[j] = (j == refine) ? xs[i + 1] : xs[i] + (xs[i + 1] - xs[i]) * j / refine;
      sf[j] = (j == 0) ? fs[i] : (j == refine ? fs[i + 1] : f(sx[j]));
    }
    for (int j = 0; j < refine; ++j) {
      if (j > 0 && sf[j] == 0.0) out.push_back({sx[j], sx[j], 0.0, 0.0});
      if (detail::opposite(sf[j], sf[j + 1])) out.push_back({sx[j], sx[j + 1], sf[j], sf[j + 1]});
    }
  }
  std::sort(out.begin(), out.end(), [](const Bracket& a, const Bracket& b) { return a.lo < b.lo; });
  return out;
}

/// Bisects a sign-change bracket down to width tol_x, then places the root by
/// one linear interpolation inside the final bracket. Throws ConvergenceError
/// if that takes more than max_iter halvings.
template <class F>
Root bisect(F&& f, Bracket b, double tol_x, int max_iter) {
  if (b.lo == b.hi) return {b.lo, b};
  double lo = b.lo, hi = b.hi, f_lo = b.f_lo, f_hi = b.f_hi;
  int iter = 0;
  while (hi - lo > tol_x) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket is down to adjacent doubles
    if (++iter > max_iter) throw ConvergenceError("bisection did not reach tolerance within max_iter");
    const double f_mid = f(mid);
    if (f_mid == 0.0) return {mid, {lo, hi, f_lo, f_hi}};
    if (detail::opposite(f_lo, f_mid)) {
      hi = mid;
      f_hi = f_mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  double x = lo - f_lo * (hi - lo) / (f_hi - f_lo);
  if (!(x >= lo && x <= hi)) x = 0.5 * (lo + hi);
  return {x, {lo, hi, f_lo, f_hi}};
}

/// All simple roots of f on [lo, hi] resolvable by the scan, sorted.
template <class F>
std::vector<Root> find_roots(F&& f, double lo, double hi, const ScanOptions& opt) {
  std::vector<Root> roots;
  for (const auto& b : scan_brackets(f, lo, hi, opt.grid_points, opt.refine)) {
    Root r = bisect(f, b, opt.tol_x, opt.max_iter);
    if (!roots.empty() && std::abs(r.x - roots.back().x) <= opt.tol_x) continue;
    roots.push_back(r);
  }
  return roots;
}

}  // namespace qwell

#endif  // QWELL_ROOTS_HPP
