#ifndef QWELL_SELFCHECK_HPP
#define QWELL_SELFCHECK_HPP

// Built-in invariant suite run by `qwell validate`.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qwell/oracle.hpp"
#include "qwell/potential.hpp"
#include "qwell/roots.hpp"
#include "qwell/scattering.hpp"
#include "qwell/spectrum.hpp"

namespace qwell {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace selfcheck {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

/// Max |x_i - y_i| over paired lists; infinity if the sizes differ.
inline double max_gap(const std::vector<double>& x, const std::vector<double>& y, bool relative = false) {
  if (x.size() != y.size() || x.empty()) return std::numeric_limits<double>::infinity();
  double gap = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double g = std::abs(x[i] - y[i]);
    gap = std::max(gap, relative ? g / std::abs(y[i]) : g);
  }
  return gap;
}

inline double flux_tolerance(const TransferCoefficients& tc, double tol) {
  return tol * std::max(1.0, std::norm(tc.alpha) + std::norm(tc.beta));
}

inline CheckResult flux() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ku(0.05, 5.0), uu(-10.0, 10.0), wu(0.01, 1.0), xu(-3.0, 3.0);
  double worst = 0;
  for (int i = 0; i < 2000; ++i) {
    const double k = ku(rng);
    TransferCoefficients total = identity_coefficients(k);
    for (int j = 0; j < 3; ++j) {
      const auto piece = (j % 2 == 0) ? rect_coefficients(uu(rng), wu(rng), k) : delta_coefficients(uu(rng), k);
      total = compose(shift(piece, xu(rng)), total);
      worst = std::max(worst, std::abs(total.flux_defect()) / flux_tolerance(total, 1.0));
    }
  }
  return {"flux", worst <= 1e-12, "max scaled | |a|^2 - |b|^2 - 1 | = " + sci(worst)};
}

inline CheckResult chebyshev() {
  double worst = 0;
  for (double u : {-3.0, 2.0, 8.0})
    for (double k : {0.5, 1.3, 2.9})
      for (int n = 1; n <= 8; ++n) {
        const double l = 0.4, a = 1.1, x1 = 0.7;
        const auto closed = periodic_rect_chain(u, l, a, x1, n, k).as_transfer(k);
        TransferCoefficients chain = identity_coefficients(k);
        for (int j = 0; j < n; ++j) chain = compose(shift(rect_coefficients(u, l, k), x1 + j * a), chain);
        const double scale = std::abs(chain.alpha) + std::abs(chain.beta);
        worst = std::max(worst, (std::abs(closed.alpha - chain.alpha) + std::abs(closed.beta - chain.beta)) / scale);
      }
  return {"chebyshev", worst <= 1e-10, "max relative gap closed form vs product = " + sci(worst)};
}

inline CheckResult reduction(const SolverConfig& cfg) {
  const WellSpec well{25.0, 25.0, 1.0, {}};
  const auto found = find_bound_states(well, cfg).energies;
  const auto closed = plane_bottom_levels(25.0, 1.0);
  const double gap = max_gap(found, closed);
  return {"reduction", gap <= 1e-8,
          std::to_string(found.size()) + " vs " + std::to_string(closed.size()) + " levels, max gap " + sci(gap)};
}

inline CheckResult infinite(const SolverConfig& base) {
  SolverConfig cfg = base;
  cfg.e_max = 300.0;
  const WellSpec well{infinite_wall, infinite_wall, 1.0, {}};
  const auto found = find_bound_states(well, cfg).energies;
  const double gap = max_gap(found, plane_bottom_infinite_levels(1.0, 5), true);
  return {"infinite", gap <= 1e-9, "max relative gap to (n pi)^2 = " + sci(gap)};
}

inline CheckResult pole(const SolverConfig& cfg) {
  const std::vector<WellSpec> wells = {
      {7.0, 4.0, 3.0, {Rect{0.5, 0.7, 2.0}, Rect{1.5, 1.0, -1.0}}},
      {12.0, 12.0, 2.0, {Delta{0.6, 3.0}, Rect{1.1, 0.4, 5.0}}},
      {30.0, 9.0, 1.5, {Delta{0.9, -2.0}}},
  };
  double worst = 0;
  bool counts_ok = true;
  for (const auto& w : wells) {
    const auto found = find_bound_states(w, cfg).energies;
    auto im = [&w](double e) { return transmission_pole_residual(w, e).imag(); };
    const auto [lo, hi] = search_window(w, cfg);
    std::vector<double> poles;
    for (const auto& r : find_roots(im, lo, hi, {cfg.grid_points, cfg.tol_e, cfg.max_iter, 16}))
      if (pole_relative_residual(w, r.x) < cfg.tol_res) poles.push_back(r.x);
    counts_ok = counts_ok && found.size() == poles.size();
    worst = std::max(worst, max_gap(found, poles));
  }
  return {"pole", counts_ok && worst <= 1e-8, "max gap between pole and residual zeros = " + sci(worst)};
}

inline CheckResult oracle(const SolverConfig& cfg) {
  const WellSpec well = from_dimensionless(0.3, 0.0, 2.0, 5.0);
  const auto found = find_bound_states(well, cfg).energies;
  GridConfig grid;
  grid.pad = 20.0;
  const auto ref = finite_difference_levels(well, grid);
  const double gap = max_gap(found, ref, true);
  return {"oracle", gap <= 1e-4, "max relative gap to finite differences = " + sci(gap)};
}

inline CheckResult node(const SolverConfig& base) {
  SolverConfig cfg = base;
  cfg.e_max = 200.0;
  const double pinned = 4.0 * std::numbers::pi * std::numbers::pi;  // kd = 2 pi
  double worst = 0;
  for (double g : {0.0, 1.0, 10.0, 100.0}) {
    const WellSpec well{infinite_wall, infinite_wall, 1.0, {Delta{0.5, g}}};
    const auto e = find_bound_states(well, cfg).energies;
    double best = std::numeric_limits<double>::infinity();
    for (double x : e) best = std::min(best, std::abs(x - pinned));
    worst = std::max(worst, best);
  }
  return {"node", worst <= 1e-9, "max drift of the kd = 2 pi level over g = " + sci(worst)};
}

}  // namespace selfcheck

/// Runs every check whose name contains `filter` (all when empty).
inline std::vector<CheckResult> run_selfcheck(const std::string& filter, const SolverConfig& cfg) {
  const std::vector<std::pair<std::string, std::function<CheckResult()>>> checks = {
      {"flux", [] { return selfcheck::flux(); }},
      {"chebyshev", [] { return selfcheck::chebyshev(); }},
      {"reduction", [&] { return selfcheck::reduction(cfg); }},
      {"infinite", [&] { return selfcheck::infinite(cfg); }},
      {"pole", [&] { return selfcheck::pole(cfg); }},
      {"oracle", [&] { return selfcheck::oracle(cfg); }},
      {"node", [&] { return selfcheck::node(cfg); }},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : checks) {
    if (!filter.empty() && name.find(filter) == std::string::npos) continue;
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("threw: ") + e.what()});
    }
  }
  return out;
}

}  // namespace qwell

#endif  // QWELL_SELFCHECK_HPP
