#ifndef QWELL_SWEEP_HPP
#define QWELL_SWEEP_HPP

// Parameter sweeps over the lowest levels:
//   barrier_height   - levels against u = U w^2 at fixed x, y, v
//   barrier_position - levels against y = a/w at fixed x, u, v
//   periodic_height  - levels of a layered infinite well against barrier height

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <vector>

#include "qwell/io.hpp"
#include "qwell/potential.hpp"
#include "qwell/spectrum.hpp"

namespace qwell {

struct SweepRow {
  double param = 0;
  /// One entry per requested level; empty when the level is not bound.
  std::vector<std::optional<double>> levels;
};

/// Well solved at one value of the swept parameter.
inline WellSpec sweep_well(const SweepSpec& s, double param) {
  switch (s.mode) {
    case SweepMode::barrier_height: return from_dimensionless(s.x, s.y, param, s.v);
    case SweepMode::barrier_position: return from_dimensionless(s.x, param, s.u, s.v);
    case SweepMode::periodic_height: return layered_well(s.n_barriers, s.sub_width, s.barrier_width, param);
  }
  throw ConfigError("unknown sweep mode");
}

/// Solver settings for one step. Layered wells get an energy cap that
/// provably holds n_levels levels: E_n <= E_n(empty) + max(U, 0).
inline SolverConfig sweep_solver_config(const SweepSpec& s, const WellSpec& well, double param,
                                        SolverConfig cfg) {
  if (s.mode == SweepMode::periodic_height) {
    const double k = s.n_levels * std::numbers::pi / well.d;
    cfg.e_max = s.e_max.value_or(k * k + std::max(param, 0.0) + 1.0);
  }
  return cfg;
}

inline std::vector<SweepRow> run_sweep(const SweepSpec& s, const SolverConfig& base = {}) {
  std::vector<SweepRow> rows;
  rows.reserve(s.steps);
  for (int i = 0; i < s.steps; ++i) {
    const double p = s.param(i);
    const WellSpec well = sweep_well(s, p);
    const auto res = find_bound_states(well, sweep_solver_config(s, well, p, base));
    SweepRow row{p, {}};
    for (int n = 0; n < s.n_levels; ++n) {
      if (n < static_cast<int>(res.energies.size())) row.levels.emplace_back(res.energies[n]);
      else row.levels.emplace_back(std::nullopt);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// `param,E1,...,En` header, one row per step, `escaped` for unbound levels.
inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows, int n_levels) {
  os << "param";
  for (int n = 1; n <= n_levels; ++n) os << ",E" << n;
  os << '\n';
  for (const auto& row : rows) {
    os << format_sig12(row.param);
    for (const auto& level : row.levels) os << ',' << (level ? format_sig12(*level) : "escaped");
    os << '\n';
  }
}

}  // namespace qwell

#endif  // QWELL_SWEEP_HPP
