// qwell: bound-state energies of layered 1D wells.
//
//   qwell solve <well.json> [--validate] [--emax R] [--grid N] [--tol-e R] [--tol-res R]
//   qwell sweep <sweep.json> [--out F]
//   qwell validate [--filter NAME] [--tol-res R]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qwell/qwell.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kConvergenceError = 3;

struct SolverFlags {
  std::optional<double> emax, emin_offset, tol_e, tol_res;
  std::optional<int> grid, max_iter;

  void attach(CLI::App* cmd) {
    cmd->add_option("--emax", emax, "Upper end of the energy scan (required for infinite walls)");
    cmd->add_option("--emin-offset", emin_offset, "Relative inset of the scan window from its ends");
    cmd->add_option("--grid", grid, "Scan grid points");
    cmd->add_option("--tol-e", tol_e, "Absolute energy tolerance for bisection");
    cmd->add_option("--tol-res", tol_res, "Relative residual acceptance bound");
    cmd->add_option("--max-iter", max_iter, "Bisection iteration cap");
  }

  qwell::SolverConfig config() const {
    qwell::SolverConfig cfg;
    if (grid) cfg.grid_points = *grid;
    if (tol_e) cfg.tol_e = *tol_e;
    if (tol_res) cfg.tol_res = *tol_res;
    if (emin_offset) cfg.edge_offset = *emin_offset;
    if (max_iter) cfg.max_iter = *max_iter;
    cfg.e_max = emax;
    return cfg;
  }
};

int cmd_solve(const std::string& path, bool with_oracle, const SolverFlags& flags) {
  const qwell::WellSpec well = qwell::well_from_string(qwell::read_file(path));
  const auto result = qwell::find_bound_states(well, flags.config());
  for (double e : result.energies) std::cout << qwell::format_fixed12(e) << '\n';
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  if (with_oracle && !result.energies.empty()) {
    qwell::GridConfig grid;
    grid.n_levels = static_cast<int>(result.energies.size());
    const auto ref = qwell::finite_difference_levels(well, grid);
    std::cout << "# finite-difference check (n=" << grid.n << ")\n# level,energy,oracle,rel_deviation\n";
    for (std::size_t i = 0; i < result.energies.size(); ++i) {
      std::cout << i + 1 << ',' << qwell::format_fixed12(result.energies[i]) << ',';
      if (i < ref.size()) {
        char dev[32];
        std::snprintf(dev, sizeof dev, "%.3e", std::abs(result.energies[i] - ref[i]) / std::abs(ref[i]));
        std::cout << qwell::format_fixed12(ref[i]) << ',' << dev << '\n';
      } else {
        std::cout << "missing,nan\n";
      }
    }
  }
  return 0;
}

int cmd_sweep(const std::string& path, const std::string& out_path) {
  const auto spec = qwell::sweep_from_string(qwell::read_file(path));
  const auto rows = qwell::run_sweep(spec);
  if (out_path.empty()) {
    qwell::write_csv(std::cout, rows, spec.n_levels);
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) throw qwell::ConfigError("cannot write '" + out_path + "'");
  qwell::write_csv(out, rows, spec.n_levels);
  return 0;
}

int cmd_validate(const std::string& filter, const SolverFlags& flags) {
  const auto results = qwell::run_selfcheck(filter, flags.config());
  bool ok = !results.empty();
  for (const auto& r : results) {
    std::printf("%-10s %s  %s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL", r.detail.c_str());
    ok = ok && r.passed;
  }
  if (results.empty()) std::fprintf(stderr, "no check matches '%s'\n", filter.c_str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound-state energies of one-dimensional layered quantum wells"};
  app.require_subcommand(1);

  std::string well_path, sweep_path, out_path, filter;
  bool with_oracle = false;
  SolverFlags solve_flags, validate_flags;

  auto* solve = app.add_subcommand("solve", "Solve a well description file");
  solve->add_option("well", well_path, "Well JSON file")->required();
  solve->add_flag("--validate", with_oracle, "Also print finite-difference reference levels");
  solve_flags.attach(solve);

  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and write CSV");
  sweep->add_option("sweep", sweep_path, "Sweep JSON file")->required();
  sweep->add_option("--out", out_path, "Output CSV file (default: stdout)");

  auto* validate = app.add_subcommand("validate", "Run the built-in invariant suite");
  validate->add_option("--filter", filter, "Run only checks whose name contains NAME");
  validate->add_option("--tol-res", validate_flags.tol_res, "Residual acceptance bound for root checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*solve) return cmd_solve(well_path, with_oracle, solve_flags);
    if (*sweep) return cmd_sweep(sweep_path, out_path);
    return cmd_validate(filter, validate_flags);
  } catch (const qwell::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConvergenceError;
  } catch (const qwell::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}
