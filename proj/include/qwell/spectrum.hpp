#ifndef QWELL_SPECTRUM_HPP
#define QWELL_SPECTRUM_HPP

// Bound-state conditions and the root search over them.
//
// For finite walls, with k = sqrt(E), chi_i = sqrt(v_i - E) and (alpha, beta)
// the interior transfer coefficients, bound states solve
//   tan(kd) = Num / Den
// which is root-found in the pole-free form sin(kd) Den - cos(kd) Num.
// For infinite walls the condition is tan(kd) = (Im a - Im b)/(Re b - Re a).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qwell/errors.hpp"
#include "qwell/oracle.hpp"
#include "qwell/potential.hpp"
#include "qwell/roots.hpp"
#include "qwell/scattering.hpp"

namespace qwell {

struct SolverConfig {
  int grid_points = 2000;
  double tol_e = 1e-10;
  double tol_res = 1e-8;
  /// Relative inset of the scan window from its ends.
  double edge_offset = 1e-9;
  /// Upper end of the scan; required for infinite walls, optional cap otherwise.
  std::optional<double> e_max;
  int max_iter = 200;
  /// Compare the level count with the finite-difference oracle and record a
  /// warning on mismatch.
  bool cross_check = false;

  void check() const {
    if (grid_points < 16) throw DomainError("grid_points must be at least 16");
    if (!(tol_e > 0) || !(tol_res > 0)) throw DomainError("tolerances must be positive");
    if (!(edge_offset > 0 && edge_offset < 0.5)) throw DomainError("edge_offset must lie in (0, 0.5)");
    if (max_iter < 1) throw DomainError("max_iter must be positive");
    if (e_max && !(*e_max > 0 && std::isfinite(*e_max))) throw DomainError("e_max must be positive");
  }
};

struct SpectrumResult {
  std::vector<double> energies;
  /// Scale-free residual at each energy (see relative_residual).
  std::vector<double> residuals;
  std::vector<std::pair<double, double>> brackets;
  std::pair<double, double> window{0.0, 0.0};
  std::vector<std::string> warnings;
};

/// Num and Den of the finite-wall condition at one energy.
struct ResidualTerms {
  double k = 0, chi1 = 0, chi2 = 0;
  double num = 0, den = 0;
  TransferCoefficients tc;
};

namespace detail {

inline void require_finite_window(const WellSpec& spec, double energy) {
  if (spec.infinite()) throw InfiniteWallError("well has infinite walls; use the infinite-wall residual");
  if (!(energy > 0 && energy < spec.wall_min()))
    throw DomainError("energy outside the bound-state window (0, min(v1, v2))");
}

inline void require_infinite(const WellSpec& spec, double energy) {
  if (!spec.infinite()) throw FiniteWallError("well has finite walls; use the finite-wall residual");
  if (!(energy > 0) || !std::isfinite(energy)) throw DomainError("energy must be positive");
}

}  // namespace detail

inline ResidualTerms residual_terms(const WellSpec& spec, double energy) {
  detail::require_finite_window(spec, energy);
  ResidualTerms t;
  t.k = std::sqrt(energy);
  t.chi1 = std::sqrt(spec.v1 - energy);
  t.chi2 = std::sqrt(spec.v2 - energy);
  t.tc = interior_coefficients(spec, energy);
  const double k = t.k, c1 = t.chi1, c2 = t.chi2;
  const double ra = t.tc.alpha.real(), ia = t.tc.alpha.imag();
  const double rb = t.tc.beta.real(), ib = t.tc.beta.imag();
  t.num = k * (c1 + c2) * ra + (c1 * c2 - k * k) * ia - (c1 * c2 + k * k) * ib - k * (c1 - c2) * rb;
  t.den = k * (c1 + c2) * ia - (c1 * c2 - k * k) * ra + (c1 * c2 + k * k) * rb - k * (c1 - c2) * ib;
  return t;
}

/// sin(kd) Den - cos(kd) Num for finite walls; zero exactly at bound states.
inline double spectrum_residual(const WellSpec& spec, double energy) {
  const auto t = residual_terms(spec, energy);
  const double kd = t.k * spec.d;
  return std::sin(kd) * t.den - std::cos(kd) * t.num;
}

/// Infinite-wall condition for given interior coefficients and width.
inline double infinite_residual(const TransferCoefficients& tc, double d) {
  const double kd = tc.k * d;
  return std::sin(kd) * (tc.alpha.real() - tc.beta.real()) - std::cos(kd) * (tc.beta.imag() - tc.alpha.imag());
}

inline double spectrum_residual_infinite(const WellSpec& spec, double energy) {
  detail::require_infinite(spec, energy);
  return infinite_residual(interior_coefficients(spec, energy), spec.d);
}

/// Dispatches on the wall type.
inline double residual(const WellSpec& spec, double energy) {
  return spec.infinite() ? spectrum_residual_infinite(spec, energy) : spectrum_residual(spec, energy);
}

/// Determinant condition on the matching equations, reduced to its real
/// content: det = -2i Im[(chi1 + ik) X], X = (chi2 + ik) alpha e^{ikd} +
/// (chi2 - ik) conj(beta) e^{-ikd}. Returned value is Im[...].
inline double determinant_residual(const WellSpec& spec, double energy) {
  detail::require_finite_window(spec, energy);
  const double k = std::sqrt(energy);
  const double c1 = std::sqrt(spec.v1 - energy), c2 = std::sqrt(spec.v2 - energy);
  const auto tc = interior_coefficients(spec, energy);
  const complex e = std::exp(complex(0.0, k * spec.d));
  const complex x = complex(c2, k) * tc.alpha * e + complex(c2, -k) * std::conj(tc.beta) / e;
  return (complex(c1, k) * x).imag();
}

/// |f(E)| over the magnitude of the terms it is assembled from, a backward
/// error in [0, 1]. For finite walls the scale is |chi1 + ik| |chi2 + ik|
/// (|alpha| + |beta|), which bounds |Num + i Den| and the determinant alike.
inline double relative_residual(const WellSpec& spec, double energy) {
  if (spec.infinite()) {
    detail::require_infinite(spec, energy);
    const auto tc = interior_coefficients(spec, energy);
    return std::abs(infinite_residual(tc, spec.d)) / (std::abs(tc.alpha) + std::abs(tc.beta));
  }
  const auto t = residual_terms(spec, energy);
  const double kd = t.k * spec.d;
  const double f = std::sin(kd) * t.den - std::cos(kd) * t.num;
  const double scale = std::hypot(t.chi1, t.k) * std::hypot(t.chi2, t.k) * (std::abs(t.tc.alpha) + std::abs(t.tc.beta));
  return std::abs(f) / scale;
}

/// Bracketed factor of the transmission amplitude of the whole potential
/// (walls included) continued to k1 = i chi1, k2 = i chi2; its zeros are the
/// poles of that amplitude. The non-vanishing prefactor exp(ik2 d)/(4 k1 k)
/// is dropped. For real E in the window the value is purely imaginary.
inline complex transmission_pole_residual(const WellSpec& spec, double energy) {
  detail::require_finite_window(spec, energy);
  const double k = std::sqrt(energy);
  const complex k1{0.0, std::sqrt(spec.v1 - energy)};
  const complex k2{0.0, std::sqrt(spec.v2 - energy)};
  const auto tc = interior_coefficients(spec, energy);
  const complex t = tc.transmission(), r = tc.reflection();
  const complex ep = std::exp(complex(0.0, k * spec.d)), em = 1.0 / ep;
  return (k2 - k) * (k - k1) / std::conj(t) * ep + (k2 + k) * (k + k1) / t * em +
         (k + k2) * (k1 - k) * r / t * em + (k - k2) * (k + k1) * std::conj(r) / std::conj(t) * ep;
}

/// |pole bracket| over the sum of the magnitudes of its four terms.
inline double pole_relative_residual(const WellSpec& spec, double energy) {
  detail::require_finite_window(spec, energy);
  const double k = std::sqrt(energy);
  const double m1 = std::hypot(k, std::sqrt(spec.v1 - energy));
  const double m2 = std::hypot(k, std::sqrt(spec.v2 - energy));
  const auto tc = interior_coefficients(spec, energy);
  const double scale = 2.0 * m1 * m2 * (std::abs(tc.alpha) + std::abs(tc.beta));
  return std::abs(transmission_pole_residual(spec, energy)) / scale;
}

/// Delta of strength g at d1 inside a symmetric well of width d and walls v
/// (v may be infinite_wall). Returns
///   C sin(kd) + (B + Au) sin(kd1) sin(kd2) - (B - Au) cos(kd1) cos(kd2)
/// with r = k/chi, u = g/2k, A = 1 + r^2, B = (1 - r^2) u - 2r,
/// C = 1 - r^2 + g/chi, d2 = d - d1. This is C sin(kd1) sin(kd2) times
///   (B+Au)/C - (B-Au)/C cot(kd2) cot(kd1) + cot(kd2) + cot(kd1),
/// so it keeps the zeros of that form without its 1/C poles. For B = Au the
/// zeros split into sin(kd1) sin(kd2) = 0 and -2uA/C = cot(kd2) + cot(kd1).
inline double delta_well_residual(double g, double d1, double d, double v, double energy) {
  if (!(d > 0) || !(d1 > 0 && d1 < d)) throw DomainError("delta position must lie in (0, d)");
  if (!(v > 0)) throw DomainError("wall height must be positive");
  if (!(energy > 0 && energy < v)) throw DomainError("energy outside the bound-state window");
  const double k = std::sqrt(energy);
  const double u = g / (2.0 * k);
  double r = 0, g_over_chi = 0;
  if (!is_infinite(v)) {
    const double chi = std::sqrt(v - energy);
    r = k / chi;
    g_over_chi = g / chi;
  }
  const double a = 1.0 + r * r;
  const double b = (1.0 - r * r) * u - 2.0 * r;
  const double c = 1.0 - r * r + g_over_chi;
  const double d2 = d - d1;
  return c * std::sin(k * d) + (b + a * u) * std::sin(k * d1) * std::sin(k * d2) -
         (b - a * u) * std::cos(k * d1) * std::cos(k * d2);
}

/// Levels of the empty symmetric well of depth v and width d from
/// tan(kd/2) = chi/k (even) and cot(kd/2) = -chi/k (odd), one bisection per
/// continuity interval of tan / cot in theta = kd/2.
inline std::vector<double> plane_bottom_levels(double v, double d) {
  if (!(v > 0) || !(d > 0) || !std::isfinite(v) || !std::isfinite(d))
    throw DomainError("plane_bottom_levels needs finite v > 0 and d > 0");
  constexpr double pi = std::numbers::pi;
  const double theta_max = 0.5 * std::sqrt(v) * d;
  auto kchi = [&](double theta) {
    const double k = 2.0 * theta / d;
    return std::pair{k, std::sqrt(std::max(v - k * k, 0.0))};
  };
  // sin/cos forms of tan(theta) - chi/k and cot(theta) + chi/k, sign-equivalent
  // inside each interval and free of its end poles.
  auto even = [&](double th) { auto [k, chi] = kchi(th); return k * std::sin(th) - chi * std::cos(th); };
  auto odd = [&](double th) { auto [k, chi] = kchi(th); return k * std::cos(th) + chi * std::sin(th); };

  std::vector<double> out;
  auto solve = [&](auto& f, double lo, double hi) {
    hi = std::min(hi, theta_max);
    if (!(lo < hi)) return false;
    const double flo = f(lo), fhi = f(hi);
    if (fhi == 0.0 && hi == theta_max) return true;  // level exactly at the rim: not bound
    const Root root = bisect(f, Bracket{lo, hi, flo, fhi}, 0.0, 2000);
    const double k = 2.0 * root.x / d;
    if (k * k < v) out.push_back(k * k);
    return true;
  };
  for (int j = 0;; ++j) {
    if (!solve(even, j * pi, j * pi + 0.5 * pi)) break;
    if (!solve(odd, j * pi + 0.5 * pi, (j + 1) * pi)) break;
  }
  return out;
}

/// (n pi / d)^2 for n = 1..n_max.
inline std::vector<double> plane_bottom_infinite_levels(double d, int n_max) {
  if (!(d > 0)) throw DomainError("width must be positive");
  std::vector<double> out;
  for (int n = 1; n <= n_max; ++n) {
    const double k = n * std::numbers::pi / d;
    out.push_back(k * k);
  }
  return out;
}

namespace detail {

struct NodeState {
  double psi = 0, dpsi = 0;
  int nodes = 0;
};

/// Carries the real solution across a region of constant height u and length
/// len, counting its zeros in (0, len].
inline void advance(NodeState& s, double u, double energy, double len) {
  if (!(len > 0)) return;
  const double q2 = energy - u;
  double c = 1.0, sq = len;  // cos(qL) and sin(qL)/q, hyperbolic for q2 < 0
  if (q2 > 0) {
    const double q = std::sqrt(q2);
    c = std::cos(q * len);
    sq = std::sin(q * len) / q;
    // psi = R cos(q t - phi): zeros at q t = phi + pi/2 + m pi
    const double phi = std::atan2(s.dpsi / q, s.psi);
    constexpr double pi = std::numbers::pi;
    s.nodes += static_cast<int>(std::floor((q * len - phi - 0.5 * pi) / pi) - std::floor(-(phi + 0.5 * pi) / pi));
  } else if (q2 < 0) {
    const double kap = std::sqrt(-q2);
    c = std::cosh(kap * len);
    sq = std::sinh(kap * len) / kap;
  }
  const double psi = c * s.psi + sq * s.dpsi;
  const double dpsi = -q2 * sq * s.psi + c * s.dpsi;
  if (q2 <= 0 && ((s.psi > 0 && psi < 0) || (s.psi < 0 && psi > 0))) ++s.nodes;  // at most one zero
  const double norm = std::hypot(psi, dpsi);
  s.psi = psi / norm;
  s.dpsi = dpsi / norm;
}

}  // namespace detail

/// Number of bound states strictly below `energy`, from the zero count of the
/// real solution that satisfies the left boundary condition.
inline int level_count(const WellSpec& spec, double energy) {
  if (!(energy > 0) || !std::isfinite(energy)) throw DomainError("energy must be positive");
  if (!spec.infinite() && !(energy < spec.wall_min()))
    throw DomainError("energy outside the bound-state window (0, min(v1, v2))");
  detail::NodeState s;
  if (spec.infinite()) {
    s.dpsi = 1.0;
  } else {
    s.psi = 1.0;
    s.dpsi = std::sqrt(spec.v1 - energy);
  }
  double x = 0;
  for (const auto& e : spec.elements) {
    if (const auto* dl = std::get_if<Delta>(&e)) {
      detail::advance(s, 0.0, energy, dl->x - x);
      s.dpsi += dl->g * s.psi;
      x = dl->x;
    } else {
      const auto& r = std::get<Rect>(e);
      detail::advance(s, 0.0, energy, r.a - x);
      detail::advance(s, r.u, energy, r.w);
      x = r.a + r.w;
    }
  }
  detail::advance(s, 0.0, energy, spec.d - x);
  if (!spec.infinite()) {
    // outside: psi cosh + (psi'/chi) sinh has a zero iff its far sign differs
    const double far = s.psi + s.dpsi / std::sqrt(spec.v2 - energy);
    if ((s.psi > 0 && far < 0) || (s.psi < 0 && far > 0)) ++s.nodes;
  }
  return s.nodes;
}

/// Energy interval scanned by find_bound_states.
inline std::pair<double, double> search_window(const WellSpec& spec, const SolverConfig& cfg) {
  if (spec.infinite()) {
    if (!cfg.e_max) throw DomainError("e_max is required for infinite walls");
    return {cfg.edge_offset * *cfg.e_max, *cfg.e_max};
  }
  const double top = spec.wall_min();
  double hi = (1.0 - cfg.edge_offset) * top;
  if (cfg.e_max) hi = std::min(hi, *cfg.e_max);
  return {cfg.edge_offset * top, hi};
}

namespace detail {

/// Level j (0-based over the whole spectrum) inside [lo, hi]: bisection on
/// level_count until the interval holds only that level and the residual
/// changes sign across it, then bisection on the residual.
template <class F>
Root isolate_level(const WellSpec& spec, F&& f, int j, double lo, double hi, const SolverConfig& cfg) {
  double a = lo, b = hi;
  for (int iter = 0;; ++iter) {
    if (level_count(spec, a) == j && level_count(spec, b) == j + 1) {
      const double fa = f(a), fb = f(b);
      if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) return bisect(f, Bracket{a, b, fa, fb}, cfg.tol_e, cfg.max_iter);
    }
    const double mid = 0.5 * (a + b);
    if (b - a <= cfg.tol_e || mid <= a || mid >= b) return {mid, Bracket{a, b, f(a), f(b)}};
    if (iter >= cfg.max_iter) throw ConvergenceError("level isolation did not converge within max_iter");
    (level_count(spec, mid) <= j ? a : b) = mid;
  }
}

}  // namespace detail

/// All bound states in the search window: uniform scan for sign changes of
/// the residual, bisection of every bracket to tol_e, a completeness check
/// against level_count, and rejection of candidates whose relative residual
/// is not below tol_res.
inline SpectrumResult find_bound_states(const WellSpec& well, const SolverConfig& cfg = {}) {
  cfg.check();
  const WellSpec spec = validate(well);
  SpectrumResult out;
  out.window = search_window(spec, cfg);
  const auto [lo, hi] = out.window;
  if (!(lo < hi)) return out;

  auto f = [&spec](double e) { return residual(spec, e); };
  const ScanOptions opt{cfg.grid_points, cfg.tol_e, cfg.max_iter, 16};
  auto accept = [&](const std::vector<Root>& roots) {
    out.energies.clear();
    out.residuals.clear();
    out.brackets.clear();
    for (const auto& root : roots) {
      const double rel = relative_residual(spec, root.x);
      if (!(rel < cfg.tol_res)) continue;
      out.energies.push_back(root.x);
      out.residuals.push_back(rel);
      out.brackets.emplace_back(root.bracket.lo, root.bracket.hi);
    }
  };
  accept(find_roots(f, lo, hi, opt));

  // Pairs split by less than a scan cell leave no sign change. The zero count
  // says how many levels the window holds; when the scan came up short, every
  // level is isolated on the count and then refined on the residual.
  const int first = level_count(spec, lo), last = level_count(spec, hi);
  if (static_cast<int>(out.energies.size()) < last - first) {
    std::vector<Root> roots;
    for (int j = first; j < last; ++j) roots.push_back(detail::isolate_level(spec, f, j, lo, hi, cfg));
    accept(roots);
  }

  if (cfg.cross_check) {
    GridConfig grid;
    grid.n_levels = static_cast<int>(out.energies.size()) + 4;
    const auto ref = finite_difference_levels(spec, grid);
    const auto below = std::count_if(ref.begin(), ref.end(), [hi = hi](double e) { return e <= hi; });
    if (static_cast<std::size_t>(below) != out.energies.size()) {
      out.warnings.push_back("level count " + std::to_string(out.energies.size()) +
                             " differs from finite-difference count " + std::to_string(below));
    }
  }
  return out;
}

}  // namespace qwell

#endif  // QWELL_SPECTRUM_HPP
