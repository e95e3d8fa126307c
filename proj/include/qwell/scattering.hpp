#ifndef QWELL_SCATTERING_HPP
#define QWELL_SCATTERING_HPP

// Transfer coefficients of interior fragments.
//
// Plane-wave coefficients are written in the global frame,
//   psi(x) = A exp(ikx) + B exp(-ikx),
// and a fragment maps the left pair onto the right pair through
//   (A2, B2) = [[alpha, beta], [conj(beta), conj(alpha)]] (A1, B1),
// with alpha = 1/conj(t) and beta = -conj(r)/conj(t). Because the frame is
// global, free stretches between fragments are the identity and a whole
// interior is the ordered product of its fragments.

#include <algorithm>
#include <cmath>
#include <complex>
#include <variant>

#include "qwell/errors.hpp"
#include "qwell/potential.hpp"

namespace qwell {

using complex = std::complex<double>;

struct TransferCoefficients {
  complex alpha{1.0, 0.0};
  complex beta{0.0, 0.0};
  double k = 0;

  complex transmission() const { return 1.0 / std::conj(alpha); }
  complex reflection() const { return -std::conj(beta) / std::conj(alpha); }
  /// |alpha|^2 - |beta|^2 - 1; zero for any flux-conserving fragment.
  double flux_defect() const { return std::norm(alpha) - std::norm(beta) - 1.0; }
};

namespace detail {

inline void require_wavenumber(double k) {
  if (!(k > 0) || !std::isfinite(k)) throw DomainError("wavenumber must be positive and finite");
}

/// sin(q w) / q, finite through q = 0.
inline complex sin_over_q(complex q, double w) {
  const complex qw = q * w;
  if (std::abs(qw) < 1e-4) {
    const complex z = qw * qw;
    return w * (1.0 - z / 6.0 * (1.0 - z / 20.0 * (1.0 - z / 42.0 * (1.0 - z / 72.0))));
  }
  return std::sin(qw) / q;
}

/// Wavenumber inside a region of height u; principal branch.
inline complex inner_wavenumber(double u, double k) {
  return std::sqrt(complex(k * k - u, 0.0));
}

}  // namespace detail

inline TransferCoefficients identity_coefficients(double k) { return {{1.0, 0.0}, {0.0, 0.0}, k}; }

/// g * delta(x) at the origin.
inline TransferCoefficients delta_coefficients(double g, double k) {
  detail::require_wavenumber(k);
  const double s = g / (2.0 * k);
  return {{1.0, -s}, {0.0, -s}, k};
}

/// Block of height u and width w centred on the origin.
///
/// With q = sqrt(k^2 - u):
///   alpha = exp(-ikw) [cos qw + i (k^2 + q^2)/(2kq) sin qw]
///   beta  = -i (k^2 - q^2)/(2kq) sin qw = -i u/(2k) sin(qw)/q
/// Both are even in q, so only sin(qw)/q is needed and the q = 0 point is
/// regular. The sign of beta is the one that matches the delta limit
/// u = g/w, w -> 0.
inline TransferCoefficients rect_coefficients(double u, double w, double k) {
  detail::require_wavenumber(k);
  if (!(w > 0)) throw DomainError("rect width must be positive");
  const complex q = detail::inner_wavenumber(u, k);
  const complex s = detail::sin_over_q(q, w);
  const complex i{0.0, 1.0};
  const complex alpha =
      std::exp(complex(0.0, -k * w)) * (std::cos(q * w) + i * ((2.0 * k * k - u) / (2.0 * k)) * s);
  const complex beta = -i * (u / (2.0 * k)) * s;
  return {alpha, beta, k};
}

/// Moves a fragment from the origin to position x.
inline TransferCoefficients shift(TransferCoefficients tc, double x) {
  tc.beta *= std::exp(complex(0.0, -2.0 * tc.k * x));
  return tc;
}

/// outer * inner, where inner is the fragment closer to x = 0.
inline TransferCoefficients compose(const TransferCoefficients& outer,
                                    const TransferCoefficients& inner) {
  if (std::abs(outer.k - inner.k) > 1e-12 * std::max(outer.k, inner.k))
    throw MismatchError("cannot compose transfer coefficients at different wavenumbers");
  return {outer.alpha * inner.alpha + outer.beta * std::conj(inner.beta),
          outer.alpha * inner.beta + outer.beta * std::conj(inner.alpha), outer.k};
}

/// Coefficients of one element at its actual position.
inline TransferCoefficients element_coefficients(const Element& e, double k) {
  if (const auto* dl = std::get_if<Delta>(&e)) return shift(delta_coefficients(dl->g, k), dl->x);
  const auto& r = std::get<Rect>(e);
  return shift(rect_coefficients(r.u, r.w, k), r.a + 0.5 * r.w);
}

/// Transfer coefficients of the whole interior of the well at energy E > 0.
/// Expects elements sorted left to right, as produced by validate().
inline TransferCoefficients interior_coefficients(const WellSpec& spec, double energy) {
  if (!(energy > 0) || !std::isfinite(energy))
    throw DomainError("interior coefficients need a positive finite energy");
  const double k = std::sqrt(energy);
  TransferCoefficients total = identity_coefficients(k);
  for (const auto& e : spec.elements) total = compose(element_coefficients(e, k), total);
  return total;
}

// ---------------------------------------------------------------------------
// Periodic chains

/// Chebyshev polynomial of the second kind, U_n(x), with U_{-1} = 0.
/// Equals sin((n+1)b)/sin(b) for x = cos(b) and stays real for |x| > 1.
inline double chebyshev_u(int n, double x) {
  if (n < 0) return 0.0;
  double prev = 1.0, cur = 2.0 * x;
  if (n == 0) return prev;
  for (int j = 1; j < n; ++j) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// cos of the Bloch phase for a lattice of period a built from barriers of
/// height u and width l.
inline double bloch_cos_rect(double u, double l, double a, double k) {
  detail::require_wavenumber(k);
  if (!(l > 0) || !(l <= a)) throw DomainError("bloch_cos_rect needs 0 < l <= a");
  const complex q = detail::inner_wavenumber(u, k);
  const double gap = k * (a - l);
  // (q^2 + k^2)/(2kq) sin(ql) = (2k^2 - u)/(2k) * sin(ql)/q
  const complex val = std::cos(gap) * std::cos(q * l) -
                      ((2.0 * k * k - u) / (2.0 * k)) * std::sin(gap) * detail::sin_over_q(q, l);
  return val.real();
}

struct PeriodicCoefficients {
  complex inv_T;      ///< 1/T_N
  complex R_over_T;   ///< R_N/T_N
  double bloch_cos = 0;
  int N = 0;

  /// Transfer-matrix form: alpha = conj(1/T), beta = -conj(R/T).
  TransferCoefficients as_transfer(double k) const { return {std::conj(inv_T), -std::conj(R_over_T), k}; }
};

/// Closed form for N identical cells of period a. t1_inv and r1_over_t1 are
/// 1/t and r/t of the first cell at its actual position. sin(Nb)/sin(b) is
/// evaluated as U_{N-1}(cos b), so band gaps need no complex Bloch phase.
inline PeriodicCoefficients periodic_coefficients(complex t1_inv, complex r1_over_t1, double a,
                                                  int n_cells, double k) {
  if (n_cells < 1) throw DomainError("periodic chain needs N >= 1");
  detail::require_wavenumber(k);
  const complex z = std::exp(complex(0.0, -k * a)) * t1_inv;
  const double c = z.real();
  const double un1 = chebyshev_u(n_cells - 1, c);
  const double cos_nb = c * un1 - chebyshev_u(n_cells - 2, c);
  PeriodicCoefficients out;
  out.inv_T = std::exp(complex(0.0, k * n_cells * a)) * complex(cos_nb, z.imag() * un1);
  out.R_over_T = std::exp(complex(0.0, k * (n_cells - 1) * a)) * r1_over_t1 * un1;
  out.bloch_cos = c;
  out.N = n_cells;
  return out;
}

/// Chain of N rect barriers (height u, width l, period a) whose first barrier
/// is centred at first_center.
inline PeriodicCoefficients periodic_rect_chain(double u, double l, double a, double first_center,
                                                int n_cells, double k) {
  const auto first = shift(rect_coefficients(u, l, k), first_center);
  return periodic_coefficients(std::conj(first.alpha), -std::conj(first.beta), a, n_cells, k);
}

}  // namespace qwell

#endif  // QWELL_SCATTERING_HPP
