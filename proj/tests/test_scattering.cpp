#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qwell/scattering.hpp"

using namespace qwell;
using std::numbers::pi;

namespace {

void expect_close(complex a, complex b, double tol) {
  EXPECT_NEAR(a.real(), b.real(), tol);
  EXPECT_NEAR(a.imag(), b.imag(), tol);
}

void expect_same(const TransferCoefficients& a, const TransferCoefficients& b, double tol) {
  expect_close(a.alpha, b.alpha, tol);
  expect_close(a.beta, b.beta, tol);
}

void expect_matches(const TransferCoefficients& tc, const oracle::Mat& m, double tol) {
  expect_close(tc.alpha, m[0][0], tol);
  expect_close(tc.beta, m[0][1], tol);
  expect_close(std::conj(tc.beta), m[1][0], tol);
  expect_close(std::conj(tc.alpha), m[1][1], tol);
}

}  // namespace

TEST(Delta, Examples) {
  expect_same(delta_coefficients(0.0, 1.0), identity_coefficients(1.0), 0.0);
  const auto d = delta_coefficients(2.0, 1.0);
  expect_close(d.alpha, {1.0, -1.0}, 1e-15);
  expect_close(d.beta, {0.0, -1.0}, 1e-15);
  EXPECT_NEAR(d.flux_defect(), 0.0, 1e-15);
  const auto m = delta_coefficients(-2.0, 1.0);
  expect_close(m.alpha, {1.0, 1.0}, 1e-15);
  expect_close(m.beta, {0.0, 1.0}, 1e-15);
}

TEST(Delta, RejectsNonPositiveWavenumber) {
  EXPECT_THROW(delta_coefficients(1.0, 0.0), DomainError);
  EXPECT_THROW(delta_coefficients(1.0, -1.0), DomainError);
}

TEST(Rect, Examples) {
  expect_same(rect_coefficients(0.0, 1.0, 1.0), identity_coefficients(1.0), 1e-15);

  const auto r = rect_coefficients(2.0, 1.0, 1.0);
  expect_close(r.alpha, {0.8337300251311491, -1.2984575814159773}, 1e-14);
  expect_close(r.beta, {0.0, -1.1752011936438014}, 1e-14);  // -i sinh 1
  EXPECT_NEAR(r.flux_defect(), 0.0, 1e-14);

  const auto q0 = rect_coefficients(1.0, 1.0, 1.0);
  expect_close(q0.alpha, std::exp(complex(0.0, -1.0)) * complex(1.0, 0.5), 1e-15);
  expect_close(q0.beta, {0.0, -0.5}, 1e-15);
}

TEST(Rect, SeriesBranchMatchesDirectFormula) {
  // |qw| = 1e-4 separates the series from the direct sin(qw)/q
  const double k = 1.0, w = 1.0;
  for (double q : {1e-6, 0.5e-4, 0.99e-4, 1.01e-4, 1e-3}) {
    const double u = k * k - q * q;
    const double qq = std::sqrt(k * k - u);
    const complex i{0.0, 1.0};
    const complex alpha = std::exp(-i * k * w) * (std::cos(qq * w) + i * ((2 * k * k - u) / (2 * k)) * (std::sin(qq * w) / qq));
    const complex beta = -i * (u / (2 * k)) * (std::sin(qq * w) / qq);
    const auto r = rect_coefficients(u, w, k);
    expect_close(r.alpha, alpha, 1e-15);
    expect_close(r.beta, beta, 1e-15);
  }
}

TEST(Rect, RejectsBadArguments) {
  EXPECT_THROW(rect_coefficients(1.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(rect_coefficients(1.0, -1.0, 1.0), DomainError);
  EXPECT_THROW(rect_coefficients(1.0, 1.0, 0.0), DomainError);
}

TEST(Rect, MatchesInterfaceMatching) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uu(-20.0, 20.0), wu(0.05, 2.0), ku(0.1, 6.0), xu(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const double u = uu(rng), w = wu(rng), k = ku(rng), x = xu(rng);
    const auto tc = shift(rect_coefficients(u, w, k), x);
    const auto ref = oracle::block(u, x - 0.5 * w, x + 0.5 * w, k);
    const double scale = std::abs(ref[0][0]) + std::abs(ref[0][1]);
    expect_matches(tc, ref, 1e-11 * scale);
  }
}

TEST(Delta, MatchesInterfaceMatching) {
  for (double g : {-3.0, 0.5, 7.0})
    for (double k : {0.3, 1.0, 4.0})
      for (double x : {-1.0, 0.0, 0.37, 2.5}) expect_matches(shift(delta_coefficients(g, k), x), oracle::spike(g, x, k), 1e-13);
}

TEST(Rect, DeltaLimitIsFirstOrderInWidth) {
  // alpha and beta each differ by about g^2 w / (12 k) from the delta values
  const auto d = delta_coefficients(1.0, 1.0);
  double prev = 0;
  for (double w : {1e-2, 1e-3, 1e-4}) {
    const auto r = rect_coefficients(1.0 / w, w, 1.0);
    const double err = std::abs(r.alpha - d.alpha) + std::abs(r.beta - d.beta);
    EXPECT_NEAR(err / w, 1.0 / 6.0, 0.01);
    if (prev > 0) {
      EXPECT_NEAR(prev / err, 10.0, 0.5);
    }
    prev = err;
  }
}

TEST(Shift, Examples) {
  const auto tc = rect_coefficients(3.0, 0.4, 1.3);
  expect_same(shift(tc, 0.0), tc, 0.0);
  const auto s = shift(delta_coefficients(2.0, 1.0), pi / 2);
  expect_close(s.beta, {0.0, 1.0}, 1e-15);
  expect_same(shift(shift(tc, 0.3), 1.1), shift(tc, 1.4), 1e-12);
}

TEST(Compose, IdentityAndMismatch) {
  const auto m = rect_coefficients(-2.0, 0.7, 1.7);
  expect_same(compose(identity_coefficients(1.7), m), m, 0.0);
  expect_same(compose(m, identity_coefficients(1.7)), m, 0.0);
  EXPECT_THROW(compose(m, identity_coefficients(1.8)), MismatchError);
}

TEST(Compose, TwoDeltasMatchSymbolicProduct) {
  const double g1 = 1.5, g2 = -0.8, x1 = 0.3, x2 = 1.9, k = 1.4;
  const double u1 = g1 / (2 * k), u2 = g2 / (2 * k);
  const complex i{0.0, 1.0};
  const complex e1 = std::exp(-2.0 * i * k * x1), e2 = std::exp(-2.0 * i * k * x2);
  // [[1 - iu2, -iu2 e2], [iu2/e2, 1 + iu2]] * [[1 - iu1, -iu1 e1], [iu1/e1, 1 + iu1]]
  const complex alpha = (1.0 - i * u2) * (1.0 - i * u1) + u1 * u2 * e2 / e1;
  const complex beta = (1.0 - i * u2) * (-i * u1 * e1) + (-i * u2 * e2) * (1.0 + i * u1);
  const auto tc = compose(shift(delta_coefficients(g2, k), x2), shift(delta_coefficients(g1, k), x1));
  expect_close(tc.alpha, alpha, 1e-14);
  expect_close(tc.beta, beta, 1e-14);
  expect_matches(tc, oracle::mul(oracle::spike(g2, x2, k), oracle::spike(g1, x1, k)), 1e-13);
}

TEST(Compose, AssociativeAndFluxConserving) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uu(-10.0, 10.0), wu(0.01, 1.0), xu(-3.0, 3.0), ku(0.05, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double k = ku(rng);
    const auto a = shift(rect_coefficients(uu(rng), wu(rng), k), xu(rng));
    const auto b = shift(delta_coefficients(uu(rng), k), xu(rng));
    const auto c = shift(rect_coefficients(uu(rng), wu(rng), k), xu(rng));
    const auto left = compose(compose(a, b), c), right = compose(a, compose(b, c));
    const double scale = std::max(1.0, std::abs(left.alpha) + std::abs(left.beta));
    EXPECT_NEAR(std::abs(left.alpha - right.alpha) / scale, 0.0, 1e-12);
    EXPECT_NEAR(std::abs(left.beta - right.beta) / scale, 0.0, 1e-12);
    for (const auto* t : {&a, &b, &c, &left})
      EXPECT_NEAR(t->flux_defect() / std::max(1.0, std::norm(t->alpha) + std::norm(t->beta)), 0.0, 1e-12);
  }
}

TEST(Rect, CentredElementHasImaginaryBeta) {
  for (double u : {-5.0, 0.5, 3.0, 40.0})
    for (double k : {0.2, 1.0, 3.0}) {
      EXPECT_NEAR(rect_coefficients(u, 0.8, k).beta.real(), 0.0, 1e-12);
      EXPECT_NEAR(delta_coefficients(u, k).beta.real(), 0.0, 1e-12);
    }
}

TEST(Rect, TransmissionAndReflectionConserveProbability) {
  const auto r = rect_coefficients(4.0, 1.2, 1.5);
  EXPECT_NEAR(std::norm(r.transmission()) + std::norm(r.reflection()), 1.0, 1e-13);
}

TEST(Interior, Examples) {
  const WellSpec empty{5.0, 5.0, 1.0, {}};
  expect_same(interior_coefficients(empty, 2.3), identity_coefficients(std::sqrt(2.3)), 0.0);

  const WellSpec one{5.0, 5.0, 3.0, {Rect{0.4, 0.9, 2.5}}};
  const double k = std::sqrt(1.7);
  expect_same(interior_coefficients(one, 1.7), shift(rect_coefficients(2.5, 0.9, k), 0.85), 1e-15);

  const WellSpec stacked{5.0, 5.0, 3.0, {Rect{0.4, 0.6, 2.5}, Rect{1.0, 0.6, 2.5}}};
  const WellSpec wide{5.0, 5.0, 3.0, {Rect{0.4, 1.2, 2.5}}};
  for (double e : {0.3, 1.7, 2.5, 4.9}) expect_same(interior_coefficients(stacked, e), interior_coefficients(wide, e), 1e-12);

  EXPECT_THROW(interior_coefficients(empty, 0.0), DomainError);
  EXPECT_THROW(interior_coefficients(empty, -1.0), DomainError);
}

TEST(Chebyshev, Polynomial) {
  EXPECT_EQ(chebyshev_u(-1, 0.3), 0.0);
  EXPECT_EQ(chebyshev_u(0, 0.3), 1.0);
  EXPECT_DOUBLE_EQ(chebyshev_u(1, 0.3), 0.6);
  EXPECT_DOUBLE_EQ(chebyshev_u(3, 2.0), 8 * 8.0 - 4 * 2.0);
  const double b = 0.7;
  for (int n = 0; n < 10; ++n) EXPECT_NEAR(chebyshev_u(n, std::cos(b)), std::sin((n + 1) * b) / std::sin(b), 1e-12);
}

TEST(Bloch, Examples) {
  for (double k : {0.4, 1.1, 2.7}) EXPECT_NEAR(bloch_cos_rect(0.0, 0.3, 1.0, k), std::cos(k), 1e-14);
  // barrier filling the period
  const double k = 2.0, u = 1.5, a = 0.8;
  EXPECT_NEAR(bloch_cos_rect(u, a, a, k), std::cos(std::sqrt(k * k - u) * a), 1e-14);
  EXPECT_NEAR(bloch_cos_rect(2.0, 1.0, 2.0, 1.0), std::cos(1.0) * std::cosh(1.0), 1e-14);
  EXPECT_THROW(bloch_cos_rect(2.0, 0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(bloch_cos_rect(2.0, 1.5, 1.0, 1.0), DomainError);
  EXPECT_THROW(bloch_cos_rect(2.0, 0.5, 1.0, 0.0), DomainError);
}

TEST(Bloch, AgreesWithRealPartOfCellCoefficient) {
  for (double u : {-4.0, 2.0, 30.0})
    for (double k : {0.5, 1.9, 4.2}) {
      const double l = 0.3, a = 1.3;
      const auto cell = rect_coefficients(u, l, k);
      const complex z = std::exp(complex(0.0, -k * a)) * std::conj(cell.alpha);
      EXPECT_NEAR(bloch_cos_rect(u, l, a, k), z.real(), 1e-12);
    }
}

TEST(Periodic, SingleCellReduces) {
  const complex t_inv{1.3, -0.4}, r_t{0.2, 0.9};
  const auto p = periodic_coefficients(t_inv, r_t, 1.7, 1, 0.9);
  expect_close(p.inv_T, t_inv, 1e-15);
  expect_close(p.R_over_T, r_t, 1e-15);
  EXPECT_THROW(periodic_coefficients(t_inv, r_t, 1.7, 0, 0.9), DomainError);
}

TEST(Periodic, EmptyCellsAreTransparent) {
  for (int n = 1; n <= 6; ++n) {
    const auto p = periodic_rect_chain(0.0, 0.3, 1.1, 0.5, n, 1.7);
    expect_close(p.inv_T, 1.0, 1e-12);
    expect_close(p.R_over_T, 0.0, 1e-12);
  }
}

TEST(Periodic, FiveCellsMatchExplicitWell) {
  const double u = 6.0, l = 0.25, a = 1.0, k = 1.6;
  WellSpec well{infinite_wall, infinite_wall, 6.0, {}};
  for (int j = 0; j < 5; ++j) well.elements.push_back(Rect{0.8 + j * a, l, u});
  const auto explicit_tc = interior_coefficients(validate(well), k * k);
  const auto closed = periodic_rect_chain(u, l, a, 0.8 + 0.5 * l, 5, k).as_transfer(k);
  const double scale = std::abs(explicit_tc.alpha) + std::abs(explicit_tc.beta);
  EXPECT_LT(std::abs(closed.alpha - explicit_tc.alpha) / scale, 1e-10);
  EXPECT_LT(std::abs(closed.beta - explicit_tc.beta) / scale, 1e-10);
}

TEST(Periodic, FluxHoldsUpToSixteenCells) {
  for (double u : {-3.0, 5.0, 60.0})
    for (double k : {0.4, 1.7, 3.3})
      for (int n = 1; n <= 16; ++n) {
        const auto p = periodic_rect_chain(u, 0.35, 1.2, 0.4, n, k);
        const double defect = std::norm(p.inv_T) - std::norm(p.R_over_T) - 1.0;
        EXPECT_LT(std::abs(defect) / std::max(1.0, std::norm(p.inv_T)), 1e-10) << u << ' ' << k << ' ' << n;
      }
}
