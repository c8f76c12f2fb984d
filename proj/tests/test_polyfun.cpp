#include <gtest/gtest.h>

#include "chaoskit/polyfun.hpp"

using namespace chaoskit;

namespace {

WickPoly Z(int d, int k) { return WickPoly::z(d, k); }
WickPoly Zb(int d, int k) { return WickPoly::zbar(d, k); }
WickPoly C(int d, long re, long im = 0) { return WickPoly::constant(d, QComplex(Rational(re), Rational(im))); }

}  // namespace

TEST(PolyAlgebra, SpecExamples) {
  Rng rng(1);
  const WickPoly p = random_poly(2, 4, 6, rng);
  EXPECT_EQ(p * C(2, 1), p);
  EXPECT_EQ((Z(1, 0) * Zb(1, 0)).text(), "z0*zb0");
  const WickPoly sq = (Z(2, 0) + Zb(2, 1)).pow(2);
  EXPECT_EQ(sq.size(), 3u);
  EXPECT_EQ(sq.coeff({2, 0, 0, 0}), QComplex(1));
  EXPECT_EQ(sq.coeff({1, 0, 0, 1}), QComplex(2));
  EXPECT_EQ(sq.coeff({0, 0, 0, 2}), QComplex(1));
  EXPECT_THROW(Z(2, 0) + Z(3, 0), std::invalid_argument);
}

TEST(PolyAlgebra, RingLaws) {
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    const WickPoly a = random_poly(2, 3, 4, rng), b = random_poly(2, 3, 4, rng), c = random_poly(2, 3, 4, rng);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(PolyDerivative, SpecExamples) {
  EXPECT_EQ((Z(1, 0) * Zb(1, 0)).d_z(0), Zb(1, 0));
  EXPECT_TRUE(Z(1, 0).pow(2).d_zbar(0).is_zero());
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const WickPoly p = random_poly(3, 5, 6, rng);
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) EXPECT_EQ(p.d_zbar(l).d_z(k), p.d_z(k).d_zbar(l));
  }
}

TEST(PolyExpect, SpecExamples) {
  EXPECT_EQ(expect_gaussian(Z(1, 0) * Zb(1, 0)), QComplex(1));
  EXPECT_EQ(expect_gaussian(Z(1, 0).pow(2)), QComplex(0));
  const WickPoly p = Z(1, 0).pow(2) * Zb(1, 0).pow(2);
  EXPECT_EQ(expect_gaussian(p), QComplex(2));
  const McEstimate mc = mc_expectation(p, 1000000, 42);
  EXPECT_LE(std::abs(mc.mean.real() - 2.0), 3 * mc.se_re);
  EXPECT_LE(std::abs(mc.mean.imag()), 1e-12);
}

TEST(PolyExpect, IsserlisMixedCoordinates) {
  // E|z0|^4 |z1|^2 = 2! * 1!; mixed powers vanish.
  const WickPoly p = Z(2, 0).pow(2) * Zb(2, 0).pow(2) * Z(2, 1) * Zb(2, 1);
  EXPECT_EQ(expect_gaussian(p), QComplex(2));
  EXPECT_EQ(expect_gaussian(Z(2, 0) * Zb(2, 1)), QComplex(0));
  EXPECT_EQ(expect_gaussian(Z(2, 0).pow(3) * Zb(2, 0).pow(3) * C(2, 1, 1)), QComplex(6, 6));
}

TEST(PolyExpect, LinearAndPositive) {
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const WickPoly a = random_poly(2, 4, 5, rng), b = random_poly(2, 4, 5, rng);
    const QComplex s(Rational(t % 5 - 2), Rational(1, 3));
    EXPECT_EQ(expect_gaussian(a * s + b), expect_gaussian(a) * s + expect_gaussian(b));
    const QComplex n2 = expect_gaussian(a * a.conj());
    EXPECT_GE(n2.re, 0);
    EXPECT_EQ(n2.im, 0);
  }
}

TEST(PolyExpect, PartialThenFullEqualsFull) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const WickPoly p = random_poly(3, 4, 8, rng);
    const WickPoly q = expect_partial(p, {true, false, true});
    for (const auto& [e, c] : q.terms()) {
      EXPECT_EQ(e[0] + e[3], 0);
      EXPECT_EQ(e[2] + e[5], 0);
    }
    EXPECT_EQ(expect_gaussian(q), expect_gaussian(p));
    EXPECT_EQ(expect_partial(p, {true, true, true}), WickPoly::constant(3, expect_gaussian(p)));
  }
}

TEST(PolyEval, SpecExamples) {
  EXPECT_EQ(C(2, 3, -1).eval_at({{1, 2}, {0, 5}}), Complex(3, -1));
  EXPECT_EQ((Z(1, 0) * Zb(1, 0)).eval_at({{1, 1}}), Complex(2, 0));
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const WickPoly p = random_poly(2, 4, 5, rng);
    const std::vector<Complex> pt{draw_complex_gaussian(rng), draw_complex_gaussian(rng)};
    // Float re-expansion: evaluate through the conjugate polynomial.
    const Complex got = p.eval_at(pt);
    const Complex via_conj = std::conj(p.conj().eval_at(pt));
    EXPECT_LE(std::abs(got - via_conj), 1e-12 * std::max(1.0, std::abs(got)));
    const QComplex exact = p.eval_exact({lift(pt[0]), lift(pt[1])});
    EXPECT_LE(std::abs(got - to_complex(exact)), 1e-12 * std::max(1.0, std::abs(got)));
  }
}

TEST(PolyMc, SpecExamples) {
  const McEstimate one = mc_expectation(C(1, 1), 1000, 7);
  EXPECT_EQ(one.mean, Complex(1, 0));
  EXPECT_EQ(one.se_re, 0.0);
  const McEstimate e = mc_expectation(Z(1, 0) * Zb(1, 0), 100000, 8);
  EXPECT_LE(std::abs(e.mean.real() - 1.0), 3 * e.se_re);
  EXPECT_THROW(mc_expectation(C(1, 1), 999, 7), std::invalid_argument);
}

TEST(PolyMc, DeterministicAcrossWorkers) {
  Rng rng(9);
  const WickPoly p = random_poly(2, 4, 6, rng);
  const McEstimate a = mc_expectation(p, 50000, 77, 1);
  const McEstimate b = mc_expectation(p, 50000, 77, 4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.se_re, b.se_re);
  EXPECT_EQ(a.se_im, b.se_im);
}

TEST(PolyIdentity, IntegrationByParts) {
  // E[zeta_k conj(Q)] = E[conj(dQ/dzeta_k)] = E[<e_k, DQ>], exactly.
  Rng rng(10);
  for (int t = 0; t < 50; ++t) {
    const WickPoly q = random_poly(3, 5, 7, rng);
    for (int k = 0; k < 3; ++k) {
      EXPECT_EQ(expect_gaussian(Z(3, k) * q.conj()), conj(expect_gaussian(q.d_z(k))));
      EXPECT_EQ(expect_gaussian(Zb(3, k) * q), expect_gaussian(q.d_z(k)));
    }
  }
}

TEST(PolyIdentity, ChainRuleForMonomialPhi) {
  // phi(w) = w^a wbar^b: d(phi o F) = phi_w(F) dF + phi_wbar(F) d(Fbar).
  Rng rng(11);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      const WickPoly f = random_poly(2, 2, 3, rng);
      const WickPoly fb = f.conj();
      const WickPoly comp = f.pow(a) * fb.pow(b);
      for (int k = 0; k < 2; ++k) {
        WickPoly rhs(2);
        if (a > 0) rhs += f.pow(a - 1) * fb.pow(b) * f.d_z(k) * QComplex(a);
        if (b > 0) rhs += f.pow(a) * fb.pow(b - 1) * fb.d_z(k) * QComplex(b);
        EXPECT_EQ(comp.d_z(k), rhs);
        WickPoly rhs_bar(2);
        if (a > 0) rhs_bar += f.pow(a - 1) * fb.pow(b) * f.d_zbar(k) * QComplex(a);
        if (b > 0) rhs_bar += f.pow(a) * fb.pow(b - 1) * fb.d_zbar(k) * QComplex(b);
        EXPECT_EQ(comp.d_zbar(k), rhs_bar);
      }
    }
}

TEST(PolyText, Canonical) {
  const WickPoly p = Z(2, 1) * QComplex(Rational(1, 2), Rational(-1)) + Z(2, 0).pow(2) * Zb(2, 0) * QComplex(2) + C(2, -3);
  EXPECT_EQ(p.text(), "-3 + (1/2-1i)*z1 + 2*z0^2*zb0");
}
