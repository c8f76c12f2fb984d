#include <numbers>

#include <gtest/gtest.h>

#include "chaoskit/chaos.hpp"
#include "chaoskit/generators.hpp"

using namespace chaoskit;

namespace {

std::vector<Complex> draw_point(Rng& rng, int d) { return draw_complex_gaussians(rng, static_cast<std::size_t>(d)); }

WickPoly Z(int d, int k) { return WickPoly::z(d, k); }
WickPoly Zb(int d, int k) { return WickPoly::zbar(d, k); }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(ChaosEval, SpecExamples) {
  Rng rng(1);
  const auto zeta = draw_point(rng, 2);
  EXPECT_EQ(eval_integral(Kernel::basis(2, {0}, {}), zeta), zeta[0]);
  const Complex j11 = eval_integral(Kernel::basis(1, {0}, {0}), {zeta[0]});
  EXPECT_NEAR(std::abs(j11 - (std::norm(zeta[0]) - 1.0)), 0.0, 1e-15);
  EXPECT_THROW(eval_integral(Kernel::basis(2, {0, 1}, {}), zeta), std::invalid_argument);
  EXPECT_THROW(eval_integral(Kernel::basis(2, {0}, {}), {zeta[0]}), std::invalid_argument);
}

TEST(ChaosEval, KernelToPolySpecExamples) {
  EXPECT_EQ(kernel_to_poly(Kernel::basis(2, {0}, {})), Z(2, 0));
  EXPECT_EQ(kernel_to_poly(Kernel::basis(1, {0}, {0})), Z(1, 0) * Zb(1, 0) - WickPoly::constant(1, QComplex(1)));
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const Kernel f = random_kernel(3, t % 4, (t / 4) % 4, rng);
    const WickPoly p = kernel_to_poly(f);
    const auto zeta = draw_point(rng, 3);
    const Complex want = eval_integral(f, zeta);
    EXPECT_LE(rel(p.eval_at(zeta), want), 1e-10);
  }
}

TEST(ChaosEval, RawKernelPolyEqualsSymmetrized) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const Kernel raw = random_raw_kernel(2, 2, 1, rng);
    const ExactKernel lr = lift(raw);
    EXPECT_EQ(kernel_to_poly(lr), kernel_to_poly(symmetrize(lr)));
  }
}

TEST(ChaosEval, ScalingMatchesPaperConvention) {
  // J_{m,n}(sqrt2 z, 2) = 2^{(m+n)/2} J_{m,n}(z, 1): the paper's rho = 2 basis is a rescaling.
  Rng rng(4);
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      const Complex z = draw_complex_gaussian(rng);
      EXPECT_LE(rel(eval_J(m, n, std::sqrt(2.0) * z, 2.0), std::pow(2.0, (m + n) / 2.0) * eval_J(m, n, z, 1.0)), 1e-12);
    }
}

TEST(ChaosIsometry, OrthogonalityAgainstOracle) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const int d = 1 + t % 3;
    for (int m = 0; m <= 2; ++m)
      for (int n = 0; n <= 2; ++n) {
        const int p = (m + t) % 3, q = (n + 2 * t) % 3;
        const Kernel f = random_kernel(d, m, n, rng), g = random_kernel(d, p, q, rng);
        const Complex oracle = to_complex(expect_gaussian(kernel_to_poly(f) * kernel_to_poly(g).conj()));
        const Complex want = (m == p && n == q) ? std::tgamma(m + 1.0) * std::tgamma(n + 1.0) * inner(f, g) : 0.0;
        EXPECT_LE(std::abs(oracle - want), 1e-10 * std::max(1.0, std::abs(want)));
      }
  }
}

TEST(ChaosIsometry, ReversedConjugateIsConjugateIntegral) {
  Rng rng(6);
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      const ExactKernel f = random_int_kernel(2, m, n, rng);
      EXPECT_EQ(kernel_to_poly(f).conj(), kernel_to_poly(reversed_conjugate(f)));
    }
}

TEST(ChaosIsometry, ParsevalAgainstOracle) {
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    const ChaosExpansion F = random_expansion(2, 2, rng);
    const WickPoly p = expansion_to_poly(F);
    const double oracle = expect_gaussian(p * p.conj()).re.get_d();
    EXPECT_LE(std::abs(oracle - parseval_norm_sq(F)), 1e-10 * std::max(1.0, oracle));
    EXPECT_LE(std::abs(to_complex(expect_gaussian(p)) - project(F, 0, 0)[0]), 1e-12);
  }
}

TEST(ChaosStroock, SpecExamples) {
  const ExactExpansion a = stroock_expand(Z(1, 0) * Zb(1, 0));
  EXPECT_EQ(a.levels().size(), 2u);
  EXPECT_EQ(project(a, 0, 0)[0], QComplex(1));
  EXPECT_EQ(project(a, 1, 1), ExactKernel::basis(1, {0}, {0}));

  const ExactExpansion c = stroock_expand(WickPoly::constant(2, QComplex(Rational(3), Rational(-1, 2))));
  EXPECT_EQ(c.levels().size(), 1u);
  EXPECT_EQ(project(c, 0, 0)[0], QComplex(Rational(3), Rational(-1, 2)));

  const ExactExpansion s = stroock_expand(Z(1, 0).pow(2));
  EXPECT_EQ(s.levels().size(), 1u);
  EXPECT_EQ(project(s, 2, 0), ExactKernel::basis(1, {0, 0}, {}));
  EXPECT_EQ(expansion_to_poly(s), Z(1, 0).pow(2));
}

TEST(ChaosStroock, RoundTripsBothWays) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const WickPoly P = random_poly(2, 4, 6, rng);
    const ExactExpansion F = stroock_expand(P);
    for (const auto& [lv, f] : F.levels()) EXPECT_TRUE(is_symmetric(f));
    EXPECT_EQ(expansion_to_poly(F), P);
  }
  for (int t = 0; t < 10; ++t) {
    const ChaosExpansion F = random_expansion(2, 2, rng);
    const ChaosExpansion back = to_double(stroock_expand(expansion_to_poly(F)));
    EXPECT_LE(max_abs_diff(back, F), 1e-10);
  }
}

TEST(ChaosProduct, SpecExamples) {
  const ChaosExpansion p = product_pair(Kernel::basis(1, {0}, {}), Kernel::basis(1, {}, {0}));
  EXPECT_EQ(p.levels().size(), 2u);
  EXPECT_EQ(project(p, 1, 1), Kernel::basis(1, {0}, {0}));
  EXPECT_EQ(project(p, 0, 0)[0], Complex(1, 0));

  Rng rng(9);
  const Kernel f = random_kernel(2, 2, 1, rng);
  const ChaosExpansion q = product_pair(f, Kernel::scalar({2.0, -1.0}, 2));
  EXPECT_EQ(q.levels().size(), 1u);
  EXPECT_LE(max_abs_diff(project(q, 2, 1), f * Complex(2.0, -1.0)), 1e-15);
}

TEST(ChaosProduct, ExactAgainstOracleSmallRanks) {
  Rng rng(10);
  for (int t = 0; t < 30; ++t) {
    const int d = 1 + t % 3;
    const ExactKernel f = random_int_kernel(d, t % 3, (t / 3) % 3, rng);
    const ExactKernel g = random_int_kernel(d, (t / 2) % 3, (t / 5) % 3, rng);
    EXPECT_EQ(expansion_to_poly(product_pair(f, g)), kernel_to_poly(f) * kernel_to_poly(g));
  }
}

TEST(ChaosProduct, FloatKernelsLiftExactly) {
  // Float kernels lift to dyadic rationals, so the identity is still exact.
  Rng rng(11);
  const Kernel f = random_kernel(2, 2, 1, rng), g = random_kernel(2, 1, 2, rng);
  const ExactKernel lf = lift(f), lg = lift(g);
  EXPECT_EQ(expansion_to_poly(product_pair(lf, lg)), kernel_to_poly(lf) * kernel_to_poly(lg));
}

TEST(ChaosProduct, ExpansionProductAssociativeAgainstOracle) {
  Rng rng(12);
  for (int t = 0; t < 5; ++t) {
    const ExactExpansion F = random_int_expansion(2, 1, rng), G = random_int_expansion(2, 1, rng),
                         H = random_int_expansion(2, 1, rng);
    const ExactExpansion left = expansion_product(expansion_product(F, G), H);
    const ExactExpansion right = expansion_product(F, expansion_product(G, H));
    EXPECT_EQ(left, right);
    EXPECT_EQ(expansion_to_poly(left), expansion_to_poly(F) * expansion_to_poly(G) * expansion_to_poly(H));
  }
  EXPECT_THROW(expansion_product(ChaosExpansion(2), ChaosExpansion(3)), std::invalid_argument);
}

TEST(ChaosWick, SpecExamples) {
  const ExactKernel e = ExactKernel::basis(1, {0}, {});
  const ExactKernel w = wick_product(e, reversed_conjugate(e));
  EXPECT_EQ(kernel_to_poly(w), Z(1, 0) * Zb(1, 0) - WickPoly::constant(1, QComplex(1)));

  Rng rng(13);
  const ExactKernel f = random_int_kernel(2, 2, 1, rng);
  EXPECT_EQ(wick_product(f, ExactKernel::scalar(QComplex(1), 2)), f);

  // :Z(f)^n: = Z(f)^n
  ExactKernel h(2, 1, 0);
  h[0] = QComplex(Rational(3, 5));
  h[1] = QComplex(Rational(0), Rational(4, 5));
  ExactKernel pw = ExactKernel::scalar(QComplex(1), 2);
  for (int n = 1; n <= 4; ++n) {
    pw = wick_product(pw, h);
    EXPECT_EQ(kernel_to_poly(pw), kernel_to_poly(h).pow(n));
  }
}

TEST(ChaosWick, MonomialDisplay) {
  ExactKernel h(2, 1, 0);
  h[0] = QComplex(Rational(3, 5));
  h[1] = QComplex(Rational(0), Rational(4, 5));
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {3, 0}, {2, 2}, {2, 1}, {0, 3}}) {
    const WickMonomialReport r = wick_monomial_check(p, q, h);
    EXPECT_TRUE(r.matches_display) << p << "," << q;
    EXPECT_TRUE(r.matches_projection) << p << "," << q;
  }
  // Non-unit norm exercises the (E|Z|^2)^k factor.
  const WickMonomialReport r = wick_monomial_check(2, 2, h * QComplex(Rational(2)));
  EXPECT_TRUE(r.matches_display);
}

TEST(ChaosWick, AssociativeAndCommutative) {
  Rng rng(14);
  for (int t = 0; t < 10; ++t) {
    const ExactKernel a = random_int_kernel(2, t % 2, 1, rng), b = random_int_kernel(2, 1, t % 2, rng),
                      c = random_int_kernel(2, 1, 1, rng);
    EXPECT_EQ(wick_product(a, b), wick_product(b, a));
    EXPECT_EQ(wick_product(wick_product(a, b), c), wick_product(a, wick_product(b, c)));
    EXPECT_EQ(wick_product(a, b), project(product_pair(a, b), a.m() + b.m(), a.n() + b.n()));
  }
}

TEST(ChaosMalliavin, SpecExamples) {
  const ChaosExpansion F(Kernel::basis(1, {0}, {0}));
  const auto D = malliavin_D(F);
  ASSERT_EQ(D.size(), 1u);
  EXPECT_EQ(project(D[0], 0, 1), Kernel::basis(1, {}, {0}));
  const auto Dc = malliavin_D(ChaosExpansion(Kernel::scalar(3.0, 2)));
  for (const auto& c : Dc) EXPECT_TRUE(c.pruned().levels().empty());
}

TEST(ChaosMalliavin, AgreesWithWirtingerDerivatives) {
  Rng rng(15);
  for (int t = 0; t < 30; ++t) {
    const ExactExpansion F = random_int_expansion(2, 3, rng);
    const WickPoly P = expansion_to_poly(F);
    const auto D = malliavin_D(F);
    const auto Db = malliavin_Dbar(F);
    for (int k = 0; k < 2; ++k) {
      EXPECT_EQ(expansion_to_poly(D[k]), P.d_z(k));
      EXPECT_EQ(expansion_to_poly(Db[k]), P.d_zbar(k));
    }
  }
}

TEST(ChaosDivergence, SpecExamples) {
  std::vector<ChaosExpansion> u(2, ChaosExpansion(2));
  u[0].add(Kernel::scalar(1.0, 2));
  EXPECT_EQ(expansion_to_poly(divergence(u)), Z(2, 0));
  EXPECT_EQ(expansion_to_poly(divergence_bar(u)), Zb(2, 0));
  EXPECT_THROW(divergence(std::vector<ChaosExpansion>(1, ChaosExpansion(2))), std::invalid_argument);
}

TEST(ChaosDivergence, DeltaDIsNumberOperator) {
  Rng rng(16);
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      const ExactExpansion F(random_int_kernel(2, m, n, rng));
      EXPECT_EQ(divergence(malliavin_D(F)), F * QComplex(m));
      EXPECT_EQ(divergence_bar(malliavin_Dbar(F)), F * QComplex(n));
    }
  for (int t = 0; t < 20; ++t) {
    const ExactExpansion F = random_int_expansion(2, 3, rng);
    EXPECT_EQ(divergence(malliavin_D(F)), ou_L(F));
    EXPECT_EQ(divergence_bar(malliavin_Dbar(F)), ou_Lbar(F));
  }
}

TEST(ChaosDivergence, DualityAgainstOracle) {
  // E[delta(u) conj(G)] = E[sum_k u_k conj(d_k G)], with d_k G from polyfun.
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    std::vector<ExactExpansion> u;
    for (int k = 0; k < 2; ++k) u.push_back(random_int_expansion(2, 2, rng));
    const WickPoly G = random_poly(2, 5, 6, rng);
    const QComplex lhs = expect_gaussian(expansion_to_poly(divergence(u)) * G.conj());
    QComplex rhs;
    for (int k = 0; k < 2; ++k) rhs += expect_gaussian(expansion_to_poly(u[k]) * G.d_z(k).conj());
    EXPECT_EQ(lhs, rhs);
    const QComplex lhs_bar = expect_gaussian(expansion_to_poly(divergence_bar(u)) * G.conj());
    QComplex rhs_bar;
    for (int k = 0; k < 2; ++k) rhs_bar += expect_gaussian(expansion_to_poly(u[k]) * G.d_zbar(k).conj());
    EXPECT_EQ(lhs_bar, rhs_bar);
  }
}

TEST(ChaosOU, NumberOperators) {
  EXPECT_TRUE(ou_L(ExactExpansion(ExactKernel::scalar(QComplex(5), 2))).pruned().levels().empty());
  Rng rng(18);
  const ExactExpansion F(random_int_kernel(2, 1, 1, rng));
  EXPECT_EQ(ou_L(F), F);
  EXPECT_EQ(ou_Lbar(F), F);
}

TEST(ChaosOU, SemigroupSpecExamples) {
  Rng rng(19);
  const ChaosExpansion F = random_expansion(2, 3, rng);
  EXPECT_LE(max_abs_diff(ou_semigroup(F, OUParams(0.7, 0.0)), F), 0.0);
  for (double th : {-1.2, 0.0, 0.4})
    EXPECT_LE(std::abs(ou_eigenvalue(1, 1, OUParams(th, 0.8)) - std::exp(-1.6 * std::cos(th))), 1e-15);
  const double pi4 = std::numbers::pi / 4;
  EXPECT_LE(std::abs(ou_eigenvalue(1, 0, OUParams(pi4, 1.0)) - std::exp(-std::polar(1.0, pi4))), 1e-15);
  EXPECT_THROW(OUParams(std::numbers::pi / 2, 1.0), std::invalid_argument);
  EXPECT_THROW(OUParams(0.0, -1.0), std::invalid_argument);
}

TEST(ChaosOU, SemigroupLaw) {
  Rng rng(20);
  for (int t = 0; t < 10; ++t) {
    const ChaosExpansion F = random_expansion(2, 3, rng);
    const double th = 1.4 * (t / 10.0) - 0.7;
    const ChaosExpansion two = ou_semigroup(ou_semigroup(F, OUParams(th, 0.3)), OUParams(th, 0.45));
    EXPECT_LE(max_abs_diff(two, ou_semigroup(F, OUParams(th, 0.75))), 1e-12);
  }
}

TEST(ChaosOU, MehlerSpecExamples) {
  const std::vector<Complex> zeta{{0.8, -0.3}};
  const OUParams par(0.5, 0.7);
  const McEstimate c = mehler_estimate(WickPoly::constant(1, QComplex(2)), par, zeta, 2000, 1);
  EXPECT_EQ(c.mean, Complex(2, 0));
  EXPECT_EQ(c.se_re, 0.0);

  const McEstimate z1 = mehler_estimate(Z(1, 0), par, zeta, 100000, 2);
  const Complex want1 = std::exp(-par.r() * par.t) * zeta[0];
  EXPECT_LE(std::abs(z1.mean.real() - want1.real()), 4 * z1.se_re);
  EXPECT_LE(std::abs(z1.mean.imag() - want1.imag()), 4 * z1.se_im);

  const McEstimate z2 = mehler_estimate(Z(1, 0) * Zb(1, 0), par, zeta, 100000, 3);
  const double want2 = std::exp(-2 * par.t * std::cos(par.theta)) * (std::norm(zeta[0]) - 1) + 1;
  EXPECT_LE(std::abs(z2.mean.real() - want2), 4 * z2.se_re);
}

TEST(ChaosOU, MehlerMatchesSpectral) {
  Rng rng(21);
  for (int t = 0; t < 3; ++t) {
    const WickPoly P = random_poly(2, 3, 5, rng);
    const OUParams par(0.3 * t - 0.3, 0.5);
    const std::vector<Complex> zeta = draw_point(rng, 2);
    const Complex spectral = eval_expansion(ou_semigroup(to_double(stroock_expand(P)), par), zeta);
    const McEstimate mc = mehler_estimate(P, par, zeta, 100000, 100 + t);
    EXPECT_LE(std::abs(mc.mean.real() - spectral.real()), 4 * mc.se_re);
    EXPECT_LE(std::abs(mc.mean.imag() - spectral.imag()), 4 * mc.se_im);
  }
}

TEST(ChaosHyper, AbsMomentSpecExamples) {
  const ExactKernel e = ExactKernel::basis(1, {0}, {});
  EXPECT_EQ(abs_moment_exact(e, 2), 1);
  EXPECT_EQ(abs_moment_exact(e, 4), 2);
  const ExactKernel e11 = ExactKernel::basis(1, {0}, {0});
  EXPECT_EQ(abs_moment_exact(e11, 4), 9);
  EXPECT_THROW(abs_moment_exact(e11, 3), std::domain_error);
  EXPECT_THROW(abs_moment_exact(e11, 10), std::domain_error);
}

TEST(ChaosHyper, MarginSpecExamples) {
  const ExactKernel e = ExactKernel::basis(1, {0}, {});
  const ExactKernel e11 = ExactKernel::basis(1, {0}, {0});
  EXPECT_NEAR(hypercontractivity_margin(e, 4), std::sqrt(3.0) - std::pow(2.0, 0.25), 1e-14);
  EXPECT_NEAR(hypercontractivity_margin(e11, 4), 3.0 - std::pow(9.0, 0.25), 1e-14);
  EXPECT_EQ(hypercontractivity_margin(e11, 2), 0.0);
  Rng rng(22);
  for (int t = 0; t < 5; ++t) EXPECT_GE(hypercontractivity_margin(random_int_kernel(2, 1, 1, rng), 4), 0.0);
}

TEST(ChaosHuMeyer, SpecExamples) {
  const ExactKernel f = ExactKernel::basis(1, {0}, {0});
  const ExactExpansion S = hu_meyer_forward(f);
  EXPECT_EQ(expansion_to_poly(S), Z(1, 0) * Zb(1, 0));
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const Complex z = draw_complex_gaussian(rng);
    EXPECT_LE(std::abs(eval_expansion(to_double(S), {z}) - std::norm(z)), 1e-12);
  }
  const ExactKernel g = random_int_kernel(2, 3, 0, rng);
  EXPECT_EQ(hu_meyer_forward(g), ExactExpansion(g));
}

TEST(ChaosHuMeyer, RoundTripAndPartialSum) {
  Rng rng(24);
  for (int t = 0; t < 20; ++t) {
    const ExactKernel f = random_int_kernel(2, t % 4, (t / 4) % 4, rng);
    EXPECT_EQ(stratonovich_to_ito(hu_meyer_inverse(f)), ExactExpansion(f));
    EXPECT_EQ(expansion_to_poly(hu_meyer_forward(f)), stratonovich_partial_sum(f, f.d()));
  }
}

TEST(ChaosHuMeyer, PartialSumsStabilizeAtFullBasis) {
  Rng rng(25);
  const ExactKernel f = random_int_kernel(3, 1, 1, rng);
  const WickPoly full = stratonovich_partial_sum(f, 3);
  EXPECT_NE(stratonovich_partial_sum(f, 2), full);
  EXPECT_EQ(stratonovich_partial_sum(f, 0), WickPoly(3));
}

TEST(ChaosIndependence, SpecExamples) {
  const Kernel e1 = Kernel::basis(2, {0}, {}), e2 = Kernel::basis(2, {1}, {});
  const IndependenceReport a = independence_test(e1, e2);
  EXPECT_TRUE(a.independent);
  EXPECT_EQ(a.norms.size(), 1u);  // only f (x)_{1,0} h exists for two (1,0) kernels
  EXPECT_EQ(a.skipped.size(), 3u);
  const IndependenceReport b = independence_test(e1, e1);
  EXPECT_FALSE(b.independent);
  // Disjoint index support with mixed ranks.
  const Kernel f = Kernel::basis(3, {0}, {0}) * Complex(2.0, -1.0);
  const Kernel g = symmetrize(Kernel::basis(3, {1, 2}, {2}));
  EXPECT_TRUE(independence_test(f, g).independent);
  EXPECT_FALSE(independence_test(f, Kernel::basis(3, {0}, {0})).independent);
}

TEST(ChaosProject, SpecExamples) {
  const ExactExpansion F = stroock_expand(Z(1, 0) * Zb(1, 0));
  EXPECT_EQ(project(F, 1, 1), ExactKernel::basis(1, {0}, {0}));
  const ChaosExpansion c(Kernel::scalar(4.0, 2));
  EXPECT_EQ(project(c, 0, 0)[0], Complex(4, 0));
  EXPECT_TRUE(project(c, 2, 1).is_zero());
}
