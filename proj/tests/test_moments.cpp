#include <gtest/gtest.h>

#include "chaoskit/generators.hpp"
#include "chaoskit/moments.hpp"

using namespace chaoskit;

namespace {

Kernel e11() { return Kernel::basis(1, {0}, {0}); }

// d^{-1/2} sum_k e_k (x) ebar_k
Kernel diagonal_family(int d) {
  Kernel f(d, 1, 1);
  for (int k = 0; k < d; ++k) f.at({k, k}) = 1.0 / std::sqrt(static_cast<double>(d));
  return f;
}

}  // namespace

TEST(MomentsAux, SpecExamples) {
  const AuxKernels a = aux_kernels(e11());
  EXPECT_EQ(a.psi[1], e11() * Complex(2.0));
  EXPECT_DOUBLE_EQ(norm(a.psi[1]) * norm(a.psi[1]), 4.0);
  EXPECT_EQ(a.eta[1], e11());
  const AuxKernels b = aux_kernels(Kernel::basis(1, {0}, {}));
  EXPECT_EQ(b.phi.size(), 1u);
  EXPECT_EQ(b.varsigma.size(), 1u);
  EXPECT_THROW(aux_kernels(Kernel::scalar(1.0)), std::invalid_argument);
}

TEST(MomentsAux, LevelKernelsOfSquares) {
  Rng rng(1);
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}}) {
    const ExactKernel f = random_int_kernel(2, m, n, rng);
    const ExactAuxKernels a = aux_kernels(f);
    const ExactExpansion abs2 = product_pair(f, reversed_conjugate(f));
    const ExactExpansion sq = product_pair(f, f);
    for (int r = 0; r <= m + n; ++r) EXPECT_EQ(project(abs2, m + n - r, m + n - r), a.psi[r]) << m << n << r;
    for (int r = 0; r <= 2 * std::min(m, n); ++r) EXPECT_EQ(project(sq, 2 * m - r, 2 * n - r), a.phi[r]) << m << n << r;
  }
}

TEST(MomentsDerivatives, SpecExamples) {
  EXPECT_EQ(fourth_moment_via_derivatives(ExactKernel::basis(1, {0}, {})), 2);
  EXPECT_EQ(fourth_moment_via_derivatives(lift(e11())), 9);
  EXPECT_THROW(fourth_moment_via_derivatives(ExactKernel::scalar(QComplex(1))), std::invalid_argument);
}

TEST(MomentsDerivatives, MatchesAbsMomentExactly) {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const int d = 1 + t % 2, m = 1 + t % 2, n = (t / 2) % 3;
    const ExactKernel f = lift(random_kernel(d, m, n, rng));
    EXPECT_EQ(fourth_moment_via_derivatives(f), abs_moment_exact(f, 4)) << m << "," << n;
  }
  // m = 0 goes through the conjugate.
  const ExactKernel g = random_int_kernel(2, 0, 2, rng);
  EXPECT_EQ(fourth_moment_via_derivatives(g), abs_moment_exact(g, 4));
}

TEST(MomentsGap, SpecExamples) {
  const FourthMomentGap a = fm_gap(Kernel::basis(1, {0}, {}));
  EXPECT_EQ(a.direct, 0.0);
  EXPECT_NEAR(a.route_a, 0.0, 1e-15);
  EXPECT_NEAR(a.route_b, 0.0, 1e-15);
  EXPECT_NEAR(a.route_c, 0.0, 1e-15);

  const FourthMomentGap b = fm_gap(e11());
  EXPECT_EQ(b.direct, 6.0);
  EXPECT_NEAR(b.route_a, 6.0, 1e-14);
  EXPECT_NEAR(b.route_b, 6.0, 1e-14);
  EXPECT_NEAR(b.route_c, 6.0, 1e-14);
  const DirectMoments dm = direct_moments(lift(e11()));
  EXPECT_EQ(dm.fourth, 9);
  EXPECT_EQ(dm.second, 1);
  EXPECT_EQ(dm.square_mean, QComplex(1));
}

TEST(MomentsGap, Homogeneity) {
  Rng rng(3);
  const Kernel f = random_kernel(2, 2, 1, rng);
  const Complex c(0.7, -1.3);
  const double s = std::pow(std::abs(c), 4);
  const FourthMomentGap g = fm_gap(f), gs = fm_gap(f * c);
  EXPECT_LE(std::abs(gs.direct - s * g.direct), 1e-9 * gs.direct);
  EXPECT_LE(std::abs(gs.route_a - s * g.route_a), 1e-9 * gs.direct);
}

TEST(MomentsGap, RoutesAgreeWithOracle) {
  Rng rng(4);
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}, {3, 1}}) {
    for (int t = 0; t < 30; ++t) {
      const int d = 1 + t % 3;
      const FourthMomentGap g = fm_gap(random_kernel(d, m, n, rng));
      EXPECT_LE(g.max_rel_spread(), 1e-9) << m << "," << n << " d=" << d << " direct=" << g.direct << " a=" << g.route_a
                                          << " b=" << g.route_b << " c=" << g.route_c;
      EXPECT_GE(g.direct, -1e-9 * g.second * g.second);
    }
  }
}

TEST(MomentsGap, UnequalRanksAndAntiholomorphic) {
  // These exercise the r = l' level that the printed ranges leave out when m != n.
  Rng rng(5);
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {0, 2}, {0, 3}, {3, 0}}) {
    const FourthMomentGap g = fm_gap(random_kernel(2, m, n, rng));
    EXPECT_LE(g.max_rel_spread(), 1e-9) << m << "," << n;
  }
}

TEST(MomentsVariance, SpecExamples) {
  const Variances v = variance_formulas(e11());
  EXPECT_DOUBLE_EQ(v.dd, 1.0);
  EXPECT_EQ(variance_oracle(lift(e11()))[0], 1);
  const Variances w = variance_formulas(Kernel::basis(1, {0}, {}));
  EXPECT_EQ(w.dd, 0.0);
  EXPECT_EQ(w.dbar, 0.0);
  EXPECT_EQ(w.mixed, 0.0);
}

TEST(MomentsVariance, ExactOnOneDimensionalFixtures) {
  Rng rng(6);
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      if (m + n == 0) continue;
      const ExactKernel f = random_int_kernel(1, m, n, rng);
      EXPECT_EQ(variance_formulas_exact(f), variance_oracle(f)) << m << "," << n;
    }
}

TEST(MomentsVariance, FloatKernelsAgainstOracle) {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const int d = 1 + t % 2, m = 1 + t % 3, n = (t / 3) % 3;
    const Kernel f = random_kernel(d, m, n, rng);
    const Variances v = variance_formulas(f);
    const auto o = variance_oracle(lift(f));
    const double got[3] = {v.dd, v.dbar, v.mixed};
    for (int k = 0; k < 3; ++k) {
      const double want = o[k].get_d();
      EXPECT_LE(std::abs(got[k] - want), 1e-9 * std::max(1.0, want)) << m << "," << n << " #" << k;
    }
  }
}

TEST(MomentsSandwich, SpecExamples) {
  const Kernel f = symmetrize(Kernel::basis(2, {0, 1}, {}));
  const SandwichReport r = fmt_sandwich(f);
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.gap, 0.0);
  EXPECT_NEAR(r.gap, fm_gap(f).direct, 1e-12);

  const Complex c(1.5, 0.5);
  const double s = std::pow(std::abs(c), 4);
  const SandwichReport rs = fmt_sandwich(f * c);
  EXPECT_NEAR(rs.gap, s * r.gap, 1e-12);
  EXPECT_NEAR(rs.s_plain, s * r.s_plain, 1e-12);
  EXPECT_NEAR(rs.s_sym, s * r.s_sym, 1e-12);
  EXPECT_THROW(fmt_sandwich(Kernel::basis(2, {0}, {})), std::invalid_argument);
}

TEST(MomentsSandwich, GaussianLimitFamily) {
  double prev_plain = 1e300, prev_gap = 1e300;
  for (int d : {1, 2, 4, 8, 16, 32}) {
    const SandwichReport r = fmt_sandwich(diagonal_family(d));
    EXPECT_TRUE(r.ok());
    EXPECT_LT(r.s_plain, prev_plain);
    EXPECT_LT(r.gap, prev_gap);
    EXPECT_NEAR(r.gap, 6.0 / d, 1e-12);
    prev_plain = r.s_plain;
    prev_gap = r.gap;
  }
}

TEST(MomentsSandwich, RandomInstances) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const SandwichReport r = fmt_sandwich(random_kernel(2, 1 + t % 3, 1 + (t / 3) % 2, rng));
    EXPECT_TRUE(r.ok());
  }
}

TEST(MomentsEnergy, DistanceBehaviour) {
  const auto a = bivariate_normal_samples(1.0, 0.0, 0.0, 4000, 1);
  const auto b = bivariate_normal_samples(1.0, 0.0, 0.0, 4000, 2);
  const auto shifted = bivariate_normal_samples(4.0, 0.0, 0.0, 4000, 3);
  EXPECT_NEAR(sliced_energy_distance(a, a), 0.0, 1e-12);
  EXPECT_LT(sliced_energy_distance(a, b), 0.01);
  EXPECT_GT(sliced_energy_distance(a, shifted), 10 * sliced_energy_distance(a, b));
  // Degenerate covariance: real-valued samples.
  const auto real_line = bivariate_normal_samples(1.0, 1.0, 0.0, 100, 4);
  for (const Complex& z : real_line) EXPECT_NEAR(z.imag(), 0.0, 1e-12);
}

TEST(MomentsEnergy, SampleCovarianceMatches) {
  const auto s = bivariate_normal_samples(2.0, 0.6, -0.4, 100000, 5);
  double xx = 0, yy = 0, xy = 0;
  for (const Complex& z : s) {
    xx += z.real() * z.real();
    yy += z.imag() * z.imag();
    xy += z.real() * z.imag();
  }
  const double n = static_cast<double>(s.size());
  EXPECT_NEAR(xx / n, 1.3, 0.03);
  EXPECT_NEAR(yy / n, 0.7, 0.03);
  EXPECT_NEAR(xy / n, -0.2, 0.03);
}

TEST(MomentsDiagnostic, ConstantSequence) {
  const std::vector<Kernel> seq(3, e11());
  const auto rows = fmt_diagnostic(seq, 4000, 11);
  ASSERT_EQ(rows.size(), 3u);
  for (const FmtRow& r : rows) {
    EXPECT_NEAR(r.target, 6.0, 1e-12);
    EXPECT_NEAR(r.max_plain, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(r.sigma2, 1.0);
    EXPECT_NEAR(r.fourth, 9.0, 1e-12);
    EXPECT_NEAR(r.variances.dd, 1.0, 1e-12);
    EXPECT_GT(r.normality, 5 * r.normality_null);
  }
}

TEST(MomentsDiagnostic, DiagonalFamilyDecays) {
  std::vector<Kernel> seq;
  const std::vector<int> dims{1, 4, 16, 64};
  for (int d : dims) seq.push_back(diagonal_family(d));
  const auto rows = fmt_diagnostic(seq, 4000, 12);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double d = dims[k];
    EXPECT_NEAR(rows[k].sigma2, 1.0, 1e-12);
    EXPECT_NEAR(rows[k].max_plain * std::sqrt(d), 1.0, 1e-12);
    EXPECT_NEAR(rows[k].target, 6.0 / d, 1e-12);
    if (k > 0) EXPECT_LT(rows[k].target, rows[k - 1].target);
  }
  EXPECT_LT(rows.back().normality, rows.front().normality);
}

TEST(MomentsDiagnostic, RejectsMixedRanks) {
  EXPECT_THROW(fmt_diagnostic({e11(), Kernel::basis(1, {0, 0}, {})}, 1000, 1), std::invalid_argument);
}
