#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "chaoskit/chaos.hpp"

namespace chaoskit {

// Auxiliary kernels of F = I_{m,n}(f), h = reversed_conjugate(f), l = m+n, l' = 2(m^n).
// Index r is the total contraction order i+j.
//   theta_r, psi_r, eta_r, xi_r : type (l-r, l-r), r = 0..l
//   varsigma_r, phi_r, nu_r     : type (2m-r, 2n-r), r = 0..l'
// theta_r and varsigma_r carry the weight i/m and are zero when m = 0. Orders below
// min_r are left as empty scalar placeholders; the moment sums only need r >= 1.
template <class S>
struct BasicAuxKernels {
  int m = 0, n = 0;
  std::vector<BasicKernel<S>> theta, psi, eta, xi;
  std::vector<BasicKernel<S>> varsigma, phi, nu;
};
using AuxKernels = BasicAuxKernels<Complex>;
using ExactAuxKernels = BasicAuxKernels<QComplex>;

template <class S>
BasicAuxKernels<S> aux_kernels(const BasicKernel<S>& f, int min_r = 0) {
  using Ops = ScalarOps<S>;
  const int m = f.m(), n = f.n(), l = m + n, lp = 2 * std::min(m, n);
  if (l < 1) throw std::invalid_argument("aux_kernels: need m+n >= 1");
  const BasicKernel<S> h = reversed_conjugate(f);
  BasicAuxKernels<S> a;
  a.m = m;
  a.n = n;
  for (int r = 0; r <= l; ++r) {
    const BasicKernel<S> zero = r < min_r ? BasicKernel<S>() : BasicKernel<S>(f.d(), l - r, l - r);
    a.theta.push_back(zero);
    a.psi.push_back(zero);
    a.eta.push_back(zero);
    a.xi.push_back(zero);
  }
  for (int r = 0; r <= lp; ++r) {
    const BasicKernel<S> zero = r < min_r ? BasicKernel<S>() : BasicKernel<S>(f.d(), 2 * m - r, 2 * n - r);
    a.varsigma.push_back(zero);
    a.phi.push_back(zero);
    a.nu.push_back(zero);
  }
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j) {
      const int r = i + j;
      if (r < min_r) continue;
      const long long w = binomial(m, i) * binomial(m, i) * binomial(n, j) * binomial(n, j) * factorial(i) * factorial(j);
      const BasicKernel<S> fh = contract_sym(f, h, i, j);
      a.psi[r] += fh * Ops::from_int(w);
      a.eta[r] += fh * Ops::from_int(i * w);
      if (m > 0) a.theta[r] += fh * Ops::div_int(Ops::from_int(i * w), m);
      a.xi[r] += contract_sym(h, f, j, i) * Ops::from_int(j * w);
    }
  for (int i = 0; i <= std::min(m, n); ++i)
    for (int j = 0; j <= std::min(m, n); ++j) {
      const int r = i + j;
      if (r < min_r) continue;
      const long long w = binomial(m, i) * binomial(n, i) * binomial(n, j) * binomial(m, j) * factorial(i) * factorial(j);
      const BasicKernel<S> ff = contract_sym(f, f, i, j);
      a.phi[r] += ff * Ops::from_int(w);
      a.nu[r] += ff * Ops::from_int(i * w);
      if (m > 0) a.varsigma[r] += ff * Ops::div_int(Ops::from_int(i * w), m);
    }
  return a;
}

// (1/m) E[2 |DF|^2 |F|^2 + <DF, D conj F> conj(F)^2] through the polynomial oracle. For
// m = 0 the formula is applied to reversed_conjugate(f).
Rational fourth_moment_via_derivatives(const ExactKernel& f);

// E|F|^2, E[F^2] and E|F|^4 by Gaussian expectation of the polynomial of F.
struct DirectMoments {
  Rational second;
  QComplex square_mean;
  Rational fourth;
  Rational gap() const { return fourth - 2 * second * second - norm_sq(square_mean); }
};
DirectMoments direct_moments(const ExactKernel& f);

// E|F|^4 - 2 (E|F|^2)^2 - |E F^2|^2 three ways: (a) contraction norms with psi, (b)
// contraction norms with phi, (c) inner products <theta, psi>, <varsigma, phi>. Levels
// (2m-r, 2n-r) = (0,0) are excluded from the F^2 sums, and every other r >= 1 is kept.
struct FourthMomentGap {
  double route_a = 0.0, route_b = 0.0, route_c = 0.0;
  bool has_direct = false;
  double direct = 0.0;
  double second = 0.0;  // E|F|^2; spreads are relative to max(|values|, second^2)
  double max_rel_spread() const;
};
FourthMomentGap fm_gap(const Kernel& f, bool with_direct = true);

// Var |DF|^2, Var |Dbar F|^2, Var <DF, D conj F> by the eta / xi / nu sums.
struct Variances {
  double dd = 0.0, dbar = 0.0, mixed = 0.0;
};
Variances variance_formulas(const Kernel& f);
// Same sums in exact arithmetic.
std::array<Rational, 3> variance_formulas_exact(const ExactKernel& f);
// Oracle variances of the three polynomial quantities.
std::array<Rational, 3> variance_oracle(const ExactKernel& f);

// Contraction norms: f (x)_{i,j} h for 0 < i+j < l and f (x)_{i,j} f over the corrected range.
struct ContractionNorm {
  std::string label;  // "ff(i,j)" or "fh(i,j)"
  double plain = 0.0, sym = 0.0;
};
std::vector<ContractionNorm> contraction_norms(const Kernel& f);

struct SandwichReport {
  double s_plain = 0.0, s_sym = 0.0, gap = 0.0;
  bool gap_nonnegative = false, sym_below_plain = false, zero_together = false;
  bool ok() const { return gap_nonnegative && sym_below_plain && zero_together; }
  double ratio_plain() const { return s_plain > 0 ? gap / s_plain : 0.0; }
  double ratio_sym() const { return s_sym > 0 ? gap / s_sym : 0.0; }
};
SandwichReport fmt_sandwich(const Kernel& f);

// Sliced energy distance between two planar samples: the 1-D energy V-statistic along
// `directions` evenly spaced angles in [0, pi), averaged.
double sliced_energy_distance(const std::vector<Complex>& x, const std::vector<Complex>& y, int directions = 16);
// Draws (Re, Im) ~ N(0, C), C = [[s2+c, b], [b, s2-c]] / 2, packed as complex numbers.
std::vector<Complex> bivariate_normal_samples(double s2, double c, double b, std::size_t samples, std::uint64_t seed,
                                              unsigned workers = 1);

struct FmtRow {
  int k = 0;
  int d = 0;
  std::vector<ContractionNorm> norms;
  Variances variances;
  double sigma2 = 0.0;
  Complex square_mean;  // c + ib
  double fourth = 0.0;
  double target = 0.0;  // |E|F|^4 - (c^2 + b^2 + 2 sigma^4)|
  double max_plain = 0.0, max_sym = 0.0;
  double normality = 0.0, normality_null = 0.0;
};
std::vector<FmtRow> fmt_diagnostic(const std::vector<Kernel>& sequence, std::size_t samples, std::uint64_t seed,
                                   unsigned workers = 1);

}  // namespace chaoskit
