#include "chaoskit/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace chaoskit {

namespace {

double sq_norm(const Kernel& f) {
  const double v = norm(f);
  return v * v;
}
Rational sq_norm(const ExactKernel& f) { return norm_sq_exact(f); }

double re_inner(const Kernel& f, const Kernel& g) { return inner(f, g).real(); }

// Levels (2m-r, 2n-r) of F^2 that are not constant. The paper's r <= l'-1 misses r = l'
// when m != n.
bool square_level_kept(int m, int n, int r) { return r >= 1 && !(2 * m - r == 0 && 2 * n - r == 0); }

template <class S>
auto variance_sums(const BasicKernel<S>& f) {
  const int m = f.m(), n = f.n(), l = m + n;
  const BasicAuxKernels<S> a = aux_kernels(f, 1);
  using Real = decltype(sq_norm(f));
  std::array<Real, 3> v{Real(0), Real(0), Real(0)};
  for (int r = 1; r <= l - 1; ++r) {
    const long long w = factorial(l - r) * factorial(l - r);
    v[0] += Real(static_cast<long>(w)) * sq_norm(a.eta[r]);
    v[1] += Real(static_cast<long>(w)) * sq_norm(a.xi[r]);
    if (r < static_cast<int>(a.nu.size())) v[2] += Real(static_cast<long>(factorial(2 * m - r) * factorial(2 * n - r))) * sq_norm(a.nu[r]);
  }
  return v;
}

WickPoly sum_products(const std::vector<WickPoly>& x, const std::vector<WickPoly>& y) {
  WickPoly out(x.front().d());
  for (std::size_t k = 0; k < x.size(); ++k) out += x[k] * y[k].conj();
  return out;
}

// |DF|^2, |Dbar F|^2 and <DF, D conj F> as polynomials.
std::array<WickPoly, 3> derivative_quadratics(const WickPoly& P) {
  const WickPoly cP = P.conj();
  std::vector<WickPoly> dp, dbp, dcp;
  for (int k = 0; k < P.d(); ++k) {
    dp.push_back(P.d_z(k));
    dbp.push_back(P.d_zbar(k));
    dcp.push_back(cP.d_z(k));
  }
  return {sum_products(dp, dp), sum_products(dbp, dbp), sum_products(dp, dcp)};
}

Rational oracle_variance(const WickPoly& X) {
  return expect_product_conj(X, X).re - norm_sq(expect_gaussian(X));
}

// Sum over i < j of |v_i - v_j| for sorted v.
double pair_abs_sum(const std::vector<double>& v) {
  double s = 0.0;
  const double n = static_cast<double>(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) s += v[k] * (2.0 * static_cast<double>(k) - n + 1.0);
  return s;
}

}  // namespace

Rational fourth_moment_via_derivatives(const ExactKernel& f) {
  if (f.m() == 0 && f.n() == 0) throw std::invalid_argument("fourth_moment_via_derivatives: need m+n >= 1");
  const ExactKernel g = f.m() == 0 ? reversed_conjugate(f) : f;
  const WickPoly P = kernel_to_poly(g);
  const auto q = derivative_quadratics(P);
  const WickPoly abs2 = P * P.conj();
  // E[N1 |P|^2] = E[N1 conj(|P|^2)] and E[N3 conj(P)^2] = E[N3 conj(P^2)].
  const QComplex total = QComplex(2) * expect_product_conj(q[0], abs2) + expect_product_conj(q[2], P * P);
  if (total.im != 0) throw std::logic_error("fourth_moment_via_derivatives: non-real expectation");
  return total.re / Rational(g.m());
}

DirectMoments direct_moments(const ExactKernel& f) {
  const WickPoly P = kernel_to_poly(f);
  const WickPoly P2 = P * P;
  DirectMoments out;
  out.second = expect_product_conj(P, P).re;
  out.square_mean = expect_gaussian(P2);
  out.fourth = expect_product_conj(P2, P2).re;
  return out;
}

double FourthMomentGap::max_rel_spread() const {
  std::vector<double> v{route_a, route_b, route_c};
  if (has_direct) v.push_back(direct);
  double scale = second * second;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / scale;
}

FourthMomentGap fm_gap(const Kernel& f, bool with_direct) {
  const int m = f.m(), n = f.n(), l = m + n, lp = 2 * std::min(m, n);
  if (l < 1) throw std::invalid_argument("fm_gap: need m+n >= 1");
  const Kernel h = reversed_conjugate(f);
  const AuxKernels a = aux_kernels(f, 1);
  const double mn2 = std::pow(static_cast<double>(factorial(m) * factorial(n)), 2);
  FourthMomentGap out;
  out.second = static_cast<double>(factorial(m) * factorial(n)) * sq_norm(f);

  double psi_sum = 0.0, phi_sum = 0.0;
  for (int r = 1; r <= l - 1; ++r) psi_sum += std::pow(static_cast<double>(factorial(l - r)), 2) * sq_norm(a.psi[r]);
  for (int r = 1; r <= lp; ++r)
    if (square_level_kept(m, n, r))
      phi_sum += static_cast<double>(factorial(2 * m - r) * factorial(2 * n - r)) * sq_norm(a.phi[r]);

  double ff_sum = 0.0;
  for (int i = 0; i <= std::min(m, n); ++i)
    for (int j = 0; j <= std::min(m, n); ++j)
      if (square_level_kept(m, n, i + j))
        ff_sum += static_cast<double>(binomial(m, i) * binomial(n, i) * binomial(n, j) * binomial(m, j)) * mn2 *
                  sq_norm(contract(f, f, i, j));
  double fh_sum = 0.0;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j)
      if (i + j > 0 && i + j < l)
        fh_sum += static_cast<double>(binomial(m, i) * binomial(m, i) * binomial(n, j) * binomial(n, j)) * mn2 *
                  sq_norm(contract(f, h, i, j));
  out.route_a = ff_sum + psi_sum;
  out.route_b = fh_sum + phi_sum;

  // theta and varsigma divide by m, so route (c) runs on conj F when m = 0.
  const AuxKernels c = m == 0 ? aux_kernels(h, 1) : a;
  const int cm = c.m, cn = c.n;
  double route_c = 0.0;
  for (int r = 1; r <= l - 1; ++r)
    route_c += 2.0 * std::pow(static_cast<double>(factorial(l - r)), 2) * re_inner(c.theta[r], c.psi[r]);
  for (int r = 1; r <= lp; ++r)
    if (square_level_kept(cm, cn, r))
      route_c += static_cast<double>(factorial(2 * cm - r) * factorial(2 * cn - r)) * re_inner(c.varsigma[r], c.phi[r]);
  out.route_c = route_c;

  if (with_direct) {
    out.has_direct = true;
    out.direct = direct_moments(lift(f)).gap().get_d();
  }
  return out;
}

Variances variance_formulas(const Kernel& f) {
  const auto v = variance_sums(f);
  return {v[0], v[1], v[2]};
}

std::array<Rational, 3> variance_formulas_exact(const ExactKernel& f) { return variance_sums(f); }

std::array<Rational, 3> variance_oracle(const ExactKernel& f) {
  const auto q = derivative_quadratics(kernel_to_poly(f));
  return {oracle_variance(q[0]), oracle_variance(q[1]), oracle_variance(q[2])};
}

std::vector<ContractionNorm> contraction_norms(const Kernel& f) {
  const int m = f.m(), n = f.n(), l = m + n;
  const Kernel h = reversed_conjugate(f);
  std::vector<ContractionNorm> out;
  auto label = [](const char* kind, int i, int j) {
    return std::string(kind) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j)
      if (i + j > 0 && i + j < l) {
        const Kernel c = contract(f, h, i, j);
        out.push_back({label("fh", i, j), norm(c), norm(symmetrize(c))});
      }
  for (int i = 0; i <= std::min(m, n); ++i)
    for (int j = 0; j <= std::min(m, n); ++j)
      if (square_level_kept(m, n, i + j)) {
        const Kernel c = contract(f, f, i, j);
        out.push_back({label("ff", i, j), norm(c), norm(symmetrize(c))});
      }
  return out;
}

SandwichReport fmt_sandwich(const Kernel& f) {
  if (f.rank() < 2) throw std::invalid_argument("fmt_sandwich: need m+n >= 2");
  SandwichReport rep;
  for (const ContractionNorm& c : contraction_norms(f)) {
    rep.s_plain += c.plain * c.plain;
    rep.s_sym += c.sym * c.sym;
  }
  rep.gap = fm_gap(f, false).route_a;
  rep.gap_nonnegative = rep.gap >= -1e-9;
  rep.sym_below_plain = rep.s_sym <= rep.s_plain + 1e-9;
  rep.zero_together = (std::abs(rep.gap) <= 1e-9) == (rep.s_plain <= 1e-9);
  return rep;
}

double sliced_energy_distance(const std::vector<Complex>& x, const std::vector<Complex>& y, int directions) {
  if (x.empty() || y.empty() || directions < 1) throw std::invalid_argument("sliced_energy_distance: empty input");
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  double total = 0.0;
  std::vector<double> px(x.size()), py(y.size()), pool;
  for (int t = 0; t < directions; ++t) {
    const Complex u = std::polar(1.0, std::numbers::pi * t / directions);
    for (std::size_t k = 0; k < x.size(); ++k) px[k] = x[k].real() * u.real() + x[k].imag() * u.imag();
    for (std::size_t k = 0; k < y.size(); ++k) py[k] = y[k].real() * u.real() + y[k].imag() * u.imag();
    std::sort(px.begin(), px.end());
    std::sort(py.begin(), py.end());
    pool.resize(px.size() + py.size());
    std::merge(px.begin(), px.end(), py.begin(), py.end(), pool.begin());
    const double sx = pair_abs_sum(px), sy = pair_abs_sum(py);
    const double cross = pair_abs_sum(pool) - sx - sy;
    total += 2.0 * cross / (nx * ny) - 2.0 * sx / (nx * nx) - 2.0 * sy / (ny * ny);
  }
  return total / directions;
}

std::vector<Complex> bivariate_normal_samples(double s2, double c, double b, std::size_t samples, std::uint64_t seed,
                                              unsigned workers) {
  Eigen::Matrix2d C;
  C << s2 + c, b, b, s2 - c;
  C *= 0.5;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(C);
  const Eigen::Vector2d root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix2d A = eig.eigenvectors() * root.asDiagonal();
  return block_samples(samples, seed, workers, [&](Rng& rng) {
    // draw_complex_gaussian has E|z|^2 = 1, so sqrt2 * (Re, Im) is standard normal.
    const Complex z = std::sqrt(2.0) * draw_complex_gaussian(rng);
    const Eigen::Vector2d v = A * Eigen::Vector2d(z.real(), z.imag());
    return Complex(v(0), v(1));
  });
}

std::vector<FmtRow> fmt_diagnostic(const std::vector<Kernel>& sequence, std::size_t samples, std::uint64_t seed,
                                   unsigned workers) {
  if (sequence.empty()) return {};
  const int m = sequence.front().m(), n = sequence.front().n();
  if (m + n < 2) throw std::invalid_argument("fmt_diagnostic: need m+n >= 2");
  std::vector<FmtRow> rows;
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    const Kernel& f = sequence[k];
    if (f.m() != m || f.n() != n) throw std::invalid_argument("fmt_diagnostic: inconsistent ranks in the sequence");
    FmtRow row;
    row.k = static_cast<int>(k);
    row.d = f.d();
    row.norms = contraction_norms(f);
    for (const ContractionNorm& c : row.norms) {
      row.max_plain = std::max(row.max_plain, c.plain);
      row.max_sym = std::max(row.max_sym, c.sym);
    }
    row.variances = variance_formulas(f);
    row.sigma2 = static_cast<double>(factorial(m) * factorial(n)) * sq_norm(f);
    // E F^2 is the (0,0) level of the product expansion.
    row.square_mean = project(product_pair(f, f), 0, 0)[0];
    const double gap = fm_gap(f, false).route_a;
    row.fourth = gap + 2.0 * row.sigma2 * row.sigma2 + std::norm(row.square_mean);
    row.target = std::abs(gap);

    const std::uint64_t base = derive_seed(seed, k);
    const CompiledPoly poly(kernel_to_poly(f));
    const std::size_t d = static_cast<std::size_t>(f.d());
    const std::vector<Complex> xs =
        block_samples(samples, derive_seed(base, 0), workers, [&](Rng& rng) { return poly(draw_complex_gaussians(rng, d)); });
    const double c = row.square_mean.real(), b = row.square_mean.imag();
    const std::vector<Complex> ref = bivariate_normal_samples(row.sigma2, c, b, samples, derive_seed(base, 1), workers);
    const std::vector<Complex> null = bivariate_normal_samples(row.sigma2, c, b, samples, derive_seed(base, 2), workers);
    row.normality = sliced_energy_distance(xs, ref);
    row.normality_null = sliced_energy_distance(null, ref);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace chaoskit
