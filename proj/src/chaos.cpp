#include "chaoskit/chaos.hpp"

#include <numbers>
#include <stdexcept>

#include "chaoskit/hermite.hpp"

namespace chaoskit {

ExactExpansion lift(const ChaosExpansion& F) {
  ExactExpansion out(F.d());
  for (const auto& [lv, f] : F.levels()) out.add(lift(f));
  return out;
}

ChaosExpansion to_double(const ExactExpansion& F) {
  ChaosExpansion out(F.d());
  for (const auto& [lv, f] : F.levels()) out.add(to_double(f));
  return out;
}

double max_abs_diff(const ChaosExpansion& a, const ChaosExpansion& b) {
  if (a.d() != b.d()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double worst = 0.0;
  for (const auto& [lv, f] : a.levels()) worst = std::max(worst, max_abs_diff(f, project(b, lv.first, lv.second)));
  for (const auto& [lv, g] : b.levels())
    if (!a.has(lv.first, lv.second)) worst = std::max(worst, max_abs_diff(g, Kernel(g.d(), g.m(), g.n())));
  return worst;
}

namespace {

// Occurrence counts (a_0..a_{d-1}, b_0..b_{d-1}) of a flat kernel index.
template <class S>
std::vector<int> index_counts(const BasicKernel<S>& f, const std::vector<int>& idx) {
  std::vector<int> c(2 * static_cast<std::size_t>(f.d()), 0);
  for (int k = 0; k < f.m(); ++k) ++c[idx[k]];
  for (int k = 0; k < f.n(); ++k) ++c[f.d() + idx[f.m() + k]];
  return c;
}

// J_{a,b}(zeta, 1) coefficients: index r holds (-1)^r r! C(a,r) C(b,r).
Rational j_coeff(int a, int b, int r) {
  BigInt c = big_factorial(r) * big_binomial(a, r) * big_binomial(b, r);
  return Rational(r % 2 ? BigInt(-c) : c);
}

// prod_k J_{a_k, b_k}(zeta_k, 1) * coeff added into out.
void add_basis_poly(WickPoly& out, const std::vector<int>& counts, const QComplex& coeff) {
  const int d = out.d();
  std::vector<int> r(static_cast<std::size_t>(d), 0), top(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) top[k] = std::min(counts[k], counts[d + k]);
  WickPoly::Exponent e(counts.size());
  while (true) {
    QComplex c = coeff;
    for (int k = 0; k < d; ++k) {
      e[k] = counts[k] - r[k];
      e[d + k] = counts[d + k] - r[k];
      if (r[k] > 0) c *= j_coeff(counts[k], counts[d + k], r[k]);
    }
    out.add_term(e, c);
    int k = d - 1;
    for (; k >= 0; --k) {
      if (++r[k] <= top[k]) break;
      r[k] = 0;
    }
    if (k < 0) break;
  }
}

}  // namespace

Complex eval_integral(const Kernel& f, const std::vector<Complex>& zeta) {
  if (static_cast<int>(zeta.size()) != f.d()) throw std::invalid_argument("eval_integral: sample dimension");
  double scale = 0.0;
  for (const auto& c : f.coeffs()) scale = std::max(scale, std::abs(c));
  if (!is_symmetric(f, 1e-12 * std::max(1.0, scale))) throw std::invalid_argument("eval_integral: kernel is not symmetric");
  const int d = f.d(), m = f.m(), n = f.n();
  // table[k][a][b] = J_{a,b}(zeta_k, 1)
  std::vector<Complex> table(static_cast<std::size_t>(d * (m + 1) * (n + 1)));
  for (int k = 0; k < d; ++k)
    for (int a = 0; a <= m; ++a)
      for (int b = 0; b <= n; ++b) table[(k * (m + 1) + a) * (n + 1) + b] = eval_J(a, b, zeta[k], 1.0, 64);
  Complex acc = 0.0;
  std::vector<int> ca(static_cast<std::size_t>(d)), cb(static_cast<std::size_t>(d));
  std::vector<int> idx(static_cast<std::size_t>(m + n), 0);
  std::size_t x = 0;
  do {
    const Complex c = f[x++];
    if (c == Complex(0.0, 0.0)) continue;
    for (int k = 0; k < m; ++k) ++ca[idx[k]];
    for (int k = 0; k < n; ++k) ++cb[idx[m + k]];
    // Visit only the coordinates present in idx, clearing the counts as they are used.
    Complex v = c;
    for (int p = 0; p < m + n; ++p) {
      const int k = idx[p];
      if (!ca[k] && !cb[k]) continue;
      v *= table[(k * (m + 1) + ca[k]) * (n + 1) + cb[k]];
      ca[k] = cb[k] = 0;
    }
    acc += v;
  } while (detail::next_index(idx, d));
  return acc;
}

Complex eval_expansion(const ChaosExpansion& F, const std::vector<Complex>& zeta) {
  Complex acc = 0.0;
  for (const auto& [lv, f] : F.levels()) acc += eval_integral(f, zeta);
  return acc;
}

WickPoly kernel_to_poly(const ExactKernel& f) {
  std::map<std::vector<int>, QComplex> classes;
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x].is_zero()) continue;
    classes[index_counts(f, f.unflat(x))] += f[x];
  }
  WickPoly out(f.d());
  for (const auto& [counts, c] : classes)
    if (!c.is_zero()) add_basis_poly(out, counts, c);
  return out;
}

WickPoly kernel_to_poly(const Kernel& f) { return kernel_to_poly(lift(f)); }

WickPoly expansion_to_poly(const ExactExpansion& F) {
  WickPoly out(F.d());
  for (const auto& [lv, f] : F.levels()) out += kernel_to_poly(f);
  return out;
}

WickPoly expansion_to_poly(const ChaosExpansion& F) { return expansion_to_poly(lift(F)); }

ExactExpansion stroock_expand(const WickPoly& P) {
  const int d = P.d();
  int max_p = 0, max_q = 0;
  for (const auto& [e, c] : P.terms()) {
    int a = 0, b = 0;
    for (int k = 0; k < d; ++k) {
      a += e[k];
      b += e[d + k];
    }
    max_p = std::max(max_p, a);
    max_q = std::max(max_q, b);
  }
  ExactExpansion out(d);
  for (int p = 0; p <= max_p; ++p)
    for (int q = 0; q <= max_q; ++q) {
      ExactKernel f(d, p, q);
      const Rational norm_pq = Rational(big_factorial(p) * big_factorial(q));
      std::map<std::size_t, QComplex> by_class;
      bool any = false;
      for (std::size_t x = 0; x < f.size(); ++x) {
        const std::vector<int> idx = f.unflat(x);
        const std::size_t rep = detail::canonical_flat(f, idx);
        auto it = by_class.find(rep);
        if (it == by_class.end()) {
          WickPoly g = P;
          for (int k = 0; k < p && !g.is_zero(); ++k) g = g.d_z(idx[k]);
          for (int k = 0; k < q && !g.is_zero(); ++k) g = g.d_zbar(idx[p + k]);
          it = by_class.emplace(rep, expect_gaussian(g) / norm_pq).first;
        }
        f[x] = it->second;
        any = any || !it->second.is_zero();
      }
      if (any) out.add(f);
    }
  return out;
}

double parseval_norm_sq(const ChaosExpansion& F) {
  double acc = 0.0;
  for (const auto& [lv, f] : F.levels()) {
    const double nf = norm(f);
    acc += std::tgamma(lv.first + 1.0) * std::tgamma(lv.second + 1.0) * nf * nf;
  }
  return acc;
}

WickMonomialReport wick_monomial_check(int p, int q, const ExactKernel& f) {
  if (f.m() != 1 || f.n() != 0) throw std::invalid_argument("wick_monomial_check: f must be a (1,0) kernel");
  if (p < 0 || q < 0 || p + q > kDefaultDegreeCap) throw std::domain_error("wick_monomial_check: degree outside cap");
  WickMonomialReport rep;
  rep.p = p;
  rep.q = q;
  const ExactKernel fbar = reversed_conjugate(f);
  ExactKernel top = ExactKernel::scalar(QComplex(1), f.d());
  for (int k = 0; k < p; ++k) top = tensor(top, f);
  for (int k = 0; k < q; ++k) top = tensor(top, fbar);
  top = symmetrize(top);
  const WickPoly lhs = kernel_to_poly(top);

  const WickPoly z = kernel_to_poly(f), zb = z.conj();
  const QComplex var(norm_sq_exact(f));
  WickPoly rhs(f.d());
  for (int k = 0; k <= std::min(p, q); ++k) {
    const long long w = factorial(k) * binomial(p, k) * binomial(q, k);
    QComplex c = QComplex(k % 2 ? -w : w);
    for (int i = 0; i < k; ++i) c *= var;
    rhs += z.pow(p - k) * zb.pow(q - k) * c;
  }
  rep.matches_display = lhs == rhs;

  ExactExpansion prod(ExactKernel::scalar(QComplex(1), f.d()));
  for (int k = 0; k < p; ++k) prod = expansion_product(prod, ExactExpansion(f));
  for (int k = 0; k < q; ++k) prod = expansion_product(prod, ExactExpansion(fbar));
  rep.matches_projection = project(prod, p, q) == top;
  return rep;
}

OUParams::OUParams(double theta_, double t_) : theta(theta_), t(t_) {
  if (!(std::abs(theta) < std::numbers::pi / 2)) throw std::invalid_argument("OUParams: theta must lie in (-pi/2, pi/2)");
  if (!(t >= 0.0)) throw std::invalid_argument("OUParams: t must be non-negative");
}

Complex ou_eigenvalue(int m, int n, const OUParams& params) {
  const double re = (m + n) * std::cos(params.theta);
  const double im = (m - n) * std::sin(params.theta);
  return std::exp(-Complex(re, im) * params.t);
}

ChaosExpansion ou_semigroup(const ChaosExpansion& F, const OUParams& params) {
  ChaosExpansion out(F.d());
  for (const auto& [lv, f] : F.levels()) out.add(f * ou_eigenvalue(lv.first, lv.second, params));
  return out;
}

McEstimate mehler_estimate(const WickPoly& P, const OUParams& params, const std::vector<Complex>& zeta,
                           std::size_t samples, std::uint64_t seed, unsigned workers) {
  if (samples < 1000) throw std::invalid_argument("mehler_estimate: need at least 1000 samples");
  if (static_cast<int>(zeta.size()) != P.d()) throw std::invalid_argument("mehler_estimate: point dimension");
  const CompiledPoly poly(P);
  const Complex decay = std::exp(-params.r() * params.t);
  const double spread = std::sqrt(1.0 - std::exp(-2.0 * params.t * std::cos(params.theta)));
  return block_monte_carlo(samples, seed, workers, [&](Rng& rng) {
    std::vector<Complex> pt(zeta.size());
    for (std::size_t k = 0; k < pt.size(); ++k) pt[k] = decay * zeta[k] + spread * draw_complex_gaussian(rng);
    return poly(pt);
  });
}

Rational abs_moment_exact(const ExactKernel& f, int r, int cap) {
  if (r <= 0 || r % 2) throw std::domain_error("abs_moment_exact: r must be a positive even integer");
  if (r * f.rank() > cap) throw std::domain_error("abs_moment_exact: r (m+n) exceeds degree cap");
  const WickPoly p = kernel_to_poly(f);
  return expect_gaussian((p * p.conj()).pow(r / 2)).re;
}

double hypercontractivity_margin(const ExactKernel& f, int r, int cap) {
  const double e2 = abs_moment_exact(f, 2, cap).get_d();
  const double er = abs_moment_exact(f, r, cap).get_d();
  return std::pow(r - 1.0, f.rank() / 2.0) * std::sqrt(e2) - std::pow(er, 1.0 / r);
}

WickPoly stratonovich_partial_sum(const ExactKernel& f, int n) {
  if (n < 0 || n > f.d()) throw std::invalid_argument("stratonovich_partial_sum: need 0 <= n <= d");
  WickPoly out(f.d());
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x].is_zero()) continue;
    const std::vector<int> idx = f.unflat(x);
    if (std::any_of(idx.begin(), idx.end(), [n](int v) { return v >= n; })) continue;
    out.add_term(index_counts(f, idx), f[x]);
  }
  return out;
}

IndependenceReport independence_test(const Kernel& f, const Kernel& g, double tol) {
  if (f.rank() < 1 || g.rank() < 1) throw std::invalid_argument("independence_test: need a+b >= 1 and c+d >= 1");
  const Kernel h = reversed_conjugate(g);
  IndependenceReport rep;
  rep.independent = true;
  auto check = [&](const std::string& name, const Kernel& right, int i, int j) {
    if (i > std::min(f.m(), right.n()) || j > std::min(f.n(), right.m())) {
      rep.skipped.push_back(name);
      return;
    }
    const double nv = norm(contract(f, right, i, j));
    rep.norms.emplace_back(name, nv);
    if (nv > tol) rep.independent = false;
  };
  check("f(x)_{1,0}g", g, 1, 0);
  check("f(x)_{0,1}g", g, 0, 1);
  check("f(x)_{1,0}h", h, 1, 0);
  check("f(x)_{0,1}h", h, 0, 1);
  return rep;
}

}  // namespace chaoskit
