#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chaoskit/exact.hpp"
#include "chaoskit/hermite.hpp"
#include "chaoskit/polyfun.hpp"
#include "chaoskit/random.hpp"
#include "chaoskit/tensor.hpp"

namespace chaoskit {

// Finite chaos decomposition F = sum_{(m,n)} I_{m,n}(f_{m,n}) over C^d. The (0,0) kernel
// is E[F]. Kernels are expected to be symmetric.
template <class S>
class BasicExpansion {
 public:
  using Level = std::pair<int, int>;
  using KernelT = BasicKernel<S>;

  explicit BasicExpansion(int d = 1) : d_(d) {}
  explicit BasicExpansion(const KernelT& f) : d_(f.d()) { add(f); }

  int d() const { return d_; }
  const std::map<Level, KernelT>& levels() const { return levels_; }
  bool has(int m, int n) const { return levels_.count({m, n}) > 0; }

  void add(const KernelT& f) {
    if (f.d() != d_) throw std::invalid_argument("ChaosExpansion: dimension mismatch");
    auto [it, inserted] = levels_.try_emplace({f.m(), f.n()}, f);
    if (!inserted) it->second += f;
  }

  BasicExpansion& operator+=(const BasicExpansion& o) {
    if (o.d_ != d_) throw std::invalid_argument("ChaosExpansion: dimension mismatch");
    for (const auto& [lv, f] : o.levels_) add(f);
    return *this;
  }
  BasicExpansion& operator*=(const S& s) {
    for (auto& [lv, f] : levels_) f *= s;
    return *this;
  }
  friend BasicExpansion operator+(BasicExpansion a, const BasicExpansion& b) { return a += b; }
  friend BasicExpansion operator*(BasicExpansion a, const S& s) { return a *= s; }

  // Drops levels whose kernels are exactly zero.
  BasicExpansion pruned() const {
    BasicExpansion out(d_);
    for (const auto& [lv, f] : levels_)
      if (!f.is_zero()) out.levels_.emplace(lv, f);
    return out;
  }

  friend bool operator==(const BasicExpansion& a, const BasicExpansion& b) {
    const BasicExpansion pa = a.pruned(), pb = b.pruned();
    return pa.d_ == pb.d_ && pa.levels_ == pb.levels_;
  }

 private:
  int d_;
  std::map<Level, KernelT> levels_;
};

using ChaosExpansion = BasicExpansion<Complex>;
using ExactExpansion = BasicExpansion<QComplex>;

ExactExpansion lift(const ChaosExpansion& F);
ChaosExpansion to_double(const ExactExpansion& F);
double max_abs_diff(const ChaosExpansion& a, const ChaosExpansion& b);

// pi_{m,n}: the stored kernel or the zero kernel.
template <class S>
BasicKernel<S> project(const BasicExpansion<S>& F, int m, int n) {
  auto it = F.levels().find({m, n});
  return it == F.levels().end() ? BasicKernel<S>(F.d(), m, n) : it->second;
}

// I_{m,n}(f)(zeta) = sum_{p,q} f[p;q] prod_k J_{m_k(p), n_k(q)}(zeta_k, 1). Rejects a
// kernel that is not symmetric to 1e-12 relative.
Complex eval_integral(const Kernel& f, const std::vector<Complex>& zeta);
Complex eval_expansion(const ChaosExpansion& F, const std::vector<Complex>& zeta);

// Polynomial of I_{m,n}(f). Accepts unsymmetrized kernels: the result equals that of the
// symmetrization, since the summand depends on index counts only.
WickPoly kernel_to_poly(const ExactKernel& f);
WickPoly kernel_to_poly(const Kernel& f);
WickPoly expansion_to_poly(const ExactExpansion& F);
WickPoly expansion_to_poly(const ChaosExpansion& F);

// f_{p,q}[i; j] = E[d_{i_1}..d_{i_p} dbar_{j_1}..dbar_{j_q} P] / (p! q!).
ExactExpansion stroock_expand(const WickPoly& P);

// E|F|^2 = sum m! n! |f_{m,n}|^2.
double parseval_norm_sq(const ChaosExpansion& F);

// Product formula: I_{a,b}(f) I_{c,dd}(g) = sum_{i,j} C(a,i) C(dd,i) C(b,j) C(c,j) i! j!
// I_{a+c-i-j, b+dd-i-j}(f (x)~_{i,j} g).
template <class S>
BasicExpansion<S> product_pair(const BasicKernel<S>& f, const BasicKernel<S>& g) {
  using Ops = ScalarOps<S>;
  if (f.d() != g.d()) throw std::invalid_argument("product_pair: dimension mismatch");
  const int a = f.m(), b = f.n(), c = g.m(), dd = g.n();
  BasicExpansion<S> out(f.d());
  for (int i = 0; i <= std::min(a, dd); ++i)
    for (int j = 0; j <= std::min(b, c); ++j) {
      const long long w = binomial(a, i) * binomial(dd, i) * binomial(b, j) * binomial(c, j) * factorial(i) * factorial(j);
      out.add(contract_sym(f, g, i, j) * Ops::from_int(w));
    }
  return out;
}

template <class S>
BasicExpansion<S> expansion_product(const BasicExpansion<S>& F, const BasicExpansion<S>& G) {
  if (F.d() != G.d()) throw std::invalid_argument("expansion_product: dimension mismatch");
  BasicExpansion<S> out(F.d());
  for (const auto& [lf, f] : F.levels())
    for (const auto& [lg, g] : G.levels()) out += product_pair(f, g);
  return out;
}

// Top term of the product: pi_{m+p, n+q}(I(f) I(g)) = I(symmetrize(f (x) g)).
template <class S>
BasicKernel<S> wick_product(const BasicKernel<S>& f, const BasicKernel<S>& g) {
  return symmetrize(tensor(f, g));
}

struct WickMonomialReport {
  int p = 0;
  int q = 0;
  bool matches_display = false;     // Eq. (wtime) alternating sum, as polynomials
  bool matches_projection = false;  // top level of the iterated product formula
};
// Checks :Z(f)^p conj(Z(f))^q: for the (1,0) kernel f, exactly.
WickMonomialReport wick_monomial_check(int p, int q, const ExactKernel& f);

// Component k: (D_k F)_{m-1,n}[p'; q] = m f[k, p'; q].
template <class S>
std::vector<BasicExpansion<S>> malliavin_D(const BasicExpansion<S>& F) {
  using Ops = ScalarOps<S>;
  std::vector<BasicExpansion<S>> out(static_cast<std::size_t>(F.d()), BasicExpansion<S>(F.d()));
  for (const auto& [lv, f] : F.levels()) {
    if (f.m() == 0) continue;
    for (int k = 0; k < F.d(); ++k) {
      BasicKernel<S> g(F.d(), f.m() - 1, f.n());
      for (std::size_t x = 0; x < g.size(); ++x) {
        std::vector<int> idx = g.unflat(x);
        idx.insert(idx.begin(), k);
        g[x] = f.at(idx) * Ops::from_int(f.m());
      }
      out[static_cast<std::size_t>(k)].add(g);
    }
  }
  return out;
}

// Component k: (Dbar_k F)_{m,n-1}[p; q'] = n f[p; k, q'].
template <class S>
std::vector<BasicExpansion<S>> malliavin_Dbar(const BasicExpansion<S>& F) {
  using Ops = ScalarOps<S>;
  std::vector<BasicExpansion<S>> out(static_cast<std::size_t>(F.d()), BasicExpansion<S>(F.d()));
  for (const auto& [lv, f] : F.levels()) {
    if (f.n() == 0) continue;
    for (int k = 0; k < F.d(); ++k) {
      BasicKernel<S> g(F.d(), f.m(), f.n() - 1);
      for (std::size_t x = 0; x < g.size(); ++x) {
        std::vector<int> idx = g.unflat(x);
        idx.insert(idx.begin() + f.m(), k);
        g[x] = f.at(idx) * Ops::from_int(f.n());
      }
      out[static_cast<std::size_t>(k)].add(g);
    }
  }
  return out;
}

namespace detail {

// e_k prepended to the holomorphic block (bar = false) or ebar_k to the antiholomorphic block.
template <class S>
BasicKernel<S> prepend_direction(const BasicKernel<S>& g, int k, bool bar) {
  BasicKernel<S> out(g.d(), g.m() + (bar ? 0 : 1), g.n() + (bar ? 1 : 0));
  for (std::size_t x = 0; x < g.size(); ++x) {
    std::vector<int> idx = g.unflat(x);
    idx.insert(idx.begin() + (bar ? g.m() : 0), k);
    out.at(idx) = g[x];
  }
  return out;
}

template <class S>
BasicExpansion<S> divergence_impl(const std::vector<BasicExpansion<S>>& u, bool bar) {
  if (u.empty()) throw std::invalid_argument("divergence: empty family");
  const int d = u.front().d();
  if (static_cast<int>(u.size()) != d) throw std::invalid_argument("divergence: family size must equal d");
  std::map<std::pair<int, int>, BasicKernel<S>> raw;
  for (int k = 0; k < d; ++k)
    for (const auto& [lv, g] : u[static_cast<std::size_t>(k)].levels()) {
      BasicKernel<S> t = prepend_direction(g, k, bar);
      auto [it, inserted] = raw.try_emplace({t.m(), t.n()}, t);
      if (!inserted) it->second += t;
    }
  BasicExpansion<S> out(d);
  for (const auto& [lv, t] : raw) out.add(symmetrize(t));
  return out;
}

}  // namespace detail

// Level-(m,n) family g_k maps to I_{m+1,n}(symmetrize(sum_k e_k (x) g_k)).
template <class S>
BasicExpansion<S> divergence(const std::vector<BasicExpansion<S>>& u) {
  return detail::divergence_impl(u, false);
}
template <class S>
BasicExpansion<S> divergence_bar(const std::vector<BasicExpansion<S>>& u) {
  return detail::divergence_impl(u, true);
}

template <class S>
BasicExpansion<S> ou_L(const BasicExpansion<S>& F) {
  BasicExpansion<S> out(F.d());
  for (const auto& [lv, f] : F.levels()) out.add(f * ScalarOps<S>::from_int(lv.first));
  return out;
}
template <class S>
BasicExpansion<S> ou_Lbar(const BasicExpansion<S>& F) {
  BasicExpansion<S> out(F.d());
  for (const auto& [lv, f] : F.levels()) out.add(f * ScalarOps<S>::from_int(lv.second));
  return out;
}

struct OUParams {
  double theta = 0.0;  // in (-pi/2, pi/2)
  double t = 0.0;
  OUParams(double theta_, double t_);
  Complex r() const { return std::polar(1.0, theta); }
};

// e^{-[(m+n) cos theta + i (m-n) sin theta] t}
Complex ou_eigenvalue(int m, int n, const OUParams& params);
ChaosExpansion ou_semigroup(const ChaosExpansion& F, const OUParams& params);

// Monte Carlo of E_{Z'}[P(e^{-rt} zeta + sqrt(1 - e^{-2t cos theta}) Z')] at fixed zeta.
McEstimate mehler_estimate(const WickPoly& P, const OUParams& params, const std::vector<Complex>& zeta,
                           std::size_t samples, std::uint64_t seed, unsigned workers = 1);

// E|I(f)|^r through the oracle: expectation of (P conj P)^{r/2}. r even, r (m+n) <= cap.
Rational abs_moment_exact(const ExactKernel& f, int r, int cap = kDefaultDegreeCap);
// (r-1)^{(p+q)/2} (E|I|^2)^{1/2} - (E|I|^r)^{1/r}
double hypercontractivity_margin(const ExactKernel& f, int r, int cap = kDefaultDegreeCap);

// S_{p,q}(f) = sum_k k! C(p,k) C(q,k) I_{p-k,q-k}(Tr^k f).
template <class S>
BasicExpansion<S> hu_meyer_forward(const BasicKernel<S>& f) {
  BasicExpansion<S> out(f.d());
  const int p = f.m(), q = f.n();
  for (int k = 0; k <= std::min(p, q); ++k)
    out.add(trace_k(f, k) * ScalarOps<S>::from_int(factorial(k) * binomial(p, k) * binomial(q, k)));
  return out;
}

// I_{p,q}(f) = sum_k (-1)^k k! C(p,k) C(q,k) S_{p-k,q-k}(Tr^k f). Levels of the result are
// Stratonovich kernels, not Ito kernels.
template <class S>
BasicExpansion<S> hu_meyer_inverse(const BasicKernel<S>& f) {
  BasicExpansion<S> out(f.d());
  const int p = f.m(), q = f.n();
  for (int k = 0; k <= std::min(p, q); ++k) {
    const long long w = factorial(k) * binomial(p, k) * binomial(q, k);
    out.add(trace_k(f, k) * ScalarOps<S>::from_int(k % 2 ? -w : w));
  }
  return out;
}

// Converts a Stratonovich expansion to Ito form by applying hu_meyer_forward per level.
template <class S>
BasicExpansion<S> stratonovich_to_ito(const BasicExpansion<S>& strat) {
  BasicExpansion<S> out(strat.d());
  for (const auto& [lv, f] : strat.levels()) out += hu_meyer_forward(f);
  return out;
}

// S^n_{p,q}(f) = sum over indices < n of f[i; l] zeta_{i_1}..zeta_{i_p} zetabar_{l_1}..zetabar_{l_q}.
WickPoly stratonovich_partial_sum(const ExactKernel& f, int n);

struct IndependenceReport {
  bool independent = false;
  std::vector<std::pair<std::string, double>> norms;  // computed contractions only
  std::vector<std::string> skipped;                   // contractions whose slot counts do not exist
};
IndependenceReport independence_test(const Kernel& f, const Kernel& g, double tol = 1e-12);

}  // namespace chaoskit
