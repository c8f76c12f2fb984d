#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "chaoskit/exact.hpp"

namespace chaoskit {

// Dense coefficient array of an element of H^{(m)} (x) Hbar^{(n)} over C^d. Flat layout is
// row-major over (p_1..p_m, q_1..q_n), first slot most significant. Indices are 0-based.
template <class S>
class BasicKernel {
 public:
  using Scalar = S;
  using Ops = ScalarOps<S>;

  BasicKernel() : BasicKernel(1, 0, 0) {}
  BasicKernel(int d, int m, int n) : d_(d), m_(m), n_(n) {
    if (d < 1 || m < 0 || n < 0) throw std::invalid_argument("Kernel: need d >= 1 and non-negative ranks");
    std::size_t size = 1;
    for (int k = 0; k < m + n; ++k) size *= static_cast<std::size_t>(d);
    coeffs_.assign(size, S{});
  }

  static BasicKernel scalar(const S& c, int d = 1) {
    BasicKernel k(d, 0, 0);
    k.coeffs_[0] = c;
    return k;
  }
  // Single basis tensor e_{p_1} (x) ... (x) ebar_{q_n}, not symmetrized.
  static BasicKernel basis(int d, const std::vector<int>& p, const std::vector<int>& q, const S& c = Ops::from_int(1)) {
    BasicKernel k(d, static_cast<int>(p.size()), static_cast<int>(q.size()));
    std::vector<int> idx(p);
    idx.insert(idx.end(), q.begin(), q.end());
    k.at(idx) = c;
    return k;
  }

  int d() const { return d_; }
  int m() const { return m_; }
  int n() const { return n_; }
  int rank() const { return m_ + n_; }
  std::size_t size() const { return coeffs_.size(); }
  bool same_shape(const BasicKernel& o) const { return d_ == o.d_ && m_ == o.m_ && n_ == o.n_; }

  std::size_t flat(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != rank()) throw std::invalid_argument("Kernel: index length mismatch");
    std::size_t f = 0;
    for (int v : idx) {
      if (v < 0 || v >= d_) throw std::out_of_range("Kernel: index out of range");
      f = f * static_cast<std::size_t>(d_) + static_cast<std::size_t>(v);
    }
    return f;
  }
  std::vector<int> unflat(std::size_t f) const {
    std::vector<int> idx(static_cast<std::size_t>(rank()));
    for (int k = rank() - 1; k >= 0; --k) {
      idx[static_cast<std::size_t>(k)] = static_cast<int>(f % static_cast<std::size_t>(d_));
      f /= static_cast<std::size_t>(d_);
    }
    return idx;
  }

  S& at(const std::vector<int>& idx) { return coeffs_[flat(idx)]; }
  const S& at(const std::vector<int>& idx) const { return coeffs_[flat(idx)]; }
  S& operator[](std::size_t f) { return coeffs_[f]; }
  const S& operator[](std::size_t f) const { return coeffs_[f]; }
  const std::vector<S>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!Ops::is_zero(c)) return false;
    return true;
  }

  BasicKernel& operator+=(const BasicKernel& o) {
    require_shape(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  BasicKernel& operator-=(const BasicKernel& o) {
    require_shape(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  BasicKernel& operator*=(const S& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend BasicKernel operator+(BasicKernel a, const BasicKernel& b) { return a += b; }
  friend BasicKernel operator-(BasicKernel a, const BasicKernel& b) { return a -= b; }
  friend BasicKernel operator*(BasicKernel a, const S& s) { return a *= s; }
  friend BasicKernel operator*(const S& s, BasicKernel a) { return a *= s; }
  friend bool operator==(const BasicKernel& a, const BasicKernel& b) {
    return a.same_shape(b) && a.coeffs_ == b.coeffs_;
  }

  void require_shape(const BasicKernel& o) const {
    if (!same_shape(o)) throw std::invalid_argument("Kernel: shape mismatch");
  }

 private:
  int d_, m_, n_;
  std::vector<S> coeffs_;
};

using Kernel = BasicKernel<Complex>;
using ExactKernel = BasicKernel<QComplex>;

namespace detail {

// Flat index of the multiset representative: p and q blocks each sorted ascending.
template <class S>
std::size_t canonical_flat(const BasicKernel<S>& k, std::vector<int> idx) {
  std::sort(idx.begin(), idx.begin() + k.m());
  std::sort(idx.begin() + k.m(), idx.end());
  return k.flat(idx);
}

// Advances an odometer over [d]^len; false once it wraps.
inline bool next_index(std::vector<int>& idx, int d) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < d) return true;
    idx[k] = 0;
  }
  return false;
}

}  // namespace detail

// Average over all permutations within p and within q. Each orbit member is hit equally
// often by the m! n! permutations, so the average is the mean over the orbit.
template <class S>
BasicKernel<S> symmetrize(const BasicKernel<S>& raw) {
  using Ops = ScalarOps<S>;
  BasicKernel<S> out(raw.d(), raw.m(), raw.n());
  std::vector<std::size_t> rep(raw.size());
  std::vector<long long> count(raw.size(), 0);
  std::vector<S> sum(raw.size());
  for (std::size_t f = 0; f < raw.size(); ++f) {
    rep[f] = detail::canonical_flat(raw, raw.unflat(f));
    sum[rep[f]] += raw[f];
    ++count[rep[f]];
  }
  for (std::size_t f = 0; f < raw.size(); ++f) out[f] = Ops::div_int(sum[rep[f]], count[rep[f]]);
  return out;
}

template <class S>
bool is_symmetric(const BasicKernel<S>& k, double tol = 0.0) {
  using Ops = ScalarOps<S>;
  for (std::size_t f = 0; f < k.size(); ++f) {
    const std::size_t c = detail::canonical_flat(k, k.unflat(f));
    if (tol == 0.0 ? !(k[f] == k[c]) : std::sqrt(Ops::abs_sq(k[f] - k[c])) > tol) return false;
  }
  return true;
}

// (f (x)_{i,j} g)[t_f, t_g ; s_f, s_g] = sum_{u, v} f[t_f, u ; s_f, v] g[t_g, v ; s_g, u]:
// the last i holomorphic slots of f meet the last i antiholomorphic slots of g and the
// last j antiholomorphic slots of f meet the last j holomorphic slots of g.
template <class S>
BasicKernel<S> contract(const BasicKernel<S>& f, const BasicKernel<S>& g, int i, int j) {
  const int a = f.m(), b = f.n(), c = g.m(), dd = g.n();
  if (f.d() != g.d()) throw std::invalid_argument("contract: dimension mismatch");
  if (i < 0 || j < 0 || i > std::min(a, dd) || j > std::min(b, c))
    throw std::invalid_argument("contract: need 0 <= i <= a^dd and 0 <= j <= b^c");
  const int d = f.d();
  BasicKernel<S> out(d, a + c - i - j, b + dd - i - j);
  const int ta = a - i, tc = c - j, sb = b - j, sd = dd - i;
  std::vector<int> fi(static_cast<std::size_t>(a + b)), gi(static_cast<std::size_t>(c + dd));
  std::vector<int> uv(static_cast<std::size_t>(i + j), 0);
  for (std::size_t o = 0; o < out.size(); ++o) {
    const std::vector<int> idx = out.unflat(o);
    // out layout: t_f (ta), t_g (tc), s_f (sb), s_g (sd)
    for (int k = 0; k < ta; ++k) fi[k] = idx[k];
    for (int k = 0; k < tc; ++k) gi[k] = idx[ta + k];
    for (int k = 0; k < sb; ++k) fi[a + k] = idx[ta + tc + k];
    for (int k = 0; k < sd; ++k) gi[c + k] = idx[ta + tc + sb + k];
    S acc{};
    std::fill(uv.begin(), uv.end(), 0);
    do {
      for (int k = 0; k < i; ++k) fi[ta + k] = gi[c + sd + k] = uv[k];
      for (int k = 0; k < j; ++k) fi[a + sb + k] = gi[tc + k] = uv[i + k];
      acc += f.at(fi) * g.at(gi);
    } while (detail::next_index(uv, d));
    out[o] = acc;
  }
  return out;
}

template <class S>
BasicKernel<S> contract_sym(const BasicKernel<S>& f, const BasicKernel<S>& g, int i, int j) {
  return symmetrize(contract(f, g, i, j));
}

template <class S>
BasicKernel<S> tensor(const BasicKernel<S>& f, const BasicKernel<S>& g) {
  return contract(f, g, 0, 0);
}

// h[q; p] = conj f[p; q], so conj(I_{m,n}(f)) = I_{n,m}(h).
template <class S>
BasicKernel<S> reversed_conjugate(const BasicKernel<S>& f) {
  BasicKernel<S> h(f.d(), f.n(), f.m());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const std::vector<int> idx = f.unflat(k);
    std::vector<int> rev(idx.begin() + f.m(), idx.end());
    rev.insert(rev.end(), idx.begin(), idx.begin() + f.m());
    h.at(rev) = ScalarOps<S>::conj(f[k]);
  }
  return h;
}

template <class S>
S inner(const BasicKernel<S>& f, const BasicKernel<S>& g) {
  f.require_shape(g);
  S acc{};
  for (std::size_t k = 0; k < f.size(); ++k) acc += f[k] * ScalarOps<S>::conj(g[k]);
  return acc;
}

template <class S>
double norm(const BasicKernel<S>& f) {
  double acc = 0.0;
  for (const auto& c : f.coeffs()) acc += ScalarOps<S>::abs_sq(c);
  return std::sqrt(acc);
}

inline Rational norm_sq_exact(const ExactKernel& f) {
  Rational acc = 0;
  for (const auto& c : f.coeffs()) acc += norm_sq(c);
  return acc;
}

// (Tr^k f)[p'; q'] = sum_u f[u, p'; u, q'] over the leading k slots of each block.
template <class S>
BasicKernel<S> trace_k(const BasicKernel<S>& f, int k) {
  if (k < 0 || k > std::min(f.m(), f.n())) throw std::invalid_argument("trace_k: need 0 <= k <= m^n");
  const int m2 = f.m() - k, n2 = f.n() - k;
  BasicKernel<S> out(f.d(), m2, n2);
  std::vector<int> fi(static_cast<std::size_t>(f.rank()));
  std::vector<int> u(static_cast<std::size_t>(k), 0);
  for (std::size_t o = 0; o < out.size(); ++o) {
    const std::vector<int> idx = out.unflat(o);
    for (int t = 0; t < m2; ++t) fi[k + t] = idx[t];
    for (int t = 0; t < n2; ++t) fi[f.m() + k + t] = idx[m2 + t];
    S acc{};
    std::fill(u.begin(), u.end(), 0);
    do {
      for (int t = 0; t < k; ++t) fi[t] = fi[f.m() + t] = u[t];
      acc += f.at(fi);
    } while (detail::next_index(u, f.d()));
    out[o] = acc;
  }
  return out;
}

inline ExactKernel lift(const Kernel& f) {
  ExactKernel out(f.d(), f.m(), f.n());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = lift(f[k]);
  return out;
}

inline Kernel to_double(const ExactKernel& f) {
  Kernel out(f.d(), f.m(), f.n());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = to_complex(f[k]);
  return out;
}

double max_abs_diff(const Kernel& a, const Kernel& b);

// {"d", "m", "n", "entries": [[[p..., q...], re, im], ...]}; loading sums repeated entries
// and symmetrizes.
std::string kernel_to_json(const Kernel& f);
Kernel kernel_from_json(const std::string& text);

}  // namespace chaoskit
