#include "chaoskit/hermite.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace chaoskit {

namespace {

Complex ipow(Complex z, int k) {
  Complex r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

void check_degrees(int m, int n, int cap) {
  if (m < 0 || n < 0) throw std::domain_error("Hermite degree must be non-negative");
  if (m > cap || n > cap) throw std::domain_error("Hermite degree exceeds cap " + std::to_string(cap));
}

HermitePoly build_J(int m, int n) {
  HermitePoly p(m, n);
  for (int r = 0; r <= std::min(m, n); ++r) {
    BigInt c = big_factorial(r) * big_binomial(m, r) * big_binomial(n, r);
    if (r % 2) c = -c;
    p.add_term(m - r, n - r, r, c);
  }
  return p;
}

const HermitePoly& cached_J(int m, int n) {
  static const std::vector<HermitePoly> table = [] {
    std::vector<HermitePoly> t;
    t.reserve((kDefaultDegreeCap + 1) * (kDefaultDegreeCap + 1));
    for (int a = 0; a <= kDefaultDegreeCap; ++a)
      for (int b = 0; b <= kDefaultDegreeCap; ++b) t.push_back(build_J(a, b));
    return t;
  }();
  return table[static_cast<std::size_t>(m * (kDefaultDegreeCap + 1) + n)];
}

}  // namespace

void HermitePoly::add_term(int pz, int pzbar, int prho, const BigInt& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(Powers{pz, pzbar, prho}, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

BigInt HermitePoly::coeff(int pz, int pzbar, int prho) const {
  auto it = terms_.find(Powers{pz, pzbar, prho});
  return it == terms_.end() ? BigInt(0) : it->second;
}

HermitePoly HermitePoly::d_z() const {
  HermitePoly out(std::max(m_ - 1, 0), n_);
  for (const auto& [p, c] : terms_)
    if (p[0] > 0) out.add_term(p[0] - 1, p[1], p[2], c * p[0]);
  return out;
}

HermitePoly HermitePoly::d_zbar() const {
  HermitePoly out(m_, std::max(n_ - 1, 0));
  for (const auto& [p, c] : terms_)
    if (p[1] > 0) out.add_term(p[0], p[1] - 1, p[2], c * p[1]);
  return out;
}

HermitePoly HermitePoly::d_rho() const {
  HermitePoly out(m_, n_);
  for (const auto& [p, c] : terms_)
    if (p[2] > 0) out.add_term(p[0], p[1], p[2] - 1, c * p[2]);
  return out;
}

HermitePoly HermitePoly::times_z(int k) const {
  HermitePoly out(m_ + k, n_);
  for (const auto& [p, c] : terms_) out.add_term(p[0] + k, p[1], p[2], c);
  return out;
}

HermitePoly HermitePoly::times_zbar(int k) const {
  HermitePoly out(m_, n_ + k);
  for (const auto& [p, c] : terms_) out.add_term(p[0], p[1] + k, p[2], c);
  return out;
}

HermitePoly HermitePoly::times_rho(int k) const {
  HermitePoly out(m_, n_);
  for (const auto& [p, c] : terms_) out.add_term(p[0], p[1], p[2] + k, c);
  return out;
}

HermitePoly& HermitePoly::operator+=(const HermitePoly& o) {
  for (const auto& [p, c] : o.terms_) add_term(p[0], p[1], p[2], c);
  return *this;
}

HermitePoly& HermitePoly::operator-=(const HermitePoly& o) {
  for (const auto& [p, c] : o.terms_) add_term(p[0], p[1], p[2], -c);
  return *this;
}

HermitePoly& HermitePoly::operator*=(const BigInt& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, c] : terms_) c *= s;
  return *this;
}

HermitePoly operator*(const HermitePoly& a, const HermitePoly& b) {
  HermitePoly out(a.m_ + b.m_, a.n_ + b.n_);
  for (const auto& [p, c] : a.terms_)
    for (const auto& [q, d] : b.terms_) out.add_term(p[0] + q[0], p[1] + q[1], p[2] + q[2], c * d);
  return out;
}

Complex HermitePoly::eval(Complex z, double rho) const {
  const Complex zb = std::conj(z);
  Complex acc = 0.0;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& p = it->first;
    acc += it->second.get_d() * ipow(z, p[0]) * ipow(zb, p[1]) * ipow(rho, p[2]);
  }
  return acc;
}

std::string HermitePoly::text() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  auto factor = [](std::ostringstream& s, bool& any, const char* name, int k) {
    if (k == 0) return;
    if (any) s << "*";
    s << name;
    if (k > 1) s << "^" << k;
    any = true;
  };
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& p = it->first;
    BigInt c = it->second;
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    c = abs(c);
    bool any = false;
    if (c != 1 || (p[0] == 0 && p[1] == 0 && p[2] == 0)) {
      os << c.get_str();
      any = true;
    }
    factor(os, any, "rho", p[2]);
    factor(os, any, "z", p[0]);
    factor(os, any, "zbar", p[1]);
    first = false;
  }
  return os.str();
}

HermitePoly poly_J(int m, int n, int cap) {
  check_degrees(m, n, cap);
  if (m <= kDefaultDegreeCap && n <= kDefaultDegreeCap) return cached_J(m, n);
  return build_J(m, n);
}

Complex eval_J(int m, int n, Complex z, double rho, int cap) {
  check_degrees(m, n, cap);
  if (!(rho > 0.0)) throw std::domain_error("eval_J: rho must be positive");
  if (m <= kDefaultDegreeCap && n <= kDefaultDegreeCap) return cached_J(m, n).eval(z, rho);
  return build_J(m, n).eval(z, rho);
}

double eval_H(int n, double x) {
  if (n < 0) throw std::domain_error("eval_H: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex gf_partial_sum(Complex lambda, Complex z, double rho, int M, int N) {
  if (M < 0 || N < 0) throw std::domain_error("gf_partial_sum: negative truncation");
  const Complex zb = std::conj(z);
  // row[n] holds J_{m,n} for the current m; J_{m+1,n} = z J_{m,n} - n rho J_{m,n-1}.
  std::vector<Complex> row(static_cast<std::size_t>(N) + 1);
  row[0] = 1.0;
  for (int n = 1; n <= N; ++n) row[n] = row[n - 1] * zb;
  Complex total = 0.0;
  Complex a = 1.0;  // conj(lambda)^m / m!
  for (int m = 0; m <= M; ++m) {
    Complex b = 1.0;  // lambda^n / n!
    Complex inner = 0.0;
    for (int n = 0; n <= N; ++n) {
      inner += b * row[n];
      b *= lambda / static_cast<double>(n + 1);
    }
    total += a * inner;
    a *= std::conj(lambda) / static_cast<double>(m + 1);
    if (m == M) break;
    for (int n = N; n >= 0; --n) row[n] = z * row[n] - (n > 0 ? static_cast<double>(n) * rho * row[n - 1] : 0.0);
  }
  return total;
}

Complex gf_closed_form(Complex lambda, Complex z, double rho) {
  return std::exp(lambda * std::conj(z) + std::conj(lambda) * z - rho * std::norm(lambda));
}

namespace {

std::vector<JTerm> collect(const std::map<std::array<int, 3>, BigInt>& acc) {
  std::vector<JTerm> out;
  for (auto it = acc.rbegin(); it != acc.rend(); ++it)
    if (sgn(it->second) != 0) out.push_back({it->first[0], it->first[1], it->second, it->first[2]});
  return out;
}

}  // namespace

std::vector<JTerm> J_product_expand(int m, int n, int p, int q) {
  if (m < 0 || n < 0 || p < 0 || q < 0) throw std::domain_error("J_product_expand: negative degree");
  std::map<std::array<int, 3>, BigInt> acc;
  for (int i = 0; i <= std::min(m, q); ++i)
    for (int j = 0; j <= std::min(n, p); ++j) {
      const BigInt c = big_binomial(m, i) * big_binomial(n, j) * big_binomial(p, j) * big_binomial(q, i) *
                       big_factorial(i) * big_factorial(j);
      acc[{m + p - i - j, n + q - i - j, i + j}] += c;
    }
  return collect(acc);
}

std::vector<JTerm> monomial_to_J(int m, int n) {
  if (m < 0 || n < 0) throw std::domain_error("monomial_to_J: negative degree");
  std::vector<JTerm> out;
  for (int r = 0; r <= std::min(m, n); ++r)
    out.push_back({m - r, n - r, big_binomial(m, r) * big_binomial(n, r) * big_factorial(r), r});
  return out;
}

std::vector<JTerm> expand_in_J(const HermitePoly& poly) {
  std::map<std::array<int, 3>, BigInt> acc;
  for (const auto& [p, c] : poly.terms())
    for (const JTerm& t : monomial_to_J(p[0], p[1])) acc[{t.m, t.n, t.rho_power + p[2]}] += c * t.coeff;
  return collect(acc);
}

HermitePoly from_J_terms(const std::vector<JTerm>& terms) {
  HermitePoly out;
  for (const JTerm& t : terms) out += build_J(t.m, t.n).times_rho(t.rho_power) * t.coeff;
  return out;
}

Complex rodrigues_J(int m, int n, Complex z, double rho) {
  if (!(rho > 0.0)) throw std::domain_error("rodrigues_J: rho must be positive");
  // G e^{-z zbar / rho}; the third power slot of G counts factors of 1/rho.
  HermitePoly g;
  g.add_term(0, 0, 0, 1);
  for (int k = 0; k < n; ++k) g = g.d_z() - g.times_zbar().times_rho();
  for (int k = 0; k < m; ++k) g = g.d_zbar() - g.times_z().times_rho();
  const double sign = (m + n) % 2 ? -1.0 : 1.0;
  return sign * std::pow(rho, m + n) * g.eval(z, 1.0 / rho);
}

HermitePoly number_operator(const HermitePoly& p) {
  HermitePoly zd = p.d_z().times_z();
  HermitePoly zbd = p.d_zbar().times_zbar();
  HermitePoly lap = p.d_z().d_zbar().times_rho() * BigInt(2);
  return zd + zbd - lap;
}

HermitePoly rotation_operator(const HermitePoly& p) { return p.d_z().times_z() - p.d_zbar().times_zbar(); }

GaussHermiteRule gauss_hermite(int points) {
  if (points < 1) throw std::domain_error("gauss_hermite: need at least one node");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(points, points);
  for (int k = 1; k < points; ++k) jac(k, k - 1) = jac(k - 1, k) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  GaussHermiteRule rule;
  const double mu0 = std::sqrt(std::numbers::pi);
  for (int k = 0; k < points; ++k) {
    rule.nodes.push_back(es.eigenvalues()(k));
    const double v = es.eigenvectors()(0, k);
    rule.weights.push_back(mu0 * v * v);
  }
  return rule;
}

Complex J_inner_quadrature(int m, int n, int p, int q, double rho, const GaussHermiteRule& rule) {
  const double s = std::sqrt(rho);
  Complex acc = 0.0;
  for (std::size_t a = 0; a < rule.nodes.size(); ++a)
    for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
      const Complex z(s * rule.nodes[a], s * rule.nodes[b]);
      acc += rule.weights[a] * rule.weights[b] * eval_J(m, n, z, rho) * std::conj(eval_J(p, q, z, rho));
    }
  return acc / std::numbers::pi;
}

ThetaMatrix::ThetaMatrix(std::vector<double> thetas, double max_condition) : thetas_(std::move(thetas)) {
  if (thetas_.empty()) throw std::invalid_argument("ThetaMatrix: need at least one angle");
  for (std::size_t i = 0; i < thetas_.size(); ++i) {
    if (!(thetas_[i] > 0.0 && thetas_[i] < std::numbers::pi))
      throw std::invalid_argument("ThetaMatrix: angles must lie in (0, pi)");
    if (i > 0 && !(thetas_[i] < thetas_[i - 1]))
      throw std::invalid_argument("ThetaMatrix: angles must be strictly decreasing");
  }
  const int n = degree();
  m_.resize(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      m_(i, j) = binomial(n, j) * ipow(std::sin(thetas_[i]), n - j) * ipow(std::cos(thetas_[i]), j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m_);
  const auto& sv = svd.singularValues();
  cond_ = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(cond_ <= max_condition))
    throw std::domain_error("ThetaMatrix: M is numerically singular (condition " + std::to_string(cond_) + ")");
  inv_ = m_.fullPivLu().inverse();
}

ThetaMatrix ThetaMatrix::equispaced(int n) {
  std::vector<double> t;
  for (int i = 0; i <= n; ++i) t.push_back(std::numbers::pi * (n + 1 - i) / (n + 2));
  return ThetaMatrix(std::move(t));
}

namespace {

std::vector<Complex> d_coeffs(int n, double theta) {
  const Complex is(0.0, std::sin(theta));
  const double c = std::cos(theta);
  std::vector<Complex> d(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    Complex s = 0.0;
    for (int r = 0; r <= k; ++r) {
      const int sv = k - r;
      for (int l = 0; l <= n; ++l) {
        const double w = static_cast<double>(binomial(n, l) * binomial(l, r) * binomial(n - l, sv));
        if (w == 0.0) continue;
        s += (sv % 2 ? -w : w) * ipow(c, l) * ipow(is, n - l);
      }
    }
    d[k] = s / std::ldexp(1.0, n);
  }
  return d;
}

Complex i_pow(int k) {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

}  // namespace

ConversionCoeffs prop35_forward(int n, double theta) {
  if (n < 0) throw std::domain_error("prop35_forward: negative degree");
  ConversionCoeffs out;
  out.degree = n;
  out.direction = Direction::RealToComplex;
  const auto d = d_coeffs(n, theta);
  out.coeffs.resize(1, n + 1);
  for (int k = 0; k <= n; ++k) out.coeffs(0, k) = d[k];
  return out;
}

ConversionCoeffs prop35_forward(int n, double theta, const ThetaMatrix& tm) {
  if (tm.degree() != n) throw std::invalid_argument("prop35_forward: angle count must be n+1");
  ConversionCoeffs out;
  out.degree = n;
  out.direction = Direction::RealToComplex;
  const auto d = d_coeffs(n, theta);
  out.coeffs.resize(n + 1, n + 1);
  // J_{k,n-k}(e^{ia} w) = e^{ia(2k-n)} J_{k,n-k}(w)
  for (int i = 0; i <= n; ++i)
    for (int k = 0; k <= n; ++k)
      out.coeffs(i, k) = d[k] * std::polar(1.0, (theta - tm.thetas()[i]) * (2 * k - n));
  return out;
}

ConversionCoeffs prop35_inverse(int n, const ThetaMatrix& tm) {
  if (tm.degree() != n) throw std::invalid_argument("prop35_inverse: angle count must be n+1");
  ConversionCoeffs out;
  out.degree = n;
  out.direction = Direction::ComplexToReal;
  out.coeffs = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    const auto a = complex_to_real_pair(n, k);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) out.coeffs(k, i) += a[j] * tm.inverse()(j, i);
  }
  return out;
}

std::vector<Complex> complex_to_real_pair(int l, int m) {
  if (m < 0 || m > l) throw std::domain_error("complex_to_real_pair: need 0 <= m <= l");
  std::vector<Complex> a(static_cast<std::size_t>(l) + 1);
  for (int k = 0; k <= l; ++k) {
    long long s = 0;
    for (int r = 0; r <= k; ++r) {
      const long long w = binomial(m, r) * binomial(l - m, k - r);
      s += ((l - m - (k - r)) % 2) ? -w : w;
    }
    a[k] = i_pow(l - k) * static_cast<double>(s);
  }
  return a;
}

std::vector<Complex> real_pair_to_complex(int l, int k) {
  if (k < 0 || k > l) throw std::domain_error("real_pair_to_complex: need 0 <= k <= l");
  std::vector<Complex> b(static_cast<std::size_t>(l) + 1);
  for (int j = 0; j <= l; ++j) {
    long long s = 0;
    for (int r = 0; r <= j; ++r) {
      const long long w = binomial(k, r) * binomial(l - k, j - r);
      s += ((j - r) % 2) ? -w : w;
    }
    b[j] = i_pow(l - k) * (static_cast<double>(s) / std::ldexp(1.0, l));
  }
  return b;
}

std::vector<double> hermite_pair_rep(int n, int l, const ThetaMatrix& tm) {
  if (tm.degree() != n) throw std::invalid_argument("hermite_pair_rep: angle count must be n+1");
  if (l < 0 || l > n) throw std::domain_error("hermite_pair_rep: need 0 <= l <= n");
  std::vector<double> row(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) row[k] = tm.inverse()(l, k);
  return row;
}

}  // namespace chaoskit
