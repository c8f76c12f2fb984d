#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chaoskit/exact.hpp"

namespace chaoskit {

inline constexpr int kDefaultDegreeCap = 16;

// Polynomial in z, zbar and rho with exact integer coefficients. Key is the power
// triple (z, zbar, rho). Holds J_{m,n} and anything the Appendix identities derive
// from it; m, n record the nominal bidegree and do not take part in equality.
class HermitePoly {
 public:
  using Powers = std::array<int, 3>;

  HermitePoly() = default;
  HermitePoly(int m, int n) : m_(m), n_(n) {}

  int m() const { return m_; }
  int n() const { return n_; }
  const std::map<Powers, BigInt>& terms() const { return terms_; }

  void add_term(int pz, int pzbar, int prho, const BigInt& c);
  BigInt coeff(int pz, int pzbar, int prho) const;
  bool is_zero() const { return terms_.empty(); }

  HermitePoly d_z() const;
  HermitePoly d_zbar() const;
  HermitePoly d_rho() const;
  HermitePoly times_z(int k = 1) const;
  HermitePoly times_zbar(int k = 1) const;
  HermitePoly times_rho(int k = 1) const;

  HermitePoly& operator+=(const HermitePoly& o);
  HermitePoly& operator-=(const HermitePoly& o);
  HermitePoly& operator*=(const BigInt& s);
  friend HermitePoly operator+(HermitePoly a, const HermitePoly& b) { return a += b; }
  friend HermitePoly operator-(HermitePoly a, const HermitePoly& b) { return a -= b; }
  friend HermitePoly operator*(HermitePoly a, const BigInt& s) { return a *= s; }
  friend HermitePoly operator*(const BigInt& s, HermitePoly a) { return a *= s; }
  friend HermitePoly operator*(const HermitePoly& a, const HermitePoly& b);
  friend bool operator==(const HermitePoly& a, const HermitePoly& b) { return a.terms_ == b.terms_; }

  Complex eval(Complex z, double rho) const;
  // Terms ordered by falling z-power, e.g. "z^2*zbar^2 - 4*rho*z*zbar + 2*rho^2".
  std::string text() const;

 private:
  int m_ = 0, n_ = 0;
  std::map<Powers, BigInt> terms_;
};

// J_{m,n} = sum_r (-1)^r r! C(m,r) C(n,r) z^{m-r} zbar^{n-r} rho^r.
HermitePoly poly_J(int m, int n, int cap = kDefaultDegreeCap);
// Same arithmetic as poly_J(m, n).eval(z, rho); rho must be positive.
Complex eval_J(int m, int n, Complex z, double rho, int cap = kDefaultDegreeCap);
// Probabilists' Hermite polynomial by three-term recurrence.
double eval_H(int n, double x);

// sum_{m<=M, n<=N} conj(lambda)^m lambda^n / (m! n!) J_{m,n}(z, rho). Uses the J
// recursion in floating point, so it is not bound by the degree cap.
Complex gf_partial_sum(Complex lambda, Complex z, double rho, int M, int N);
Complex gf_closed_form(Complex lambda, Complex z, double rho);

// c * rho^rho_power * J_{m,n}
struct JTerm {
  int m = 0;
  int n = 0;
  BigInt coeff;
  int rho_power = 0;
  friend bool operator==(const JTerm& a, const JTerm& b) {
    return a.m == b.m && a.n == b.n && a.coeff == b.coeff && a.rho_power == b.rho_power;
  }
};

// Sorted by falling m. Terms with equal (m, n) are merged.
std::vector<JTerm> J_product_expand(int m, int n, int p, int q);
std::vector<JTerm> monomial_to_J(int m, int n);
// Re-expands an arbitrary z, zbar, rho polynomial in the J basis.
std::vector<JTerm> expand_in_J(const HermitePoly& p);
HermitePoly from_J_terms(const std::vector<JTerm>& terms);

// (-rho)^{m+n} e^{|z|^2/rho} dbar^m d^n e^{-|z|^2/rho}, with the derivatives taken
// symbolically on polynomial * exponential.
Complex rodrigues_J(int m, int n, Complex z, double rho);

// Operator (z d + zbar dbar - 2 rho d dbar) and (z d - zbar dbar); their combination
// (1+ic) z d + (1-ic) zbar dbar - 2 rho d dbar is the Appendix eigen-operator.
HermitePoly number_operator(const HermitePoly& p);
HermitePoly rotation_operator(const HermitePoly& p);

// Nodes and weights for int e^{-x^2} g(x) dx (Golub-Welsch).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite(int points);

// <J_{m,n}, J_{p,q}> in L^2(mu_rho), mu_rho = (1/(pi rho)) e^{-|z|^2/rho}, by product quadrature.
Complex J_inner_quadrature(int m, int n, int p, int q, double rho, const GaussHermiteRule& rule);

// Angles theta_0 > ... > theta_n in (0, pi) and M_{i,j} = C(n,j) sin^{n-j} cos^j of theta_i.
class ThetaMatrix {
 public:
  explicit ThetaMatrix(std::vector<double> thetas, double max_condition = 1e12);

  int degree() const { return static_cast<int>(thetas_.size()) - 1; }
  const std::vector<double>& thetas() const { return thetas_; }
  const Eigen::MatrixXd& matrix() const { return m_; }
  const Eigen::MatrixXd& inverse() const { return inv_; }
  double condition_number() const { return cond_; }

  static ThetaMatrix equispaced(int n);

 private:
  std::vector<double> thetas_;
  Eigen::MatrixXd m_;
  Eigen::MatrixXd inv_;
  double cond_ = 0.0;
};

enum class Direction { RealToComplex, ComplexToReal };

struct ConversionCoeffs {
  int degree = 0;
  Direction direction = Direction::RealToComplex;
  Eigen::MatrixXcd coeffs;
};

// d_k(theta): H_n(x) = sum_k d_k J_{k,n-k}(e^{i theta}(x+iy), 2). A 1 x (n+1) row.
ConversionCoeffs prop35_forward(int n, double theta);
// Row i expresses H_n(x cos theta_i + y sin theta_i) in the J_{k,n-k}(x+iy, 2) basis,
// obtained by rotating the single-angle identity.
ConversionCoeffs prop35_forward(int n, double theta, const ThetaMatrix& tm);
// c~: entry (k, i) is the weight of H_n(x cos theta_i + y sin theta_i) in J_{k,n-k}(x+iy, 2).
ConversionCoeffs prop35_inverse(int n, const ThetaMatrix& tm);

// First Prop 2dim2 display: J_{m,l-m}(x+iy, 2) = sum_k a_k H_k(x) H_{l-k}(y); returns a.
std::vector<Complex> complex_to_real_pair(int l, int m);
// Second display: H_k(x) H_{l-k}(y) = sum_j b_j J_{j,l-j}(x+iy, 2); returns b.
std::vector<Complex> real_pair_to_complex(int l, int k);
// Row l of M^{-1}: H_l(x) H_{n-l}(y) = sum_k M^{-1}_{l,k} H_n(x cos theta_k + y sin theta_k).
std::vector<double> hermite_pair_rep(int n, int l, const ThetaMatrix& tm);

}  // namespace chaoskit
