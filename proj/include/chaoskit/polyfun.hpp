#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chaoskit/exact.hpp"
#include "chaoskit/random.hpp"

namespace chaoskit {

// Exact polynomial sum c_{a,b} zeta^a zetabar^b in 2d formal variables. zeta and zetabar
// are independent symbols; conjugation only enters through conj(), eval_at and the
// Gaussian expectation. Coordinates are 0-based.
class WickPoly {
 public:
  // Exponents (a_0..a_{d-1}, b_0..b_{d-1}).
  using Exponent = std::vector<int>;

  explicit WickPoly(int d = 1);

  static WickPoly constant(int d, const QComplex& c);
  static WickPoly z(int d, int k);
  static WickPoly zbar(int d, int k);
  static WickPoly monomial(int d, const Exponent& e, const QComplex& c = QComplex(1));

  int d() const { return d_; }
  const std::map<Exponent, QComplex>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  QComplex coeff(const Exponent& e) const;
  int degree() const;

  void add_term(const Exponent& e, const QComplex& c);

  WickPoly& operator+=(const WickPoly& o);
  WickPoly& operator-=(const WickPoly& o);
  WickPoly& operator*=(const QComplex& s);
  friend WickPoly operator+(WickPoly a, const WickPoly& b) { return a += b; }
  friend WickPoly operator-(WickPoly a, const WickPoly& b) { return a -= b; }
  friend WickPoly operator*(WickPoly a, const QComplex& s) { return a *= s; }
  friend WickPoly operator*(const QComplex& s, WickPoly a) { return a *= s; }
  friend WickPoly operator*(const WickPoly& a, const WickPoly& b);
  friend bool operator==(const WickPoly& a, const WickPoly& b) { return a.d_ == b.d_ && a.terms_ == b.terms_; }

  WickPoly pow(int k) const;
  WickPoly d_z(int k) const;
  WickPoly d_zbar(int k) const;
  // Polynomial whose values are the complex conjugates: swaps a, b and conjugates coefficients.
  WickPoly conj() const;

  // Substitutes zeta = point, zetabar = conj(point).
  Complex eval_at(const std::vector<Complex>& point) const;
  QComplex eval_exact(const std::vector<QComplex>& point) const;

  // Canonical sorted-term text, e.g. "2*z0^2*zb0 + (1/2-1i)*zb1".
  std::string text() const;

  void require_dim(const WickPoly& o) const;

 private:
  int d_;
  std::map<Exponent, QComplex> terms_;
};

// Double-precision snapshot of a WickPoly for sampling loops.
class CompiledPoly {
 public:
  explicit CompiledPoly(const WickPoly& p);
  int d() const { return d_; }
  Complex operator()(const std::vector<Complex>& point) const;

 private:
  struct Term {
    Complex c;
    std::vector<int> e;
  };
  int d_;
  std::vector<Term> terms_;
};

// E[P(zeta)] for i.i.d. standard symmetric complex Gaussians, E|zeta_k|^2 = 1:
// E[zeta_k^a zetabar_k^b] = delta_{ab} a!.
QComplex expect_gaussian(const WickPoly& p);
// E[A conj(B)] without expanding the product: only monomial pairs with equal
// exponent differences a - b contribute.
QComplex expect_product_conj(const WickPoly& a, const WickPoly& b);
// Integrates out the coordinates with integrate[k] true, leaving a polynomial in the others.
WickPoly expect_partial(const WickPoly& p, const std::vector<bool>& integrate);

// Empirical mean over `samples` draws (>= 1000) with the block-seeded generator.
McEstimate mc_expectation(const WickPoly& p, std::size_t samples, std::uint64_t seed, unsigned workers = 1);

// Random polynomial with `terms` monomials of total degree <= max_degree and small
// Gaussian-integer coefficients.
WickPoly random_poly(int d, int max_degree, int terms, Rng& rng);

}  // namespace chaoskit
