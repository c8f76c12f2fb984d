#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace chaoskit {

using Complex = std::complex<double>;
using BigInt = mpz_class;
using Rational = mpq_class;

// Exact complex rational a + i b.
struct QComplex {
  Rational re;
  Rational im;

  QComplex() : re(0), im(0) {}
  QComplex(long long r) : re(static_cast<long>(r)), im(0) {}  // NOLINT implicit
  QComplex(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QComplex& operator*=(const QComplex& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  QComplex& operator*=(const Rational& s) {
    re *= s;
    im *= s;
    return *this;
  }
  QComplex& operator/=(const Rational& s) {
    re /= s;
    im /= s;
    return *this;
  }
};

inline QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
inline QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
inline QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
inline QComplex operator*(QComplex a, const Rational& s) { return a *= s; }
inline QComplex operator*(const Rational& s, QComplex a) { return a *= s; }
inline QComplex operator/(QComplex a, const Rational& s) { return a /= s; }
inline QComplex operator-(const QComplex& a) { return QComplex(-a.re, -a.im); }
inline bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }

inline QComplex conj(const QComplex& a) { return QComplex(a.re, -a.im); }
inline Rational norm_sq(const QComplex& a) { return a.re * a.re + a.im * a.im; }

inline Complex to_complex(const QComplex& a) { return {a.re.get_d(), a.im.get_d()}; }

// Exact: every finite double is a dyadic rational.
inline QComplex lift(const Complex& z) { return QComplex(Rational(z.real()), Rational(z.imag())); }

std::string to_string(const QComplex& a);
std::ostream& operator<<(std::ostream& os, const QComplex& a);

// Uniform scalar vocabulary shared by the templated tensor and chaos code.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Complex> {
  static Complex from_int(long long v) { return Complex(static_cast<double>(v), 0.0); }
  static Complex div_int(const Complex& s, long long v) { return s / static_cast<double>(v); }
  static Complex conj(const Complex& s) { return std::conj(s); }
  static bool is_zero(const Complex& s) { return s == Complex(0.0, 0.0); }
  static double abs_sq(const Complex& s) { return std::norm(s); }
  static Complex to_complex(const Complex& s) { return s; }
};

template <>
struct ScalarOps<QComplex> {
  static QComplex from_int(long long v) { return QComplex(v); }
  static QComplex div_int(const QComplex& s, long long v) { return s / Rational(static_cast<long>(v)); }
  static QComplex conj(const QComplex& s) { return chaoskit::conj(s); }
  static bool is_zero(const QComplex& s) { return s.is_zero(); }
  static double abs_sq(const QComplex& s) { return norm_sq(s).get_d(); }
  static Complex to_complex(const QComplex& s) { return chaoskit::to_complex(s); }
};

// Small combinatorics on machine integers; callers keep arguments within degree caps.
long long factorial(int n);
long long binomial(int n, int k);
BigInt big_factorial(int n);
BigInt big_binomial(int n, int k);

}  // namespace chaoskit
