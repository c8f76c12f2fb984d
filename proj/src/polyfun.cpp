#include "chaoskit/polyfun.hpp"

#include <sstream>
#include <stdexcept>

namespace chaoskit {

WickPoly::WickPoly(int d) : d_(d) {
  if (d < 1) throw std::invalid_argument("WickPoly: need d >= 1");
}

WickPoly WickPoly::constant(int d, const QComplex& c) {
  WickPoly p(d);
  p.add_term(Exponent(2 * static_cast<std::size_t>(d), 0), c);
  return p;
}

WickPoly WickPoly::z(int d, int k) {
  if (k < 0 || k >= d) throw std::out_of_range("WickPoly::z: coordinate out of range");
  Exponent e(2 * static_cast<std::size_t>(d), 0);
  e[k] = 1;
  return monomial(d, e);
}

WickPoly WickPoly::zbar(int d, int k) {
  if (k < 0 || k >= d) throw std::out_of_range("WickPoly::zbar: coordinate out of range");
  Exponent e(2 * static_cast<std::size_t>(d), 0);
  e[d + k] = 1;
  return monomial(d, e);
}

WickPoly WickPoly::monomial(int d, const Exponent& e, const QComplex& c) {
  WickPoly p(d);
  p.add_term(e, c);
  return p;
}

QComplex WickPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? QComplex() : it->second;
}

int WickPoly::degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    deg = std::max(deg, s);
  }
  return deg;
}

void WickPoly::add_term(const Exponent& e, const QComplex& c) {
  if (static_cast<int>(e.size()) != 2 * d_) throw std::invalid_argument("WickPoly: exponent length must be 2d");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void WickPoly::require_dim(const WickPoly& o) const {
  if (d_ != o.d_) throw std::invalid_argument("WickPoly: dimension mismatch");
}

WickPoly& WickPoly::operator+=(const WickPoly& o) {
  require_dim(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

WickPoly& WickPoly::operator-=(const WickPoly& o) {
  require_dim(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

WickPoly& WickPoly::operator*=(const QComplex& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

WickPoly operator*(const WickPoly& a, const WickPoly& b) {
  a.require_dim(b);
  WickPoly out(a.d_);
  WickPoly::Exponent e(2 * static_cast<std::size_t>(a.d_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  return out;
}

WickPoly WickPoly::pow(int k) const {
  if (k < 0) throw std::domain_error("WickPoly::pow: negative exponent");
  WickPoly out = constant(d_, QComplex(1));
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

WickPoly WickPoly::d_z(int k) const {
  if (k < 0 || k >= d_) throw std::out_of_range("WickPoly::d_z: coordinate out of range");
  WickPoly out(d_);
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponent f = e;
    --f[k];
    out.add_term(f, c * Rational(e[k]));
  }
  return out;
}

WickPoly WickPoly::d_zbar(int k) const {
  if (k < 0 || k >= d_) throw std::out_of_range("WickPoly::d_zbar: coordinate out of range");
  WickPoly out(d_);
  for (const auto& [e, c] : terms_) {
    if (e[d_ + k] == 0) continue;
    Exponent f = e;
    --f[d_ + k];
    out.add_term(f, c * Rational(e[d_ + k]));
  }
  return out;
}

WickPoly WickPoly::conj() const {
  WickPoly out(d_);
  for (const auto& [e, c] : terms_) {
    Exponent f(e.size());
    for (int k = 0; k < d_; ++k) {
      f[k] = e[d_ + k];
      f[d_ + k] = e[k];
    }
    out.add_term(f, chaoskit::conj(c));
  }
  return out;
}

Complex WickPoly::eval_at(const std::vector<Complex>& point) const {
  if (static_cast<int>(point.size()) != d_) throw std::invalid_argument("WickPoly::eval_at: point dimension");
  Complex acc = 0.0;
  for (const auto& [e, c] : terms_) {
    Complex t = to_complex(c);
    for (int k = 0; k < d_; ++k) {
      for (int r = 0; r < e[k]; ++r) t *= point[k];
      for (int r = 0; r < e[d_ + k]; ++r) t *= std::conj(point[k]);
    }
    acc += t;
  }
  return acc;
}

QComplex WickPoly::eval_exact(const std::vector<QComplex>& point) const {
  if (static_cast<int>(point.size()) != d_) throw std::invalid_argument("WickPoly::eval_exact: point dimension");
  QComplex acc;
  for (const auto& [e, c] : terms_) {
    QComplex t = c;
    for (int k = 0; k < d_; ++k) {
      for (int r = 0; r < e[k]; ++r) t *= point[k];
      for (int r = 0; r < e[d_ + k]; ++r) t *= chaoskit::conj(point[k]);
    }
    acc += t;
  }
  return acc;
}

std::string WickPoly::text() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool any = false;
    const bool unit = c == QComplex(1);
    if (!unit) {
      os << c;
      any = true;
    }
    for (int k = 0; k < 2 * d_; ++k) {
      if (e[k] == 0) continue;
      if (any) os << "*";
      os << (k < d_ ? "z" : "zb") << (k < d_ ? k : k - d_);
      if (e[k] > 1) os << "^" << e[k];
      any = true;
    }
    if (!any) os << "1";
  }
  return os.str();
}

QComplex expect_gaussian(const WickPoly& p) {
  const int d = p.d();
  QComplex acc;
  for (const auto& [e, c] : p.terms()) {
    BigInt w = 1;
    bool zero = false;
    for (int k = 0; k < d && !zero; ++k) {
      if (e[k] != e[d + k]) zero = true;
      else w *= big_factorial(e[k]);
    }
    if (!zero) acc += c * Rational(w);
  }
  return acc;
}

QComplex expect_product_conj(const WickPoly& a, const WickPoly& b) {
  a.require_dim(b);
  const int d = a.d();
  // conj(z^c zb^e) = z^e zb^c, so a pair survives iff a_k - b_k = c_k - e_k for every k.
  std::map<std::vector<int>, std::vector<const std::pair<const WickPoly::Exponent, QComplex>*>> by_diff;
  std::vector<int> diff(static_cast<std::size_t>(d));
  for (const auto& term : b.terms()) {
    for (int k = 0; k < d; ++k) diff[k] = term.first[k] - term.first[d + k];
    by_diff[diff].push_back(&term);
  }
  QComplex acc;
  for (const auto& [ea, ca] : a.terms()) {
    for (int k = 0; k < d; ++k) diff[k] = ea[k] - ea[d + k];
    auto it = by_diff.find(diff);
    if (it == by_diff.end()) continue;
    for (const auto* tb : it->second) {
      BigInt w = 1;
      for (int k = 0; k < d; ++k) w *= big_factorial(ea[k] + tb->first[d + k]);
      acc += ca * chaoskit::conj(tb->second) * Rational(w);
    }
  }
  return acc;
}

WickPoly expect_partial(const WickPoly& p, const std::vector<bool>& integrate) {
  const int d = p.d();
  if (static_cast<int>(integrate.size()) != d) throw std::invalid_argument("expect_partial: mask dimension");
  WickPoly out(d);
  for (const auto& [e, c] : p.terms()) {
    BigInt w = 1;
    bool zero = false;
    WickPoly::Exponent f = e;
    for (int k = 0; k < d && !zero; ++k) {
      if (!integrate[k]) continue;
      if (e[k] != e[d + k]) zero = true;
      else w *= big_factorial(e[k]);
      f[k] = f[d + k] = 0;
    }
    if (!zero) out.add_term(f, c * Rational(w));
  }
  return out;
}

CompiledPoly::CompiledPoly(const WickPoly& p) : d_(p.d()) {
  for (const auto& [e, c] : p.terms()) terms_.push_back({to_complex(c), e});
}

Complex CompiledPoly::operator()(const std::vector<Complex>& point) const {
  Complex acc = 0.0;
  for (const Term& t : terms_) {
    Complex v = t.c;
    for (int k = 0; k < d_; ++k) {
      for (int r = 0; r < t.e[k]; ++r) v *= point[k];
      for (int r = 0; r < t.e[d_ + k]; ++r) v *= std::conj(point[k]);
    }
    acc += v;
  }
  return acc;
}

McEstimate mc_expectation(const WickPoly& p, std::size_t samples, std::uint64_t seed, unsigned workers) {
  if (samples < 1000) throw std::invalid_argument("mc_expectation: need at least 1000 samples");
  const CompiledPoly poly(p);
  const std::size_t d = static_cast<std::size_t>(p.d());
  return block_monte_carlo(samples, seed, workers, [&](Rng& rng) { return poly(draw_complex_gaussians(rng, d)); });
}

WickPoly random_poly(int d, int max_degree, int terms, Rng& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), slot(0, 2 * d - 1), deg(0, max_degree);
  WickPoly p(d);
  for (int t = 0; t < terms; ++t) {
    WickPoly::Exponent e(2 * static_cast<std::size_t>(d), 0);
    const int total = deg(rng);
    for (int k = 0; k < total; ++k) ++e[slot(rng)];
    p.add_term(e, QComplex(Rational(coef(rng)), Rational(coef(rng))));
  }
  return p;
}

}  // namespace chaoskit
