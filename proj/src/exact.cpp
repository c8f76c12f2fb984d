#include "chaoskit/exact.hpp"

#include <sstream>
#include <stdexcept>

namespace chaoskit {

std::string to_string(const QComplex& a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QComplex& a) {
  if (sgn(a.im) == 0) return os << a.re.get_str();
  if (sgn(a.re) == 0) return os << a.im.get_str() << "i";
  os << "(" << a.re.get_str() << (sgn(a.im) > 0 ? "+" : "") << a.im.get_str() << "i)";
  return os;
}

long long factorial(int n) {
  if (n < 0 || n > 20) throw std::domain_error("factorial: argument outside [0, 20]");
  long long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;  // exact at every step
  return b;
}

BigInt big_factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of negative");
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

BigInt big_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

}  // namespace chaoskit
