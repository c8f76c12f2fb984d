#include "chaoskit/generators.hpp"

#include <map>

namespace chaoskit {

namespace {

template <class S, class Draw>
BasicKernel<S> fill_by_class(int d, int m, int n, Draw draw) {
  BasicKernel<S> k(d, m, n);
  std::map<std::size_t, S> value;
  for (std::size_t f = 0; f < k.size(); ++f) {
    const std::size_t c = detail::canonical_flat(k, k.unflat(f));
    auto it = value.find(c);
    if (it == value.end()) it = value.emplace(c, draw()).first;
    k[f] = it->second;
  }
  return k;
}

}  // namespace

Kernel random_kernel(int d, int m, int n, Rng& rng) {
  return fill_by_class<Complex>(d, m, n, [&] { return draw_complex_gaussian(rng); });
}

ExactKernel random_int_kernel(int d, int m, int n, Rng& rng, int range) {
  std::uniform_int_distribution<int> u(-range, range);
  return fill_by_class<QComplex>(d, m, n, [&] { return QComplex(Rational(u(rng)), Rational(u(rng))); });
}

Kernel random_raw_kernel(int d, int m, int n, Rng& rng) {
  Kernel k(d, m, n);
  for (std::size_t f = 0; f < k.size(); ++f) k[f] = draw_complex_gaussian(rng);
  return k;
}

namespace {

template <class E, class Make>
E random_levels(int d, int max_rank, Rng& rng, Make make) {
  std::bernoulli_distribution keep(0.5);
  E out(d);
  while (out.levels().empty())
    for (int m = 0; m <= max_rank; ++m)
      for (int n = 0; n <= max_rank; ++n)
        if (keep(rng)) out.add(make(m, n));
  return out;
}

}  // namespace

ChaosExpansion random_expansion(int d, int max_rank, Rng& rng) {
  return random_levels<ChaosExpansion>(d, max_rank, rng, [&](int m, int n) { return random_kernel(d, m, n, rng); });
}

ExactExpansion random_int_expansion(int d, int max_rank, Rng& rng, int range) {
  return random_levels<ExactExpansion>(d, max_rank, rng,
                                       [&](int m, int n) { return random_int_kernel(d, m, n, rng, range); });
}

}  // namespace chaoskit
