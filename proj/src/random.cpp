#include "chaoskit/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace chaoskit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x5851f42d4c957f2dULL));
}

Complex draw_complex_gaussian(Rng& rng) {
  // Box-Muller by hand: std::normal_distribution is not specified bit-for-bit across
  // standard libraries, and reproducibility across platforms matters for reports.
  constexpr double two_pi = 6.283185307179586476925286766559;
  const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-std::log(u1));  // sqrt(-2 log u) / sqrt(2)
  return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
}

std::vector<Complex> draw_complex_gaussians(Rng& rng, std::size_t count) {
  std::vector<Complex> out(count);
  for (auto& z : out) z = draw_complex_gaussian(rng);
  return out;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  std::vector<std::thread> pool;
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  for (unsigned w = 1; w < n; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

std::vector<Complex> block_samples(std::size_t samples, std::uint64_t seed, unsigned workers,
                                   const std::function<Complex(Rng&)>& sample) {
  std::vector<Complex> out(samples);
  const std::size_t blocks = (samples + kMcBlockSize - 1) / kMcBlockSize;
  parallel_for(blocks, workers, [&](std::size_t b) {
    Rng rng(derive_seed(seed, b));
    const std::size_t hi = std::min(samples, (b + 1) * kMcBlockSize);
    for (std::size_t i = b * kMcBlockSize; i < hi; ++i) out[i] = sample(rng);
  });
  return out;
}

McEstimate block_monte_carlo(std::size_t samples, std::uint64_t seed, unsigned workers,
                             const std::function<Complex(Rng&)>& sample) {
  const std::size_t blocks = (samples + kMcBlockSize - 1) / kMcBlockSize;
  std::vector<Complex> sums(blocks);
  std::vector<double> sq_re(blocks), sq_im(blocks);
  parallel_for(blocks, workers, [&](std::size_t b) {
    Rng rng(derive_seed(seed, b));
    const std::size_t lo = b * kMcBlockSize;
    const std::size_t hi = std::min(samples, lo + kMcBlockSize);
    Complex s = 0.0;
    double s2r = 0.0, s2i = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const Complex v = sample(rng);
      s += v;
      s2r += v.real() * v.real();
      s2i += v.imag() * v.imag();
    }
    sums[b] = s;
    sq_re[b] = s2r;
    sq_im[b] = s2i;
  });
  Complex total = 0.0;
  double total_re = 0.0, total_im = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    total += sums[b];
    total_re += sq_re[b];
    total_im += sq_im[b];
  }
  McEstimate est;
  est.samples = samples;
  if (samples == 0) return est;
  const double n = static_cast<double>(samples);
  est.mean = total / n;
  const double dof = std::max(1.0, n - 1.0);
  const double mr = est.mean.real(), mi = est.mean.imag();
  est.se_re = std::sqrt(std::max(0.0, (total_re - n * mr * mr) / dof) / n);
  est.se_im = std::sqrt(std::max(0.0, (total_im - n * mi * mi) / dof) / n);
  return est;
}

}  // namespace chaoskit
