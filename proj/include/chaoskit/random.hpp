#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "chaoskit/exact.hpp"

namespace chaoskit {

// Stream seed for block `index` of a run with master `seed`. Blocks are the unit
// of work partitioning, so results never depend on how blocks map to threads.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

using Rng = std::mt19937_64;

// Standard symmetric complex Gaussian: E|z|^2 = 1, E z^2 = 0.
Complex draw_complex_gaussian(Rng& rng);
std::vector<Complex> draw_complex_gaussians(Rng& rng, std::size_t count);

struct McEstimate {
  Complex mean;
  double se_re = 0.0;  // standard error of Re(mean)
  double se_im = 0.0;
  std::size_t samples = 0;
};

inline constexpr std::size_t kMcBlockSize = 4096;

// Runs `sample(rng)` `samples` times over fixed blocks of kMcBlockSize draws; block b
// uses Rng(derive_seed(seed, b)). Block sums are reduced in block order, so the
// estimate is bit-identical for any worker count.
McEstimate block_monte_carlo(std::size_t samples, std::uint64_t seed, unsigned workers,
                             const std::function<Complex(Rng&)>& sample);

// All `samples` draws of `sample(rng)` in block order, with the same seeding as
// block_monte_carlo.
std::vector<Complex> block_samples(std::size_t samples, std::uint64_t seed, unsigned workers,
                                   const std::function<Complex(Rng&)>& sample);

// Runs body(index) for index in [0, count) on `workers` threads.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace chaoskit
