#pragma once

#include <random>

#include "chaoskit/chaos.hpp"
#include "chaoskit/random.hpp"
#include "chaoskit/tensor.hpp"

namespace chaoskit {

// Symmetric kernel with one value per multiset class, so symmetry is exact by
// construction. Entries are complex Gaussian.
Kernel random_kernel(int d, int m, int n, Rng& rng);
// Same, with Gaussian-integer entries re, im in [-range, range]; exact in both scalar types.
ExactKernel random_int_kernel(int d, int m, int n, Rng& rng, int range = 3);
// Unsymmetrized Gaussian array.
Kernel random_raw_kernel(int d, int m, int n, Rng& rng);

// Expansion on a random non-empty subset of levels (m, n) with m, n <= max_rank.
ChaosExpansion random_expansion(int d, int max_rank, Rng& rng);
ExactExpansion random_int_expansion(int d, int max_rank, Rng& rng, int range = 3);

}  // namespace chaoskit
