#pragma once

#include <cstdint>
#include <random>

#include "opspace/complex_matrix.hpp"

namespace opspace {

// splitmix64 step, used to derive independent substream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

// Deterministic Gaussian source. std::normal_distribution is
// implementation-defined, so normals are produced by explicit Box-Muller on
// 53-bit uniforms; output is identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01(); // [0, 1)
    double gaussian();  // N(0, 1)
    cplx complex_gaussian(); // CN(0,1): (N + iN)/sqrt(2)

    ComplexMatrix gaussian_matrix(int rows, int cols);
    // Haar-like unitary: Gaussian matrix orthonormalized by modified
    // Gram-Schmidt. Sufficient for invariance trials.
    ComplexMatrix unitary(int n);

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace opspace
