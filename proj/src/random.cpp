#include "opspace/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace opspace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 1.0 - uniform01(); // (0, 1]
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

cplx Rng::complex_gaussian() {
    const double inv_sqrt2 = 0.7071067811865475244;
    double re = gaussian();
    double im = gaussian();
    return cplx(re * inv_sqrt2, im * inv_sqrt2);
}

ComplexMatrix Rng::gaussian_matrix(int rows, int cols) {
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = complex_gaussian();
    return m;
}

ComplexMatrix Rng::unitary(int n) {
    if (n < 1) throw std::invalid_argument("Rng::unitary: n must be >= 1");
    ComplexMatrix g = gaussian_matrix(n, n);
    // modified Gram-Schmidt over columns, one re-orthogonalization pass
    for (int j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                cplx proj = 0.0;
                for (int i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
                for (int i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
            }
        }
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-100) throw std::runtime_error("Rng::unitary: degenerate sample");
        for (int i = 0; i < n; ++i) g(i, j) /= nrm;
    }
    return g;
}

} // namespace opspace
