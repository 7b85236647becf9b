#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "opspace/combinat.hpp"
#include "opspace/fock.hpp"
#include "opspace/random.hpp"
#include "opspace/spaces.hpp"

using namespace opspace;

namespace {

// Independent construction of the level-m creation matrix by e_i, driven by
// bitmasks instead of subset lists: rows are the (m+1)-subsets, columns the
// m-subsets, both in lex order of the sorted element lists.
ComplexMatrix bitmask_creation(int n, int m, int i) {
    auto masks_lex = [n](int size) {
        std::vector<std::uint32_t> out;
        for (const auto& s : subsets_lex(n, size)) {
            std::uint32_t mask = 0;
            for (int v : s) mask |= 1u << (v - 1);
            out.push_back(mask);
        }
        return out;
    };
    auto rows = masks_lex(m + 1);
    auto cols = masks_lex(m);
    ComplexMatrix c(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    const std::uint32_t bit = 1u << (i - 1);
    const std::uint32_t below = bit - 1;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] & bit) continue;
        std::uint32_t target = cols[j] | bit;
        int sign = __builtin_popcount(cols[j] & below) % 2 == 0 ? 1 : -1;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (rows[r] == target) c(static_cast<int>(r), static_cast<int>(j)) = cplx(double(sign));
    }
    return c;
}

std::vector<cplx> basis_vec(int n, int i) {
    std::vector<cplx> h(static_cast<std::size_t>(n), cplx(0.0));
    h[static_cast<std::size_t>(i - 1)] = cplx(1.0);
    return h;
}

} // namespace

TEST_CASE("creation matches an independent bitmask construction") {
    for (int n = 1; n <= 6; ++n)
        for (int m = 0; m < n; ++m)
            for (int i = 1; i <= n; ++i) {
                ComplexMatrix lib = creation(n, m, basis_vec(n, i));
                ComplexMatrix ora = bitmask_creation(n, m, i);
                REQUIRE(lib.rows() == ora.rows());
                REQUIRE(lib.cols() == ora.cols());
                CHECK(max_abs_diff(lib, ora) == 0.0);
            }
}

TEST_CASE("creation is linear in the coefficient vector, annihilation is its adjoint") {
    Rng rng(77);
    const int n = 5;
    for (int m = 0; m < n; ++m) {
        std::vector<cplx> h(n), g(n);
        for (auto& v : h) v = rng.complex_gaussian();
        for (auto& v : g) v = rng.complex_gaussian();

        ComplexMatrix sum(static_cast<int>(binomial(n, m + 1)), static_cast<int>(binomial(n, m)));
        for (int i = 1; i <= n; ++i)
            sum += cplx(h[static_cast<std::size_t>(i - 1)]) * creation(n, m, basis_vec(n, i));
        CHECK(max_abs_diff(creation(n, m, h), sum) < 1e-15);

        CHECK(max_abs_diff(annihilation(n, m, g), creation(n, m, g).adjoint()) == 0.0);
    }
    CHECK_THROWS_AS((void)creation(3, 3, basis_vec(3, 1)), std::invalid_argument);
    CHECK_THROWS_AS((void)creation(3, 1, basis_vec(4, 1)), std::invalid_argument);
}

TEST_CASE("anticommutation holds levelwise for arbitrary coefficients") {
    Rng rng(88);
    const int n = 6;
    std::vector<cplx> h(n), g(n);
    for (auto& v : h) v = rng.complex_gaussian();
    for (auto& v : g) v = rng.complex_gaussian();
    cplx pairing(0.0);
    for (int i = 0; i < n; ++i) pairing += std::conj(h[static_cast<std::size_t>(i)]) * g[static_cast<std::size_t>(i)];

    for (int m = 0; m < n; ++m) {
        // creations anticommute: C_h C_g + C_g C_h = 0 from level m
        if (m + 1 < n) {
            ComplexMatrix anti = creation(n, m + 1, h) * creation(n, m, g) +
                                 creation(n, m + 1, g) * creation(n, m, h);
            CHECK(max_abs(anti) < 1e-14);
        }
        // mixed pair reproduces the inner product on level m
        ComplexMatrix mixed = annihilation(n, m, h) * creation(n, m, g);
        if (m > 0) mixed += creation(n, m - 1, g) * annihilation(n, m - 1, h);
        ComplexMatrix want = cplx(pairing) * ComplexMatrix::identity(mixed.rows());
        CHECK(max_abs_diff(mixed, want) < 1e-13);
    }
}

TEST_CASE("full-space relations are exact up to twelve generators") {
    for (int n = 1; n <= 12; ++n) {
        CarReport rep = car_check(n);
        CHECK(rep.suite == "car");
        CHECK(rep.n == n);
        CHECK(rep.max_residual == 0.0);
        CHECK(rep.pass);
    }
    CHECK_THROWS_AS((void)car_check(13), std::invalid_argument);
}

TEST_CASE("complement permutation is a bijection between levels") {
    for (int n = 1; n <= 6; ++n)
        for (int k = 0; k <= n; ++k) {
            ComplexMatrix v = unitary_V(n, k);
            REQUIRE(v.rows() == static_cast<int>(binomial(n, n - k)));
            REQUIRE(v.cols() == static_cast<int>(binomial(n, k)));
            CHECK(max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(v.cols())) == 0.0);
            CHECK(max_abs_diff(v * v.adjoint(), ComplexMatrix::identity(v.rows())) == 0.0);

            SubsetIndexer rows(n, n - k);
            auto cols = subsets_lex(n, k);
            for (std::size_t t = 0; t < cols.size(); ++t) {
                std::vector<int> comp;
                for (int x = 1; x <= n; ++x)
                    if (!std::binary_search(cols[t].begin(), cols[t].end(), x)) comp.push_back(x);
                CHECK(v(static_cast<int>(rows.rank(comp)), static_cast<int>(t)) == cplx(1.0));
            }
        }
}

TEST_CASE("level sign diagonal follows the closed parity formula") {
    for (int n = 1; n <= 6; ++n)
        for (int k = 0; k <= n; ++k) {
            ComplexMatrix w = unitary_W(n, k);
            auto subs = subsets_lex(n, k);
            REQUIRE(w.rows() == static_cast<int>(subs.size()));
            REQUIRE(w.cols() == static_cast<int>(subs.size()));
            for (std::size_t s = 0; s < subs.size(); ++s) {
                long total = k + static_cast<long>(k >= 1 ? binomial(k - 1, 2) : 0);
                for (int x : subs[s]) total += x;
                double want = total % 2 == 0 ? 1.0 : -1.0;
                for (std::size_t t = 0; t < subs.size(); ++t) {
                    cplx v = w(static_cast<int>(s), static_cast<int>(t));
                    CHECK(v == (s == t ? cplx(want) : cplx(0.0)));
                }
            }
        }
}

TEST_CASE("grid generators are rotated creation operators") {
    ToleranceConfig cfg;
    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= n; ++k) {
            FockCompareReport rep = fock_vs_hnk(n, k, 25, cfg);
            CHECK(rep.n == n);
            CHECK(rep.k == k);
            CHECK(rep.structural_residual == 0.0);
            CHECK(rep.sample_deviation < 1e-7);
            CHECK(rep.samples == 25);
            CHECK(rep.pass);

            // the identity itself, spelled out: b_i = V W C_{e_i}
            OperatorBasis h = build_hnk(n, k);
            ComplexMatrix rot = unitary_V(n, k) * unitary_W(n, k);
            for (int i = 1; i <= n; ++i) {
                ComplexMatrix lifted = rot * creation(n, k - 1, basis_vec(n, i));
                CHECK(max_abs_diff(lifted, h.basis[static_cast<std::size_t>(i - 1)].blocks[0]) ==
                      0.0);
            }
        }
    CHECK_THROWS_AS((void)fock_vs_hnk(4, 0, 5, cfg), std::invalid_argument);
    CHECK_THROWS_AS((void)fock_vs_hnk(4, 2, -1, cfg), std::invalid_argument);
}
