#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "opspace/combinat.hpp"
#include "opspace/spaces.hpp"

using namespace opspace;

namespace {

// Count of nonzero entries, insisting each one is exactly +-1.
int signed_support(const ComplexMatrix& m) {
    int cnt = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            cplx v = m(i, j);
            if (v == cplx(0.0)) continue;
            REQUIRE((v == cplx(1.0) || v == cplx(-1.0)));
            ++cnt;
        }
    return cnt;
}

bool exactly_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

} // namespace

TEST_CASE("column and row builders produce matrix units") {
    for (int n = 1; n <= 5; ++n) {
        OperatorBasis c = build_column(n);
        CHECK(c.name == "C_" + std::to_string(n));
        CHECK(c.kind == SpaceKind::column);
        CHECK(c.n == n);
        CHECK(c.dim() == n);
        REQUIRE(c.components.size() == 1);
        CHECK(c.components[0].rows == n);
        CHECK(c.components[0].cols == 1);
        for (int i = 0; i < n; ++i) {
            const ComplexMatrix& m = c.basis[static_cast<std::size_t>(i)].blocks[0];
            for (int r = 0; r < n; ++r) CHECK(m(r, 0) == cplx(r == i ? 1.0 : 0.0));
        }

        OperatorBasis r = build_row(n);
        CHECK(r.name == "R_" + std::to_string(n));
        CHECK(r.kind == SpaceKind::row);
        CHECK(r.components[0].rows == 1);
        CHECK(r.components[0].cols == n);
        for (int i = 0; i < n; ++i) {
            const ComplexMatrix& m = r.basis[static_cast<std::size_t>(i)].blocks[0];
            for (int j = 0; j < n; ++j) CHECK(m(0, j) == cplx(j == i ? 1.0 : 0.0));
        }
    }
    CHECK_THROWS_AS((void)build_column(0), std::invalid_argument);
    CHECK_THROWS_AS((void)build_row(0), std::invalid_argument);
}

TEST_CASE("grid basis shape, support and exact sum rules") {
    for (int n = 2; n <= 5; ++n) {
        for (int k = 1; k <= n; ++k) {
            OperatorBasis h = build_hnk(n, k);
            CHECK(h.kind == SpaceKind::hnk);
            CHECK(h.k == k);
            CHECK(h.dim() == n);
            const int rows = static_cast<int>(binomial(n, n - k));
            const int cols = static_cast<int>(binomial(n, k - 1));
            REQUIRE(h.components.size() == 1);
            CHECK(h.components[0].rows == rows);
            CHECK(h.components[0].cols == cols);

            ComplexMatrix left(rows, rows);
            ComplexMatrix right(cols, cols);
            for (int i = 0; i < n; ++i) {
                const ComplexMatrix& b = h.basis[static_cast<std::size_t>(i)].blocks[0];
                // one partition per admissible I, so C(n-1, k-1) signed entries
                CHECK(signed_support(b) == static_cast<int>(binomial(n - 1, k - 1)));
                // rows and columns carry at most one entry each: b is a
                // partial isometry with 0/1 diagonal supports
                ComplexMatrix bbs = b * b.adjoint();
                ComplexMatrix bsb = b.adjoint() * b;
                for (int r = 0; r < rows; ++r)
                    for (int s = 0; s < rows; ++s) {
                        cplx want = r == s ? bbs(r, r) : cplx(0.0);
                        CHECK(bbs(r, s) == want);
                        if (r == s) CHECK((bbs(r, r) == cplx(0.0) || bbs(r, r) == cplx(1.0)));
                    }
                for (int r = 0; r < cols; ++r)
                    for (int s = 0; s < cols; ++s) {
                        cplx want = r == s ? bsb(r, r) : cplx(0.0);
                        CHECK(bsb(r, s) == want);
                    }
                left += bbs;
                right += bsb;
            }
            // every row subset omits exactly k indices, every column subset
            // n-k+1, so the supports tile the identity with those weights
            for (int r = 0; r < rows; ++r)
                for (int s = 0; s < rows; ++s)
                    CHECK(left(r, s) == cplx(r == s ? double(k) : 0.0));
            for (int r = 0; r < cols; ++r)
                for (int s = 0; s < cols; ++s)
                    CHECK(right(r, s) == cplx(r == s ? double(n - k + 1) : 0.0));

            // pairwise HS orthogonality with a common length
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    cplx ip = hs_inner(h.basis[static_cast<std::size_t>(i)].blocks[0],
                                       h.basis[static_cast<std::size_t>(j)].blocks[0]);
                    cplx want = i == j ? cplx(double(binomial(n - 1, k - 1))) : cplx(0.0);
                    CHECK(ip == want);
                }
        }
    }
    CHECK_THROWS_AS((void)build_hnk(4, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)build_hnk(4, 5), std::invalid_argument);
}

TEST_CASE("grid edges are the signed column and row spaces") {
    for (int n = 2; n <= 6; ++n) {
        OperatorBasis lo = build_hnk(n, 1);
        REQUIRE(lo.components[0].rows == n);
        REQUIRE(lo.components[0].cols == 1);
        for (int i = 1; i <= n; ++i) {
            const ComplexMatrix& b = lo.basis[static_cast<std::size_t>(i - 1)].blocks[0];
            // row index is the lex rank of {1..n} minus {i}; the sign counts
            // the inversions of (i, 1, .., i-1, i+1, .., n)
            double sign = (i - 1) % 2 == 0 ? 1.0 : -1.0;
            for (int r = 0; r < n; ++r) CHECK(b(r, 0) == cplx(r == n - i ? sign : 0.0));
        }

        OperatorBasis hi = build_hnk(n, n);
        REQUIRE(hi.components[0].rows == 1);
        REQUIRE(hi.components[0].cols == n);
        for (int i = 1; i <= n; ++i) {
            const ComplexMatrix& b = hi.basis[static_cast<std::size_t>(i - 1)].blocks[0];
            double sign = (n - i) % 2 == 0 ? 1.0 : -1.0;
            for (int c = 0; c < n; ++c) CHECK(b(0, c) == cplx(c == n - i ? sign : 0.0));
        }
    }
}

TEST_CASE("full grid stack matches the per-level builders") {
    for (int n = 2; n <= 5; ++n) {
        OperatorBasis phi = build_phi(n);
        CHECK(phi.name == "Phi_" + std::to_string(n));
        CHECK(phi.kind == SpaceKind::phi);
        REQUIRE(phi.components.size() == static_cast<std::size_t>(n));
        for (int k = 1; k <= n; ++k) {
            OperatorBasis h = build_hnk(n, k);
            CHECK(phi.components[static_cast<std::size_t>(k - 1)].rows == h.components[0].rows);
            CHECK(phi.components[static_cast<std::size_t>(k - 1)].cols == h.components[0].cols);
            for (int i = 0; i < n; ++i)
                CHECK(exactly_equal(phi.basis[static_cast<std::size_t>(i)].blocks[static_cast<std::size_t>(k - 1)],
                                    h.basis[static_cast<std::size_t>(i)].blocks[0]));
        }
    }
}

TEST_CASE("intersection juxtaposes components and validates shapes") {
    OperatorBasis a = build_hnk(4, 1);
    OperatorBasis b = build_hnk(4, 3);
    OperatorBasis both = intersect({a, b});
    CHECK(both.name == "H_4^1&H_4^3");
    CHECK(both.kind == SpaceKind::intersection);
    CHECK(both.dim() == 4);
    REQUIRE(both.components.size() == 2);
    for (int i = 0; i < 4; ++i) {
        CHECK(exactly_equal(both.basis[static_cast<std::size_t>(i)].blocks[0],
                            a.basis[static_cast<std::size_t>(i)].blocks[0]));
        CHECK(exactly_equal(both.basis[static_cast<std::size_t>(i)].blocks[1],
                            b.basis[static_cast<std::size_t>(i)].blocks[0]));
    }
    CHECK_THROWS_AS((void)intersect({}), std::invalid_argument);
    CHECK_THROWS_AS((void)intersect({build_hnk(4, 1), build_hnk(3, 1)}), std::invalid_argument);
}

TEST_CASE("element arithmetic works blockwise") {
    OperatorBasis phi = build_phi(3);
    const Element& x = phi.basis[0];
    const Element& y = phi.basis[1];

    Element s = x + y;
    REQUIRE(s.components() == 3);
    for (std::size_t c = 0; c < 3; ++c)
        CHECK(max_abs_diff(s.blocks[c], x.blocks[c] + y.blocks[c]) == 0.0);

    Element d = s - y;
    for (std::size_t c = 0; c < 3; ++c) CHECK(max_abs_diff(d.blocks[c], x.blocks[c]) == 0.0);

    Element t = cplx(0.0, 2.0) * x;
    for (std::size_t c = 0; c < 3; ++c)
        CHECK(max_abs_diff(t.blocks[c], cplx(0.0, 2.0) * x.blocks[c]) == 0.0);

    Element p = mul(adj(x), y);
    for (std::size_t c = 0; c < 3; ++c)
        CHECK(max_abs_diff(p.blocks[c], x.blocks[c].adjoint() * y.blocks[c]) == 0.0);

    // tuple norm is the max over blocks; each grid generator is a partial
    // isometry, so every block has norm one
    ToleranceConfig cfg;
    CHECK(element_norm(x, cfg) == doctest::Approx(1.0).epsilon(1e-10));
    Element scaled = cplx(3.0) * x;
    CHECK(element_norm(scaled, cfg) == doctest::Approx(3.0).epsilon(1e-10));

    // HS inner sums over blocks: each of the 3 levels contributes C(2, k-1)
    cplx self = element_hs_inner(x, x);
    CHECK(self == cplx(1.0 + 2.0 + 1.0));
    CHECK(element_hs_inner(x, y) == cplx(0.0));

    CHECK(element_is_zero(x - x, 1e-15));
    CHECK_FALSE(element_is_zero(x, 1e-15));
    CHECK(element_max_abs_diff(x, y) == 1.0);

    CHECK_THROWS_AS((void)(x + Element(ComplexMatrix(2, 2))), std::invalid_argument);
}

TEST_CASE("partition words pick out single signed entries") {
    for (int n = 2; n <= 5; ++n) {
        for (int k = 1; k <= n; ++k) {
            OperatorBasis h = build_hnk(n, k);
            SubsetIndexer rows(n, n - k);
            SubsetIndexer cols(n, k - 1);
            for (int c = 1; c <= n; ++c) {
                std::vector<int> rest;
                for (int v = 1; v <= n; ++v)
                    if (v != c) rest.push_back(v);
                // every split of the complement of {c} into I and J
                for (const auto& pick : subsets_lex(n - 1, k - 1)) {
                    std::vector<int> I, J;
                    std::vector<bool> used(rest.size(), false);
                    for (int pos : pick) {
                        I.push_back(rest[static_cast<std::size_t>(pos - 1)]);
                        used[static_cast<std::size_t>(pos - 1)] = true;
                    }
                    for (std::size_t t = 0; t < rest.size(); ++t)
                        if (!used[t]) J.push_back(rest[t]);

                    Element w = ones_word(h.basis, I, c, J);
                    const ComplexMatrix& m = w.blocks[0];
                    const ComplexMatrix& bc = h.basis[static_cast<std::size_t>(c - 1)].blocks[0];
                    std::size_t rr = rows.rank(J);
                    std::size_t cc = cols.rank(I);
                    // the word keeps exactly the (J, I) entry of the middle letter
                    for (int r = 0; r < m.rows(); ++r)
                        for (int s = 0; s < m.cols(); ++s) {
                            cplx want = (r == static_cast<int>(rr) && s == static_cast<int>(cc))
                                            ? bc(r, s)
                                            : cplx(0.0);
                            CHECK(m(r, s) == want);
                        }
                    CHECK(m(static_cast<int>(rr), static_cast<int>(cc)) != cplx(0.0));

                    // a disjoint pair covering all but one index reduces the
                    // general word to the ones word
                    Element g = grid_word(h.basis, I, J);
                    CHECK(element_max_abs_diff(g, w) == 0.0);
                }
            }
        }
    }
    OperatorBasis h = build_hnk(4, 2);
    CHECK_THROWS_AS((void)ones_word(h.basis, {1}, 1, {2, 3}), std::invalid_argument);
    CHECK_THROWS_AS((void)ones_word(h.basis, {1}, 5, {2, 3}), std::invalid_argument);
    CHECK_THROWS_AS((void)grid_word(h.basis, {1}, {2}), std::invalid_argument);
}

TEST_CASE("overlapping index words are signed matrix units") {
    for (int n = 2; n <= 5; ++n) {
        for (int k = 1; k <= n; ++k) {
            SubsetIndexer rows(n, n - k);
            SubsetIndexer cols(n, k - 1);
            for (const auto& I : subsets_lex(n, k - 1)) {
                for (const auto& J : subsets_lex(n, n - k)) {
                    SignedUnit u = build_uij(n, k, I, J);
                    CHECK((u.sign == 1 || u.sign == -1));
                    CHECK(u.row_rank == rows.rank(J));
                    CHECK(u.col_rank == cols.rank(I));
                    CHECK(u.I == I);
                    CHECK(u.J == J);
                    int nonzero = 0;
                    for (int r = 0; r < u.matrix.rows(); ++r)
                        for (int s = 0; s < u.matrix.cols(); ++s)
                            if (u.matrix(r, s) != cplx(0.0)) ++nonzero;
                    CHECK(nonzero == 1);
                    CHECK(u.matrix(static_cast<int>(u.row_rank), static_cast<int>(u.col_rank)) ==
                          cplx(double(u.sign)));
                }
            }
        }
    }
    CHECK_THROWS_AS((void)build_uij(4, 2, {1, 2}, {3, 4}), std::invalid_argument);
    CHECK_THROWS_AS((void)build_uij(4, 2, {1}, {3}), std::invalid_argument);
}

TEST_CASE("exact grid identities hold at small sizes") {
    for (int n = 2; n <= 5; ++n) {
        for (int k = 1; k <= n; ++k) {
            GridCheck g = verify_grid_relation(n, k);
            std::uint64_t pairs = binomial(n, static_cast<int>(k) - 1) * binomial(n, n - k);
            CHECK(g.checked == pairs + pairs * pairs);
            CHECK(g.violations == 0);

            GridCheck o = verify_ones_decomposition(n, k);
            CHECK(o.checked == static_cast<std::uint64_t>(n));
            CHECK(o.violations == 0);
        }
    }
}
