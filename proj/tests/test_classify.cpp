#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "opspace/classify.hpp"
#include "opspace/random.hpp"
#include "opspace/spaces.hpp"

using namespace opspace;

namespace {

ComplexMatrix unit(int rows, int cols, int i, int j) {
    ComplexMatrix m(rows, cols);
    m(i, j) = cplx(1.0);
    return m;
}

} // namespace

TEST_CASE("collinearity screening names the offender") {
    OperatorBasis h = build_hnk(3, 2);
    CHECK_NOTHROW(require_collinear_family(h.basis));

    // element 2 scaled off the isometry manifold
    std::vector<Element> scaled = h.basis;
    scaled[1] = cplx(0.5) * scaled[1];
    CHECK_THROWS_WITH_AS(require_collinear_family(scaled),
                         doctest::Contains("element 2"), std::invalid_argument);

    // a corner pair (E11, I) is ordered, not collinear
    std::vector<Element> corner{Element(unit(2, 2, 0, 0)),
                                Element(unit(2, 2, 0, 0) + unit(2, 2, 1, 1))};
    CHECK_THROWS_WITH_AS(require_collinear_family(corner),
                         doctest::Contains("1 and 2"), std::invalid_argument);

    CHECK_THROWS_AS(require_collinear_family({}), std::invalid_argument);
}

TEST_CASE("multiplicity indices match the space shapes") {
    ToleranceConfig cfg;
    // column space: left supports multiply freely, right supports collide
    FamilyInvariants c = compute_invariants(build_column(4).basis, cfg);
    CHECK(c.n == 4);
    CHECK(c.i_r == 1);
    CHECK(c.i_l == 4);
    FamilyInvariants r = compute_invariants(build_row(4).basis, cfg);
    CHECK(r.i_r == 4);
    CHECK(r.i_l == 1);
    // grid spaces: left supports overlap up to k indices, right supports up
    // to n - k + 1, so the two indices always sum to n + 1
    FamilyInvariants h = compute_invariants(build_hnk(4, 2).basis, cfg);
    CHECK(h.i_r == 2);
    CHECK(h.i_l == 3);
}

TEST_CASE("component detection reads off the grid parameters") {
    ToleranceConfig cfg;
    for (int n = 2; n <= 6; ++n) {
        CHECK(detect_components(build_column(n).basis, cfg) == std::vector<int>{1});
        CHECK(detect_components(build_row(n).basis, cfg) == std::vector<int>{n});
        for (int k = 1; k <= n; ++k)
            CHECK(detect_components(build_hnk(n, k).basis, cfg) == std::vector<int>{k});
        std::vector<int> all;
        for (int k = 1; k <= n; ++k) all.push_back(k);
        CHECK(detect_components(build_phi(n).basis, cfg) == all);
    }
}

TEST_CASE("verdicts name the recognized spaces") {
    ToleranceConfig cfg;
    for (int n = 2; n <= 6; ++n) {
        CHECK(classify(build_column(n).basis, cfg).verdict == "C_" + std::to_string(n));
        CHECK(classify(build_row(n).basis, cfg).verdict == "R_" + std::to_string(n));
        CHECK(classify(build_phi(n).basis, cfg).verdict == "Phi_" + std::to_string(n));
        // grid edges collapse to the column and row names
        CHECK(classify(build_hnk(n, 1).basis, cfg).verdict == "C_" + std::to_string(n));
        CHECK(classify(build_hnk(n, n).basis, cfg).verdict == "R_" + std::to_string(n));
        for (int k = 2; k < n; ++k) {
            ClassificationReport rep = classify(build_hnk(n, k).basis, cfg);
            CHECK(rep.verdict == "H_" + std::to_string(n) + "^" + std::to_string(k));
            CHECK(rep.components == std::vector<int>{k});
            CHECK_FALSE(rep.degenerate);
            CHECK(rep.n == n);
        }
    }

    // a genuine two-component intersection joins the component names
    ClassificationReport two = classify(intersect({build_hnk(5, 2), build_hnk(5, 3)}).basis, cfg);
    CHECK(two.components == std::vector<int>{2, 3});
    CHECK(two.verdict == "H_5^2&H_5^3");

    CHECK_THROWS_AS((void)classify({Element(ComplexMatrix(2, 2)), Element(ComplexMatrix(2, 2))},
                                   cfg),
                    std::invalid_argument);
}

TEST_CASE("all component subsets are recovered from intersections") {
    ToleranceConfig cfg;
    for (int n = 3; n <= 5; ++n) {
        std::vector<std::vector<int>> subsets;
        for (int mask = 1; mask < (1 << n); ++mask) {
            std::vector<int> ks;
            for (int k = 1; k <= n; ++k)
                if (mask & (1 << (k - 1))) ks.push_back(k);
            subsets.push_back(ks);
        }
        for (const auto& ks : subsets) {
            std::vector<OperatorBasis> parts;
            for (int k : ks) parts.push_back(build_hnk(n, k));
            ClassificationReport rep = classify(intersect(parts).basis, cfg);
            CHECK(rep.components == ks);
        }
    }
}

TEST_CASE("the verdict survives permutation and unitary conjugation") {
    ToleranceConfig cfg;
    Rng rng(2024);
    for (int n = 3; n <= 5; ++n)
        for (int k = 2; k < n; ++k) {
            OperatorBasis h = build_hnk(n, k);
            ClassificationReport base = classify(h.basis, cfg);

            for (int trial = 0; trial < 5; ++trial) {
                // relabel the family
                std::vector<Element> family = h.basis;
                std::rotate(family.begin(), family.begin() + 1 + trial % (n - 1), family.end());
                // rotate the ambient corners with independent unitaries
                std::vector<ComplexMatrix> left{rng.unitary(h.components[0].rows)};
                std::vector<ComplexMatrix> right{rng.unitary(h.components[0].cols)};
                std::vector<Element> moved = conjugate_family(family, left, right);

                ClassificationReport rep = classify(moved, cfg);
                CHECK(rep.verdict == base.verdict);
                CHECK(rep.components == base.components);
                CHECK_FALSE(rep.degenerate);
            }
        }
    CHECK_THROWS_AS((void)conjugate_family(build_phi(3).basis, {ComplexMatrix::identity(3)},
                                           {ComplexMatrix::identity(1)}),
                    std::invalid_argument);
}

TEST_CASE("ternary closure splits columns from rows and rejects middles") {
    ToleranceConfig cfg;
    for (int n = 2; n <= 5; ++n) {
        TroReport col = tro_dichotomy(build_column(n).basis, cfg);
        CHECK(col.verdict == TroVerdict::column);
        CHECK(col.zero_products == n * (n - 1));
        CHECK(col.scalar_products == 0);
        CHECK(col.mixed_products == 0);

        TroReport row = tro_dichotomy(build_row(n).basis, cfg);
        CHECK(row.verdict == TroVerdict::row);
        CHECK(row.scalar_products == n * (n - 1));
        CHECK(row.zero_products == 0);
    }

    TroReport mid = tro_dichotomy(build_hnk(4, 2).basis, cfg);
    CHECK(mid.verdict == TroVerdict::not_ternary_closed);
    CHECK(mid.mixed_products > 0);

    CHECK(tro_verdict_name(TroVerdict::column) == "C");
    CHECK(tro_verdict_name(TroVerdict::row) == "R");
    CHECK(tro_verdict_name(TroVerdict::not_ternary_closed) == "not_ternary_closed");
}
