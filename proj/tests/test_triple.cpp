#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "opspace/random.hpp"
#include "opspace/spaces.hpp"
#include "opspace/triple.hpp"

using namespace opspace;

namespace {

ComplexMatrix unit(int rows, int cols, int i, int j) {
    ComplexMatrix m(rows, cols);
    m(i, j) = cplx(1.0);
    return m;
}

} // namespace

TEST_CASE("triple product formula, symmetry and linearity") {
    Rng rng(11);
    ComplexMatrix a = rng.gaussian_matrix(3, 4);
    ComplexMatrix b = rng.gaussian_matrix(3, 4);
    ComplexMatrix c = rng.gaussian_matrix(3, 4);

    ComplexMatrix direct = cplx(0.5) * (a * b.adjoint() * c + c * b.adjoint() * a);
    CHECK(max_abs_diff(triple_product(a, b, c), direct) == 0.0);
    // symmetric in the outer arguments
    CHECK(max_abs_diff(triple_product(a, b, c), triple_product(c, b, a)) == 0.0);
    // linear in the first slot
    ComplexMatrix lhs = triple_product(a + c, b, c);
    ComplexMatrix rhs = triple_product(a, b, c) + triple_product(c, b, c);
    CHECK(max_abs_diff(lhs, rhs) < 1e-13);

    // a partial isometry is a fixed point of its own cube
    ComplexMatrix v = unit(3, 4, 1, 2);
    CHECK(max_abs_diff(triple_product(v, v, v), v) == 0.0);

    // tuples act blockwise
    OperatorBasis phi = build_phi(3);
    Element t = triple_product(phi.basis[0], phi.basis[1], phi.basis[2]);
    REQUIRE(t.components() == 3);
    for (std::size_t s = 0; s < 3; ++s) {
        ComplexMatrix want = triple_product(phi.basis[0].blocks[s], phi.basis[1].blocks[s],
                                            phi.basis[2].blocks[s]);
        CHECK(max_abs_diff(t.blocks[s], want) == 0.0);
    }
}

TEST_CASE("peirce parts split a matrix by support corners") {
    Rng rng(22);
    ComplexMatrix x = rng.gaussian_matrix(2, 2);
    ComplexMatrix v = unit(2, 2, 0, 0);

    auto parts = peirce_decompose(x, v);
    // corner, cross, and complement entries in that order
    CHECK(max_abs_diff(parts[0], cplx(x(0, 0)) * unit(2, 2, 0, 0)) == 0.0);
    ComplexMatrix cross(2, 2);
    cross(0, 1) = x(0, 1);
    cross(1, 0) = x(1, 0);
    CHECK(max_abs_diff(parts[1], cross) == 0.0);
    CHECK(max_abs_diff(parts[2], cplx(x(1, 1)) * unit(2, 2, 1, 1)) == 0.0);
    CHECK(max_abs_diff(parts[0] + parts[1] + parts[2], x) == 0.0);

    // the square of v acts as identity on the corner and halves the cross
    ComplexMatrix dv = triple_product(v, v, x);
    CHECK(max_abs_diff(dv, parts[0] + cplx(0.5) * parts[1]) < 1e-15);

    CHECK_THROWS_AS((void)peirce_decompose(x, cplx(0.5) * v), std::invalid_argument);
}

TEST_CASE("peirce parts of tuples sum exactly and never grow the norm") {
    ToleranceConfig cfg;
    Rng rng(33);
    OperatorBasis h = build_hnk(4, 2);
    for (int trial = 0; trial < 20; ++trial) {
        Element x;
        for (const auto& shape : h.components)
            x.blocks.push_back(rng.gaussian_matrix(shape.rows, shape.cols));
        const Element& v = h.basis[static_cast<std::size_t>(trial % 4)];
        auto parts = peirce_decompose(x, v, cfg);
        Element sum = parts[0] + parts[1] + parts[2];
        CHECK(element_max_abs_diff(sum, x) < 1e-14);
        double nx = element_norm(x, cfg);
        for (const auto& p : parts) CHECK(element_norm(p, cfg) <= nx + 1e-10);
    }
}

TEST_CASE("pair classification hits every relation") {
    ComplexMatrix e11 = unit(2, 2, 0, 0);
    ComplexMatrix e22 = unit(2, 2, 1, 1);
    ComplexMatrix eye = e11 + e22;

    CHECK(relation(e11, e22) == Relation::orthogonal);
    CHECK(relation(e11, eye) == Relation::leq);
    CHECK(relation(eye, e11) == Relation::geq);
    // identical partial isometries are corners of each other; the order of
    // checks resolves the tie toward leq
    CHECK(relation(e11, e11) == Relation::leq);

    // a rank-one isometry tilted across both columns relates to e11 in none
    // of the named ways
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix w(2, 2);
    w(0, 0) = s;
    w(0, 1) = s;
    CHECK(relation(e11, w) == Relation::other);

    // distinct grid generators are collinear, as tuples and per level
    for (int n = 2; n <= 4; ++n) {
        OperatorBasis phi = build_phi(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                CHECK(relation(phi.basis[static_cast<std::size_t>(i)],
                               phi.basis[static_cast<std::size_t>(j)]) == Relation::collinear);
            }
        OperatorBasis h = build_hnk(n, n == 2 ? 2 : 2);
        CHECK(relation(h.basis[0].blocks[0], h.basis[1].blocks[0]) == Relation::collinear);
    }

    CHECK(relation_name(Relation::orthogonal) == "orthogonal");
    CHECK(relation_name(Relation::collinear) == "collinear");
    CHECK(relation_name(Relation::leq) == "leq");
    CHECK(relation_name(Relation::geq) == "geq");
    CHECK(relation_name(Relation::other) == "other");
}

TEST_CASE("minimality sees the dimension of the corner compression") {
    // rank-one units are minimal inside the full matrix space
    OperatorBasis m2;
    m2.name = "M_2";
    m2.n = 4;
    m2.components = {{2, 2}};
    m2.basis = {Element(unit(2, 2, 0, 0)), Element(unit(2, 2, 0, 1)), Element(unit(2, 2, 1, 0)),
                Element(unit(2, 2, 1, 1))};
    CHECK(is_minimal(Element(unit(2, 2, 0, 0)), m2));
    // the identity compresses the whole space onto itself
    ComplexMatrix eye = unit(2, 2, 0, 0) + unit(2, 2, 1, 1);
    CHECK_FALSE(is_minimal(Element(eye), m2));

    // grid generators are minimal in their own span
    for (int n = 2; n <= 4; ++n)
        for (int k = 1; k <= n; ++k) {
            OperatorBasis h = build_hnk(n, k);
            CHECK(is_minimal(h.basis[0], h));
        }
    CHECK(is_minimal(build_phi(3).basis[1], build_phi(3)));

    // elements outside the span are rejected by the span check
    CHECK_THROWS_AS((void)is_minimal(Element(unit(2, 2, 0, 1)), build_column(2)),
                    std::invalid_argument);
}

TEST_CASE("support projections of one generator commute across a collinear pair") {
    ToleranceConfig cfg;
    OperatorBasis h = build_hnk(4, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int l = 0; l < 4; ++l) {
                if (i == j || i == l || j == l) continue;
                HoppingReport rep = check_hopping(h.basis[static_cast<std::size_t>(i)],
                                                  h.basis[static_cast<std::size_t>(j)],
                                                  h.basis[static_cast<std::size_t>(l)], cfg);
                CHECK(rep.pass);
                CHECK(rep.left_residual < 1e-12);
                CHECK(rep.right_residual < 1e-12);
            }

    OperatorBasis c = build_column(3);
    HoppingReport rep = check_hopping(c.basis[0], c.basis[1], c.basis[2], cfg);
    CHECK(rep.pass);

    // a corner pair is not collinear, so the check refuses it
    ComplexMatrix eye = unit(2, 2, 0, 0) + unit(2, 2, 1, 1);
    CHECK_THROWS_AS((void)check_hopping(Element(unit(2, 2, 0, 0)), Element(eye), Element(eye), cfg),
                    std::invalid_argument);
}
