#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opspace/combinat.hpp"
#include "opspace/complex_matrix.hpp"
#include "opspace/tolerances.hpp"

namespace opspace {

/*
 * Concrete operator spaces spanned by families of partial isometries.
 *
 * The central construction is the grid basis b_1 .. b_n living in
 * M_{C(n,n-k) x C(n,k-1)}: rows are indexed lexicographically by the
 * (n-k)-subsets J of {1..n}, columns by the (k-1)-subsets I, and
 *
 *     b_i(J, I) = epsilon_one(I, i, J)   when I, {i}, J partition {1..n},
 *                 0                      otherwise.
 *
 * k = 1 gives a signed column space, k = n a signed row space, and forming
 * the intersection over all k gives the fermionic space whose generators
 * satisfy the canonical anticommutation relations up to a unitary.
 *
 * Elements of an intersection carry one block per component; the norm of a
 * tuple is the max of the component norms.
 */

// One element of a (possibly multi-component) operator space.
struct Element {
    std::vector<ComplexMatrix> blocks;

    Element() = default;
    explicit Element(ComplexMatrix single) { blocks.push_back(std::move(single)); }
    explicit Element(std::vector<ComplexMatrix> b) : blocks(std::move(b)) {}

    std::size_t components() const { return blocks.size(); }
};

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator*(cplx s, const Element& a);
// componentwise matrix product
Element mul(const Element& a, const Element& b);
Element adj(const Element& a);
double element_norm(const Element& a, const ToleranceConfig& cfg);
double element_max_abs_diff(const Element& a, const Element& b);
cplx element_hs_inner(const Element& a, const Element& b);
bool element_is_zero(const Element& a, double tol);

struct ComponentShape {
    int rows = 0;
    int cols = 0;
};

enum class SpaceKind { column, row, hnk, phi, intersection, custom };

std::string space_kind_name(SpaceKind k);

struct OperatorBasis {
    std::string name;
    SpaceKind kind = SpaceKind::custom;
    int n = 0; // number of basis elements
    int k = 0; // grid parameter for kind == hnk, otherwise 0
    std::vector<ComponentShape> components;
    std::vector<Element> basis;

    int dim() const { return static_cast<int>(basis.size()); }
};

OperatorBasis build_column(int n); // e_{i1} in M_{n,1}
OperatorBasis build_row(int n);    // e_{1i} in M_{1,n}
OperatorBasis build_hnk(int n, int k);
// All grid components at once: element i has blocks (b_i^{n,1}, ..., b_i^{n,n}).
OperatorBasis build_phi(int n);

// Componentwise juxtaposition of equal-length bases over the same index set.
OperatorBasis intersect(const std::vector<OperatorBasis>& parts);

// Words over a spanning family u_1..u_n (componentwise for tuples):
//   ones_word:  (uu*)_I u_c (u*u)_J       with I, {c}, J pairwise disjoint
//   grid_word:  (uu*)_{I-J} u_{c_1} u_{d_1}* u_{c_2} ... u_{c_{s+1}} (u*u)_{J-I}
// where {d_1<..<d_s} = I cap J and {c_1<..<c_{s+1}} = complement of I cup J.
// grid_word with disjoint I, J reduces to ones_word.
Element ones_word(const std::vector<Element>& family, const std::vector<int>& I, int c,
                  const std::vector<int>& J);
Element grid_word(const std::vector<Element>& family, const std::vector<int>& I,
                  const std::vector<int>& J);

struct SignedUnit {
    ComplexMatrix matrix;    // the evaluated word, exactly +-1 at one entry
    int sign = 0;            // the entry's value
    std::size_t row_rank = 0; // lex rank of J among (n-k)-subsets
    std::size_t col_rank = 0; // lex rank of I among (k-1)-subsets
    std::vector<int> I, J;
};

// Evaluates grid_word over build_hnk(n, k) and checks the result is a signed
// matrix unit at position (rank J, rank I). |I| = k-1, |J| = n-k; the sets
// may intersect.
SignedUnit build_uij(int n, int k, const std::vector<int>& I, const std::vector<int>& J);

struct GridCheck {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
};

// u_{IJ} (u_{IJ'})* u_{I'J'} = sign-consistent u_{I'J}, verified for every
// quadruple (I, I', J, J') in exact integer arithmetic.
GridCheck verify_grid_relation(int n, int k);

// sum over partitions {1..n}-{c} = I sqcup J of (bb*)_I b_c (b*b)_J equals
// b_c, exact integer arithmetic, every c.
GridCheck verify_ones_decomposition(int n, int k);

} // namespace opspace
