#pragma once

#include <functional>
#include <string>
#include <vector>

#include "opspace/spaces.hpp"
#include "opspace/tolerances.hpp"

namespace opspace {

/*
 * Contractive projections onto the spaces of spaces.hpp, their supports,
 * and the consistency of the family across n.
 *
 * pnk_apply is the normalized trace pairing against the grid basis,
 *     P x = (1 / C(n-1,k-1)) sum_i tr(x b_i^*) b_i,
 * a completely contractive conditional expectation fixing each b_i and
 * killing every word whose index sets overlap.
 *
 * pn_apply averages the per-component projections over a tuple in the
 * direct sum of all grid components; a word with index data (I, c, J),
 * |I| = i-1, projects to u_c / (n C(n-1,i-1)), and these coefficients are
 * coherent with the embedding that sends a word over {1..n} to the sum of
 * its two index-padded words over {1..n+1}.
 */

ComplexMatrix pnk_apply(int n, int k, const ComplexMatrix& x);

struct PnResult {
    std::vector<cplx> coefficients; // against the diagonal family u_1..u_n
    Element value;                  // sum_c coefficients[c] u_c, one block per k
};

// x has one block per component k = 1..n, shaped C(n,n-k) x C(n,k-1).
PnResult pn_apply(int n, const Element& x);

struct CoherenceReport {
    int n = 0;
    std::uint64_t generators_checked = 0;
    double max_deviation = 0.0;
    bool pass = false;
};

// For every word generator of the degree-n algebra, the projection
// coefficients computed at degree n agree with the coefficients of its two
// index-padded lifts at degree n+1 (and the lift has no weight on the new
// index). Checks all (I, J) with |I| = i-1, |J| = n-i, overlaps included.
CoherenceReport check_coherence(int n, const ToleranceConfig& cfg = {});

struct ConditionalExpectationReport {
    int samples = 0;
    double max_residual = 0.0;
    bool pass = false; // residual within the 1e-8 contract bound
};

// Samples x, y, z and checks P{Px, Py, Pz} = P{x, Py, Pz} = P{Px, y, Pz}
// = P{Px, Py, z} with the triple product of the ambient matrix space.
// Contractive projections satisfy all three strips; oblique ones need not.
ConditionalExpectationReport check_conditional_expectation(
    const std::function<ComplexMatrix(const ComplexMatrix&)>& p, int rows, int cols, int samples,
    const ToleranceConfig& cfg = {});

// Polar part of a: for a = u diag(sigma) v^*, the partial isometry
// u_r v_r^* over the singular values above structural_tol * sigma_max.
// tr(v^* a) is then the trace norm of a; x -> tr(v^* x) is the norming
// functional of a. Throws for the zero matrix; a singular value within a
// factor 10 of the cutoff makes the rank ambiguous and also throws rather
// than truncating silently.
ComplexMatrix support_partial_isometry(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

// A linear map on the p x q matrix space, stored as its (p q) x (p q)
// action on row-major vec(x).
struct LinearOp {
    int rows = 0; // ambient matrix shape
    int cols = 0;
    ComplexMatrix m;

    static LinearOp identity(int rows, int cols);
    static LinearOp from_function(int rows, int cols,
                                  const std::function<ComplexMatrix(const ComplexMatrix&)>& f);
    ComplexMatrix apply(const ComplexMatrix& x) const;
    LinearOp compose(const LinearOp& inner) const; // this after inner
    LinearOp hs_adjoint() const;
};

LinearOp operator+(const LinearOp& a, const LinearOp& b);
LinearOp operator-(const LinearOp& a, const LinearOp& b);

struct ExpansionReport {
    double p_equals_q_plus_lq = 0.0;
    double orthogonality = 0.0;   // TRO orthogonality of L(H) against H
    double q_kills_lh = 0.0;
    double range_match = 0.0;     // P's range against { h + Lh }
    double l_expansion_excess = 0.0; // max(0, (||Lh|| - ||h||) / ||h||) over samples
    bool pass = false;
};

// P expands Q when P = Q + LQ for a contraction L whose image is
// TRO-orthogonal to range(Q) and killed by Q; range(P) is then the graph
// { h + Lh : h in range(Q) } and P is a projection of the same rank as Q.
// Non-idempotent P or Q is a precondition violation and throws.
ExpansionReport is_expansion(const LinearOp& p, const LinearOp& q, const LinearOp& l,
                             const ToleranceConfig& cfg = {});

struct ProjectionSpec {
    enum class Kind { pnk, pn, custom } kind = Kind::custom;
    int n = 0, k = 0;   // grid parameters where applicable
    int rows = 0, cols = 0;
    LinearOp op;
    std::vector<ComplexMatrix> range_basis;

    static ProjectionSpec make_pnk(int n, int k);
    // The tuple projection carried on the block-diagonal embedding of the
    // full grid sum: off-diagonal blocks are compressed away, the diagonal
    // tuple goes through pn_apply. Range = diagonal embeddings of u_1..u_n.
    static ProjectionSpec make_pn(int n);
    static ProjectionSpec make_custom(LinearOp op, const ToleranceConfig& cfg = {});
};

struct SupportSpace {
    OperatorBasis space; // support partial isometries of the dual functionals
    bool essential = false; // support equals the range itself
};

// For each range basis element, the unique norming functional that factors
// through P is represented by a matrix a_i; the supports of the a_i span
// the support space. P is essential exactly when that span reproduces the
// range.
SupportSpace support_space(const ProjectionSpec& spec, const ToleranceConfig& cfg = {});

} // namespace opspace
