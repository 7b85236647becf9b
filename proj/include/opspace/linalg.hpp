#pragma once

#include <vector>

#include "opspace/complex_matrix.hpp"
#include "opspace/tolerances.hpp"

namespace opspace {

// Spectral norm ||a|| via blocked power iteration on a*a (block <= 4,
// orthonormalized each step, largest Ritz value, no deflation). The block
// makes the estimate exact for top singular multiplicity <= 4, which is the
// common case for the spaces built here. Start block is seeded from
// cfg.seed so results are deterministic. Throws std::runtime_error if the
// estimate has not stabilized to iterative_tol within max_iterations.
double operator_norm(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

struct Svd {
    ComplexMatrix u;               // rows x m, m = min(rows, cols)
    std::vector<double> sigma;     // descending, length m
    ComplexMatrix v;               // cols x m; a = u diag(sigma) v^*
};

// One-sided Jacobi SVD. Accurate to machine precision on the dense sizes
// used here; columns with sigma below the dropout threshold get zero u / v
// columns rather than noise.
Svd jacobi_svd(const ComplexMatrix& a);

// Count of singular values above rel_tol * sigma_max (0 for the zero matrix).
int numerical_rank(const ComplexMatrix& a, double rel_tol);

// Largest eigenvalue of a small Hermitian matrix via cyclic Jacobi.
double max_hermitian_eigenvalue(const ComplexMatrix& h);

// In-place modified Gram-Schmidt over columns; rank-deficient columns are
// replaced by fresh deterministic directions so the block keeps full rank.
void orthonormalize_columns(ComplexMatrix& m, std::uint64_t reseed);

// Solves g x = rhs for a small square system by partial-pivot elimination.
std::vector<cplx> solve_dense(ComplexMatrix g, std::vector<cplx> rhs);

} // namespace opspace
