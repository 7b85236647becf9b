#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opspace/spaces.hpp"
#include "opspace/tolerances.hpp"

namespace opspace {

// A matrix-amplified element of a space: sum_i lambda_i (x) basis_i with all
// lambda_i of one common shape p x q.
struct LevelElement {
    std::vector<ComplexMatrix> lambda;
};

// Norm of the amplified element: per component c, the spectral norm of
// sum_i kron(lambda_i, basis_i[c]); tuples take the max over components.
double level_norm(const OperatorBasis& space, const LevelElement& x,
                  const ToleranceConfig& cfg = {});

// Two-sided lower bounds on the complete Banach-Mazur distance between the
// spans of two equal-length bases, via the coordinate-identity map.
struct CbEstimate {
    double forward_lower = 1.0; // lower bound on ||id: A -> B||_cb
    double inverse_lower = 1.0; // lower bound on ||id: B -> A||_cb
    double product_lower = 1.0;
    std::optional<double> closed_form; // exact distance where known
    std::string witness_description;
};

// Witness set: every level-1 coordinate, the 1 x n row and n x 1 column of
// basis coordinates, and `samples` seeded Gaussian witnesses per
// amplification level p = 2..levels. Per-level substreams make the witness
// sets nested in `levels`, so the reported bounds are monotone in it.
CbEstimate basis_map_bounds(const OperatorBasis& a, const OperatorBasis& b,
                            const ToleranceConfig& cfg = {}, int levels = 4, int samples = 12);

// Exact distance for the pairs with a known closed form; nullopt otherwise.
std::optional<double> closed_form_distance(const OperatorBasis& a, const OperatorBasis& b);

struct DistanceRow {
    std::string space_a;
    std::string space_b;
    CbEstimate estimate;
    bool divergent = false; // grows without bound as n -> infinity (fixed k)
};

struct DistanceTable {
    int n = 0;
    std::vector<DistanceRow> rows;
};

// All unordered pairs over {C_n, R_n, H_n^1..H_n^n, Phi_n}.
DistanceTable distance_table(int n, const ToleranceConfig& cfg = {}, int levels = 3,
                             int samples = 6);

// max over random unit coordinate vectors of | ||sum lambda_i b_i|| - ||lambda||_2 |.
double orthonormality_deviation(const OperatorBasis& space, int samples,
                                const ToleranceConfig& cfg = {});

} // namespace opspace
