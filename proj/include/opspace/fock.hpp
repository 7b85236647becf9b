#pragma once

#include <vector>

#include "opspace/complex_matrix.hpp"
#include "opspace/tolerances.hpp"

namespace opspace {

/*
 * Finite antisymmetric Fock space over C^n. Level m is spanned by e_S for
 * the m-subsets S of {1..n}, ordered lexicographically; the full space has
 * dimension 2^n. Creation by a vector h acts as
 *
 *     C_h e_S = sum_{i not in S} h_i (-1)^|{a in S : a < i}| e_{S + {i}},
 *
 * annihilation is its adjoint, and the full-space operators c_i satisfy the
 * canonical anticommutation relations exactly.
 *
 * The grid basis of build_hnk(n, k) is the same operator in disguise:
 * b_i = V W C_{e_i}, where W is a +-1 diagonal on the k-subset level and V
 * the complement permutation e_S -> e_{S^c}. fock_vs_hnk checks that
 * identity entrywise and by norm sampling.
 */

// Level-m creation by h in C^n: a C(n,m+1) x C(n,m) matrix. Requires
// 0 <= m < n.
ComplexMatrix creation(int n, int m, const std::vector<cplx>& h);

// Adjoint of creation(n, m, h); maps level m+1 to level m.
ComplexMatrix annihilation(int n, int m, const std::vector<cplx>& h);

struct CarReport {
    std::string suite = "car";
    int n = 0;
    double max_residual = 0.0;
    bool pass = false;
};

// Checks c_i c_j + c_j c_i = 0 and c_i c_j* + c_j* c_i = delta_ij on the
// full 2^n-dimensional space. The operators are composed as exact signed
// subset maps, so the residual is an exact integer count reported as a
// double.
CarReport car_check(int n, const ToleranceConfig& cfg = {});

// Complement permutation on the k-subset level: e_S -> e_{S^c},
// a C(n,n-k) x C(n,k) 0/1 matrix.
ComplexMatrix unitary_V(int n, int k);

// +-1 diagonal on the k-subset level. The entry at S is
// epsilon(i, S-{i}) * epsilon_one(S-{i}, i, S^c), the same value for every
// i in S (asserted); it equals (-1)^(k + C(k-1,2) + sum S). k = 0 gives [1].
ComplexMatrix unitary_W(int n, int k);

struct FockCompareReport {
    int n = 0;
    int k = 0;
    double structural_residual = 0.0; // max_i || V W creation(e_i) - b_i ||_max
    double sample_deviation = 0.0;    // max over sampled levels of norm mismatch
    int samples = 0;
    bool pass = false;
};

// Structural identity b_i = V W C_{e_i} plus norm sampling: for random
// matrix coefficients at amplification levels p <= 3, the level norm over
// the grid basis equals the level norm over the creation operators.
FockCompareReport fock_vs_hnk(int n, int k, int samples = 50, const ToleranceConfig& cfg = {});

} // namespace opspace
