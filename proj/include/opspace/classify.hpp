#pragma once

#include <string>
#include <vector>

#include "opspace/spaces.hpp"
#include "opspace/tolerances.hpp"

namespace opspace {

/*
 * Recognition of a family u_1..u_n of mutually collinear partial isometries:
 * which grid components carry weight, the multiplicity indices that pin the
 * components down, and the ternary dichotomy of the span.
 *
 * The component detector evaluates (uu*)_{1..k-1} u_k (u*u)_{k+1..n} for
 * each k; on a grid component with parameter j the word survives exactly
 * when j = k, so the surviving k list the components of any direct sum of
 * grid spaces, independent of how the family is presented or labeled.
 */

// Throws std::invalid_argument naming the offending element or pair when
// some u_i is not a partial isometry or some pair is not collinear.
void require_collinear_family(const std::vector<Element>& family,
                              const ToleranceConfig& cfg = {});

struct FamilyInvariants {
    int n = 0;
    int i_r = 0; // largest i such that (uu*)_J != 0 for some |J| = i
    int i_l = 0; // largest i such that (u*u)_J != 0 for some |J| = i
};

// Ordered products are evaluated in ascending index order; for collinear
// families the factors commute, which the tests assert rather than assume.
FamilyInvariants compute_invariants(const std::vector<Element>& family,
                                    const ToleranceConfig& cfg = {});

// k in 1..n with || (uu*)_{1..k-1} u_k (u*u)_{k+1..n} || above structural_tol.
std::vector<int> detect_components(const std::vector<Element>& family,
                                   const ToleranceConfig& cfg = {});

enum class TroVerdict { column, row, not_ternary_closed };

std::string tro_verdict_name(TroVerdict v); // "C" / "R" / "not_ternary_closed"

struct TroReport {
    int zero_products = 0;     // u_i u_i* u_j = 0
    int scalar_products = 0;   // u_i u_i* u_j a unimodular multiple of u_j
    int mixed_products = 0;    // anything else
    TroVerdict verdict = TroVerdict::not_ternary_closed;
};

// Tests u_i u_i* u_j for all i != j: all zero means the span multiplies
// like a column space, all unimodular multiples of u_j like a row space,
// and mixed behavior means the span is not closed under a b* c.
TroReport tro_dichotomy(const std::vector<Element>& family, const ToleranceConfig& cfg = {});

struct ClassificationReport {
    int n = 0;
    FamilyInvariants invariants;
    std::vector<int> components; // ascending, nonempty
    std::string verdict;         // C_n / R_n / Phi_n / H_n^k / joined intersection
    bool degenerate = false;     // near-threshold word norms or invariant mismatch
};

// Throws for families that are not collinear partial isometries or have no
// detectable component. Inconsistency between the multiplicity indices and
// the detected components is flagged as degeneracy, not an error.
ClassificationReport classify(const std::vector<Element>& family,
                              const ToleranceConfig& cfg = {});

// u_i -> left[c] u_i right[c]* per component; shapes must match. Used to
// confirm the verdict does not depend on the presentation.
std::vector<Element> conjugate_family(const std::vector<Element>& family,
                                      const std::vector<ComplexMatrix>& left,
                                      const std::vector<ComplexMatrix>& right);

} // namespace opspace
