#pragma once

#include <array>
#include <string>

#include "opspace/spaces.hpp"
#include "opspace/tolerances.hpp"

namespace opspace {

// {a, b, c} = (a b* c + c b* a) / 2, componentwise on tuples.
ComplexMatrix triple_product(const ComplexMatrix& a, const ComplexMatrix& b,
                             const ComplexMatrix& c);
Element triple_product(const Element& a, const Element& b, const Element& c);

// Peirce decomposition of x against a partial isometry v: with l = v v* and
// r = v* v, the parts are l x r, l x (1-r) + (1-l) x r, (1-l) x (1-r).
// Indices 2, 1, 0 in that order; the parts sum to x exactly and each
// projection is contractive. Throws if v is not a partial isometry within
// structural_tol.
std::array<ComplexMatrix, 3> peirce_decompose(const ComplexMatrix& x, const ComplexMatrix& v,
                                              const ToleranceConfig& cfg = {});
std::array<Element, 3> peirce_decompose(const Element& x, const Element& v,
                                        const ToleranceConfig& cfg = {});

enum class Relation { orthogonal, collinear, leq, geq, other };

std::string relation_name(Relation r);

// Classifies the pair (v, w) of partial isometries. Precedence when several
// conditions hold numerically: orthogonal, collinear, leq, geq, other.
//   orthogonal: v* w = 0 and v w* = 0
//   collinear:  each lies in the other's Peirce-1 space
//   leq:        v w* v = v   (v is a corner of w)
//   geq:        w v* w = w
Relation relation(const Element& v, const Element& w, const ToleranceConfig& cfg = {});
Relation relation(const ComplexMatrix& v, const ComplexMatrix& w, const ToleranceConfig& cfg = {});

// v minimal in the span of `space`: the Peirce-2 compression of the span is
// one-dimensional. v must be a partial isometry lying in the span.
bool is_minimal(const Element& v, const OperatorBasis& space, const ToleranceConfig& cfg = {});

struct HoppingReport {
    double left_residual = 0.0;  // || uu* vw* - vw* uu* ||
    double right_residual = 0.0; // || u*u v*w - v*w u*u ||
    bool pass = false;
};

// Hopping property of u against the collinear pair (v, w): the left support
// of u commutes with v w* and the right support with v* w. Throws unless v
// and w are each collinear with u.
HoppingReport check_hopping(const Element& u, const Element& v, const Element& w,
                            const ToleranceConfig& cfg = {});

} // namespace opspace
