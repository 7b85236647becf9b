#include "opspace/triple.hpp"

#include <cmath>
#include <stdexcept>

#include "opspace/linalg.hpp"

namespace opspace {

ComplexMatrix triple_product(const ComplexMatrix& a, const ComplexMatrix& b,
                             const ComplexMatrix& c) {
    ComplexMatrix bs = b.adjoint();
    ComplexMatrix r = a * bs * c + c * bs * a;
    r *= cplx(0.5, 0.0);
    return r;
}

Element triple_product(const Element& a, const Element& b, const Element& c) {
    if (a.blocks.size() != b.blocks.size() || a.blocks.size() != c.blocks.size())
        throw std::invalid_argument("triple_product: component count mismatch");
    Element out;
    out.blocks.reserve(a.blocks.size());
    for (std::size_t i = 0; i < a.blocks.size(); ++i)
        out.blocks.push_back(triple_product(a.blocks[i], b.blocks[i], c.blocks[i]));
    return out;
}

static void require_partial_isometry(const Element& v, const ToleranceConfig& cfg,
                                     const char* who) {
    Element vvv = mul(mul(v, adj(v)), v);
    double dev = element_max_abs_diff(vvv, v);
    if (dev > cfg.structural_tol)
        throw std::invalid_argument(std::string(who) + ": not a partial isometry (||v v* v - v|| = " +
                                    std::to_string(dev) + ")");
}

std::array<ComplexMatrix, 3> peirce_decompose(const ComplexMatrix& x, const ComplexMatrix& v,
                                              const ToleranceConfig& cfg) {
    auto parts = peirce_decompose(Element(x), Element(v), cfg);
    return {parts[0].blocks[0], parts[1].blocks[0], parts[2].blocks[0]};
}

std::array<Element, 3> peirce_decompose(const Element& x, const Element& v,
                                        const ToleranceConfig& cfg) {
    cfg.validate();
    require_partial_isometry(v, cfg, "peirce_decompose");
    if (x.blocks.size() != v.blocks.size())
        throw std::invalid_argument("peirce_decompose: component count mismatch");
    Element p2, p1, p0;
    for (std::size_t i = 0; i < x.blocks.size(); ++i) {
        const ComplexMatrix& xb = x.blocks[i];
        const ComplexMatrix& vb = v.blocks[i];
        ComplexMatrix l = vb * vb.adjoint();
        ComplexMatrix r = vb.adjoint() * vb;
        ComplexMatrix il = ComplexMatrix::identity(l.rows()) - l;
        ComplexMatrix ir = ComplexMatrix::identity(r.rows()) - r;
        p2.blocks.push_back(l * xb * r);
        p1.blocks.push_back(l * xb * ir + il * xb * r);
        p0.blocks.push_back(il * xb * ir);
    }
    return {p2, p1, p0};
}

std::string relation_name(Relation r) {
    switch (r) {
        case Relation::orthogonal: return "orthogonal";
        case Relation::collinear: return "collinear";
        case Relation::leq: return "leq";
        case Relation::geq: return "geq";
        case Relation::other: return "other";
    }
    return "other";
}

Relation relation(const Element& v, const Element& w, const ToleranceConfig& cfg) {
    cfg.validate();
    require_partial_isometry(v, cfg, "relation v");
    require_partial_isometry(w, cfg, "relation w");
    const double tol = cfg.structural_tol;

    Element vw = mul(adj(v), w);
    Element wv = mul(v, adj(w));
    bool right_zero = true, left_zero = true;
    for (const auto& b : vw.blocks) right_zero = right_zero && max_abs(b) <= tol;
    for (const auto& b : wv.blocks) left_zero = left_zero && max_abs(b) <= tol;
    if (right_zero && left_zero) return Relation::orthogonal;

    auto in_peirce1 = [&](const Element& a, const Element& pi) {
        auto parts = peirce_decompose(a, pi, cfg);
        return element_max_abs_diff(parts[1], a) <= tol;
    };
    if (in_peirce1(v, w) && in_peirce1(w, v)) return Relation::collinear;

    Element vwv = mul(mul(v, adj(w)), v);
    if (element_max_abs_diff(vwv, v) <= tol) return Relation::leq;
    Element wvw = mul(mul(w, adj(v)), w);
    if (element_max_abs_diff(wvw, w) <= tol) return Relation::geq;
    return Relation::other;
}

Relation relation(const ComplexMatrix& v, const ComplexMatrix& w, const ToleranceConfig& cfg) {
    return relation(Element(v), Element(w), cfg);
}

// Flattens an element into one long coordinate row.
static std::vector<cplx> flatten(const Element& e) {
    std::vector<cplx> out;
    for (const auto& b : e.blocks) out.insert(out.end(), b.data().begin(), b.data().end());
    return out;
}

bool is_minimal(const Element& v, const OperatorBasis& space, const ToleranceConfig& cfg) {
    cfg.validate();
    require_partial_isometry(v, cfg, "is_minimal");
    const int d = space.dim();
    if (d == 0) throw std::invalid_argument("is_minimal: empty space");

    // membership: HS-project v onto the span and compare
    ComplexMatrix gram(d, d);
    std::vector<cplx> rhs(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) gram(i, j) = element_hs_inner(space.basis[j], space.basis[i]);
        rhs[i] = element_hs_inner(v, space.basis[i]);
    }
    std::vector<cplx> coef = solve_dense(gram, rhs);
    Element proj = coef[0] * space.basis[0];
    for (int i = 1; i < d; ++i) proj = proj + coef[i] * space.basis[i];
    double resid = element_max_abs_diff(proj, v);
    if (resid > cfg.structural_tol)
        throw std::invalid_argument("is_minimal: element outside the span (residual " +
                                    std::to_string(resid) + ")");

    // rank of { P_2(v) b_i : i } decides minimality
    ComplexMatrix stacked(d, static_cast<int>(flatten(space.basis[0]).size()));
    for (int i = 0; i < d; ++i) {
        auto parts = peirce_decompose(space.basis[i], v, cfg);
        auto row = flatten(parts[0]);
        for (std::size_t j = 0; j < row.size(); ++j) stacked(i, static_cast<int>(j)) = row[j];
    }
    return numerical_rank(stacked, cfg.structural_tol) == 1;
}

HoppingReport check_hopping(const Element& u, const Element& v, const Element& w,
                            const ToleranceConfig& cfg) {
    cfg.validate();
    if (relation(v, u, cfg) != Relation::collinear)
        throw std::invalid_argument("check_hopping: v is not collinear with u");
    if (relation(w, u, cfg) != Relation::collinear)
        throw std::invalid_argument("check_hopping: w is not collinear with u");

    Element uu = mul(u, adj(u));
    Element uru = mul(adj(u), u);
    Element vw = mul(v, adj(w));
    Element vrw = mul(adj(v), w);

    HoppingReport rep;
    Element lhsL = mul(uu, vw), rhsL = mul(vw, uu);
    Element lhsR = mul(uru, vrw), rhsR = mul(vrw, uru);
    for (std::size_t i = 0; i < lhsL.blocks.size(); ++i) {
        rep.left_residual =
            std::max(rep.left_residual, operator_norm(lhsL.blocks[i] - rhsL.blocks[i], cfg));
        rep.right_residual =
            std::max(rep.right_residual, operator_norm(lhsR.blocks[i] - rhsR.blocks[i], cfg));
    }
    rep.pass = rep.left_residual <= cfg.structural_tol && rep.right_residual <= cfg.structural_tol;
    return rep;
}

} // namespace opspace
