#include "opspace/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "opspace/combinat.hpp"
#include "opspace/triple.hpp"

namespace opspace {

namespace {

void validate_family(const std::vector<Element>& family, const char* what) {
    if (family.empty()) throw std::invalid_argument(std::string(what) + ": empty family");
    const std::size_t comps = family.front().components();
    if (comps == 0) throw std::invalid_argument(std::string(what) + ": element has no blocks");
    for (const auto& u : family) {
        if (u.components() != comps) {
            throw std::invalid_argument(std::string(what) + ": mixed component counts");
        }
        for (std::size_t c = 0; c < comps; ++c) {
            if (u.blocks[c].rows() != family.front().blocks[c].rows() ||
                u.blocks[c].cols() != family.front().blocks[c].cols()) {
                throw std::invalid_argument(std::string(what) + ": mixed component shapes");
            }
            ensure_finite(u.blocks[c], what);
        }
    }
}

double element_max_abs(const Element& a) {
    double m = 0.0;
    for (const auto& b : a.blocks) m = std::max(m, max_abs(b));
    return m;
}

// Ascending-order product of u_j u_j* (left) or u_j* u_j (right) over J.
Element support_product(const std::vector<Element>& family, const std::vector<int>& J,
                        bool left) {
    Element acc = left ? mul(family[J[0] - 1], adj(family[J[0] - 1]))
                       : mul(adj(family[J[0] - 1]), family[J[0] - 1]);
    for (std::size_t t = 1; t < J.size(); ++t) {
        const Element& u = family[J[t] - 1];
        acc = left ? mul(acc, mul(u, adj(u))) : mul(acc, mul(adj(u), u));
    }
    return acc;
}

int max_surviving_size(const std::vector<Element>& family, bool left, double tol) {
    const int n = static_cast<int>(family.size());
    int best = 0;
    for (int i = 1; i <= n; ++i) {
        bool found = false;
        for (const auto& J : subsets_lex(n, i)) {
            if (element_max_abs(support_product(family, J, left)) > tol) {
                found = true;
                break;
            }
        }
        if (found) best = i;
    }
    return best;
}

} // namespace

void require_collinear_family(const std::vector<Element>& family, const ToleranceConfig& cfg) {
    cfg.validate();
    validate_family(family, "collinear family");
    const int n = static_cast<int>(family.size());
    for (int i = 0; i < n; ++i) {
        const Element defect = mul(mul(family[i], adj(family[i])), family[i]) - family[i];
        if (element_max_abs(defect) > cfg.structural_tol) {
            throw std::invalid_argument("family element " + std::to_string(i + 1) +
                                        " is not a partial isometry");
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (relation(family[i], family[j], cfg) != Relation::collinear) {
                throw std::invalid_argument("family elements " + std::to_string(i + 1) + " and " +
                                            std::to_string(j + 1) + " are not collinear");
            }
        }
    }
}

FamilyInvariants compute_invariants(const std::vector<Element>& family,
                                    const ToleranceConfig& cfg) {
    require_collinear_family(family, cfg);
    FamilyInvariants inv;
    inv.n = static_cast<int>(family.size());
    inv.i_r = max_surviving_size(family, true, cfg.structural_tol);
    inv.i_l = max_surviving_size(family, false, cfg.structural_tol);
    return inv;
}

std::vector<int> detect_components(const std::vector<Element>& family,
                                   const ToleranceConfig& cfg) {
    require_collinear_family(family, cfg);
    const int n = static_cast<int>(family.size());
    std::vector<int> present;
    for (int k = 1; k <= n; ++k) {
        std::vector<int> I, J;
        for (int i = 1; i < k; ++i) I.push_back(i);
        for (int j = k + 1; j <= n; ++j) J.push_back(j);
        if (element_max_abs(ones_word(family, I, k, J)) > cfg.structural_tol) {
            present.push_back(k);
        }
    }
    return present;
}

std::string tro_verdict_name(TroVerdict v) {
    switch (v) {
        case TroVerdict::column: return "C";
        case TroVerdict::row: return "R";
        case TroVerdict::not_ternary_closed: return "not_ternary_closed";
    }
    return "not_ternary_closed";
}

TroReport tro_dichotomy(const std::vector<Element>& family, const ToleranceConfig& cfg) {
    require_collinear_family(family, cfg);
    const int n = static_cast<int>(family.size());
    TroReport report;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Element w = mul(mul(family[i], adj(family[i])), family[j]);
            if (element_max_abs(w) <= cfg.structural_tol) {
                ++report.zero_products;
                continue;
            }
            const cplx denom = element_hs_inner(family[j], family[j]);
            const cplx c = element_hs_inner(w, family[j]) / denom;
            const bool multiple = element_max_abs(w - c * family[j]) <= cfg.structural_tol &&
                                  std::abs(std::abs(c) - 1.0) <= cfg.structural_tol;
            if (multiple) {
                ++report.scalar_products;
            } else {
                ++report.mixed_products;
            }
        }
    }
    const int pairs = n * (n - 1);
    if (report.zero_products == pairs) {
        report.verdict = TroVerdict::column;
    } else if (report.scalar_products == pairs) {
        report.verdict = TroVerdict::row;
    } else {
        report.verdict = TroVerdict::not_ternary_closed;
    }
    return report;
}

ClassificationReport classify(const std::vector<Element>& family, const ToleranceConfig& cfg) {
    require_collinear_family(family, cfg);
    const int n = static_cast<int>(family.size());

    ClassificationReport report;
    report.n = n;
    report.invariants = compute_invariants(family, cfg);

    // Inline detection so near-threshold word norms can be flagged.
    for (int k = 1; k <= n; ++k) {
        std::vector<int> I, J;
        for (int i = 1; i < k; ++i) I.push_back(i);
        for (int j = k + 1; j <= n; ++j) J.push_back(j);
        // Operator norm, not entrywise max: the magnitude test must not
        // depend on how the family is presented, and a unitarily moved
        // word keeps its spectral norm while its entries spread out.
        const double norm = element_norm(ones_word(family, I, k, J), cfg);
        if (norm > cfg.structural_tol) {
            report.components.push_back(k);
            if (norm < 0.5) report.degenerate = true; // honest words are 0 or >= 1
        }
    }
    if (report.components.empty()) {
        throw std::invalid_argument("classify: no grid component detected");
    }

    const auto& S = report.components;
    const auto hk_name = [n](int k) {
        return "H_" + std::to_string(n) + "^" + std::to_string(k);
    };
    if (S.size() == 1 && S[0] == 1) {
        report.verdict = "C_" + std::to_string(n);
    } else if (S.size() == 1 && S[0] == n) {
        report.verdict = "R_" + std::to_string(n);
    } else if (static_cast<int>(S.size()) == n) {
        report.verdict = "Phi_" + std::to_string(n);
    } else if (S.size() == 1) {
        report.verdict = hk_name(S[0]);
    } else {
        std::string joined = hk_name(S[0]);
        for (std::size_t t = 1; t < S.size(); ++t) joined += "&" + hk_name(S[t]);
        report.verdict = joined;
    }

    if (report.invariants.i_r != S.back() || report.invariants.i_l != n - S.front() + 1) {
        report.degenerate = true;
    }
    return report;
}

std::vector<Element> conjugate_family(const std::vector<Element>& family,
                                      const std::vector<ComplexMatrix>& left,
                                      const std::vector<ComplexMatrix>& right) {
    validate_family(family, "conjugate_family");
    const std::size_t comps = family.front().components();
    if (left.size() != comps || right.size() != comps) {
        throw std::invalid_argument("conjugate_family: one transform pair per component required");
    }
    std::vector<Element> out;
    out.reserve(family.size());
    for (const auto& u : family) {
        std::vector<ComplexMatrix> blocks;
        blocks.reserve(comps);
        for (std::size_t c = 0; c < comps; ++c) {
            blocks.push_back(left[c] * u.blocks[c] * right[c].adjoint());
        }
        out.emplace_back(Element(std::move(blocks)));
    }
    return out;
}

} // namespace opspace
