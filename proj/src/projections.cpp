#include "opspace/projections.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "opspace/linalg.hpp"
#include "opspace/random.hpp"
#include "opspace/triple.hpp"

namespace opspace {

namespace {

void require_shape(const ComplexMatrix& x, int rows, int cols, const char* what) {
    if (x.rows() != rows || x.cols() != cols) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(rows) +
                                    "x" + std::to_string(cols) + ", got " +
                                    std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    }
}

// Coefficients of x against the diagonal family of a build_phi basis.
std::vector<cplx> pn_coefficients(const OperatorBasis& phi, const Element& x) {
    const int n = phi.n;
    if (static_cast<int>(x.blocks.size()) != n) {
        throw std::invalid_argument("pn_coefficients: element has " +
                                    std::to_string(x.blocks.size()) + " blocks, space has " +
                                    std::to_string(n));
    }
    for (int k = 1; k <= n; ++k) {
        require_shape(x.blocks[k - 1], phi.components[k - 1].rows, phi.components[k - 1].cols,
                      "pn_coefficients block");
    }
    std::vector<cplx> coeff(n);
    for (int c = 0; c < n; ++c) {
        cplx s = 0.0;
        for (int k = 1; k <= n; ++k) {
            s += hs_inner(x.blocks[k - 1], phi.basis[c].blocks[k - 1]) /
                 static_cast<double>(binomial(n - 1, k - 1));
        }
        coeff[c] = s / static_cast<double>(n);
    }
    return coeff;
}

Element zero_element(const std::vector<ComponentShape>& shapes) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(shapes.size());
    for (const auto& s : shapes) blocks.emplace_back(s.rows, s.cols);
    return Element(std::move(blocks));
}

} // namespace

ComplexMatrix pnk_apply(int n, int k, const ComplexMatrix& x) {
    const OperatorBasis space = build_hnk(n, k);
    require_shape(x, space.components[0].rows, space.components[0].cols, "pnk_apply");
    ensure_finite(x, "pnk_apply input");
    const double weight = static_cast<double>(binomial(n - 1, k - 1));
    ComplexMatrix out(x.rows(), x.cols());
    for (int i = 0; i < n; ++i) {
        const ComplexMatrix& b = space.basis[i].blocks[0];
        out += (hs_inner(x, b) / weight) * b;
    }
    return out;
}

PnResult pn_apply(int n, const Element& x) {
    const OperatorBasis phi = build_phi(n);
    PnResult result;
    result.coefficients = pn_coefficients(phi, x);
    result.value = zero_element(phi.components);
    for (int c = 0; c < n; ++c) {
        result.value = result.value + result.coefficients[c] * phi.basis[c];
    }
    return result;
}

CoherenceReport check_coherence(int n, const ToleranceConfig& cfg) {
    cfg.validate();
    if (n < 1) throw std::invalid_argument("check_coherence: n must be positive");
    const OperatorBasis phi_n = build_phi(n);
    const OperatorBasis phi_up = build_phi(n + 1);

    CoherenceReport report;
    report.n = n;
    for (int a = 0; a <= n - 1; ++a) {
        const auto Is = subsets_lex(n, a);
        const auto Js = subsets_lex(n, n - 1 - a);
        for (const auto& I : Is) {
            for (const auto& J : Js) {
                const Element word = grid_word(phi_n.basis, I, J);
                const std::vector<cplx> base = pn_coefficients(phi_n, word);

                std::vector<int> I_up = I;
                I_up.push_back(n + 1);
                std::vector<int> J_up = J;
                J_up.push_back(n + 1);
                const Element lift = grid_word(phi_up.basis, I_up, J) +
                                     grid_word(phi_up.basis, I, J_up);
                const std::vector<cplx> lifted = pn_coefficients(phi_up, lift);

                double dev = std::abs(lifted[n]); // no weight on the fresh index
                for (int c = 0; c < n; ++c) {
                    dev = std::max(dev, std::abs(base[c] - lifted[c]));
                }
                report.max_deviation = std::max(report.max_deviation, dev);
                ++report.generators_checked;
            }
        }
    }
    report.pass = report.max_deviation <= cfg.structural_tol;
    return report;
}

ConditionalExpectationReport check_conditional_expectation(
    const std::function<ComplexMatrix(const ComplexMatrix&)>& p, int rows, int cols, int samples,
    const ToleranceConfig& cfg) {
    cfg.validate();
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("check_conditional_expectation: empty matrix shape");
    }
    if (samples < 1) {
        throw std::invalid_argument("check_conditional_expectation: need at least one sample");
    }
    Rng rng(mix_seed(cfg.seed, 0x70636531ULL));
    ConditionalExpectationReport report;
    report.samples = samples;
    for (int s = 0; s < samples; ++s) {
        const ComplexMatrix x = rng.gaussian_matrix(rows, cols);
        const ComplexMatrix y = rng.gaussian_matrix(rows, cols);
        const ComplexMatrix z = rng.gaussian_matrix(rows, cols);
        const ComplexMatrix px = p(x);
        const ComplexMatrix py = p(y);
        const ComplexMatrix pz = p(z);
        require_shape(px, rows, cols, "projection output");

        const ComplexMatrix base = p(triple_product(px, py, pz));
        const double r_first = max_abs_diff(base, p(triple_product(x, py, pz)));
        const double r_mid = max_abs_diff(base, p(triple_product(px, y, pz)));
        const double r_last = max_abs_diff(base, p(triple_product(px, py, z)));
        report.max_residual =
            std::max({report.max_residual, r_first, r_mid, r_last});
    }
    report.pass = report.max_residual <= 1e-8;
    return report;
}

ComplexMatrix support_partial_isometry(const ComplexMatrix& a, const ToleranceConfig& cfg) {
    cfg.validate();
    ensure_finite(a, "support_partial_isometry input");
    const Svd svd = jacobi_svd(a);
    if (svd.sigma.empty() || svd.sigma[0] <= 0.0) {
        throw std::invalid_argument("support_partial_isometry: zero matrix has no support");
    }
    const double cut = cfg.structural_tol * svd.sigma[0];
    for (double s : svd.sigma) {
        if (s > cut / 10.0 && s < cut * 10.0) {
            throw std::runtime_error(
                "support_partial_isometry: singular value near the rank cutoff, "
                "rank is ambiguous");
        }
    }
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t t = 0; t < svd.sigma.size(); ++t) {
        if (svd.sigma[t] <= cut) break;
        for (int i = 0; i < a.rows(); ++i) {
            const cplx ui = svd.u(i, static_cast<int>(t));
            if (ui == cplx(0.0)) continue;
            for (int j = 0; j < a.cols(); ++j) {
                out(i, j) += ui * std::conj(svd.v(j, static_cast<int>(t)));
            }
        }
    }
    return out;
}

LinearOp LinearOp::identity(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("LinearOp: empty shape");
    LinearOp op;
    op.rows = rows;
    op.cols = cols;
    op.m = ComplexMatrix::identity(rows * cols);
    return op;
}

LinearOp LinearOp::from_function(int rows, int cols,
                                 const std::function<ComplexMatrix(const ComplexMatrix&)>& f) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("LinearOp: empty shape");
    const int dim = rows * cols;
    LinearOp op;
    op.rows = rows;
    op.cols = cols;
    op.m = ComplexMatrix(dim, dim);
    for (int t = 0; t < dim; ++t) {
        ComplexMatrix e(rows, cols);
        e.data()[static_cast<std::size_t>(t)] = 1.0;
        const ComplexMatrix y = f(e);
        require_shape(y, rows, cols, "LinearOp::from_function output");
        for (int s = 0; s < dim; ++s) {
            op.m(s, t) = y.data()[static_cast<std::size_t>(s)];
        }
    }
    return op;
}

ComplexMatrix LinearOp::apply(const ComplexMatrix& x) const {
    require_shape(x, rows, cols, "LinearOp::apply");
    const int dim = rows * cols;
    ComplexMatrix y(rows, cols);
    for (int s = 0; s < dim; ++s) {
        cplx acc = 0.0;
        for (int t = 0; t < dim; ++t) {
            acc += m(s, t) * x.data()[static_cast<std::size_t>(t)];
        }
        y.data()[static_cast<std::size_t>(s)] = acc;
    }
    return y;
}

LinearOp LinearOp::compose(const LinearOp& inner) const {
    if (rows != inner.rows || cols != inner.cols) {
        throw std::invalid_argument("LinearOp::compose: shape mismatch");
    }
    LinearOp out;
    out.rows = rows;
    out.cols = cols;
    out.m = m * inner.m;
    return out;
}

LinearOp LinearOp::hs_adjoint() const {
    LinearOp out;
    out.rows = rows;
    out.cols = cols;
    out.m = m.adjoint();
    return out;
}

LinearOp operator+(const LinearOp& a, const LinearOp& b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw std::invalid_argument("LinearOp addition: shape mismatch");
    }
    LinearOp out;
    out.rows = a.rows;
    out.cols = a.cols;
    out.m = a.m + b.m;
    return out;
}

LinearOp operator-(const LinearOp& a, const LinearOp& b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw std::invalid_argument("LinearOp subtraction: shape mismatch");
    }
    LinearOp out;
    out.rows = a.rows;
    out.cols = a.cols;
    out.m = a.m - b.m;
    return out;
}

ExpansionReport is_expansion(const LinearOp& p, const LinearOp& q, const LinearOp& l,
                             const ToleranceConfig& cfg) {
    cfg.validate();
    if (p.rows != q.rows || p.cols != q.cols || p.rows != l.rows || p.cols != l.cols) {
        throw std::invalid_argument("is_expansion: operators act on different shapes");
    }
    const double rank_rel_tol = 1e-9;
    if (max_abs(q.m * q.m - q.m) > cfg.structural_tol) {
        throw std::invalid_argument("is_expansion: Q is not idempotent");
    }
    if (max_abs(p.m * p.m - p.m) > cfg.structural_tol) {
        throw std::invalid_argument("is_expansion: P is not idempotent");
    }
    ExpansionReport report;
    report.p_equals_q_plus_lq = max_abs(p.m - (q.m + l.m * q.m));

    // Range basis of Q from the nonzero left singular directions.
    const Svd svd = jacobi_svd(q.m);
    const int rank_q = numerical_rank(q.m, rank_rel_tol);
    std::vector<ComplexMatrix> range;
    range.reserve(static_cast<std::size_t>(rank_q));
    for (int t = 0; t < rank_q; ++t) {
        ComplexMatrix h(p.rows, p.cols);
        for (int s = 0; s < p.rows * p.cols; ++s) {
            h.data()[static_cast<std::size_t>(s)] = svd.u(s, t);
        }
        range.push_back(std::move(h));
    }

    std::vector<ComplexMatrix> shifted;
    shifted.reserve(range.size());
    for (const auto& h : range) {
        const ComplexMatrix lh = l.apply(h);
        report.q_kills_lh = std::max(report.q_kills_lh, max_abs(q.apply(lh)));
        for (const auto& g : range) {
            report.orthogonality = std::max(report.orthogonality, max_abs(g * lh.adjoint()));
            report.orthogonality = std::max(report.orthogonality, max_abs(g.adjoint() * lh));
        }
        shifted.push_back(h + lh);
    }
    for (const auto& g : shifted) {
        report.range_match = std::max(report.range_match, max_abs_diff(p.apply(g), g));
    }

    // L must not grow the operator norm on range(Q).
    Rng rng(mix_seed(cfg.seed, 0x6578706eULL));
    const int trials = range.empty() ? 0 : 8;
    for (int s = 0; s < trials; ++s) {
        ComplexMatrix h(p.rows, p.cols);
        for (const auto& basis_h : range) {
            h += rng.complex_gaussian() * basis_h;
        }
        const double hn = operator_norm(h, cfg);
        if (hn <= 0.0) continue;
        const double ln = operator_norm(l.apply(h), cfg);
        report.l_expansion_excess =
            std::max(report.l_expansion_excess, std::max(0.0, (ln - hn) / hn));
    }

    const bool same_rank = numerical_rank(p.m, rank_rel_tol) == rank_q;
    const double tol = cfg.structural_tol;
    report.pass = same_rank && report.p_equals_q_plus_lq <= tol && report.orthogonality <= tol &&
                  report.q_kills_lh <= tol && report.range_match <= tol &&
                  report.l_expansion_excess <= tol;
    return report;
}

ProjectionSpec ProjectionSpec::make_pnk(int n, int k) {
    const OperatorBasis space = build_hnk(n, k);
    ProjectionSpec spec;
    spec.kind = Kind::pnk;
    spec.n = n;
    spec.k = k;
    spec.rows = space.components[0].rows;
    spec.cols = space.components[0].cols;
    spec.op = LinearOp::from_function(spec.rows, spec.cols,
                                      [n, k](const ComplexMatrix& x) { return pnk_apply(n, k, x); });
    spec.range_basis.reserve(static_cast<std::size_t>(space.dim()));
    for (const auto& e : space.basis) spec.range_basis.push_back(e.blocks[0]);
    return spec;
}

ProjectionSpec ProjectionSpec::make_pn(int n) {
    const OperatorBasis phi = build_phi(n);
    int total_rows = 0, total_cols = 0;
    for (const auto& s : phi.components) {
        total_rows += s.rows;
        total_cols += s.cols;
    }
    const auto shapes = phi.components;
    const auto action = [n, shapes](const ComplexMatrix& x) {
        std::vector<ComplexMatrix> blocks;
        blocks.reserve(shapes.size());
        int r0 = 0, c0 = 0;
        for (const auto& s : shapes) {
            ComplexMatrix b(s.rows, s.cols);
            for (int i = 0; i < s.rows; ++i) {
                for (int j = 0; j < s.cols; ++j) b(i, j) = x(r0 + i, c0 + j);
            }
            blocks.push_back(std::move(b));
            r0 += s.rows;
            c0 += s.cols;
        }
        const PnResult res = pn_apply(n, Element(std::move(blocks)));
        return direct_sum(res.value.blocks);
    };
    ProjectionSpec spec;
    spec.kind = Kind::pn;
    spec.n = n;
    spec.rows = total_rows;
    spec.cols = total_cols;
    spec.op = LinearOp::from_function(total_rows, total_cols, action);
    spec.range_basis.reserve(static_cast<std::size_t>(n));
    for (const auto& e : phi.basis) spec.range_basis.push_back(direct_sum(e.blocks));
    return spec;
}

ProjectionSpec ProjectionSpec::make_custom(LinearOp op, const ToleranceConfig& cfg) {
    cfg.validate();
    if (op.rows < 1 || op.cols < 1) throw std::invalid_argument("make_custom: empty shape");
    if (max_abs(op.m * op.m - op.m) > cfg.structural_tol) {
        throw std::invalid_argument("make_custom: operator is not idempotent");
    }
    ProjectionSpec spec;
    spec.kind = Kind::custom;
    spec.rows = op.rows;
    spec.cols = op.cols;
    const Svd svd = jacobi_svd(op.m);
    const int rank = numerical_rank(op.m, 1e-9);
    for (int t = 0; t < rank; ++t) {
        ComplexMatrix h(spec.rows, spec.cols);
        for (int s = 0; s < spec.rows * spec.cols; ++s) {
            h.data()[static_cast<std::size_t>(s)] = svd.u(s, t);
        }
        spec.range_basis.push_back(std::move(h));
    }
    spec.op = std::move(op);
    return spec;
}

SupportSpace support_space(const ProjectionSpec& spec, const ToleranceConfig& cfg) {
    cfg.validate();
    const std::size_t r = spec.range_basis.size();
    if (r == 0) throw std::invalid_argument("support_space: projection has empty range");
    for (const auto& h : spec.range_basis) {
        require_shape(h, spec.rows, spec.cols, "support_space range element");
    }

    // Dual family: m_t in span{h_s} with <h_s, m_t> = delta_st.
    ComplexMatrix gram(static_cast<int>(r), static_cast<int>(r));
    for (std::size_t s = 0; s < r; ++s) {
        for (std::size_t t = 0; t < r; ++t) {
            gram(static_cast<int>(s), static_cast<int>(t)) =
                hs_inner(spec.range_basis[t], spec.range_basis[s]);
        }
    }
    std::vector<ComplexMatrix> supports;
    supports.reserve(r);
    const LinearOp p_adj = spec.op.hs_adjoint();
    for (std::size_t t = 0; t < r; ++t) {
        std::vector<cplx> rhs(r, cplx(0.0));
        rhs[t] = 1.0;
        const std::vector<cplx> c = solve_dense(gram, rhs);
        ComplexMatrix dual(spec.rows, spec.cols);
        for (std::size_t s = 0; s < r; ++s) {
            dual += c[s] * spec.range_basis[s];
        }
        // The norming functional of h_t that factors through the projection
        // is x -> <P x, dual>; its representing matrix is P^*(dual).
        supports.push_back(support_partial_isometry(p_adj.apply(dual), cfg));
    }

    SupportSpace result;
    result.space.name = "support";
    result.space.kind = SpaceKind::custom;
    result.space.n = static_cast<int>(r);
    result.space.components = {ComponentShape{spec.rows, spec.cols}};
    for (auto& v : supports) result.space.basis.emplace_back(Element(std::move(v)));

    // essential: the supports span exactly the range.
    const int dim = spec.rows * spec.cols;
    ComplexMatrix stack_h(static_cast<int>(r), dim);
    ComplexMatrix stack_v(static_cast<int>(r), dim);
    ComplexMatrix stack_both(static_cast<int>(2 * r), dim);
    for (std::size_t t = 0; t < r; ++t) {
        for (int s = 0; s < dim; ++s) {
            stack_h(static_cast<int>(t), s) = spec.range_basis[t].data()[static_cast<std::size_t>(s)];
            stack_v(static_cast<int>(t), s) =
                result.space.basis[t].blocks[0].data()[static_cast<std::size_t>(s)];
            stack_both(static_cast<int>(t), s) = stack_h(static_cast<int>(t), s);
            stack_both(static_cast<int>(r + t), s) = stack_v(static_cast<int>(t), s);
        }
    }
    const double rel = 1e-9;
    const int rank_h = numerical_rank(stack_h, rel);
    const int rank_v = numerical_rank(stack_v, rel);
    const int rank_both = numerical_rank(stack_both, rel);
    result.essential = rank_h == rank_v && rank_v == rank_both;
    return result;
}

} // namespace opspace
