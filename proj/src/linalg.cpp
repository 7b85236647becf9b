#include "opspace/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "opspace/random.hpp"

namespace opspace {

void orthonormalize_columns(ComplexMatrix& m, std::uint64_t reseed) {
    const int rows = m.rows(), cols = m.cols();
    Rng backup(mix_seed(reseed, 0x0f0f0f0fULL));
    for (int j = 0; j < cols; ++j) {
        for (int attempt = 0; attempt < 8; ++attempt) {
            double before = 0.0;
            for (int i = 0; i < rows; ++i) before += std::norm(m(i, j));
            before = std::sqrt(before);
            for (int pass = 0; pass < 2; ++pass) {
                for (int k = 0; k < j; ++k) {
                    cplx proj = 0.0;
                    for (int i = 0; i < rows; ++i) proj += std::conj(m(i, k)) * m(i, j);
                    for (int i = 0; i < rows; ++i) m(i, j) -= proj * m(i, k);
                }
            }
            double nrm = 0.0;
            for (int i = 0; i < rows; ++i) nrm += std::norm(m(i, j));
            nrm = std::sqrt(nrm);
            // A residual far below the incoming norm is cancellation noise,
            // not a direction; normalizing it would duplicate an earlier
            // column. Restart such columns from fresh random data.
            if (nrm > 1e-10 * before && nrm > 1e-150) {
                for (int i = 0; i < rows; ++i) m(i, j) /= nrm;
                break;
            }
            for (int i = 0; i < rows; ++i) m(i, j) = backup.complex_gaussian();
        }
    }
}

double max_hermitian_eigenvalue(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("max_hermitian_eigenvalue: not square");
    const int n = h.rows();
    if (n == 0) return 0.0;
    ComplexMatrix a = h;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                (i == j ? diag : off) += std::norm(a(i, j));
        if (off <= 1e-30 * std::max(diag, 1e-300)) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                cplx apq = a(p, q);
                double g = std::abs(apq);
                if (g < 1e-300) continue;
                cplx phase = apq / g;
                double app = a(p, p).real(), aqq = a(q, q).real();
                double tau = (aqq - app) / (2.0 * g);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
                // rotate in the (p, q) plane with column q pre-multiplied by conj(phase)
                for (int i = 0; i < n; ++i) {
                    cplx aip = a(i, p), aiq = a(i, q) * std::conj(phase);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    cplx apj = a(p, j), aqj = a(q, j) * phase;
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = s * apj + c * aqj;
                }
            }
        }
    }
    double best = a(0, 0).real();
    for (int i = 1; i < n; ++i) best = std::max(best, a(i, i).real());
    return best;
}

double operator_norm(const ComplexMatrix& a, const ToleranceConfig& cfg) {
    cfg.validate();
    ensure_finite(a, "operator_norm input");
    if (a.empty()) return 0.0;
    if (max_abs(a) == 0.0) return 0.0;
    const int p = a.rows(), q = a.cols();
    if (p == 1 && q == 1) return std::abs(a(0, 0));

    const ComplexMatrix ah = a.adjoint();
    const int block = std::min(4, q);
    const std::uint64_t stream =
        mix_seed(cfg.seed, 0x6f70736eULL ^ (static_cast<std::uint64_t>(p) << 20) ^
                               static_cast<std::uint64_t>(q));
    Rng rng(stream);
    ComplexMatrix v = rng.gaussian_matrix(q, block);
    orthonormalize_columns(v, stream);

    double est = 0.0;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        ComplexMatrix z = ah * (a * v); // (a*a) v
        // Ritz block v^* z is Hermitian PSD; its top eigenvalue estimates ||a||^2.
        ComplexMatrix ritz(block, block);
        for (int i = 0; i < block; ++i)
            for (int j = 0; j < block; ++j) {
                cplx s = 0.0;
                for (int r = 0; r < q; ++r) s += std::conj(v(r, i)) * z(r, j);
                ritz(i, j) = s;
            }
        for (int i = 0; i < block; ++i)
            for (int j = i + 1; j < block; ++j) {
                cplx m = 0.5 * (ritz(i, j) + std::conj(ritz(j, i)));
                ritz(i, j) = m;
                ritz(j, i) = std::conj(m);
            }
        double lambda = std::max(0.0, max_hermitian_eigenvalue(ritz));
        double next = std::sqrt(lambda);
        v = z;
        orthonormalize_columns(v, mix_seed(stream, static_cast<std::uint64_t>(it)));
        if (it >= 2 && std::abs(next - est) <= cfg.iterative_tol * std::max(1.0, next)) {
            return next;
        }
        est = next;
    }
    throw std::runtime_error("operator_norm: no convergence within max_iterations");
}

Svd jacobi_svd(const ComplexMatrix& a) {
    ensure_finite(a, "jacobi_svd input");
    if (a.rows() < a.cols()) {
        Svd t = jacobi_svd(a.adjoint());
        return Svd{t.v, t.sigma, t.u};
    }
    const int p = a.rows(), q = a.cols();
    ComplexMatrix w = a;                      // becomes u * diag(sigma)
    ComplexMatrix v = ComplexMatrix::identity(q);
    const double scale = std::max(max_abs(a), 1e-300);

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < q - 1; ++i) {
            for (int j = i + 1; j < q; ++j) {
                cplx g = 0.0;
                double alpha = 0.0, beta = 0.0;
                for (int r = 0; r < p; ++r) {
                    g += std::conj(w(r, i)) * w(r, j);
                    alpha += std::norm(w(r, i));
                    beta += std::norm(w(r, j));
                }
                double ag = std::abs(g);
                off = std::max(off, ag / std::max(std::sqrt(alpha * beta), 1e-300));
                if (ag <= 1e-300 || ag <= 1e-16 * std::sqrt(alpha * beta)) continue;
                cplx phase = g / ag;
                double tau = (beta - alpha) / (2.0 * ag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
                for (int r = 0; r < p; ++r) {
                    cplx wi = w(r, i), wj = w(r, j) * std::conj(phase);
                    w(r, i) = c * wi - s * wj;
                    w(r, j) = s * wi + c * wj;
                }
                for (int r = 0; r < q; ++r) {
                    cplx vi = v(r, i), vj = v(r, j) * std::conj(phase);
                    v(r, i) = c * vi - s * vj;
                    v(r, j) = s * vi + c * vj;
                }
            }
        }
        if (off < 1e-15) break;
    }

    std::vector<double> sig(q);
    for (int j = 0; j < q; ++j) {
        double s = 0.0;
        for (int r = 0; r < p; ++r) s += std::norm(w(r, j));
        sig[j] = std::sqrt(s);
    }
    std::vector<int> order(q);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return sig[x] > sig[y]; });

    Svd out;
    out.u = ComplexMatrix(p, q);
    out.v = ComplexMatrix(q, q);
    out.sigma.resize(q);
    for (int j = 0; j < q; ++j) {
        int src = order[j];
        out.sigma[j] = sig[src];
        if (sig[src] > scale * 1e-14) {
            for (int r = 0; r < p; ++r) out.u(r, j) = w(r, src) / sig[src];
            for (int r = 0; r < q; ++r) out.v(r, j) = v(r, src);
        }
    }
    return out;
}

int numerical_rank(const ComplexMatrix& a, double rel_tol) {
    if (a.empty() || max_abs(a) == 0.0) return 0;
    Svd s = jacobi_svd(a);
    double top = s.sigma.empty() ? 0.0 : s.sigma[0];
    if (top == 0.0) return 0;
    int r = 0;
    for (double sv : s.sigma)
        if (sv > rel_tol * top) ++r;
    return r;
}

std::vector<cplx> solve_dense(ComplexMatrix g, std::vector<cplx> rhs) {
    const int n = g.rows();
    if (g.cols() != n || static_cast<int>(rhs.size()) != n)
        throw std::invalid_argument("solve_dense: shape mismatch");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(g(r, col)) > std::abs(g(piv, col))) piv = r;
        if (std::abs(g(piv, col)) < 1e-300) throw std::runtime_error("solve_dense: singular system");
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(g(piv, c), g(col, c));
            std::swap(rhs[piv], rhs[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            cplx f = g(r, col) / g(col, col);
            if (f == cplx(0.0, 0.0)) continue;
            for (int c = col; c < n; ++c) g(r, c) -= f * g(col, c);
            rhs[r] -= f * rhs[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        cplx s = rhs[r];
        for (int c = r + 1; c < n; ++c) s -= g(r, c) * rhs[c];
        rhs[r] = s / g(r, r);
    }
    return rhs;
}

} // namespace opspace
