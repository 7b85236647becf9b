#include "opspace/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "opspace/combinat.hpp"
#include "opspace/linalg.hpp"
#include "opspace/random.hpp"
#include "opspace/spaces.hpp"

namespace opspace {

ComplexMatrix creation(int n, int m, const std::vector<cplx>& h) {
    if (n < 1) throw std::invalid_argument("creation: n must be >= 1");
    if (m < 0 || m >= n)
        throw std::invalid_argument("creation: level m = " + std::to_string(m) +
                                    " outside 0.." + std::to_string(n - 1));
    if (static_cast<int>(h.size()) != n)
        throw std::invalid_argument("creation: coefficient vector has size " +
                                    std::to_string(h.size()) + ", expected " + std::to_string(n));
    SubsetIndexer dom(n, m), img(n, m + 1);
    ComplexMatrix c(static_cast<int>(img.size()), static_cast<int>(dom.size()));
    const auto dom_sets = subsets_lex(n, m);
    for (std::size_t col = 0; col < dom_sets.size(); ++col) {
        const auto& S = dom_sets[col];
        for (int i = 1; i <= n; ++i) {
            if (h[i - 1] == cplx(0.0, 0.0)) continue;
            if (std::binary_search(S.begin(), S.end(), i)) continue;
            std::vector<int> T = S;
            T.insert(std::upper_bound(T.begin(), T.end(), i), i);
            c(static_cast<int>(img.rank(T)), static_cast<int>(col)) +=
                h[i - 1] * static_cast<double>(insertion_sign(i, S));
        }
    }
    return c;
}

ComplexMatrix annihilation(int n, int m, const std::vector<cplx>& h) {
    return creation(n, m, h).adjoint();
}

namespace {

// Action of a product of creation/annihilation generators on a subset
// basis vector, tracked exactly. mask bit (i-1) set <=> i in S.
struct BasisVec {
    std::uint32_t mask = 0;
    std::int64_t coeff = 0; // 0 encodes the zero vector
};

int bits_below(std::uint32_t mask, int i) {
    std::uint32_t low = mask & ((1u << (i - 1)) - 1u);
    return __builtin_popcount(low);
}

BasisVec apply_c(int i, BasisVec v) {
    if (!v.coeff) return v;
    std::uint32_t bit = 1u << (i - 1);
    if (v.mask & bit) return {0, 0};
    int s = bits_below(v.mask, i) % 2 ? -1 : 1;
    return {v.mask | bit, v.coeff * s};
}

BasisVec apply_ann(int i, BasisVec v) {
    if (!v.coeff) return v;
    std::uint32_t bit = 1u << (i - 1);
    if (!(v.mask & bit)) return {0, 0};
    int s = bits_below(v.mask ^ bit, i) % 2 ? -1 : 1;
    return {v.mask ^ bit, v.coeff * s};
}

} // namespace

CarReport car_check(int n, const ToleranceConfig& cfg) {
    cfg.validate();
    if (n < 1 || n > 12)
        throw std::invalid_argument("car_check: n = " + std::to_string(n) + " outside 1..12");
    CarReport rep;
    rep.n = n;
    std::int64_t worst = 0;
    const std::uint32_t total = 1u << n;
    // coefficient accumulator over the 2^n basis vectors
    std::vector<std::int64_t> acc(total, 0);
    std::vector<std::uint32_t> touched;
    auto add = [&](BasisVec v) {
        if (!v.coeff) return;
        if (!acc[v.mask]) touched.push_back(v.mask);
        acc[v.mask] += v.coeff;
    };
    auto settle = [&]() {
        for (std::uint32_t m : touched) {
            worst = std::max(worst, std::abs(acc[m]));
            acc[m] = 0;
        }
        touched.clear();
    };
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            for (std::uint32_t m = 0; m < total; ++m) {
                BasisVec v{m, 1};
                // c_i c_j + c_j c_i must kill every basis vector
                add(apply_c(i, apply_c(j, v)));
                add(apply_c(j, apply_c(i, v)));
                settle();
                // c_i c_j* + c_j* c_i = delta_ij
                add(apply_c(i, apply_ann(j, v)));
                add(apply_ann(j, apply_c(i, v)));
                add({m, i == j ? -1 : 0});
                settle();
            }
        }
    }
    rep.max_residual = static_cast<double>(worst);
    rep.pass = rep.max_residual <= cfg.iterative_tol;
    return rep;
}

ComplexMatrix unitary_V(int n, int k) {
    if (n < 1 || k < 0 || k > n) throw std::invalid_argument("unitary_V: need 0 <= k <= n");
    SubsetIndexer dom(n, k), img(n, n - k);
    ComplexMatrix v(static_cast<int>(img.size()), static_cast<int>(dom.size()));
    const auto dom_sets = subsets_lex(n, k);
    for (std::size_t col = 0; col < dom_sets.size(); ++col) {
        std::vector<int> comp;
        for (int t = 1; t <= n; ++t)
            if (!std::binary_search(dom_sets[col].begin(), dom_sets[col].end(), t))
                comp.push_back(t);
        v(static_cast<int>(img.rank(comp)), static_cast<int>(col)) = 1.0;
    }
    return v;
}

ComplexMatrix unitary_W(int n, int k) {
    if (n < 1 || k < 0 || k > n) throw std::invalid_argument("unitary_W: need 0 <= k <= n");
    SubsetIndexer idx(n, k);
    ComplexMatrix w(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
    const auto sets = subsets_lex(n, k);
    for (std::size_t d = 0; d < sets.size(); ++d) {
        const auto& S = sets[d];
        if (S.empty()) {
            w(0, 0) = 1.0;
            continue;
        }
        std::vector<int> comp;
        for (int t = 1; t <= n; ++t)
            if (!std::binary_search(S.begin(), S.end(), t)) comp.push_back(t);
        int value = 0;
        for (int i : S) {
            std::vector<int> I;
            for (int t : S)
                if (t != i) I.push_back(t);
            int entry = insertion_sign(i, I) * epsilon_one(I, i, comp);
            if (value == 0) value = entry;
            else if (value != entry)
                throw std::runtime_error("unitary_W: sign product depends on the inserted index");
        }
        w(static_cast<int>(d), static_cast<int>(d)) = static_cast<double>(value);
    }
    return w;
}

FockCompareReport fock_vs_hnk(int n, int k, int samples, const ToleranceConfig& cfg) {
    cfg.validate();
    if (k < 1 || k > n) throw std::invalid_argument("fock_vs_hnk: need 1 <= k <= n");
    if (samples < 0) throw std::invalid_argument("fock_vs_hnk: negative sample count");
    FockCompareReport rep;
    rep.n = n;
    rep.k = k;

    OperatorBasis h = build_hnk(n, k);
    ComplexMatrix u = unitary_V(n, k) * unitary_W(n, k);
    std::vector<ComplexMatrix> cre(n);
    for (int i = 1; i <= n; ++i) {
        std::vector<cplx> ei(n, 0.0);
        ei[i - 1] = 1.0;
        cre[i - 1] = creation(n, k - 1, ei);
        rep.structural_residual =
            std::max(rep.structural_residual, max_abs_diff(u * cre[i - 1], h.basis[i - 1].blocks[0]));
    }

    Rng rng(mix_seed(cfg.seed, 0xf0c4ULL ^ (static_cast<std::uint64_t>(n) << 8) ^
                                   static_cast<std::uint64_t>(k)));
    for (int s = 0; s < samples; ++s) {
        int p = 1 + s % 3;
        ComplexMatrix lhs, rhs;
        for (int i = 0; i < n; ++i) {
            ComplexMatrix lam = rng.gaussian_matrix(p, p);
            ComplexMatrix a = kron(lam, h.basis[i].blocks[0]);
            ComplexMatrix b = kron(lam, cre[i]);
            if (i == 0) {
                lhs = a;
                rhs = b;
            } else {
                lhs += a;
                rhs += b;
            }
        }
        rep.sample_deviation =
            std::max(rep.sample_deviation, std::abs(operator_norm(lhs, cfg) - operator_norm(rhs, cfg)));
        ++rep.samples;
    }
    rep.pass = rep.structural_residual <= cfg.structural_tol && rep.sample_deviation <= 1e-7;
    return rep;
}

} // namespace opspace
