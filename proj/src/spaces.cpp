#include "opspace/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "opspace/linalg.hpp"

namespace opspace {

static void require_same_components(const Element& a, const Element& b, const char* op) {
    if (a.blocks.size() != b.blocks.size())
        throw std::invalid_argument(std::string(op) + ": component count " +
                                    std::to_string(a.blocks.size()) + " vs " +
                                    std::to_string(b.blocks.size()));
}

Element operator+(const Element& a, const Element& b) {
    require_same_components(a, b, "element add");
    Element out;
    out.blocks.reserve(a.blocks.size());
    for (std::size_t i = 0; i < a.blocks.size(); ++i) out.blocks.push_back(a.blocks[i] + b.blocks[i]);
    return out;
}

Element operator-(const Element& a, const Element& b) {
    require_same_components(a, b, "element subtract");
    Element out;
    out.blocks.reserve(a.blocks.size());
    for (std::size_t i = 0; i < a.blocks.size(); ++i) out.blocks.push_back(a.blocks[i] - b.blocks[i]);
    return out;
}

Element operator*(cplx s, const Element& a) {
    Element out = a;
    for (auto& b : out.blocks) b *= s;
    return out;
}

Element mul(const Element& a, const Element& b) {
    require_same_components(a, b, "element multiply");
    Element out;
    out.blocks.reserve(a.blocks.size());
    for (std::size_t i = 0; i < a.blocks.size(); ++i) out.blocks.push_back(a.blocks[i] * b.blocks[i]);
    return out;
}

Element adj(const Element& a) {
    Element out;
    out.blocks.reserve(a.blocks.size());
    for (const auto& b : a.blocks) out.blocks.push_back(b.adjoint());
    return out;
}

double element_norm(const Element& a, const ToleranceConfig& cfg) {
    double m = 0.0;
    for (const auto& b : a.blocks) m = std::max(m, operator_norm(b, cfg));
    return m;
}

double element_max_abs_diff(const Element& a, const Element& b) {
    require_same_components(a, b, "element_max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.blocks.size(); ++i)
        m = std::max(m, max_abs_diff(a.blocks[i], b.blocks[i]));
    return m;
}

cplx element_hs_inner(const Element& a, const Element& b) {
    require_same_components(a, b, "element_hs_inner");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.blocks.size(); ++i) s += hs_inner(a.blocks[i], b.blocks[i]);
    return s;
}

bool element_is_zero(const Element& a, double tol) {
    for (const auto& b : a.blocks)
        if (max_abs(b) > tol) return false;
    return true;
}

std::string space_kind_name(SpaceKind k) {
    switch (k) {
        case SpaceKind::column: return "column";
        case SpaceKind::row: return "row";
        case SpaceKind::hnk: return "hnk";
        case SpaceKind::phi: return "phi";
        case SpaceKind::intersection: return "intersection";
        case SpaceKind::custom: return "custom";
    }
    return "custom";
}

OperatorBasis build_column(int n) {
    if (n < 1) throw std::invalid_argument("build_column: n must be >= 1");
    OperatorBasis s;
    s.name = "C_" + std::to_string(n);
    s.kind = SpaceKind::column;
    s.n = n;
    s.components = {{n, 1}};
    for (int i = 0; i < n; ++i) {
        ComplexMatrix m(n, 1);
        m(i, 0) = 1.0;
        s.basis.emplace_back(std::move(m));
    }
    return s;
}

OperatorBasis build_row(int n) {
    if (n < 1) throw std::invalid_argument("build_row: n must be >= 1");
    OperatorBasis s;
    s.name = "R_" + std::to_string(n);
    s.kind = SpaceKind::row;
    s.n = n;
    s.components = {{1, n}};
    for (int i = 0; i < n; ++i) {
        ComplexMatrix m(1, n);
        m(0, i) = 1.0;
        s.basis.emplace_back(std::move(m));
    }
    return s;
}

OperatorBasis build_hnk(int n, int k) {
    if (n < 1) throw std::invalid_argument("build_hnk: n must be >= 1");
    if (k < 1 || k > n)
        throw std::invalid_argument("build_hnk: k = " + std::to_string(k) + " outside 1.." +
                                    std::to_string(n));
    SubsetIndexer rows(n, n - k), cols(n, k - 1);
    OperatorBasis s;
    s.name = "H_" + std::to_string(n) + "^" + std::to_string(k);
    s.kind = SpaceKind::hnk;
    s.n = n;
    s.k = k;
    s.components = {{static_cast<int>(rows.size()), static_cast<int>(cols.size())}};
    const auto col_sets = subsets_lex(n, k - 1);
    for (int i = 1; i <= n; ++i) {
        ComplexMatrix b(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (std::size_t ci = 0; ci < col_sets.size(); ++ci) {
            const auto& I = col_sets[ci];
            if (std::find(I.begin(), I.end(), i) != I.end()) continue;
            std::vector<int> J;
            J.reserve(n - k);
            for (int v = 1; v <= n; ++v)
                if (v != i && std::find(I.begin(), I.end(), v) == I.end()) J.push_back(v);
            b(static_cast<int>(rows.rank(J)), static_cast<int>(ci)) =
                static_cast<double>(epsilon_one(I, i, J));
        }
        s.basis.emplace_back(std::move(b));
    }
    return s;
}

OperatorBasis build_phi(int n) {
    if (n < 1) throw std::invalid_argument("build_phi: n must be >= 1");
    std::vector<OperatorBasis> parts;
    parts.reserve(n);
    for (int k = 1; k <= n; ++k) parts.push_back(build_hnk(n, k));
    OperatorBasis s = intersect(parts);
    s.name = "Phi_" + std::to_string(n);
    s.kind = SpaceKind::phi;
    s.k = 0;
    return s;
}

OperatorBasis intersect(const std::vector<OperatorBasis>& parts) {
    if (parts.empty()) throw std::invalid_argument("intersect: no parts");
    const int n = parts[0].dim();
    OperatorBasis s;
    s.kind = SpaceKind::intersection;
    s.n = parts[0].n;
    for (std::size_t p = 0; p < parts.size(); ++p) {
        if (parts[p].dim() != n)
            throw std::invalid_argument("intersect: part " + std::to_string(p) + " has dimension " +
                                        std::to_string(parts[p].dim()) + ", expected " +
                                        std::to_string(n));
        if (parts[p].n != s.n)
            throw std::invalid_argument("intersect: part " + std::to_string(p) +
                                        " indexes a different ground set");
        s.components.insert(s.components.end(), parts[p].components.begin(),
                            parts[p].components.end());
        s.name += (p ? "&" : "") + parts[p].name;
    }
    s.basis.resize(n);
    for (int i = 0; i < n; ++i) {
        for (const auto& part : parts)
            s.basis[i].blocks.insert(s.basis[i].blocks.end(), part.basis[i].blocks.begin(),
                                     part.basis[i].blocks.end());
    }
    return s;
}

static Element element_identity_like(const Element& sample, bool left) {
    Element out;
    for (const auto& b : sample.blocks)
        out.blocks.push_back(ComplexMatrix::identity(left ? b.rows() : b.cols()));
    return out;
}

Element ones_word(const std::vector<Element>& family, const std::vector<int>& I, int c,
                  const std::vector<int>& J) {
    const int n = static_cast<int>(family.size());
    if (c < 1 || c > n) throw std::invalid_argument("ones_word: middle index outside family");
    std::vector<int> Is = canonical_subset(I, n, "ones_word I");
    std::vector<int> Js = canonical_subset(J, n, "ones_word J");
    if (!disjoint(Is, Js) || std::find(Is.begin(), Is.end(), c) != Is.end() ||
        std::find(Js.begin(), Js.end(), c) != Js.end())
        throw std::invalid_argument("ones_word: I, {c}, J must be pairwise disjoint");
    Element acc = element_identity_like(family[0], true);
    for (int t : Is) acc = mul(acc, mul(family[t - 1], adj(family[t - 1])));
    acc = mul(acc, family[c - 1]);
    for (int t : Js) acc = mul(acc, mul(adj(family[t - 1]), family[t - 1]));
    return acc;
}

Element grid_word(const std::vector<Element>& family, const std::vector<int>& I,
                  const std::vector<int>& J) {
    const int n = static_cast<int>(family.size());
    std::vector<int> Is = canonical_subset(I, n, "grid_word I");
    std::vector<int> Js = canonical_subset(J, n, "grid_word J");
    std::vector<int> d, c, i_minus_j, j_minus_i;
    for (int v = 1; v <= n; ++v) {
        bool in_i = std::binary_search(Is.begin(), Is.end(), v);
        bool in_j = std::binary_search(Js.begin(), Js.end(), v);
        if (in_i && in_j) d.push_back(v);
        else if (in_i) i_minus_j.push_back(v);
        else if (in_j) j_minus_i.push_back(v);
        else c.push_back(v);
    }
    if (c.size() != d.size() + 1)
        throw std::invalid_argument("grid_word: need |complement of I cup J| = |I cap J| + 1");
    Element acc = element_identity_like(family[0], true);
    for (int t : i_minus_j) acc = mul(acc, mul(family[t - 1], adj(family[t - 1])));
    acc = mul(acc, family[c[0] - 1]);
    for (std::size_t s = 0; s < d.size(); ++s) {
        acc = mul(acc, adj(family[d[s] - 1]));
        acc = mul(acc, family[c[s + 1] - 1]);
    }
    for (int t : j_minus_i) acc = mul(acc, mul(adj(family[t - 1]), family[t - 1]));
    return acc;
}

SignedUnit build_uij(int n, int k, const std::vector<int>& I, const std::vector<int>& J) {
    std::vector<int> Is = canonical_subset(I, n, "build_uij I");
    std::vector<int> Js = canonical_subset(J, n, "build_uij J");
    if (static_cast<int>(Is.size()) != k - 1)
        throw std::invalid_argument("build_uij: |I| = " + std::to_string(Is.size()) +
                                    ", expected " + std::to_string(k - 1));
    if (static_cast<int>(Js.size()) != n - k)
        throw std::invalid_argument("build_uij: |J| = " + std::to_string(Js.size()) +
                                    ", expected " + std::to_string(n - k));
    OperatorBasis h = build_hnk(n, k);
    Element w = grid_word(h.basis, Is, Js);
    SignedUnit out;
    out.matrix = w.blocks[0];
    out.I = Is;
    out.J = Js;
    SubsetIndexer rows(n, n - k), cols(n, k - 1);
    out.row_rank = rows.rank(Js);
    out.col_rank = cols.rank(Is);
    int nonzeros = 0;
    for (int r = 0; r < out.matrix.rows(); ++r)
        for (int col = 0; col < out.matrix.cols(); ++col) {
            double re = out.matrix(r, col).real();
            if (re == 0.0) continue;
            ++nonzeros;
            if (r != static_cast<int>(out.row_rank) || col != static_cast<int>(out.col_rank) ||
                std::abs(re) != 1.0)
                throw std::runtime_error("build_uij: word did not reduce to a signed unit");
            out.sign = re > 0 ? 1 : -1;
        }
    if (nonzeros != 1) throw std::runtime_error("build_uij: word has " + std::to_string(nonzeros) +
                                                " nonzero entries, expected 1");
    return out;
}

// ---- exact integer route, used by the verification suites ----

namespace {

struct IntMat {
    int rows = 0, cols = 0;
    std::vector<std::int64_t> v;
    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0) {}
    std::int64_t& at(int i, int j) { return v[static_cast<std::size_t>(i) * cols + j]; }
    std::int64_t at(int i, int j) const { return v[static_cast<std::size_t>(i) * cols + j]; }
};

IntMat imul(const IntMat& a, const IntMat& b) {
    IntMat r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            std::int64_t aik = a.at(i, k);
            if (!aik) continue;
            for (int j = 0; j < b.cols; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

IntMat itrans(const IntMat& a) {
    IntMat r(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
    return r;
}

bool iequal(const IntMat& a, const IntMat& b) {
    return a.rows == b.rows && a.cols == b.cols && a.v == b.v;
}

std::vector<IntMat> int_hnk(int n, int k) {
    OperatorBasis h = build_hnk(n, k);
    std::vector<IntMat> out;
    out.reserve(h.basis.size());
    for (const auto& e : h.basis) {
        const ComplexMatrix& m = e.blocks[0];
        IntMat im(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) im.at(i, j) = static_cast<std::int64_t>(m(i, j).real());
        out.push_back(std::move(im));
    }
    return out;
}

IntMat int_grid_word(const std::vector<IntMat>& b, int n, const std::vector<int>& I,
                     const std::vector<int>& J) {
    std::vector<int> d, c, imj, jmi;
    for (int v = 1; v <= n; ++v) {
        bool in_i = std::binary_search(I.begin(), I.end(), v);
        bool in_j = std::binary_search(J.begin(), J.end(), v);
        if (in_i && in_j) d.push_back(v);
        else if (in_i) imj.push_back(v);
        else if (in_j) jmi.push_back(v);
        else c.push_back(v);
    }
    IntMat acc(b[0].rows, b[0].rows);
    for (int i = 0; i < acc.rows; ++i) acc.at(i, i) = 1;
    for (int t : imj) acc = imul(acc, imul(b[t - 1], itrans(b[t - 1])));
    acc = imul(acc, b[c[0] - 1]);
    for (std::size_t s = 0; s < d.size(); ++s) {
        acc = imul(acc, itrans(b[d[s] - 1]));
        acc = imul(acc, b[c[s + 1] - 1]);
    }
    for (int t : jmi) acc = imul(acc, imul(itrans(b[t - 1]), b[t - 1]));
    return acc;
}

// sign of the single nonzero entry; 0 if the word is not a signed unit
int unit_sign(const IntMat& m, int row, int col) {
    int sgn = 0;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            std::int64_t v = m.at(i, j);
            if (!v) continue;
            if (sgn || i != row || j != col || (v != 1 && v != -1)) return 0;
            sgn = static_cast<int>(v);
        }
    return sgn;
}

} // namespace

GridCheck verify_grid_relation(int n, int k) {
    GridCheck out;
    const auto b = int_hnk(n, k);
    const auto Is = subsets_lex(n, k - 1);
    const auto Js = subsets_lex(n, n - k);

    // precompute all words and their unit signs; lex position == rank
    std::vector<std::vector<IntMat>> word(Is.size(), std::vector<IntMat>(Js.size()));
    std::vector<std::vector<int>> sgn(Is.size(), std::vector<int>(Js.size(), 0));
    for (std::size_t a = 0; a < Is.size(); ++a)
        for (std::size_t c = 0; c < Js.size(); ++c) {
            word[a][c] = int_grid_word(b, n, Is[a], Js[c]);
            sgn[a][c] = unit_sign(word[a][c], static_cast<int>(c), static_cast<int>(a));
            if (!sgn[a][c]) ++out.violations;
            ++out.checked;
        }

    // epsilon(IJ) u_IJ (epsilon(IJ') u_IJ')^* epsilon(I'J') u_I'J' = epsilon(I'J) u_I'J
    for (std::size_t a = 0; a < Is.size(); ++a)
        for (std::size_t c = 0; c < Js.size(); ++c)
            for (std::size_t a2 = 0; a2 < Is.size(); ++a2)
                for (std::size_t c2 = 0; c2 < Js.size(); ++c2) {
                    IntMat lhs = imul(imul(word[a][c], itrans(word[a][c2])), word[a2][c2]);
                    std::int64_t s = static_cast<std::int64_t>(sgn[a][c]) * sgn[a][c2] * sgn[a2][c2] *
                                     sgn[a2][c];
                    IntMat rhs = word[a2][c];
                    for (auto& x : rhs.v) x *= s;
                    ++out.checked;
                    if (!iequal(lhs, rhs)) ++out.violations;
                }
    return out;
}

GridCheck verify_ones_decomposition(int n, int k) {
    GridCheck out;
    const auto b = int_hnk(n, k);
    for (int c = 1; c <= n; ++c) {
        std::vector<int> rest;
        for (int v = 1; v <= n; ++v)
            if (v != c) rest.push_back(v);
        IntMat total(b[0].rows, b[0].cols);
        for (const auto& I : subsets_lex(n - 1, k - 1)) {
            // I picks positions into `rest`; J is the remainder
            std::vector<int> Iv, Jv;
            std::vector<bool> used(rest.size(), false);
            for (int pos : I) {
                Iv.push_back(rest[pos - 1]);
                used[pos - 1] = true;
            }
            for (std::size_t t = 0; t < rest.size(); ++t)
                if (!used[t]) Jv.push_back(rest[t]);
            IntMat acc(b[0].rows, b[0].rows);
            for (int i = 0; i < acc.rows; ++i) acc.at(i, i) = 1;
            for (int t : Iv) acc = imul(acc, imul(b[t - 1], itrans(b[t - 1])));
            acc = imul(acc, b[c - 1]);
            for (int t : Jv) acc = imul(acc, imul(itrans(b[t - 1]), b[t - 1]));
            for (std::size_t x = 0; x < total.v.size(); ++x) total.v[x] += acc.v[x];
        }
        ++out.checked;
        if (!iequal(total, b[c - 1])) ++out.violations;
    }
    return out;
}

} // namespace opspace
