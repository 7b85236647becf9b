#include "opspace/level_norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "opspace/linalg.hpp"
#include "opspace/random.hpp"

namespace opspace {

double level_norm(const OperatorBasis& space, const LevelElement& x, const ToleranceConfig& cfg) {
    cfg.validate();
    const int d = space.dim();
    if (static_cast<int>(x.lambda.size()) != d)
        throw std::invalid_argument("level_norm: " + std::to_string(x.lambda.size()) +
                                    " coefficients for a basis of " + std::to_string(d));
    if (d == 0) return 0.0;
    const int p = x.lambda[0].rows(), q = x.lambda[0].cols();
    for (const auto& l : x.lambda) {
        if (l.rows() != p || l.cols() != q)
            throw std::invalid_argument("level_norm: coefficient shapes differ");
        ensure_finite(l, "level_norm coefficient");
    }
    double best = 0.0;
    for (std::size_t c = 0; c < space.components.size(); ++c) {
        ComplexMatrix acc;
        bool first = true;
        for (int i = 0; i < d; ++i) {
            if (max_abs(x.lambda[i]) == 0.0 && !first) continue;
            ComplexMatrix term = kron(x.lambda[i], space.basis[i].blocks[c]);
            if (first) {
                acc = std::move(term);
                first = false;
            } else {
                acc += term;
            }
        }
        best = std::max(best, operator_norm(acc, cfg));
    }
    return best;
}

namespace {

// deterministic witness list shared by both map directions
std::vector<LevelElement> make_witnesses(int d, const ToleranceConfig& cfg, int levels,
                                         int samples) {
    std::vector<LevelElement> out;
    // level-1 coordinates: ratio 1 for unit bases, anchors forward_lower >= 1
    for (int i = 0; i < d; ++i) {
        LevelElement w;
        w.lambda.assign(d, ComplexMatrix(1, 1));
        w.lambda[i](0, 0) = 1.0;
        out.push_back(std::move(w));
    }
    { // basis row, M_{1,d}
        LevelElement w;
        w.lambda.assign(d, ComplexMatrix(1, d));
        for (int i = 0; i < d; ++i) w.lambda[i](0, i) = 1.0;
        out.push_back(std::move(w));
    }
    { // basis column, M_{d,1}
        LevelElement w;
        w.lambda.assign(d, ComplexMatrix(d, 1));
        for (int i = 0; i < d; ++i) w.lambda[i](i, 0) = 1.0;
        out.push_back(std::move(w));
    }
    for (int p = 2; p <= levels; ++p) {
        Rng rng(mix_seed(cfg.seed, 0x77697400ULL + static_cast<std::uint64_t>(p)));
        for (int s = 0; s < samples; ++s) {
            LevelElement w;
            w.lambda.reserve(d);
            for (int i = 0; i < d; ++i) w.lambda.push_back(rng.gaussian_matrix(p, p));
            out.push_back(std::move(w));
        }
    }
    return out;
}

double directional_lower(const OperatorBasis& from, const OperatorBasis& to,
                         const std::vector<LevelElement>& witnesses, const ToleranceConfig& cfg) {
    double best = 0.0;
    for (const auto& w : witnesses) {
        double denom = level_norm(from, w, cfg);
        if (denom <= 0.0) continue;
        best = std::max(best, level_norm(to, w, cfg) / denom);
    }
    return best;
}

struct SpaceTag {
    enum class Family { column, row, hnk, phi } family;
    int n;
    int k; // hnk only
};

// Collapses the builder kinds to the four families with known distances.
// H_n^1 acts as a column space and H_n^n as a row space (signed unitaries).
std::optional<SpaceTag> tag_of(const OperatorBasis& s) {
    switch (s.kind) {
        case SpaceKind::column: return SpaceTag{SpaceTag::Family::column, s.n, 0};
        case SpaceKind::row: return SpaceTag{SpaceTag::Family::row, s.n, 0};
        case SpaceKind::phi: return SpaceTag{SpaceTag::Family::phi, s.n, 0};
        case SpaceKind::hnk:
            if (s.k == 1) return SpaceTag{SpaceTag::Family::column, s.n, 0};
            if (s.k == s.n) return SpaceTag{SpaceTag::Family::row, s.n, 0};
            return SpaceTag{SpaceTag::Family::hnk, s.n, s.k};
        default: return std::nullopt;
    }
}

} // namespace

std::optional<double> closed_form_distance(const OperatorBasis& a, const OperatorBasis& b) {
    auto ta = tag_of(a), tb = tag_of(b);
    if (!ta || !tb || ta->n != tb->n) return std::nullopt;
    const double n = static_cast<double>(ta->n);
    using F = SpaceTag::Family;
    auto fa = ta->family, fb = tb->family;
    int ka = ta->k, kb = tb->k;
    if (fa == fb && ka == kb) return 1.0;
    // The exactly known cases: column vs row, and either edge against a grid
    // space. The row form follows from the column form because transposing
    // intertwines the k and n-k+1 grid spaces up to one global sign.
    auto mirror = [&](F x, F y, int ky) -> std::optional<double> {
        if (x == F::column && y == F::row) return n;
        if (x == F::column && y == F::hnk) {
            const double k = static_cast<double>(ky);
            return std::sqrt(k * n / (n - k + 1.0));
        }
        if (x == F::row && y == F::hnk) {
            const double k = static_cast<double>(ky);
            return std::sqrt((n - k + 1.0) * n / k);
        }
        return std::nullopt;
    };
    if (auto v = mirror(fa, fb, kb)) return v;
    if (auto v = mirror(fb, fa, ka)) return v;
    return std::nullopt;
}

CbEstimate basis_map_bounds(const OperatorBasis& a, const OperatorBasis& b,
                            const ToleranceConfig& cfg, int levels, int samples) {
    cfg.validate();
    if (a.dim() != b.dim())
        throw std::invalid_argument("basis_map_bounds: basis lengths " + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()));
    if (levels < 1 || samples < 0)
        throw std::invalid_argument("basis_map_bounds: bad levels/samples");
    auto witnesses = make_witnesses(a.dim(), cfg, levels, samples);
    CbEstimate est;
    est.forward_lower = directional_lower(a, b, witnesses, cfg);
    est.inverse_lower = directional_lower(b, a, witnesses, cfg);
    est.product_lower = est.forward_lower * est.inverse_lower;
    est.closed_form = closed_form_distance(a, b);
    est.witness_description = "level-1 coordinates, basis row, basis column, " +
                              std::to_string(samples) + " Gaussian witnesses per level p=2.." +
                              std::to_string(levels) + ", seed " + std::to_string(cfg.seed);
    return est;
}

namespace {

enum class TrendType { column, row, hnk, phi };

TrendType trend_of(const OperatorBasis& s) {
    auto t = tag_of(s);
    switch (t->family) {
        case SpaceTag::Family::column: return TrendType::column;
        case SpaceTag::Family::row: return TrendType::row;
        case SpaceTag::Family::hnk: return TrendType::hnk;
        default: return TrendType::phi;
    }
}

// Interpreting each space as the n-th member of its family (fixed k), does
// the distance grow without bound?
bool divergent_pair(const OperatorBasis& a, const OperatorBasis& b) {
    TrendType x = trend_of(a), y = trend_of(b);
    if (x == y && x != TrendType::hnk) return false;
    if (x == TrendType::hnk && y == TrendType::hnk) return false;
    if (x == TrendType::phi || y == TrendType::phi) return true;
    if ((x == TrendType::column && y == TrendType::row) ||
        (x == TrendType::row && y == TrendType::column))
        return true;
    // row against a fixed-k grid space diverges; column against it does not
    return x == TrendType::row || y == TrendType::row;
}

} // namespace

DistanceTable distance_table(int n, const ToleranceConfig& cfg, int levels, int samples) {
    if (n < 1) throw std::invalid_argument("distance_table: n must be >= 1");
    std::vector<OperatorBasis> spaces;
    spaces.push_back(build_column(n));
    spaces.push_back(build_row(n));
    for (int k = 1; k <= n; ++k) spaces.push_back(build_hnk(n, k));
    spaces.push_back(build_phi(n));
    DistanceTable table;
    table.n = n;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        for (std::size_t j = i + 1; j < spaces.size(); ++j) {
            DistanceRow row;
            row.space_a = spaces[i].name;
            row.space_b = spaces[j].name;
            row.estimate = basis_map_bounds(spaces[i], spaces[j], cfg, levels, samples);
            row.divergent = divergent_pair(spaces[i], spaces[j]);
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

double orthonormality_deviation(const OperatorBasis& space, int samples,
                                const ToleranceConfig& cfg) {
    cfg.validate();
    if (samples < 1) throw std::invalid_argument("orthonormality_deviation: samples must be >= 1");
    const int d = space.dim();
    Rng rng(mix_seed(cfg.seed, 0x6f72746eULL));
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        LevelElement w;
        w.lambda.assign(d, ComplexMatrix(1, 1));
        double nrm2 = 0.0;
        for (int i = 0; i < d; ++i) {
            cplx g = rng.complex_gaussian();
            w.lambda[i](0, 0) = g;
            nrm2 += std::norm(g);
        }
        double nrm = std::sqrt(nrm2);
        if (nrm < 1e-12) continue;
        for (int i = 0; i < d; ++i) w.lambda[i] *= cplx(1.0 / nrm, 0.0);
        worst = std::max(worst, std::abs(level_norm(space, w, cfg) - 1.0));
    }
    return worst;
}

} // namespace opspace
