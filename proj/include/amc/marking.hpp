#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "amc/farey.hpp"
#include "amc/horoball.hpp"
#include "amc/slope.hpp"

namespace amc {

/// Vertex of AM(S): base curve, transversal, and length datum.
struct AugmentedMarking {
    SurfaceKind kind = SurfaceKind::OncePuncturedTorus;
    Slope base{0, 1};
    Slope transversal{1, 0};
    int d = 0;

    friend bool operator==(const AugmentedMarking&, const AugmentedMarking&) = default;
};

struct AugmentedMarkingHash {
    std::size_t operator()(const AugmentedMarking& m) const {
        SlopeHash sh;
        std::size_t h = sh(m.base);
        h ^= sh(m.transversal) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<int>{}(m.d * 2 + (m.kind == SurfaceKind::FourHoledSphere)) +
             0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

inline bool marking_valid(const AugmentedMarking& m) {
    return adjacent(m.base, m.transversal) && m.d >= 0;
}

struct ElementaryMove {
    enum class Kind { Flip, Twist, Vertical } kind = Kind::Flip;
    long long n = 0;  // twist power, or +-1 for vertical

    static ElementaryMove flip() { return {Kind::Flip, 0}; }
    static ElementaryMove twist(long long n) { return {Kind::Twist, n}; }
    static ElementaryMove vertical(int s) { return {Kind::Vertical, s}; }
};

inline ElementaryMove move_inverse(const ElementaryMove& mv) {
    switch (mv.kind) {
        case ElementaryMove::Kind::Flip: return mv;
        case ElementaryMove::Kind::Twist: return ElementaryMove::twist(-mv.n);
        default: return ElementaryMove::vertical(static_cast<int>(-mv.n));
    }
}

inline bool move_legal(const AugmentedMarking& m, const ElementaryMove& mv,
                       const HoroParams& params) {
    switch (mv.kind) {
        case ElementaryMove::Kind::Flip:
            return m.d == 0;
        case ElementaryMove::Kind::Twist: {
            if (mv.n == 0) return false;
            long long lim = m.d > 0 ? horo_pow(params.base_b, m.d) : 2;
            long long a = mv.n < 0 ? -mv.n : mv.n;
            return a < lim;
        }
        default:
            return (mv.n == 1) || (mv.n == -1 && m.d > 0);
    }
}

inline AugmentedMarking apply_move(const AugmentedMarking& m, const ElementaryMove& mv,
                                   const HoroParams& params) {
    if (!move_legal(m, mv, params))
        throw std::invalid_argument("apply_move: illegal elementary move");
    AugmentedMarking r = m;
    switch (mv.kind) {
        case ElementaryMove::Kind::Flip:
            std::swap(r.base, r.transversal);
            break;
        case ElementaryMove::Kind::Twist:
            r.transversal = twist_about(m.base, m.transversal, mv.n);
            break;
        default:
            r.d += static_cast<int>(mv.n);
            break;
    }
    return r;
}

/// The three AM(S) edge types. Flip only in the thick part; the twist range
/// at d > 0 matches the horizontal horoball edges at that height.
inline std::vector<AugmentedMarking> neighbors(const AugmentedMarking& m,
                                               const HoroParams& params) {
    std::vector<AugmentedMarking> out;
    if (m.d == 0)
        out.push_back(AugmentedMarking{m.kind, m.transversal, m.base, 0});
    long long lim = m.d > 0 ? horo_pow(params.base_b, m.d) : 2;
    for (long long n = 1; n < lim; ++n) {
        out.push_back(AugmentedMarking{m.kind, m.base, twist_about(m.base, m.transversal, n), m.d});
        out.push_back(AugmentedMarking{m.kind, m.base, twist_about(m.base, m.transversal, -n), m.d});
    }
    out.push_back(AugmentedMarking{m.kind, m.base, m.transversal, m.d + 1});
    if (m.d > 0) out.push_back(AugmentedMarking{m.kind, m.base, m.transversal, m.d - 1});
    return out;
}

/// Exact d_AM via bidirectional BFS on the implicit graph; absent when the
/// distance exceeds cap or the node budget runs out. Exploration never raises
/// d above d_cap.
inline std::optional<long long> bfs_distance(const AugmentedMarking& m1,
                                             const AugmentedMarking& m2,
                                             const HoroParams& params, long long cap,
                                             int d_cap, long long max_nodes = -1) {
    if (cap <= 0 || d_cap <= 0)
        throw std::invalid_argument("bfs_distance: caps must be positive");
    if (m1 == m2) return 0;
    using Map = std::unordered_map<AugmentedMarking, long long, AugmentedMarkingHash>;
    Map side[2];
    std::vector<AugmentedMarking> frontier[2] = {{m1}, {m2}};
    side[0][m1] = 0;
    side[1][m2] = 0;
    long long depth[2] = {0, 0};
    long long best = -1;
    while (!frontier[0].empty() && !frontier[1].empty()) {
        if (best >= 0 && depth[0] + depth[1] + 1 >= best) break;
        if (depth[0] + depth[1] + 1 > cap) break;
        if (max_nodes >= 0 &&
            static_cast<long long>(side[0].size() + side[1].size()) > max_nodes && best < 0)
            return std::nullopt;
        int s = frontier[0].size() <= frontier[1].size() ? 0 : 1;
        std::vector<AugmentedMarking> next;
        for (const AugmentedMarking& v : frontier[s]) {
            for (const AugmentedMarking& u : neighbors(v, params)) {
                if (u.d > d_cap) continue;
                if (side[s].count(u)) continue;
                side[s][u] = depth[s] + 1;
                if (auto it = side[1 - s].find(u); it != side[1 - s].end()) {
                    long long cand = depth[s] + 1 + it->second;
                    if (best < 0 || cand < best) best = cand;
                }
                next.push_back(u);
            }
        }
        frontier[s] = std::move(next);
        ++depth[s];
    }
    if (best >= 0 && best <= cap) return best;
    return std::nullopt;
}

/// Projection to the horoball over alpha: (twist coordinate, length datum).
inline HoroPoint project_to_annulus(const AugmentedMarking& m, const Slope& alpha) {
    if (alpha == m.base)
        return HoroPoint{twist_coord0(alpha, m.transversal), m.d};
    if (slope_det(alpha, m.base) == 0)
        throw std::invalid_argument("project_to_annulus: alpha disjoint from marking");
    return HoroPoint{twist_coord0(alpha, m.base), 0};
}

inline Slope project_to_surface(const AugmentedMarking& m) { return m.base; }

inline long long cutoff(long long x, long long k) { return x > k ? x : 0; }

/// Distance-formula estimate: K-large terms over the whole surface and over
/// the annuli of the canonical main geodesic.
inline long long distance_formula_estimate(const AugmentedMarking& m1,
                                           const AugmentedMarking& m2, long long K,
                                           const HoroParams& params) {
    if (K <= 0) throw std::invalid_argument("distance_formula_estimate: K must be positive");
    long long total = cutoff(farey_distance(m1.base, m2.base), K);
    for (const Slope& alpha : farey_geodesic(m1.base, m2.base))
        total += cutoff(
            horo_distance_z(project_to_annulus(m1, alpha), project_to_annulus(m2, alpha), params),
            K);
    return total;
}

inline AugmentedMarking mcg_act(const MappingClass& g, const AugmentedMarking& m) {
    return AugmentedMarking{m.kind, act(g, m.base), act(g, m.transversal), m.d};
}

}  // namespace amc
