#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "amc/slope.hpp"

namespace amc {

/// Vertex (x, n) of a combinatorial horoball: base position and height.
struct HoroPoint {
    long long x = 0;
    int n = 0;

    friend bool operator==(const HoroPoint&, const HoroPoint&) = default;
};

struct HoroPointHash {
    std::size_t operator()(const HoroPoint& p) const {
        std::size_t h = std::hash<long long>{}(p.x);
        return h ^ (std::hash<int>{}(p.n) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};

struct HoroParams {
    int base_b = 2;
};

/// Base graph interface for generic horoball constructions. Exact distances
/// and bounded vertex enumeration; the line graph on Z is the only concrete
/// backend at complexity 4.
struct BaseGraphOracle {
    virtual ~BaseGraphOracle() = default;
    virtual long long distance(long long x, long long y) const = 0;
    virtual std::vector<long long> ball(long long center, long long radius) const = 0;
};

struct ZLineGraph final : BaseGraphOracle {
    long long distance(long long x, long long y) const override {
        return x < y ? y - x : x - y;
    }
    std::vector<long long> ball(long long center, long long radius) const override {
        std::vector<long long> out;
        out.reserve(2 * radius + 1);
        for (long long x = center - radius; x <= center + radius; ++x) out.push_back(x);
        return out;
    }
};

inline long long horo_pow(int b, int n) {
    long long r = 1;
    for (int i = 0; i < n; ++i) {
        if (r > (1LL << 56)) throw std::overflow_error("horoball height too large");
        r *= b;
    }
    return r;
}

inline int horo_ceil_log(int b, long long v) {
    int h = 0;
    long long p = 1;
    while (p < v) { p *= b; ++h; }
    return h;
}

/// Neighbors of pt: horizontal edges to base vertices within b^n, verticals.
inline std::vector<HoroPoint> horo_neighbors(const HoroPoint& pt, const HoroParams& params,
                                             const BaseGraphOracle& g) {
    std::vector<HoroPoint> out;
    long long reach = horo_pow(params.base_b, pt.n);
    for (long long y : g.ball(pt.x, reach))
        if (long long d = g.distance(pt.x, y); d > 0 && d <= reach)
            out.push_back(HoroPoint{y, pt.n});
    out.push_back(HoroPoint{pt.x, pt.n + 1});
    if (pt.n > 0) out.push_back(HoroPoint{pt.x, pt.n - 1});
    return out;
}

/// Exact distance in H(Z): scan the meeting height of the two-vertical,
/// one-horizontal-run candidates. Verified against BFS in the test suite.
inline long long horo_distance_z(const HoroPoint& p1, const HoroPoint& p2,
                                 const HoroParams& params) {
    long long delta = p1.x < p2.x ? p2.x - p1.x : p1.x - p2.x;
    int lo = std::max(p1.n, p2.n);
    int hi = lo + horo_ceil_log(params.base_b, delta + 1) + 1;
    long long best = -1;
    for (int h = lo; h <= hi; ++h) {
        long long reach = horo_pow(params.base_b, h);
        long long hops = (delta + reach - 1) / reach;
        long long len = (h - p1.n) + (h - p2.n) + hops;
        if (best < 0 || len < best) best = len;
    }
    return best;
}

/// BFS oracle over any base graph; absent if the distance exceeds cap.
inline std::optional<long long> horo_bfs_distance(const HoroPoint& p1, const HoroPoint& p2,
                                                  const HoroParams& params,
                                                  const BaseGraphOracle& g, long long cap) {
    if (cap <= 0) throw std::invalid_argument("horo_bfs_distance: cap must be positive");
    if (p1 == p2) return 0;
    std::unordered_map<HoroPoint, long long, HoroPointHash> dist;
    std::queue<HoroPoint> q;
    dist[p1] = 0;
    q.push(p1);
    while (!q.empty()) {
        HoroPoint v = q.front(); q.pop();
        long long dv = dist[v];
        if (dv >= cap) continue;
        for (const HoroPoint& u : horo_neighbors(v, params, g)) {
            if (dist.count(u)) continue;
            if (u == p2) return dv + 1;
            dist[u] = dv + 1;
            q.push(u);
        }
    }
    return std::nullopt;
}

/// Groves-Manning preferred path: up, one horizontal edge, down. When an
/// endpoint already sits at or above the crossing height the horizontal edge
/// is taken at max(a, b) and that vertical segment is dropped.
inline std::vector<HoroPoint> preferred_path(const HoroPoint& p1, const HoroPoint& p2,
                                             const HoroParams& params) {
    std::vector<HoroPoint> path;
    if (p1.x == p2.x) {
        int step = p2.n >= p1.n ? 1 : -1;
        for (int n = p1.n;; n += step) {
            path.push_back(HoroPoint{p1.x, n});
            if (n == p2.n) break;
        }
        return path;
    }
    long long c = p1.x < p2.x ? p2.x - p1.x : p1.x - p2.x;
    int crossing = horo_ceil_log(params.base_b, c);
    if (p1.n >= crossing || p2.n >= crossing) crossing = std::max(p1.n, p2.n);
    for (int n = p1.n; n < crossing; ++n) path.push_back(HoroPoint{p1.x, n});
    path.push_back(HoroPoint{p1.x, crossing});
    path.push_back(HoroPoint{p2.x, crossing});
    for (int n = crossing - 1; n >= p2.n; --n) path.push_back(HoroPoint{p2.x, n});
    return path;
}

/// Canonical geodesic in H(Z): the smallest optimal meeting height, greedy
/// horizontal hops of size b^h, then the verticals.
inline std::vector<HoroPoint> horo_geodesic_z(const HoroPoint& p1, const HoroPoint& p2,
                                              const HoroParams& params) {
    if (p1.x == p2.x) return preferred_path(p1, p2, params);
    long long delta = p1.x < p2.x ? p2.x - p1.x : p1.x - p2.x;
    int lo = std::max(p1.n, p2.n);
    int hi = lo + horo_ceil_log(params.base_b, delta + 1) + 1;
    long long best = -1;
    int best_h = lo;
    for (int h = lo; h <= hi; ++h) {
        long long reach = horo_pow(params.base_b, h);
        long long len = (h - p1.n) + (h - p2.n) + (delta + reach - 1) / reach;
        if (best < 0 || len < best) { best = len; best_h = h; }
    }
    std::vector<HoroPoint> path;
    for (int n = p1.n; n < best_h; ++n) path.push_back(HoroPoint{p1.x, n});
    long long reach = horo_pow(params.base_b, best_h);
    long long dir = p2.x > p1.x ? 1 : -1;
    long long x = p1.x;
    while (x != p2.x) {
        path.push_back(HoroPoint{x, best_h});
        long long rem = dir > 0 ? p2.x - x : x - p2.x;
        x += dir * std::min(rem, reach);
    }
    for (int n = best_h; n >= p2.n; --n) path.push_back(HoroPoint{p2.x, n});
    return path;
}

/// True iff (a, b) is an edge of H(Z).
inline bool horo_is_edge_z(const HoroPoint& a, const HoroPoint& b, const HoroParams& params) {
    if (a.x == b.x) return a.n == b.n + 1 || b.n == a.n + 1;
    if (a.n != b.n) return false;
    long long d = a.x < b.x ? b.x - a.x : a.x - b.x;
    return d <= horo_pow(params.base_b, a.n);
}

/// Maximum four-point-condition defect over seeded random quadruples,
/// using exact distances. The defect is always a multiple of 1/2.
inline double gromov_delta_sample(long long radius, int height_cap, int samples,
                                  unsigned seed, const HoroParams& params) {
    if (radius <= 0 || height_cap < 0 || samples <= 0)
        throw std::invalid_argument("gromov_delta_sample: arguments must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> xs(-radius, radius);
    std::uniform_int_distribution<int> ns(0, height_cap);
    double worst = 0;
    for (int s = 0; s < samples; ++s) {
        HoroPoint p[4];
        for (auto& v : p) v = HoroPoint{xs(rng), ns(rng)};
        long long s1 = horo_distance_z(p[0], p[1], params) + horo_distance_z(p[2], p[3], params);
        long long s2 = horo_distance_z(p[0], p[2], params) + horo_distance_z(p[1], p[3], params);
        long long s3 = horo_distance_z(p[0], p[3], params) + horo_distance_z(p[1], p[2], params);
        long long a = std::max({s1, s2, s3});
        long long m = s1 + s2 + s3 - a - std::min({s1, s2, s3});
        worst = std::max(worst, (a - m) / 2.0);
    }
    return worst;
}

}  // namespace amc
