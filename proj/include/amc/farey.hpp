#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "amc/slope.hpp"

namespace amc {

namespace detail {

// Strip of Farey triangles crossed by the vertical line from infinity to the
// target. Every geodesic from infinity to the target can be pushed into the
// strip, so a shortest path inside it is a Farey-graph geodesic.
struct FareyStrip {
    std::vector<Slope> verts;                    // verts[0] = infinity
    std::vector<std::vector<int>> adj;
    int target = -1;

    int add(const Slope& s) {
        verts.push_back(s);
        adj.emplace_back();
        return static_cast<int>(verts.size()) - 1;
    }
    void link(int i, int j) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
};

inline FareyStrip build_strip(const Slope& t) {
    FareyStrip st;
    int inf = st.add(Slope{1, 0});
    long long a0 = t.p >= 0 ? t.p / t.q : -((-t.p + t.q - 1) / t.q);  // floor(p/q)
    int left = st.add(Slope{a0, 1});
    int right = st.add(Slope{a0 + 1, 1});
    st.link(inf, left);
    st.link(inf, right);
    st.link(left, right);
    if (st.verts[left] == t) { st.target = left; return st; }
    if (st.verts[right] == t) { st.target = right; return st; }
    while (true) {
        Slope m{st.verts[left].p + st.verts[right].p,
                st.verts[left].q + st.verts[right].q};
        int mi = st.add(m);
        st.link(mi, left);
        st.link(mi, right);
        if (m == t) { st.target = mi; return st; }
        if (slope_less(t, m)) right = mi; else left = mi;
    }
}

}  // namespace detail

/// Canonical Farey-graph geodesic. Ties along the strip are broken by
/// preferring the neighbor with smaller denominator, then smaller numerator.
inline std::vector<Slope> farey_geodesic(const Slope& a, const Slope& b) {
    if (a == b) return {a};
    MappingClass w = normalize_to_infinity(a);
    Slope t = act(w, b);
    MappingClass wi = mc_inverse(w);
    if (t.q == 1) return {a, b};  // adjacent to infinity

    detail::FareyStrip st = detail::build_strip(t);
    int n = static_cast<int>(st.verts.size());
    std::vector<int> dist(n, -1);
    std::queue<int> bfs;
    dist[0] = 0;
    bfs.push(0);
    while (!bfs.empty()) {
        int v = bfs.front(); bfs.pop();
        for (int u : st.adj[v])
            if (dist[u] < 0) { dist[u] = dist[v] + 1; bfs.push(u); }
    }
    // walk back from the target, tie-break on (q, p) of the normalized vertex
    std::vector<Slope> rev{st.verts[st.target]};
    int cur = st.target;
    while (cur != 0) {
        int best = -1;
        for (int u : st.adj[cur]) {
            if (dist[u] != dist[cur] - 1) continue;
            if (best < 0 ||
                std::pair(st.verts[u].q, st.verts[u].p) <
                    std::pair(st.verts[best].q, st.verts[best].p))
                best = u;
        }
        cur = best;
        rev.push_back(st.verts[cur]);
    }
    std::vector<Slope> path;
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) path.push_back(act(wi, *it));
    return path;
}

inline long long farey_distance(const Slope& a, const Slope& b) {
    return static_cast<long long>(farey_geodesic(a, b).size()) - 1;
}

/// Farey neighbors of s with |p| <= bound and q <= bound.
inline std::vector<Slope> farey_neighbors_in_ball(const Slope& s, long long bound) {
    std::vector<Slope> out;
    if (s.q == 0) {
        for (long long n = -bound; n <= bound; ++n) out.push_back(Slope{n, 1});
        return out;
    }
    // solutions of p*y - q*x = +-1: (x, y) = (x0 + k p, y0 + k q)
    MappingClass w = normalize_to_infinity(s);  // row (w.a, w.b): a p + b q = 1
    for (int sign : {1, -1}) {
        long long x0 = -sign * w.b, y0 = sign * w.a;  // p*y0 - q*x0 = sign
        // bring y into [0, q) then sweep
        long long k0 = -(y0 / s.q) - 2;
        for (long long k = k0; ; ++k) {
            long long x = x0 + k * s.p, y = y0 + k * s.q;
            if (y > bound) break;
            if (y <= 0) continue;  // y == 0 is infinity, handled below
            if (x >= -bound && x <= bound) out.push_back(Slope{x, y});
        }
    }
    if (s.q == 1) out.push_back(Slope{1, 0});  // infinity neighbors the integers
    std::sort(out.begin(), out.end(), [](const Slope& a, const Slope& b) {
        return std::pair(a.q, a.p) < std::pair(b.q, b.p);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Integer twist of beta about alpha relative to ref. Differences in the
/// second argument are independent of ref.
inline long long twist_coord(const Slope& alpha, const Slope& beta, const Slope& ref) {
    if (slope_det(alpha, beta) == 0 || slope_det(alpha, ref) == 0)
        throw std::invalid_argument("twist_coord: projection undefined for disjoint curve");
    MappingClass w = normalize_to_infinity(alpha);
    auto floor_part = [&](const Slope& s) {
        Slope t = act(w, s);
        return t.p >= 0 ? t.p / t.q : -((-t.p + t.q - 1) / t.q);
    };
    return floor_part(beta) - floor_part(ref);
}

/// Fixed global reference transversal for the annulus about alpha.
inline Slope twist_reference(const Slope& alpha) {
    return act(mc_inverse(normalize_to_infinity(alpha)), Slope{0, 1});
}

/// twist_coord against the global reference.
inline long long twist_coord0(const Slope& alpha, const Slope& beta) {
    return twist_coord(alpha, beta, twist_reference(alpha));
}

/// Exact metric on the annular complex about alpha, via twist coordinates.
inline long long annular_distance(const Slope& alpha, const Slope& beta, const Slope& gamma) {
    long long d = twist_coord0(alpha, beta) - twist_coord0(alpha, gamma);
    return d < 0 ? -d : d;
}

/// The slope adjacent to alpha with twist coordinate n (inverse of twist_coord0).
inline Slope transversal_from_twist(const Slope& alpha, long long n) {
    return act(mc_inverse(normalize_to_infinity(alpha)), Slope{n, 1});
}

/// Dehn twist power: applies T_alpha^n to s.
inline Slope twist_about(const Slope& alpha, const Slope& s, long long n) {
    MappingClass w = normalize_to_infinity(alpha);
    Slope t = act(w, s);
    t.p += n * t.q;
    return act(mc_inverse(w), t);
}

}  // namespace amc
