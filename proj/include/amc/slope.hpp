#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace amc {

/// A curve on a complexity-4 surface, stored as a reduced rational p/q.
/// Canonical form: q > 0 with the sign carried by p, or (p,q) = (1,0) for
/// the slope at infinity.
struct Slope {
    long long p = 1;
    long long q = 0;

    friend bool operator==(const Slope&, const Slope&) = default;

    bool is_infinity() const { return q == 0; }

    std::string str() const {
        if (q == 0) return "inf";
        return std::to_string(p) + "/" + std::to_string(q);
    }
};

inline Slope make_slope(long long p, long long q) {
    if (p == 0 && q == 0) throw std::invalid_argument("slope 0/0");
    if (q == 0) return Slope{1, 0};
    if (q < 0) { p = -p; q = -q; }
    long long g = std::gcd(p < 0 ? -p : p, q);
    return Slope{p / g, q / g};
}

enum class SurfaceKind { OncePuncturedTorus, FourHoledSphere };

/// |p1 q2 - q1 p2|, the Farey-graph determinant.
inline long long slope_det(const Slope& a, const Slope& b) {
    long long d = a.p * b.q - a.q * b.p;
    return d < 0 ? -d : d;
}

/// Geometric intersection number, scaled by surface kind.
inline long long intersection(const Slope& a, const Slope& b, SurfaceKind kind) {
    long long d = slope_det(a, b);
    return kind == SurfaceKind::FourHoledSphere ? 2 * d : d;
}

inline bool adjacent(const Slope& a, const Slope& b) {
    return slope_det(a, b) == 1;
}

// Rational order with inf last; used by the geodesic strip walk.
inline bool slope_less(const Slope& a, const Slope& b) {
    if (a.q == 0) return false;
    if (b.q == 0) return true;
    return a.p * b.q < b.p * a.q;
}

/// Element of SL(2,Z) acting on slopes by (p:q) -> (ap+bq : cp+dq).
struct MappingClass {
    long long a = 1, b = 0, c = 0, d = 1;

    friend bool operator==(const MappingClass&, const MappingClass&) = default;

    long long det() const { return a * d - b * c; }
};

inline MappingClass mc_inverse(const MappingClass& m) {
    return MappingClass{m.d, -m.b, -m.c, m.a};
}

inline MappingClass mc_mul(const MappingClass& x, const MappingClass& y) {
    return MappingClass{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                        x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline Slope act(const MappingClass& m, const Slope& s) {
    long long p = m.a * s.p + m.b * s.q;
    long long q = m.c * s.p + m.d * s.q;
    if (q == 0) return Slope{1, 0};
    if (q < 0) { p = -p; q = -q; }
    return Slope{p, q};
}

/// Deterministic m in SL(2,Z) with act(m, s) = infinity.
inline MappingClass normalize_to_infinity(const Slope& s) {
    if (s.q == 0) return MappingClass{};
    // u*p + v*q = 1 via extended Euclid, then u reduced mod q for determinism.
    long long old_r = s.p, r = s.q;
    long long old_u = 1, u = 0;
    while (r != 0) {
        long long qt = old_r / r;
        long long t = old_r - qt * r; old_r = r; r = t;
        t = old_u - qt * u; old_u = u; u = t;
    }
    // old_r = +-1 since gcd(|p|, q) = 1
    long long uu = old_u * old_r;
    uu = ((uu % s.q) + s.q) % s.q;
    long long vv = (1 - uu * s.p) / s.q;
    return MappingClass{uu, vv, -s.q, s.p};
}

struct SlopeHash {
    std::size_t operator()(const Slope& s) const {
        std::size_t h = std::hash<long long>{}(s.p);
        return h ^ (std::hash<long long>{}(s.q) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};

}  // namespace amc
