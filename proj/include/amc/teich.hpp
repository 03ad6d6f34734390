#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "amc/farey.hpp"
#include "amc/hierarchy.hpp"
#include "amc/marking.hpp"
#include "amc/slope.hpp"

namespace amc {

/// Upper half-plane coordinate of a marked flat torus.
struct TeichPoint {
    double re = 0;
    double im = 1;

    std::complex<double> z() const { return {re, im}; }

    friend bool operator==(const TeichPoint&, const TeichPoint&) = default;
};

struct TeichParams {
    double epsilon0 = 0.25;
    double metric_scale = 0.5;
};

/// G's image keeps its base strictly shorter than every other slope as long
/// as epsilon0^2 < 2; enforced with room to spare.
inline void validate_teich_params(const TeichParams& p) {
    if (!(p.epsilon0 > 0) || !(p.epsilon0 < 1) || !(p.metric_scale > 0))
        throw std::invalid_argument("TeichParams: need 0 < epsilon0 < 1 and metric_scale > 0");
}

inline std::complex<double> mobius(const MappingClass& m, std::complex<double> z) {
    return (static_cast<double>(m.a) * z + static_cast<double>(m.b)) /
           (static_cast<double>(m.c) * z + static_cast<double>(m.d));
}

/// Flat-torus extremal length of the slope p/q at modulus z.
inline double ext_length(const TeichPoint& z, const Slope& a) {
    if (!(z.im > 0)) throw std::invalid_argument("ext_length: im <= 0");
    std::complex<double> v = static_cast<double>(a.p) - static_cast<double>(a.q) * z.z();
    return std::norm(v) / z.im;
}

/// metric_scale times the hyperbolic distance on the upper half-plane.
inline double teich_distance(const TeichPoint& z1, const TeichPoint& z2,
                             const TeichParams& params) {
    if (!(z1.im > 0) || !(z2.im > 0)) throw std::invalid_argument("teich_distance: im <= 0");
    double s = std::norm(z1.z() - z2.z()) / (2.0 * z1.im * z2.im);
    return params.metric_scale * std::acosh(1.0 + s);
}

/// Extremal-length ratio bound on the distance, maximized over a slope set.
inline double kerckhoff_lower_bound(const TeichPoint& z1, const TeichPoint& z2,
                                    const std::vector<Slope>& slopes,
                                    const TeichParams& params) {
    if (slopes.empty()) throw std::invalid_argument("kerckhoff_lower_bound: empty slope set");
    double best = 1.0;
    for (const Slope& s : slopes) {
        double r = ext_length(z2, s) / ext_length(z1, s);
        if (r < 1.0) r = 1.0 / r;
        if (r > best) best = r;
    }
    return params.metric_scale * std::log(best);
}

/// Slopes clustered around the ideal endpoints of the geodesic through z1 and
/// z2, where the Ext ratio peaks; count slopes, deterministic.
inline std::vector<Slope> kerckhoff_slope_ball(const TeichPoint& z1, const TeichPoint& z2,
                                               int count) {
    if (count <= 0) throw std::invalid_argument("kerckhoff_slope_ball: count must be positive");
    double lo, hi;
    if (std::abs(z1.re - z2.re) < 1e-12) {
        lo = z1.re - 1.0;
        hi = z1.re + 1.0;
    } else {
        double c = (std::norm(z2.z()) - std::norm(z1.z())) / (2.0 * (z2.re - z1.re));
        double rho = std::abs(z1.z() - c);
        lo = c - rho;
        hi = c + rho;
    }
    auto key = [](const Slope& s) { return std::pair(s.q, s.p); };
    std::set<std::pair<long long, long long>> seen;
    std::vector<Slope> out;
    auto push = [&](const Slope& s) {
        if (seen.insert(key(s)).second) out.push_back(s);
    };
    push(Slope{1, 0});
    for (long long q = 1; static_cast<int>(out.size()) < count; ++q) {
        long long pa = static_cast<long long>(std::floor(lo * q)) - 1;
        long long pb = static_cast<long long>(std::ceil(hi * q)) + 1;
        for (long long p = pa; p <= pb && static_cast<int>(out.size()) < count; ++p)
            if (std::gcd(p < 0 ? -p : p, q) == 1) push(Slope{p, q});
        if (q > 4 * count) break;  // degenerate interval guard
    }
    return out;
}

namespace detail {

// Stern-Brocot descent for the Ext-minimizing slope. An interval strictly
// between p1/q1 and p2/q2 only holds slopes with q >= q1+q2 and value inside
// the interval, so Ext >= (q1+q2)^2 (dist(Re z, interval)^2 + im^2)/im, which
// prunes the tree.
inline Slope ext_min_base(const TeichPoint& z) {
    Slope best{1, 0};
    double best_ext = ext_length(z, best);
    auto consider = [&](const Slope& s) {
        double e = ext_length(z, s);
        if (e < best_ext ||
            (e == best_ext && std::pair(s.q, s.p) < std::pair(best.q, best.p))) {
            best = s;
            best_ext = e;
        }
    };
    consider(Slope{0, 1});
    struct Frame {
        Slope a, b;
        int depth;
    };
    auto value = [](const Slope& s) {
        if (s.q == 0) return s.p < 0 ? -std::numeric_limits<double>::infinity()
                                     : std::numeric_limits<double>::infinity();
        return static_cast<double>(s.p) / static_cast<double>(s.q);
    };
    std::vector<Frame> stack{{Slope{-1, 0}, Slope{0, 1}, 0}, {Slope{0, 1}, Slope{1, 0}, 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        long long qm = f.a.q + f.b.q;
        double dre = 0;
        if (double lo = value(f.a); z.re < lo) dre = lo - z.re;
        if (double hi = value(f.b); z.re > hi) dre = z.re - hi;
        double bound =
            static_cast<double>(qm) * static_cast<double>(qm) * (dre * dre + z.im * z.im) / z.im;
        if (bound > best_ext) continue;
        if (f.depth >= 64)
            throw std::runtime_error("ext_min_base: Stern-Brocot depth cap exceeded");
        Slope m{f.a.p + f.b.p, qm};
        consider(m);
        stack.push_back({f.a, m, f.depth + 1});
        stack.push_back({m, f.b, f.depth + 1});
    }
    return best;
}

}  // namespace detail

/// The map F: Ext-minimizing base and transversal plus the band index of the
/// base's extremal length.
inline AugmentedMarking shortest_augmented_marking(const TeichPoint& z, const TeichParams& params) {
    validate_teich_params(params);
    Slope base = detail::ext_min_base(z);
    MappingClass w = normalize_to_infinity(base);
    double x = std::real(mobius(w, z.z()));
    long long n0 = std::llround(x);
    Slope transversal = transversal_from_twist(base, n0);
    double best_ext = ext_length(z, transversal);
    long long best_n = n0;
    for (long long n : {n0 - 1, n0 + 1}) {
        Slope t = transversal_from_twist(base, n);
        double e = ext_length(z, t);
        if (e < best_ext || (e == best_ext && n < best_n)) {
            transversal = t;
            best_ext = e;
            best_n = n;
        }
    }
    // band index: boundary values Ext = eps0/2^k land in the smaller band
    double e = ext_length(z, base);
    int d = 0;
    while (d < 62 && e < std::ldexp(params.epsilon0, -(d + 1))) ++d;
    return AugmentedMarking{SurfaceKind::OncePuncturedTorus, base, transversal, d};
}

/// The map G: the point over the base's twist line whose base extremal length
/// is the log-midpoint of F's band d, so F(G(m)) = m.
inline TeichPoint embed(const AugmentedMarking& m, const TeichParams& params) {
    validate_teich_params(params);
    if (m.kind != SurfaceKind::OncePuncturedTorus)
        throw std::invalid_argument("embed: only the once-punctured torus maps to the half-plane");
    MappingClass w = normalize_to_infinity(m.base);
    long long n = twist_coord0(m.base, m.transversal);
    double im = std::ldexp(1.0, m.d) * std::sqrt(2.0) / params.epsilon0;
    std::complex<double> z = mobius(mc_inverse(w), {static_cast<double>(n), im});
    return TeichPoint{z.real(), z.imag()};
}

struct QiRow {
    int pair_id = 0;
    double d_am = 0;
    double d_t = 0;
    double d_formula = 0;
    bool exact = true;  // d_am from BFS rather than the formula fallback
};

struct QiFit {
    double C = 1;
    double c = 0;
};

struct QiTable {
    std::vector<QiRow> rows;
    QiFit fit;
};

struct QiSampleSpec {
    int pairs = 100;
    unsigned seed = 1;
    long long slope_range = 12;
    long long twist_range = 8;
    int d_max = 4;
    long long K = 12;
    long long bfs_cap = 14;
    int d_cap_slack = 4;
    long long max_nodes = 200000;  // BFS node budget before the formula fallback
    int walk_fraction_pct = 50;    // pairs generated as short random walks
};

inline AugmentedMarking random_marking(std::mt19937_64& rng, const QiSampleSpec& spec) {
    std::uniform_int_distribution<long long> ps(-spec.slope_range, spec.slope_range);
    std::uniform_int_distribution<long long> qs(0, spec.slope_range);
    std::uniform_int_distribution<long long> ts(-spec.twist_range, spec.twist_range);
    std::uniform_int_distribution<int> ds(0, spec.d_max);
    Slope base;
    while (true) {
        long long p = ps(rng), q = qs(rng);
        if (q == 0) { base = Slope{1, 0}; break; }
        if (std::gcd(p < 0 ? -p : p, q) == 1) { base = Slope{p, q}; break; }
    }
    return AugmentedMarking{SurfaceKind::OncePuncturedTorus, base,
                            transversal_from_twist(base, ts(rng)), ds(rng)};
}

/// Smallest two-sided affine constants covering every row:
/// d_am <= C d_t + c and d_t <= C d_am + c.
inline QiFit qi_fit(const std::vector<QiRow>& rows) {
    QiFit fit;
    for (const QiRow& r : rows) {
        if (std::min(r.d_am, r.d_t) < 2) continue;
        fit.C = std::max({fit.C, r.d_am / r.d_t, r.d_t / r.d_am});
    }
    for (const QiRow& r : rows) {
        fit.c = std::max(fit.c, r.d_am - fit.C * r.d_t);
        fit.c = std::max(fit.c, r.d_t - fit.C * r.d_am);
    }
    if (fit.c < 0) fit.c = 0;
    return fit;
}

/// Seeded comparison of d_AM, d_T between embedded images, and the distance
/// formula estimate, with the affine fit summary.
inline QiTable qi_compare(const QiSampleSpec& spec, const HoroParams& hp,
                          const TeichParams& tp) {
    validate_teich_params(tp);
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<int> pct(0, 99);
    std::uniform_int_distribution<int> walk_len(1, 12);
    QiTable table;
    for (int i = 0; i < spec.pairs; ++i) {
        AugmentedMarking m1 = random_marking(rng, spec);
        AugmentedMarking m2;
        if (pct(rng) < spec.walk_fraction_pct) {
            // nearby pair: a short random walk keeps BFS inside its budget
            m2 = m1;
            int steps = walk_len(rng);
            for (int s = 0; s < steps; ++s) {
                auto nb = neighbors(m2, hp);
                m2 = nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)];
            }
        } else {
            m2 = random_marking(rng, spec);
        }
        QiRow row;
        row.pair_id = i;
        row.d_t = teich_distance(embed(m1, tp), embed(m2, tp), tp);
        row.d_formula =
            static_cast<double>(distance_formula_estimate(m1, m2, spec.K, hp));
        int d_cap = std::max(m1.d, m2.d) + spec.d_cap_slack;
        if (auto d = bfs_distance(m1, m2, hp, spec.bfs_cap, d_cap, spec.max_nodes)) {
            row.d_am = static_cast<double>(*d);
        } else {
            row.d_am = row.d_formula;
            row.exact = false;
        }
        table.rows.push_back(row);
    }
    table.fit = qi_fit(table.rows);
    return table;
}

}  // namespace amc
