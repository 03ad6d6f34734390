#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "amc/farey.hpp"
#include "amc/horoball.hpp"
#include "amc/marking.hpp"

namespace amc {

/// Component domain at complexity 4: the whole surface or a vertex annulus.
struct Domain {
    bool whole = true;
    Slope core{1, 0};

    static Domain whole_surface() { return Domain{true, Slope{1, 0}}; }
    static Domain annulus(const Slope& core) { return Domain{false, core}; }

    friend bool operator==(const Domain&, const Domain&) = default;
};

/// Horoball geodesic over a main-geodesic vertex, with its subordinancy data.
struct AnnularGeodesic {
    Slope core;
    int main_index = 0;
    std::vector<HoroPoint> verts;  // front() realizes init_data, back() term_data
    HoroPoint init_data;
    HoroPoint term_data;
};

/// Main Farey geodesic plus one horoball geodesic per main vertex.
struct AugmentedHierarchy {
    HoroParams params;
    AugmentedMarking m1, m2;       // I and T of the main geodesic
    std::vector<Slope> main;
    std::vector<AnnularGeodesic> annular;  // indexed parallel to main
};

/// Reference to a geodesic in the hierarchy.
struct GeodesicRef {
    bool is_main = true;
    int ann_index = 0;  // main index of the annular geodesic

    static GeodesicRef main_ref() { return GeodesicRef{true, 0}; }
    static GeodesicRef annulus_ref(int i) { return GeodesicRef{false, i}; }

    friend bool operator==(const GeodesicRef&, const GeodesicRef&) = default;
};

// Positions on a geodesic with sentinels: -1 is I, vertex indices, len is T.
constexpr int kInitialSentinel = -1;

struct PointedGeodesic {
    GeodesicRef g;
    int pos = 0;
};

/// Complete slice: bottom pair on the main geodesic plus the pair on the
/// annular geodesic over the bottom vertex.
struct Slice {
    int main_pos = 0;
    int ann_pos = 0;

    friend bool operator==(const Slice&, const Slice&) = default;
};

struct SliceMove {
    GeodesicRef g;
    int from_pos = 0;
    int to_pos = 0;
};

struct Resolution {
    std::vector<Slice> slices;
    std::vector<SliceMove> moves;
};

enum class Order { Less, Greater };

inline int geodesic_length(const AugmentedHierarchy& h, const GeodesicRef& g) {
    // edge-count convention: vertices - 1
    if (g.is_main) return static_cast<int>(h.main.size()) - 1;
    return static_cast<int>(h.annular[g.ann_index].verts.size()) - 1;
}

/// Sum of edge lengths of all geodesics, |H|.
inline long long total_size(const AugmentedHierarchy& h) {
    long long total = static_cast<long long>(h.main.size()) - 1;
    for (const AnnularGeodesic& a : h.annular)
        total += static_cast<long long>(a.verts.size()) - 1;
    return total;
}

namespace detail {

inline HoroPoint initial_data(const AugmentedHierarchy& h, int i) {
    if (i == 0) return project_to_annulus(h.m1, h.main[0]);
    return HoroPoint{twist_coord0(h.main[i], h.main[i - 1]), 0};
}

inline HoroPoint terminal_data(const AugmentedHierarchy& h, int i) {
    int last = static_cast<int>(h.main.size()) - 1;
    if (i == last) return project_to_annulus(h.m2, h.main[last]);
    return HoroPoint{twist_coord0(h.main[i], h.main[i + 1]), 0};
}

}  // namespace detail

/// Builds the augmented hierarchy between two markings: the canonical main
/// geodesic with a horoball geodesic over every vertex, endpoint data coming
/// from the end markings and interior data from neighbor-vertex projections.
inline AugmentedHierarchy build_hierarchy(const AugmentedMarking& m1, const AugmentedMarking& m2,
                                          const HoroParams& params) {
    if (m1.kind != m2.kind)
        throw std::invalid_argument("build_hierarchy: surface kinds differ");
    AugmentedHierarchy h;
    h.params = params;
    h.m1 = m1;
    h.m2 = m2;
    h.main = farey_geodesic(m1.base, m2.base);
    int len = static_cast<int>(h.main.size());
    h.annular.resize(len);
    for (int i = 0; i < len; ++i) {
        AnnularGeodesic& a = h.annular[i];
        a.core = h.main[i];
        a.main_index = i;
        a.init_data = detail::initial_data(h, i);
        a.term_data = detail::terminal_data(h, i);
        a.verts = horo_geodesic_z(a.init_data, a.term_data, params);
    }
    return h;
}

/// Footprint of dom on the geodesic g: vertex positions disjoint from the
/// annulus core. At complexity 4 this is the (at most one) occurrence of the
/// core itself on the main geodesic.
inline std::vector<int> footprint(const AugmentedHierarchy& h, const GeodesicRef& g,
                                  const Domain& dom) {
    if (dom.whole || !g.is_main)
        throw std::invalid_argument("footprint: domain is not properly nested in the geodesic");
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(h.main.size()); ++i)
        if (h.main[i] == dom.core) out.push_back(i);
    return out;
}

inline std::optional<int> main_index_of(const AugmentedHierarchy& h, const Slope& core) {
    for (int i = 0; i < static_cast<int>(h.main.size()); ++i)
        if (h.main[i] == core) return i;
    return std::nullopt;
}

/// Backward and forward subordinacy chains through dom, both ending at the
/// geodesic dom supports when there is one.
inline std::pair<std::vector<GeodesicRef>, std::vector<GeodesicRef>> sigma_sequences(
    const AugmentedHierarchy& h, const Domain& dom) {
    if (dom.whole) return {{GeodesicRef::main_ref()}, {GeodesicRef::main_ref()}};
    std::vector<GeodesicRef> back, fwd;
    // the main geodesic's end data always projects to any annulus at xi = 4
    back.push_back(GeodesicRef::main_ref());
    fwd.push_back(GeodesicRef::main_ref());
    if (auto i = main_index_of(h, dom.core)) {
        back.push_back(GeodesicRef::annulus_ref(*i));
        fwd.push_back(GeodesicRef::annulus_ref(*i));
    }
    return {back, fwd};
}

/// Time order: annular geodesics compare by main-geodesic footprint.
inline std::optional<Order> time_order(const AugmentedHierarchy&, const GeodesicRef& g1,
                                       const GeodesicRef& g2) {
    if (g1 == g2) throw std::invalid_argument("time_order: geodesics must differ");
    if (g1.is_main || g2.is_main) return std::nullopt;
    if (g1.ann_index < g2.ann_index) return Order::Less;
    return Order::Greater;
}

namespace detail {

// (g1, x) strictly precedes (g2, y) in the pointed order.
inline bool pointed_less(const PointedGeodesic& a, const PointedGeodesic& b) {
    if (a.g == b.g) return a.pos < b.pos;
    if (a.g.is_main) return a.pos < b.g.ann_index;   // main < min footprint
    if (b.g.is_main) return a.g.ann_index < b.pos;   // max footprint < pos
    return a.g.ann_index < b.g.ann_index;            // time order via main
}

}  // namespace detail

/// Partial order on pointed geodesics; positions include the I/T sentinels.
inline std::optional<Order> pointed_order(const AugmentedHierarchy& h, const PointedGeodesic& a,
                                          const PointedGeodesic& b) {
    auto check = [&](const PointedGeodesic& p) {
        int len = geodesic_length(h, p.g);
        if (p.pos < kInitialSentinel || p.pos > len + 1)
            throw std::invalid_argument("pointed_order: position out of range");
    };
    check(a);
    check(b);
    if (detail::pointed_less(a, b)) return Order::Less;
    if (detail::pointed_less(b, a)) return Order::Greater;
    return std::nullopt;
}

inline std::vector<PointedGeodesic> slice_pairs(const Slice& s) {
    return {PointedGeodesic{GeodesicRef::main_ref(), s.main_pos},
            PointedGeodesic{GeodesicRef::annulus_ref(s.main_pos), s.ann_pos}};
}

/// Strict partial order on complete slices.
inline std::optional<Order> slice_order(const AugmentedHierarchy&, const Slice& s1,
                                        const Slice& s2) {
    if (s1 == s2) return std::nullopt;
    auto leq = [&](const Slice& x, const Slice& y) {
        for (const PointedGeodesic& p : slice_pairs(x)) {
            bool ok = false;
            for (const PointedGeodesic& q : slice_pairs(y)) {
                if (p.g == q.g && p.pos == q.pos) { ok = true; break; }
                if (detail::pointed_less(p, q)) { ok = true; break; }
            }
            if (!ok) return false;
        }
        return true;
    };
    if (leq(s1, s2)) return Order::Less;
    if (leq(s2, s1)) return Order::Greater;
    return std::nullopt;
}

inline Slice initial_slice(const AugmentedHierarchy&) { return Slice{0, 0}; }

inline Slice terminal_slice(const AugmentedHierarchy& h) {
    int last = static_cast<int>(h.main.size()) - 1;
    return Slice{last, static_cast<int>(h.annular[last].verts.size()) - 1};
}

/// Transition slices for the step v -> v' on g, as (bottom-first) pair lists.
inline std::pair<std::vector<PointedGeodesic>, std::vector<PointedGeodesic>> transition_slices(
    const AugmentedHierarchy& h, const GeodesicRef& g, int v, int v_next) {
    int len = geodesic_length(h, g);
    if (v < 0 || v >= len || v_next != v + 1)
        throw std::invalid_argument("transition_slices: v' must be the successor of a non-terminal v");
    if (!g.is_main)
        return {{PointedGeodesic{g, v}}, {PointedGeodesic{g, v_next}}};
    // main-geodesic step: the flanking annuli enter at their extreme vertices.
    // On the sphere the two-component projection contributes its last vertex,
    // which is the same extreme position in the exact twist model.
    int term = static_cast<int>(h.annular[v].verts.size()) - 1;
    std::vector<PointedGeodesic> sigma{PointedGeodesic{GeodesicRef::main_ref(), v},
                                       PointedGeodesic{GeodesicRef::annulus_ref(v), term}};
    std::vector<PointedGeodesic> sigma_prime{PointedGeodesic{GeodesicRef::main_ref(), v_next},
                                             PointedGeodesic{GeodesicRef::annulus_ref(v_next), 0}};
    return {sigma, sigma_prime};
}

/// Resolution into forward elementary moves: the annular geodesic over the
/// current bottom vertex is exhausted first, then the main geodesic advances.
inline Resolution resolve(const AugmentedHierarchy& h) {
    Resolution res;
    Slice cur = initial_slice(h);
    res.slices.push_back(cur);
    Slice term = terminal_slice(h);
    while (!(cur == term)) {
        int ann_len = static_cast<int>(h.annular[cur.main_pos].verts.size()) - 1;
        if (cur.ann_pos < ann_len) {
            res.moves.push_back(
                SliceMove{GeodesicRef::annulus_ref(cur.main_pos), cur.ann_pos, cur.ann_pos + 1});
            ++cur.ann_pos;
        } else {
            res.moves.push_back(SliceMove{GeodesicRef::main_ref(), cur.main_pos, cur.main_pos + 1});
            ++cur.main_pos;
            cur.ann_pos = 0;
        }
        res.slices.push_back(cur);
    }
    return res;
}

/// The unique clean augmented marking compatible with a complete slice.
inline AugmentedMarking compatible_marking(const AugmentedHierarchy& h, const Slice& s) {
    if (s.main_pos < 0 || s.main_pos >= static_cast<int>(h.main.size()) || s.ann_pos < 0 ||
        s.ann_pos >= static_cast<int>(h.annular[s.main_pos].verts.size()))
        throw std::invalid_argument("compatible_marking: slice is not complete on this hierarchy");
    const Slope& base = h.main[s.main_pos];
    const HoroPoint& hp = h.annular[s.main_pos].verts[s.ann_pos];
    return AugmentedMarking{h.m1.kind, base, transversal_from_twist(base, hp.x), hp.n};
}

struct HierarchyPath {
    std::vector<AugmentedMarking> markings;
};

inline HierarchyPath hierarchy_path(const AugmentedMarking& m1, const AugmentedMarking& m2,
                                    const HoroParams& params) {
    if (m1 == m2) return HierarchyPath{{m1}};
    AugmentedHierarchy h = build_hierarchy(m1, m2, params);
    Resolution res = resolve(h);
    HierarchyPath path;
    path.markings.reserve(res.slices.size());
    for (const Slice& s : res.slices) path.markings.push_back(compatible_marking(h, s));
    return path;
}

/// Domains whose projections of the two markings are more than K apart.
inline std::vector<std::pair<Domain, long long>> large_links(const AugmentedMarking& m1,
                                                             const AugmentedMarking& m2,
                                                             long long K,
                                                             const HoroParams& params) {
    if (K <= 0) throw std::invalid_argument("large_links: K must be positive");
    std::vector<std::pair<Domain, long long>> out;
    long long ds = farey_distance(m1.base, m2.base);
    if (ds > K) out.emplace_back(Domain::whole_surface(), ds);
    for (const Slope& alpha : farey_geodesic(m1.base, m2.base)) {
        long long da = horo_distance_z(project_to_annulus(m1, alpha),
                                       project_to_annulus(m2, alpha), params);
        if (da > K) out.emplace_back(Domain::annulus(alpha), da);
    }
    return out;
}

/// Slice-index interval during which dom's geodesic is traversed.
inline std::optional<std::pair<int, int>> active_segment(const Resolution& res,
                                                         const AugmentedHierarchy& h,
                                                         const Domain& dom) {
    if (dom.whole) return std::pair{0, static_cast<int>(res.slices.size()) - 1};
    auto idx = main_index_of(h, dom.core);
    if (!idx) return std::nullopt;
    int first = -1, last = -1;
    for (int i = 0; i < static_cast<int>(res.slices.size()); ++i) {
        if (res.slices[i].main_pos != *idx) continue;
        if (first < 0) first = i;
        last = i;
    }
    if (first < 0) return std::nullopt;
    return std::pair{first, last};
}

/// Truncation of a hierarchy between two slices of one of its resolutions.
/// End markings are the compatible markings of the boundary slices; interior
/// annular geodesics are kept whole, the boundary ones are cut at the slice
/// positions.
inline AugmentedHierarchy truncate(const AugmentedHierarchy& h, const Resolution& res, int i,
                                   int j) {
    int n = static_cast<int>(res.slices.size());
    if (i < 0 || j >= n || i > j) throw std::invalid_argument("truncate: invalid slice indices");
    const Slice& si = res.slices[i];
    const Slice& sj = res.slices[j];
    AugmentedHierarchy out;
    out.params = h.params;
    out.m1 = compatible_marking(h, si);
    out.m2 = compatible_marking(h, sj);
    out.main.assign(h.main.begin() + si.main_pos, h.main.begin() + sj.main_pos + 1);
    int len = static_cast<int>(out.main.size());
    out.annular.resize(len);
    for (int k = 0; k < len; ++k) {
        const AnnularGeodesic& src = h.annular[si.main_pos + k];
        AnnularGeodesic& a = out.annular[k];
        a.core = src.core;
        a.main_index = k;
        int lo = (k == 0) ? si.ann_pos : 0;
        int hi = (k == len - 1) ? sj.ann_pos : static_cast<int>(src.verts.size()) - 1;
        a.verts.assign(src.verts.begin() + lo, src.verts.begin() + hi + 1);
        a.init_data = a.verts.front();
        a.term_data = a.verts.back();
    }
    return out;
}

/// Re-indexes res[i..j] as a resolution of truncate(h, res, i, j).
inline Resolution restrict_resolution(const AugmentedHierarchy&, const Resolution& res, int i,
                                      int j) {
    int n = static_cast<int>(res.slices.size());
    if (i < 0 || j >= n || i > j)
        throw std::invalid_argument("restrict_resolution: invalid slice indices");
    const Slice& si = res.slices[i];
    Resolution out;
    for (int k = i; k <= j; ++k) {
        Slice s = res.slices[k];
        int ann_off = (s.main_pos == si.main_pos) ? si.ann_pos : 0;
        out.slices.push_back(Slice{s.main_pos - si.main_pos, s.ann_pos - ann_off});
    }
    for (int k = i; k < j; ++k) {
        SliceMove mv = res.moves[k];
        if (mv.g.is_main) {
            out.moves.push_back(SliceMove{GeodesicRef::main_ref(), mv.from_pos - si.main_pos,
                                          mv.to_pos - si.main_pos});
        } else {
            int ann_off = (mv.g.ann_index == si.main_pos) ? si.ann_pos : 0;
            out.moves.push_back(SliceMove{GeodesicRef::annulus_ref(mv.g.ann_index - si.main_pos),
                                          mv.from_pos - ann_off, mv.to_pos - ann_off});
        }
    }
    return out;
}

// ---- validators ------------------------------------------------------------

struct ValidationResult {
    bool ok = true;
    std::string message;

    static ValidationResult fail(std::string msg) { return {false, std::move(msg)}; }
};

/// Checks (H1)-(H3): main geodesic with the end markings, every annular
/// geodesic a horoball geodesic whose end data realize the subordinacy
/// relations, one geodesic per domain.
inline ValidationResult validate_hierarchy(const AugmentedHierarchy& h) {
    if (h.main.empty()) return ValidationResult::fail("empty main geodesic");
    if (h.m1.base != h.main.front() || h.m2.base != h.main.back())
        return ValidationResult::fail("(H1): end markings do not match main endpoints");
    for (std::size_t i = 0; i + 1 < h.main.size(); ++i)
        if (!adjacent(h.main[i], h.main[i + 1]))
            return ValidationResult::fail("main geodesic has a non-adjacent step");
    if (static_cast<long long>(h.main.size()) - 1 != farey_distance(h.main.front(), h.main.back()))
        return ValidationResult::fail("main path is not a geodesic");
    for (std::size_t i = 0; i < h.main.size(); ++i)
        for (std::size_t j = i + 1; j < h.main.size(); ++j)
            if (h.main[i] == h.main[j])
                return ValidationResult::fail("domain supports two geodesics");
    if (h.annular.size() != h.main.size())
        return ValidationResult::fail("annular geodesic count mismatch");
    for (int i = 0; i < static_cast<int>(h.main.size()); ++i) {
        const AnnularGeodesic& a = h.annular[i];
        if (a.core != h.main[i] || a.main_index != i)
            return ValidationResult::fail("annular geodesic core mismatch");
        if (a.verts.empty()) return ValidationResult::fail("empty annular geodesic");
        if (a.verts.front() != a.init_data || a.verts.back() != a.term_data)
            return ValidationResult::fail("annular end data mismatch");
        for (std::size_t k = 0; k + 1 < a.verts.size(); ++k)
            if (!horo_is_edge_z(a.verts[k], a.verts[k + 1], h.params))
                return ValidationResult::fail("annular geodesic has a non-edge step");
        if (static_cast<long long>(a.verts.size()) - 1 !=
            horo_distance_z(a.init_data, a.term_data, h.params))
            return ValidationResult::fail("annular path is not a geodesic");
        // (H2)/(H3): end data come from the main geodesic's neighbors or the
        // end-marking restrictions
        if (a.init_data != detail::initial_data(h, i))
            return ValidationResult::fail("(H2): initial data not subordinate to main");
        if (a.term_data != detail::terminal_data(h, i))
            return ValidationResult::fail("(H3): terminal data not subordinate to main");
    }
    return {};
}

/// Checks (S1)-(S4) of a slice against a hierarchy.
inline ValidationResult validate_slice(const AugmentedHierarchy& h, const Slice& s) {
    if (s.main_pos < 0 || s.main_pos >= static_cast<int>(h.main.size()))
        return ValidationResult::fail("(S2): bottom position not on the main geodesic");
    const AnnularGeodesic& a = h.annular[s.main_pos];
    if (s.ann_pos < 0 || s.ann_pos >= static_cast<int>(a.verts.size()))
        return ValidationResult::fail("(S3): annular position not on its geodesic");
    // (S1) holds structurally (one pair per geodesic); (S4): the bottom
    // vertex's only component domain is its annulus, which carries a pair.
    return {};
}

/// Checks that res is a resolution of h: endpoints, elementary moves matching
/// the transition slices, strict slice-order progress, no regression, and the
/// length bound N <= |H|.
inline ValidationResult validate_resolution(const AugmentedHierarchy& h, const Resolution& res) {
    if (res.slices.empty()) return ValidationResult::fail("empty resolution");
    if (res.moves.size() + 1 != res.slices.size())
        return ValidationResult::fail("move/slice count mismatch");
    if (!(res.slices.front() == initial_slice(h)))
        return ValidationResult::fail("resolution does not start at the initial slice");
    if (!(res.slices.back() == terminal_slice(h)))
        return ValidationResult::fail("resolution does not end at the terminal slice");
    if (static_cast<long long>(res.moves.size()) > total_size(h))
        return ValidationResult::fail("resolution longer than |H|");
    for (std::size_t k = 0; k < res.moves.size(); ++k) {
        const Slice& cur = res.slices[k];
        const Slice& nxt = res.slices[k + 1];
        if (auto r = validate_slice(h, cur); !r.ok) return r;
        const SliceMove& mv = res.moves[k];
        if (mv.to_pos != mv.from_pos + 1)
            return ValidationResult::fail("move does not advance by one vertex");
        auto [sigma, sigma_prime] = transition_slices(h, mv.g, mv.from_pos, mv.to_pos);
        auto contains = [&](const Slice& s, const std::vector<PointedGeodesic>& pairs) {
            for (const PointedGeodesic& p : pairs) {
                bool found = false;
                for (const PointedGeodesic& q : slice_pairs(s))
                    if (p.g == q.g && p.pos == q.pos) found = true;
                if (!found) return false;
            }
            return true;
        };
        if (!contains(cur, sigma) || !contains(nxt, sigma_prime))
            return ValidationResult::fail("move does not match its transition slices");
        if (slice_order(h, cur, nxt) != Order::Less)
            return ValidationResult::fail("move does not advance the slice order");
        if (nxt.main_pos < cur.main_pos ||
            (nxt.main_pos == cur.main_pos && nxt.ann_pos < cur.ann_pos))
            return ValidationResult::fail("a geodesic position regressed");
    }
    if (auto r = validate_slice(h, res.slices.back()); !r.ok) return r;
    return {};
}

/// Enumerates every complete slice of h (small hierarchies only).
inline std::vector<Slice> all_slices(const AugmentedHierarchy& h) {
    std::vector<Slice> out;
    for (int i = 0; i < static_cast<int>(h.main.size()); ++i)
        for (int k = 0; k < static_cast<int>(h.annular[i].verts.size()); ++k)
            out.push_back(Slice{i, k});
    return out;
}

}  // namespace amc
