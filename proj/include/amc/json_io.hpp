#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "amc/hierarchy.hpp"
#include "amc/marking.hpp"
#include "amc/teich.hpp"

namespace amc {

using json = nlohmann::json;

// ---- slopes ----------------------------------------------------------------

inline json to_json(const Slope& s) { return json{{"p", s.p}, {"q", s.q}}; }

inline Slope slope_from_json(const json& j) {
    Slope s{j.at("p").get<long long>(), j.at("q").get<long long>()};
    Slope canon = make_slope(s.p, s.q);
    if (!(canon == s)) throw std::invalid_argument("slope JSON not in canonical form");
    return s;
}

/// Text form "p/q", "inf" for the slope at infinity; plain integers allowed.
inline Slope parse_slope(const std::string& text) {
    if (text == "inf" || text == "1/0") return Slope{1, 0};
    auto slash = text.find('/');
    try {
        long long p = std::stoll(text.substr(0, slash));
        long long q = slash == std::string::npos ? 1 : std::stoll(text.substr(slash + 1));
        if (q <= 0) throw std::invalid_argument("");
        Slope canon = make_slope(p, q);
        if (canon.p != p || canon.q != q) throw std::invalid_argument("");
        return canon;
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad slope: " + text);
    }
}

// ---- horoball points -------------------------------------------------------

inline json to_json(const HoroPoint& p) {
    return json{{"x", std::to_string(p.x)}, {"n", p.n}};
}

inline HoroPoint horopoint_from_json(const json& j) {
    const std::string& xs = j.at("x").get_ref<const std::string&>();
    try {
        return HoroPoint{std::stoll(xs), j.at("n").get<int>()};
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad horoball point x: " + xs);
    }
}

inline json to_json(const std::vector<HoroPoint>& path) {
    json a = json::array();
    for (const HoroPoint& p : path) a.push_back(to_json(p));
    return a;
}

// ---- markings --------------------------------------------------------------

inline json to_json(const AugmentedMarking& m) {
    return json{{"kind", m.kind == SurfaceKind::OncePuncturedTorus ? "t1" : "s04"},
                {"base", to_json(m.base)},
                {"transversal", to_json(m.transversal)},
                {"d", m.d}};
}

inline AugmentedMarking marking_from_json(const json& j) {
    const std::string& k = j.at("kind").get_ref<const std::string&>();
    if (k != "t1" && k != "s04") throw std::invalid_argument("bad surface kind: " + k);
    AugmentedMarking m{k == "t1" ? SurfaceKind::OncePuncturedTorus : SurfaceKind::FourHoledSphere,
                       slope_from_json(j.at("base")), slope_from_json(j.at("transversal")),
                       j.at("d").get<int>()};
    if (!marking_valid(m)) throw std::invalid_argument("marking JSON fails validity");
    return m;
}

// ---- teich points ----------------------------------------------------------

inline json to_json(const TeichPoint& z) { return json{{"re", z.re}, {"im", z.im}}; }

inline TeichPoint teichpoint_from_json(const json& j) {
    TeichPoint z{j.at("re").get<double>(), j.at("im").get<double>()};
    if (!(z.im > 0)) throw std::invalid_argument("teich point im <= 0");
    return z;
}

// ---- hierarchies, resolutions, paths ---------------------------------------

inline json to_json(const AugmentedHierarchy& h) {
    json ann = json::array();
    for (const AnnularGeodesic& a : h.annular)
        ann.push_back(json{{"core", to_json(a.core)},
                           {"main_index", a.main_index},
                           {"vertices", to_json(a.verts)},
                           {"initial", to_json(a.init_data)},
                           {"terminal", to_json(a.term_data)}});
    json main = json::array();
    for (const Slope& v : h.main) main.push_back(to_json(v));
    return json{{"m1", to_json(h.m1)},
                {"m2", to_json(h.m2)},
                {"main", main},
                {"annular", ann},
                {"base_b", h.params.base_b}};
}

inline json to_json(const Resolution& r) {
    json slices = json::array();
    for (const Slice& s : r.slices)
        slices.push_back(json{{"main_pos", s.main_pos}, {"ann_pos", s.ann_pos}});
    json moves = json::array();
    for (const SliceMove& m : r.moves)
        moves.push_back(json{{"geodesic", m.g.is_main ? -1 : m.g.ann_index},
                             {"from", m.from_pos},
                             {"to", m.to_pos}});
    return json{{"slices", slices}, {"moves", moves}};
}

inline json to_json(const HierarchyPath& p) {
    json a = json::array();
    for (const AugmentedMarking& m : p.markings) a.push_back(to_json(m));
    return json{{"markings", a}};
}

// ---- AM-ball export --------------------------------------------------------

struct MarkingBall {
    std::vector<AugmentedMarking> verts;
    std::vector<std::pair<int, int>> edges;  // indices into verts, i < j
};

inline MarkingBall am_ball(const AugmentedMarking& center, int radius, const HoroParams& params) {
    if (radius < 0) throw std::invalid_argument("am_ball: negative radius");
    MarkingBall ball;
    std::unordered_map<AugmentedMarking, int, AugmentedMarkingHash> index;
    std::vector<int> depth;
    ball.verts.push_back(center);
    index[center] = 0;
    depth.push_back(0);
    for (int i = 0; i < static_cast<int>(ball.verts.size()); ++i) {
        if (depth[i] == radius) continue;
        for (const AugmentedMarking& u : neighbors(ball.verts[i], params)) {
            auto it = index.find(u);
            if (it == index.end()) {
                it = index.emplace(u, static_cast<int>(ball.verts.size())).first;
                ball.verts.push_back(u);
                depth.push_back(depth[i] + 1);
            }
            if (i < it->second) ball.edges.emplace_back(i, it->second);
        }
    }
    return ball;
}

inline std::string marking_label(const AugmentedMarking& m) {
    return m.base.str() + ":" + std::to_string(m.d);
}

inline std::string to_dot(const MarkingBall& ball) {
    std::ostringstream os;
    os << "graph am_ball {\n";
    for (std::size_t i = 0; i < ball.verts.size(); ++i)
        os << "  v" << i << " [label=\"" << marking_label(ball.verts[i]) << "\"];\n";
    for (auto [a, b] : ball.edges) os << "  v" << a << " -- v" << b << ";\n";
    os << "}\n";
    return os.str();
}

inline std::string to_graphml(const MarkingBall& ball) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
       << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
       << "  <graph id=\"am_ball\" edgedefault=\"undirected\">\n";
    for (std::size_t i = 0; i < ball.verts.size(); ++i)
        os << "    <node id=\"v" << i << "\"><data key=\"label\">" << marking_label(ball.verts[i])
           << "</data></node>\n";
    for (std::size_t e = 0; e < ball.edges.size(); ++e)
        os << "    <edge id=\"e" << e << "\" source=\"v" << ball.edges[e].first << "\" target=\"v"
           << ball.edges[e].second << "\"/>\n";
    os << "  </graph>\n</graphml>\n";
    return os.str();
}

/// Slice-transition graph of a resolution: one node per slice, edges labeled
/// by the geodesic that moves.
inline std::string resolution_to_dot(const AugmentedHierarchy& h, const Resolution& r) {
    std::ostringstream os;
    os << "digraph resolution {\n";
    for (std::size_t i = 0; i < r.slices.size(); ++i)
        os << "  s" << i << " [label=\"(" << r.slices[i].main_pos << ","
           << r.slices[i].ann_pos << ")\"];\n";
    for (std::size_t i = 0; i < r.moves.size(); ++i) {
        const SliceMove& m = r.moves[i];
        std::string g = m.g.is_main ? std::string("main") : h.main[m.g.ann_index].str();
        os << "  s" << i << " -> s" << i + 1 << " [label=\"" << g << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace amc
