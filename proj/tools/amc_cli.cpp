// amc: command-line front end for the augmented marking complex toolkit.

#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "amc/config.hpp"
#include "amc/json_io.hpp"

using namespace amc;

namespace {

AugmentedMarking parse_marking(const std::string& text) {
    return marking_from_json(json::parse(text));
}

TeichPoint parse_teich(const std::string& text) {
    return teichpoint_from_json(json::parse(text));
}

json with_config(json j, const Config& cfg) {
    j["config"] = json{{"base_b", cfg.base_b},
                       {"epsilon0", cfg.epsilon0},
                       {"K_threshold", cfg.K_threshold},
                       {"bfs_cap", cfg.bfs_cap},
                       {"d_cap_slack", cfg.d_cap_slack},
                       {"seed", cfg.seed},
                       {"metric_scale", cfg.metric_scale}};
    return j;
}

int verify_suites(const Config& cfg, const std::string& only) {
    HoroParams hp = cfg.horo();
    TeichParams tp = cfg.teich();
    int failures = 0;
    auto report = [&](const std::string& suite, bool ok, const std::string& detail) {
        std::cout << (ok ? "ok   " : "FAIL ") << suite;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    };
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<long long> pq(-10, 10);
    auto rand_slope = [&] {
        while (true) {
            long long p = pq(rng), q = std::abs(pq(rng));
            if (p != 0 || q != 0) return make_slope(p, q);
        }
    };
    auto rand_marking = [&] {
        Slope b = rand_slope();
        return AugmentedMarking{SurfaceKind::OncePuncturedTorus, b,
                                transversal_from_twist(b, pq(rng)),
                                static_cast<int>(std::abs(pq(rng)) % 4)};
    };

    if (only.empty() || only == "farey") {
        bool ok = true;
        std::string detail;
        for (int t = 0; t < 200 && ok; ++t) {
            Slope a = rand_slope(), b = rand_slope();
            auto g = farey_geodesic(a, b);
            if (g.front() != a || g.back() != b) { ok = false; detail = "endpoints"; }
            for (std::size_t i = 0; ok && i + 1 < g.size(); ++i)
                if (!adjacent(g[i], g[i + 1])) { ok = false; detail = "adjacency"; }
            if (ok && farey_distance(a, b) != farey_distance(b, a)) {
                ok = false;
                detail = "symmetry";
            }
        }
        report("farey", ok, detail);
    }
    if (only.empty() || only == "horoball") {
        bool ok = true;
        std::string detail;
        ZLineGraph zg;
        for (long long x = -8; x <= 8 && ok; ++x)
            for (int n = 0; n <= 3 && ok; ++n) {
                HoroPoint p{x, n}, q{3, 1};
                auto bfs = horo_bfs_distance(p, q, hp, zg, 30);
                if (!bfs || *bfs != horo_distance_z(p, q, hp)) {
                    ok = false;
                    detail = "formula vs BFS at x=" + std::to_string(x);
                }
            }
        report("horoball", ok, detail);
    }
    if (only.empty() || only == "marking") {
        bool ok = true;
        std::string detail;
        for (int t = 0; t < 100 && ok; ++t) {
            AugmentedMarking m = rand_marking();
            for (const AugmentedMarking& u : neighbors(m, hp)) {
                auto back = neighbors(u, hp);
                if (std::find(back.begin(), back.end(), m) == back.end()) {
                    ok = false;
                    detail = "neighbor symmetry";
                }
            }
        }
        report("marking", ok, detail);
    }
    if (only.empty() || only == "hierarchy") {
        bool ok = true;
        std::string detail;
        for (int t = 0; t < 50 && ok; ++t) {
            AugmentedHierarchy h = build_hierarchy(rand_marking(), rand_marking(), hp);
            if (auto r = validate_hierarchy(h); !r.ok) { ok = false; detail = r.message; }
            if (ok)
                if (auto r = validate_resolution(h, resolve(h)); !r.ok) {
                    ok = false;
                    detail = r.message;
                }
        }
        report("hierarchy", ok, detail);
    }
    if (only.empty() || only == "teich") {
        bool ok = true;
        std::string detail;
        for (int t = 0; t < 200 && ok; ++t) {
            AugmentedMarking m = rand_marking();
            if (!(shortest_augmented_marking(embed(m, tp), tp) == m)) {
                ok = false;
                detail = "F o G at " + m.base.str();
            }
        }
        std::uniform_real_distribution<double> re(-2, 2), im(0.3, 3);
        for (int t = 0; t < 200 && ok; ++t) {
            TeichPoint z1{re(rng), im(rng)}, z2{re(rng), im(rng)};
            double k = kerckhoff_lower_bound(z1, z2, kerckhoff_slope_ball(z1, z2, 60), tp);
            if (k > teich_distance(z1, z2, tp) + 1e-9) { ok = false; detail = "kerckhoff"; }
        }
        report("teich", ok, detail);
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"augmented marking complex toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--set", overrides, "config override key=value (repeatable)");

    // dist
    auto* dist = app.add_subcommand("dist", "BFS, formula, and path-length distances");
    std::string dist_m1, dist_m2;
    dist->add_option("--m1", dist_m1, "marking JSON")->required();
    dist->add_option("--m2", dist_m2, "marking JSON")->required();

    // neighbors
    auto* nbrs = app.add_subcommand("neighbors", "AM(S) neighbors of a marking");
    std::string nbrs_m;
    nbrs->add_option("--m", nbrs_m, "marking JSON")->required();

    // project
    auto* proj = app.add_subcommand("project", "projection of a marking to an annulus");
    std::string proj_m, proj_alpha;
    proj->add_option("--m", proj_m, "marking JSON")->required();
    proj->add_option("--alpha", proj_alpha, "annulus core slope, e.g. 3/5 or inf")->required();

    // hierarchy build|resolve|path|truncate
    auto* hier = app.add_subcommand("hierarchy", "augmented hierarchy operations");
    hier->require_subcommand(1);
    std::string hier_m1, hier_m2;
    int trunc_i = 0, trunc_j = 0;
    auto* hb = hier->add_subcommand("build", "build and emit the hierarchy");
    auto* hr = hier->add_subcommand("resolve", "emit the resolution");
    auto* hpth = hier->add_subcommand("path", "emit the hierarchy path");
    auto* ht = hier->add_subcommand("truncate", "truncate between resolution slices");
    for (CLI::App* sub : {hb, hr, hpth, ht}) {
        sub->add_option("--m1", hier_m1, "marking JSON")->required();
        sub->add_option("--m2", hier_m2, "marking JSON")->required();
    }
    ht->add_option("--i", trunc_i, "first slice index")->required();
    ht->add_option("--j", trunc_j, "last slice index")->required();

    // horoball dist|path|delta
    auto* horo = app.add_subcommand("horoball", "combinatorial horoball over Z");
    horo->require_subcommand(1);
    long long hx1 = 0, hx2 = 0;
    int hn1 = 0, hn2 = 0;
    long long hradius = 32;
    int hheight = 8, hsamples = 2000;
    auto* hd = horo->add_subcommand("dist", "exact distance");
    auto* hp_path = horo->add_subcommand("path", "canonical geodesic");
    auto* hdelta = horo->add_subcommand("delta", "sampled four-point delta");
    for (CLI::App* sub : {hd, hp_path}) {
        sub->add_option("--x1", hx1)->required();
        sub->add_option("--n1", hn1)->required();
        sub->add_option("--x2", hx2)->required();
        sub->add_option("--n2", hn2)->required();
    }
    hdelta->add_option("--radius", hradius, "base coordinate range");
    hdelta->add_option("--height", hheight, "height cap");
    hdelta->add_option("--samples", hsamples, "quadruple count");

    // teich embed|dist|kerckhoff|compare
    auto* teich = app.add_subcommand("teich", "Teichmueller half-plane operations");
    teich->require_subcommand(1);
    std::string tz1, tz2, teich_m;
    int kslopes = 200;
    int cpairs = 200;
    auto* te = teich->add_subcommand("embed", "G: marking to half-plane point");
    te->add_option("--m", teich_m, "marking JSON")->required();
    auto* td = teich->add_subcommand("dist", "distance between two points");
    auto* tk = teich->add_subcommand("kerckhoff", "extremal-length lower bound");
    for (CLI::App* sub : {td, tk}) {
        sub->add_option("--z1", tz1, "point JSON {\"re\":..,\"im\":..}")->required();
        sub->add_option("--z2", tz2, "point JSON")->required();
    }
    tk->add_option("--slopes", kslopes, "slope ball size");
    auto* tc = teich->add_subcommand("compare", "QI experiment CSV");
    tc->add_option("--pairs", cpairs, "number of sampled pairs");
    unsigned long long tc_seed = 0;
    bool tc_seed_set = false;
    tc->add_option("--seed", tc_seed, "sample seed (defaults to config seed)")
        ->each([&](const std::string&) { tc_seed_set = true; });

    // export-ball
    auto* ball = app.add_subcommand("export-ball", "DOT/GraphML of an AM-ball");
    std::string ball_m, ball_fmt = "dot";
    int ball_radius = 2;
    ball->add_option("--m", ball_m, "center marking JSON")->required();
    ball->add_option("--radius", ball_radius, "ball radius");
    ball->add_option("--format", ball_fmt, "dot or graphml")
        ->check(CLI::IsMember({"dot", "graphml"}));

    // verify
    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    std::string suite;
    verify->add_option("--suite", suite, "restrict to one suite")
        ->check(CLI::IsMember({"farey", "horoball", "marking", "hierarchy", "teich"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Config cfg;
        if (!config_path.empty()) cfg = load_config_file(config_path, cfg);
        for (const std::string& kv : overrides) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--set expects key=value: " + kv);
            config_set(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        validate_config(cfg);
        HoroParams hp = cfg.horo();
        TeichParams tp = cfg.teich();

        if (*dist) {
            AugmentedMarking m1 = parse_marking(dist_m1), m2 = parse_marking(dist_m2);
            auto bfs = bfs_distance(m1, m2, hp, cfg.bfs_cap,
                                    std::max(m1.d, m2.d) + cfg.d_cap_slack);
            long long formula = distance_formula_estimate(m1, m2, cfg.K_threshold, hp);
            long long plen =
                static_cast<long long>(hierarchy_path(m1, m2, hp).markings.size()) - 1;
            json out{{"bfs", bfs ? json(*bfs) : json(nullptr)},
                     {"formula", formula},
                     {"path_length", plen}};
            std::cout << with_config(out, cfg).dump(2) << "\n";
        } else if (*nbrs) {
            json arr = json::array();
            for (const AugmentedMarking& u : neighbors(parse_marking(nbrs_m), hp))
                arr.push_back(to_json(u));
            std::cout << with_config(json{{"neighbors", arr}}, cfg).dump(2) << "\n";
        } else if (*proj) {
            HoroPoint p = project_to_annulus(parse_marking(proj_m), parse_slope(proj_alpha));
            std::cout << with_config(to_json(p), cfg).dump(2) << "\n";
        } else if (*hier) {
            AugmentedMarking m1 = parse_marking(hier_m1), m2 = parse_marking(hier_m2);
            AugmentedHierarchy h = build_hierarchy(m1, m2, hp);
            if (*hb) {
                std::cout << with_config(to_json(h), cfg).dump(2) << "\n";
            } else if (*hr) {
                std::cout << with_config(to_json(resolve(h)), cfg).dump(2) << "\n";
            } else if (*hpth) {
                std::cout << with_config(to_json(hierarchy_path(m1, m2, hp)), cfg).dump(2)
                          << "\n";
            } else {
                Resolution res = resolve(h);
                AugmentedHierarchy sub = truncate(h, res, trunc_i, trunc_j);
                std::cout << with_config(to_json(sub), cfg).dump(2) << "\n";
            }
        } else if (*horo) {
            if (*hdelta) {
                double d = gromov_delta_sample(hradius, hheight, hsamples,
                                               static_cast<unsigned>(cfg.seed), hp);
                std::cout << config_header(cfg) << "delta " << format_float(d) << "\n";
            } else {
                HoroPoint p1{hx1, hn1}, p2{hx2, hn2};
                if (*hd) {
                    std::cout << horo_distance_z(p1, p2, hp) << "\n";
                } else {
                    std::cout << with_config(json{{"path", to_json(horo_geodesic_z(p1, p2, hp))}},
                                             cfg)
                                     .dump(2)
                              << "\n";
                }
            }
        } else if (*teich) {
            if (*te) {
                std::cout << with_config(to_json(embed(parse_marking(teich_m), tp)), cfg).dump(2)
                          << "\n";
            } else if (*td) {
                std::cout << format_float(teich_distance(parse_teich(tz1), parse_teich(tz2), tp))
                          << "\n";
            } else if (*tk) {
                TeichPoint z1 = parse_teich(tz1), z2 = parse_teich(tz2);
                double k =
                    kerckhoff_lower_bound(z1, z2, kerckhoff_slope_ball(z1, z2, kslopes), tp);
                std::cout << format_float(k) << "\n";
            } else {
                QiSampleSpec spec;
                spec.pairs = cpairs;
                spec.seed = static_cast<unsigned>(tc_seed_set ? tc_seed : cfg.seed);
                spec.K = cfg.K_threshold;
                spec.bfs_cap = cfg.bfs_cap;
                spec.d_cap_slack = cfg.d_cap_slack;
                QiTable table = qi_compare(spec, hp, tp);
                std::cout << config_header(cfg);
                std::cout << "# fit C=" << format_float(table.fit.C)
                          << " c=" << format_float(table.fit.c) << "\n";
                std::cout << "pair_id,d_am,d_t,d_formula\n";
                for (const QiRow& r : table.rows)
                    std::cout << r.pair_id << "," << format_float(r.d_am) << ","
                              << format_float(r.d_t) << "," << format_float(r.d_formula) << "\n";
            }
        } else if (*ball) {
            MarkingBall b = am_ball(parse_marking(ball_m), ball_radius, hp);
            if (ball_fmt == "dot")
                std::cout << "// " << b.verts.size() << " vertices\n" << to_dot(b);
            else
                std::cout << to_graphml(b);
        } else if (*verify) {
            return verify_suites(cfg, suite);
        }
        return 0;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
