#include "cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "hypertile/config.h"
#include "hypertile/decomposition.h"
#include "hypertile/errors.h"
#include "hypertile/geodesics.h"

namespace hypertile::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::size_t terminal_arg(const Instance& inst, long i) {
    if (i < 0 || static_cast<std::size_t>(i) >= inst.walks.size())
        fail(ErrorKind::ParseError, "terminal index " + std::to_string(i) + " outside 0.." +
                                        std::to_string(static_cast<long>(inst.walks.size()) - 1));
    return static_cast<std::size_t>(i);
}

Json key_json(const VertexKey& k) { return to_string(k); }

// ---- commands ----

Json cmd_check(const Config& cfg, const Instance& inst) {
    const Tiling t(inst.sym, cfg);
    const TerminalSet ts = resolve_terminals(t, inst.walks);
    double radius = 0;
    for (const Frame& f : ts.frames) radius = std::max(radius, t.radius_of(f.position()));
    Json j;
    j["p"] = inst.sym.p;
    j["q"] = inst.sym.q;
    j["n"] = inst.walks.size();
    j["N"] = ts.total_steps;
    j["distinct"] = ts.n();
    j["max_radius"] = radius;
    return j;
}

Json cmd_dist(const Config& cfg, const Instance& inst, long i, long k) {
    const Tiling t(inst.sym, cfg);
    const Frame a = resolve_walk(t, inst.walks[terminal_arg(inst, i)]).frame;
    const Frame b = resolve_walk(t, inst.walks[terminal_arg(inst, k)]).frame;
    Json j;
    j["from"] = i;
    j["to"] = k;
    j["dist"] = distance(t, a, b);
    return j;
}

/// Step labels that walk from terminal i to terminal k along a shortest path.
Json cmd_path(const Config& cfg, const Instance& inst, long i, long k) {
    const Tiling t(inst.sym, cfg);
    const Frame a = resolve_walk(t, inst.walks[terminal_arg(inst, i)]).frame;
    const Frame b = resolve_walk(t, inst.walks[terminal_arg(inst, k)]).frame;
    Json steps = Json::array(), keys = Json::array();
    keys.push_back(key_json(t.key_of(a.position())));
    if (hyperbolic_distance(a.position(), b.position()) >= t.geometry().edge_len / 2) {
        const GeoPath path = shortest_path(t, a, b);
        Frame cur = a;
        for (std::size_t s = 1; s < path.frames.size(); ++s) {
            const Vec3q next = path.frames[s].position();
            const int label = t.slot_of(cur, next) + 1;
            cur = t.step(cur, label);
            ensure(hyperbolic_distance(cur.position(), next) < t.geometry().edge_len / 2, "path step leaves the path");
            steps.push_back(label);
            keys.push_back(key_json(path.keys[s]));
        }
    }
    Json j;
    j["from"] = i;
    j["to"] = k;
    j["length"] = steps.size();
    j["steps"] = std::move(steps);
    j["keys"] = std::move(keys);
    return j;
}

Json cmd_closure(const Config& cfg, const Instance& inst, bool timings) {
    const Tiling t(inst.sym, cfg);
    auto t0 = Clock::now();
    const TerminalSet ts = resolve_terminals(t, inst.walks);
    const double ms_resolve = ms_since(t0);
    const ClosureResult cr = build_closure(t, ts);
    const PatchGraph& g = cr.graph;
    t0 = Clock::now();
    const TreeDecomposition td = tree_decomposition(g);
    const double ms_td = ms_since(t0);
    t0 = Clock::now();
    const LayerAssignment la = peel_layers(g);
    const double ms_peel = ms_since(t0);
    std::size_t bounded = 0;
    for (const Face& f : faces(g)) bounded += f.unbounded ? 0 : 1;

    Json j;
    j["n"] = ts.n();
    j["N"] = ts.total_steps;
    j["hull_size"] = cr.hull.sources.size();
    j["boundary_len"] = cr.walk.length();
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["faces"] = bounded;
    j["width_minfill"] = td.width();
    j["peel_layers"] = la.count;
    if (timings) {
        j["ms_per_stage"] = {{"resolve", ms_resolve},       {"hull", cr.stats.ms_hull},
                             {"boundary", cr.stats.ms_boundary}, {"fill", cr.stats.ms_fill},
                             {"decomposition", ms_td},      {"peel", ms_peel}};
    }
    return j;
}

Json cmd_solve(const Config& cfg, const Instance& inst, SolveOptions opts, bool timings) {
    const Tiling t(inst.sym, cfg);
    const SolveResult res = solve(t, inst.walks, opts);
    const PatchGraph& g = res.closure.graph;
    auto key = [&](int v) { return key_json(g.vertices[static_cast<std::size_t>(v)].key); };
    Json j;
    j["n"] = res.stats.n;
    j["N"] = res.stats.N;
    if (opts.steiner) {
        Json edges = Json::array();
        for (const auto& [a, b] : res.steiner.edges) edges.push_back({key(a), key(b)});
        j["steiner"] = {{"cost", res.steiner.cost}, {"edges", std::move(edges)}};
    }
    if (opts.tsp) {
        Json walk = Json::array();
        for (int v : res.tsp.walk) walk.push_back(key(v));
        j["tsp"] = {{"cost", res.tsp.cost}, {"walk", std::move(walk)}};
    }
    Json stats;
    stats["vertices"] = res.stats.vertices;
    stats["edges"] = res.stats.edges;
    stats["width"] = res.stats.width;
    stats["nice_nodes"] = res.stats.nice_nodes;
    if (timings) {
        stats["ms_per_stage"] = {{"resolve", res.stats.ms_resolve},
                                 {"closure", res.stats.ms_closure},
                                 {"decomposition", res.stats.ms_decomposition},
                                 {"steiner", res.stats.ms_steiner},
                                 {"tsp", res.stats.ms_tsp}};
    }
    j["stats"] = std::move(stats);
    return j;
}

Json cmd_ball(const Config& cfg, int p, int q, int r) {
    if (r < 0) fail(ErrorKind::ParseError, "ball radius must be non-negative");
    const Tiling t({p, q}, cfg);
    const PatchGraph g = ball(t, r);
    Json verts = Json::array(), edges = Json::array();
    for (const PatchVertex& v : g.vertices) {
        const Point pt = from_hyperboloid_q(v.frame.position(), Model::Poincare);
        verts.push_back({{"key", key_json(v.key)}, {"x", pt.x}, {"y", pt.y}, {"depth", v.depth}});
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        for (int u : g.adj[v])
            if (static_cast<std::size_t>(u) > v) edges.push_back({v, u});
    Json j;
    j["p"] = p;
    j["q"] = q;
    j["r"] = r;
    j["vertices"] = std::move(verts);
    j["edges"] = std::move(edges);
    return j;
}

// ---- rendering ----

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct Xy {
    double x, y;
};

Xy project(const Vec3q& v, Model model) {
    const Point pt = from_hyperboloid_q(v, model);
    return {pt.x, pt.y};
}

/// Geodesic segment as an SVG points list. Straight in the Klein model,
/// 32 samples in the Poincare model.
std::string polyline_points(const Vec3q& a, const Vec3q& b, Model model) {
    std::vector<Xy> pts;
    if (model == Model::Klein) {
        pts = {project(a, model), project(b, model)};
    } else {
        const quad d = hyperbolic_distance(a, b);
        const quad sd = sinhq(d);
        for (int i = 0; i < 32; ++i) {
            const quad s = quad(i) / 31;
            if (sd == 0) {
                pts.push_back(project(a, model));
                continue;
            }
            const Vec3q v = a * (sinhq((1 - s) * d) / sd) + b * (sinhq(s * d) / sd);
            pts.push_back(project(v, model));
        }
    }
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        out += fmt(pts[i].x) + "," + fmt(-pts[i].y);
    }
    return out;
}

void edges_group(std::ostringstream& svg, const std::string& cls, const PatchGraph& g,
                 const std::vector<std::pair<int, int>>& edges, Model model) {
    svg << "  <g class=\"" << cls << "\">\n";
    for (const auto& [a, b] : edges)
        svg << "    <polyline points=\""
            << polyline_points(g.vertices[static_cast<std::size_t>(a)].frame.position(),
                               g.vertices[static_cast<std::size_t>(b)].frame.position(), model)
            << "\"/>\n";
    svg << "  </g>\n";
}

std::vector<std::pair<int, int>> all_edges(const PatchGraph& g) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        for (int u : g.adj[v])
            if (static_cast<std::size_t>(u) > v) out.emplace_back(static_cast<int>(v), u);
    return out;
}

Layer parse_layer(const std::string& s) {
    if (s == "tiles") return Layer::Tiles;
    if (s == "closure") return Layer::Closure;
    if (s == "solution") return Layer::Solution;
    if (s == "terminals") return Layer::Terminals;
    fail(ErrorKind::ParseError, "unknown layer '" + s + "'");
}

const char* layer_name(Layer l) {
    switch (l) {
        case Layer::Tiles: return "tiles";
        case Layer::Closure: return "closure";
        case Layer::Solution: return "solution";
        case Layer::Terminals: return "terminals";
    }
    return "?";
}

Config make_config(double eps_inc, double eps_key, double r_max, long patch_cap, int width_cap) {
    Config cfg = Config::from_env();
    if (eps_inc > 0) cfg.eps_inc = eps_inc;
    if (eps_key > 0) cfg.eps_key = eps_key;
    if (r_max > 0) cfg.r_max = r_max;
    if (patch_cap > 0) cfg.patch_cap = static_cast<std::size_t>(patch_cap);
    if (width_cap > 0) cfg.width_cap = width_cap;
    return cfg;
}

}  // namespace

std::string render_svg(const Tiling& t, const Instance& inst, const RenderOptions& opts) {
    const TerminalSet ts = resolve_terminals(t, inst.walks);
    const bool want_solution = std::find(opts.layers.begin(), opts.layers.end(), Layer::Solution) != opts.layers.end();
    SolveResult res;
    if (want_solution) {
        res = solve(t, inst.walks);
    } else {
        res.closure = build_closure(t, ts);
    }
    const PatchGraph& g = res.closure.graph;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1.02 -1.02 2.04 2.04\" "
           "width=\"800\" height=\"800\">\n"
        << "  <title>{" << t.p() << "," << t.q() << "} " << (opts.model == Model::Klein ? "Klein" : "Poincare")
        << " disk</title>\n"
        << "  <style type=\"text/css\">\n"
        << "    polyline { fill: none; stroke-linecap: round; stroke-linejoin: round; }\n"
        << "    .disk { fill: #fbfbf8; stroke: #222; stroke-width: 0.004; }\n"
        << "    .tiles polyline { stroke: #b8b8b8; stroke-width: 0.002; }\n"
        << "    .closure polyline { stroke: #3060c0; stroke-width: 0.004; }\n"
        << "    .steiner polyline { stroke: #d03020; stroke-width: 0.007; }\n"
        << "    .tour polyline { stroke: #20a040; stroke-width: 0.003; stroke-dasharray: 0.01 0.006; }\n"
        << "    .terminals circle { fill: #000; }\n"
        << "  </style>\n"
        << "  <circle class=\"disk\" cx=\"0\" cy=\"0\" r=\"1\"/>\n";

    for (Layer layer : opts.layers) {
        switch (layer) {
            case Layer::Tiles: {
                std::vector<Frame> seeds;
                for (const PatchVertex& v : g.vertices) seeds.push_back(v.frame);
                const PatchGraph around = neighborhood(t, seeds, opts.tile_hops);
                edges_group(svg, "tiles", around, all_edges(around), opts.model);
                break;
            }
            case Layer::Closure: edges_group(svg, "closure", g, all_edges(g), opts.model); break;
            case Layer::Solution: {
                edges_group(svg, "steiner", g, res.steiner.edges, opts.model);
                std::vector<std::pair<int, int>> tour;
                for (std::size_t i = 0; i + 1 < res.tsp.walk.size(); ++i) tour.emplace_back(res.tsp.walk[i], res.tsp.walk[i + 1]);
                edges_group(svg, "tour", g, tour, opts.model);
                break;
            }
            case Layer::Terminals: {
                svg << "  <g class=\"terminals\">\n";
                for (const Frame& f : ts.frames) {
                    const Xy c = project(f.position(), opts.model);
                    // Shrink markers with the Euclidean scale of the model at that point.
                    const double scale = std::max(1e-4, 1 - (c.x * c.x + c.y * c.y));
                    svg << "    <circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(-c.y) << "\" r=\"" << fmt(0.012 * scale)
                        << "\"/>\n";
                }
                svg << "  </g>\n";
                break;
            }
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Steiner tree and subset TSP on regular hyperbolic tilings", "hypertile"};
    app.require_subcommand(1);
    double eps_inc = 0, eps_key = 0, r_max = 0;
    long patch_cap = 0;
    int width_cap = 0;
    app.add_option("--eps-inc", eps_inc, "incidence tolerance (env HYPERTILE_EPS_INC)");
    app.add_option("--eps-key", eps_key, "vertex key grid (env HYPERTILE_EPS_KEY)");
    app.add_option("--r-max", r_max, "largest hyperbolic radius (env HYPERTILE_RMAX)");
    app.add_option("--patch-cap", patch_cap, "largest patch in vertices (env HYPERTILE_PATCH_CAP)");
    app.add_option("--width-cap", width_cap, "largest decomposition width for the solvers");

    std::string path;
    long i = 0, k = 0;
    bool timings = false;

    auto* check = app.add_subcommand("check", "parse and resolve an instance");
    check->add_option("instance", path)->required();

    auto* dist = app.add_subcommand("dist", "geodesic distance between two terminals");
    dist->add_option("instance", path)->required();
    dist->add_option("i", i)->required();
    dist->add_option("j", k)->required();

    auto* pathcmd = app.add_subcommand("path", "shortest path as steps from terminal i");
    pathcmd->add_option("instance", path)->required();
    pathcmd->add_option("i", i)->required();
    pathcmd->add_option("j", k)->required();

    auto* closure = app.add_subcommand("closure", "build the isometric closure and report its statistics");
    closure->add_option("instance", path)->required();
    closure->add_flag("--timings", timings, "include per-stage wall times");

    auto* solvecmd = app.add_subcommand("solve", "Steiner tree and subset TSP");
    solvecmd->add_option("instance", path)->required();
    bool only_steiner = false, only_tsp = false, both = false;
    auto* fs = solvecmd->add_flag("--steiner", only_steiner, "Steiner tree only");
    auto* ft = solvecmd->add_flag("--tsp", only_tsp, "subset TSP only");
    auto* fb = solvecmd->add_flag("--both", both, "both problems (default)");
    fs->excludes(ft)->excludes(fb);
    ft->excludes(fb);
    solvecmd->add_flag("--timings", timings, "include per-stage wall times");

    int bp = 0, bq = 0, br = 0;
    auto* ballcmd = app.add_subcommand("ball", "all vertices within r steps of the origin, as JSON");
    ballcmd->add_option("p", bp)->required();
    ballcmd->add_option("q", bq)->required();
    ballcmd->add_option("r", br)->required();

    auto* render = app.add_subcommand("render", "SVG figure of an instance");
    render->add_option("instance", path)->required();
    std::string model = "poincare", layers = "tiles,closure,solution,terminals", output;
    render->add_option("--model", model, "poincare or klein")->check(CLI::IsMember({"poincare", "klein"}));
    render->add_option("--layer", layers, "comma-separated subset of tiles,closure,solution,terminals");
    render->add_option("-o,--output", output, "SVG file (stdout when omitted)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : exit_code(ErrorKind::ParseError);
    }

    try {
        const Config cfg = make_config(eps_inc, eps_key, r_max, patch_cap, width_cap);
        Json result;
        if (*ballcmd) {
            result = cmd_ball(cfg, bp, bq, br);
        } else {
            const Instance inst = read_instance(path);
            if (*check) result = cmd_check(cfg, inst);
            else if (*dist) result = cmd_dist(cfg, inst, i, k);
            else if (*pathcmd) result = cmd_path(cfg, inst, i, k);
            else if (*closure) result = cmd_closure(cfg, inst, timings);
            else if (*solvecmd) {
                SolveOptions opts;
                opts.steiner = !only_tsp;
                opts.tsp = !only_steiner;
                result = cmd_solve(cfg, inst, opts, timings);
            } else {
                RenderOptions ro;
                ro.model = model == "klein" ? Model::Klein : Model::Poincare;
                ro.layers.clear();
                std::stringstream ss(layers);
                for (std::string item; std::getline(ss, item, ',');)
                    if (!item.empty()) ro.layers.push_back(parse_layer(item));
                const Tiling t(inst.sym, cfg);
                const std::string svg = render_svg(t, inst, ro);
                if (output.empty()) {
                    out << svg;
                    return 0;
                }
                std::ofstream f(output);
                if (!f || !(f << svg)) fail(ErrorKind::ParseError, "cannot write " + output);
                Json names = Json::array();
                for (Layer l : ro.layers) names.push_back(layer_name(l));
                result = {{"svg", output}, {"model", model}, {"layers", std::move(names)}};
            }
        }
        out << result.dump(2) << '\n';
        return 0;
    } catch (const Error& e) {
        err << "hypertile: " << error_name(e.kind()) << ": " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "hypertile: internal error: " << e.what() << '\n';
        return exit_code(ErrorKind::InvariantViolation);
    }
}

}  // namespace hypertile::cli
