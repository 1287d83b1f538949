#include "hypertile/closure.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <numbers>
#include <unordered_map>

#include "hypertile/errors.h"

namespace hypertile {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t edge_id(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

enum class TileState : char { Unknown, Inside, Outside };

struct TileRec {
    Frame frame;
    TileState state = TileState::Unknown;
};

/// Winding number of the closed polyline through walk (global positions)
/// around the center of the tile with the given frame, measured from the
/// tile center where every walk edge subtends less than pi.
long winding_around(const Tiling& t, const Frame& tile, const std::vector<Vec3q>& walk) {
    const Frame centred(tile.matrix() * boost_to(t.tile_center_q()));
    double total = 0, prev = 0;
    for (std::size_t i = 0; i <= walk.size(); ++i) {
        const Vec3q l = centred.to_local(walk[i % walk.size()]);
        const double a = std::atan2(static_cast<double>(l.y), static_cast<double>(l.x));
        if (i > 0) total += std::remainder(a - prev, 2 * std::numbers::pi);
        prev = a;
    }
    return std::lround(total / (2 * std::numbers::pi));
}

}  // namespace

TerminalSet resolve_terminals(const Tiling& t, const std::vector<Walk>& walks) {
    TerminalSet ts;
    ts.walks = walks;
    VertexIndex index(t.config().eps_key);
    for (const Walk& w : walks) {
        ts.total_steps += w.size();
        const ResolvedVertex rv = resolve_walk(t, w);
        const auto [id, inserted] = index.insert(rv.frame.position());
        if (inserted) {
            ts.keys.push_back(rv.key);
            ts.frames.push_back(rv.frame);
        }
        ts.of_walk.push_back(id);
    }
    return ts;
}

HullPolygon terminal_hull(const Tiling& t, const TerminalSet& terminals) {
    std::vector<Vec3q> pts;
    for (const Frame& f : terminals.frames) pts.push_back(f.position());
    HullPolygon hull;
    for (std::size_t i : hull_indices(pts, t.config().eps_inc)) {
        hull.vertices.push_back(from_hyperboloid_q(pts[i], Model::Klein));
        hull.sources.push_back(i);
    }
    return hull;
}

BoundaryWalk boundary(const Tiling& t, const HullPolygon& hull, const TerminalSet& terminals) {
    BoundaryWalk walk;
    const std::size_t h = hull.sources.size();
    ensure(h > 0, "empty hull");
    auto frame_of = [&](std::size_t i) { return terminals.frames[hull.sources[i % h]]; };
    if (h == 1) {
        walk.keys.push_back(terminals.keys[hull.sources[0]]);
        walk.frames.push_back(frame_of(0));
        walk.segment_start.push_back(0);
        return walk;
    }
    const std::size_t segments = h == 2 ? 1 : h;
    for (std::size_t i = 0; i < segments; ++i) {
        const GeoPath path = shortest_path(t, frame_of(i), frame_of(i + 1));
        walk.segment_start.push_back(walk.keys.empty() ? 0 : walk.keys.size() - 1);
        const std::size_t skip = walk.keys.empty() ? 0 : 1;
        for (std::size_t j = skip; j < path.keys.size(); ++j) {
            walk.keys.push_back(path.keys[j]);
            walk.frames.push_back(path.frames[j]);
        }
    }
    walk.closed = h > 2;
    if (walk.closed) {
        ensure(walk.keys.back() == walk.keys.front(), "boundary walk does not close");
        walk.keys.pop_back();
        walk.frames.pop_back();
    }
    return walk;
}

PatchGraph fill(const Tiling& t, const BoundaryWalk& walk) {
    const int p = t.p(), q = t.q();
    PatchBuilder b(t);
    std::vector<int> ids;
    for (const Frame& f : walk.frames) ids.push_back(b.add_vertex(f).first);
    const std::size_t m = ids.size();
    const std::size_t steps = walk.closed ? m : (m == 0 ? 0 : m - 1);
    std::unordered_map<std::uint64_t, int> net;
    for (std::size_t i = 0; i < steps; ++i) {
        const int a = ids[i], c = ids[(i + 1) % m];
        b.add_edge(a, c);
        net[edge_id(a, c)] += a < c ? 1 : -1;
    }
    if (!walk.closed) return b.finish();

    const std::size_t walk_vertices = b.size();
    auto on_walk = [&](int id) { return id >= 0 && static_cast<std::size_t>(id) < walk_vertices; };
    auto is_wall = [&](int a, int c) {
        if (!on_walk(a) || !on_walk(c)) return false;
        const auto it = net.find(edge_id(a, c));
        return it != net.end() && it->second != 0;
    };

    std::vector<Vec3q> walk_pos;
    for (const Frame& f : walk.frames) walk_pos.push_back(f.position());

    VertexIndex tile_index(t.config().eps_key);
    std::vector<TileRec> tiles;
    auto tile_of = [&](const Frame& f) {
        const auto [id, inserted] = tile_index.insert(f.to_global(t.tile_center_q()));
        if (inserted) tiles.push_back({f, TileState::Unknown});
        return id;
    };
    auto corner_ids = [&](const Frame& f) {
        std::vector<int> out(static_cast<std::size_t>(p));
        for (int j = 0; j < p; ++j) out[static_cast<std::size_t>(j)] = b.find(f.to_global(t.tile_vertex_q(j)));
        return out;
    };

    std::vector<int> seeds;
    for (const auto& [eid, count] : net) {
        if (count == 0) continue;
        const int a = static_cast<int>(eid >> 32), c = static_cast<int>(eid & 0xffffffffu);
        const Frame& fa = b.frame(a);
        const int s = t.slot_of(fa, b.position(c));
        seeds.push_back(tile_of(t.compose(fa, t.slot_rotation(s))));
        seeds.push_back(tile_of(t.compose(fa, t.slot_rotation((s + q - 1) % q))));
    }
    std::sort(seeds.begin(), seeds.end());

    std::size_t inside_count = 0;
    for (int seed : seeds) {
        if (tiles[static_cast<std::size_t>(seed)].state != TileState::Unknown) continue;
        const bool inside = winding_around(t, tiles[static_cast<std::size_t>(seed)].frame, walk_pos) != 0;
        const TileState mark = inside ? TileState::Inside : TileState::Outside;
        tiles[static_cast<std::size_t>(seed)].state = mark;
        std::deque<int> queue{seed};
        while (!queue.empty()) {
            const int cur = queue.front();
            queue.pop_front();
            if (inside && ++inside_count > t.config().patch_cap)
                fail(ErrorKind::CapExceeded, "closure interior exceeds the patch cap");
            const Frame f = tiles[static_cast<std::size_t>(cur)].frame;
            const std::vector<int> corners = corner_ids(f);
            for (int j = 0; j < p; ++j) {
                if (is_wall(corners[static_cast<std::size_t>(j)], corners[static_cast<std::size_t>((j + 1) % p)])) continue;
                const Frame nf = t.compose(f, t.crossing(j));
                if (!inside) {
                    // Outside regions are unbounded; only follow them along the walk.
                    bool touches = false;
                    for (int k = 0; k < p && !touches; ++k) touches = on_walk(b.find(nf.to_global(t.tile_vertex_q(k))));
                    if (!touches) continue;
                }
                const int nid = tile_of(nf);
                TileRec& rec = tiles[static_cast<std::size_t>(nid)];
                if (rec.state == TileState::Unknown) {
                    rec.state = mark;
                    queue.push_back(nid);
                } else if (rec.state != mark) {
                    fail(ErrorKind::InvariantViolation, "tile regions disagree across a non-wall edge");
                }
            }
        }
    }

    for (const TileRec& rec : tiles) {
        if (rec.state != TileState::Inside) continue;
        int first = -1, prev = -1;
        for (int j = 0; j < p; ++j) {
            const int id = b.add_vertex(t.compose(rec.frame, t.tile_vertex_frame(j))).first;
            if (j == 0) first = id;
            else b.add_edge(prev, id);
            prev = id;
        }
        b.add_edge(prev, first);
    }
    return b.finish();
}

ClosureResult build_closure(const Tiling& t, const TerminalSet& terminals) {
    ensure(terminals.n() >= 1, "closure needs at least one terminal");
    ClosureResult res;
    auto t0 = Clock::now();
    res.hull = terminal_hull(t, terminals);
    res.stats.ms_hull = ms_since(t0);
    t0 = Clock::now();
    res.walk = boundary(t, res.hull, terminals);
    res.stats.ms_boundary = ms_since(t0);
    t0 = Clock::now();
    res.graph = fill(t, res.walk);
    res.stats.ms_fill = ms_since(t0);

    for (std::size_t i = 0; i < terminals.keys.size(); ++i) {
        int id = res.graph.find(terminals.keys[i]);
        if (id < 0) {
            // The key grid may round a terminal into a neighbouring cell; fall back to geometry.
            for (std::size_t v = 0; v < res.graph.vertex_count() && id < 0; ++v)
                if (hyperbolic_distance(res.graph.vertices[v].frame.position(), terminals.frames[i].position()) <
                    t.geometry().edge_len / 2)
                    id = static_cast<int>(v);
        }
        if (id < 0) fail(ErrorKind::InvariantViolation, "terminal " + to_string(terminals.keys[i]) + " missing from closure");
        res.graph.vertices[static_cast<std::size_t>(id)].terminal = true;
        res.terminal_ids.push_back(id);
    }
    for (const Face& f : faces(res.graph))
        if (f.unbounded)
            for (int v : f.cycle) res.graph.vertices[static_cast<std::size_t>(v)].boundary = true;
    return res;
}

PatchGraph isometric_closure(const Tiling& t, const TerminalSet& terminals) {
    return build_closure(t, terminals).graph;
}

}  // namespace hypertile
