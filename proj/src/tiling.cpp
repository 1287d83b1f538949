#include "hypertile/tiling.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <numbers>

#include "hypertile/errors.h"

namespace hypertile {

namespace {

Mat3q rot_q(quad angle) { return rotation_matrix<quad>(qcos(angle), qsin(angle)); }

std::int64_t round_q(quad v) { return static_cast<std::int64_t>(floorq(v + quad(0.5))); }

}  // namespace

std::string to_string(const VertexKey& k) { return std::to_string(k.x) + ":" + std::to_string(k.y); }

// Coarse enough to absorb drift, far finer than the vertex spacing inside kSnapRadius.
constexpr double kSnapGrid = 1e-6;

struct Tiling::SnapTable {
    std::once_flag built;
    VertexIndex index{kSnapGrid};
    std::vector<Mat3q> frames;
};

namespace {

std::shared_ptr<Tiling::SnapTable> snap_table_for(const SchlafliSymbol& sym) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<Tiling::SnapTable>> tables;
    const std::lock_guard<std::mutex> lock(mu);
    auto& slot = tables[{sym.p, sym.q}];
    if (!slot) slot = std::make_shared<Tiling::SnapTable>();
    return slot;
}

}  // namespace

Tiling::Tiling(SchlafliSymbol sym, Config cfg)
    : sym_(validate_symbol(sym.p, sym.q)), snap_(snap_table_for(sym_)), snap_max_z_(coshq(quad(kSnapRadius))), cfg_(cfg) {
    geo_ = tile_geometry(sym_);
    const int p = sym_.p, q = sym_.q;
    const quad theta = 2 * kPiQ / q;
    const quad cosh_a = qcos(kPiQ / p) / qsin(kPiQ / q);
    cosh_edge_ = 2 * cosh_a * cosh_a - 1;
    const quad sinh_edge = qsqrt(cosh_edge_ * cosh_edge_ - 1);
    const Mat3q go = boost_x<quad>(cosh_edge_, sinh_edge);
    const Mat3q turn = rot_q(kPiQ);

    for (int s = 0; s < q; ++s) {
        rot_.push_back(rot_q(-theta * s));
        rot_inv_.push_back(lorentz_inverse(rot_.back()));
        step_.push_back(rot_.back() * go * turn);
        step_inv_.push_back(lorentz_inverse(step_.back()));
        nbr_pos_.push_back(to_double(step_.back().column(2)));
    }

    Mat3q l = Mat3q::identity();
    Vec3q center{0, 0, 0};
    for (int j = 0; j < p; ++j) {
        tile_l_.push_back(l);
        tile_l_inv_.push_back(lorentz_inverse(l));
        tile_pos_q_.push_back(l.column(2));
        tile_pos_.push_back(to_double(l.column(2)));
        center = center + l.column(2);
        l = l * step_[1];
    }
    tile_center_q_ = center / qsqrt(-minkowski_dot(center, center));
    for (int j = 0; j < p; ++j) {
        cross_.push_back(tile_l_[static_cast<std::size_t>((j + 1) % p)] * rot_[static_cast<std::size_t>(q - 1)]);
        cross_inv_.push_back(lorentz_inverse(cross_.back()));
    }
}

Frame Tiling::step(const Frame& f, int k) const {
    if (k < 1 || k > sym_.q)
        fail(ErrorKind::StepOutOfRange, "step " + std::to_string(k) + " outside 1.." + std::to_string(sym_.q));
    return compose(f, step_matrix(k));
}

Frame Tiling::snap(const Frame& f) const {
    if (f.matrix()(2, 2) > snap_max_z_) return f;
    SnapTable& table = *snap_;
    std::call_once(table.built, [&] {
        const quad limit = coshq(quad(kSnapRadius) + quad(geo_.edge_len));
        std::deque<Mat3q> queue{Mat3q::identity()};
        table.index.insert(queue.front().column(2));
        table.frames.push_back(queue.front());
        while (!queue.empty()) {
            const Mat3q m = queue.front();
            queue.pop_front();
            for (int k = 1; k <= sym_.q; ++k) {
                const Mat3q n = m * step_matrix(k);
                if (n(2, 2) > limit) continue;
                if (!table.index.insert(n.column(2)).second) continue;
                table.frames.push_back(n);
                queue.push_back(n);
            }
        }
    });
    const int id = table.index.find(f.position());
    if (id < 0) return f;
    // f differs from the stored frame by a rotation about the vertex; it must be a whole slot.
    const Mat3q& ref = table.frames[static_cast<std::size_t>(id)];
    const Vec3q axis = lorentz_solve(ref, f.matrix().column(0));
    const quad turns = -atan2q(axis.y, axis.x) / (2 * kPiQ / sym_.q);
    const quad s = floorq(turns + quad(0.5));
    if (qfabs(turns - s) > quad(1e-6)) return f;
    const int slot = static_cast<int>(((static_cast<long>(s) % sym_.q) + sym_.q) % sym_.q);
    return Frame(ref * rot_[static_cast<std::size_t>(slot)]);
}

std::vector<Frame> Tiling::neighbors(const Frame& f) const {
    std::vector<Frame> out;
    out.reserve(static_cast<std::size_t>(sym_.q));
    for (int k = 1; k <= sym_.q; ++k) {
        out.push_back(step(f, k));
        check_radius(out.back().position());
    }
    return out;
}

int Tiling::slot_of(const Frame& f, const Vec3q& pos) const {
    const Vec3d local = to_double(f.to_local(pos));
    const double theta = 2 * std::numbers::pi / sym_.q;
    const long s = std::lround(-std::atan2(local.y, local.x) / theta);
    return static_cast<int>(((s % sym_.q) + sym_.q) % sym_.q);
}

VertexKey Tiling::key_of(const Vec3q& pos) const {
    const quad d = 1 + pos.z;
    return {round_q(pos.x / d / cfg_.eps_key), round_q(pos.y / d / cfg_.eps_key)};
}

double Tiling::radius_of(const Vec3q& pos) const { return pos.z <= 1 ? 0.0 : static_cast<double>(qacosh(pos.z)); }

void Tiling::check_radius(const Vec3q& pos) const {
    if (radius_of(pos) > cfg_.r_max)
        fail(ErrorKind::RadiusExceeded, "vertex at hyperbolic distance " + std::to_string(radius_of(pos)) +
                                            " exceeds r_max = " + std::to_string(cfg_.r_max));
}

Frame step(const Tiling& t, const Frame& f, int k) { return t.step(f, k); }

ResolvedVertex resolve_walk(const Tiling& t, const Walk& w) {
    Frame f;
    for (int k : w) {
        f = t.step(f, k);
        t.check_radius(f.position());
    }
    return {t.key_of(f.position()), f};
}

std::vector<Frame> neighbors(const Tiling& t, const Frame& f) { return t.neighbors(f); }

VertexKey VertexIndex::cell(quad x, quad y) const { return {round_q(x / eps_), round_q(y / eps_)}; }

int VertexIndex::find(const Vec3q& pos) const {
    const quad d = 1 + pos.z;
    const quad x = pos.x / d, y = pos.y / d;
    const VertexKey c = cell(x, y);
    const quad half = eps_ / 2;
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
        for (std::int64_t dy = -1; dy <= 1; ++dy) {
            const auto it = cells_.find({c.x + dx, c.y + dy});
            if (it == cells_.end()) continue;
            for (int id : it->second) {
                const auto& [sx, sy] = coords_[static_cast<std::size_t>(id)];
                if (qfabs(sx - x) <= half && qfabs(sy - y) <= half) return id;
            }
        }
    }
    return -1;
}

std::pair<int, bool> VertexIndex::insert(const Vec3q& pos) {
    const int found = find(pos);
    if (found >= 0) return {found, false};
    const quad d = 1 + pos.z;
    const quad x = pos.x / d, y = pos.y / d;
    const VertexKey c = cell(x, y);
    const int id = static_cast<int>(keys_.size());
    keys_.push_back(c);
    coords_.emplace_back(x, y);
    cells_[c].push_back(id);
    return {id, true};
}

std::size_t PatchGraph::edge_count() const {
    std::size_t s = 0;
    for (const auto& a : adj) s += a.size();
    return s / 2;
}

int PatchGraph::find(const VertexKey& k) const {
    const auto it = index.find(k);
    return it == index.end() ? -1 : it->second;
}

bool PatchGraph::has_edge(int a, int b) const {
    const auto& n = adj[static_cast<std::size_t>(a)];
    return std::find(n.begin(), n.end(), b) != n.end();
}

void PatchGraph::rebuild_index() {
    index.clear();
    for (std::size_t i = 0; i < vertices.size(); ++i) index.emplace(vertices[i].key, static_cast<int>(i));
}

PatchBuilder::PatchBuilder(const Tiling& t) : t_(t), index_(t.config().eps_key) {}

std::pair<int, bool> PatchBuilder::add_vertex(const Frame& f) {
    const auto res = index_.insert(f.position());
    if (res.second) {
        if (frames_.size() >= t_.config().patch_cap)
            fail(ErrorKind::CapExceeded, "patch exceeds " + std::to_string(t_.config().patch_cap) + " vertices");
        frames_.push_back(f);
        adj_.emplace_back();
    }
    return res;
}

void PatchBuilder::add_edge(int a, int b) {
    if (a == b) return;
    auto& na = adj_[static_cast<std::size_t>(a)];
    if (std::find(na.begin(), na.end(), b) != na.end()) return;
    na.push_back(b);
    adj_[static_cast<std::size_t>(b)].push_back(a);
}

PatchGraph PatchBuilder::finish(std::vector<int> depth) {
    PatchGraph g;
    g.sym = t_.symbol();
    const std::size_t n = frames_.size();
    g.vertices.resize(n);
    g.adj.resize(n);
    g.slot.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        PatchVertex& pv = g.vertices[v];
        pv.key = index_.key(static_cast<int>(v));
        pv.frame = frames_[v];
        if (v < depth.size()) pv.depth = depth[v];
        std::vector<std::pair<int, int>> order;
        for (int u : adj_[v]) order.emplace_back(t_.slot_of(frames_[v], frames_[static_cast<std::size_t>(u)].position()), u);
        std::sort(order.begin(), order.end());
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i > 0 && order[i].first == order[i - 1].first)
                fail(ErrorKind::InvariantViolation, "two edges share a slot at vertex " + to_string(pv.key));
            g.slot[v].push_back(order[i].first);
            g.adj[v].push_back(order[i].second);
        }
    }
    g.rebuild_index();
    return g;
}

PatchGraph neighborhood(const Tiling& t, const std::vector<Frame>& seeds, int hops) {
    PatchBuilder b(t);
    std::vector<int> depth;
    std::deque<int> queue;
    for (const Frame& f : seeds) {
        const auto [id, inserted] = b.add_vertex(f);
        if (!inserted) continue;
        depth.push_back(0);
        queue.push_back(id);
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        const int d = depth[static_cast<std::size_t>(v)];
        for (int k = 1; k <= t.q(); ++k) {
            const Frame nf = t.step(b.frame(v), k);
            if (d == hops) {
                const int u = b.find(nf.position());
                if (u >= 0) b.add_edge(v, u);
                continue;
            }
            t.check_radius(nf.position());
            const auto [u, inserted] = b.add_vertex(nf);
            if (inserted) {
                depth.push_back(d + 1);
                queue.push_back(u);
            }
            b.add_edge(v, u);
        }
    }
    PatchGraph g = b.finish(depth);
    for (auto& pv : g.vertices) pv.boundary = pv.depth == hops;
    return g;
}

PatchGraph ball(const Tiling& t, int radius) { return neighborhood(t, {Frame{}}, radius); }

std::vector<Face> faces(const PatchGraph& g) { return faces(g, std::vector<char>(g.vertices.size(), 1)); }

std::vector<Face> faces(const PatchGraph& g, const std::vector<char>& alive) {
    const int q = g.sym.q;
    const std::size_t n = g.vertices.size();
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) offset[v + 1] = offset[v] + g.adj[v].size();
    std::vector<char> used(offset[n], 0);

    auto position_of = [&](int v, int u) {
        const auto& a = g.adj[static_cast<std::size_t>(v)];
        return static_cast<int>(std::find(a.begin(), a.end(), u) - a.begin());
    };

    std::vector<Face> out;
    for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        bool any = false;
        for (int u : g.adj[v]) any = any || alive[static_cast<std::size_t>(u)];
        if (!any) out.push_back({{static_cast<int>(v)}, true});
    }
    for (std::size_t v0 = 0; v0 < n; ++v0) {
        if (!alive[v0]) continue;
        for (std::size_t i0 = 0; i0 < g.adj[v0].size(); ++i0) {
            if (used[offset[v0] + i0] || !alive[static_cast<std::size_t>(g.adj[v0][i0])]) continue;
            Face f;
            long turning = 0;
            int u = static_cast<int>(v0);
            int iu = static_cast<int>(i0);
            while (!used[offset[static_cast<std::size_t>(u)] + static_cast<std::size_t>(iu)]) {
                used[offset[static_cast<std::size_t>(u)] + static_cast<std::size_t>(iu)] = 1;
                f.cycle.push_back(u);
                const int v = g.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(iu)];
                const auto& av = g.adj[static_cast<std::size_t>(v)];
                const int back = position_of(v, u);
                int next = back;
                do {
                    next = (next + 1) % static_cast<int>(av.size());
                } while (!alive[static_cast<std::size_t>(av[static_cast<std::size_t>(next)])]);
                const auto& sv = g.slot[static_cast<std::size_t>(v)];
                int d = ((sv[static_cast<std::size_t>(next)] - sv[static_cast<std::size_t>(back)]) % q + q) % q;
                if (d == 0) d = q;
                turning += q - 2 * d;
                u = v;
                iu = next;
            }
            f.unbounded = turning < 0;
            out.push_back(std::move(f));
        }
    }
    return out;
}

}  // namespace hypertile
