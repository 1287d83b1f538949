#include "hypertile/geodesics.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "hypertile/errors.h"

namespace hypertile {

namespace {

inline double mdot(const Vec3d& a, const Vec3d& b) { return a.x * b.x + a.y * b.y - a.z * b.z; }

inline int sign_of(double v) { return v > 0 ? 1 : -1; }

/// One step of the march: the segment leaves the element described by
/// `from` and reaches the element described by `to`, both given as vertex
/// indices of a tile they share.
struct Transition {
    int from_n = 1;
    int from[2] = {0, 0};
    int to_n = 1;
    int to[2] = {0, 0};
    ElementKind kind = ElementKind::Vertex;
    Frame tile;
    double t = 0;
};

/// Walks the segment u -> v tile by tile. All state is kept in the local
/// coordinates of the current vertex or tile frame: the position of v and
/// the unit normal of the segment's line (plus u when parameters are wanted).
class Marcher {
public:
    Marcher(const Tiling& t, const Frame& u, const Frame& v, bool record, bool params)
        : t_(t), record_(record), params_(params), cur_(u) {
        const Vec3q up = u.position(), vp = v.position();
        const Vec3q c = cross(up, vp);
        const quad nn = c.x * c.x + c.y * c.y - c.z * c.z;
        vl_ = u.to_local(vp);
        if (nn > 0) n_ = u.to_local(Vec3q{c.x, c.y, -c.z} / qsqrt(nn));
        if (params_) {
            ul_ = Vec3q{0, 0, 1};
            length_ = static_cast<double>(hyperbolic_distance(up, vp));
        }
        same_threshold_ = (1 + t.cosh_edge()) / 2;
    }

    template <class Sink>
    void run(Sink&& sink) {
        const int p = t_.p(), q = t_.q();
        const double theta = 2 * std::numbers::pi / q;
        const double eps = t_.config().eps_inc;
        bool at_vertex = true;
        int carried0 = 0, carried1 = 0;
        for (long guard = 0;; ++guard) {
            if (guard > 10000000) fail(ErrorKind::InvariantViolation, "segment march does not terminate");
            if (at_vertex) {
                if (vl_.z < same_threshold_) return;
                const Vec3d vd = to_double(vl_);
                double psi = -std::atan2(vd.y, vd.x);
                if (psi < 0) psi += 2 * std::numbers::pi;
                const double sr = psi / theta;
                const int s = static_cast<int>(std::lround(sr)) % q;
                const Vec3d nd = to_double(n_);
                if (std::fabs(mdot(nd, t_.neighbor_local(s))) < eps) {
                    // Along the edge in slot s; its tile is the one whose vertices 0 and 1 are here and there.
                    Transition tr;
                    tr.to[0] = 1;
                    if (record_) tr.tile = t_.compose(cur_, t_.slot_rotation((s + q - 1) % q));
                    if (params_) tr.t = param(t_.neighbor_local(s));
                    sink(tr);
                    apply(t_.step_matrix(s + 1), t_.step_inverse(s + 1));
                    continue;
                }
                const int k0 = static_cast<int>(std::floor(sr)) % q;
                apply(t_.slot_rotation(k0), t_.slot_rotation_inverse(k0));
                at_vertex = false;
                carried0 = 0;
                continue;
            }

            // Inside a tile; entry is vertex 0 (carried0 == 0) or the edge (0,1).
            const Vec3d nd = to_double(n_);
            double side[kMaxPolygon];
            bool known[kMaxPolygon] = {};
            auto side_of = [&](int j) {
                if (!known[j]) {
                    side[j] = mdot(nd, t_.tile_vertex(j));
                    known[j] = true;
                }
                return side[j];
            };
            Transition tr;
            int f = 1, b = 0, sf = 0, sb = 0;
            int exit_vertex = -1, exit_edge = -1;
            if (carried0 == 0) {
                tr.from_n = 1;
                tr.from[0] = 0;
                const double s1 = side_of(1), sp = side_of(p - 1);
                if (std::fabs(s1) < eps) exit_vertex = 1;
                else if (std::fabs(sp) < eps) exit_vertex = p - 1;
                f = 1;
                b = p - 1;
                sf = sign_of(s1);
                sb = sign_of(sp);
                if (exit_vertex < 0 && sf == sb)
                    fail(ErrorKind::InvariantViolation, "segment does not enter the chosen tile");
            } else {
                tr.from_n = 2;
                tr.from[0] = 1;
                tr.from[1] = 0;
                f = 1;
                b = 0;
                sf = carried1;
                sb = carried0;
            }
            for (int steps = 0; exit_vertex < 0 && exit_edge < 0; ++steps) {
                if (steps > p) fail(ErrorKind::InvariantViolation, "no exit found from tile");
                const int nf = (f + 1) % p;
                const double vf = side_of(nf);
                if (std::fabs(vf) < eps) {
                    exit_vertex = nf;
                    break;
                }
                if (sign_of(vf) != sf) {
                    exit_edge = f;
                    break;
                }
                f = nf;
                const int nb = (b + p - 1) % p;
                const double vb = side_of(nb);
                if (std::fabs(vb) < eps) {
                    exit_vertex = nb;
                    break;
                }
                if (sign_of(vb) != sb) {
                    exit_edge = nb;
                    break;
                }
                b = nb;
            }
            if (record_) tr.tile = cur_;
            if (exit_vertex >= 0) {
                tr.to_n = 1;
                tr.to[0] = exit_vertex;
                tr.kind = ElementKind::Vertex;
                if (params_) tr.t = param(t_.tile_vertex(exit_vertex));
                sink(tr);
                apply(t_.tile_vertex_frame(exit_vertex), t_.tile_vertex_frame_inverse(exit_vertex));
                at_vertex = true;
            } else {
                const int j = exit_edge, j1 = (exit_edge + 1) % p;
                tr.to_n = 2;
                tr.to[0] = j;
                tr.to[1] = j1;
                tr.kind = ElementKind::Edge;
                const double sj = side_of(j), sj1 = side_of(j1);
                if (params_) {
                    const double lam = sj / (sj - sj1);
                    Vec3d x = t_.tile_vertex(j) * (1 - lam) + t_.tile_vertex(j1) * lam;
                    x = x / std::sqrt(-mdot(x, x));
                    tr.t = param(x);
                }
                sink(tr);
                carried0 = sign_of(sj1);
                carried1 = sign_of(sj);
                apply(t_.crossing(j), t_.crossing_inverse(j));
            }
        }
    }

private:
    void apply(const Mat3q& a, const Mat3q& a_inv) {
        vl_ = a_inv * vl_;
        n_ = a_inv * n_;
        if (params_) ul_ = a_inv * ul_;
        if (record_) cur_ = t_.compose(cur_, a);
    }

    double param(const Vec3d& x) const {
        if (!(length_ > 0)) return 0;
        const double c = -mdot(to_double(ul_), x);
        return std::clamp((c <= 1 ? 0.0 : std::acosh(c)) / length_, 0.0, 1.0);
    }

    const Tiling& t_;
    bool record_;
    bool params_;
    Frame cur_;
    Vec3q vl_, n_{1, 0, 0}, ul_;
    quad same_threshold_;
    double length_ = 0;
};

struct DpResult {
    int cost = 0;
    std::vector<Transition> transitions;
    std::vector<std::array<int, 2>> back;  // back[e][y]: endpoint of element e-1 feeding endpoint y of e
};

DpResult run_dp(const Tiling& t, const Frame& u, const Frame& v, bool record) {
    DpResult res;
    const int p = t.p();
    int cur_n = 1;
    long g[2] = {0, 0};
    if (record) res.back.push_back({0, 0});
    Marcher m(t, u, v, record, false);
    m.run([&](const Transition& tr) {
        ensure(tr.from_n == cur_n, "element endpoint mismatch in segment march");
        long ng[2] = {0, 0};
        std::array<int, 2> bk{0, 0};
        for (int y = 0; y < tr.to_n; ++y) {
            long best = std::numeric_limits<long>::max();
            for (int x = 0; x < tr.from_n; ++x) {
                const int sep = ((tr.to[y] - tr.from[x]) % p + p) % p;
                const long c = g[x] + within_tile_distance(t.symbol(), sep);
                if (c < best) {
                    best = c;
                    bk[static_cast<std::size_t>(y)] = x;
                }
            }
            ng[y] = best;
        }
        g[0] = ng[0];
        g[1] = ng[1];
        cur_n = tr.to_n;
        if (record) {
            res.transitions.push_back(tr);
            res.back.push_back(bk);
        }
    });
    ensure(cur_n == 1, "segment march ended inside an edge");
    res.cost = static_cast<int>(g[0]);
    return res;
}

}  // namespace

int within_tile_distance(const SchlafliSymbol& sym, int sep) {
    const int s = ((sep % sym.p) + sym.p) % sym.p;
    return std::min(s, sym.p - s);
}

std::vector<IntersectionElement> intersection_sequence(const Tiling& t, const Frame& u, const Frame& v) {
    t.check_radius(u.position());
    t.check_radius(v.position());
    if (hyperbolic_distance(u.position(), v.position()) < t.geometry().edge_len / 2)
        fail(ErrorKind::DegenerateSegment, "segment endpoints coincide");
    std::vector<IntersectionElement> out;
    const VertexKey ku = t.key_of(u.position());
    out.push_back({ElementKind::Vertex, ku, ku, 0.0});
    Marcher m(t, u, v, true, true);
    m.run([&](const Transition& tr) {
        IntersectionElement e;
        e.kind = tr.kind;
        e.t = tr.t;
        e.a = t.key_of(tr.tile.to_global(t.tile_vertex_q(tr.to[0])));
        e.b = tr.to_n == 2 ? t.key_of(tr.tile.to_global(t.tile_vertex_q(tr.to[1]))) : e.a;
        out.push_back(e);
    });
    out.back().t = 1.0;
    return out;
}

GeoPath shortest_path(const Tiling& t, const Frame& u, const Frame& v) {
    t.check_radius(u.position());
    t.check_radius(v.position());
    GeoPath path;
    path.keys.push_back(t.key_of(u.position()));
    path.frames.push_back(u);
    const DpResult dp = run_dp(t, u, v, true);
    const std::size_t m = dp.transitions.size();
    std::vector<int> choice(m + 1, 0);
    for (std::size_t e = m; e > 0; --e) choice[e - 1] = dp.back[e][static_cast<std::size_t>(choice[e])];
    const int p = t.p();
    for (std::size_t i = 0; i < m; ++i) {
        const Transition& tr = dp.transitions[i];
        const int a = tr.from[choice[i]];
        const int b = tr.to[choice[i + 1]];
        const int fwd = ((b - a) % p + p) % p;
        const int dir = fwd <= p - fwd ? 1 : -1;
        const int len = dir == 1 ? fwd : p - fwd;
        int j = a;
        for (int s = 0; s < len; ++s) {
            j = ((j + dir) % p + p) % p;
            const Frame f = t.compose(tr.tile, t.tile_vertex_frame(j));
            path.keys.push_back(t.key_of(f.position()));
            path.frames.push_back(f);
        }
    }
    ensure(path.length() == dp.cost, "reconstructed path length differs from its cost");
    ensure(hyperbolic_distance(path.frames.back().position(), v.position()) < t.geometry().edge_len / 2,
           "reconstructed path misses its endpoint");
    // Both ends carry the caller's frames so keys agree with theirs even on a cell boundary.
    path.keys.back() = t.key_of(v.position());
    path.frames.back() = v;
    return path;
}

int distance(const Tiling& t, const Frame& u, const Frame& v) {
    t.check_radius(u.position());
    t.check_radius(v.position());
    return run_dp(t, u, v, false).cost;
}

GeoPath geodesic_extension(const Tiling& t, const GeoPath& path) {
    ensure(!path.frames.empty(), "cannot extend an empty path");
    GeoPath out = path;
    const Frame& x = path.frames.back();
    if (path.length() == 0) {
        const Frame c = t.step(x, 1);
        t.check_radius(c.position());
        out.keys.push_back(t.key_of(c.position()));
        out.frames.push_back(c);
        return out;
    }
    const Frame& s = path.frames.front();
    const Vec3d back = to_double(x.to_local(s.position()));
    const double ray = std::atan2(back.y, back.x) + std::numbers::pi;
    const double theta = 2 * std::numbers::pi / t.q();
    std::vector<std::pair<double, int>> order;
    for (int k = 0; k < t.q(); ++k) {
        double d = std::remainder(-k * theta - ray, 2 * std::numbers::pi);
        order.emplace_back(std::fabs(d), k);
    }
    std::sort(order.begin(), order.end());
    for (const auto& [gap, k] : order) {
        const Frame c = t.step(x, k + 1);
        if (t.radius_of(c.position()) > t.config().r_max) continue;
        if (distance(t, s, c) == path.length() + 1) {
            out.keys.push_back(t.key_of(c.position()));
            out.frames.push_back(c);
            return out;
        }
    }
    fail(ErrorKind::NoExtension, "no shortest extension within r_max");
}

}  // namespace hypertile
