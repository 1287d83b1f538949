#include "hypertile/oracle.h"

#include <algorithm>
#include <deque>
#include <limits>

#include "hypertile/errors.h"

namespace hypertile {

std::vector<int> bfs_all(const PatchGraph& g, int src) {
    std::vector<int> d(g.vertex_count(), -1);
    std::deque<int> queue{src};
    d[static_cast<std::size_t>(src)] = 0;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int u : g.adj[static_cast<std::size_t>(v)]) {
            if (d[static_cast<std::size_t>(u)] < 0) {
                d[static_cast<std::size_t>(u)] = d[static_cast<std::size_t>(v)] + 1;
                queue.push_back(u);
            }
        }
    }
    return d;
}

int bfs_distance(const PatchGraph& g, int u, int v) {
    const int d = bfs_all(g, u)[static_cast<std::size_t>(v)];
    if (d < 0) fail(ErrorKind::Disconnected, "vertices are not connected in the patch");
    return d;
}

Interval interval_from(const PatchGraph& g, const std::vector<int>& du, int v) {
    Interval iv;
    if (du[static_cast<std::size_t>(v)] < 0) fail(ErrorKind::Disconnected, "vertices are not connected in the patch");
    std::vector<int> stack{v};
    std::vector<int> seen{v};
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        iv.vertices.push_back(x);
        for (int y : g.adj[static_cast<std::size_t>(x)]) {
            if (du[static_cast<std::size_t>(y)] != du[static_cast<std::size_t>(x)] - 1) continue;
            iv.edges.emplace_back(y, x);
            if (std::find(seen.begin(), seen.end(), y) == seen.end()) {
                seen.push_back(y);
                stack.push_back(y);
            }
        }
    }
    std::sort(iv.vertices.begin(), iv.vertices.end());
    std::sort(iv.edges.begin(), iv.edges.end());
    return iv;
}

Interval interval(const PatchGraph& g, int u, int v) { return interval_from(g, bfs_all(g, u), v); }

std::vector<int> graph_convex_hull(const PatchGraph& g, const std::vector<int>& K) {
    const std::size_t n = g.vertex_count();
    std::vector<char> in(n, 0);
    std::vector<int> hull;
    for (int k : K) {
        if (!in[static_cast<std::size_t>(k)]) {
            in[static_cast<std::size_t>(k)] = 1;
            hull.push_back(k);
        }
    }
    std::vector<int> d(n), order;
    std::vector<char> reach(n);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t si = 0; si < hull.size(); ++si) {
            // BFS order is nondecreasing in distance; scanning it backwards
            // marks every vertex that lies on a shortest path to some hull vertex.
            std::fill(d.begin(), d.end(), -1);
            order.assign(1, hull[si]);
            d[static_cast<std::size_t>(hull[si])] = 0;
            for (std::size_t head = 0; head < order.size(); ++head) {
                const int v = order[head];
                for (int u : g.adj[static_cast<std::size_t>(v)]) {
                    if (d[static_cast<std::size_t>(u)] >= 0) continue;
                    d[static_cast<std::size_t>(u)] = d[static_cast<std::size_t>(v)] + 1;
                    order.push_back(u);
                }
            }
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                const std::size_t xs = static_cast<std::size_t>(*it);
                bool r = in[xs] != 0;
                for (int y : g.adj[xs])
                    if (!r && d[static_cast<std::size_t>(y)] == d[xs] + 1 && reach[static_cast<std::size_t>(y)]) r = true;
                reach[xs] = r;
                if (r && !in[xs]) {
                    in[xs] = 1;
                    hull.push_back(*it);
                    changed = true;
                }
            }
        }
    }
    for (int h : hull)
        if (g.vertices[static_cast<std::size_t>(h)].boundary)
            fail(ErrorKind::HullTouchesBoundary, "graph convex hull reaches the patch boundary");
    std::sort(hull.begin(), hull.end());
    return hull;
}

PatchGraph induced_subgraph(const PatchGraph& g, const std::vector<int>& keep) {
    PatchGraph h;
    h.sym = g.sym;
    std::vector<int> map(g.vertex_count(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) map[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
    h.vertices.reserve(keep.size());
    h.adj.resize(keep.size());
    h.slot.resize(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        const std::size_t v = static_cast<std::size_t>(keep[i]);
        h.vertices.push_back(g.vertices[v]);
        for (std::size_t j = 0; j < g.adj[v].size(); ++j) {
            const int u = map[static_cast<std::size_t>(g.adj[v][j])];
            if (u < 0) continue;
            h.adj[i].push_back(u);
            h.slot[i].push_back(g.slot[v][j]);
        }
    }
    h.rebuild_index();
    return h;
}

PatchGraph minimize_closure(const PatchGraph& g, const PatchGraph& closure, const std::vector<int>& closure_terminals) {
    const std::size_t n = closure.vertex_count();
    std::vector<int> in_g(n);
    for (std::size_t v = 0; v < n; ++v) {
        in_g[v] = g.find(closure.vertices[v].key);
        ensure(in_g[v] >= 0, "closure vertex missing from the reference patch");
    }
    std::vector<std::vector<int>> ref(n);
    for (std::size_t v = 0; v < n; ++v) {
        const std::vector<int> d = bfs_all(g, in_g[v]);
        for (std::size_t u = 0; u < n; ++u) ref[v].push_back(d[static_cast<std::size_t>(in_g[u])]);
    }

    std::vector<char> terminal(n, 0);
    for (int k : closure_terminals) terminal[static_cast<std::size_t>(k)] = 1;
    std::size_t center = 0;
    long best = std::numeric_limits<long>::max();
    for (std::size_t v = 0; v < n; ++v) {
        long s = 0;
        for (int k : closure_terminals) s += ref[v][static_cast<std::size_t>(k)];
        if (s < best || (s == best && closure.vertices[v].key < closure.vertices[center].key)) {
            best = s;
            center = v;
        }
    }
    std::vector<int> order;
    for (std::size_t v = 0; v < n; ++v)
        if (!terminal[v]) order.push_back(static_cast<int>(v));
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const int da = ref[center][static_cast<std::size_t>(a)], db = ref[center][static_cast<std::size_t>(b)];
        if (da != db) return da > db;
        return closure.vertices[static_cast<std::size_t>(a)].key < closure.vertices[static_cast<std::size_t>(b)].key;
    });

    std::vector<char> alive(n, 1);
    auto isometric_without = [&](int x) {
        alive[static_cast<std::size_t>(x)] = 0;
        bool ok = true;
        std::vector<int> d(n);
        for (std::size_t s = 0; s < n && ok; ++s) {
            if (!alive[s]) continue;
            std::fill(d.begin(), d.end(), -1);
            std::deque<int> queue{static_cast<int>(s)};
            d[s] = 0;
            while (!queue.empty()) {
                const int v = queue.front();
                queue.pop_front();
                for (int u : closure.adj[static_cast<std::size_t>(v)]) {
                    if (!alive[static_cast<std::size_t>(u)] || d[static_cast<std::size_t>(u)] >= 0) continue;
                    d[static_cast<std::size_t>(u)] = d[static_cast<std::size_t>(v)] + 1;
                    queue.push_back(u);
                }
            }
            for (std::size_t u = 0; u < n && ok; ++u)
                if (alive[u] && d[u] != ref[s][u]) ok = false;
        }
        alive[static_cast<std::size_t>(x)] = 1;
        return ok;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (int x : order) {
            if (!alive[static_cast<std::size_t>(x)]) continue;
            if (isometric_without(x)) {
                alive[static_cast<std::size_t>(x)] = 0;
                changed = true;
            }
        }
    }
    std::vector<int> keep;
    for (std::size_t v = 0; v < n; ++v)
        if (alive[v]) keep.push_back(static_cast<int>(v));
    return induced_subgraph(closure, keep);
}

}  // namespace hypertile
