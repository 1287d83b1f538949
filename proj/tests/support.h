#pragma once

#include <random>
#include <utility>
#include <vector>

#include "hypertile/tiling.h"

namespace testkit {

inline std::vector<hypertile::Walk> random_walks(std::mt19937_64& rng, int q, int n, int min_len, int max_len) {
    std::vector<hypertile::Walk> walks;
    for (int i = 0; i < n; ++i) {
        hypertile::Walk w;
        const int len = min_len + static_cast<int>(rng() % static_cast<unsigned>(max_len - min_len + 1));
        for (int s = 0; s < len; ++s) w.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(q)));
        walks.push_back(std::move(w));
    }
    return walks;
}

inline int max_len(const std::vector<hypertile::Walk>& walks) {
    std::size_t m = 0;
    for (const auto& w : walks) m = std::max(m, w.size());
    return static_cast<int>(m);
}

/// Plain graph with no embedding, for oracle and decomposition tests.
inline hypertile::PatchGraph plain_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    hypertile::PatchGraph g;
    g.sym = {3, 7};
    g.vertices.resize(static_cast<std::size_t>(n));
    g.adj.resize(static_cast<std::size_t>(n));
    g.slot.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) g.vertices[static_cast<std::size_t>(v)].key = {v, 0};
    for (auto [a, b] : edges) {
        g.adj[static_cast<std::size_t>(a)].push_back(b);
        g.adj[static_cast<std::size_t>(b)].push_back(a);
        g.slot[static_cast<std::size_t>(a)].push_back(static_cast<int>(g.slot[static_cast<std::size_t>(a)].size()));
        g.slot[static_cast<std::size_t>(b)].push_back(static_cast<int>(g.slot[static_cast<std::size_t>(b)].size()));
    }
    g.rebuild_index();
    return g;
}

inline const std::vector<std::pair<int, int>>& symbols() {
    static const std::vector<std::pair<int, int>> s{{3, 7}, {7, 3}, {4, 5}, {5, 4}, {4, 6}, {5, 5}, {8, 3}};
    return s;
}

}  // namespace testkit
