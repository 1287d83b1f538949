#pragma once

#include <utility>
#include <vector>

#include "hypertile/tiling.h"

namespace hypertile {

/// Hop distances from src over the whole patch; -1 when unreachable.
std::vector<int> bfs_all(const PatchGraph& g, int src);

int bfs_distance(const PatchGraph& g, int u, int v);

struct Interval {
    std::vector<int> vertices;               // sorted patch vertex ids
    std::vector<std::pair<int, int>> edges;  // shortest-path DAG edges, a closer to u
};

Interval interval(const PatchGraph& g, int u, int v);

/// Same, from the distance array of u: walks back from v along edges that
/// lower the distance to u by one.
Interval interval_from(const PatchGraph& g, const std::vector<int>& du, int v);

/// Least superset of K closed under intervals. Throws HullTouchesBoundary if
/// the result contains a vertex flagged as patch boundary.
std::vector<int> graph_convex_hull(const PatchGraph& g, const std::vector<int>& K);

/// Induced subgraph on the given vertices (ids renumbered in the given order).
PatchGraph induced_subgraph(const PatchGraph& g, const std::vector<int>& keep);

/// Deletes non-terminal vertices of closure one at a time while the remainder
/// stays isometric (distances measured in g). Candidates are tried farthest
/// first from the closure vertex with least total distance to the terminals,
/// ties broken by key. closure_terminals index into closure.
PatchGraph minimize_closure(const PatchGraph& g, const PatchGraph& closure, const std::vector<int>& closure_terminals);

}  // namespace hypertile
