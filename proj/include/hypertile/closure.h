#pragma once

#include <cstddef>
#include <vector>

#include "hypertile/geodesics.h"
#include "hypertile/hypgeo.h"
#include "hypertile/tiling.h"

namespace hypertile {

struct TerminalSet {
    std::vector<Walk> walks;
    std::vector<VertexKey> keys;  // distinct terminals, in first-seen order
    std::vector<Frame> frames;
    std::vector<int> of_walk;     // walk index -> terminal index
    std::size_t total_steps = 0;  // N

    int n() const { return static_cast<int>(keys.size()); }
};

TerminalSet resolve_terminals(const Tiling& t, const std::vector<Walk>& walks);

/// Clockwise closed walk assembled from one shortest path per hull edge.
/// For a two-point hull the single path is kept open (closed == false).
struct BoundaryWalk {
    std::vector<VertexKey> keys;
    std::vector<Frame> frames;
    std::vector<std::size_t> segment_start;  // index of the first vertex of each path
    bool closed = false;

    std::size_t length() const {
        if (keys.empty()) return 0;
        return closed ? keys.size() : keys.size() - 1;
    }
};

/// Hull of the terminals; sources index into terminals.keys.
HullPolygon terminal_hull(const Tiling& t, const TerminalSet& terminals);

BoundaryWalk boundary(const Tiling& t, const HullPolygon& hull, const TerminalSet& terminals);

/// Every tiling vertex and edge enclosed by the walk (nonzero winding), plus the walk itself.
PatchGraph fill(const Tiling& t, const BoundaryWalk& walk);

struct ClosureStats {
    double ms_resolve = 0;
    double ms_hull = 0;
    double ms_boundary = 0;
    double ms_fill = 0;
};

struct ClosureResult {
    PatchGraph graph;
    HullPolygon hull;
    BoundaryWalk walk;
    std::vector<int> terminal_ids;  // terminal index -> vertex of graph
    ClosureStats stats;
};

ClosureResult build_closure(const Tiling& t, const TerminalSet& terminals);

PatchGraph isometric_closure(const Tiling& t, const TerminalSet& terminals);

}  // namespace hypertile
