#pragma once

#include <utility>
#include <vector>

#include "hypertile/closure.h"
#include "hypertile/decomposition.h"

namespace hypertile {

/// Vertices are ids of the graph the solution was computed on.
struct SteinerSolution {
    std::vector<std::pair<int, int>> edges;  // a < b, sorted
    int cost = 0;
};

struct TourSolution {
    std::vector<int> walk;  // closed: front == back
    int cost = 0;
};

/// Treewidth DP over connectivity partitions of each bag.
/// Throws WidthTooLarge when the decomposition is wider than width_cap.
SteinerSolution steiner_dp(const PatchGraph& g, const std::vector<int>& terminals, const TreeDecomposition& ntd,
                           int width_cap);

/// Same scheme with degree parity per bag vertex and edge multiplicities 0, 1 or 2.
TourSolution tsp_dp(const PatchGraph& g, const std::vector<int>& terminals, const TreeDecomposition& ntd, int width_cap);

constexpr int kDreyfusWagnerMax = 14;
constexpr int kHeldKarpMax = 18;

SteinerSolution dreyfus_wagner(const PatchGraph& g, const std::vector<int>& terminals);

struct HeldKarpResult {
    std::vector<int> order;  // terminal indices, starting at 0, without the closing repeat
    long cost = 0;
};

HeldKarpResult held_karp(const std::vector<std::vector<int>>& dist);

/// Throws InvariantViolation unless s is a tree through every terminal.
void check_steiner(const PatchGraph& g, const std::vector<int>& terminals, const SteinerSolution& s);
/// Throws InvariantViolation unless w is a closed walk over edges of g through every terminal.
void check_tour(const PatchGraph& g, const std::vector<int>& terminals, const TourSolution& w);

struct SolveOptions {
    bool steiner = true;
    bool tsp = true;
};

struct SolveStats {
    std::size_t n = 0;
    std::size_t N = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    int width = 0;
    std::size_t nice_nodes = 0;
    double ms_resolve = 0;
    double ms_closure = 0;
    double ms_decomposition = 0;
    double ms_steiner = 0;
    double ms_tsp = 0;
};

struct SolveResult {
    ClosureResult closure;
    SteinerSolution steiner;
    TourSolution tsp;
    SolveStats stats;
};

/// isometric closure, min-fill decomposition, nice form, then the requested DPs.
SolveResult solve(const Tiling& t, const std::vector<Walk>& walks, SolveOptions opts = {});

}  // namespace hypertile
