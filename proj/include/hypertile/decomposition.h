#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hypertile/tiling.h"

namespace hypertile {

enum class NodeKind { Bag, Leaf, Introduce, Forget, Join, IntroduceEdge };

const char* node_kind_name(NodeKind k);

struct TdNode {
    NodeKind kind = NodeKind::Bag;
    std::vector<int> bag;  // sorted patch vertex ids
    int parent = -1;
    std::vector<int> children;
    int vertex = -1;              // Introduce / Forget
    std::pair<int, int> edge{-1, -1};  // IntroduceEdge
};

struct TreeDecomposition {
    std::vector<TdNode> nodes;
    int root = -1;
    bool nice = false;

    int width() const;
    std::size_t size() const { return nodes.size(); }
};

/// Min-fill greedy elimination. Ties go to lower degree, then lower key.
TreeDecomposition tree_decomposition(const PatchGraph& g);

enum class ViolationKind { MalformedTree, UncoveredVertex, MissingEdge, BrokenConnectivity, NotNice };

const char* violation_name(ViolationKind k);

struct Violation {
    ViolationKind kind;
    int node = -1;
    int vertex = -1;
    int other = -1;
    std::string message;
};

/// Empty when td is a tree decomposition of g. Nice decompositions are also
/// checked for node shape and for introducing every edge exactly once.
std::vector<Violation> validate(const PatchGraph& g, const TreeDecomposition& td);

/// Leaf / introduce / forget / join form with an empty root bag. Each edge of g
/// is introduced once, just below the forget of its first forgotten endpoint.
TreeDecomposition make_nice(const PatchGraph& g, const TreeDecomposition& td);

struct LayerAssignment {
    std::vector<int> layer;  // 1 = on the unbounded face
    int count = 0;
};

LayerAssignment peel_layers(const PatchGraph& g);

}  // namespace hypertile
