#pragma once

#include <vector>

#include "hypertile/tiling.h"

namespace hypertile {

enum class ElementKind { Vertex, Edge };

/// One element of the sequence of vertices hit and edges crossed by a segment.
struct IntersectionElement {
    ElementKind kind = ElementKind::Vertex;
    VertexKey a;
    VertexKey b;  // equals a for vertex elements
    double t = 0;  // entry parameter along the segment, in [0,1]
};

struct GeoPath {
    std::vector<VertexKey> keys;
    std::vector<Frame> frames;

    int length() const { return keys.empty() ? 0 : static_cast<int>(keys.size()) - 1; }
};

/// Elements met by the segment u -> v, starting with Vertex(u) and ending with Vertex(v).
std::vector<IntersectionElement> intersection_sequence(const Tiling& t, const Frame& u, const Frame& v);

/// Distance between two vertices of one tile that are sep steps apart along its boundary.
int within_tile_distance(const SchlafliSymbol& sym, int sep);

/// A shortest path that meets every element of the segment's intersection
/// sequence in order.
GeoPath shortest_path(const Tiling& t, const Frame& u, const Frame& v);

int distance(const Tiling& t, const Frame& u, const Frame& v);

/// The path extended by one edge so that it stays shortest.
GeoPath geodesic_extension(const Tiling& t, const GeoPath& path);

}  // namespace hypertile
