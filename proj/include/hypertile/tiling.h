#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "hypertile/config.h"
#include "hypertile/hypgeo.h"

namespace hypertile {

/// Steps in {1..q}; step 1 is the arrival edge, positions increase clockwise.
using Walk = std::vector<int>;

/// Quantized Poincare-disk coordinates of a vertex.
struct VertexKey {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend auto operator<=>(const VertexKey&, const VertexKey&) = default;
};

std::string to_string(const VertexKey& k);

struct VertexKeyHash {
    std::size_t operator()(const VertexKey& k) const noexcept {
        const std::uint64_t a = static_cast<std::uint64_t>(k.x) * 0x9E3779B97F4A7C15ULL;
        const std::uint64_t b = static_cast<std::uint64_t>(k.y) * 0xC2B2AE3D27D4EB4FULL;
        return static_cast<std::size_t>(a ^ (b >> 29) ^ (b << 17));
    }
};

/// The tiling {p,q} with its precomputed step and tile matrices.
///
/// Vertex frames: the reference axis of a frame points along edge 1; edge k
/// leaves at angle -(k-1)*2pi/q in the frame's local coordinates.
///
/// Tile frames: a frame F names the tile between its edges 1 and 2. The tile's
/// vertices are F*L_j*O for j = 0..p-1 (counterclockwise), with L_0 = I and
/// L_{j+1} = L_j * S_2. Crossing the edge (j, j+1) lands in the tile F*M_j,
/// whose vertices 0 and 1 are the old j+1 and j.
class Tiling {
public:
    explicit Tiling(SchlafliSymbol sym, Config cfg = Config::from_env());

    const SchlafliSymbol& symbol() const { return sym_; }
    int p() const { return sym_.p; }
    int q() const { return sym_.q; }
    const TileGeometry& geometry() const { return geo_; }
    const Config& config() const { return cfg_; }

    /// S_k for k in 1..q.
    const Mat3q& step_matrix(int k) const { return step_[static_cast<std::size_t>(k - 1)]; }
    const Mat3q& step_inverse(int k) const { return step_inv_[static_cast<std::size_t>(k - 1)]; }
    /// R(-s * 2pi/q): turns edge s+1 into edge 1. s in 0..q-1.
    const Mat3q& slot_rotation(int s) const { return rot_[static_cast<std::size_t>(s)]; }
    const Mat3q& slot_rotation_inverse(int s) const { return rot_inv_[static_cast<std::size_t>(s)]; }
    const Mat3q& tile_vertex_frame(int j) const { return tile_l_[static_cast<std::size_t>(j)]; }
    const Mat3q& tile_vertex_frame_inverse(int j) const { return tile_l_inv_[static_cast<std::size_t>(j)]; }
    const Mat3q& crossing(int j) const { return cross_[static_cast<std::size_t>(j)]; }
    const Mat3q& crossing_inverse(int j) const { return cross_inv_[static_cast<std::size_t>(j)]; }

    /// Tile vertex j in tile-frame coordinates.
    const Vec3d& tile_vertex(int j) const { return tile_pos_[static_cast<std::size_t>(j)]; }
    const Vec3q& tile_vertex_q(int j) const { return tile_pos_q_[static_cast<std::size_t>(j)]; }
    const Vec3q& tile_center_q() const { return tile_center_q_; }
    /// Neighbor through slot s (edge s+1) in vertex-frame coordinates.
    const Vec3d& neighbor_local(int s) const { return nbr_pos_[static_cast<std::size_t>(s)]; }

    /// cosh of the edge length, in quad precision.
    quad cosh_edge() const { return cosh_edge_; }

    Frame step(const Frame& f, int k) const;

    /// f * m, snapped like snap().
    Frame compose(const Frame& f, const Mat3q& m) const { return snap(f.compose(m)); }

    /// A vertex frame within kSnapRadius of the origin is replaced by the
    /// matching frame built outward from the origin. Frames reached by walking
    /// back from far away carry errors of order eps * e^(2r); this removes them.
    Frame snap(const Frame& f) const;
    std::vector<Frame> neighbors(const Frame& f) const;

    /// Slot (0..q-1) of the edge from the frame's vertex towards the adjacent
    /// vertex at global position pos.
    int slot_of(const Frame& f, const Vec3q& pos) const;

    VertexKey key_of(const Vec3q& pos) const;
    void check_radius(const Vec3q& pos) const;
    double radius_of(const Vec3q& pos) const;

    struct SnapTable;

private:
    SchlafliSymbol sym_;
    TileGeometry geo_;
    std::shared_ptr<SnapTable> snap_;
    quad snap_max_z_ = 0;
    Config cfg_;
    quad cosh_edge_ = 1;
    std::vector<Mat3q> step_, step_inv_, rot_, rot_inv_, tile_l_, tile_l_inv_, cross_, cross_inv_;
    std::vector<Vec3d> tile_pos_, nbr_pos_;
    std::vector<Vec3q> tile_pos_q_;
    Vec3q tile_center_q_;
};

inline constexpr double kSnapRadius = 8.0;

/// Free-function forms of the navigation operations.
Frame step(const Tiling& t, const Frame& f, int k);

struct ResolvedVertex {
    VertexKey key;
    Frame frame;
};

ResolvedVertex resolve_walk(const Tiling& t, const Walk& w);
std::vector<Frame> neighbors(const Tiling& t, const Frame& f);

/// Canonicalizes positions to ids: a lookup probes the 3x3 block of grid
/// cells around the query and accepts a stored point within half a cell.
class VertexIndex {
public:
    explicit VertexIndex(double eps_key) : eps_(eps_key) {}

    /// Id of the stored vertex at pos, or -1.
    int find(const Vec3q& pos) const;
    /// Returns {id, inserted}.
    std::pair<int, bool> insert(const Vec3q& pos);

    const VertexKey& key(int id) const { return keys_[static_cast<std::size_t>(id)]; }
    std::size_t size() const { return keys_.size(); }

private:
    VertexKey cell(quad x, quad y) const;

    double eps_;
    std::unordered_map<VertexKey, std::vector<int>, VertexKeyHash> cells_;
    std::vector<VertexKey> keys_;
    std::vector<std::pair<quad, quad>> coords_;
};

struct PatchVertex {
    VertexKey key;
    Frame frame;
    bool terminal = false;
    bool boundary = false;
    int depth = -1;
};

/// Finite plane subgraph of the tiling. adj[v] is in clockwise order and
/// slot[v][i] is the frame slot of the edge v -> adj[v][i].
struct PatchGraph {
    SchlafliSymbol sym;
    std::vector<PatchVertex> vertices;
    std::vector<std::vector<int>> adj;
    std::vector<std::vector<int>> slot;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t edge_count() const;
    /// Index of the vertex with this key, or -1.
    int find(const VertexKey& k) const;
    bool has_edge(int a, int b) const;
    void rebuild_index();

    std::unordered_map<VertexKey, int, VertexKeyHash> index;
};

/// Incremental construction of a PatchGraph with key canonicalization.
class PatchBuilder {
public:
    explicit PatchBuilder(const Tiling& t);

    /// Returns {id, inserted}.
    std::pair<int, bool> add_vertex(const Frame& f);
    int find(const Vec3q& pos) const { return index_.find(pos); }
    void add_edge(int a, int b);
    std::size_t size() const { return frames_.size(); }
    const Frame& frame(int id) const { return frames_[static_cast<std::size_t>(id)]; }
    Vec3q position(int id) const { return frames_[static_cast<std::size_t>(id)].position(); }
    const VertexKey& key(int id) const { return index_.key(id); }

    /// Computes slots, sorts adjacency clockwise and returns the patch.
    PatchGraph finish(std::vector<int> depth = {});

private:
    const Tiling& t_;
    VertexIndex index_;
    std::vector<Frame> frames_;
    std::vector<std::vector<int>> adj_;
};

/// Every vertex within `hops` of the seed vertices, with induced edges.
/// depth is the hop distance to the seeds; boundary marks depth == hops.
PatchGraph neighborhood(const Tiling& t, const std::vector<Frame>& seeds, int hops);

/// Every vertex within hop distance radius of the origin, with induced edges.
/// depth holds the hop distance; boundary marks depth == radius.
PatchGraph ball(const Tiling& t, int radius);

struct Face {
    std::vector<int> cycle;  // vertices in traversal order
    bool unbounded = false;
};

/// Face traversal through the rotation system. The unbounded face of each
/// component is the one whose corners have negative total turning
/// sum(q - 2*d), d being the clockwise slot gap between the two edges at the corner.
std::vector<Face> faces(const PatchGraph& g);

/// Variant restricted to the vertices with alive[v] set.
std::vector<Face> faces(const PatchGraph& g, const std::vector<char>& alive);

}  // namespace hypertile
