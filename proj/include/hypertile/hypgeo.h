#pragma once

#include <cstddef>
#include <vector>

#include "hypertile/linalg.h"

namespace hypertile {

struct SchlafliSymbol {
    int p = 0;
    int q = 0;

    friend bool operator==(const SchlafliSymbol&, const SchlafliSymbol&) = default;
};

constexpr int kMaxPolygon = 64;

/// Accepts {p,q} iff 1/p + 1/q < 1/2; throws EuclideanOrSpherical otherwise,
/// and CapExceeded when p or q exceeds kMaxPolygon.
SchlafliSymbol validate_symbol(int p, int q);

struct TileGeometry {
    double half_edge = 0;
    double edge_len = 0;
    double circumradius = 0;
    double tile_area = 0;
    double vertex_angle = 0;
};

TileGeometry tile_geometry(const SchlafliSymbol& sym);

/// Orientation-preserving isometry of the hyperboloid. The image of the
/// origin is the position; the image of +x is the reference direction.
class Frame {
public:
    Frame() : m_(Mat3q::identity()) {}
    explicit Frame(const Mat3q& m, int age = 0) : m_(m), age_(age) {}

    const Mat3q& matrix() const { return m_; }
    Vec3q position() const { return m_.column(2); }
    int age() const { return age_; }

    /// this * rhs. Re-orthonormalized once 16 compositions have passed and
    /// the frame lies within distance acosh(kReorthoMaxZ) of the origin.
    Frame compose(const Mat3q& rhs) const;

    Vec3q to_local(const Vec3q& global) const { return lorentz_solve(m_, global); }
    Vec3q to_global(const Vec3q& local) const { return m_ * local; }

    /// Largest entry of |m^T J m - J|.
    double orthogonality_error() const;

    void reorthonormalize();

private:
    Mat3q m_;
    int age_ = 0;
};

inline constexpr int kReorthoPeriod = 16;
inline constexpr double kReorthoMaxZ = 10.0;

/// Hyperbolic distance between two hyperboloid points.
quad hyperbolic_distance(const Vec3q& a, const Vec3q& b);
double hyperbolic_distance(const Vec3d& a, const Vec3d& b);

/// Boost taking the origin to p along the geodesic through both.
Mat3q boost_to(const Vec3q& p);

enum class Model { Hyperboloid, Poincare, Klein };

struct Point {
    Model model = Model::Hyperboloid;
    double x = 0, y = 0, z = 1;  // z is ignored for the disk models

    static Point hyperboloid(double x, double y, double z) { return {Model::Hyperboloid, x, y, z}; }
    static Point poincare(double x, double y) { return {Model::Poincare, x, y, 0}; }
    static Point klein(double x, double y) { return {Model::Klein, x, y, 0}; }
};

Point convert(const Point& pt, Model target);

Vec3q to_hyperboloid_q(const Point& pt);
Point from_hyperboloid_q(const Vec3q& v, Model target);

struct HullPolygon {
    std::vector<Point> vertices;       // Klein model, clockwise
    std::vector<std::size_t> sources;  // index into the input list
};

/// Sign of the Klein-model turn a -> b -> c: +1 counterclockwise, -1 clockwise,
/// 0 when the point opposite the longest side is within sinh^-1(eps) of the
/// line through the other two.
int orientation(const Vec3q& a, const Vec3q& b, const Vec3q& c, double eps);

/// Clockwise extreme points of a set of distinct hyperboloid points, with
/// collinear boundary points dropped. Returns indices into pts.
std::vector<std::size_t> hull_indices(const std::vector<Vec3q>& pts, double eps);

/// Convex hull of points given in any model (converted to Klein first).
HullPolygon hyperbolic_hull(const std::vector<Point>& points, double eps = 1e-9);

}  // namespace hypertile
