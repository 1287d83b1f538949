#include "hypertile/hypgeo.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hypertile/errors.h"

namespace hypertile {

SchlafliSymbol validate_symbol(int p, int q) {
    if (p < 3 || q < 3 || 2 * (p + q) >= p * q) {
        fail(ErrorKind::EuclideanOrSpherical,
             "{" + std::to_string(p) + "," + std::to_string(q) + "} is not a hyperbolic tiling");
    }
    if (p > kMaxPolygon || q > kMaxPolygon)
        fail(ErrorKind::CapExceeded, "p and q are limited to " + std::to_string(kMaxPolygon));
    return {p, q};
}

TileGeometry tile_geometry(const SchlafliSymbol& sym) {
    const double pi = std::numbers::pi;
    const double p = sym.p, q = sym.q;
    TileGeometry g;
    g.half_edge = std::acosh(std::cos(pi / p) / std::sin(pi / q));
    g.edge_len = 2 * g.half_edge;
    g.circumradius = std::acosh(1.0 / (std::tan(pi / p) * std::tan(pi / q)));
    g.tile_area = (p - 2) * pi - p * (2 * pi / q);
    g.vertex_angle = 2 * pi / q;
    return g;
}

Frame Frame::compose(const Mat3q& rhs) const {
    Frame f(m_ * rhs, age_ + 1);
    // Far from the origin the entries grow like e^r and Gram-Schmidt mixes
    // columns with that weight, so the correction waits until the frame is near.
    if (f.age_ >= kReorthoPeriod && f.m_(2, 2) < kReorthoMaxZ) f.reorthonormalize();
    return f;
}

double Frame::orthogonality_error() const {
    double worst = 0;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            const quad v = minkowski_dot(m_.column(r), m_.column(c));
            const quad want = r != c ? quad(0) : (r == 2 ? quad(-1) : quad(1));
            worst = std::max(worst, static_cast<double>(qfabs(v - want)));
        }
    }
    return worst;
}

void Frame::reorthonormalize() {
    Vec3q c2 = m_.column(2);
    c2 = c2 / qsqrt(-minkowski_dot(c2, c2));
    Vec3q c0 = m_.column(0);
    c0 = c0 + c2 * minkowski_dot(c0, c2);
    c0 = c0 / qsqrt(minkowski_dot(c0, c0));
    Vec3q c1 = m_.column(1);
    c1 = c1 + c2 * minkowski_dot(c1, c2) - c0 * minkowski_dot(c1, c0);
    c1 = c1 / qsqrt(minkowski_dot(c1, c1));
    m_.set_column(0, c0);
    m_.set_column(1, c1);
    m_.set_column(2, c2);
    age_ = 0;
}

quad hyperbolic_distance(const Vec3q& a, const Vec3q& b) {
    const quad c = -minkowski_dot(a, b);
    return c <= 1 ? quad(0) : qacosh(c);
}

double hyperbolic_distance(const Vec3d& a, const Vec3d& b) {
    const double c = -minkowski_dot(a, b);
    return c <= 1 ? 0.0 : std::acosh(c);
}

Mat3q boost_to(const Vec3q& p) {
    const quad k = 1 / (1 + p.z);
    Mat3q m;
    m(0, 0) = 1 + p.x * p.x * k;
    m(0, 1) = p.x * p.y * k;
    m(0, 2) = p.x;
    m(1, 0) = p.x * p.y * k;
    m(1, 1) = 1 + p.y * p.y * k;
    m(1, 2) = p.y;
    m(2, 0) = p.x;
    m(2, 1) = p.y;
    m(2, 2) = p.z;
    return m;
}

Vec3q to_hyperboloid_q(const Point& pt) {
    const quad x = pt.x, y = pt.y;
    switch (pt.model) {
        case Model::Hyperboloid:
            return {x, y, qsqrt(1 + x * x + y * y)};
        case Model::Poincare: {
            const quad d = 1 - (x * x + y * y);
            return {2 * x / d, 2 * y / d, (2 - d) / d};
        }
        case Model::Klein: {
            const quad z = 1 / qsqrt(1 - (x * x + y * y));
            return {x * z, y * z, z};
        }
    }
    return {0, 0, 1};
}

Point from_hyperboloid_q(const Vec3q& v, Model target) {
    switch (target) {
        case Model::Hyperboloid:
            return Point::hyperboloid(static_cast<double>(v.x), static_cast<double>(v.y),
                                      static_cast<double>(v.z));
        case Model::Poincare:
            return Point::poincare(static_cast<double>(v.x / (1 + v.z)), static_cast<double>(v.y / (1 + v.z)));
        case Model::Klein:
            return Point::klein(static_cast<double>(v.x / v.z), static_cast<double>(v.y / v.z));
    }
    return {};
}

Point convert(const Point& pt, Model target) {
    if (pt.model == target) return pt;
    if (pt.model == Model::Poincare && target == Model::Klein) {
        // Closed form keeps full precision near the rim.
        const double r2 = pt.x * pt.x + pt.y * pt.y;
        return Point::klein(2 * pt.x / (1 + r2), 2 * pt.y / (1 + r2));
    }
    if (pt.model == Model::Klein && target == Model::Poincare) {
        const double r2 = pt.x * pt.x + pt.y * pt.y;
        const double s = 1 / (1 + std::sqrt(1 - r2));
        return Point::poincare(pt.x * s, pt.y * s);
    }
    return from_hyperboloid_q(to_hyperboloid_q(pt), target);
}

int orientation(const Vec3q& a, const Vec3q& b, const Vec3q& c, double eps) {
    // Work in the frame of the point opposite the longest side, where it sits
    // at the origin and its distance from the other two points' line is best
    // conditioned.
    const quad ab = -minkowski_dot(a, b), bc = -minkowski_dot(b, c), ca = -minkowski_dot(c, a);
    const Vec3q* pts[3] = {&a, &b, &c};
    int mid = 2;  // opposite ab
    if (bc >= ab && bc >= ca) mid = 0;
    else if (ca >= ab && ca >= bc) mid = 1;

    const Mat3q to_mid = boost_to(*pts[mid]);
    Vec3q local[3];
    for (int i = 0; i < 3; ++i) local[i] = lorentz_solve(to_mid, *pts[i]);
    local[mid] = {0, 0, 1};

    // Far points have coordinates near e^r; the determinant cancels too much for doubles.
    const quad det = det3(local[0], local[1], local[2]);
    const Vec3q n = cross(local[(mid + 1) % 3], local[(mid + 2) % 3]);
    const quad nn = n.x * n.x + n.y * n.y - n.z * n.z;
    if (!(nn > 0)) return 0;
    const double s = static_cast<double>(det / qsqrt(nn));
    if (std::fabs(s) < eps) return 0;
    return s > 0 ? 1 : -1;
}

std::vector<std::size_t> hull_indices(const std::vector<Vec3q>& pts, double eps) {
    std::vector<std::size_t> hull;
    if (pts.empty()) return hull;
    std::size_t start = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].z > pts[start].z) start = i;

    // Gift wrapping, clockwise: every other point must lie right of or on cur -> cand.
    std::size_t cur = start;
    do {
        hull.push_back(cur);
        if (hull.size() > pts.size()) fail(ErrorKind::InvariantViolation, "hull march did not close");
        std::size_t cand = pts.size();
        for (std::size_t r = 0; r < pts.size(); ++r) {
            if (r == cur) continue;
            if (cand == pts.size()) {
                cand = r;
                continue;
            }
            const int o = orientation(pts[cur], pts[cand], pts[r], eps);
            if (o > 0 || (o == 0 && -minkowski_dot(pts[cur], pts[r]) > -minkowski_dot(pts[cur], pts[cand])))
                cand = r;
        }
        if (cand == pts.size()) break;  // single point
        cur = cand;
    } while (cur != start);
    return hull;
}

HullPolygon hyperbolic_hull(const std::vector<Point>& points, double eps) {
    std::vector<Vec3q> pts;
    std::vector<std::size_t> origin;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec3q v = to_hyperboloid_q(convert(points[i], Model::Klein));
        bool dup = false;
        for (const Vec3q& w : pts)
            if (-minkowski_dot(v, w) - 1 < quad(1e-24)) dup = true;
        if (dup) continue;
        pts.push_back(v);
        origin.push_back(i);
    }
    HullPolygon out;
    for (std::size_t h : hull_indices(pts, eps)) {
        out.vertices.push_back(from_hyperboloid_q(pts[h], Model::Klein));
        out.sources.push_back(origin[h]);
    }
    return out;
}

}  // namespace hypertile
