#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hypertile/errors.h"
#include "hypertile/hypgeo.h"
#include "hypertile/tiling.h"
#include "support.h"

using namespace hypertile;

namespace {

constexpr double kPi = std::numbers::pi;

double max_dev_from_identity(const Mat3q& m) {
    double e = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) e = std::max(e, static_cast<double>(qfabs(m(i, j) - (i == j ? 1 : 0))));
    return e;
}

/// Angle at b between the geodesics to a and c, from hyperboloid tangent vectors.
double angle_at(const Vec3q& a, const Vec3q& b, const Vec3q& c) {
    const Vec3q ta = a + b * minkowski_dot(a, b);
    const Vec3q tc = c + b * minkowski_dot(c, b);
    const quad num = minkowski_dot(ta, tc);
    const quad den = qsqrt(minkowski_dot(ta, ta) * minkowski_dot(tc, tc));
    return std::acos(std::clamp(static_cast<double>(num / den), -1.0, 1.0));
}

/// Brute force: a point is extreme iff it lies in no closed triangle of three others.
std::vector<std::size_t> brute_hull(const std::vector<std::pair<double, double>>& pts) {
    auto cross = [](std::pair<double, double> o, std::pair<double, double> a, std::pair<double, double> b) {
        return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::size_t> out;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        bool inside = false;
        for (std::size_t a = 0; a < n && !inside; ++a)
            for (std::size_t b = a + 1; b < n && !inside; ++b)
                for (std::size_t c = b + 1; c < n && !inside; ++c) {
                    if (a == i || b == i || c == i) continue;
                    const double d1 = cross(pts[a], pts[b], pts[i]), d2 = cross(pts[b], pts[c], pts[i]),
                                 d3 = cross(pts[c], pts[a], pts[i]);
                    inside = (d1 >= 0 && d2 >= 0 && d3 >= 0) || (d1 <= 0 && d2 <= 0 && d3 <= 0);
                }
        if (!inside) out.push_back(i);
    }
    return out;
}

}  // namespace

TEST_CASE("symbol validation separates hyperbolic from flat and spherical") {
    CHECK(validate_symbol(3, 7) == SchlafliSymbol{3, 7});
    CHECK(validate_symbol(8, 8) == SchlafliSymbol{8, 8});
    for (auto [p, q] : std::vector<std::pair<int, int>>{{4, 4}, {3, 6}, {6, 3}, {3, 5}, {5, 3}, {2, 9}, {9, 2}}) {
        try {
            validate_symbol(p, q);
            FAIL("accepted {" << p << "," << q << "}");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::EuclideanOrSpherical);
        }
    }
    try {
        validate_symbol(65, 3);
        FAIL("accepted p = 65");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CapExceeded);
    }
}

TEST_CASE("tile metric constants") {
    for (auto [p, q] : testkit::symbols()) {
        CAPTURE(p);
        CAPTURE(q);
        const TileGeometry g = tile_geometry({p, q});
        CHECK(g.edge_len == doctest::Approx(2 * g.half_edge));
        CHECK(std::cosh(g.half_edge) == doctest::Approx(std::cos(kPi / p) / std::sin(kPi / q)));
        CHECK(g.vertex_angle == doctest::Approx(2 * kPi / q));
        CHECK(g.tile_area == doctest::Approx((p - 2) * kPi - 2 * kPi * p / q));
    }
}

TEST_CASE("interior angles measured from tile coordinates equal 2pi/q") {
    for (auto [p, q] : testkit::symbols()) {
        const Tiling t({p, q});
        double sum = 0;
        for (int j = 0; j < p; ++j)
            sum += angle_at(t.tile_vertex_q((j + p - 1) % p), t.tile_vertex_q(j), t.tile_vertex_q((j + 1) % p));
        CHECK(sum / p == doctest::Approx(2 * kPi / q).epsilon(1e-12));
        CHECK((p - 2) * kPi - sum == doctest::Approx(t.geometry().tile_area).epsilon(1e-12));
    }
}

TEST_CASE("face and vertex loops compose to the identity") {
    for (auto [p, q] : testkit::symbols()) {
        const Tiling t({p, q});
        Mat3q face = Mat3q::identity(), vertex = Mat3q::identity();
        for (int i = 0; i < p; ++i) face = face * t.step_matrix(2);
        for (int i = 0; i < q; ++i) vertex = vertex * t.step_matrix(2) * t.step_matrix(1);
        CHECK(max_dev_from_identity(face) < 1e-25);
        CHECK(max_dev_from_identity(vertex) < 1e-25);
        CHECK(max_dev_from_identity(t.step_matrix(1) * t.step_matrix(1)) < 1e-25);
    }
}

TEST_CASE("frames stay Lorentz-orthogonal along long walks") {
    const Tiling t({4, 5});
    std::mt19937_64 rng(1);
    Frame f;
    for (int i = 0; i < 400; ++i) {
        f = t.step(f, 1 + static_cast<int>(rng() % 5));
        if (t.radius_of(f.position()) > 15) f = Frame{};
    }
    CHECK(f.orthogonality_error() < 1e-20);
}

TEST_CASE("distance, boosts and model conversions") {
    const double d = 2.5;
    const Vec3q p{sinhq(d), 0, coshq(d)};
    CHECK(static_cast<double>(hyperbolic_distance(Vec3q{0, 0, 1}, p)) == doctest::Approx(d));
    const Vec3q image = boost_to(p) * Vec3q{0, 0, 1};
    CHECK(static_cast<double>(hyperbolic_distance(image, p)) < 1e-15);

    const Point a = Point::poincare(0.3, -0.55);
    const Point k = convert(a, Model::Klein);
    const double r2 = a.x * a.x + a.y * a.y;
    CHECK(k.x == doctest::Approx(2 * a.x / (1 + r2)));
    CHECK(k.y == doctest::Approx(2 * a.y / (1 + r2)));
    const Point back = convert(convert(k, Model::Hyperboloid), Model::Poincare);
    CHECK(back.x == doctest::Approx(a.x));
    CHECK(back.y == doctest::Approx(a.y));
    const Point h = convert(a, Model::Hyperboloid);
    CHECK(h.z * h.z - h.x * h.x - h.y * h.y == doctest::Approx(1.0));
}

TEST_CASE("hull of degenerate inputs") {
    SUBCASE("single point") {
        const HullPolygon h = hyperbolic_hull({Point::klein(0.1, 0.2)});
        REQUIRE(h.vertices.size() == 1);
        CHECK(h.sources[0] == 0);
    }
    SUBCASE("duplicates collapse") {
        const HullPolygon h = hyperbolic_hull({Point::klein(0.1, 0.2), Point::klein(0.1, 0.2)});
        CHECK(h.vertices.size() == 1);
    }
    SUBCASE("collinear points keep the two extremes") {
        const HullPolygon h =
            hyperbolic_hull({Point::klein(-0.5, -0.25), Point::klein(0.2, 0.1), Point::klein(0, 0), Point::klein(0.6, 0.3)});
        REQUIRE(h.vertices.size() == 2);
        std::vector<std::size_t> s = h.sources;
        std::sort(s.begin(), s.end());
        CHECK(s == std::vector<std::size_t>{0, 3});
    }
}

TEST_CASE("hull of a triangle is clockwise") {
    const HullPolygon h = hyperbolic_hull({Point::klein(0, 0.5), Point::klein(0.4, -0.3), Point::klein(-0.4, -0.3)});
    REQUIRE(h.vertices.size() == 3);
    double area = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const Point& a = h.vertices[i];
        const Point& b = h.vertices[(i + 1) % 3];
        area += a.x * b.y - a.y * b.x;
    }
    CHECK(area < 0);
}

TEST_CASE("hull drops a point strictly inside a quadrilateral") {
    const HullPolygon h = hyperbolic_hull({Point::klein(0.5, 0.5), Point::klein(-0.5, 0.5), Point::klein(0.05, -0.02),
                                           Point::klein(-0.5, -0.5), Point::klein(0.5, -0.5)});
    CHECK(h.vertices.size() == 4);
    CHECK(std::find(h.sources.begin(), h.sources.end(), std::size_t{2}) == h.sources.end());
}

TEST_CASE("hull agrees with the brute-force triangle test") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        std::vector<Point> pts;
        std::vector<std::pair<double, double>> raw;
        while (static_cast<int>(pts.size()) < n) {
            const double x = u(rng), y = u(rng);
            if (x * x + y * y > 0.9) continue;
            pts.push_back(Point::klein(x, y));
            raw.emplace_back(x, y);
        }
        const HullPolygon h = hyperbolic_hull(pts);
        std::vector<std::size_t> got = h.sources;
        std::sort(got.begin(), got.end());
        CHECK(got == brute_hull(raw));
    }
}

TEST_CASE("orientation stays exact for far-away nearly collinear points") {
    // Three points on one geodesic, moved far from the origin by an isometry,
    // then one of them pushed off the line by a tiny distance.
    const Tiling t({8, 8});
    Frame far;
    for (int k : {1, 6, 5, 6, 3, 6}) far = t.step(far, k);
    auto on_line = [&](double s, double offset) {
        const Vec3q local{sinhq(quad(s)) * coshq(quad(offset)), sinhq(quad(offset)), coshq(quad(s)) * coshq(quad(offset))};
        return far.to_global(local);
    };
    const Vec3q a = on_line(-9, 0), b = on_line(0.5, 0), c = on_line(11, 0);
    CHECK(orientation(a, b, c, 1e-9) == 0);
    CHECK(orientation(a, on_line(0.5, 1e-6), c, 1e-9) == -orientation(a, on_line(0.5, -1e-6), c, 1e-9));
    CHECK(orientation(a, on_line(0.5, 1e-6), c, 1e-9) != 0);
    CHECK(orientation(a, c, on_line(0.5, 1e-6), 1e-9) == -orientation(a, on_line(0.5, 1e-6), c, 1e-9));
}
