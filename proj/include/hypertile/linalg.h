#pragma once

// Small fixed-size linear algebra over double and __float128.
// The Minkowski form used throughout is <a,b> = a.x*b.x + a.y*b.y - a.z*b.z.

#include <array>
#include <cmath>
#include <cstddef>

#include <quadmath.h>

namespace hypertile {

using quad = __float128;

inline quad qsqrt(quad x) { return sqrtq(x); }
inline quad qcos(quad x) { return cosq(x); }
inline quad qsin(quad x) { return sinq(x); }
inline quad qacosh(quad x) { return acoshq(x); }
inline quad qfabs(quad x) { return fabsq(x); }
inline const quad kPiQ = M_PIq;

template <class T>
struct Vec3 {
    T x{}, y{}, z{};

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(T s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(T s) const { return {x / s, y / s, z / s}; }
};

using Vec3d = Vec3<double>;
using Vec3q = Vec3<quad>;

template <class T>
constexpr T minkowski_dot(const Vec3<T>& a, const Vec3<T>& b) {
    return a.x * b.x + a.y * b.y - a.z * b.z;
}

template <class T>
constexpr Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <class T>
constexpr T dot(const Vec3<T>& a, const Vec3<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

/// det[a, b, c] with a, b, c as rows.
template <class T>
constexpr T det3(const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& c) {
    return dot(cross(a, b), c);
}

inline Vec3d to_double(const Vec3q& v) {
    return {static_cast<double>(v.x), static_cast<double>(v.y), static_cast<double>(v.z)};
}

inline Vec3q to_quad(const Vec3d& v) { return {v.x, v.y, v.z}; }

/// Row-major 3x3 matrix.
template <class T>
struct Mat3 {
    std::array<T, 9> a{};

    static constexpr Mat3 identity() {
        Mat3 m;
        m.a[0] = m.a[4] = m.a[8] = T(1);
        return m;
    }

    constexpr T& operator()(int r, int c) { return a[static_cast<std::size_t>(3 * r + c)]; }
    constexpr T operator()(int r, int c) const { return a[static_cast<std::size_t>(3 * r + c)]; }

    constexpr Mat3 operator*(const Mat3& o) const {
        Mat3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                m(r, c) = (*this)(r, 0) * o(0, c) + (*this)(r, 1) * o(1, c) + (*this)(r, 2) * o(2, c);
        return m;
    }

    constexpr Vec3<T> operator*(const Vec3<T>& v) const {
        return {(*this)(0, 0) * v.x + (*this)(0, 1) * v.y + (*this)(0, 2) * v.z,
                (*this)(1, 0) * v.x + (*this)(1, 1) * v.y + (*this)(1, 2) * v.z,
                (*this)(2, 0) * v.x + (*this)(2, 1) * v.y + (*this)(2, 2) * v.z};
    }

    constexpr Vec3<T> column(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }

    constexpr void set_column(int c, const Vec3<T>& v) {
        (*this)(0, c) = v.x;
        (*this)(1, c) = v.y;
        (*this)(2, c) = v.z;
    }

    constexpr Mat3 transpose() const {
        Mat3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m(r, c) = (*this)(c, r);
        return m;
    }

    constexpr T determinant() const {
        return det3(Vec3<T>{a[0], a[1], a[2]}, Vec3<T>{a[3], a[4], a[5]}, Vec3<T>{a[6], a[7], a[8]});
    }
};

using Mat3d = Mat3<double>;
using Mat3q = Mat3<quad>;

/// Inverse of a Minkowski-orthogonal matrix: J M^T J.
template <class T>
constexpr Mat3<T> lorentz_inverse(const Mat3<T>& m) {
    Mat3<T> r = m.transpose();
    r(0, 2) = -r(0, 2);
    r(1, 2) = -r(1, 2);
    r(2, 0) = -r(2, 0);
    r(2, 1) = -r(2, 1);
    return r;
}

/// Applies lorentz_inverse(m) to v without forming the matrix.
template <class T>
constexpr Vec3<T> lorentz_solve(const Mat3<T>& m, const Vec3<T>& v) {
    // (J M^T J) v: row r of J M^T J dotted with v equals <column r of M, v> up to the sign of row 2.
    const Vec3<T> c0 = m.column(0), c1 = m.column(1), c2 = m.column(2);
    return {minkowski_dot(c0, v), minkowski_dot(c1, v), -minkowski_dot(c2, v)};
}

inline Mat3d to_double(const Mat3q& m) {
    Mat3d d;
    for (std::size_t i = 0; i < 9; ++i) d.a[i] = static_cast<double>(m.a[i]);
    return d;
}

template <class T>
Mat3<T> rotation_matrix(T c, T s) {
    Mat3<T> m = Mat3<T>::identity();
    m(0, 0) = c;
    m(0, 1) = -s;
    m(1, 0) = s;
    m(1, 1) = c;
    return m;
}

/// Boost along +x by hyperbolic distance d given cosh d and sinh d.
template <class T>
Mat3<T> boost_x(T ch, T sh) {
    Mat3<T> m = Mat3<T>::identity();
    m(0, 0) = ch;
    m(0, 2) = sh;
    m(2, 0) = sh;
    m(2, 2) = ch;
    return m;
}

}  // namespace hypertile
