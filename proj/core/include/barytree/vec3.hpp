#pragma once

#include <array>
#include <cmath>

#include "barytree/errors.hpp"

namespace barytree {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    constexpr double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const {
        double n = norm();
        if (n == 0.0) return {0.0, 0.0, 0.0};
        return *this / n;
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Row-major 3x3 real matrix. Just enough linear algebra for the 3-dimensional
// balance equations: solve, inverse, spectral norm, symmetric eigenvalues.
struct Mat3 {
    std::array<double, 9> a{};

    static Mat3 identity() {
        Mat3 m;
        m.a = {1, 0, 0, 0, 1, 0, 0, 0, 1};
        return m;
    }
    static Mat3 zero() { return Mat3{}; }
    static Mat3 diag(double d0, double d1, double d2) {
        Mat3 m;
        m.a = {d0, 0, 0, 0, d1, 0, 0, 0, d2};
        return m;
    }
    // outer product u * v^T
    static Mat3 outer(const Vec3& u, const Vec3& v) {
        Mat3 m;
        m.a = {u.x * v.x, u.x * v.y, u.x * v.z,
               u.y * v.x, u.y * v.y, u.y * v.z,
               u.z * v.x, u.z * v.y, u.z * v.z};
        return m;
    }

    double& operator()(int i, int j) { return a[3 * i + j]; }
    double operator()(int i, int j) const { return a[3 * i + j]; }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; i++) r.a[i] = a[i] + o.a[i];
        return r;
    }
    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; i++) r.a[i] = a[i] - o.a[i];
        return r;
    }
    Mat3 operator*(double s) const {
        Mat3 r;
        for (int i = 0; i < 9; i++) r.a[i] = a[i] * s;
        return r;
    }
    Mat3& operator+=(const Mat3& o) {
        for (int i = 0; i < 9; i++) a[i] += o.a[i];
        return *this;
    }
    Vec3 operator*(const Vec3& v) const {
        return {a[0] * v.x + a[1] * v.y + a[2] * v.z,
                a[3] * v.x + a[4] * v.y + a[5] * v.z,
                a[6] * v.x + a[7] * v.y + a[8] * v.z};
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; i++)
            for (int j = 0; j < 3; j++) {
                double s = 0;
                for (int k = 0; k < 3; k++) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }
    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; i++)
            for (int j = 0; j < 3; j++) r(i, j) = (*this)(j, i);
        return r;
    }

    double det() const {
        return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
               a[2] * (a[3] * a[7] - a[4] * a[6]);
    }

    Mat3 inverse() const {
        double d = det();
        if (d == 0.0) throw NumericError("Mat3::inverse: singular matrix");
        Mat3 r;
        r.a[0] = (a[4] * a[8] - a[5] * a[7]) / d;
        r.a[1] = (a[2] * a[7] - a[1] * a[8]) / d;
        r.a[2] = (a[1] * a[5] - a[2] * a[4]) / d;
        r.a[3] = (a[5] * a[6] - a[3] * a[8]) / d;
        r.a[4] = (a[0] * a[8] - a[2] * a[6]) / d;
        r.a[5] = (a[2] * a[3] - a[0] * a[5]) / d;
        r.a[6] = (a[3] * a[7] - a[4] * a[6]) / d;
        r.a[7] = (a[1] * a[6] - a[0] * a[7]) / d;
        r.a[8] = (a[0] * a[4] - a[1] * a[3]) / d;
        return r;
    }

    Vec3 solve(const Vec3& b) const { return inverse() * b; }

    double frobenius() const {
        double s = 0;
        for (double v : a) s += v * v;
        return std::sqrt(s);
    }
};

// Eigenvalues of a symmetric 3x3, ascending. Cyclic Jacobi; converges to
// machine precision in a handful of sweeps.
inline std::array<double, 3> symmetric_eigenvalues(Mat3 m) {
    for (int sweep = 0; sweep < 32; sweep++) {
        double off = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2);
        if (off < 1e-300) break;
        for (int p = 0; p < 2; p++)
            for (int q = p + 1; q < 3; q++) {
                double apq = m(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (m(q, q) - m(p, p)) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                Mat3 r = m;
                for (int k = 0; k < 3; k++) {
                    r(p, k) = c * m(p, k) - s * m(q, k);
                    r(q, k) = s * m(p, k) + c * m(q, k);
                }
                Mat3 r2 = r;
                for (int k = 0; k < 3; k++) {
                    r2(k, p) = c * r(k, p) - s * r(k, q);
                    r2(k, q) = s * r(k, p) + c * r(k, q);
                }
                m = r2;
            }
    }
    std::array<double, 3> ev = {m(0, 0), m(1, 1), m(2, 2)};
    if (ev[0] > ev[1]) std::swap(ev[0], ev[1]);
    if (ev[1] > ev[2]) std::swap(ev[1], ev[2]);
    if (ev[0] > ev[1]) std::swap(ev[0], ev[1]);
    return ev;
}

// Spectral (operator 2-) norm of a general 3x3.
inline double spectral_norm(const Mat3& m) {
    Mat3 mtm = m.transposed() * m;
    auto ev = symmetric_eigenvalues(mtm);
    double l = std::max(ev[2], 0.0);
    return std::sqrt(l);
}

inline double condition_number_sym(const Mat3& m) {
    auto ev = symmetric_eigenvalues(m);
    double lo = std::min({std::abs(ev[0]), std::abs(ev[1]), std::abs(ev[2])});
    double hi = std::max({std::abs(ev[0]), std::abs(ev[1]), std::abs(ev[2])});
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

} // namespace barytree
