#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>

namespace frontlab {

/// Small ambient vector, dimension 2..4 fixed at runtime.
/// Unused trailing components are kept at zero so that plain
/// componentwise arithmetic is always safe.
struct Vec {
    std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};
    int n = 3;

    Vec() = default;
    Vec(double x, double y) : c{x, y, 0.0, 0.0}, n(2) {}
    Vec(double x, double y, double z) : c{x, y, z, 0.0}, n(3) {}
    Vec(double x, double y, double z, double w) : c{x, y, z, w}, n(4) {}
    static Vec zero(int dim) {
        Vec v;
        v.n = dim;
        return v;
    }

    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < 4; ++i) c[i] += o.c[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < 4; ++i) c[i] -= o.c[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (auto& x : c) x *= s;
        return *this;
    }
};

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(double s, Vec a) { return a *= s; }
inline Vec operator*(Vec a, double s) { return a *= s; }
inline Vec operator/(Vec a, double s) { return a *= (1.0 / s); }
inline Vec operator-(Vec a) { return a *= -1.0; }

/// Euclidean dot product (all dimensions).
inline double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (int i = 0; i < 4; ++i) s += a.c[i] * b.c[i];
    return s;
}

/// Lorentzian product diag(-1,1,1,1), used for the H^3 \subset L^4 model.
inline double dot_lorentz(const Vec& a, const Vec& b) {
    return -a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2] + a.c[3] * b.c[3];
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec normalized(const Vec& a) {
    double m = norm(a);
    Vec r = a;
    return r *= (1.0 / m);
}

inline Vec cross3(const Vec& a, const Vec& b) {
    Vec r(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
    return r;
}

inline double det2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

inline double det3(const Vec& a, const Vec& b, const Vec& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

inline double det4(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
    double det = 0.0;
    // expand along the first row
    for (int j = 0; j < 4; ++j) {
        double m[3][3];
        int cc = 0;
        for (int col = 0; col < 4; ++col) {
            if (col == j) continue;
            m[0][cc] = b.c[col];
            m[1][cc] = c.c[col];
            m[2][cc] = d.c[col];
            ++cc;
        }
        double minor = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        det += ((j % 2 == 0) ? 1.0 : -1.0) * a.c[j] * minor;
    }
    return det;
}

/// Generalized cross product in R^4: the unique vector orthogonal to a,b,c
/// with det(a,b,c,cross4(a,b,c)) >= 0 scaling as the parallelepiped volume.
inline Vec cross4(const Vec& a, const Vec& b, const Vec& c) {
    Vec r = Vec::zero(4);
    Vec e = Vec::zero(4);
    for (int i = 0; i < 4; ++i) {
        e = Vec::zero(4);
        e.c[i] = 1.0;
        r.c[i] = det4(a, b, c, e);
    }
    return r;
}

/// 2D domain point / tangent vector.
struct Point2 {
    double u = 0, v = 0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.u + b.u, a.v + b.v}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.u - b.u, a.v - b.v}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.u, s * a.v}; }
inline double dot(Point2 a, Point2 b) { return a.u * b.u + a.v * b.v; }
inline double det2(Point2 a, Point2 b) { return a.u * b.v - a.v * b.u; }
inline double norm(Point2 a) { return std::hypot(a.u, a.v); }

/// Symmetric 2x2 matrix in (u,v) coordinates.
struct Mat2 {
    // [[a, b], [c, d]] row-major
    double a = 0, b = 0, c = 0, d = 0;
    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
};

}  // namespace frontlab
