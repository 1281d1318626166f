#pragma once

#include <cmath>

namespace frontlab {

/// Truncated bivariate Taylor scalar carrying derivative values up to
/// order N (N = 2 or 3) in two variables (u, v).  Coefficients store the
/// actual partial derivatives, not Taylor coefficients, so extraction is
/// direct.  Supports the arithmetic and elementary functions needed by
/// the surface catalog.
template <int N>
struct TaylorScalar {
    static_assert(N == 2 || N == 3);

    double v = 0;                       // value
    double du = 0, dv = 0;              // first partials
    double duu = 0, duv = 0, dvv = 0;   // second partials
    double duuu = 0, duuv = 0, duvv = 0, dvvv = 0;  // third partials (N=3)

    TaylorScalar() = default;
    TaylorScalar(double c) : v(c) {}

    static TaylorScalar var_u(double u0) {
        TaylorScalar t(u0);
        t.du = 1;
        return t;
    }
    static TaylorScalar var_v(double v0) {
        TaylorScalar t(v0);
        t.dv = 1;
        return t;
    }
};

template <int N>
TaylorScalar<N> operator+(const TaylorScalar<N>& a, const TaylorScalar<N>& b) {
    TaylorScalar<N> r;
    r.v = a.v + b.v;
    r.du = a.du + b.du;
    r.dv = a.dv + b.dv;
    r.duu = a.duu + b.duu;
    r.duv = a.duv + b.duv;
    r.dvv = a.dvv + b.dvv;
    if constexpr (N == 3) {
        r.duuu = a.duuu + b.duuu;
        r.duuv = a.duuv + b.duuv;
        r.duvv = a.duvv + b.duvv;
        r.dvvv = a.dvvv + b.dvvv;
    }
    return r;
}

template <int N>
TaylorScalar<N> operator-(const TaylorScalar<N>& a, const TaylorScalar<N>& b) {
    TaylorScalar<N> r;
    r.v = a.v - b.v;
    r.du = a.du - b.du;
    r.dv = a.dv - b.dv;
    r.duu = a.duu - b.duu;
    r.duv = a.duv - b.duv;
    r.dvv = a.dvv - b.dvv;
    if constexpr (N == 3) {
        r.duuu = a.duuu - b.duuu;
        r.duuv = a.duuv - b.duuv;
        r.duvv = a.duvv - b.duvv;
        r.dvvv = a.dvvv - b.dvvv;
    }
    return r;
}

template <int N>
TaylorScalar<N> operator-(const TaylorScalar<N>& a) {
    return TaylorScalar<N>(0.0) - a;
}

template <int N>
TaylorScalar<N> operator*(const TaylorScalar<N>& a, const TaylorScalar<N>& b) {
    TaylorScalar<N> r;
    r.v = a.v * b.v;
    r.du = a.du * b.v + a.v * b.du;
    r.dv = a.dv * b.v + a.v * b.dv;
    r.duu = a.duu * b.v + 2 * a.du * b.du + a.v * b.duu;
    r.duv = a.duv * b.v + a.du * b.dv + a.dv * b.du + a.v * b.duv;
    r.dvv = a.dvv * b.v + 2 * a.dv * b.dv + a.v * b.dvv;
    if constexpr (N == 3) {
        r.duuu = a.duuu * b.v + 3 * a.duu * b.du + 3 * a.du * b.duu + a.v * b.duuu;
        r.duuv = a.duuv * b.v + a.duu * b.dv + 2 * a.duv * b.du + 2 * a.du * b.duv +
                 a.dv * b.duu + a.v * b.duuv;
        r.duvv = a.duvv * b.v + a.dvv * b.du + 2 * a.duv * b.dv + 2 * a.dv * b.duv +
                 a.du * b.dvv + a.v * b.duvv;
        r.dvvv = a.dvvv * b.v + 3 * a.dvv * b.dv + 3 * a.dv * b.dvv + a.v * b.dvvv;
    }
    return r;
}

template <int N>
TaylorScalar<N> operator*(double s, const TaylorScalar<N>& a) {
    return TaylorScalar<N>(s) * a;
}
template <int N>
TaylorScalar<N> operator*(const TaylorScalar<N>& a, double s) {
    return TaylorScalar<N>(s) * a;
}
template <int N>
TaylorScalar<N> operator+(double s, const TaylorScalar<N>& a) {
    return TaylorScalar<N>(s) + a;
}
template <int N>
TaylorScalar<N> operator+(const TaylorScalar<N>& a, double s) {
    return a + TaylorScalar<N>(s);
}
template <int N>
TaylorScalar<N> operator-(double s, const TaylorScalar<N>& a) {
    return TaylorScalar<N>(s) - a;
}
template <int N>
TaylorScalar<N> operator-(const TaylorScalar<N>& a, double s) {
    return a - TaylorScalar<N>(s);
}

/// Univariate chain rule: composes phi with the inner jet given the value
/// and first three derivatives of phi at the inner value.
template <int N>
TaylorScalar<N> compose(const TaylorScalar<N>& f, double p0, double p1, double p2, double p3) {
    TaylorScalar<N> r;
    r.v = p0;
    r.du = p1 * f.du;
    r.dv = p1 * f.dv;
    r.duu = p2 * f.du * f.du + p1 * f.duu;
    r.duv = p2 * f.du * f.dv + p1 * f.duv;
    r.dvv = p2 * f.dv * f.dv + p1 * f.dvv;
    if constexpr (N == 3) {
        r.duuu = p3 * f.du * f.du * f.du + 3 * p2 * f.du * f.duu + p1 * f.duuu;
        r.duuv = p3 * f.du * f.du * f.dv + p2 * (f.duu * f.dv + 2 * f.du * f.duv) + p1 * f.duuv;
        r.duvv = p3 * f.du * f.dv * f.dv + p2 * (f.dvv * f.du + 2 * f.dv * f.duv) + p1 * f.duvv;
        r.dvvv = p3 * f.dv * f.dv * f.dv + 3 * p2 * f.dv * f.dvv + p1 * f.dvvv;
    }
    return r;
}

template <int N>
TaylorScalar<N> sin(const TaylorScalar<N>& f) {
    double s = std::sin(f.v), c = std::cos(f.v);
    return compose(f, s, c, -s, -c);
}

template <int N>
TaylorScalar<N> cos(const TaylorScalar<N>& f) {
    double s = std::sin(f.v), c = std::cos(f.v);
    return compose(f, c, -s, -c, s);
}

template <int N>
TaylorScalar<N> exp(const TaylorScalar<N>& f) {
    double e = std::exp(f.v);
    return compose(f, e, e, e, e);
}

template <int N>
TaylorScalar<N> sqrt(const TaylorScalar<N>& f) {
    double s = std::sqrt(f.v);
    return compose(f, s, 0.5 / s, -0.25 / (s * f.v), 0.375 / (s * f.v * f.v));
}

template <int N>
TaylorScalar<N> recip(const TaylorScalar<N>& f) {
    double x = f.v;
    return compose(f, 1 / x, -1 / (x * x), 2 / (x * x * x), -6 / (x * x * x * x));
}

template <int N>
TaylorScalar<N> operator/(const TaylorScalar<N>& a, const TaylorScalar<N>& b) {
    return a * recip(b);
}
template <int N>
TaylorScalar<N> operator/(const TaylorScalar<N>& a, double s) {
    return a * (1.0 / s);
}
template <int N>
TaylorScalar<N> operator/(double s, const TaylorScalar<N>& a) {
    return s * recip(a);
}

/// Integer power by repeated multiplication.
template <int N>
TaylorScalar<N> powi(TaylorScalar<N> base, int k) {
    TaylorScalar<N> r(1.0);
    for (int i = 0; i < k; ++i) r = r * base;
    return r;
}

using T2 = TaylorScalar<2>;
using T3 = TaylorScalar<3>;

/// Order reduction: the u- and v-derivatives of an order-3 jet are
/// themselves order-2 jets.
inline T2 truncate(const T3& f) {
    T2 r;
    r.v = f.v;
    r.du = f.du;
    r.dv = f.dv;
    r.duu = f.duu;
    r.duv = f.duv;
    r.dvv = f.dvv;
    return r;
}

inline T2 d_du(const T3& f) {
    T2 r;
    r.v = f.du;
    r.du = f.duu;
    r.dv = f.duv;
    r.duu = f.duuu;
    r.duv = f.duuv;
    r.dvv = f.duvv;
    return r;
}

inline T2 d_dv(const T3& f) {
    T2 r;
    r.v = f.dv;
    r.du = f.duv;
    r.dv = f.dvv;
    r.duu = f.duuv;
    r.duv = f.duvv;
    r.dvv = f.dvvv;
    return r;
}

}  // namespace frontlab
