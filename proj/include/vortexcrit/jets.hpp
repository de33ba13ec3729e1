#pragma once

#include <array>
#include <cmath>

namespace vortexcrit {

// Forward-mode differentiation scalars. Jet2 carries value, gradient and
// Hessian with respect to the three spatial coordinates; Dual1 carries value
// and one directional derivative. Both are exact (no truncation error).

struct Dual1 {
    double v = 0.0;  // value
    double d = 0.0;  // derivative along the seeded direction

    Dual1() = default;
    Dual1(double value) : v(value) {}  // constants have zero derivative
    Dual1(double value, double deriv) : v(value), d(deriv) {}
};

inline Dual1 operator-(const Dual1& a) { return {-a.v, -a.d}; }
inline Dual1 operator+(const Dual1& a, const Dual1& b) { return {a.v + b.v, a.d + b.d}; }
inline Dual1 operator-(const Dual1& a, const Dual1& b) { return {a.v - b.v, a.d - b.d}; }
inline Dual1 operator*(const Dual1& a, const Dual1& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
}
inline Dual1 operator/(const Dual1& a, const Dual1& b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

inline Dual1 chain(const Dual1& a, double f, double f1) { return {f, f1 * a.d}; }

inline Dual1 sin(const Dual1& a) { return chain(a, std::sin(a.v), std::cos(a.v)); }
inline Dual1 cos(const Dual1& a) { return chain(a, std::cos(a.v), -std::sin(a.v)); }
inline Dual1 tan(const Dual1& a) {
    double t = std::tan(a.v);
    return chain(a, t, 1.0 + t * t);
}
inline Dual1 sinh(const Dual1& a) { return chain(a, std::sinh(a.v), std::cosh(a.v)); }
inline Dual1 cosh(const Dual1& a) { return chain(a, std::cosh(a.v), std::sinh(a.v)); }
inline Dual1 tanh(const Dual1& a) {
    double t = std::tanh(a.v);
    return chain(a, t, 1.0 - t * t);
}
inline Dual1 exp(const Dual1& a) {
    double e = std::exp(a.v);
    return chain(a, e, e);
}
inline Dual1 log(const Dual1& a) { return chain(a, std::log(a.v), 1.0 / a.v); }
inline Dual1 sqrt(const Dual1& a) {
    double s = std::sqrt(a.v);
    return chain(a, s, 0.5 / s);
}
inline Dual1 pow_const(const Dual1& a, double p) {
    if (p == 0.0) return Dual1{1.0};
    if (p == 1.0) return a;
    return chain(a, std::pow(a.v, p), p * std::pow(a.v, p - 1.0));
}

/// Second-order jet in the three coordinates: value, gradient, Hessian.
struct Jet2 {
    double v = 0.0;
    std::array<double, 3> g{0.0, 0.0, 0.0};
    double h[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};  // symmetric by construction

    Jet2() = default;
    Jet2(double value) : v(value) {}

    static Jet2 variable(int axis, double value) {
        Jet2 j(value);
        j.g[axis] = 1.0;
        return j;
    }
};

inline Jet2 operator-(const Jet2& a) {
    Jet2 r(-a.v);
    for (int i = 0; i < 3; ++i) {
        r.g[i] = -a.g[i];
        for (int j = 0; j < 3; ++j) r.h[i][j] = -a.h[i][j];
    }
    return r;
}

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r(a.v + b.v);
    for (int i = 0; i < 3; ++i) {
        r.g[i] = a.g[i] + b.g[i];
        for (int j = 0; j < 3; ++j) r.h[i][j] = a.h[i][j] + b.h[i][j];
    }
    return r;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r(a.v - b.v);
    for (int i = 0; i < 3; ++i) {
        r.g[i] = a.g[i] - b.g[i];
        for (int j = 0; j < 3; ++j) r.h[i][j] = a.h[i][j] - b.h[i][j];
    }
    return r;
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r(a.v * b.v);
    for (int i = 0; i < 3; ++i) {
        r.g[i] = a.g[i] * b.v + a.v * b.g[i];
        for (int j = 0; j < 3; ++j)
            r.h[i][j] = a.h[i][j] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.h[i][j];
    }
    return r;
}

/// Composition with a scalar function given f(a.v), f'(a.v), f''(a.v).
inline Jet2 chain(const Jet2& a, double f, double f1, double f2) {
    Jet2 r(f);
    for (int i = 0; i < 3; ++i) {
        r.g[i] = f1 * a.g[i];
        for (int j = 0; j < 3; ++j) r.h[i][j] = f1 * a.h[i][j] + f2 * a.g[i] * a.g[j];
    }
    return r;
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
    double iv = 1.0 / b.v;
    return a * chain(b, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet2 sin(const Jet2& a) {
    double s = std::sin(a.v), c = std::cos(a.v);
    return chain(a, s, c, -s);
}
inline Jet2 cos(const Jet2& a) {
    double s = std::sin(a.v), c = std::cos(a.v);
    return chain(a, c, -s, -c);
}
inline Jet2 tan(const Jet2& a) {
    double t = std::tan(a.v), d = 1.0 + t * t;
    return chain(a, t, d, 2.0 * t * d);
}
inline Jet2 sinh(const Jet2& a) {
    double s = std::sinh(a.v), c = std::cosh(a.v);
    return chain(a, s, c, s);
}
inline Jet2 cosh(const Jet2& a) {
    double s = std::sinh(a.v), c = std::cosh(a.v);
    return chain(a, c, s, c);
}
inline Jet2 tanh(const Jet2& a) {
    double t = std::tanh(a.v), d = 1.0 - t * t;
    return chain(a, t, d, -2.0 * t * d);
}
inline Jet2 exp(const Jet2& a) {
    double e = std::exp(a.v);
    return chain(a, e, e, e);
}
inline Jet2 log(const Jet2& a) {
    double iv = 1.0 / a.v;
    return chain(a, std::log(a.v), iv, -iv * iv);
}
inline Jet2 sqrt(const Jet2& a) {
    double s = std::sqrt(a.v);
    return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet2 pow_const(const Jet2& a, double p) {
    if (p == 0.0) return Jet2{1.0};
    if (p == 1.0) return a;
    return chain(a, std::pow(a.v, p), p * std::pow(a.v, p - 1.0),
                 p * (p - 1.0) * std::pow(a.v, p - 2.0));
}

// Exact-match double overloads so generic evaluation code resolves cleanly
// (Jet2 and Dual1 are implicitly constructible from double).
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double tan(double x) { return std::tan(x); }
inline double sinh(double x) { return std::sinh(x); }
inline double cosh(double x) { return std::cosh(x); }
inline double tanh(double x) { return std::tanh(x); }
inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double pow_const(double a, double p) { return std::pow(a, p); }

inline bool is_finite(const Jet2& a) {
    if (!std::isfinite(a.v)) return false;
    for (int i = 0; i < 3; ++i) {
        if (!std::isfinite(a.g[i])) return false;
        for (int j = 0; j < 3; ++j)
            if (!std::isfinite(a.h[i][j])) return false;
    }
    return true;
}

inline bool is_finite(double a) { return std::isfinite(a); }

}  // namespace vortexcrit
