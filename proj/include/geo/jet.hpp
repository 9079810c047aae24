#pragma once
#include <cmath>

namespace geo {

// Second-order truncated Taylor value in two directions (u, v):
// value, first partials d/du, d/dv, and second partials d2/du2, d2/dudv, d2/dv2.
// Arithmetic propagates all six coefficients exactly.
struct Jet2 {
    double val = 0.0;
    double du = 0.0, dv = 0.0;
    double duu = 0.0, duv = 0.0, dvv = 0.0;

    static Jet2 constant(double c) { return {c, 0, 0, 0, 0, 0}; }
    // Seed for the first independent variable at value x.
    static Jet2 var_u(double x) { return {x, 1, 0, 0, 0, 0}; }
    // Seed for the second independent variable at value x.
    static Jet2 var_v(double x) { return {x, 0, 1, 0, 0, 0}; }

    Jet2 operator-() const { return {-val, -du, -dv, -duu, -duv, -dvv}; }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.val + b.val, a.du + b.du, a.dv + b.dv,
            a.duu + b.duu, a.duv + b.duv, a.dvv + b.dvv};
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.val - b.val, a.du - b.du, a.dv - b.dv,
            a.duu - b.duu, a.duv - b.duv, a.dvv - b.dvv};
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.val * b.val,
            a.du * b.val + a.val * b.du,
            a.dv * b.val + a.val * b.dv,
            a.duu * b.val + 2.0 * a.du * b.du + a.val * b.duu,
            a.duv * b.val + a.du * b.dv + a.dv * b.du + a.val * b.duv,
            a.dvv * b.val + 2.0 * a.dv * b.dv + a.val * b.dvv};
}

inline Jet2 operator*(double s, const Jet2& a) {
    return {s * a.val, s * a.du, s * a.dv, s * a.duu, s * a.duv, s * a.dvv};
}
inline Jet2 operator*(const Jet2& a, double s) { return s * a; }
inline Jet2 operator+(const Jet2& a, double s) { Jet2 r = a; r.val += s; return r; }
inline Jet2 operator+(double s, const Jet2& a) { return a + s; }
inline Jet2 operator-(const Jet2& a, double s) { Jet2 r = a; r.val -= s; return r; }
inline Jet2 operator-(double s, const Jet2& a) { return Jet2::constant(s) - a; }

// Chain rule through a scalar function given f(g), f'(g), f''(g).
inline Jet2 chain(const Jet2& g, double f, double fp, double fpp) {
    return {f,
            fp * g.du,
            fp * g.dv,
            fpp * g.du * g.du + fp * g.duu,
            fpp * g.du * g.dv + fp * g.duv,
            fpp * g.dv * g.dv + fp * g.dvv};
}

inline Jet2 inv(const Jet2& a) {
    double w = 1.0 / a.val;
    return chain(a, w, -w * w, 2.0 * w * w * w);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inv(b); }
inline Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }
inline Jet2 operator/(double s, const Jet2& a) { return s * inv(a); }

inline Jet2 sin(const Jet2& a) { return chain(a, std::sin(a.val), std::cos(a.val), -std::sin(a.val)); }
inline Jet2 cos(const Jet2& a) { return chain(a, std::cos(a.val), -std::sin(a.val), -std::cos(a.val)); }
inline Jet2 tan(const Jet2& a) {
    double t = std::tan(a.val), s = 1.0 + t * t;
    return chain(a, t, s, 2.0 * t * s);
}
inline Jet2 sinh(const Jet2& a) { return chain(a, std::sinh(a.val), std::cosh(a.val), std::sinh(a.val)); }
inline Jet2 cosh(const Jet2& a) { return chain(a, std::cosh(a.val), std::sinh(a.val), std::cosh(a.val)); }
inline Jet2 tanh(const Jet2& a) {
    double t = std::tanh(a.val), s = 1.0 - t * t;
    return chain(a, t, s, -2.0 * t * s);
}
inline Jet2 exp(const Jet2& a) {
    double e = std::exp(a.val);
    return chain(a, e, e, e);
}
inline Jet2 log(const Jet2& a) {
    double w = 1.0 / a.val;
    return chain(a, std::log(a.val), w, -w * w);
}
inline Jet2 sqrt(const Jet2& a) {
    double r = std::sqrt(a.val);
    return chain(a, r, 0.5 / r, -0.25 / (r * a.val));
}

} // namespace geo
