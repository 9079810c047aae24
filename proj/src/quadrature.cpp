#include "geo/quadrature.hpp"

#include <cmath>

namespace geo {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkResult {
    double kronrod;
    double err;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    double fc = f(c);
    double resk = wgk[7] * fc;
    double resg = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double fa = f(c - hl * xgk[j]);
        double fb = f(c + hl * xgk[j]);
        resk += wgk[j] * (fa + fb);
        if (j % 2 == 1) resg += wg[j / 2] * (fa + fb);
    }
    resk *= hl;
    resg *= hl;
    return {resk, std::fabs(resk - resg)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth,
             int max_depth) {
    GkResult r = gk15(f, a, b);
    if (!std::isfinite(r.kronrod))
        throw QuadratureError("non-finite integrand value in quadrature");
    if (r.err <= tol || depth >= max_depth) {
        if (r.err > tol)
            throw QuadratureError("quadrature failed to converge (max depth reached)");
        return r.kronrod;
    }
    double m = 0.5 * (a + b);
    return adapt(f, a, m, 0.5 * tol, depth + 1, max_depth) +
           adapt(f, m, b, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double integrate_gk15(const std::function<double(double)>& f, double a, double b,
                      const QuadratureOptions& opts) {
    if (a == b) return 0.0;
    double sign = 1.0;
    double lo = a, hi = b;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }
    return sign * adapt(f, lo, hi, opts.tol, 0, opts.max_depth);
}

double integrate_gk15_endpoint_singular(const std::function<double(double)>& f,
                                        double a, double b,
                                        bool singular_at_a, bool singular_at_b,
                                        const QuadratureOptions& opts) {
    if (a == b) return 0.0;
    if (singular_at_a && singular_at_b) {
        double m = 0.5 * (a + b);
        return integrate_gk15_endpoint_singular(f, a, m, true, false, opts) +
               integrate_gk15_endpoint_singular(f, m, b, false, true, opts);
    }
    if (singular_at_a) {
        // x = a + s^2 regularizes a (x-a)^(-1/2) endpoint singularity.
        double smax = std::sqrt(b - a);
        auto g = [&](double s) { return f(a + s * s) * 2.0 * s; };
        return integrate_gk15(g, 0.0, smax, opts);
    }
    if (singular_at_b) {
        double smax = std::sqrt(b - a);
        auto g = [&](double s) { return f(b - s * s) * 2.0 * s; };
        return integrate_gk15(g, 0.0, smax, opts);
    }
    return integrate_gk15(f, a, b, opts);
}

} // namespace geo
