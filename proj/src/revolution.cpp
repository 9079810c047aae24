#include "geo/revolution.hpp"

#include <cmath>
#include <functional>

#include "geo/quadrature.hpp"

namespace geo {

double vprime_from_first_integral(double E, double F, double G, double c1, int branch) {
    double gm = G - c1 * c1;
    double disc = 4.0 * F * F * gm * gm - 4.0 * G * gm * (F * F - E * c1 * c1);
    if (disc < 0)
        throw DomainError("c1 infeasible at this point (negative discriminant)");
    double denom = 2.0 * G * gm;
    if (denom == 0.0)
        throw TurningPointError("turning point: G(G - c1^2) = 0");
    return (2.0 * F * (c1 * c1 - G) + (branch >= 0 ? 1.0 : -1.0) * std::sqrt(disc)) / denom;
}

namespace {

// Accumulates the quadrature over a uniform output grid; subintervals touching
// a flagged endpoint go through the (x - x0)^(-1/2) substitution.
QuadratureResult accumulate(const std::function<double(double)>& integrand,
                            double t1, double t2, double c1,
                            bool singular_start, bool singular_end,
                            const QuadOptions& opts) {
    QuadratureResult r;
    r.c1 = c1;
    r.singular_start = singular_start;
    r.singular_end = singular_end;
    std::size_t n = std::max<std::size_t>(opts.samples, 2);
    r.t.resize(n);
    r.val.resize(n);
    QuadratureOptions qo;
    qo.tol = opts.tol;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ti = t1 + (t2 - t1) * static_cast<double>(i) / static_cast<double>(n - 1);
        if (i + 1 == n) ti = t2;
        r.t[i] = ti;
        if (i > 0) {
            bool sa = singular_start && i == 1;
            bool sb = singular_end && i + 1 == n;
            acc += integrate_gk15_endpoint_singular(integrand, r.t[i - 1], ti, sa, sb, qo);
        }
        r.val[i] = acc;
    }
    return r;
}

constexpr double kSingularEps = 1e-9;

} // namespace

QuadratureResult geodesic_quadrature_u(const Expr& E, const Expr& G, double u1, double u2,
                                       double c1, const QuadOptions& opts) {
    auto Ev = [&](double u) { return E.eval({u}); };
    auto Gv = [&](double u) { return G.eval({u}); };
    double c2 = c1 * c1;

    if (c1 == 0.0) {
        QuadratureResult r = accumulate([](double) { return 0.0; }, u1, u2, c1, false, false, opts);
        return r;
    }

    bool sa = std::fabs(Gv(u1) - c2) <= kSingularEps * std::max(1.0, c2);
    bool sb = std::fabs(Gv(u2) - c2) <= kSingularEps * std::max(1.0, c2);
    // Interior feasibility: G - c1^2 must stay positive between the endpoints.
    for (int k = 1; k < 64; ++k) {
        double u = u1 + (u2 - u1) * k / 64.0;
        if (Gv(u) - c2 <= 0)
            throw DomainError("c1 infeasible: G - c1^2 <= 0 in the interior");
    }

    auto integrand = [&](double u) {
        double e = Ev(u), g = Gv(u);
        double rad = g * (g - c2);
        if (rad <= 0) rad = std::max(rad, 0.0);
        return c1 * std::sqrt(e / rad);
    };
    return accumulate(integrand, u1, u2, c1, sa, sb, opts);
}

QuadratureResult geodesic_quadrature_v(const Expr& E, const Expr& G, double v1, double v2,
                                       double c1, const QuadOptions& opts) {
    auto Ev = [&](double v) { return E.eval({v}); };
    auto Gv = [&](double v) { return G.eval({v}); };
    double c2 = c1 * c1;

    if (c1 == 0.0)
        return accumulate([](double) { return 0.0; }, v1, v2, c1, false, false, opts);

    bool sa = std::fabs(Ev(v1) - c2) <= kSingularEps * std::max(1.0, c2);
    bool sb = std::fabs(Ev(v2) - c2) <= kSingularEps * std::max(1.0, c2);
    for (int k = 1; k < 64; ++k) {
        double v = v1 + (v2 - v1) * k / 64.0;
        if (Ev(v) - c2 <= 0)
            throw DomainError("c1 infeasible: E - c1^2 <= 0 in the interior");
    }

    auto integrand = [&](double v) {
        double e = Ev(v), g = Gv(v);
        double rad = e * (e - c2);
        if (rad <= 0) rad = std::max(rad, 0.0);
        return c1 * std::sqrt(g / rad);
    };
    return accumulate(integrand, v1, v2, c1, sa, sb, opts);
}

QuadratureResult geodesic_revolution(const Expr& f, double u1, double u2, double c1,
                                     const QuadOptions& opts) {
    auto fj = [&](double u) { return f.eval_jet({Jet2::var_u(u)}); };
    double c2 = c1 * c1;

    if (c1 == 0.0)
        return accumulate([](double) { return 0.0; }, u1, u2, c1, false, false, opts);

    bool sa = std::fabs(fj(u1).val * fj(u1).val - c2) <= kSingularEps * std::max(1.0, c2);
    bool sb = std::fabs(fj(u2).val * fj(u2).val - c2) <= kSingularEps * std::max(1.0, c2);
    for (int k = 1; k < 64; ++k) {
        double u = u1 + (u2 - u1) * k / 64.0;
        double fv = fj(u).val;
        if (fv * fv - c2 <= 0)
            throw DomainError("geodesic cannot pass: f(u) <= |c1| in the interior");
    }

    auto integrand = [&](double u) {
        Jet2 j = fj(u);
        double fv = j.val, fp = j.du;
        double rad = fv * fv - c2;
        if (rad <= 0) rad = std::max(rad, 0.0);
        return c1 * std::sqrt(1.0 + fp * fp) / (fv * std::sqrt(rad));
    };
    return accumulate(integrand, u1, u2, c1, sa, sb, opts);
}

double solve_c1_for_target(const Expr& f, double u1, double u2, double v_target,
                           double tol) {
    if (v_target == 0.0) return 0.0;
    double sign = v_target > 0 ? 1.0 : -1.0;
    double target = std::fabs(v_target);

    double fmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 256; ++k) {
        double u = u1 + (u2 - u1) * k / 256.0;
        fmin = std::min(fmin, f.eval({u}));
    }
    if (!(fmin > 0)) throw DomainError("profile must be positive on the interval");

    QuadOptions qo;
    qo.samples = 2; // endpoint value only
    auto vend = [&](double c1) {
        return geodesic_revolution(f, u1, u2, c1, qo).val.back();
    };

    double lo = 0.0, hi = fmin * (1.0 - 1e-9);
    // v(u2) grows monotonically in c1 and diverges as c1 -> min f.
    double vhi;
    for (;;) {
        try {
            vhi = vend(hi);
        } catch (const std::runtime_error&) {
            hi = lo + 0.5 * (hi - lo);
            continue;
        }
        break;
    }
    if (vhi < target)
        throw DomainError("target angle unreachable on this interval");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double v = vend(mid);
        if (std::fabs(v - target) < tol) return sign * mid;
        (v < target ? lo : hi) = mid;
        if (hi - lo < 1e-15) break;
    }
    return sign * 0.5 * (lo + hi);
}

} // namespace geo
