#include "geo/geodesic.hpp"

#include <algorithm>
#include <cmath>

#include "geo/ode.hpp"

namespace geo {

double speed(const SurfaceSpec& s, const GeodesicState& st) {
    FundamentalForm f = s.fundamental_form(st.u, st.v);
    double q = f.E * st.du * st.du + 2.0 * f.F * st.du * st.dv + f.G * st.dv * st.dv;
    if (!(q > 0)) throw SingularPointError("zero or negative squared speed");
    return std::sqrt(q);
}

std::array<double, 4> geodesic_rhs(const SurfaceSpec& s, const GeodesicState& st,
                                   double eps_reg) {
    FundamentalForm f = s.fundamental_form(st.u, st.v);
    double det = f.det();
    if (det <= eps_reg)
        throw SingularPointError("singular point: EG - F^2 = " + std::to_string(det));

    double du = st.du, dv = st.dv;
    double Edot = f.E_u * du + f.E_v * dv;
    double Fdot = f.F_u * du + f.F_v * dv;
    double Gdot = f.G_u * du + f.G_v * dv;

    // Euler-Lagrange system of the energy Lagrangian E u'^2 + 2F u'v' + G v'^2,
    // reduced to [E F; F G] (u'', v'')^T = rhs.
    double ru = 0.5 * (f.E_u * du * du + 2.0 * f.F_u * du * dv + f.G_u * dv * dv)
                - (Edot * du + Fdot * dv);
    double rv = 0.5 * (f.E_v * du * du + 2.0 * f.F_v * du * dv + f.G_v * dv * dv)
                - (Fdot * du + Gdot * dv);

    double au = (f.G * ru - f.F * rv) / det;
    double av = (f.E * rv - f.F * ru) / det;
    return {du, dv, au, av};
}

GeodesicState launch_state(const SurfaceSpec& s, double u, double v, double theta) {
    FundamentalForm f = s.fundamental_form(u, v);
    if (f.det() <= 1e-12) throw SingularPointError("cannot launch from a singular point");
    // Metric-orthonormal frame in the parameter plane: a1 along r_u,
    // a2 = Gram-Schmidt of the v direction against a1.
    double w = std::sqrt(f.G - f.F * f.F / f.E);
    double a1u = 1.0 / std::sqrt(f.E);
    double a2u = -f.F / (f.E * w), a2v = 1.0 / w;
    GeodesicState st;
    st.u = u;
    st.v = v;
    st.du = std::cos(theta) * a1u + std::sin(theta) * a2u;
    st.dv = std::sin(theta) * a2v;
    return st;
}

namespace {

GeodesicState normalize_unit_speed(const SurfaceSpec& s, GeodesicState st) {
    double sp = speed(s, st);
    st.du /= sp;
    st.dv /= sp;
    return st;
}

OdeRhs make_rhs(const SurfaceSpec& s) {
    return [&s](double, const OdeState& y) -> OdeState {
        GeodesicState st{0, y[0], y[1], y[2], y[3]};
        return geodesic_rhs(s, st);
    };
}

GeodesicState to_state(double t, const OdeState& y) { return {t, y[0], y[1], y[2], y[3]}; }

} // namespace

GeodesicCurve curve_from_states(const SurfaceSpec& s, const std::vector<GeodesicState>& states) {
    GeodesicCurve c;
    c.states = states;
    c.points.reserve(states.size());
    c.s.reserve(states.size());
    double acc = 0.0, prev_speed = 0.0, prev_t = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const GeodesicState& st = states[i];
        c.points.push_back(s.eval_point(st.u, st.v));
        double sp = speed(s, st);
        if (i > 0) acc += 0.5 * (sp + prev_speed) * (st.t - prev_t);
        c.s.push_back(acc);
        prev_speed = sp;
        prev_t = st.t;
    }
    c.total_length = acc;
    return c;
}

GeodesicCurve integrate_geodesic(const SurfaceSpec& s, const GeodesicState& st0,
                                 double target_length, const IntegrateOptions& opts) {
    if (!(target_length > 0)) throw std::invalid_argument("target length must be positive");
    GeodesicState start = normalize_unit_speed(s, st0);
    start.t = 0.0;

    std::size_t nsamp = std::max<std::size_t>(
        opts.min_samples, static_cast<std::size_t>(std::ceil(target_length / opts.sample_spacing)));
    double ds = target_length / static_cast<double>(nsamp);

    GeodesicCurve c;
    std::vector<GeodesicState> states;
    states.push_back(start);

    OdeOptions oo;
    oo.rel_tol = opts.tol;
    oo.abs_tol = opts.abs_tol;
    OdeRhs rhs = make_rhs(s);
    OdeState y0 = {start.u, start.v, start.du, start.dv};

    std::size_t next = 1;
    bool exited = false;
    std::string note;
    try {
        integrate_dopri5(rhs, 0.0, y0, target_length, oo, [&](const OdeStepRecord& rec) {
            if (!s.in_domain(rec.y1[0], rec.y1[1])) {
                // Bisect inside the step for the boundary crossing.
                double lo = rec.t0, hi = rec.t1;
                for (int it = 0; it < 60; ++it) {
                    double mid = 0.5 * (lo + hi);
                    OdeState ym = hermite_interp(rec, mid);
                    (s.in_domain(ym[0], ym[1]) ? lo : hi) = mid;
                }
                while (next * ds < lo) {
                    states.push_back(to_state(next * ds, hermite_interp(rec, next * ds)));
                    ++next;
                }
                states.push_back(to_state(lo, hermite_interp(rec, lo)));
                exited = true;
                note = "domain exit at arc length " + std::to_string(lo);
                return false;
            }
            while (next <= nsamp && next * ds <= rec.t1 + 1e-12 * target_length) {
                double t = std::min(next * ds, rec.t1);
                states.push_back(to_state(t, hermite_interp(rec, t)));
                ++next;
            }
            return true;
        });
    } catch (const SingularPointError& e) {
        exited = true;
        note = std::string("singular point encountered: ") + e.what();
    } catch (const OdeStepUnderflow& e) {
        exited = true;
        note = e.what();
    }

    c = curve_from_states(s, states);
    // Arc length equals the affine parameter along a unit-speed solution.
    for (std::size_t i = 0; i < c.s.size(); ++i) c.s[i] = c.states[i].t;
    c.total_length = c.states.empty() ? 0.0 : c.states.back().t;
    c.complete = !exited;
    c.note = note;
    return c;
}

namespace {

struct Endpoint {
    GeodesicState state;
    Vec3 point;
    bool ok = false;
};

Endpoint integrate_endpoint(const SurfaceSpec& s, const GeodesicState& start, double length,
                            double rel_tol) {
    Endpoint ep;
    if (length <= 0) {
        ep.state = start;
        ep.point = s.eval_point(start.u, start.v);
        ep.ok = true;
        return ep;
    }
    OdeOptions oo;
    oo.rel_tol = rel_tol;
    oo.abs_tol = 1e-13;
    OdeRhs rhs = make_rhs(s);
    OdeState y0 = {start.u, start.v, start.du, start.dv};
    OdeState yend = y0;
    double tend = 0.0;
    try {
        integrate_dopri5(rhs, 0.0, y0, length, oo, [&](const OdeStepRecord& rec) {
            if (!s.in_domain(rec.y1[0], rec.y1[1])) return false;
            yend = rec.y1;
            tend = rec.t1;
            return true;
        });
    } catch (const std::runtime_error&) {
        return ep;
    }
    if (std::abs(tend - length) > 1e-9 * std::max(1.0, length)) return ep;
    ep.state = to_state(tend, yend);
    ep.point = s.eval_point(yend[0], yend[1]);
    ep.ok = true;
    return ep;
}

} // namespace

ConnectResult connect_geodesic(const SurfaceSpec& s, double u0, double v0,
                               double u1, double v1, const ConnectOptions& opts) {
    ConnectResult out;
    Vec3 P0 = s.eval_point(u0, v0);
    Vec3 P1 = s.eval_point(u1, v1);
    double chord = (P1 - P0).norm();

    if (chord < 1e-15 && u0 == u1 && v0 == v1) {
        GeodesicState st{0, u0, v0, 0, 0};
        out.curve.states = {st};
        out.curve.points = {P0};
        out.curve.s = {0.0};
        out.curve.total_length = 0.0;
        out.converged = true;
        return out;
    }

    double cap = std::max(4.0 * chord, 1e-3);
    double fine_tol = std::min(opts.tol * 0.1, 1e-9);

    // Coarse scan over launch angles: integrate to the cap, track the closest
    // approach to the target.
    struct Scan {
        double theta, miss, length;
    };
    std::vector<Scan> scans;
    OdeRhs rhs = make_rhs(s);
    for (std::size_t k = 0; k < opts.seeds; ++k) {
        double theta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(opts.seeds);
        Scan sc{theta, std::numeric_limits<double>::infinity(), 0.0};
        try {
            GeodesicState start = launch_state(s, u0, v0, theta);
            OdeOptions oo;
            oo.rel_tol = 1e-6;
            oo.abs_tol = 1e-9;
            OdeState y0 = {start.u, start.v, start.du, start.dv};
            double sample_ds = cap / 512.0;
            double next = 0.0;
            integrate_dopri5(rhs, 0.0, y0, cap, oo, [&](const OdeStepRecord& rec) {
                if (!s.in_domain(rec.y1[0], rec.y1[1])) return false;
                while (next <= rec.t1) {
                    OdeState ys = hermite_interp(rec, next);
                    double d = (s.eval_point(ys[0], ys[1]) - P1).norm();
                    if (d < sc.miss) {
                        sc.miss = d;
                        sc.length = next;
                    }
                    next += sample_ds;
                }
                return true;
            });
        } catch (const std::runtime_error&) {
            // seed failed (singular point etc.); keep infinite miss
        }
        scans.push_back(sc);
        out.seed_reports.push_back({sc.theta, sc.miss, sc.length, false});
    }

    // Candidates: cyclic local minima of the miss over theta.
    std::vector<std::size_t> cands;
    std::size_t ns = scans.size();
    for (std::size_t k = 0; k < ns; ++k) {
        double m = scans[k].miss;
        if (!std::isfinite(m)) continue;
        double prev = scans[(k + ns - 1) % ns].miss;
        double nextm = scans[(k + 1) % ns].miss;
        if (m <= prev && m <= nextm) cands.push_back(k);
    }
    std::sort(cands.begin(), cands.end(),
              [&](std::size_t a, std::size_t b) { return scans[a].miss < scans[b].miss; });
    if (cands.size() > 4) cands.resize(4);

    struct Converged {
        double theta, length, miss;
        bool ill = false;
    };
    std::vector<Converged> hits;

    for (std::size_t ci : cands) {
        double theta = scans[ci].theta;
        double length = std::max(scans[ci].length, 1e-6);
        bool ill = false;
        double miss = scans[ci].miss;
        bool ok = false;

        for (std::size_t iter = 0; iter < opts.max_iter; ++iter) {
            Endpoint base;
            try {
                base = integrate_endpoint(s, launch_state(s, u0, v0, theta), length, fine_tol);
            } catch (const std::runtime_error&) {
                break;
            }
            if (!base.ok) break;
            Vec3 r = base.point - P1;
            miss = r.norm();
            if (miss < opts.tol) {
                ok = true;
                break;
            }
            // Finite-difference Jacobian of the endpoint w.r.t. (theta, length).
            const double dstep = 1e-7;
            Endpoint et, el;
            try {
                et = integrate_endpoint(s, launch_state(s, u0, v0, theta + dstep), length, fine_tol);
                el = integrate_endpoint(s, launch_state(s, u0, v0, theta), length + dstep, fine_tol);
            } catch (const std::runtime_error&) {
                break;
            }
            if (!et.ok || !el.ok) break;
            Vec3 jt = (et.point - base.point) / dstep;
            Vec3 jl = (el.point - base.point) / dstep;

            // Gauss-Newton step from the 2x2 normal equations.
            double a11 = jt.dot(jt), a12 = jt.dot(jl), a22 = jl.dot(jl);
            double g1 = jt.dot(r), g2 = jl.dot(r);
            double det = a11 * a22 - a12 * a12;
            double tr = a11 + a22;
            double sigma_min_sq = 0.5 * (tr - std::sqrt(std::max(tr * tr - 4.0 * det, 0.0)));
            if (std::sqrt(std::max(sigma_min_sq, 0.0)) < 1e-6) ill = true;
            if (det <= 1e-30) break;
            double dtheta = -(a22 * g1 - a12 * g2) / det;
            double dlen = -(a11 * g2 - a12 * g1) / det;

            double step_scale = 1.0;
            bool improved = false;
            for (int ls = 0; ls < 30; ++ls) {
                double th2 = theta + step_scale * dtheta;
                double ln2 = std::clamp(length + step_scale * dlen, 1e-8, 1.5 * cap);
                Endpoint trial;
                try {
                    trial = integrate_endpoint(s, launch_state(s, u0, v0, th2), ln2, fine_tol);
                } catch (const std::runtime_error&) {
                    trial.ok = false;
                }
                if (trial.ok && (trial.point - P1).norm() < miss) {
                    theta = th2;
                    length = ln2;
                    improved = true;
                    break;
                }
                step_scale *= 0.5;
            }
            if (!improved) break;
        }

        // Re-check with the final parameters.
        if (!ok) {
            try {
                Endpoint fin = integrate_endpoint(s, launch_state(s, u0, v0, theta), length, fine_tol);
                if (fin.ok) {
                    miss = (fin.point - P1).norm();
                    ok = miss < opts.tol;
                }
            } catch (const std::runtime_error&) {
            }
        }
        out.seed_reports[ci].miss = miss;
        out.seed_reports[ci].length = length;
        out.seed_reports[ci].converged = ok;
        if (ok) {
            bool dup = false;
            for (const Converged& h : hits)
                if (std::abs(h.length - length) < 1e-6 * std::max(1.0, h.length)) dup = true;
            if (!dup) hits.push_back({theta, length, miss, ill});
        }
    }

    if (hits.empty()) {
        out.converged = false;
        out.miss = scans.empty() ? std::numeric_limits<double>::infinity()
                                 : std::min_element(scans.begin(), scans.end(),
                                                    [](const Scan& a, const Scan& b) {
                                                        return a.miss < b.miss;
                                                    })->miss;
        return out;
    }

    std::sort(hits.begin(), hits.end(),
              [](const Converged& a, const Converged& b) { return a.length < b.length; });
    const Converged& best = hits.front();
    for (std::size_t i = 1; i < hits.size(); ++i) out.alternative_lengths.push_back(hits[i].length);

    IntegrateOptions io;
    io.tol = fine_tol;
    out.curve = integrate_geodesic(s, launch_state(s, u0, v0, best.theta), best.length, io);
    out.converged = true;
    out.miss = best.miss;
    out.theta = best.theta;
    out.ill_conditioned = best.ill;
    return out;
}

namespace {

// First derivative at t[i] from the 5 nearest samples (arbitrary spacing),
// via Fornberg's finite-difference weights. Fourth-order on smooth data.
double deriv_at(const std::vector<double>& t, const std::vector<double>& f, std::size_t i) {
    std::size_t m = t.size();
    const std::size_t w = std::min<std::size_t>(5, m);
    std::size_t lo = (i >= 2) ? i - 2 : 0;
    if (lo + w > m) lo = m - w;

    // Fornberg weights for the first derivative at x0 = t[i] over nodes
    // t[lo..lo+w-1] (B. Fornberg, Math. Comp. 51, 1988).
    const double x0 = t[i];
    double c[5][2] = {};
    c[0][0] = 1.0;
    double c1 = 1.0;
    for (std::size_t n = 1; n < w; ++n) {
        double c2 = 1.0;
        double xn = t[lo + n];
        for (std::size_t j = 0; j < n; ++j) {
            double c3 = xn - t[lo + j];
            c2 *= c3;
            if (j == n - 1) {
                double xp = t[lo + n - 1];
                c[n][1] = c1 * (c[n - 1][0] - (xp - x0) * c[n - 1][1]) / c2;
                c[n][0] = -c1 * (xp - x0) * c[n - 1][0] / c2;
            }
            c[j][1] = ((xn - x0) * c[j][1] - c[j][0]) / c3;
            c[j][0] = (xn - x0) * c[j][0] / c3;
        }
        c1 = c2;
    }
    double d = 0.0;
    for (std::size_t j = 0; j < w; ++j) d += c[j][1] * f[lo + j];
    return d;
}

} // namespace

ResidualPair el_residual_geodesic(const SurfaceSpec& s, const GeodesicCurve& c) {
    std::size_t m = c.states.size();
    if (m < 5) throw std::invalid_argument("el_residual_geodesic needs at least 5 samples");

    std::vector<double> ts(m), qu(m), qv(m), lhs_u(m), lhs_v(m);
    for (std::size_t i = 0; i < m; ++i) {
        const GeodesicState& st = c.states[i];
        FundamentalForm f = s.fundamental_form(st.u, st.v);
        if (f.det() <= 1e-12) throw SingularPointError("singular sample in residual evaluation");
        double du = st.du, dv = st.dv;
        double Q = f.E * du * du + 2.0 * f.F * du * dv + f.G * dv * dv;
        double sq = std::sqrt(Q);
        ts[i] = st.t;
        // The two equations as printed: metric-partial quotient minus d/dt of
        // the doubled momentum quotient.
        lhs_u[i] = (f.E_u * du * du + 2.0 * f.F_u * du * dv + f.G_u * dv * dv) / sq;
        lhs_v[i] = (f.E_v * du * du + 2.0 * f.F_v * du * dv + f.G_v * dv * dv) / sq;
        qu[i] = 2.0 * (f.E * du + f.F * dv) / sq;
        qv[i] = 2.0 * (f.F * du + f.G * dv) / sq;
    }

    ResidualPair r;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        double ru = lhs_u[i] - deriv_at(ts, qu, i);
        double rv = lhs_v[i] - deriv_at(ts, qv, i);
        r.eq_u = std::max(r.eq_u, std::fabs(ru));
        r.eq_v = std::max(r.eq_v, std::fabs(rv));
    }
    return r;
}

} // namespace geo
