#include "geo/ode.hpp"

#include <algorithm>

namespace geo {

namespace {

// Dormand-Prince RK5(4)7M coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 4th-order weights (for the error estimate).
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;
// Dense-output weights for the fifth interpolation coefficient.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

OdeState axpy(const OdeState& y, double h, std::initializer_list<std::pair<double, const OdeState*>> terms) {
    OdeState r = y;
    for (auto& [a, k] : terms)
        for (int i = 0; i < 4; ++i) r[i] += h * a * (*k)[i];
    return r;
}

} // namespace

void integrate_dopri5(const OdeRhs& rhs, double t0, const OdeState& y0, double t1,
                      const OdeOptions& opts,
                      const std::function<bool(const OdeStepRecord&)>& on_step) {
    double t = t0;
    OdeState y = y0;
    OdeState k1 = rhs(t, y); // FSAL
    double dir = (t1 >= t0) ? 1.0 : -1.0;
    double h = dir * std::min(opts.h_init, std::abs(t1 - t0));

    for (std::size_t step = 0; step < opts.max_steps; ++step) {
        if (dir * (t - t1) >= 0) return;
        if (dir * (t + h - t1) > 0) h = t1 - t;

        OdeState k2 = rhs(t + c2 * h, axpy(y, h, {{a21, &k1}}));
        OdeState k3 = rhs(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        OdeState k4 = rhs(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        OdeState k5 = rhs(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        OdeState k6 = rhs(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        OdeState y5 = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        OdeState k7 = rhs(t + h, y5);
        OdeState y4 = axpy(y, h, {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &k7}});

        double err = 0.0;
        for (int i = 0; i < 4; ++i) {
            double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            double d = (y5[i] - y4[i]) / sc;
            err += d * d;
        }
        err = std::sqrt(err / 4.0);

        if (err <= 1.0) {
            OdeState rc5;
            for (int i = 0; i < 4; ++i)
                rc5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                              d6 * k6[i] + d7 * k7[i]);
            OdeStepRecord rec{t, t + h, y, y5, k1, k7, rc5};
            t += h;
            y = y5;
            k1 = k7;
            if (!on_step(rec)) return;
        }

        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (std::abs(h) < opts.h_min)
            throw OdeStepUnderflow("step size underflow in dopri5");
    }
    throw std::runtime_error("dopri5: max step count exceeded");
}

} // namespace geo
