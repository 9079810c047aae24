#pragma once
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace geo {

// Embedded Dormand-Prince 5(4) step with proportional step-size control.
// State dimension fixed at 4 (u, v, u', v').
struct OdeOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double h_init = 1e-3;
    double h_min = 1e-14;
    std::size_t max_steps = 1000000;
};

using OdeState = std::array<double, 4>;
using OdeRhs = std::function<OdeState(double, const OdeState&)>;

struct OdeStepRecord {
    double t0, t1;
    OdeState y0, y1;
    OdeState f0, f1; // derivatives at the step ends
    OdeState rc5;    // fifth dense-output coefficient (stage combination)
};

struct OdeStepUnderflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integrates from t0 to t1, invoking on_step for every accepted step.
// on_step may return false to stop early.
void integrate_dopri5(const OdeRhs& rhs, double t0, const OdeState& y0, double t1,
                      const OdeOptions& opts,
                      const std::function<bool(const OdeStepRecord&)>& on_step);

// Fifth-order dense output inside an accepted step (the standard
// Dormand-Prince continuous extension).
inline OdeState hermite_interp(const OdeStepRecord& s, double t) {
    double h = s.t1 - s.t0;
    double x = (t - s.t0) / h;
    OdeState y;
    for (int i = 0; i < 4; ++i) {
        double dy = s.y1[i] - s.y0[i];
        double r3 = h * s.f0[i] - dy;
        double r4 = dy - h * s.f1[i] - r3;
        y[i] = s.y0[i] + x * (dy + (1 - x) * (r3 + x * (r4 + (1 - x) * s.rc5[i])));
    }
    return y;
}

} // namespace geo
