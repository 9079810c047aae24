#pragma once
#include <functional>
#include <stdexcept>

namespace geo {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
    double tol = 1e-10;
    int max_depth = 48;
};

// Adaptive Gauss-Kronrod 15(7) with interval bisection.
// Integrand must be finite on the open interval; endpoints are never evaluated
// exactly at a or b (all Kronrod nodes are interior).
double integrate_gk15(const std::function<double(double)>& f, double a, double b,
                      const QuadratureOptions& opts = {});

// Same, but applies the substitution x = x0 + s^2 at an endpoint carrying an
// integrable (x - x0)^(-1/2) singularity.
double integrate_gk15_endpoint_singular(const std::function<double(double)>& f,
                                        double a, double b,
                                        bool singular_at_a, bool singular_at_b,
                                        const QuadratureOptions& opts = {});

} // namespace geo
