#pragma once
#include <vector>

#include "geo/expr.hpp"

namespace geo {

// Curve obtained by reducing the geodesic equations to a single quadrature
// via the first-integral constant c1.
struct QuadratureResult {
    // samples of (independent, dependent): (u, v(u)) or (v, u(v))
    std::vector<double> t;      // independent coordinate
    std::vector<double> val;    // dependent coordinate, anchored to 0 at t.front()
    double c1 = 0.0;
    int branch = +1;
    bool singular_start = false; // integrable endpoint singularity at the lower limit
    bool singular_end = false;
};

struct TurningPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// v' solved from the first integral (F + G v')/sqrt(E + 2F v' + G v'^2) = c1.
double vprime_from_first_integral(double E, double F, double G, double c1, int branch);

struct QuadOptions {
    double tol = 1e-10;
    std::size_t samples = 101;
};

// v(u) for metrics with E, G functions of u and F = 0:
//   v = c1 * integral sqrt(E / (G (G - c1^2))) du
QuadratureResult geodesic_quadrature_u(const Expr& E, const Expr& G, double u1, double u2,
                                       double c1, const QuadOptions& opts = {});

// u(v) for metrics with E, G functions of v and F = 0:
//   u = c1 * integral sqrt(G / (E^2 - c1^2 E)) dv
QuadratureResult geodesic_quadrature_v(const Expr& E, const Expr& G, double v1, double v2,
                                       double c1, const QuadOptions& opts = {});

// v(u) on the surface obtained by revolving y = f(u) about the x-axis:
//   v = c1 * integral sqrt(1 + f'(u)^2) / (f(u) sqrt(f(u)^2 - c1^2)) du
QuadratureResult geodesic_revolution(const Expr& f, double u1, double u2, double c1,
                                     const QuadOptions& opts = {});

// Finds c1 such that the revolution quadrature reaches v(u2) = v_target.
double solve_c1_for_target(const Expr& f, double u1, double u2, double v_target,
                           double tol = 1e-10);

} // namespace geo
