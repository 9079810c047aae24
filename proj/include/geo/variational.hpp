#pragma once
#include <string>
#include <vector>

#include "geo/expr.hpp"

namespace geo {

// Integrand F(x, y, p) with p standing for y', on [a, b] with pinned endpoints.
struct FunctionalSpec {
    Expr integrand; // over variables {x, y, p}
    double a = 0.0, b = 1.0;
    double A = 0.0, B = 0.0;

    static FunctionalSpec from_text(const std::string& integrand, double a, double b,
                                    double A, double B);
};

// Uniform-grid sampled function y(x); x0 = a, x_{n+1} = b, h = (b-a)/(n+1).
struct DiscreteCurve {
    std::vector<double> xs;
    std::vector<double> ys;

    std::size_t n() const { return xs.size() >= 2 ? xs.size() - 2 : 0; }
    double h() const { return xs[1] - xs[0]; }

    // Linear interpolant between A and B on a uniform grid with n interior points.
    static DiscreteCurve linear(double a, double b, double A, double B, std::size_t n);
    // Samples fn at the grid nodes.
    template <class F>
    static DiscreteCurve sample(double a, double b, std::size_t n, F&& fn) {
        DiscreteCurve c = linear(a, b, 0, 0, n);
        for (std::size_t i = 0; i < c.xs.size(); ++i) c.ys[i] = fn(c.xs[i]);
        return c;
    }
};

// The polygonal-discretization sum  sum_i F(x_i, y_i, (y_i - y_{i-1})/h) h.
double functional_eval(const FunctionalSpec& f, const DiscreteCurve& c);

struct MinimizeResult {
    DiscreteCurve curve;
    bool converged = false;
    std::size_t iterations = 0;
    double grad_max_norm = 0.0;
    double value = 0.0;
};

struct MinimizeOptions {
    double tol = 1e-10;
    std::size_t max_iter = 500;
};

// Minimizes the discrete functional over the interior values by damped Newton
// on the tridiagonal-Hessian problem, with gradient-descent fallback.
MinimizeResult direct_minimize(const FunctionalSpec& f, std::size_t n,
                               const MinimizeOptions& opts = {});

// Discrete Euler-Lagrange residual F_y - d/dx F_p at the interior nodes.
std::vector<double> el_residual_1d(const FunctionalSpec& f, const DiscreteCurve& c);

// Discrete analogues of the C, D1, Dn norms of the difference y - z.
double norm_c0(const DiscreteCurve& y, const DiscreteCurve& z);
double norm_dn(const DiscreteCurve& y, const DiscreteCurve& z, std::size_t k);
double norm_d1(const DiscreteCurve& y, const DiscreteCurve& z);

} // namespace geo
