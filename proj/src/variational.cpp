#include "geo/variational.hpp"

#include <algorithm>
#include <cmath>

namespace geo {

FunctionalSpec FunctionalSpec::from_text(const std::string& integrand, double a, double b,
                                         double A, double B) {
    if (!(a < b)) throw std::invalid_argument("functional interval requires a < b");
    return {parse_expr(integrand, {"x", "y", "p"}), a, b, A, B};
}

DiscreteCurve DiscreteCurve::linear(double a, double b, double A, double B, std::size_t n) {
    DiscreteCurve c;
    std::size_t m = n + 2;
    c.xs.resize(m);
    c.ys.resize(m);
    double h = (b - a) / static_cast<double>(n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(n + 1);
        c.xs[i] = (i + 1 == m) ? b : a + static_cast<double>(i) * h;
        c.ys[i] = A + (B - A) * t;
    }
    return c;
}

double functional_eval(const FunctionalSpec& f, const DiscreteCurve& c) {
    if (c.xs.size() < 2) throw std::invalid_argument("curve needs at least two nodes");
    double h = c.h();
    double sum = 0.0;
    for (std::size_t i = 1; i < c.xs.size(); ++i) {
        double p = (c.ys[i] - c.ys[i - 1]) / h;
        try {
            sum += h * f.integrand.eval({c.xs[i], c.ys[i], p});
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + " at node index " + std::to_string(i),
                              e.offset);
        }
    }
    return sum;
}

namespace {

struct NodeJet {
    double F, Fy, Fp, Fyy, Fyp, Fpp;
};

// Second-order jet of F at (x_i, y_i, p_i), seeded so du tracks y and dv tracks p.
NodeJet eval_node(const FunctionalSpec& f, double x, double y, double p) {
    Jet2 jy = Jet2::var_u(y);
    Jet2 jp = Jet2::var_v(p);
    Jet2 r = f.integrand.eval_jet({Jet2::constant(x), jy, jp});
    return {r.val, r.du, r.dv, r.duu, r.duv, r.dvv};
}

// Solves the symmetric tridiagonal system (diag, off) x = rhs by LDL^T.
// Returns false if a pivot is not strictly positive.
bool solve_tridiag_spd(std::vector<double> diag, const std::vector<double>& off,
                       std::vector<double> rhs, std::vector<double>& x) {
    std::size_t n = diag.size();
    std::vector<double> l(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (diag[i] <= 0.0) return false;
        if (i + 1 < n) {
            l[i] = off[i] / diag[i];
            diag[i + 1] -= l[i] * off[i];
        }
    }
    for (std::size_t i = 1; i < n; ++i) rhs[i] -= l[i - 1] * rhs[i - 1];
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= diag[i];
    for (std::size_t i = n; i-- > 1;) rhs[i - 1] -= l[i - 1] * rhs[i];
    x = std::move(rhs);
    return true;
}

} // namespace

MinimizeResult direct_minimize(const FunctionalSpec& f, std::size_t n,
                               const MinimizeOptions& opts) {
    if (n < 1) throw std::invalid_argument("direct_minimize requires n >= 1");
    DiscreteCurve c = DiscreteCurve::linear(f.a, f.b, f.A, f.B, n);
    double h = c.h();

    auto objective = [&](const DiscreteCurve& cur) { return functional_eval(f, cur); };

    MinimizeResult res;
    double val = objective(c);
    std::vector<double> grad(n), diag(n), off(n > 0 ? n - 1 : 0), step;
    std::vector<NodeJet> J(n + 2); // J[i] for i = 1..n+1

    for (std::size_t iter = 0; iter < opts.max_iter; ++iter) {
        for (std::size_t i = 1; i <= n + 1; ++i) {
            double p = (c.ys[i] - c.ys[i - 1]) / h;
            J[i] = eval_node(f, c.xs[i], c.ys[i], p);
        }
        // Gradient and tridiagonal Hessian of the discrete sum w.r.t. y_1..y_n.
        for (std::size_t j = 1; j <= n; ++j) {
            grad[j - 1] = h * J[j].Fy + J[j].Fp - J[j + 1].Fp;
            diag[j - 1] = h * J[j].Fyy + 2.0 * J[j].Fyp + (J[j].Fpp + J[j + 1].Fpp) / h;
            if (j < n) off[j - 1] = -J[j + 1].Fyp - J[j + 1].Fpp / h;
        }
        double gnorm = 0.0;
        for (double g : grad) gnorm = std::max(gnorm, std::fabs(g));
        res.grad_max_norm = gnorm;
        res.iterations = iter;
        if (gnorm < opts.tol) {
            res.converged = true;
            break;
        }

        std::vector<double> rhs(n);
        for (std::size_t j = 0; j < n; ++j) rhs[j] = -grad[j];
        bool newton = solve_tridiag_spd(diag, off, rhs, step);
        if (!newton) {
            // Hessian not positive definite; fall back to steepest descent.
            step.assign(n, 0.0);
            for (std::size_t j = 0; j < n; ++j) step[j] = -grad[j];
        }

        double slope = 0.0;
        for (std::size_t j = 0; j < n; ++j) slope += grad[j] * step[j];
        double t = 1.0;
        DiscreteCurve trial = c;
        bool accepted = false;
        while (t > 1e-12) {
            for (std::size_t j = 0; j < n; ++j) trial.ys[j + 1] = c.ys[j + 1] + t * step[j];
            try {
                double tv = objective(trial);
                if (tv <= val + 1e-4 * t * slope) {
                    c = trial;
                    val = tv;
                    accepted = true;
                    break;
                }
            } catch (const DomainError&) {
                // shrink past the infeasible region
            }
            t *= 0.5;
        }
        if (!accepted) break; // line search stalled; report best iterate
    }

    res.curve = std::move(c);
    res.value = val;
    return res;
}

std::vector<double> el_residual_1d(const FunctionalSpec& f, const DiscreteCurve& c) {
    std::size_t n = c.n();
    if (n < 1) throw std::invalid_argument("el_residual_1d requires n >= 1");
    double h = c.h();
    std::size_t m = c.xs.size();

    // Same stencil as the discrete sum: p_i is the backward slope on interval i,
    // so Fp(i) lives at the midpoint x_{i-1/2} and (Fp(i+1) - Fp(i)) / h is the
    // centered d/dx Fp at x_i. The residual is then exactly -grad/h of the
    // discrete functional, vanishing on discrete extremals and second-order
    // accurate on smooth ones.
    std::vector<double> Fy(m), Fp(m);
    for (std::size_t i = 1; i < m; ++i) {
        double p = (c.ys[i] - c.ys[i - 1]) / h;
        NodeJet j = eval_node(f, c.xs[i], c.ys[i], p);
        Fy[i] = j.Fy;
        Fp[i] = j.Fp;
    }

    std::vector<double> res(n);
    for (std::size_t i = 1; i <= n; ++i)
        res[i - 1] = Fy[i] - (Fp[i + 1] - Fp[i]) / h;
    return res;
}

namespace {

void check_same_grid(const DiscreteCurve& y, const DiscreteCurve& z) {
    if (y.xs.size() != z.xs.size())
        throw std::invalid_argument("curves are on different grids");
    for (std::size_t i = 0; i < y.xs.size(); ++i)
        if (y.xs[i] != z.xs[i])
            throw std::invalid_argument("curves are on different grids");
}

// One finite-difference derivative pass on a uniform grid.
std::vector<double> diff_once(const std::vector<double>& f, double h) {
    std::size_t m = f.size();
    std::vector<double> d(m);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[m - 1] = (3.0 * f[m - 1] - 4.0 * f[m - 2] + f[m - 3]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < m; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    return d;
}

} // namespace

double norm_c0(const DiscreteCurve& y, const DiscreteCurve& z) {
    check_same_grid(y, z);
    double m = 0.0;
    for (std::size_t i = 0; i < y.ys.size(); ++i)
        m = std::max(m, std::fabs(y.ys[i] - z.ys[i]));
    return m;
}

double norm_dn(const DiscreteCurve& y, const DiscreteCurve& z, std::size_t k) {
    check_same_grid(y, z);
    if (y.xs.size() < k + 2)
        throw std::invalid_argument("grid too coarse for requested derivative order");
    std::vector<double> d(y.ys.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = y.ys[i] - z.ys[i];
    double h = y.h();
    double sum = 0.0;
    for (std::size_t order = 0; order <= k; ++order) {
        double mx = 0.0;
        for (double v : d) mx = std::max(mx, std::fabs(v));
        sum += mx;
        if (order < k) d = diff_once(d, h);
    }
    return sum;
}

double norm_d1(const DiscreteCurve& y, const DiscreteCurve& z) { return norm_dn(y, z, 1); }

} // namespace geo
