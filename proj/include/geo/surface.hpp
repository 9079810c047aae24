#pragma once
#include <iosfwd>
#include <optional>
#include <string>

#include "geo/expr.hpp"
#include "geo/vec3.hpp"

namespace geo {

// E, F, G and their u/v partials at one parameter point.
struct FundamentalForm {
    double u = 0.0, v = 0.0;
    double E = 0.0, F = 0.0, G = 0.0;
    double E_u = 0.0, E_v = 0.0;
    double F_u = 0.0, F_v = 0.0;
    double G_u = 0.0, G_v = 0.0;

    double det() const { return E * G - F * F; }
};

struct RegularityStatus {
    bool regular = false;
    double det = 0.0; // EG - F^2
};

// Parametric surface r(u,v) = (x(u,v), y(u,v), z(u,v)) over a rectangle,
// with optional periodic wrapping per coordinate.
class SurfaceSpec {
public:
    SurfaceSpec() = default;
    SurfaceSpec(std::string name, Expr x, Expr y, Expr z,
                double u_min, double u_max, double v_min, double v_max,
                bool periodic_u = false, bool periodic_v = false);

    const std::string& name() const { return name_; }
    double u_min() const { return u_min_; }
    double u_max() const { return u_max_; }
    double v_min() const { return v_min_; }
    double v_max() const { return v_max_; }
    bool periodic_u() const { return periodic_u_; }
    bool periodic_v() const { return periodic_v_; }

    // Wrap periodic coordinates into the base interval; pass-through otherwise.
    std::pair<double, double> wrap(double u, double v) const;
    bool in_domain(double u, double v) const;

    Vec3 eval_point(double u, double v) const;
    FundamentalForm fundamental_form(double u, double v) const;

    // Tangent vectors r_u, r_v (embedded).
    std::pair<Vec3, Vec3> tangents(double u, double v) const;

    RegularityStatus regularity_check(double u, double v, double eps_reg = 1e-12) const;

    // Text round-trip of the surface definition file format.
    std::string serialize() const;

private:
    std::string name_;
    Expr x_, y_, z_;
    double u_min_ = 0.0, u_max_ = 1.0, v_min_ = 0.0, v_max_ = 1.0;
    bool periodic_u_ = false, periodic_v_ = false;
};

struct RevolutionProfile {
    Expr f;           // profile y = f(u), over variable {u}
    double u_min, u_max;
};

SurfaceSpec make_plane();
SurfaceSpec make_cylinder(double a);
SurfaceSpec make_sphere(double a);
SurfaceSpec make_revolution(const RevolutionProfile& profile);

// Parse the surface definition file format (see docs/formats.md).
SurfaceSpec parse_surface(std::istream& in);
SurfaceSpec parse_surface_text(const std::string& text);

// Accepts a builtin spec ("plane", "cylinder:a", "sphere:a") or a file path.
SurfaceSpec load_surface(const std::string& arg);

} // namespace geo
