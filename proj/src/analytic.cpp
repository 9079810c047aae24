#include "geo/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace geo {

Vec3 AnalyticGeodesic::sample(double s) const {
    switch (kind) {
        case Kind::GreatCircle: {
            double ang = (radius > 0) ? s / radius : 0.0;
            return radius * (std::cos(ang) * e0 + std::sin(ang) * e1);
        }
        case Kind::Helix: {
            auto [phi, z] = sample_param(s);
            return {radius * std::cos(phi), radius * std::sin(phi), z};
        }
        case Kind::PlaneLine: {
            auto [u, v] = sample_param(s);
            return {u, v, 0.0};
        }
    }
    return {};
}

std::pair<double, double> AnalyticGeodesic::sample_param(double s) const {
    double f = (length > 0) ? s / length : 0.0;
    switch (kind) {
        case Kind::Helix: {
            if (phi1 == phi0) return {phi0, za + f * (zb - za)};
            double phi = phi0 + f * (phi1 - phi0);
            return {phi, c1 * phi + c2};
        }
        case Kind::PlaneLine:
            return {u0 + f * (u1 - u0), v0 + f * (v1 - v0)};
        case Kind::GreatCircle:
            break;
    }
    return {0.0, 0.0};
}

AnalyticGeodesic great_circle(const Vec3& p0, const Vec3& p1, double a) {
    if (!(a > 0)) throw std::invalid_argument("radius must be positive");
    if (std::fabs(p0.norm() - a) > 1e-9 || std::fabs(p1.norm() - a) > 1e-9)
        throw std::invalid_argument("point does not lie on the sphere");

    Vec3 n0 = p0 / a, n1 = p1 / a;
    double d = std::clamp(n0.dot(n1), -1.0, 1.0);
    double ang = std::acos(d);
    if (M_PI - ang < 1e-9)
        throw AntipodalError("antipodal points: great-circle plane is undetermined");

    AnalyticGeodesic g;
    g.kind = AnalyticGeodesic::Kind::GreatCircle;
    g.radius = a;
    g.length = a * ang;
    g.e0 = n0;
    if (ang < 1e-15) {
        // degenerate p0 == p1: zero-length arc, any in-plane direction
        g.e1 = n0;
        g.plane_normal = {0, 0, 0};
        g.length = 0.0;
        return g;
    }
    Vec3 w = n1 - d * n0;
    g.e1 = w / w.norm();
    g.plane_normal = n0.cross(g.e1).normalized();
    return g;
}

AnalyticGeodesic cylinder_helix(double phi0, double z0, double phi1, double z1,
                                double a, int windings) {
    if (!(a > 0)) throw std::invalid_argument("radius must be positive");
    AnalyticGeodesic g;
    g.kind = AnalyticGeodesic::Kind::Helix;
    g.radius = a;
    g.phi0 = phi0;
    g.phi1 = phi1 + 2.0 * M_PI * windings;
    g.za = z0;
    g.zb = z1;
    double dphi = g.phi1 - g.phi0;
    double dz = z1 - z0;
    if (dphi == 0.0) {
        // Vertical ruling: the c1 -> infinity limit of the helix family.
        g.c1 = 0.0;
        g.c2 = z0;
        g.length = std::fabs(dz);
        return g;
    }
    g.c1 = dz / dphi;
    g.c2 = z0 - g.c1 * g.phi0;
    g.length = std::sqrt(a * a * dphi * dphi + dz * dz);
    return g;
}

AnalyticGeodesic plane_line(double u0, double v0, double u1, double v1) {
    AnalyticGeodesic g;
    g.kind = AnalyticGeodesic::Kind::PlaneLine;
    g.u0 = u0;
    g.v0 = v0;
    g.u1 = u1;
    g.v1 = v1;
    g.length = std::hypot(u1 - u0, v1 - v0);
    return g;
}

} // namespace geo
