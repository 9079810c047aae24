#pragma once
#include <stdexcept>

#include "geo/vec3.hpp"

namespace geo {

// Closed-form geodesics used as verification oracles.
struct AnalyticGeodesic {
    enum class Kind { PlaneLine, Helix, GreatCircle };
    Kind kind;
    double length = 0.0;

    // Great circle: center at origin, radius a, arc from e0 rotating toward e1.
    double radius = 0.0;
    Vec3 e0, e1;      // orthonormal in-plane frame
    Vec3 plane_normal;

    // Helix on a cylinder of radius a: z = c1*phi + c2, phi from phi0 to phi1.
    // A vertical ruling (phi0 == phi1) is the c1 -> infinity limit; z then runs
    // from za to zb.
    double c1 = 0.0, c2 = 0.0;
    double phi0 = 0.0, phi1 = 0.0;
    double za = 0.0, zb = 0.0;

    // Plane line: endpoints in parameter space.
    double u0 = 0.0, v0 = 0.0, u1 = 0.0, v1 = 0.0;

    // Embedded point at arc length s in [0, length].
    Vec3 sample(double s) const;
    // Parameter-space point at arc length s (plane line and helix).
    std::pair<double, double> sample_param(double s) const;
};

struct AntipodalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Minor great-circle arc between two points on the sphere of radius a.
AnalyticGeodesic great_circle(const Vec3& p0, const Vec3& p1, double a);

// Helix z = c1*phi + c2 through (phi0,z0) and (phi1,z1) on a cylinder of
// radius a, with the phi difference adjusted by 2*pi*windings.
AnalyticGeodesic cylinder_helix(double phi0, double z0, double phi1, double z1,
                                double a, int windings = 0);

AnalyticGeodesic plane_line(double u0, double v0, double u1, double v1);

} // namespace geo
