#pragma once
#include <array>
#include <string>
#include <vector>

#include "geo/surface.hpp"
#include "geo/vec3.hpp"

namespace geo {

// Phase-space point of the geodesic system. Coordinates are unwrapped so
// winding on periodic surfaces is preserved.
struct GeodesicState {
    double t = 0.0;
    double u = 0.0, v = 0.0;
    double du = 0.0, dv = 0.0;
};

struct GeodesicCurve {
    std::vector<GeodesicState> states;
    std::vector<Vec3> points;
    std::vector<double> s; // cumulative arc length per sample
    double total_length = 0.0;
    bool complete = true;
    std::string note;

    std::size_t size() const { return states.size(); }
};

struct SingularPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sqrt(E u'^2 + 2F u'v' + G v'^2)
double speed(const SurfaceSpec& s, const GeodesicState& st);

// (u', v', u'', v'') of the affinely parametrized geodesic system.
std::array<double, 4> geodesic_rhs(const SurfaceSpec& s, const GeodesicState& st,
                                   double eps_reg = 1e-12);

struct IntegrateOptions {
    double tol = 1e-9;       // relative ODE tolerance
    double abs_tol = 1e-12;
    std::size_t min_samples = 100;
    double sample_spacing = 0.01; // target arc-length spacing of output samples
};

// Integrates from st0 (direction normalized to unit speed) for the given arc
// length. On a singular point or domain exit, returns the partial curve with
// complete = false and a diagnostic note.
GeodesicCurve integrate_geodesic(const SurfaceSpec& s, const GeodesicState& st0,
                                 double target_length, const IntegrateOptions& opts = {});

// Unit-speed initial state at (u, v) launching at angle theta in the tangent
// plane (theta = 0 along r_u).
GeodesicState launch_state(const SurfaceSpec& s, double u, double v, double theta);

struct SeedReport {
    double theta = 0.0;
    double miss = 0.0;
    double length = 0.0;
    bool converged = false;
};

struct ConnectOptions {
    double tol = 1e-9;        // embedded distance from curve end to target
    std::size_t max_iter = 100;
    std::size_t seeds = 32;
};

struct ConnectResult {
    GeodesicCurve curve;
    bool converged = false;
    double miss = 0.0;
    double theta = 0.0;
    bool ill_conditioned = false; // near-antipodal / flat miss function
    std::vector<SeedReport> seed_reports;
    // Lengths of other converged shots found during the seed scan.
    std::vector<double> alternative_lengths;
};

ConnectResult connect_geodesic(const SurfaceSpec& s, double u0, double v0,
                               double u1, double v1, const ConnectOptions& opts = {});

// Builds a curve from explicitly given states (computes embedded points and
// cumulative arc length); used to residual-test externally produced curves.
GeodesicCurve curve_from_states(const SurfaceSpec& s, const std::vector<GeodesicState>& states);

// Max absolute values of the left-hand sides of the two geodesic equations,
// evaluated as printed: metric terms from jets, d/dt terms by central
// differencing along the curve.
struct ResidualPair {
    double eq_u = 0.0;
    double eq_v = 0.0;
};

ResidualPair el_residual_geodesic(const SurfaceSpec& s, const GeodesicCurve& c);

} // namespace geo
