#include <doctest.h>

#include <cmath>

#include "geo/revolution.hpp"

using namespace geo;

namespace {

const std::vector<std::string> U = {"u"};
const std::vector<std::string> V = {"v"};

// Unrolling oracle for the cone profile f(u) = u (metric E = 2, G = u^2):
// flattening to polar coordinates (rho, psi) = (sqrt(2) u, v / sqrt(2)) turns
// geodesics into straight lines, giving v(u) in closed form.
double cone_oracle_v(double u1, double u2, double c1) {
    return std::sqrt(2.0) * (std::acos(c1 / u2) - std::acos(c1 / u1));
}

} // namespace

TEST_CASE("vprime_from_first_integral") {
    CHECK(vprime_from_first_integral(1, 0, 1, 1.0 / std::sqrt(2.0), +1) ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS(vprime_from_first_integral(1, 0, 0.25, 0.5, +1), TurningPointError);
    // matches the F = 0 reduction c1 sqrt(E / (G (G - c1^2)))
    double c1 = 1.0, E = 2.0, G = 4.0;
    double expect = c1 * std::sqrt(E / (G * (G - c1 * c1)));
    CHECK(vprime_from_first_integral(E, 0, G, c1, +1) == doctest::Approx(expect));
    CHECK(expect == doctest::Approx(0.40824829046386302));
    // the - branch is the mirror solution
    CHECK(vprime_from_first_integral(E, 0, G, c1, -1) == doctest::Approx(-expect));
}

TEST_CASE("geodesic_quadrature_u") {
    Expr one = parse_expr("1", U), Gu2 = parse_expr("u^2", U);

    // c1 = 0 gives a meridian
    QuadratureResult mer = geodesic_quadrature_u(one, Gu2, 1.0, 2.0, 0.0);
    for (double v : mer.val) CHECK(v == 0.0);

    // flat strip, c1 = 1/sqrt(2): 45 degree line
    QuadratureResult flat = geodesic_quadrature_u(one, one, 0.0, 1.0, 1.0 / std::sqrt(2.0));
    CHECK(flat.val.back() == doctest::Approx(1.0).epsilon(1e-10));

    // cone with E = 2 against the unrolled straight line
    Expr two = parse_expr("2", U);
    QuadratureResult cone = geodesic_quadrature_u(two, Gu2, 1.2, 3.0, 1.0);
    CHECK(cone.val.back() == doctest::Approx(cone_oracle_v(1.2, 3.0, 1.0)).epsilon(1e-8));

    // infeasible c1: G - c1^2 < 0 inside
    CHECK_THROWS_AS(geodesic_quadrature_u(one, Gu2, 1.0, 3.0, 2.0), DomainError);
}

TEST_CASE("geodesic_quadrature_v on the sphere matches the printed closed form") {
    Expr E = parse_expr("sin(v)^2", V), G = parse_expr("1", V);
    for (double c1 : {0.3, 0.6}) {
        double k = std::sqrt(1.0 / (c1 * c1) - 1.0);
        auto closed = [&](double v) { return -std::asin(1.0 / (std::tan(v) * k)); };
        double v1 = M_PI / 4, v2 = M_PI / 2;
        QuadratureResult q = geodesic_quadrature_v(E, G, v1, v2, c1);
        for (std::size_t i = 0; i < q.t.size(); ++i) {
            double expect = closed(q.t[i]) - closed(v1);
            CHECK(q.val[i] == doctest::Approx(expect).epsilon(1e-8).scale(1.0));
        }
    }
}

TEST_CASE("endpoint singularity at the turning point") {
    // Start exactly where E = c1^2: integrable 1/sqrt singularity. The
    // azimuth swept from the turning point to the equator is pi/2 for every
    // great circle.
    Expr E = parse_expr("sin(v)^2", V), G = parse_expr("1", V);
    for (double c1 : {0.4, 0.6, 0.9}) {
        double vturn = std::asin(c1);
        QuadratureResult q = geodesic_quadrature_v(E, G, vturn, M_PI / 2, c1);
        CHECK(q.singular_start);
        CHECK(q.val.back() == doctest::Approx(M_PI / 2).epsilon(1e-7));
    }
    // c1 = 0 meridian limit
    QuadratureResult mer = geodesic_quadrature_v(E, G, 0.3, M_PI / 2, 0.0);
    CHECK(mer.val.back() == 0.0);
}

TEST_CASE("geodesic_revolution") {
    // constant profile: helix family, v linear in u
    Expr fa = parse_expr("2", U);
    double c1 = 1.0, a = 2.0;
    QuadratureResult helix = geodesic_revolution(fa, 0.0, 3.0, c1);
    double slope = c1 / (a * std::sqrt(a * a - c1 * c1));
    for (std::size_t i = 0; i < helix.t.size(); ++i)
        CHECK(helix.val[i] == doctest::Approx(slope * (helix.t[i] - helix.t[0])).epsilon(1e-10));

    // meridian
    QuadratureResult mer = geodesic_revolution(parse_expr("1+u^2", U), 0.0, 1.0, 0.0);
    for (double v : mer.val) CHECK(v == 0.0);

    // cone f(u) = u against the unrolling oracle
    QuadratureResult cone = geodesic_revolution(parse_expr("u", U), 1.5, 2.5, 1.0);
    CHECK(cone.val.back() == doctest::Approx(cone_oracle_v(1.5, 2.5, 1.0)).epsilon(1e-8));

    // profile dips below |c1|
    CHECK_THROWS_AS(geodesic_revolution(parse_expr("u", U), 0.5, 2.0, 1.0), DomainError);
}

TEST_CASE("Clairaut quantity is constant along quadrature output") {
    // cone: E = 2, G = u^2, v' from sample differencing
    QuadOptions qo;
    qo.samples = 2001;
    QuadratureResult q = geodesic_quadrature_u(parse_expr("2", U), parse_expr("u^2", U),
                                               1.3, 2.8, 1.0, qo);
    for (std::size_t i = 1; i + 1 < q.t.size(); ++i) {
        double h = q.t[i + 1] - q.t[i - 1];
        double vp = (q.val[i + 1] - q.val[i - 1]) / h;
        double u = q.t[i];
        double E = 2.0, G = u * u;
        double clairaut = G * vp / std::sqrt(E + G * vp * vp);
        CHECK(clairaut == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("monotonicity with the + branch") {
    QuadratureResult q = geodesic_revolution(parse_expr("2+cos(u)", U), 0.5, 2.5, 0.8);
    for (std::size_t i = 1; i < q.val.size(); ++i) CHECK(q.val[i] >= q.val[i - 1]);
}

TEST_CASE("solve_c1_for_target inverts the cylinder formula") {
    // f = 1: v(u2) = c1 (u2-u1) / sqrt(1-c1^2); target 1 over a unit interval
    // gives c1 = 1/sqrt(2).
    Expr f = parse_expr("1", U);
    double c1 = solve_c1_for_target(f, 0.0, 1.0, 1.0);
    CHECK(c1 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
    QuadratureResult q = geodesic_revolution(f, 0.0, 1.0, c1);
    CHECK(q.val.back() == doctest::Approx(1.0).epsilon(1e-8));
}
