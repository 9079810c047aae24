#include <doctest.h>

#include <cmath>
#include <random>

#include "geo/surface.hpp"

using namespace geo;

TEST_CASE("eval_point on builtin surfaces") {
    SurfaceSpec sphere = make_sphere(1.0);
    Vec3 p = sphere.eval_point(0.0, M_PI / 2);
    CHECK(p.x == doctest::Approx(1.0));
    CHECK(p.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.z == doctest::Approx(0.0).epsilon(1e-12));

    SurfaceSpec cyl = make_cylinder(2.0);
    Vec3 q = cyl.eval_point(M_PI / 2, 3.0);
    CHECK(q.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(q.y == doctest::Approx(2.0));
    CHECK(q.z == doctest::Approx(3.0));

    SurfaceSpec plane = make_plane();
    Vec3 r = plane.eval_point(1.5, -2.0);
    CHECK(r.x == doctest::Approx(1.5));
    CHECK(r.y == doctest::Approx(-2.0));
    CHECK(r.z == doctest::Approx(0.0));
}

TEST_CASE("fundamental form of the cylinder is constant") {
    SurfaceSpec cyl = make_cylinder(1.5);
    FundamentalForm f = cyl.fundamental_form(0.7, -4.0);
    CHECK(f.E == doctest::Approx(2.25));
    CHECK(f.F == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.G == doctest::Approx(1.0));
    for (double part : {f.E_u, f.E_v, f.F_u, f.F_v, f.G_u, f.G_v})
        CHECK(part == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fundamental form of the sphere") {
    double a = 2.0;
    SurfaceSpec sph = make_sphere(a);
    double u = 0.4, v = 1.1;
    FundamentalForm f = sph.fundamental_form(u, v);
    CHECK(f.E == doctest::Approx(a * a * std::sin(v) * std::sin(v)));
    CHECK(f.F == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.G == doctest::Approx(a * a));
    CHECK(f.E_v == doctest::Approx(2 * a * a * std::sin(v) * std::cos(v)));
    CHECK(f.E_u == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.G_u == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.G_v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fundamental form of a revolution surface") {
    RevolutionProfile prof{parse_expr("u", {"u"}), 1.0, 2.0};
    SurfaceSpec cone = make_revolution(prof);
    FundamentalForm f = cone.fundamental_form(1.5, 0.8);
    CHECK(f.E == doctest::Approx(2.0)); // 1 + f'^2
    CHECK(f.F == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.G == doctest::Approx(1.5 * 1.5)); // f^2
}

TEST_CASE("regularity check") {
    SurfaceSpec sph = make_sphere(1.0);
    CHECK(sph.regularity_check(0.0, M_PI / 2).regular);
    CHECK_FALSE(sph.regularity_check(0.0, 1e-9).regular);
    CHECK(make_plane().regularity_check(12.0, -7.0).regular);
}

TEST_CASE("metric coefficients match finite-difference tangents") {
    std::mt19937 rng(4242);
    const double h = 1e-5;
    std::vector<SurfaceSpec> surfaces = {
        make_plane(), make_cylinder(1.3), make_sphere(1.0),
        make_revolution({parse_expr("2 + cos(u)", {"u"}), 0.5, 2.5})};

    for (const SurfaceSpec& s : surfaces) {
        // sample away from boundaries and poles
        std::uniform_real_distribution<double> du(s.u_min() == -1e6 ? -2.0 : s.u_min() + 0.1,
                                                  s.u_max() == 1e6 ? 2.0 : s.u_max() - 0.1);
        std::uniform_real_distribution<double> dv(s.v_min() == -1e6 ? -2.0 : s.v_min() + 0.3,
                                                  s.v_max() == 1e6 ? 2.0 : s.v_max() - 0.3);
        for (int k = 0; k < 100; ++k) {
            double u = du(rng), v = dv(rng);
            FundamentalForm f = s.fundamental_form(u, v);
            Vec3 ru = (s.eval_point(u + h, v) - s.eval_point(u - h, v)) / (2 * h);
            Vec3 rv = (s.eval_point(u, v + h) - s.eval_point(u, v - h)) / (2 * h);
            CHECK(f.E == doctest::Approx(ru.dot(ru)).epsilon(1e-6));
            CHECK(f.F == doctest::Approx(ru.dot(rv)).epsilon(1e-6).scale(1.0));
            CHECK(f.G == doctest::Approx(rv.dot(rv)).epsilon(1e-6));
            CHECK(f.E >= 0);
            CHECK(f.G >= 0);
            if (s.regularity_check(u, v).regular) CHECK(f.det() > 0);
        }
    }
}

TEST_CASE("fundamental form partials match finite differences of E,F,G") {
    SurfaceSpec s = make_revolution({parse_expr("2 + cos(u)", {"u"}), 0.5, 2.5});
    const double h = 1e-5;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> du(0.7, 2.3), dv(0.3, 6.0);
    for (int k = 0; k < 50; ++k) {
        double u = du(rng), v = dv(rng);
        FundamentalForm f = s.fundamental_form(u, v);
        FundamentalForm fu1 = s.fundamental_form(u + h, v), fu0 = s.fundamental_form(u - h, v);
        FundamentalForm fv1 = s.fundamental_form(u, v + h), fv0 = s.fundamental_form(u, v - h);
        CHECK(f.E_u == doctest::Approx((fu1.E - fu0.E) / (2 * h)).epsilon(1e-5).scale(1.0));
        CHECK(f.E_v == doctest::Approx((fv1.E - fv0.E) / (2 * h)).epsilon(1e-5).scale(1.0));
        CHECK(f.F_u == doctest::Approx((fu1.F - fu0.F) / (2 * h)).epsilon(1e-5).scale(1.0));
        CHECK(f.F_v == doctest::Approx((fv1.F - fv0.F) / (2 * h)).epsilon(1e-5).scale(1.0));
        CHECK(f.G_u == doctest::Approx((fu1.G - fu0.G) / (2 * h)).epsilon(1e-5).scale(1.0));
        CHECK(f.G_v == doctest::Approx((fv1.G - fv0.G) / (2 * h)).epsilon(1e-5).scale(1.0));
    }
}

TEST_CASE("surface file format round-trips") {
    const char* text =
        "# unit sphere\n"
        "name = sphere\n"
        "x = sin(v)*cos(u)\n"
        "y = sin(v)*sin(u)\n"
        "z = cos(v)\n"
        "u in [0, 2*pi] (periodic)\n"
        "v in [0.001, 3.1405926535897932]\n";
    SurfaceSpec s = parse_surface_text(text);
    CHECK(s.name() == "sphere");
    CHECK(s.periodic_u());
    CHECK_FALSE(s.periodic_v());
    CHECK(s.u_max() == doctest::Approx(2 * M_PI));

    SurfaceSpec s2 = parse_surface_text(s.serialize());
    for (double u : {0.1, 1.0, 4.0}) {
        for (double v : {0.5, 1.5, 2.5}) {
            Vec3 p = s.eval_point(u, v), q = s2.eval_point(u, v);
            CHECK((p - q).norm() < 1e-15);
        }
    }
}

TEST_CASE("surface file errors") {
    CHECK_THROWS(parse_surface_text("x = u\n"));
    CHECK_THROWS(parse_surface_text("x = u\ny = v\nz = 0\n"));
    CHECK_THROWS(parse_surface_text("x = u\ny = v\nz = 0\nu in [0,1]\nv in (0,1)\n"));
}

TEST_CASE("periodic wrapping") {
    SurfaceSpec cyl = make_cylinder(1.0);
    Vec3 a = cyl.eval_point(0.5, 1.0);
    Vec3 b = cyl.eval_point(0.5 + 4 * M_PI, 1.0);
    CHECK((a - b).norm() < 1e-12);
    CHECK(cyl.in_domain(100.0, 3.0)); // phi periodic, z unbounded
}
