#include <doctest.h>

#include <cmath>
#include <random>

#include "geo/analytic.hpp"

using namespace geo;

TEST_CASE("great circle: quarter equator") {
    AnalyticGeodesic g = great_circle({1, 0, 0}, {0, 1, 0}, 1.0);
    CHECK(g.length == doctest::Approx(M_PI / 2));
    CHECK(std::fabs(g.plane_normal.z) == doctest::Approx(1.0));
    Vec3 mid = g.sample(g.length / 2);
    CHECK(mid.x == doctest::Approx(std::sqrt(0.5)));
    CHECK(mid.y == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("great circle degenerate and error cases") {
    AnalyticGeodesic same = great_circle({0, 0, 1}, {0, 0, 1}, 1.0);
    CHECK(same.length == 0.0);
    CHECK_THROWS_AS(great_circle({1, 0, 0}, {-1, 0, 0}, 1.0), AntipodalError);
    CHECK_THROWS(great_circle({1, 0, 0}, {0, 0.5, 0}, 1.0)); // off sphere
}

TEST_CASE("great circle samples stay on the sphere and in the plane") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double a = 2.5;
    for (int trial = 0; trial < 50; ++trial) {
        Vec3 p0{d(rng), d(rng), d(rng)}, p1{d(rng), d(rng), d(rng)};
        if (p0.norm() < 1e-3 || p1.norm() < 1e-3) continue;
        p0 = p0 * (a / p0.norm());
        p1 = p1 * (a / p1.norm());
        AnalyticGeodesic g = great_circle(p0, p1, a);
        for (int k = 0; k <= 20; ++k) {
            Vec3 s = g.sample(g.length * k / 20.0);
            CHECK(std::fabs(s.norm() - a) < 1e-12);
            CHECK(std::fabs(s.dot(g.plane_normal)) < 1e-12);
        }
        CHECK((g.sample(0) - p0).norm() < 1e-12);
        CHECK((g.sample(g.length) - p1).norm() < 1e-12);
    }
}

TEST_CASE("cylinder helix through two points") {
    AnalyticGeodesic h = cylinder_helix(0, 0, M_PI, 2, 1.0);
    CHECK(h.c1 == doctest::Approx(2.0 / M_PI));
    CHECK(h.length == doctest::Approx(std::sqrt(M_PI * M_PI + 4.0)));
    for (int k = 0; k <= 16; ++k) {
        auto [phi, z] = h.sample_param(h.length * k / 16.0);
        CHECK(std::fabs(z - (h.c1 * phi + h.c2)) < 1e-12);
    }
}

TEST_CASE("vertical ruling") {
    AnalyticGeodesic v = cylinder_helix(0, 0, 0, 5, 1.0);
    CHECK(v.length == doctest::Approx(5.0));
    auto [phi, z] = v.sample_param(2.5);
    CHECK(phi == doctest::Approx(0.0));
    CHECK(z == doctest::Approx(2.5));
}

TEST_CASE("windings select the way around") {
    AnalyticGeodesic w = cylinder_helix(0, 0, M_PI, 0, 1.0, -1);
    CHECK(w.length == doctest::Approx(M_PI)); // |a * dphi| with dphi = -pi
    CHECK(w.phi1 - w.phi0 == doctest::Approx(-M_PI));
}

TEST_CASE("plane line") {
    CHECK(plane_line(0, 0, 3, 4).length == doctest::Approx(5.0));
    CHECK(plane_line(1, 1, 1, 1).length == 0.0);
    CHECK(plane_line(-1, -1, 1, 1).length == doctest::Approx(2.0 * std::sqrt(2.0)));
}
