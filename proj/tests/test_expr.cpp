#include <doctest.h>

#include <cmath>
#include <random>

#include "geo/expr.hpp"

using namespace geo;

namespace {

const std::vector<std::string> UV = {"u", "v"};

double feval(const Expr& e, double u, double v) { return e.eval({u, v}); }

Jet2 jeval(const Expr& e, double u, double v) {
    return e.eval_jet({Jet2::var_u(u), Jet2::var_v(v)});
}

// Small random expression generator over {u, v}; avoids domain-restricted
// functions so finite differences stay valid.
std::string random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
    switch (pick(rng)) {
        case 0: return "u";
        case 1: return "v";
        case 2: {
            std::uniform_real_distribution<double> c(-2.0, 2.0);
            return std::to_string(c(rng));
        }
        case 3: return "sin(" + random_expr(rng, depth - 1) + ")";
        case 4: return "cos(" + random_expr(rng, depth - 1) + ")";
        case 5: return "tanh(" + random_expr(rng, depth - 1) + ")";
        case 6: return "(" + random_expr(rng, depth - 1) + "+" + random_expr(rng, depth - 1) + ")";
        case 7: return "(" + random_expr(rng, depth - 1) + "-" + random_expr(rng, depth - 1) + ")";
        case 8: return "(" + random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1) + ")";
        case 9: return "(" + random_expr(rng, depth - 1) + ")^2";
    }
    return "u";
}

} // namespace

TEST_CASE("parser precedence and grammar") {
    Expr e = parse_expr("u + v*v", UV);
    CHECK(feval(e, 2, 3) == doctest::Approx(11.0));

    Expr p = parse_expr("sin(u)*cos(v)", UV);
    CHECK(feval(p, 0.3, 0.7) == doctest::Approx(std::sin(0.3) * std::cos(0.7)));

    // ^ binds tighter than unary minus, and is right-associative
    CHECK(feval(parse_expr("-u^2", UV), 3, 0) == doctest::Approx(-9.0));
    CHECK(feval(parse_expr("2^3^2", UV), 0, 0) == doctest::Approx(512.0));
    // left-associativity of - and /
    CHECK(feval(parse_expr("8-4-2", UV), 0, 0) == doctest::Approx(2.0));
    CHECK(feval(parse_expr("8/4/2", UV), 0, 0) == doctest::Approx(1.0));
}

TEST_CASE("parser errors carry byte offsets") {
    try {
        parse_expr("u +", UV);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 3);
    }
    CHECK_THROWS_AS(parse_expr("u + w", UV), ParseError);
    CHECK_THROWS_AS(parse_expr("foo(u)", UV), ParseError);
    CHECK_THROWS_AS(parse_expr("sin(u, v)", UV), ParseError);
    CHECK_THROWS_AS(parse_expr("", UV), ParseError);
    CHECK_THROWS_AS(parse_expr("(u", UV), ParseError);
}

TEST_CASE("jet evaluation: product rule") {
    Jet2 j = jeval(parse_expr("u*v", UV), 2, 3);
    CHECK(j.val == doctest::Approx(6));
    CHECK(j.du == doctest::Approx(3));
    CHECK(j.dv == doctest::Approx(2));
    CHECK(j.duv == doctest::Approx(1));
    CHECK(j.duu == doctest::Approx(0));
    CHECK(j.dvv == doctest::Approx(0));
}

TEST_CASE("jet evaluation: sine at zero") {
    Jet2 j = jeval(parse_expr("sin(u)", UV), 0, 0);
    CHECK(j.val == doctest::Approx(0));
    CHECK(j.du == doctest::Approx(1));
    CHECK(j.duu == doctest::Approx(0));
}

TEST_CASE("jet evaluation: polynomial") {
    Jet2 j = jeval(parse_expr("u^2 + v^2", UV), 1, 2);
    CHECK(j.val == doctest::Approx(5));
    CHECK(j.du == doctest::Approx(2));
    CHECK(j.dv == doctest::Approx(4));
    CHECK(j.duu == doctest::Approx(2));
    CHECK(j.dvv == doctest::Approx(2));
    CHECK(j.duv == doctest::Approx(0));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(feval(parse_expr("log(u)", UV), -1, 0), DomainError);
    CHECK_THROWS_AS(feval(parse_expr("log(u)", UV), 0, 0), DomainError);
    CHECK_THROWS_AS(feval(parse_expr("sqrt(u)", UV), -1, 0), DomainError);
    CHECK_THROWS_AS(feval(parse_expr("u/v", UV), 1, 0), DomainError);
    CHECK_THROWS_AS(feval(parse_expr("u^0.5", UV), -2, 0), DomainError);
    // abs is fine pointwise but has no jet at 0
    CHECK(feval(parse_expr("abs(u)", UV), 0, 0) == doctest::Approx(0));
    CHECK_THROWS_AS(jeval(parse_expr("abs(u)", UV), 0, 1), DomainError);
    CHECK(jeval(parse_expr("abs(u)", UV), -2, 0).du == doctest::Approx(-1));
}

TEST_CASE("integer powers work on negative bases") {
    CHECK(feval(parse_expr("u^3", UV), -2, 0) == doctest::Approx(-8));
    CHECK(feval(parse_expr("u^-2", UV), 2, 0) == doctest::Approx(0.25));
    Jet2 j = jeval(parse_expr("u^3", UV), -2, 0);
    CHECK(j.du == doctest::Approx(12));
    CHECK(j.duu == doctest::Approx(-12));
}

TEST_CASE("jet derivatives match central finite differences") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> pt(-1.0, 1.0);
    const double h = 1e-5;
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Expr e = parse_expr(random_expr(rng, 3), UV);
        double u = pt(rng), v = pt(rng);
        Jet2 j = jeval(e, u, v);
        double f00 = feval(e, u, v);
        double fu1 = feval(e, u + h, v), fu0 = feval(e, u - h, v);
        double fv1 = feval(e, u, v + h), fv0 = feval(e, u, v - h);
        double du_fd = (fu1 - fu0) / (2 * h);
        double dv_fd = (fv1 - fv0) / (2 * h);
        double duu_fd = (fu1 - 2 * f00 + fu0) / (h * h);
        double dvv_fd = (fv1 - 2 * f00 + fv0) / (h * h);
        double duv_fd = (feval(e, u + h, v + h) - feval(e, u + h, v - h) -
                         feval(e, u - h, v + h) + feval(e, u - h, v - h)) /
                        (4 * h * h);
        double scale1 = std::max({1.0, std::fabs(j.du), std::fabs(j.dv)});
        CHECK(std::fabs(j.du - du_fd) / scale1 < 1e-6);
        CHECK(std::fabs(j.dv - dv_fd) / scale1 < 1e-6);
        double scale2 = std::max({1.0, std::fabs(j.duu), std::fabs(j.duv), std::fabs(j.dvv)});
        CHECK(std::fabs(j.duu - duu_fd) / scale2 < 1e-4);
        CHECK(std::fabs(j.dvv - dvv_fd) / scale2 < 1e-4);
        CHECK(std::fabs(j.duv - duv_fd) / scale2 < 1e-4);
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("zero-derivative seeds reproduce plain evaluation") {
    std::mt19937 rng(999);
    std::uniform_real_distribution<double> pt(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        Expr e = parse_expr(random_expr(rng, 3), UV);
        double u = pt(rng), v = pt(rng);
        Jet2 j = e.eval_jet({Jet2::constant(u), Jet2::constant(v)});
        CHECK(j.val == feval(e, u, v));
        CHECK(j.du == 0.0);
        CHECK(j.dvv == 0.0);
    }
}

TEST_CASE("unparse round-trips to an equivalent tree") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> pt(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Expr e = parse_expr(random_expr(rng, 3), UV);
        Expr e2 = parse_expr(e.unparse(), UV);
        for (int k = 0; k < 100; ++k) {
            double u = pt(rng), v = pt(rng);
            CHECK(feval(e, u, v) == doctest::Approx(feval(e2, u, v)).epsilon(1e-12));
        }
    }
}
