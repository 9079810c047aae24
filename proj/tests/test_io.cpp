#include <doctest.h>

#include <sstream>

#include "geo/curve_io.hpp"
#include "geo/geodesic.hpp"

#include <json.hpp>

using namespace geo;

TEST_CASE("curve CSV writes all columns and reads back") {
    SurfaceSpec sph = make_sphere(1.0);
    GeodesicCurve c = integrate_geodesic(sph, {0, 0, M_PI / 2, 1, 0}, 1.0);
    std::stringstream ss;
    write_curve_csv(ss, c);

    std::string header;
    std::getline(ss, header);
    CHECK(header == "t,u,v,du,dv,x,y,z,s");

    ss.seekg(0);
    std::vector<Vec3> pts = read_curve_points_csv(ss);
    REQUIRE(pts.size() == c.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK((pts[i] - c.points[i]).norm() < 1e-14);
}

TEST_CASE("curve JSON carries metadata and samples") {
    SurfaceSpec plane = make_plane();
    GeodesicCurve c = integrate_geodesic(plane, {0, 0, 0, 1, 0}, 1.0);
    std::stringstream ss;
    write_curve_json(ss, c, {{"surface", "plane"}, {"tol", "1e-9"}});
    auto j = nlohmann::json::parse(ss.str());
    CHECK(j["metadata"]["surface"] == "plane");
    CHECK(j["total_length"].get<double>() == doctest::Approx(1.0));
    CHECK(j["samples"].size() == c.size());
}

TEST_CASE("discrete curve CSV") {
    DiscreteCurve c = DiscreteCurve::linear(0, 1, 0, 1, 3);
    std::stringstream ss;
    write_discrete_csv(ss, c);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "x,y");
    int rows = 0;
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 5);
}

TEST_CASE("OBJ export: vertex and face counts") {
    SurfaceSpec sph = make_sphere(1.0);
    std::stringstream ss;
    std::vector<std::vector<Vec3>> curves = {{{1, 0, 0}, {0, 1, 0}}};
    write_obj(ss, sph, 32, curves);
    int verts = 0, faces = 0, lines = 0;
    std::string line;
    while (std::getline(ss, line)) {
        if (line.rfind("v ", 0) == 0) ++verts;
        if (line.rfind("f ", 0) == 0) ++faces;
        if (line.rfind("l", 0) == 0 && line[1] == ' ') ++lines;
    }
    CHECK(verts == 33 * 33 + 2);
    CHECK(faces == 32 * 32 * 2);
    CHECK(lines == 1);

    CHECK_THROWS(write_obj(ss, sph, 1, {}));
}
