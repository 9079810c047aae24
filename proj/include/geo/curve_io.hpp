#pragma once
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "geo/geodesic.hpp"
#include "geo/revolution.hpp"
#include "geo/variational.hpp"

namespace geo {

// CSV columns t,u,v,du,dv,x,y,z,s at 17 significant digits.
void write_curve_csv(std::ostream& out, const GeodesicCurve& c);
// JSON variant with metadata (surface name, tolerances, total length, ...).
void write_curve_json(std::ostream& out, const GeodesicCurve& c,
                      const std::map<std::string, std::string>& metadata);

// CSV with header x,y for discrete curves.
void write_discrete_csv(std::ostream& out, const DiscreteCurve& c);

// Reads back the x,y,z columns of a curve CSV (either curve format).
std::vector<Vec3> read_curve_points_csv(std::istream& in);

// Wavefront OBJ: surface mesh (quads split to triangles) plus curves as
// `l` polyline elements. res is the number of quads per direction (min 2).
void write_obj(std::ostream& out, const SurfaceSpec& s, std::size_t res,
               const std::vector<std::vector<Vec3>>& curves);

} // namespace geo
