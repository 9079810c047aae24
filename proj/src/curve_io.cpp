#include "geo/curve_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace geo {

void write_curve_csv(std::ostream& out, const GeodesicCurve& c) {
    out << "t,u,v,du,dv,x,y,z,s\n";
    out.precision(17);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const GeodesicState& st = c.states[i];
        const Vec3& p = c.points[i];
        out << st.t << ',' << st.u << ',' << st.v << ',' << st.du << ',' << st.dv << ','
            << p.x << ',' << p.y << ',' << p.z << ',' << c.s[i] << '\n';
    }
}

void write_curve_json(std::ostream& out, const GeodesicCurve& c,
                      const std::map<std::string, std::string>& metadata) {
    nlohmann::json j;
    for (const auto& [k, v] : metadata) j["metadata"][k] = v;
    j["total_length"] = c.total_length;
    j["complete"] = c.complete;
    if (!c.note.empty()) j["note"] = c.note;
    auto& samples = j["samples"];
    samples = nlohmann::json::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const GeodesicState& st = c.states[i];
        const Vec3& p = c.points[i];
        samples.push_back({{"t", st.t}, {"u", st.u}, {"v", st.v},
                           {"du", st.du}, {"dv", st.dv},
                           {"x", p.x}, {"y", p.y}, {"z", p.z}, {"s", c.s[i]}});
    }
    out << j.dump(2) << '\n';
}

void write_discrete_csv(std::ostream& out, const DiscreteCurve& c) {
    out << "x,y\n";
    out.precision(17);
    for (std::size_t i = 0; i < c.xs.size(); ++i)
        out << c.xs[i] << ',' << c.ys[i] << '\n';
}

std::vector<Vec3> read_curve_points_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty curve CSV");
    std::vector<std::string> cols;
    {
        std::istringstream hs(header);
        std::string c;
        while (std::getline(hs, c, ',')) cols.push_back(c);
    }
    int ix = -1, iy = -1, iz = -1;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == "x") ix = static_cast<int>(i);
        if (cols[i] == "y") iy = static_cast<int>(i);
        if (cols[i] == "z") iz = static_cast<int>(i);
    }
    if (ix < 0 || iy < 0) throw std::runtime_error("curve CSV lacks x/y columns");

    std::vector<Vec3> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        Vec3 p;
        p.x = row[static_cast<std::size_t>(ix)];
        p.y = row[static_cast<std::size_t>(iy)];
        p.z = iz >= 0 ? row[static_cast<std::size_t>(iz)] : 0.0;
        pts.push_back(p);
    }
    return pts;
}

void write_obj(std::ostream& out, const SurfaceSpec& s, std::size_t res,
               const std::vector<std::vector<Vec3>>& curves) {
    if (res < 2) throw std::invalid_argument("OBJ export requires grid resolution >= 2");
    out.precision(17);
    std::size_t nv = res + 1;
    out << "# parametric surface mesh: " << s.name() << "\n";
    for (std::size_t i = 0; i < nv; ++i) {
        for (std::size_t j = 0; j < nv; ++j) {
            double u = s.u_min() + (s.u_max() - s.u_min()) * static_cast<double>(i) / res;
            double v = s.v_min() + (s.v_max() - s.v_min()) * static_cast<double>(j) / res;
            Vec3 p = s.eval_point(u, v);
            out << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
        }
    }
    auto idx = [&](std::size_t i, std::size_t j) { return i * nv + j + 1; };
    for (std::size_t i = 0; i < res; ++i) {
        for (std::size_t j = 0; j < res; ++j) {
            out << "f " << idx(i, j) << ' ' << idx(i + 1, j) << ' ' << idx(i + 1, j + 1) << '\n';
            out << "f " << idx(i, j) << ' ' << idx(i + 1, j + 1) << ' ' << idx(i, j + 1) << '\n';
        }
    }
    std::size_t base = nv * nv;
    for (const auto& curve : curves) {
        for (const Vec3& p : curve) out << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
        out << "l";
        for (std::size_t k = 0; k < curve.size(); ++k) out << ' ' << base + k + 1;
        out << '\n';
        base += curve.size();
    }
}

} // namespace geo
