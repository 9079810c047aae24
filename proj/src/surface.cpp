#include "geo/surface.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace geo {

SurfaceSpec::SurfaceSpec(std::string name, Expr x, Expr y, Expr z,
                         double u_min, double u_max, double v_min, double v_max,
                         bool periodic_u, bool periodic_v)
    : name_(std::move(name)), x_(std::move(x)), y_(std::move(y)), z_(std::move(z)),
      u_min_(u_min), u_max_(u_max), v_min_(v_min), v_max_(v_max),
      periodic_u_(periodic_u), periodic_v_(periodic_v) {
    if (!(u_min_ < u_max_) || !(v_min_ < v_max_))
        throw std::invalid_argument("degenerate surface domain");
}

static double wrap_periodic(double x, double lo, double hi) {
    double period = hi - lo;
    double w = std::fmod(x - lo, period);
    if (w < 0) w += period;
    return lo + w;
}

std::pair<double, double> SurfaceSpec::wrap(double u, double v) const {
    if (periodic_u_) u = wrap_periodic(u, u_min_, u_max_);
    if (periodic_v_) v = wrap_periodic(v, v_min_, v_max_);
    return {u, v};
}

bool SurfaceSpec::in_domain(double u, double v) const {
    auto [wu, wv] = wrap(u, v);
    const double slack = 1e-12;
    bool u_ok = periodic_u_ || (wu >= u_min_ - slack && wu <= u_max_ + slack);
    bool v_ok = periodic_v_ || (wv >= v_min_ - slack && wv <= v_max_ + slack);
    return u_ok && v_ok;
}

Vec3 SurfaceSpec::eval_point(double u, double v) const {
    auto [wu, wv] = wrap(u, v);
    std::vector<double> seeds = {wu, wv};
    return {x_.eval(seeds), y_.eval(seeds), z_.eval(seeds)};
}

std::pair<Vec3, Vec3> SurfaceSpec::tangents(double u, double v) const {
    auto [wu, wv] = wrap(u, v);
    std::vector<Jet2> seeds = {Jet2::var_u(wu), Jet2::var_v(wv)};
    Jet2 X = x_.eval_jet(seeds), Y = y_.eval_jet(seeds), Z = z_.eval_jet(seeds);
    return {Vec3{X.du, Y.du, Z.du}, Vec3{X.dv, Y.dv, Z.dv}};
}

FundamentalForm SurfaceSpec::fundamental_form(double u, double v) const {
    auto [wu, wv] = wrap(u, v);
    std::vector<Jet2> seeds = {Jet2::var_u(wu), Jet2::var_v(wv)};
    Jet2 c[3] = {x_.eval_jet(seeds), y_.eval_jet(seeds), z_.eval_jet(seeds)};

    FundamentalForm f;
    f.u = u;
    f.v = v;
    for (const Jet2& j : c) {
        f.E += j.du * j.du;
        f.F += j.du * j.dv;
        f.G += j.dv * j.dv;
        // Partials of the dot products via the second-order terms.
        f.E_u += 2.0 * j.du * j.duu;
        f.E_v += 2.0 * j.du * j.duv;
        f.F_u += j.duu * j.dv + j.du * j.duv;
        f.F_v += j.duv * j.dv + j.du * j.dvv;
        f.G_u += 2.0 * j.dv * j.duv;
        f.G_v += 2.0 * j.dv * j.dvv;
    }
    if (!std::isfinite(f.E) || !std::isfinite(f.F) || !std::isfinite(f.G))
        throw DomainError("non-finite fundamental form");
    return f;
}

RegularityStatus SurfaceSpec::regularity_check(double u, double v, double eps_reg) const {
    FundamentalForm f = fundamental_form(u, v);
    double det = f.det();
    return {det > eps_reg, det};
}

SurfaceSpec make_plane() {
    std::vector<std::string> uv = {"u", "v"};
    return SurfaceSpec("plane",
                       parse_expr("u", uv), parse_expr("v", uv), parse_expr("0", uv),
                       -1e6, 1e6, -1e6, 1e6);
}

SurfaceSpec make_cylinder(double a) {
    if (!(a > 0)) throw std::invalid_argument("cylinder radius must be positive");
    std::vector<std::string> uv = {"u", "v"};
    std::ostringstream sa;
    sa.precision(17);
    sa << a;
    // u is the angle phi, v is the height z.
    return SurfaceSpec("cylinder",
                       parse_expr(sa.str() + "*cos(u)", uv),
                       parse_expr(sa.str() + "*sin(u)", uv),
                       parse_expr("v", uv),
                       0.0, 2.0 * M_PI, -1e6, 1e6,
                       /*periodic_u=*/true, /*periodic_v=*/false);
}

SurfaceSpec make_sphere(double a) {
    if (!(a > 0)) throw std::invalid_argument("sphere radius must be positive");
    std::vector<std::string> uv = {"u", "v"};
    std::ostringstream sa;
    sa.precision(17);
    sa << a;
    // u: longitude (periodic), v: colatitude, poles excluded.
    return SurfaceSpec("sphere",
                       parse_expr(sa.str() + "*sin(v)*cos(u)", uv),
                       parse_expr(sa.str() + "*sin(v)*sin(u)", uv),
                       parse_expr(sa.str() + "*cos(v)", uv),
                       0.0, 2.0 * M_PI, 1e-9, M_PI - 1e-9,
                       /*periodic_u=*/true, /*periodic_v=*/false);
}

SurfaceSpec make_revolution(const RevolutionProfile& profile) {
    if (!(profile.u_min < profile.u_max))
        throw std::invalid_argument("degenerate revolution interval");
    std::vector<std::string> uv = {"u", "v"};
    std::string f = "(" + profile.f.unparse() + ")";
    return SurfaceSpec("revolution",
                       parse_expr("u", uv),
                       parse_expr(f + "*cos(v)", uv),
                       parse_expr(f + "*sin(v)", uv),
                       profile.u_min, profile.u_max, 0.0, 2.0 * M_PI,
                       /*periodic_u=*/false, /*periodic_v=*/true);
}

namespace {

void strip(std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    std::size_t e = s.find_last_not_of(" \t\r\n");
    s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
}

// Parses `u in [a, b]` or `u in [a, b] (periodic)`.
void parse_interval(const std::string& rhs, double& lo, double& hi, bool& periodic) {
    std::string s = rhs;
    periodic = false;
    std::size_t p = s.find("(periodic)");
    if (p != std::string::npos) {
        periodic = true;
        s = s.substr(0, p);
    }
    strip(s);
    if (s.empty() || s.front() != '[' || s.back() != ']')
        throw std::runtime_error("bad interval syntax: " + rhs);
    s = s.substr(1, s.size() - 2);
    std::size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw std::runtime_error("bad interval syntax: " + rhs);
    std::vector<std::string> none;
    lo = parse_expr(s.substr(0, comma), none).eval({});
    hi = parse_expr(s.substr(comma + 1), none).eval({});
}

} // namespace

SurfaceSpec parse_surface(std::istream& in) {
    std::string name = "surface";
    std::string xs, ys, zs;
    double ulo = 0, uhi = 0, vlo = 0, vhi = 0;
    bool uper = false, vper = false, have_u = false, have_v = false;

    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        strip(line);
        if (line.empty()) continue;

        if (line.rfind("u in", 0) == 0) {
            parse_interval(line.substr(4), ulo, uhi, uper);
            have_u = true;
            continue;
        }
        if (line.rfind("v in", 0) == 0) {
            parse_interval(line.substr(4), vlo, vhi, vper);
            have_v = true;
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bad surface file line: " + line);
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        strip(key);
        strip(val);
        if (key == "name") name = val;
        else if (key == "x") xs = val;
        else if (key == "y") ys = val;
        else if (key == "z") zs = val;
        else throw std::runtime_error("unknown surface file key: " + key);
    }
    if (xs.empty() || ys.empty() || zs.empty())
        throw std::runtime_error("surface file missing x, y, or z");
    if (!have_u || !have_v)
        throw std::runtime_error("surface file missing u or v interval");

    std::vector<std::string> uv = {"u", "v"};
    return SurfaceSpec(name, parse_expr(xs, uv), parse_expr(ys, uv), parse_expr(zs, uv),
                       ulo, uhi, vlo, vhi, uper, vper);
}

SurfaceSpec parse_surface_text(const std::string& text) {
    std::istringstream in(text);
    return parse_surface(in);
}

std::string SurfaceSpec::serialize() const {
    std::ostringstream out;
    out.precision(17);
    out << "name = " << name_ << "\n";
    out << "x = " << x_.unparse() << "\n";
    out << "y = " << y_.unparse() << "\n";
    out << "z = " << z_.unparse() << "\n";
    out << "u in [" << u_min_ << ", " << u_max_ << "]" << (periodic_u_ ? " (periodic)" : "") << "\n";
    out << "v in [" << v_min_ << ", " << v_max_ << "]" << (periodic_v_ ? " (periodic)" : "") << "\n";
    return out.str();
}

SurfaceSpec load_surface(const std::string& arg) {
    auto param = [&](const std::string& prefix) -> std::optional<double> {
        if (arg.rfind(prefix, 0) != 0) return std::nullopt;
        if (arg.size() == prefix.size()) return 1.0;
        if (arg[prefix.size()] != ':') return std::nullopt;
        return std::stod(arg.substr(prefix.size() + 1));
    };
    if (arg == "plane") return make_plane();
    if (auto a = param("cylinder")) return make_cylinder(*a);
    if (auto a = param("sphere")) return make_sphere(*a);

    std::ifstream in(arg);
    if (!in) throw std::runtime_error("cannot open surface file: " + arg);
    return parse_surface(in);
}

} // namespace geo
