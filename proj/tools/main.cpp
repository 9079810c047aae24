#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "geo/analytic.hpp"
#include "geo/curve_io.hpp"
#include "geo/geodesic.hpp"
#include "geo/revolution.hpp"
#include "geo/surface.hpp"
#include "geo/variational.hpp"

#include "verify.hpp"

using nlohmann::json;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void emit_report(const json& report) {
    std::cout << report.dump(2) << std::endl;
}

void write_outputs(const std::string& prefix, const geo::GeodesicCurve& curve,
                   const std::map<std::string, std::string>& meta) {
    if (prefix.empty()) return;
    std::ofstream csv(prefix + ".csv");
    geo::write_curve_csv(csv, curve);
    std::ofstream js(prefix + ".json");
    geo::write_curve_json(js, curve, meta);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"geodesics and calculus-of-variations toolkit"};
    app.require_subcommand(1);

    std::string surface_arg, out_prefix;
    double tol = 1e-9;
    std::size_t seeds = 32;

    // fff
    auto* fff = app.add_subcommand("fff", "first fundamental form at a point");
    double fu = 0, fv = 0;
    fff->add_option("surface", surface_arg)->required();
    fff->add_option("u", fu)->required();
    fff->add_option("v", fv)->required();

    // shoot
    auto* shoot = app.add_subcommand("shoot", "integrate a geodesic from a point and angle");
    double su = 0, sv = 0, sangle = 0, slength = 1;
    shoot->add_option("surface", surface_arg)->required();
    shoot->add_option("u", su)->required();
    shoot->add_option("v", sv)->required();
    shoot->add_option("angle", sangle)->required();
    shoot->add_option("length", slength)->required();
    shoot->add_option("--tol", tol);
    shoot->add_option("--out", out_prefix);

    // connect
    auto* connect = app.add_subcommand("connect", "geodesic between two surface points");
    double cu0 = 0, cv0 = 0, cu1 = 0, cv1 = 0;
    std::size_t max_iter = 100;
    connect->add_option("surface", surface_arg)->required();
    connect->add_option("u0", cu0)->required();
    connect->add_option("v0", cv0)->required();
    connect->add_option("u1", cu1)->required();
    connect->add_option("v1", cv1)->required();
    connect->add_option("--tol", tol);
    connect->add_option("--seeds", seeds);
    connect->add_option("--max-iter", max_iter);
    connect->add_option("--out", out_prefix);

    // revolve
    auto* revolve = app.add_subcommand("revolve", "geodesic on a surface of revolution");
    std::string fexpr;
    double ru1 = 0, ru2 = 1;
    double c1 = 0;
    double v_target = 0;
    bool have_c1 = false, have_target = false;
    revolve->add_option("f", fexpr, "profile f(u)")->required();
    revolve->add_option("u1", ru1)->required();
    revolve->add_option("u2", ru2)->required();
    auto* oc1 = revolve->add_option("--c1", c1, "first-integral constant");
    auto* otg = revolve->add_option("--connect", v_target, "solve c1 for v(u2) target");
    oc1->excludes(otg);
    revolve->add_option("--tol", tol);
    revolve->add_option("--out", out_prefix);

    // minimize
    auto* minimize = app.add_subcommand("minimize", "direct method for a 1-D functional");
    std::string integrand;
    double ma = 0, mb = 1, mA = 0, mB = 1;
    std::size_t mn = 31;
    std::size_t mmax_iter = 500;
    minimize->add_option("integrand", integrand, "F(x, y, p)")->required();
    minimize->add_option("a", ma)->required();
    minimize->add_option("b", mb)->required();
    minimize->add_option("A", mA)->required();
    minimize->add_option("B", mB)->required();
    minimize->add_option("n", mn)->required();
    minimize->add_option("--tol", tol);
    minimize->add_option("--max-iter", mmax_iter);
    minimize->add_option("--out", out_prefix);

    // verify
    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    verify->add_option("suite", suite)->required();

    // export-obj
    auto* exp = app.add_subcommand("export-obj", "export surface mesh and curves as OBJ");
    std::size_t res = 32;
    std::vector<std::string> curve_files;
    std::string obj_out = "out.obj";
    exp->add_option("surface", surface_arg)->required();
    exp->add_option("res", res)->required();
    exp->add_option("curves", curve_files, "curve CSV files");
    exp->add_option("--out", obj_out);

    CLI11_PARSE(app, argc, argv);

    Timer timer;
    try {
        if (*fff) {
            geo::SurfaceSpec s = geo::load_surface(surface_arg);
            if (!s.in_domain(fu, fv)) {
                std::cerr << "error: point (" << fu << ", " << fv << ") outside domain\n";
                return 2;
            }
            geo::FundamentalForm f = s.fundamental_form(fu, fv);
            json r = {{"command", "fff"},       {"surface", s.name()},
                      {"u", fu},               {"v", fv},
                      {"E", f.E},              {"F", f.F},
                      {"G", f.G},              {"E_u", f.E_u},
                      {"E_v", f.E_v},          {"F_u", f.F_u},
                      {"F_v", f.F_v},          {"G_u", f.G_u},
                      {"G_v", f.G_v},          {"det", f.det()},
                      {"wall_time_s", timer.seconds()}};
            emit_report(r);
            return 0;
        }

        if (*shoot) {
            geo::SurfaceSpec s = geo::load_surface(surface_arg);
            geo::GeodesicState st0 = geo::launch_state(s, su, sv, sangle);
            geo::IntegrateOptions io;
            io.tol = tol;
            geo::GeodesicCurve c = geo::integrate_geodesic(s, st0, slength, io);
            geo::ResidualPair res = geo::el_residual_geodesic(s, c);
            write_outputs(out_prefix, c,
                          {{"surface", s.name()}, {"tol", std::to_string(tol)},
                           {"command", "shoot"}});
            json r = {{"command", "shoot"},
                      {"surface", s.name()},
                      {"tol", tol},
                      {"length", c.total_length},
                      {"complete", c.complete},
                      {"end_u", c.states.back().u},
                      {"end_v", c.states.back().v},
                      {"residual_eq_u", res.eq_u},
                      {"residual_eq_v", res.eq_v},
                      {"samples", c.size()},
                      {"wall_time_s", timer.seconds()}};
            if (!c.note.empty()) r["note"] = c.note;
            emit_report(r);
            return c.complete ? 0 : 1;
        }

        if (*connect) {
            geo::SurfaceSpec s = geo::load_surface(surface_arg);
            geo::ConnectOptions co;
            co.tol = tol;
            co.seeds = seeds;
            co.max_iter = max_iter;
            geo::ConnectResult cr = geo::connect_geodesic(s, cu0, cv0, cu1, cv1, co);
            json r = {{"command", "connect"}, {"surface", s.name()},
                      {"tol", tol},          {"seeds", seeds},
                      {"converged", cr.converged},
                      {"miss", cr.miss},
                      {"wall_time_s", timer.seconds()}};
            if (cr.converged) {
                write_outputs(out_prefix, cr.curve,
                              {{"surface", s.name()}, {"tol", std::to_string(tol)},
                               {"command", "connect"}});
                r["length"] = cr.curve.total_length;
                r["theta"] = cr.theta;
                r["ill_conditioned"] = cr.ill_conditioned;
                r["alternative_lengths"] = cr.alternative_lengths;
            } else {
                json misses = json::array();
                for (const auto& sr : cr.seed_reports)
                    misses.push_back({{"theta", sr.theta}, {"miss", sr.miss}});
                r["seed_misses"] = misses;
            }
            emit_report(r);
            return cr.converged ? 0 : 1;
        }

        if (*revolve) {
            have_c1 = oc1->count() > 0;
            have_target = otg->count() > 0;
            if (!have_c1 && !have_target) {
                std::cerr << "error: revolve needs --c1 or --connect\n";
                return 2;
            }
            geo::Expr f = geo::parse_expr(fexpr, {"u"});
            double used_c1 = have_c1 ? c1 : geo::solve_c1_for_target(f, ru1, ru2, v_target, tol);
            geo::QuadOptions qo;
            qo.tol = std::min(tol, 1e-10);
            geo::QuadratureResult q = geo::geodesic_revolution(f, ru1, ru2, used_c1, qo);

            if (!out_prefix.empty()) {
                // sample the (u, v(u)) curve onto the revolution surface
                geo::SurfaceSpec s = geo::make_revolution({f, ru1, ru2});
                std::vector<geo::GeodesicState> states;
                for (std::size_t i = 0; i < q.t.size(); ++i) {
                    double du = 1.0, dv = 0.0;
                    if (i + 1 < q.t.size())
                        dv = (q.val[i + 1] - q.val[i]) / (q.t[i + 1] - q.t[i]);
                    else if (i > 0)
                        dv = (q.val[i] - q.val[i - 1]) / (q.t[i] - q.t[i - 1]);
                    states.push_back({q.t[i], q.t[i], q.val[i], du, dv});
                }
                geo::GeodesicCurve c = geo::curve_from_states(s, states);
                write_outputs(out_prefix, c,
                              {{"surface", "revolution"},
                               {"c1", std::to_string(used_c1)},
                               {"branch", "+"},
                               {"tol", std::to_string(qo.tol)},
                               {"command", "revolve"}});
            }
            json r = {{"command", "revolve"},
                      {"c1", used_c1},
                      {"u1", ru1},
                      {"u2", ru2},
                      {"v_end", q.val.back()},
                      {"singular_start", q.singular_start},
                      {"singular_end", q.singular_end},
                      {"wall_time_s", timer.seconds()}};
            emit_report(r);
            return 0;
        }

        if (*minimize) {
            auto fs = geo::FunctionalSpec::from_text(integrand, ma, mb, mA, mB);
            geo::MinimizeOptions mo;
            mo.tol = std::min(tol, 1e-10);
            mo.max_iter = mmax_iter;
            geo::MinimizeResult mr = geo::direct_minimize(fs, mn, mo);
            if (!out_prefix.empty()) {
                std::ofstream csv(out_prefix + ".csv");
                geo::write_discrete_csv(csv, mr.curve);
            }
            json r = {{"command", "minimize"},
                      {"integrand", integrand},
                      {"n", mn},
                      {"converged", mr.converged},
                      {"iterations", mr.iterations},
                      {"grad_max_norm", mr.grad_max_norm},
                      {"value", mr.value},
                      {"wall_time_s", timer.seconds()}};
            emit_report(r);
            return mr.converged ? 0 : 1;
        }

        if (*verify) return run_verify(suite);

        if (*exp) {
            geo::SurfaceSpec s = geo::load_surface(surface_arg);
            std::vector<std::vector<geo::Vec3>> curves;
            for (const std::string& path : curve_files) {
                std::ifstream in(path);
                if (!in) {
                    std::cerr << "error: cannot open curve file " << path << "\n";
                    return 2;
                }
                curves.push_back(geo::read_curve_points_csv(in));
            }
            std::ofstream out(obj_out);
            geo::write_obj(out, s, res, curves);
            json r = {{"command", "export-obj"}, {"surface", s.name()},
                      {"res", res},             {"curves", curve_files.size()},
                      {"out", obj_out},         {"wall_time_s", timer.seconds()}};
            emit_report(r);
            return 0;
        }
    } catch (const geo::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const geo::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
