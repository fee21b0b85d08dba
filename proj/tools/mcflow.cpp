#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcf/cases.hpp"
#include "mcf/driver.hpp"
#include "mcf/exact_riemann.hpp"
#include "mcf/kernels.hpp"
#include "mcf/util.hpp"

namespace {

struct RunArgs {
    std::string case_name;
    std::string config_path;
    int cells = 0;
    double tend = -1.0;
    double cfl = 0.0;
    double eps = 0.0;
    std::string out = "out";
    std::string solver;
    bool no_viscous = false, no_relax = false, no_conduct = false;
    bool first_order = false;
    bool quiet = false;
};

mcf::CaseConfig resolve_case(const RunArgs& a) {
    if (a.case_name.empty() == a.config_path.empty())
        throw mcf::ConfigError("specify exactly one of --case or --config");
    mcf::CaseConfig cfg;
    if (!a.config_path.empty()) {
        cfg = mcf::parse_config_file(a.config_path);
    } else if (a.eps > 0.0) {
        // Rebuild the named case at the requested trace fraction.
        const std::string& n = a.case_name;
        if (n == "pvt_advection") cfg = mcf::cases::pvt_advection(200, a.eps);
        else if (n == "shock_tube") cfg = mcf::cases::conducting_shock_tube(100, true, a.eps);
        else if (n == "shock_tube_nodiff")
            cfg = mcf::cases::conducting_shock_tube(100, false, a.eps);
        else if (n == "laser_ablation") cfg = mcf::cases::laser_ablation_1d(720, a.eps);
        else cfg = mcf::cases::by_name(n);
    } else {
        cfg = mcf::cases::by_name(a.case_name);
    }
    if (a.cells > 0) {
        if (cfg.dim == 2) {
            cfg.ny = std::max(1, static_cast<int>(0.5 + double(cfg.ny) * a.cells / cfg.nx));
        }
        cfg.nx = a.cells;
    }
    if (a.tend >= 0.0) cfg.output.t_end = a.tend;
    if (a.cfl > 0.0) cfg.solver.cfl = a.cfl;
    if (!a.solver.empty()) {
        if (a.solver == "lim") cfg.solver.parabolic = mcf::InnerSolver::lim;
        else if (a.solver == "implicit") cfg.solver.parabolic = mcf::InnerSolver::implicit_pcg;
        else throw mcf::ConfigError("--solver must be lim or implicit");
    }
    if (a.no_viscous) cfg.physics.viscous = false;
    if (a.no_relax) cfg.physics.relax = false;
    if (a.no_conduct) cfg.physics.conduct = false;
    if (a.no_relax && !a.no_conduct && cfg.physics.conduct)
        throw mcf::ConfigError("--no-relax requires --no-conduct (conduction assumes "
                               "temperature equilibrium)");
    if (a.first_order) cfg.solver.first_order = true;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mcflow - compressible multicomponent flow solver"};
    app.require_subcommand(1);

    RunArgs ra;
    auto* runc = app.add_subcommand("run", "run a built-in case or a config file");
    runc->add_option("--case", ra.case_name, "built-in case name (see list-cases)");
    runc->add_option("--config", ra.config_path, "path to a case configuration file");
    runc->add_option("--cells", ra.cells, "override x resolution (2D keeps the aspect ratio)");
    runc->add_option("--tend", ra.tend, "override end time");
    runc->add_option("--cfl", ra.cfl, "override CFL number");
    runc->add_option("--eps", ra.eps, "override the interface trace fraction");
    runc->add_option("--out", ra.out, "output directory");
    runc->add_option("--solver", ra.solver, "parabolic solver: lim | implicit");
    runc->add_flag("--no-viscous", ra.no_viscous, "disable the viscous stage");
    runc->add_flag("--no-relax", ra.no_relax, "disable temperature relaxation");
    runc->add_flag("--no-conduct", ra.no_conduct, "disable heat conduction");
    runc->add_flag("--first-order", ra.first_order, "piecewise-constant reconstruction");
    runc->add_flag("--quiet", ra.quiet, "suppress progress output");

    auto* listc = app.add_subcommand("list-cases", "print the built-in case names");

    struct {
        std::string case_name;
        std::string out;
    } dc;
    auto* dumpc = app.add_subcommand("dump-case", "write a built-in case as a config file");
    dumpc->add_option("--case", dc.case_name)->required();
    dumpc->add_option("--out", dc.out, "path (stdout when omitted)");

    struct {
        double rho_l = 1.0, u_l = 0.0, p_l = 1.0, gamma_l = 1.4, pinf_l = 0.0;
        double rho_r = 0.125, u_r = 0.0, p_r = 0.1, gamma_r = 1.4, pinf_r = 0.0;
        double time = 0.2, x0 = 0.0, x1 = 1.0, xdiaph = 0.5;
        int samples = 200;
        std::string out;
    } rm;
    auto* riec = app.add_subcommand("riemann", "sample the exact two-material solution");
    riec->add_option("--rho-l", rm.rho_l);
    riec->add_option("--u-l", rm.u_l);
    riec->add_option("--p-l", rm.p_l);
    riec->add_option("--gamma-l", rm.gamma_l);
    riec->add_option("--pinf-l", rm.pinf_l);
    riec->add_option("--rho-r", rm.rho_r);
    riec->add_option("--u-r", rm.u_r);
    riec->add_option("--p-r", rm.p_r);
    riec->add_option("--gamma-r", rm.gamma_r);
    riec->add_option("--pinf-r", rm.pinf_r);
    riec->add_option("--time", rm.time);
    riec->add_option("--x0", rm.x0);
    riec->add_option("--x1", rm.x1);
    riec->add_option("--xdiaph", rm.xdiaph);
    riec->add_option("--samples", rm.samples);
    riec->add_option("--out", rm.out, "CSV path (stdout when omitted)");

    struct {
        std::string case_name;
        std::vector<int> cells;
        std::string reference = "oracle";
        double tend = -1.0;
        std::string out;
    } cv;
    auto* convc = app.add_subcommand("converge", "refinement study against an exact or finest"
                                                 " reference");
    convc->add_option("--case", cv.case_name)->required();
    convc->add_option("--cells", cv.cells, "resolutions, e.g. --cells 100 200 400")->required();
    convc->add_option("--reference", cv.reference, "oracle | finest");
    convc->add_option("--tend", cv.tend);
    convc->add_option("--out", cv.out, "write the CSV table here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (runc->parsed()) {
            mcf::RunPlan plan;
            plan.cfg = resolve_case(ra);
            plan.outdir = ra.out;
            plan.quiet = ra.quiet;
            const mcf::RunResult res = mcf::run(plan);
            if (!ra.quiet) {
                std::printf("case %s: %d steps to t=%.6g, %zu snapshots in %s (simd: %s)\n",
                            plan.cfg.name.c_str(), res.steps, res.time,
                            res.snapshot_files.size(), ra.out.c_str(),
                            mcf::kernels::active_variant().c_str());
            }
        } else if (listc->parsed()) {
            for (const auto& n : mcf::cases::builtin_names()) std::printf("%s\n", n.c_str());
        } else if (dumpc->parsed()) {
            const std::string text = mcf::serialize_config(mcf::cases::by_name(dc.case_name));
            if (dc.out.empty()) {
                std::cout << text;
            } else {
                std::ofstream f(dc.out);
                if (!f) throw mcf::ConfigError("cannot open '" + dc.out + "'");
                f << text;
            }
        } else if (riec->parsed()) {
            mcf::MaterialParams ml, mr2;
            ml.gamma = rm.gamma_l;
            ml.p_inf = rm.pinf_l;
            mr2.gamma = rm.gamma_r;
            mr2.p_inf = rm.pinf_r;
            const auto sol = mcf::riemann::exact_riemann({rm.rho_l, rm.u_l, rm.p_l},
                                                         {rm.rho_r, rm.u_r, rm.p_r}, ml, mr2);
            std::ostringstream o;
            char buf[160];
            std::snprintf(buf, sizeof buf, "# p_star=%.17g u_star=%.17g\n", sol.p_star,
                          sol.u_star);
            o << buf << "x,rho,u,p,material\n";
            for (int i = 0; i < rm.samples; ++i) {
                const double x = rm.x0 + (i + 0.5) * (rm.x1 - rm.x0) / rm.samples;
                const auto s = mcf::riemann::sample_solution(sol, (x - rm.xdiaph) / rm.time);
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d\n", x, s.rho, s.u,
                              s.p, s.material);
                o << buf;
            }
            if (rm.out.empty()) {
                std::cout << o.str();
            } else {
                std::ofstream f(rm.out);
                f << o.str();
            }
        } else if (convc->parsed()) {
            mcf::CaseConfig cfg = mcf::cases::by_name(cv.case_name);
            if (cv.tend >= 0.0) cfg.output.t_end = cv.tend;
            const auto rep = mcf::convergence_report(cfg, cv.cells, cv.reference);
            std::cout << rep.summary;
            if (!cv.out.empty()) {
                std::ofstream f(cv.out);
                f << rep.csv;
            } else {
                std::cout << rep.csv;
            }
        }
    } catch (const mcf::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const mcf::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
