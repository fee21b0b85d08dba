#include "mcf/driver.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "mcf/cases.hpp"
#include "mcf/closures.hpp"
#include "mcf/eos.hpp"
#include "mcf/exact_riemann.hpp"
#include "mcf/hyperbolic.hpp"
#include "mcf/output.hpp"
#include "mcf/thermal.hpp"
#include "mcf/util.hpp"
#include "mcf/viscous.hpp"

namespace mcf {

namespace {

std::vector<double> snapshot_times(const OutputPlan& out) {
    std::vector<double> ts = out.times;
    if (ts.empty() && out.t_end > 0.0 && out.snapshots > 0) {
        for (int k = 1; k <= out.snapshots; ++k)
            ts.push_back(out.t_end * k / out.snapshots);
    }
    std::sort(ts.begin(), ts.end());
    if (out.t_end > 0.0 && (ts.empty() || ts.back() < out.t_end)) ts.push_back(out.t_end);
    std::erase_if(ts, [](double t) { return t <= 0.0; });
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct BoundsTracker {
    double alpha_min = 1.0, alpha_max = 0.0, sum_err = 0.0;
    double rho_min = std::numeric_limits<double>::infinity();

    void update(const FlowField& U, const PrimField& W) {
        const Grid& g = U.grid;
        for (int j = g.jb(); j < g.je(); ++j)
            for (int i = g.ib(); i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, j);
                double s = 0.0, rho = 0.0;
                for (int k = 0; k < U.nphase; ++k) {
                    const double a = W.alpha[k][c];
                    alpha_min = std::min(alpha_min, a);
                    alpha_max = std::max(alpha_max, a);
                    s += a;
                    rho += U.m[k][c];
                }
                sum_err = std::max(sum_err, std::abs(s - 1.0));
                rho_min = std::min(rho_min, rho);
            }
    }
};

} // namespace

RunResult run(const RunPlan& plan, const StepProbe& probe) {
    const CaseConfig& cfg = plan.cfg;
    cfg.validate();
    const auto& mats = cfg.materials;

    RunResult res;
    init_fields(cfg, res.U, res.W);
    FlowField& U = res.U;
    PrimField& W = res.W;
    const Grid& g = U.grid;
    const int n = U.nphase;

    std::filesystem::create_directories(plan.outdir);
    auto snap_path = [&](int idx) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "_%04d", idx);
        return plan.outdir + "/" + cfg.output.prefix + buf +
               (cfg.dim == 1 ? ".csv" : ".vtk");
    };
    auto write_snapshot = [&](int idx) {
        const std::string path = snap_path(idx);
        if (cfg.dim == 1)
            write_csv_1d(path, U, W, mats);
        else
            write_vtk_2d(path, U, W, mats);
        res.snapshot_files.push_back(path);
    };

    res.diagnostics_file = plan.outdir + "/" + cfg.output.prefix + "_diag.csv";
    std::ofstream diag(res.diagnostics_file);
    diag << "step,time,dt";
    for (int k = 0; k < n; ++k) diag << ",sum_m" << k;
    diag << ",sum_momx,sum_momy,sum_rhoE,p_min,p_max,T_min,T_max,alpha_min,alpha_max,entropy"
         << ",ms_hydro,ms_viscous,ms_relax,ms_conduct\n";
    auto write_diag = [&](int step, double t, double dt, const std::array<double, 4>& ms) {
        double summ[kMaxPhases] = {0};
        double smx = 0.0, smy = 0.0, srE = 0.0, ent = 0.0;
        double pmin = 1e300, pmax = -1e300, tmin = 1e300, tmax = -1e300;
        double amin = 1e300, amax = -1e300;
        std::vector<double> mloc(n), rloc(n);
        const double dv = g.dx * (g.two_d ? g.dy : 1.0);
        for (int j = g.jb(); j < g.je(); ++j)
            for (int i = g.ib(); i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, j);
                for (int k = 0; k < n; ++k) {
                    summ[k] += U.m[k][c];
                    mloc[k] = U.m[k][c];
                    rloc[k] = W.rho[k][c];
                    amin = std::min(amin, W.alpha[k][c]);
                    amax = std::max(amax, W.alpha[k][c]);
                    tmin = std::min(tmin, W.T[k][c]);
                    tmax = std::max(tmax, W.T[k][c]);
                }
                smx += U.mom[0][c];
                smy += U.mom[1][c];
                srE += U.rhoE[c];
                pmin = std::min(pmin, W.p[c]);
                pmax = std::max(pmax, W.p[c]);
                ent += eos::mixture_entropy(mloc, rloc, W.p[c], mats) * dv;
            }
        char buf[40];
        auto num = [&](double v) {
            std::snprintf(buf, sizeof buf, ",%.17g", v);
            diag << buf;
        };
        diag << step;
        num(t);
        num(dt);
        for (int k = 0; k < n; ++k) num(summ[k] * dv);
        num(smx * dv);
        num(smy * dv);
        num(srE * dv);
        num(pmin);
        num(pmax);
        num(tmin);
        num(tmax);
        num(amin);
        num(amax);
        num(ent);
        for (double m : ms) num(m);
        diag << "\n";
    };

    const std::vector<double> targets = snapshot_times(cfg.output);
    std::size_t next_target = 0;
    int snap_idx = 0;
    write_snapshot(snap_idx++); // initial state

    HydroOptions hopt{cfg.physics.overbee, cfg.solver.first_order};
    HydroWorkspace hws;
    ViscousConfig vcfg;
    vcfg.inner = cfg.solver.parabolic;
    vcfg.picard_tol = cfg.solver.picard_tol;
    vcfg.picard_max_iter = cfg.solver.picard_max_iter;
    vcfg.pcg_tol = cfg.solver.pcg_tol;
    ThermalConfig tcfg;
    tcfg.inner = cfg.solver.parabolic;
    tcfg.picard_tol = cfg.solver.picard_tol;
    tcfg.picard_max_iter = cfg.solver.picard_max_iter;
    tcfg.pcg_tol = cfg.solver.pcg_tol;
    tcfg.linearized_relax = cfg.solver.linearized_relax;
    tcfg.stage_z_target = cfg.solver.stage_z_target;
    tcfg.stage_substep_cap = cfg.solver.stage_substep_cap;

    decode_all(U, mats, W);
    BoundsTracker bounds;
    if (plan.track_bounds) bounds.update(U, W);

    std::vector<std::vector<double>> mE(n);
    const bool needs_phase_energies =
        cfg.physics.viscous || cfg.physics.relax || cfg.physics.conduct;

    double t = 0.0;
    int step = 0;
    const double t_end = cfg.output.t_end;
    while (t < t_end * (1.0 - 1e-14)) {
        double dt;
        try {
            dt = compute_dt_cfl(U, W, mats, cfg.solver.cfl);
        } catch (const NumericalError& e) {
            throw NumericalError(std::string(e.what()) + " at t=" + std::to_string(t));
        }
        // Clip to hit the next snapshot/end time exactly.
        double target = t_end;
        if (next_target < targets.size()) target = std::min(target, targets[next_target]);
        bool hits_target = false;
        if (t + dt >= target * (1.0 - 1e-14)) {
            dt = target - t;
            hits_target = true;
        }

        // Hydrodynamic advance with step rejection: a trace fraction driven
        // into the underflow regime can make one update cross zero; halving
        // the rejected step keeps every accepted state valid.
        std::function<void(double, int)> advance_hydro = [&](double dts, int depth) {
            const FlowField saved = U;
            try {
                hydro_step(U, W, mats, dts, hopt, hws);
            } catch (const NumericalError&) {
                if (depth >= 12) throw;
                U = saved;
                advance_hydro(0.5 * dts, depth + 1);
                advance_hydro(0.5 * dts, depth + 1);
            }
        };

        std::array<double, 4> ms{0, 0, 0, 0};
        try {
            if (cfg.physics.hydro) {
                const auto t0 = std::chrono::steady_clock::now();
                advance_hydro(dt, 0);
                ms[0] = elapsed_ms(t0);
            }
            if (needs_phase_energies) {
                for (int k = 0; k < n; ++k) {
                    mE[k].assign(g.size(), 0.0);
                    for (int j = g.jb(); j < g.je(); ++j)
                        for (int i = g.ib(); i < g.ie(); ++i) {
                            const std::size_t c = g.idx(i, j);
                            const double kin =
                                0.5 * (sq(W.vel[0][c]) + sq(W.vel[1][c]));
                            mE[k][c] = U.m[k][c] * (W.e[k][c] + kin);
                        }
                }
            }
            if (cfg.physics.viscous) {
                const auto t0 = std::chrono::steady_clock::now();
                viscous_step(U, W, mE, mats, cfg.units, dt, vcfg);
                ms[1] = elapsed_ms(t0);
            }
            if (cfg.physics.relax) {
                const auto t0 = std::chrono::steady_clock::now();
                relax_temperatures_all(U, W, mE, mats, tcfg);
                ms[2] = elapsed_ms(t0);
            }
            if (cfg.physics.conduct) {
                const auto t0 = std::chrono::steady_clock::now();
                std::vector<double> dep;
                if (cfg.physics.laser) {
                    std::vector<double> rho(g.size(), 0.0);
                    for (int i = g.ib(); i < g.ie(); ++i) {
                        const std::size_t c = g.idx(i, 0);
                        for (int k = 0; k < n; ++k) rho[c] += U.m[k][c];
                    }
                    dep = closures::laser_deposition_profile(g, rho, cfg.laser).intensity;
                }
                heat_conduction_step(U, W, mE, mats, cfg.units, dt, dep, tcfg);
                ms[3] = elapsed_ms(t0);
            }
        } catch (NumericalError& e) {
            throw NumericalError(std::string(e.what()) + " at t=" + std::to_string(t) +
                                 " step=" + std::to_string(step));
        }

        t = hits_target ? target : t + dt;
        ++step;
        if (plan.track_bounds) bounds.update(U, W);
        if (probe) probe(step, t, U, W);
        if (cfg.output.diagnostics_every > 0 && step % cfg.output.diagnostics_every == 0)
            write_diag(step, t, dt, ms);

        while (next_target < targets.size() &&
               t >= targets[next_target] * (1.0 - 1e-14)) {
            write_snapshot(snap_idx++);
            ++next_target;
        }
    }

    res.steps = step;
    res.time = t;
    res.alpha_min = bounds.alpha_min;
    res.alpha_max = bounds.alpha_max;
    res.alpha_sum_err = bounds.sum_err;
    res.rho_min = bounds.rho_min;
    res.boundary_influx = hws.ready ? hws.boundary_influx : std::vector<double>(n, 0.0);
    return res;
}

ConvergenceReport convergence_report(const CaseConfig& base, const std::vector<int>& resolutions,
                                     const std::string& reference) {
    if (base.dim != 1)
        throw ConfigError("convergence_report: 1D cases only");
    if (reference != "oracle" && reference != "finest")
        throw ConfigError("convergence_report: reference must be 'oracle' or 'finest'");

    std::vector<int> cells = resolutions;
    std::sort(cells.begin(), cells.end());

    struct RunData {
        int n;
        std::vector<double> x, rho, u, p;
    };
    std::vector<RunData> runs;
    for (int nc : cells) {
        CaseConfig cfg = base;
        cfg.nx = nc;
        cfg.output.snapshots = 0;
        cfg.output.times.clear();
        cfg.output.diagnostics_every = 0;
        RunPlan plan{cfg, std::filesystem::temp_directory_path().string() + "/mcflow_conv", true,
                     false};
        RunResult rr = run(plan);
        RunData rd;
        rd.n = nc;
        const Grid& g = rr.U.grid;
        for (int i = g.ib(); i < g.ie(); ++i) {
            const std::size_t c = g.idx(i, 0);
            double rho = 0.0;
            for (int k = 0; k < rr.U.nphase; ++k) rho += rr.U.m[k][c];
            rd.x.push_back(g.xc(i));
            rd.rho.push_back(rho);
            rd.u.push_back(rr.W.vel[0][c]);
            rd.p.push_back(rr.W.p[c]);
        }
        runs.push_back(std::move(rd));
    }

    // Reference profile evaluated at arbitrary x.
    std::function<void(const RunData&, std::vector<std::vector<double>>&)> eval_ref;
    if (reference == "oracle") {
        // Two-halfplane case: each side mapped to its dominant pure material.
        if (base.regions.size() != 2)
            throw ConfigError("convergence_report: oracle reference needs a two-region case");
        const RegionSpec& L = base.regions[0];
        const RegionSpec& R = base.regions[1];
        const double xi0 = L.xmax;
        auto side_state = [&](const RegionSpec& r, int& mat) {
            int dom = 0;
            for (std::size_t k = 1; k < r.alpha.size(); ++k)
                if (r.alpha[k] > r.alpha[dom]) dom = static_cast<int>(k);
            mat = dom;
            riemann::SideState s;
            s.p = r.p;
            s.u = r.u;
            s.rho = (r.init == RegionInit::by_temperature)
                        ? eos::sg_density_from_Tp(r.T, r.p, base.materials[dom])
                        : (r.init == RegionInit::by_density ? r.rho[dom] : r.rho_ref);
            return s;
        };
        int ml, mr;
        const riemann::SideState sl = side_state(L, ml);
        const riemann::SideState sr = side_state(R, mr);
        const riemann::RiemannSolution sol =
            riemann::exact_riemann(sl, sr, base.materials[ml], base.materials[mr]);
        const double tend = base.output.t_end;
        eval_ref = [sol, xi0, tend](const RunData& rd, std::vector<std::vector<double>>& ref) {
            ref.assign(3, std::vector<double>(rd.x.size()));
            for (std::size_t i = 0; i < rd.x.size(); ++i) {
                const auto s = riemann::sample_solution(sol, (rd.x[i] - xi0) / tend);
                ref[0][i] = s.rho;
                ref[1][i] = s.u;
                ref[2][i] = s.p;
            }
        };
    } else {
        const RunData& fine = runs.back();
        eval_ref = [&fine](const RunData& rd, std::vector<std::vector<double>>& ref) {
            const int ratio = fine.n / rd.n;
            if (rd.n * ratio != fine.n)
                throw ConfigError("convergence_report: resolutions must divide the finest");
            ref.assign(3, std::vector<double>(rd.x.size(), 0.0));
            for (std::size_t i = 0; i < rd.x.size(); ++i) {
                for (int s = 0; s < ratio; ++s) {
                    ref[0][i] += fine.rho[i * ratio + s];
                    ref[1][i] += fine.u[i * ratio + s];
                    ref[2][i] += fine.p[i * ratio + s];
                }
                for (int v = 0; v < 3; ++v) ref[v][i] /= ratio;
            }
        };
    }

    ConvergenceReport rep;
    rep.variables = {"rho", "u", "p"};
    rep.rows.assign(3, {});
    const std::size_t nruns = (reference == "finest") ? runs.size() - 1 : runs.size();
    for (std::size_t r = 0; r < nruns; ++r) {
        std::vector<std::vector<double>> ref;
        eval_ref(runs[r], ref);
        const double dx = (base.x1 - base.x0) / runs[r].n;
        const std::vector<const std::vector<double>*> vars{&runs[r].rho, &runs[r].u, &runs[r].p};
        for (int v = 0; v < 3; ++v) {
            ConvergenceRow row;
            row.cells = runs[r].n;
            double l1 = 0.0, l2 = 0.0, li = 0.0;
            for (std::size_t i = 0; i < ref[v].size(); ++i) {
                const double e = std::abs((*vars[v])[i] - ref[v][i]);
                l1 += e * dx;
                l2 += e * e * dx;
                li = std::max(li, e);
            }
            row.l1 = l1;
            row.l2 = std::sqrt(l2);
            row.linf = li;
            if (!rep.rows[v].empty()) {
                const ConvergenceRow& prev = rep.rows[v].back();
                const double ratio = double(row.cells) / prev.cells;
                row.order = std::log(prev.l1 / row.l1) / std::log(ratio);
            }
            rep.rows[v].push_back(row);
        }
    }

    std::ostringstream csv, sum;
    csv << "variable,cells,l1,l2,linf,order_l1\n";
    for (int v = 0; v < 3; ++v)
        for (const auto& row : rep.rows[v]) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g,%.17g,%.6g\n",
                          rep.variables[v].c_str(), row.cells, row.l1, row.l2, row.linf,
                          row.order);
            csv << buf;
        }
    sum << "convergence vs " << reference << " for case '" << base.name << "'\n";
    for (int v = 0; v < 3; ++v) {
        sum << "  " << rep.variables[v] << ":";
        for (const auto& row : rep.rows[v]) {
            char buf[80];
            std::snprintf(buf, sizeof buf, "  n=%d L1=%.4g", row.cells, row.l1);
            sum << buf;
            if (row.order != 0.0) {
                std::snprintf(buf, sizeof buf, " (order %.2f)", row.order);
                sum << buf;
            }
        }
        sum << "\n";
    }
    rep.csv = csv.str();
    rep.summary = sum.str();
    return rep;
}

} // namespace mcf
