#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mcf/config.hpp"
#include "mcf/state.hpp"

namespace mcf {

/// A fully resolved run request: the case plus output destination.
struct RunPlan {
    CaseConfig cfg;
    std::string outdir = "out";
    bool quiet = true;
    bool track_bounds = false; // per-step volume-fraction/density extrema
};

/// Optional per-step observer (after the full stage pipeline).
using StepProbe = std::function<void(int step, double t, const FlowField& U, const PrimField& W)>;

struct RunResult {
    int steps = 0;
    double time = 0.0;
    std::vector<std::string> snapshot_files;
    std::string diagnostics_file;

    // Extrema over all steps when track_bounds is set.
    double alpha_min = 1.0;
    double alpha_max = 0.0;
    double alpha_sum_err = 0.0;
    double rho_min = 0.0;

    // Net partial-density influx through open boundaries over the whole run
    // (cell-sum units), for mass-budget accounting.
    std::vector<double> boundary_influx;

    FlowField U;
    PrimField W;
};

/// Runs the fractional-step loop (hydrodynamic, viscous, temperature
/// relaxation, heat conduction per time step, switches honored), writing
/// snapshots and diagnostics. Deterministic for a fixed plan and build.
RunResult run(const RunPlan& plan, const StepProbe& probe = {});

struct ConvergenceRow {
    int cells = 0;
    double l1 = 0.0, l2 = 0.0, linf = 0.0;
    double order = 0.0; // observed L1 order vs the previous row
};

struct ConvergenceReport {
    std::vector<std::string> variables;
    std::vector<std::vector<ConvergenceRow>> rows; // [variable][resolution]
    std::string csv;
    std::string summary;
};

/// Refinement study for a 1D case: each resolution is run to t_end and
/// compared against either the exact Riemann solution of the initial
/// discontinuity ("oracle", two-region cases) or the cell-averaged finest
/// grid ("finest").
ConvergenceReport convergence_report(const CaseConfig& base, const std::vector<int>& resolutions,
                                     const std::string& reference);

} // namespace mcf
