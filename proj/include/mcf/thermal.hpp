#pragma once

#include <span>
#include <vector>

#include "mcf/parabolic.hpp"
#include "mcf/state.hpp"
#include "mcf/types.hpp"

namespace mcf {

struct ThermalConfig {
    InnerSolver inner = InnerSolver::lim;
    double picard_tol = 1e-8;
    int picard_max_iter = 20;
    double pcg_tol = 1e-10;
    bool linearized_relax = false; // one-step weighted-average variant
    // Stage-accuracy control: the conduction step is split so dt*lambda_max
    // per substep stays near z_target. Both inner solvers are first-order in
    // the stage time; substepping shrinks their mutual difference without
    // favoring either. The cap bounds cost on very stiff problems.
    double stage_z_target = 0.35;
    int stage_substep_cap = 8;
};

struct RelaxResult {
    double T = 0.0;
    double p = 0.0;
    int iterations = 0;
};

/// Common (T, p) of a cell after instantaneous temperature relaxation:
/// the 2x2 system of the volume-fraction saturation and the conservation of
/// sum m_k e_k, solved by Newton with a bisection-in-T fallback. Partial
/// densities and velocity are untouched by construction.
RelaxResult relax_cell(std::span<const double> m, std::span<const double> e_in,
                       std::span<const MaterialParams> mats, double T_guess, double p_guess);

/// One-step linearization: T = sum_jk A_jk T_j / sum_jk A_jk with
/// A_jk = m_k de_k/dT_j under the saturation constraint, evaluated at the
/// incoming state. Agrees with relax_cell to second order in the temperature
/// disequilibrium.
double relax_cell_linearized(std::span<const double> m, std::span<const double> T_in, double p,
                             std::span<const MaterialParams> mats);

/// Pressure from the saturation constraint at a common temperature:
/// sum_k m_k (gamma_k - 1) cv_k T / (p + pinf_k) = 1 (unique root in p).
double saturation_pressure(std::span<const double> m, double T,
                           std::span<const MaterialParams> mats, double p_guess = -1.0);

/// d(sum m_k e_k)/dT along the saturation constraint p = p(T); reduces to
/// sum m_k cv_k for ideal gases.
double effective_heat_capacity(std::span<const double> m, double T, double p,
                               std::span<const MaterialParams> mats);

/// Applies temperature relaxation to every interior cell using the phase
/// energies in mE; refreshes U, W and mE. Mixture kinetic energy and partial
/// densities are unchanged.
void relax_temperatures_all(FlowField& U, PrimField& W, std::vector<std::vector<double>>& mE,
                            const std::vector<MaterialParams>& mats, const ThermalConfig& cfg);

/// Equilibrium-temperature heat conduction with an optional external
/// deposition field (volumetric power, ghost-sized, may be empty). Cells must
/// be temperature-relaxed on entry. Solves A(T) dT/dt = div(lambda grad T) + I
/// with lagged coefficients, then re-closes every cell from (m_k, T).
void heat_conduction_step(FlowField& U, PrimField& W, std::vector<std::vector<double>>& mE,
                          const std::vector<MaterialParams>& mats, const UnitScales& us,
                          double dt, const std::vector<double>& deposition,
                          const ThermalConfig& cfg);

} // namespace mcf
