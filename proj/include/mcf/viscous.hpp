#pragma once

#include <vector>

#include "mcf/parabolic.hpp"
#include "mcf/state.hpp"
#include "mcf/types.hpp"

namespace mcf {

struct ViscousConfig {
    double mu_bulk = 0.0; // bulk viscosity, unused by the built-in cases
    InnerSolver inner = InnerSolver::lim;
    double picard_tol = 1e-8;
    int picard_max_iter = 20;
    double pcg_tol = 1e-10;
};

/// alpha-weighted mixture viscosity.
double mixture_viscosity(const std::vector<double>& alpha, const std::vector<double>& mu_k);

/// Momentum diffusion with the mixture viscosity, per-phase total-energy
/// update from the face work fluxes of the predictor velocity, then
/// pressure-equilibrium re-closure. Partial densities are untouched. `mE`
/// holds the per-phase total energies alpha_k rho_k E_k and is advanced in
/// place; U/W are left mutually consistent.
void viscous_step(FlowField& U, PrimField& W, std::vector<std::vector<double>>& mE,
                  const std::vector<MaterialParams>& mats, const UnitScales& us, double dt,
                  const ViscousConfig& cfg);

} // namespace mcf
