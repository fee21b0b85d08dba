#pragma once

#include <span>
#include <vector>

#include "mcf/types.hpp"

namespace mcf::eos {

// Stiffened-gas closed forms. Each phase satisfies
//   rho*e = (p + gamma*p_inf)/(gamma - 1) + rho*w
//   T     = (p + p_inf)/((gamma - 1)*rho*cv)
//   a^2   = gamma*(p + p_inf)/rho

double sg_pressure(double rho, double e, const MaterialParams& m);
double sg_energy(double rho, double p, const MaterialParams& m);
double sg_temperature(double rho, double p, const MaterialParams& m);
double sg_sound_speed(double rho, double p, const MaterialParams& m);

/// rho(T, p) closed form (positive inputs assumed).
double sg_density_from_Tp(double T, double p, const MaterialParams& m);

/// Specific internal energy as a function of (T, p):
/// e = cv*T*(p + gamma*p_inf)/(p + p_inf) + w.
double sg_energy_from_Tp(double T, double p, const MaterialParams& m);

/// Phase entropy s = cv*ln((p + p_inf)/rho^gamma); additive constant fixed to
/// zero, only differences are meaningful.
double sg_entropy(double rho, double p, const MaterialParams& m);

/// Isobaric-closure mixture pressure: with a single pressure p shared by all
/// phases, rho*e = sum_k alpha_k*rho_k*e_k(rho_k, p) inverts in closed form:
///   p = (rho_e - sum alpha_k*gamma_k*pinf_k/(gamma_k-1) - sum m_k*w_k)
///       / (sum alpha_k/(gamma_k-1)).
/// `m` are partial densities alpha_k*rho_k, `rho_e` the mixture internal
/// energy per volume, `alpha` the full set of N volume fractions.
double mixture_pressure(std::span<const double> m, double rho_e, std::span<const double> alpha,
                        std::span<const MaterialParams> mats);

/// Result of the pressure-equilibrium volume-fraction solve.
struct PressureAlphaResult {
    double p = 0.0;
    std::vector<double> alpha;
    int iterations = 0;
};

/// Given partial densities m_k and per-phase specific internal energies e_k,
/// finds the unique pressure with alpha_k(p) = (gamma_k-1)*m_k*(e_k-w_k) /
/// (p + gamma_k*pinf_k) summing to one, then the fractions themselves.
/// Newton with analytic derivative, safeguarded by bisection on a bracket
/// grown by doubling. |sum alpha - 1| <= 1e-12 at return.
/// `p_guess` warm-starts the iteration (<= invalid means none).
PressureAlphaResult solve_pressure_volume_fractions(std::span<const double> m,
                                                    std::span<const double> e_phase,
                                                    std::span<const MaterialParams> mats,
                                                    double p_guess = -1.0);

/// Wood (harmonic) bulk modulus: 1/A = sum alpha_k/A_k with A_k = rho_k*a_k^2.
double wood_modulus(std::span<const double> alpha, std::span<const double> phase_modulus);

/// Phase bulk modulus A_k = rho_k*a_k^2 = gamma_k*(p + pinf_k).
double phase_modulus(double p, const MaterialParams& m);

/// Mass-additive mixture entropy per volume, rho*s = sum m_k s_k.
double mixture_entropy(std::span<const double> m, std::span<const double> rho,
                       double p, std::span<const MaterialParams> mats);

} // namespace mcf::eos
