#pragma once

#include <vector>

#include "mcf/grid.hpp"
#include "mcf/types.hpp"

namespace mcf::closures {

/// Sutherland law mu = mu0 * (T0+W)/(T+W) * (T/T0)^(3/2); arguments in SI.
double sutherland_viscosity(double T, double mu0, double T0, double W);

/// Plasma species description for the Spitzer-Harm / Braginskii fits.
struct PlasmaSpecies {
    double A_c = 1.0; // average atomic weight [amu]
    double Z_e = 1.0; // effective atomic number
    double fixed_coulomb_log = 0.0; // > 0 bypasses the length-ratio evaluation
};

/// Coulomb logarithm with the max(1, .)-floor. Lengths use the standard
/// formulary definitions in Gaussian units: Debye sqrt(kT/(4 pi N_e e^2)),
/// Landau Z e^2/(3 kT), de Broglie hbar/sqrt(3 m_e kT); the Landau/de Broglie
/// comparison picks the classical or quantum close-approach cutoff.
/// T in kelvin, rho in g/cm^3.
double coulomb_log(double T_kelvin, double rho_cgs, const PlasmaSpecies& sp);

/// One-temperature Spitzer-Harm electron conductivity,
/// 9.44 (2/pi)^{3/2} (kT)^{5/2} k N_e / (sqrt(m_e) e^4 N_i Z (Z+4) lnL),
/// evaluated in Gaussian units; returns erg/(s cm K). Density-independent
/// except through lnL since N_e/N_i = Z.
double spitzer_harm_conductivity_cgs(double T_kelvin, double rho_cgs, const PlasmaSpecies& sp);

/// Braginskii ion viscosity fit 3.30e-5 sqrt(A) T_eV^{5/2}/(lnL Z^4), T in eV,
/// result in poise (g/(cm s)).
double braginskii_viscosity_poise(double T_kelvin, double rho_cgs, const PlasmaSpecies& sp);

/// Helium conductivity polynomial fit, T in kelvin, result in W/(m K).
/// Fit range roughly 100-1000 K.
double helium_conductivity_fit(double T);

/// lambda = mu * C_p / Pr with C_p = gamma*cv (SI).
double prandtl_conductivity(double mu, double cp, double Pr);

/// Phase viscosity in code units for the given closure.
double phase_viscosity(const ViscosityModel& vm, double rho_code, double T_code,
                       const UnitScales& us);

/// Phase conductivity in code units for the given closure.
double phase_conductivity(const ConductivityModel& cm, const MaterialParams& mat, double rho_code,
                          double T_code, double mu_code, const UnitScales& us);

struct DepositionResult {
    std::vector<double> intensity; // volumetric source per cell (ghost-sized array)
    double x_critical = 0.0;
    bool crossing_found = false;
};

/// Constant-intensity energy deposit over [x_c, x_c + d] where x_c is the
/// rightmost crossing of the density profile through rho_critical (linear
/// interpolation between cell centers). Cells partially covered get the
/// overlap fraction; the integral of the source over the band equals the
/// incident intensity when the band fits inside the domain. Without a
/// crossing the band hugs the right boundary and `crossing_found` is false.
DepositionResult laser_deposition_profile(const Grid& g, const std::vector<double>& rho,
                                          const LaserSpec& laser);

} // namespace mcf::closures
