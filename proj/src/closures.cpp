#include "mcf/closures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mcf/util.hpp"

namespace mcf::closures {

namespace {
// Gaussian-units physical constants.
constexpr double kBoltzmann = 1.380649e-16;   // erg/K
constexpr double kElectronMass = 9.1093837015e-28; // g
constexpr double kElectronCharge = 4.80320471e-10; // esu
constexpr double kHBar = 1.054571817e-27;     // erg s
constexpr double kAvogadro = 6.02214076e23;
constexpr double kKelvinPerEv = 1.160451812e4;
} // namespace

double sutherland_viscosity(double T, double mu0, double T0, double W) {
    return mu0 * (T0 + W) / (T + W) * std::pow(T / T0, 1.5);
}

double coulomb_log(double T_kelvin, double rho_cgs, const PlasmaSpecies& sp) {
    if (sp.fixed_coulomb_log > 0.0) return sp.fixed_coulomb_log;
    const double kT = kBoltzmann * T_kelvin;
    const double Ni = kAvogadro * rho_cgs / sp.A_c;
    const double Ne = sp.Z_e * Ni;
    const double e2 = kElectronCharge * kElectronCharge;
    const double l_debye = std::sqrt(kT / (4.0 * std::numbers::pi * Ne * e2));
    const double l_landau = sp.Z_e * e2 / (3.0 * kT);
    const double l_debroglie = kHBar / std::sqrt(3.0 * kElectronMass * kT);
    const double cutoff = (l_landau >= l_debroglie) ? l_landau : l_debroglie;
    return std::max(1.0, std::log(l_debye / cutoff));
}

double spitzer_harm_conductivity_cgs(double T_kelvin, double rho_cgs, const PlasmaSpecies& sp) {
    const double kT = kBoltzmann * T_kelvin;
    const double lnL = coulomb_log(T_kelvin, rho_cgs, sp);
    const double e4 = sq(kElectronCharge * kElectronCharge);
    const double prefac = 9.44 * std::pow(2.0 / std::numbers::pi, 1.5);
    // N_e/N_i = Z_e cancels one factor of Z in the denominator.
    return prefac * std::pow(kT, 2.5) * kBoltzmann /
           (std::sqrt(kElectronMass) * e4 * (sp.Z_e + 4.0) * lnL);
}

double braginskii_viscosity_poise(double T_kelvin, double rho_cgs, const PlasmaSpecies& sp) {
    const double T_eV = T_kelvin / kKelvinPerEv;
    const double lnL = coulomb_log(T_kelvin, rho_cgs, sp);
    return 3.30e-5 * std::sqrt(sp.A_c) * std::pow(T_eV, 2.5) /
           (lnL * sp.Z_e * sp.Z_e * sp.Z_e * sp.Z_e);
}

double helium_conductivity_fit(double T) {
    return ((1.2900e-11 * T - 7.4500e-8) * T + 3.8960e-4) * T + 3.7220e-2;
}

double prandtl_conductivity(double mu, double cp, double Pr) { return mu * cp / Pr; }

double phase_viscosity(const ViscosityModel& vm, double rho_code, double T_code,
                       const UnitScales& us) {
    switch (vm.kind) {
        case ViscosityModel::Kind::none:
            return 0.0;
        case ViscosityModel::Kind::constant:
            return vm.mu0;
        case ViscosityModel::Kind::sutherland: {
            const double T = T_code * us.temperature;
            return sutherland_viscosity(T, vm.mu0, vm.T0, vm.W) / us.viscosity();
        }
        case ViscosityModel::Kind::braginskii: {
            const double T = T_code * us.temperature;
            const double rho_cgs = rho_code * us.density() * 1e-3; // kg/m^3 -> g/cm^3
            PlasmaSpecies sp{vm.A_c, vm.Z_e, 0.0};
            const double mu_si = 0.1 * braginskii_viscosity_poise(T, rho_cgs, sp);
            return mu_si / us.viscosity();
        }
    }
    return 0.0;
}

double phase_conductivity(const ConductivityModel& cm, const MaterialParams& mat, double rho_code,
                          double T_code, double mu_code, const UnitScales& us) {
    switch (cm.kind) {
        case ConductivityModel::Kind::none:
            return 0.0;
        case ConductivityModel::Kind::constant:
            return cm.lambda0;
        case ConductivityModel::Kind::spitzer_harm: {
            const double T = T_code * us.temperature;
            const double rho_cgs = rho_code * us.density() * 1e-3;
            PlasmaSpecies sp{cm.A_c, cm.Z_e, cm.coulomb_log};
            const double lam_si = 1e-5 * spitzer_harm_conductivity_cgs(T, rho_cgs, sp);
            return lam_si / us.conductivity();
        }
        case ConductivityModel::Kind::helium_fit: {
            const double T = T_code * us.temperature;
            return helium_conductivity_fit(T) / us.conductivity();
        }
        case ConductivityModel::Kind::prandtl_from_viscosity: {
            const double mu_si = mu_code * us.viscosity();
            const double cv_scale = us.velocity() * us.velocity() / us.temperature;
            const double cp = mat.gamma * mat.cv * cv_scale;
            return prandtl_conductivity(mu_si, cp, cm.Pr) / us.conductivity();
        }
    }
    return 0.0;
}

DepositionResult laser_deposition_profile(const Grid& g, const std::vector<double>& rho,
                                          const LaserSpec& laser) {
    DepositionResult res;
    res.intensity.assign(g.size(), 0.0);
    if (g.two_d) throw ConfigError("laser deposition: 1D profiles only");

    const int ib = g.ib(), ie = g.ie();
    const double domain_right = g.xc(ie - 1) + 0.5 * g.dx;

    // Rightmost crossing of rho through rho_critical between cell centers.
    double xc = domain_right - laser.depth;
    for (int i = ie - 2; i >= ib; --i) {
        const double a = rho[g.idx(i, 0)] - laser.rho_critical;
        const double b = rho[g.idx(i + 1, 0)] - laser.rho_critical;
        if (a == 0.0) {
            xc = g.xc(i);
            res.crossing_found = true;
            break;
        }
        if (a * b < 0.0) {
            const double frac = a / (a - b);
            xc = g.xc(i) + frac * g.dx;
            res.crossing_found = true;
            break;
        }
    }
    res.x_critical = xc;

    const double band_lo = xc;
    const double band_hi = xc + laser.depth;
    const double rate = laser.intensity / laser.depth;
    for (int i = ib; i < ie; ++i) {
        const double lo = g.xc(i) - 0.5 * g.dx;
        const double hi = g.xc(i) + 0.5 * g.dx;
        const double overlap = std::max(0.0, std::min(hi, band_hi) - std::max(lo, band_lo));
        if (overlap > 0.0) res.intensity[g.idx(i, 0)] = rate * overlap / g.dx;
    }
    return res;
}

} // namespace mcf::closures
