#pragma once

#include <string>
#include <vector>

namespace mcf {

/// Conversion factors from code units to SI. The solver core never looks at
/// these; they matter only where dimensional transport closures (plasma
/// conductivity/viscosity fits) meet the case's unit system, and for output
/// labeling. SI cases use all-ones.
struct UnitScales {
    double length = 1.0;      // code length unit in meters
    double time = 1.0;        // code time unit in seconds
    double mass = 1.0;        // code mass unit in kilograms
    double temperature = 1.0; // code temperature unit in kelvin

    double density() const { return mass / (length * length * length); }
    double pressure() const { return mass / (length * time * time); }
    double velocity() const { return length / time; }
    // W/(m*K) per code conductivity unit
    double conductivity() const { return mass * length / (time * time * time * temperature); }
    // Pa*s per code viscosity unit
    double viscosity() const { return mass / (length * time); }
    // W/m^3 per code volumetric-power unit
    double power_density() const { return mass / (length * time * time * time); }
};

/// Dynamic-viscosity closure attached to a material.
struct ViscosityModel {
    enum class Kind { none, constant, sutherland, braginskii };
    Kind kind = Kind::none;
    double mu0 = 0.0;  // constant value [code units]; Sutherland reference [Pa*s]
    double T0 = 0.0;   // Sutherland reference temperature [K]
    double W = 0.0;    // Sutherland constant [K]
    double A_c = 0.0;  // average atomic weight [amu] (plasma fits)
    double Z_e = 0.0;  // effective atomic number (plasma fits)
};

/// Thermal-conductivity closure attached to a material.
struct ConductivityModel {
    enum class Kind { none, constant, spitzer_harm, helium_fit, prandtl_from_viscosity };
    Kind kind = Kind::none;
    double lambda0 = 0.0;     // constant value [code units]
    double A_c = 0.0;         // plasma species parameters
    double Z_e = 0.0;
    double Pr = 0.7;          // Prandtl number (prandtl_from_viscosity)
    double coulomb_log = 0.0; // > 0 fixes ln(Lambda) instead of computing it
};

/// Per-phase stiffened-gas constants plus transport-property closures.
struct MaterialParams {
    std::string name;
    double gamma = 1.4; // adiabatic exponent, > 1
    double p_inf = 0.0; // pressure offset [Pa], >= 0
    double cv = 1.0;    // specific heat at constant volume [J/(kg K)], > 0
    double w = 0.0;     // specific-energy offset [J/kg]
    ViscosityModel viscosity;
    ConductivityModel conductivity;

    bool valid() const { return gamma > 1.0 && p_inf >= 0.0 && cv > 0.0; }
};

/// External energy deposition parameters (all in code units).
struct LaserSpec {
    double intensity = 0.0;   // power per unit area
    double depth = 0.0;       // absorption length
    double rho_critical = 0.0;
};

} // namespace mcf
