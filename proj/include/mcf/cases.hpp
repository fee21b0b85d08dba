#pragma once

#include <string>
#include <vector>

#include "mcf/config.hpp"

namespace mcf::cases {

/// Material-interface translation with uniform pressure, velocity and
/// temperature; exercises equilibrium preservation through every stage.
CaseConfig pvt_advection(int cells = 200, double eps = 1e-6);

/// Two-fluid shock tube, optionally with strong heat conduction.
CaseConfig conducting_shock_tube(int cells = 100, bool with_conduction = true,
                                 double eps = 1e-6);

/// 1D laser ablation of a two-layer target in vacuum; ICF unit system
/// (cm, us, g, MK), Spitzer-Harm conduction and Braginskii viscosity.
CaseConfig laser_ablation_1d(int cells = 720, double eps = 5e-4);

enum class TriplePointVariant { h, hv, htr, htrhc };

/// Three-fluid triple-point problem with selectable physics.
CaseConfig triple_point(int nx = 280, int ny = 120,
                        TriplePointVariant variant = TriplePointVariant::h, double eps = 1e-6);

/// Shock passage through a helium bubble with Sutherland viscosity and
/// Prandtl/polynomial conductivities.
CaseConfig shock_bubble(int nx = 300, int ny = 120, double eps = 1e-6);

/// Smooth periodic two-fluid advection; verification case for convergence
/// studies (exact solution is the translated initial profile).
CaseConfig smooth_advection(int cells = 100);

std::vector<std::string> builtin_names();

/// Builder by CLI name; throws ConfigError for unknown names.
CaseConfig by_name(const std::string& name);

} // namespace mcf::cases
