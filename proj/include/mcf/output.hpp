#pragma once

#include <string>
#include <vector>

#include "mcf/state.hpp"
#include "mcf/types.hpp"

namespace mcf {

/// Mass/heat-capacity weighted mixture temperature, used for output only.
double mixture_temperature(const FlowField& U, const PrimField& W,
                           const std::vector<MaterialParams>& mats, std::size_t c);

/// One row per cell: x, rho, u, p, T, then rho_k, alpha_k, T_k per phase
/// (5 + 3N columns), full double precision decimal text.
void write_csv_1d(const std::string& path, const FlowField& U, const PrimField& W,
                  const std::vector<MaterialParams>& mats);

/// Legacy structured-points text file with cell data: rho, p, T, |u|,
/// velocity vectors, every volume fraction, and a numerical-Schlieren scalar
/// exp(-c |grad rho| / max |grad rho|).
void write_vtk_2d(const std::string& path, const FlowField& U, const PrimField& W,
                  const std::vector<MaterialParams>& mats);

} // namespace mcf
