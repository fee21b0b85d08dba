#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "mcf/grid.hpp"
#include "mcf/parabolic.hpp"
#include "mcf/state.hpp"
#include "mcf/types.hpp"

namespace mcf {

enum class RegionShape { all, halfplane_x, halfplane_y, box, circle, expdecay_x };
enum class RegionInit { by_temperature, by_density, by_ref_phase };
enum class RegionProfile { none, cosine_x };

/// One initialization patch. Regions are applied in order; the last region
/// containing a cell center wins.
struct RegionSpec {
    RegionShape shape = RegionShape::all;
    double xmin = -1e300, xmax = 1e300;
    double ymin = -1e300, ymax = 1e300;
    double cx = 0.0, cy = 0.0, radius = 0.0;

    double p = 0.0;
    RegionInit init = RegionInit::by_temperature;
    double T = 0.0;               // by_temperature
    std::vector<double> rho;      // by_density: N phase densities
    int ref_phase = 0;            // by_ref_phase / expdecay_x
    double rho_ref = 0.0;         // reference-phase density (at xmin for expdecay)
    double rho_ref_end = 0.0;     // expdecay_x: density at xmax
    double u = 0.0, v = 0.0;
    std::vector<double> alpha;    // N fractions summing to one

    // Optional smooth volume-fraction blend toward alpha_peak, for
    // verification cases needing differentiable initial data.
    RegionProfile profile = RegionProfile::none;
    std::vector<double> alpha_peak;
    double profile_center = 0.0, profile_width = 0.0;

    bool contains(double x, double y) const;
};

struct PhysicsSwitches {
    bool hydro = true;
    bool viscous = false;
    bool relax = false;
    bool conduct = false;
    bool laser = false;
    bool overbee = false;
};

struct SolverParams {
    double cfl = 0.45;
    InnerSolver parabolic = InnerSolver::lim;
    double picard_tol = 1e-8;
    int picard_max_iter = 20;
    double pcg_tol = 1e-10;
    bool linearized_relax = false;
    bool first_order = false; // drop MUSCL slopes (piecewise-constant faces)
    // Conduction stage-accuracy control (see ThermalConfig).
    double stage_z_target = 0.35;
    int stage_substep_cap = 8;
};

struct OutputPlan {
    double t_end = 0.0;
    int snapshots = 1;          // evenly spaced snapshot count over (0, t_end]
    std::vector<double> times;  // explicit snapshot times (overrides count)
    std::string prefix = "run";
    int diagnostics_every = 1;
};

/// Complete problem description; everything the driver needs to run a case.
struct CaseConfig {
    std::string name = "custom";
    int dim = 1;
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    int nx = 100, ny = 1;
    std::array<BoundaryTag, 4> bc{BoundaryTag::extrapolation, BoundaryTag::extrapolation,
                                  BoundaryTag::extrapolation, BoundaryTag::extrapolation};
    UnitScales units;
    std::vector<MaterialParams> materials;
    std::vector<RegionSpec> regions;
    PhysicsSwitches physics;
    LaserSpec laser;
    SolverParams solver;
    OutputPlan output;

    Grid make_grid() const;
    int nphase() const { return static_cast<int>(materials.size()); }

    /// Structural checks: region tiling, state validity, switch consistency.
    /// Throws ConfigError.
    void validate() const;
};

/// Sectioned key-value text format; see README for the grammar.
CaseConfig parse_config(std::istream& in);
CaseConfig parse_config_file(const std::string& path);
std::string serialize_config(const CaseConfig& cfg);

/// Allocates and fills the evolved and primitive fields from the regions.
void init_fields(const CaseConfig& cfg, FlowField& U, PrimField& W);

} // namespace mcf
