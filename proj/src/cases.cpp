#include "mcf/cases.hpp"

#include "mcf/util.hpp"

namespace mcf::cases {

namespace {

RegionSpec region_all() {
    RegionSpec r;
    r.shape = RegionShape::all;
    return r;
}

} // namespace

CaseConfig pvt_advection(int cells, double eps) {
    CaseConfig c;
    c.name = "pvt_advection";
    c.dim = 1;
    c.x0 = 0.0;
    c.x1 = 1.0;
    c.nx = cells;

    MaterialParams m1{"stiff", 4.40, 6.00e6, 58.82};
    MaterialParams m2{"gas", 1.40, 0.0, 125.00};
    c.materials = {m1, m2};

    RegionSpec left = region_all();
    left.shape = RegionShape::halfplane_x;
    left.xmin = -1e300;
    left.xmax = 0.2;
    left.p = 1.0e5;
    left.T = 3.0e3;
    left.u = 1.0e2;
    left.alpha = {1.0 - eps, eps};

    RegionSpec right = left;
    right.xmin = 0.2;
    right.xmax = 1e300;
    right.alpha = {eps, 1.0 - eps};
    c.regions = {left, right};

    c.physics = {true, true, true, true, false, false};
    c.output.t_end = 5.0e-6;
    c.output.snapshots = 1;
    c.output.prefix = "pvt";
    return c;
}

CaseConfig conducting_shock_tube(int cells, bool with_conduction, double eps) {
    CaseConfig c;
    c.name = with_conduction ? "shock_tube" : "shock_tube_nodiff";
    c.dim = 1;
    c.x0 = 0.0;
    c.x1 = 1.0;
    c.nx = cells;

    MaterialParams m1{"stiff", 4.40, 6.00e6, 1606.00};
    MaterialParams m2{"gas", 1.40, 0.0, 714.00};
    m1.conductivity = {ConductivityModel::Kind::constant, 1.00e4};
    m2.conductivity = {ConductivityModel::Kind::constant, 1.00e6};
    c.materials = {m1, m2};

    RegionSpec left = region_all();
    left.shape = RegionShape::halfplane_x;
    left.xmax = 0.7;
    left.p = 1.00e9;
    left.T = 293.02;
    left.alpha = {1.0 - eps, eps};

    RegionSpec right = left;
    right.xmin = 0.7;
    right.xmax = 1e300;
    right.p = 1.00e5;
    right.T = 7.02;
    right.alpha = {eps, 1.0 - eps};
    c.regions = {left, right};

    c.physics.hydro = true;
    c.physics.relax = with_conduction;
    c.physics.conduct = with_conduction;
    if (with_conduction) {
        // Conduction-dominated comparison case: resolve the stage in time so
        // the explicit and implicit paths coincide.
        c.solver.stage_z_target = 0.02;
        c.solver.stage_substep_cap = 128;
    }
    c.output.t_end = 2.0e-4;
    c.output.snapshots = 2;
    c.output.prefix = c.name;
    return c;
}

CaseConfig laser_ablation_1d(int cells, double eps) {
    CaseConfig c;
    c.name = "laser_ablation";
    c.dim = 1;
    // ICF unit system: cm, us, g, MK.
    c.units = {1.0e-2, 1.0e-6, 1.0e-3, 1.0e6};
    c.x0 = 0.0;
    c.x1 = 0.096; // 960 um
    c.nx = cells;

    MaterialParams ch1{"CH1", 2.00, 0.0, 86.34};
    MaterialParams ch2{"CH2", 5.0 / 3.0, 0.0, 86.34};
    for (MaterialParams* m : {&ch1, &ch2}) {
        m->viscosity = {ViscosityModel::Kind::braginskii, 0.0, 0.0, 0.0, 6.5, 3.5};
        m->conductivity = {ConductivityModel::Kind::spitzer_harm, 0.0, 6.5, 3.5};
    }
    c.materials = {ch1, ch2};

    const double p0 = 1.0e-6;     // ~1 bar in code units
    const double rho_vac = 1.0e-5;
    const double x_t0 = 0.0450, x_t1 = 0.0460, x_t2 = 0.0475, x_t3 = 0.0495;

    RegionSpec vac = region_all();
    vac.p = p0;
    vac.init = RegionInit::by_ref_phase;
    vac.ref_phase = 1;
    vac.rho_ref = rho_vac;
    vac.alpha = {eps, 1.0 - eps};

    RegionSpec layer1;
    layer1.shape = RegionShape::halfplane_x;
    layer1.xmin = x_t0;
    layer1.xmax = x_t1;
    layer1.p = p0;
    layer1.init = RegionInit::by_ref_phase;
    layer1.ref_phase = 0;
    layer1.rho_ref = 1.50;
    layer1.alpha = {1.0 - eps, eps};

    RegionSpec layer2 = layer1;
    layer2.xmin = x_t1;
    layer2.xmax = x_t2;
    layer2.ref_phase = 1;
    layer2.rho_ref = 1.00;
    layer2.alpha = {eps, 1.0 - eps};

    RegionSpec ramp = layer2;
    ramp.shape = RegionShape::expdecay_x;
    ramp.xmin = x_t2;
    ramp.xmax = x_t3;
    ramp.rho_ref = 1.00;
    ramp.rho_ref_end = rho_vac;

    c.regions = {vac, layer1, layer2, ramp};

    c.physics = {true, true, true, true, true, false};
    // The corona's Spitzer diffusivity spans ~10 decades across the density
    // ramp; the implicit path handles that stiffness at fixed cost per step.
    c.solver.parabolic = InnerSolver::implicit_pcg;
    c.solver.picard_tol = 1.0e-6;
    c.solver.picard_max_iter = 40;
    c.laser.intensity = 1.0e3;      // 1e14 W/cm^2 in (g, cm, us) units
    c.laser.depth = 2.0e-3;         // 20 um
    c.laser.rho_critical = 1.22e-2; // g/cm^3
    c.solver.cfl = 0.40;
    c.output.t_end = 2.49e-3; // 2.49 ns
    c.output.snapshots = 2;
    c.output.prefix = "ablation";
    return c;
}

CaseConfig triple_point(int nx, int ny, TriplePointVariant variant, double eps) {
    CaseConfig c;
    c.name = "triple_point";
    c.dim = 2;
    c.x0 = 0.0;
    c.x1 = 7.0;
    c.y0 = 0.0;
    c.y1 = 3.0;
    c.nx = nx;
    c.ny = ny;

    MaterialParams f1{"fluid1", 1.5, 0.0, 40.0};
    MaterialParams f2{"fluid2", 1.4, 0.0, 50.0};
    MaterialParams f3{"fluid3", 2.0, 0.0, 20.0};
    f1.viscosity = {ViscosityModel::Kind::constant, 0.10};
    f2.viscosity = {ViscosityModel::Kind::constant, 0.20};
    f3.viscosity = {ViscosityModel::Kind::constant, 0.05};
    f1.conductivity = {ConductivityModel::Kind::constant, 0.50};
    f2.conductivity = {ConductivityModel::Kind::constant, 1.00};
    f3.conductivity = {ConductivityModel::Kind::constant, 2.00};
    c.materials = {f1, f2, f3};

    RegionSpec omega_l;
    omega_l.shape = RegionShape::halfplane_x;
    omega_l.xmax = 1.0;
    omega_l.p = 1.0;
    omega_l.init = RegionInit::by_density;
    omega_l.rho = {1.0, 1.0, 1.0};
    omega_l.alpha = {1.0 - eps, 0.5 * eps, 0.5 * eps};

    RegionSpec omega_b;
    omega_b.shape = RegionShape::box;
    omega_b.xmin = 1.0;
    omega_b.xmax = 1e300;
    omega_b.ymin = -1e300;
    omega_b.ymax = 1.5;
    omega_b.p = 0.1;
    omega_b.init = RegionInit::by_density;
    omega_b.rho = {1.0, 1.0, 1.0};
    omega_b.alpha = {0.5 * eps, 1.0 - eps, 0.5 * eps};

    RegionSpec omega_t = omega_b;
    omega_t.ymin = 1.5;
    omega_t.ymax = 1e300;
    omega_t.rho = {0.125, 0.125, 0.125};
    omega_t.alpha = {0.5 * eps, 0.5 * eps, 1.0 - eps};

    c.regions = {omega_l, omega_b, omega_t};

    c.physics.hydro = true;
    c.physics.viscous = (variant == TriplePointVariant::hv);
    c.physics.relax =
        (variant == TriplePointVariant::htr || variant == TriplePointVariant::htrhc);
    c.physics.conduct = (variant == TriplePointVariant::htrhc);
    c.physics.overbee = true;

    // Unsplit 2D update with sharpened trace fractions: keep the per-cell
    // Courant sum low enough that the shear roll-up cannot undershoot them.
    c.solver.cfl = 0.25;

    c.output.t_end = 5.0;
    c.output.snapshots = 1;
    c.output.prefix = "triple";
    return c;
}

CaseConfig shock_bubble(int nx, int ny, double eps) {
    CaseConfig c;
    c.name = "shock_bubble";
    c.dim = 2;
    c.x0 = 0.0;
    c.x1 = 0.2225; // 22.25 cm
    c.y0 = 0.0;
    c.y1 = 0.0890;
    c.nx = nx;
    c.ny = ny;
    c.bc = {BoundaryTag::extrapolation, BoundaryTag::extrapolation, BoundaryTag::periodic,
            BoundaryTag::periodic};

    MaterialParams air{"air", 1.4, 0.0, 717.50};
    air.viscosity = {ViscosityModel::Kind::sutherland, 1.716e-5, 273.00, 130.00};
    air.conductivity = {ConductivityModel::Kind::prandtl_from_viscosity};
    air.conductivity.Pr = 0.7;
    MaterialParams he{"helium-mix", 1.6451, 0.0, 2430.35};
    he.viscosity = {ViscosityModel::Kind::sutherland, 1.870e-5, 273.00, 65.00};
    he.conductivity = {ConductivityModel::Kind::helium_fit};
    c.materials = {air, he};

    RegionSpec pre = region_all();
    pre.p = 101325.0;
    pre.init = RegionInit::by_ref_phase;
    pre.ref_phase = 0;
    pre.rho_ref = 1.2062;
    pre.alpha = {1.0 - eps, eps};

    RegionSpec post;
    post.shape = RegionShape::halfplane_x;
    post.xmin = 0.1680;
    post.xmax = 1e300;
    post.p = 159080.98;
    post.u = -114.0;
    post.init = RegionInit::by_ref_phase;
    post.ref_phase = 0;
    post.rho_ref = 1.66;
    post.alpha = {1.0 - eps, eps};

    RegionSpec bubble;
    bubble.shape = RegionShape::circle;
    bubble.cx = 0.1380;
    bubble.cy = 0.0445;
    bubble.radius = 0.0250;
    bubble.p = 101325.0;
    bubble.init = RegionInit::by_ref_phase;
    bubble.ref_phase = 1;
    bubble.rho_ref = 0.2204;
    bubble.alpha = {eps, 1.0 - eps};

    c.regions = {pre, post, bubble};

    c.physics = {true, true, true, true, false, false};
    c.output.t_end = 2.6e-4; // shock reaches the bubble after ~12 us
    c.output.snapshots = 2;
    c.output.prefix = "bubble";
    return c;
}

CaseConfig smooth_advection(int cells) {
    CaseConfig c;
    c.name = "smooth_advection";
    c.dim = 1;
    c.x0 = 0.0;
    c.x1 = 1.0;
    c.nx = cells;
    c.bc = {BoundaryTag::periodic, BoundaryTag::periodic, BoundaryTag::extrapolation,
            BoundaryTag::extrapolation};

    MaterialParams m1{"gas1", 1.4, 0.0, 717.5};
    MaterialParams m2{"gas2", 1.6, 0.0, 500.0};
    c.materials = {m1, m2};

    RegionSpec r = region_all();
    r.p = 1.0e5;
    r.T = 300.0;
    r.u = 100.0;
    r.alpha = {0.55, 0.45};
    r.alpha_peak = {0.05, 0.95};
    r.profile = RegionProfile::cosine_x;
    r.profile_center = 0.5;
    r.profile_width = 0.6;
    c.regions = {r};

    c.physics.hydro = true;
    c.output.t_end = 2.0e-3; // translate by 0.2 domain lengths
    c.output.prefix = "smooth";
    return c;
}

std::vector<std::string> builtin_names() {
    return {"pvt_advection",    "shock_tube",       "shock_tube_nodiff", "laser_ablation",
            "triple_point_h",   "triple_point_hv",  "triple_point_htr",  "triple_point_htrhc",
            "shock_bubble",     "smooth_advection"};
}

CaseConfig by_name(const std::string& name) {
    if (name == "pvt_advection") return pvt_advection();
    if (name == "shock_tube") return conducting_shock_tube();
    if (name == "shock_tube_nodiff") return conducting_shock_tube(100, false);
    if (name == "laser_ablation") return laser_ablation_1d();
    if (name == "triple_point_h") return triple_point(280, 120, TriplePointVariant::h);
    if (name == "triple_point_hv") return triple_point(280, 120, TriplePointVariant::hv);
    if (name == "triple_point_htr") return triple_point(280, 120, TriplePointVariant::htr);
    if (name == "triple_point_htrhc") return triple_point(280, 120, TriplePointVariant::htrhc);
    if (name == "shock_bubble") return shock_bubble();
    if (name == "smooth_advection") return smooth_advection();
    throw ConfigError("unknown built-in case '" + name + "'");
}

} // namespace mcf::cases
