#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mcf/cases.hpp"
#include "mcf/eos.hpp"
#include "mcf/util.hpp"

using namespace mcf;

TEST_CASE("all built-in cases validate and initialize") {
    for (const auto& name : cases::builtin_names()) {
        CAPTURE(name);
        CaseConfig cfg = cases::by_name(name);
        // Desk-scale resolution for the initialization sweep.
        if (cfg.dim == 2) {
            cfg.ny = std::max(1, cfg.ny / 4);
            cfg.nx = std::max(1, cfg.nx / 4);
        }
        CHECK_NOTHROW(cfg.validate());
        FlowField U;
        PrimField W;
        CHECK_NOTHROW(init_fields(cfg, U, W));
        const Grid g = cfg.make_grid();
        for (int j = g.jb(); j < g.je(); ++j)
            for (int i = g.ib(); i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, j);
                double s = 0.0;
                for (int k = 0; k < U.nphase; ++k) {
                    CHECK(W.alpha[k][c] > 0.0);
                    CHECK(W.alpha[k][c] <= 1.0);
                    CHECK(W.rho[k][c] > 0.0);
                    CHECK(W.T[k][c] > 0.0);
                    s += W.alpha[k][c];
                }
                CHECK(std::abs(s - 1.0) <= 1e-12);
            }
    }
}

TEST_CASE("interface translation case") {
    const CaseConfig cfg = cases::pvt_advection();
    CHECK(cfg.output.t_end == doctest::Approx(5.0e-6));
    FlowField U;
    PrimField W;
    init_fields(cfg, U, W);
    const Grid g = cfg.make_grid();
    for (int i = g.ib(); i < g.ie(); ++i) {
        CHECK(W.T[0][g.idx(i, 0)] == doctest::Approx(3000.0).epsilon(1e-12));
        CHECK(W.T[1][g.idx(i, 0)] == doctest::Approx(3000.0).epsilon(1e-12));
        CHECK(W.p[g.idx(i, 0)] == doctest::Approx(1.0e5).epsilon(1e-13));
        CHECK(W.vel[0][g.idx(i, 0)] == doctest::Approx(100.0));
    }
    // Ideal-gas fluid density from the closed-form inversion.
    CHECK(W.rho[1][g.idx(g.ib(), 0)] == doctest::Approx(0.6666667).epsilon(1e-6));
    // Stiffened fluid density.
    CHECK(W.rho[0][g.idx(g.ib(), 0)] == doctest::Approx(10.1673).epsilon(1e-4));
}

TEST_CASE("conducting shock tube case") {
    const CaseConfig cfg = cases::conducting_shock_tube();
    FlowField U;
    PrimField W;
    init_fields(cfg, U, W);
    const Grid g = cfg.make_grid();
    // Phase temperatures in equilibrium on each side.
    for (int i = g.ib(); i < g.ie(); ++i) {
        const double expect = (g.xc(i) < 0.7) ? 293.02 : 7.02;
        CHECK(W.T[0][g.idx(i, 0)] == doctest::Approx(expect).epsilon(1e-12));
        CHECK(W.T[1][g.idx(i, 0)] == doctest::Approx(expect).epsilon(1e-12));
    }
    // Left-side densities from the stiffened-gas inversion.
    const double rho1 = (1.0e9 + 6.0e6) / (3.4 * 1606.0 * 293.02);
    CHECK(W.rho[0][g.idx(g.ib(), 0)] == doctest::Approx(rho1).epsilon(1e-12));
    // Conduction switched on with the case's strong coefficients; the
    // no-diffusion variant drops both thermal stages.
    CHECK(cfg.physics.conduct);
    CHECK(cfg.materials[0].conductivity.lambda0 == doctest::Approx(1.0e4));
    CHECK(cfg.materials[1].conductivity.lambda0 == doctest::Approx(1.0e6));
    const CaseConfig nodiff = cases::conducting_shock_tube(100, false);
    CHECK(!nodiff.physics.conduct);
    CHECK(!nodiff.physics.relax);
}

TEST_CASE("laser ablation case") {
    const CaseConfig cfg = cases::laser_ablation_1d();
    CHECK(cfg.units.temperature == doctest::Approx(1.0e6));
    FlowField U;
    PrimField W;
    init_fields(cfg, U, W);
    const Grid g = cfg.make_grid();

    SUBCASE("ramp cells follow the exponential that joins both ends") {
        const double x2 = 0.0475, x3 = 0.0495, rho2 = 1.0, rho_vac = 1e-5;
        const double delta = (x3 - x2) / std::log(rho2 / rho_vac);
        for (int i = g.ib(); i < g.ie(); ++i) {
            const double x = g.xc(i);
            if (x < x2 || x >= x3) continue;
            const double expect = rho2 * std::exp(-(x - x2) / delta);
            CHECK(W.rho[1][g.idx(i, 0)] == doctest::Approx(expect).epsilon(1e-12));
        }
        // Endpoint continuity of the profile function itself.
        CHECK(rho2 * std::exp(-(x3 - x2) / delta) ==
              doctest::Approx(rho_vac).epsilon(1e-12));
    }
    SUBCASE("plasma closures attached to every phase with the CH parameters") {
        for (const auto& m : cfg.materials) {
            CHECK(m.conductivity.kind == ConductivityModel::Kind::spitzer_harm);
            CHECK(m.conductivity.A_c == doctest::Approx(6.5));
            CHECK(m.conductivity.Z_e == doctest::Approx(3.5));
            CHECK(m.viscosity.kind == ViscosityModel::Kind::braginskii);
        }
        CHECK(cfg.physics.laser);
        CHECK(cfg.laser.rho_critical == doctest::Approx(1.22e-2));
        CHECK(cfg.laser.depth == doctest::Approx(2.0e-3));
    }
}

TEST_CASE("triple point case") {
    const CaseConfig cfg = cases::triple_point();
    FlowField U;
    PrimField W;
    init_fields(cfg, U, W);
    const Grid g = cfg.make_grid();
    // Initial temperature equilibrium within every cell.
    for (int j = g.jb(); j < g.je(); j += 7)
        for (int i = g.ib(); i < g.ie(); i += 7) {
            const std::size_t c = g.idx(i, j);
            CHECK(std::abs(W.T[1][c] - W.T[0][c]) / W.T[0][c] <= 1e-10);
            CHECK(std::abs(W.T[2][c] - W.T[0][c]) / W.T[0][c] <= 1e-10);
        }
    // Region temperatures follow p/((gamma-1) rho cv).
    const std::size_t cl = g.idx(g.ib() + 2, g.jb() + 2); // bottom-left: region L
    CHECK(W.T[0][cl] == doctest::Approx(1.0 / (0.5 * 40.0)).epsilon(1e-12));
    CHECK(cfg.physics.overbee);

    const CaseConfig hv = cases::triple_point(280, 120, cases::TriplePointVariant::hv);
    CHECK(hv.physics.viscous);
    CHECK(!hv.physics.relax);
    const CaseConfig htr = cases::triple_point(280, 120, cases::TriplePointVariant::htr);
    CHECK(htr.physics.relax);
    CHECK(!htr.physics.conduct);
    const CaseConfig htrhc = cases::triple_point(280, 120, cases::TriplePointVariant::htrhc);
    CHECK(htrhc.physics.relax);
    CHECK(htrhc.physics.conduct);
}

TEST_CASE("shock bubble case") {
    const CaseConfig cfg = cases::shock_bubble();
    FlowField U;
    PrimField W;
    init_fields(cfg, U, W);
    const Grid g = cfg.make_grid();

    SUBCASE("post-shock temperature near the documented value") {
        const std::size_t c = g.idx(g.ie() - 2, g.jb() + 2);
        CHECK(std::abs(W.T[0][c] - 334.44) / 334.44 < 5e-3);
    }
    SUBCASE("pre-shock state is consistent with a Mach-1.22 normal shock") {
        // Independent normal-shock relations at M = 1.22, gamma = 1.4.
        const double M2 = 1.22 * 1.22, gam = 1.4;
        const double p_ratio = 1.0 + 2.0 * gam / (gam + 1.0) * (M2 - 1.0);
        const double r_ratio = (gam + 1.0) * M2 / ((gam - 1.0) * M2 + 2.0);
        CHECK(std::abs(159080.98 / 101325.0 - p_ratio) / p_ratio < 0.01);
        CHECK(std::abs(1.66 / 1.2062 - r_ratio) / r_ratio < 0.01);
        const double a1 = std::sqrt(gam * 101325.0 / 1.2062);
        const double u2 = -(1.0 - 1.0 / r_ratio) * 1.22 * a1;
        CHECK(std::abs(-114.0 - u2) / std::abs(u2) < 0.01);
    }
    SUBCASE("bubble mask area within one cell ring of the disk") {
        double area = 0.0;
        for (int j = g.jb(); j < g.je(); ++j)
            for (int i = g.ib(); i < g.ie(); ++i)
                if (W.alpha[1][g.idx(i, j)] > 0.5) area += g.dx * g.dy;
        const double disk = std::numbers::pi * 0.025 * 0.025;
        const double ring = 2.0 * std::numbers::pi * 0.025 * std::max(g.dx, g.dy);
        CHECK(std::abs(area - disk) <= ring);
    }
    SUBCASE("helium and air temperatures in near-equilibrium initially") {
        const std::size_t c = g.idx(g.ib() + g.nx / 2 + 8, g.jb() + g.ny / 2);
        CHECK(W.alpha[1][c] > 0.5); // inside the bubble
        CHECK(std::abs(W.T[1][c] - W.T[0][c]) / W.T[0][c] < 5e-3);
    }
}

TEST_CASE("config serialization round trip") {
    for (const std::string name : {"pvt_advection", "shock_tube", "laser_ablation",
                                   "triple_point_htrhc", "shock_bubble", "smooth_advection"}) {
        CAPTURE(name);
        const CaseConfig a = cases::by_name(name);
        const std::string text = serialize_config(a);
        std::istringstream in(text);
        const CaseConfig b = parse_config(in);
        CHECK(serialize_config(b) == text); // fixed point after one round trip
        // Identical initial fields.
        CaseConfig a_small = a, b_small = b;
        if (a.dim == 2) {
            a_small.nx = b_small.nx = 36;
            a_small.ny = b_small.ny = 16;
        }
        FlowField Ua, Ub;
        PrimField Wa, Wb;
        init_fields(a_small, Ua, Wa);
        init_fields(b_small, Ub, Wb);
        const Grid g = a_small.make_grid();
        for (int j = g.jb(); j < g.je(); j += 3)
            for (int i = g.ib(); i < g.ie(); i += 3) {
                const std::size_t c = g.idx(i, j);
                CHECK(Ua.rhoE[c] == Ub.rhoE[c]);
                for (int k = 0; k < Ua.nphase; ++k) CHECK(Ua.m[k][c] == Ub.m[k][c]);
            }
    }
}

TEST_CASE("config error paths") {
    CHECK_THROWS_AS((void)cases::by_name("nope"), ConfigError);
    CaseConfig bad = cases::pvt_advection();
    bad.physics.relax = false; // conduction without relaxation
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    CaseConfig bad2 = cases::pvt_advection();
    bad2.regions[0].alpha = {0.5, 0.6};
    CHECK_THROWS_AS(bad2.validate(), ConfigError);
    std::istringstream garbage("[domain\nx0 = 0");
    CHECK_THROWS_AS((void)parse_config(garbage), ConfigError);
}
