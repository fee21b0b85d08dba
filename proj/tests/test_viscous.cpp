#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mcf/eos.hpp"
#include "mcf/util.hpp"
#include "mcf/viscous.hpp"

using namespace mcf;

namespace {

std::vector<MaterialParams> mats_with_mu(double mu1, double mu2) {
    MaterialParams m1{"a", 1.4, 0.0, 717.5};
    MaterialParams m2{"b", 1.6, 0.0, 500.0};
    m1.viscosity = {ViscosityModel::Kind::constant, mu1};
    m2.viscosity = {ViscosityModel::Kind::constant, mu2};
    return {m1, m2};
}

struct Setup {
    FlowField U;
    PrimField W;
    std::vector<std::vector<double>> mE;
};

// Two-phase field at uniform (p, T) with a prescribed velocity profile.
Setup make_field(const Grid& g, const std::vector<MaterialParams>& mats, double p, double T,
                 const std::function<double(double)>& uprof, double a1 = 0.4) {
    Setup s;
    s.U = FlowField::allocate(g, 2);
    s.W = PrimField::allocate(g, 2);
    s.mE.assign(2, std::vector<double>(g.size(), 0.0));
    for (int i = 0; i < g.sx(); ++i) {
        const std::size_t c = g.idx(i, 0);
        const double r1 = eos::sg_density_from_Tp(T, p, mats[0]);
        const double r2 = eos::sg_density_from_Tp(T, p, mats[1]);
        s.U.m[0][c] = a1 * r1;
        s.U.m[1][c] = (1.0 - a1) * r2;
        s.U.alpha[0][c] = a1;
        const double rho = s.U.m[0][c] + s.U.m[1][c];
        const double u = uprof(g.xc(i));
        s.U.mom[0][c] = rho * u;
        s.U.rhoE[c] = a1 * r1 * eos::sg_energy(r1, p, mats[0]) +
                      (1.0 - a1) * r2 * eos::sg_energy(r2, p, mats[1]) + 0.5 * rho * u * u;
    }
    decode_all(s.U, mats, s.W);
    for (int k = 0; k < 2; ++k)
        for (int i = g.ib(); i < g.ie(); ++i) {
            const std::size_t c = g.idx(i, 0);
            const double kin = 0.5 * sq(s.W.vel[0][c]);
            s.mE[k][c] = s.U.m[k][c] * (s.W.e[k][c] + kin);
        }
    return s;
}

} // namespace

TEST_CASE("mixture viscosity") {
    CHECK(mixture_viscosity({1.0}, {3.5e-5}) == doctest::Approx(3.5e-5));
    CHECK(mixture_viscosity({0.5, 0.5}, {2e-5, 0.0}) == doctest::Approx(1e-5).epsilon(1e-14));
    CHECK(mixture_viscosity({0.2, 0.8}, {4e-5, 4e-5}) ==
          doctest::Approx(4e-5).epsilon(1e-14));
}

TEST_CASE("uniform velocity and zero viscosity are identities") {
    Grid g = Grid::make_1d(40, 0.0, 1.0, BoundaryTag::periodic, BoundaryTag::periodic);
    ViscousConfig cfg;

    SUBCASE("uniform velocity: zero stress") {
        const auto mats = mats_with_mu(2e-3, 1e-3);
        Setup s = make_field(g, mats, 1.0e5, 300.0, [](double) { return 42.0; });
        const FlowField U0 = s.U;
        viscous_step(s.U, s.W, s.mE, mats, {}, 1e-4, cfg);
        for (int i = g.ib(); i < g.ie(); ++i) {
            CHECK(s.U.mom[0][i] == doctest::Approx(U0.mom[0][i]).epsilon(1e-13));
            CHECK(s.U.rhoE[i] == doctest::Approx(U0.rhoE[i]).epsilon(1e-13));
        }
    }
    SUBCASE("zero viscosity: exact identity for momentum and energies") {
        const auto mats = mats_with_mu(0.0, 0.0);
        Setup s = make_field(g, mats, 1.0e5, 300.0,
                             [](double x) { return 10.0 * std::sin(2.0 * std::numbers::pi * x); });
        const FlowField U0 = s.U;
        viscous_step(s.U, s.W, s.mE, mats, {}, 1e-4, cfg);
        for (int i = g.ib(); i < g.ie(); ++i) {
            CHECK(s.U.mom[0][i] == U0.mom[0][i]);
            CHECK(s.U.rhoE[i] == doctest::Approx(U0.rhoE[i]).epsilon(1e-14));
        }
    }
}

TEST_CASE("sinusoidal shear decays at the analytic rate") {
    // du/dt = (4/3)(mu/rho) u_xx, u = sin(2 pi x): decay exp(-(4/3) mu (2 pi)^2 t / rho).
    Grid g = Grid::make_1d(128, 0.0, 1.0, BoundaryTag::periodic, BoundaryTag::periodic);
    const double mu = 5.0e-3;
    const auto mats = mats_with_mu(mu, mu);
    const double T = 300.0, p = 1.0e5;
    Setup s = make_field(g, mats, p, T,
                         [](double x) { return std::sin(2.0 * std::numbers::pi * x); });
    double rho = 0.0;
    for (int k = 0; k < 2; ++k) rho += s.U.m[k][g.idx(g.ib(), 0)];

    ViscousConfig cfg;
    const double t_end = 2.0;
    const int steps = 400;
    for (int step = 0; step < steps; ++step)
        viscous_step(s.U, s.W, s.mE, mats, {}, t_end / steps, cfg);

    const double decay = std::exp(-(4.0 / 3.0) * mu * sq(2.0 * std::numbers::pi) * t_end / rho);
    for (int i = g.ib(); i < g.ie(); i += 7) {
        const double expect = decay * std::sin(2.0 * std::numbers::pi * g.xc(i));
        CHECK(s.W.vel[0][g.idx(i, 0)] == doctest::Approx(expect).epsilon(2e-3));
    }
}

TEST_CASE("conservation and dissipation") {
    Grid g = Grid::make_1d(96, 0.0, 1.0, BoundaryTag::periodic, BoundaryTag::periodic);
    const auto mats = mats_with_mu(4e-3, 1.5e-3);
    Setup s = make_field(g, mats, 1.0e5, 350.0, [](double x) {
        return 25.0 * std::sin(2.0 * std::numbers::pi * x) +
               10.0 * std::cos(4.0 * std::numbers::pi * x);
    });
    const std::vector<double> m0 = s.U.m[0], m1 = s.U.m[1];

    auto momentum = [&] {
        double t = 0.0;
        for (int i = g.ib(); i < g.ie(); ++i) t += s.U.mom[0][i];
        return t;
    };
    auto phase_energy_total = [&] {
        double t = 0.0;
        for (int k = 0; k < 2; ++k)
            for (int i = g.ib(); i < g.ie(); ++i) t += s.mE[k][i];
        return t;
    };
    auto kinetic = [&] {
        double t = 0.0;
        for (int i = g.ib(); i < g.ie(); ++i)
            t += 0.5 * sq(s.U.mom[0][i]) / (s.U.m[0][i] + s.U.m[1][i]);
        return t;
    };

    double mom_scale = 0.0;
    for (int i = g.ib(); i < g.ie(); ++i) mom_scale += std::abs(s.U.mom[0][i]);

    const double mom0 = momentum(), mE0 = phase_energy_total(), ke0 = kinetic();
    ViscousConfig cfg;
    for (int step = 0; step < 25; ++step) viscous_step(s.U, s.W, s.mE, mats, {}, 2e-2, cfg);

    CHECK(std::abs(momentum() - mom0) <= 1e-12 * mom_scale);
    CHECK(std::abs(phase_energy_total() - mE0) / mE0 <= 1e-10);
    CHECK(kinetic() <= ke0 * (1.0 + 1e-12)); // dissipative
    CHECK(kinetic() < 0.95 * ke0);           // and visibly dissipating
    // Partial densities untouched, bitwise.
    CHECK(s.U.m[0] == m0);
    CHECK(s.U.m[1] == m1);
}

TEST_CASE("implicit inner solver gives the same physics") {
    Grid g = Grid::make_1d(64, 0.0, 1.0, BoundaryTag::periodic, BoundaryTag::periodic);
    const auto mats = mats_with_mu(3e-3, 3e-3);
    Setup a = make_field(g, mats, 1.0e5, 300.0,
                         [](double x) { return std::sin(2.0 * std::numbers::pi * x); });
    Setup b = make_field(g, mats, 1.0e5, 300.0,
                         [](double x) { return std::sin(2.0 * std::numbers::pi * x); });
    ViscousConfig cl, ci;
    cl.inner = InnerSolver::lim;
    ci.inner = InnerSolver::implicit_pcg;
    for (int s = 0; s < 10; ++s) {
        viscous_step(a.U, a.W, a.mE, mats, {}, 5e-3, cl);
        viscous_step(b.U, b.W, b.mE, mats, {}, 5e-3, ci);
    }
    for (int i = g.ib(); i < g.ie(); i += 5)
        CHECK(a.W.vel[0][g.idx(i, 0)] ==
              doctest::Approx(b.W.vel[0][g.idx(i, 0)]).epsilon(2e-2).scale(1.0));
}

TEST_CASE("2d shear layer: conservation and dissipation") {
    Grid g = Grid::make_2d(32, 32, 0.0, 1.0, 0.0, 1.0,
                           {BoundaryTag::periodic, BoundaryTag::periodic, BoundaryTag::periodic,
                            BoundaryTag::periodic});
    const auto mats = mats_with_mu(3e-3, 2e-3);
    FlowField U = FlowField::allocate(g, 2);
    PrimField W = PrimField::allocate(g, 2);
    std::vector<std::vector<double>> mE(2, std::vector<double>(g.size(), 0.0));
    const double p = 1.0e5, T = 320.0;
    for (int j = 0; j < g.sy(); ++j)
        for (int i = 0; i < g.sx(); ++i) {
            const std::size_t c = g.idx(i, j);
            const double x = g.xc(i), y = g.yc(j);
            const double a1 = 0.5 + 0.2 * std::sin(2.0 * std::numbers::pi * (x + y));
            const double r1 = eos::sg_density_from_Tp(T, p, mats[0]);
            const double r2 = eos::sg_density_from_Tp(T, p, mats[1]);
            U.m[0][c] = a1 * r1;
            U.m[1][c] = (1.0 - a1) * r2;
            U.alpha[0][c] = a1;
            const double rho = U.m[0][c] + U.m[1][c];
            const double u = 12.0 * std::sin(2.0 * std::numbers::pi * y);
            const double v = -8.0 * std::sin(2.0 * std::numbers::pi * x);
            U.mom[0][c] = rho * u;
            U.mom[1][c] = rho * v;
            U.rhoE[c] = a1 * r1 * eos::sg_energy(r1, p, mats[0]) +
                        (1.0 - a1) * r2 * eos::sg_energy(r2, p, mats[1]) +
                        0.5 * rho * (u * u + v * v);
        }
    decode_all(U, mats, W);
    for (int k = 0; k < 2; ++k)
        for (int j = g.jb(); j < g.je(); ++j)
            for (int i = g.ib(); i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, j);
                const double kin = 0.5 * (sq(W.vel[0][c]) + sq(W.vel[1][c]));
                mE[k][c] = U.m[k][c] * (W.e[k][c] + kin);
            }

    auto totals = [&] {
        std::array<double, 4> t{0, 0, 0, 0}; // momx, momy, sum mE, kinetic
        for (int j = g.jb(); j < g.je(); ++j)
            for (int i = g.ib(); i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, j);
                t[0] += U.mom[0][c];
                t[1] += U.mom[1][c];
                t[2] += mE[0][c] + mE[1][c];
                t[3] += 0.5 * (sq(U.mom[0][c]) + sq(U.mom[1][c])) / (U.m[0][c] + U.m[1][c]);
            }
        return t;
    };
    const auto before = totals();
    ViscousConfig cfg;
    for (int s = 0; s < 10; ++s) viscous_step(U, W, mE, mats, {}, 1e-2, cfg);
    const auto after = totals();
    double mom_scale = 0.0;
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i)
            mom_scale += std::abs(U.mom[0][g.idx(i, j)]) + std::abs(U.mom[1][g.idx(i, j)]);
    CHECK(std::abs(after[0] - before[0]) <= 1e-11 * mom_scale);
    CHECK(std::abs(after[1] - before[1]) <= 1e-11 * mom_scale);
    CHECK(std::abs(after[2] - before[2]) / before[2] <= 1e-10);
    CHECK(after[3] < before[3]); // shear dissipates
}
