#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mcf/eos.hpp"
#include "mcf/util.hpp"

using namespace mcf;

namespace {

MaterialParams ideal(double gamma, double cv = 1.0) {
    MaterialParams m;
    m.gamma = gamma;
    m.cv = cv;
    return m;
}

MaterialParams stiff(double gamma, double pinf, double cv) {
    MaterialParams m;
    m.gamma = gamma;
    m.p_inf = pinf;
    m.cv = cv;
    return m;
}

// Independent bisection oracle for the saturation root, kept free of the
// production Newton path.
double bisect_pressure(const std::vector<double>& m, const std::vector<double>& e,
                       const std::vector<MaterialParams>& mats) {
    auto f = [&](double p) {
        double s = -1.0;
        for (std::size_t k = 0; k < m.size(); ++k)
            s += (mats[k].gamma - 1.0) * m[k] * (e[k] - mats[k].w) /
                 (p + mats[k].gamma * mats[k].p_inf);
        return s;
    };
    double floor = mats[0].gamma * mats[0].p_inf;
    for (const auto& mk : mats) floor = std::min(floor, mk.gamma * mk.p_inf);
    double lo = -floor + 1e-12 * (1.0 + floor), hi = 1.0;
    while (f(hi) > 0.0) hi = -floor + 2.0 * (hi + floor);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("stiffened gas closed forms") {
    const MaterialParams air = ideal(1.4, 717.5);
    CHECK(eos::sg_pressure(1.0, 2.5, ideal(1.4)) == doctest::Approx(1.0).epsilon(1e-14));

    // Ambient air temperature from the closed form.
    const double T = eos::sg_temperature(1.2062, 101325.0, air);
    CHECK(T == doctest::Approx(292.6935).epsilon(1e-4));
    // Agreement with the shocked-bubble setup temperature within 0.2%.
    CHECK(std::abs(T - 293.23) / 293.23 < 2e-3);

    // Stiffened phase density at 3000 K and 1 bar.
    const MaterialParams m1 = stiff(4.40, 6.00e6, 58.82);
    const double rho = eos::sg_density_from_Tp(3000.0, 1.0e5, m1);
    CHECK(rho == doctest::Approx((1.0e5 + 6.0e6) / (3.4 * 58.82 * 3000.0)).epsilon(1e-14));
    CHECK(rho == doctest::Approx(10.1673).epsilon(1e-4));
    CHECK(eos::sg_temperature(rho, 1.0e5, m1) == doctest::Approx(3000.0).epsilon(1e-13));
}

TEST_CASE("pressure/energy round trip on random states") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ur(0.1, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        MaterialParams m = stiff(1.0 + ur(rng) * 0.5, (trial % 2) ? ur(rng) * 1e5 : 0.0,
                                 100.0 * ur(rng));
        m.w = (trial % 3) ? 0.0 : -ur(rng);
        const double rho = ur(rng);
        const double p = ur(rng) * 1e5;
        const double e = eos::sg_energy(rho, p, m);
        CHECK(eos::sg_pressure(rho, e, m) == doctest::Approx(p).epsilon(1e-13));
        const double a = eos::sg_sound_speed(rho, p, m);
        CHECK(a * a == doctest::Approx(m.gamma * (p + m.p_inf) / rho).epsilon(1e-14));
    }
}

TEST_CASE("mixture pressure closure") {
    SUBCASE("single ideal gas") {
        std::vector<MaterialParams> mats{ideal(1.4)};
        std::vector<double> m{1.0}, alpha{1.0};
        CHECK(eos::mixture_pressure(m, 2.5, alpha, mats) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("two identical materials at any split match the single phase") {
        std::vector<MaterialParams> mats{stiff(1.8, 2.0e5, 500.0), stiff(1.8, 2.0e5, 500.0)};
        const double rho = 2.0, p = 3.0e5;
        const double e = eos::sg_energy(rho, p, mats[0]);
        for (double a1 : {0.1, 0.5, 0.9}) {
            std::vector<double> alpha{a1, 1.0 - a1};
            std::vector<double> m{a1 * rho, (1.0 - a1) * rho};
            CHECK(eos::mixture_pressure(m, rho * e, alpha, mats) ==
                  doctest::Approx(p).epsilon(1e-13));
        }
    }
    SUBCASE("reduces to sg_pressure when one fraction is 1") {
        std::vector<MaterialParams> mats{stiff(4.4, 6e6, 58.82), ideal(1.4)};
        std::vector<double> m{3.0, 1e-300}, alpha{1.0, 0.0};
        const double e = eos::sg_energy(3.0, 2.0e7, mats[0]);
        CHECK(eos::mixture_pressure(m, 3.0 * e, alpha, mats) ==
              doctest::Approx(eos::sg_pressure(3.0, e, mats[0])).epsilon(1e-13));
    }
}

TEST_CASE("pressure-equilibrium volume fraction solve") {
    SUBCASE("single phase returns sg_pressure") {
        std::vector<MaterialParams> mats{stiff(2.2, 4.0e5, 300.0)};
        std::vector<double> m{2.5}, e{eos::sg_energy(2.5, 7.7e5, mats[0])};
        const auto r = eos::solve_pressure_volume_fractions(m, e, mats);
        CHECK(r.p == doctest::Approx(7.7e5).epsilon(1e-12));
        CHECK(r.alpha[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("symmetric two-phase ideal gas") {
        std::vector<MaterialParams> mats{ideal(1.4), ideal(1.4)};
        std::vector<double> m{0.5, 0.5}, e{2.5, 2.5};
        const auto r = eos::solve_pressure_volume_fractions(m, e, mats);
        CHECK(r.p == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.alpha[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.alpha[1] == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("perturbed two-phase case against the bisection oracle") {
        std::vector<MaterialParams> mats{stiff(4.4, 6.0e6, 1606.0), ideal(1.4, 714.0)};
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> ur(0.5, 2.0);
        for (int t = 0; t < 50; ++t) {
            std::vector<double> m{600.0 * ur(rng), 40.0 * ur(rng)};
            std::vector<double> e{eos::sg_energy(600.0, 1e9 * ur(rng), mats[0]),
                                  eos::sg_energy(40.0, 1e5 * ur(rng), mats[1])};
            const auto r = eos::solve_pressure_volume_fractions(m, e, mats);
            const double p_oracle = bisect_pressure(m, e, mats);
            CHECK(r.p == doctest::Approx(p_oracle).epsilon(1e-9));
            double s = 0.0;
            for (double a : r.alpha) s += a;
            CHECK(std::abs(s - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("wood modulus") {
    CHECK(eos::wood_modulus(std::vector<double>{1.0}, std::vector<double>{42.0}) ==
          doctest::Approx(42.0));
    CHECK(eos::wood_modulus(std::vector<double>{0.5, 0.5}, std::vector<double>{2.0, 2.0}) ==
          doctest::Approx(2.0));
    CHECK(eos::wood_modulus(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 3.0}) ==
          doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("entropy: isentrope invariance and uniformity") {
    const MaterialParams m = ideal(1.4, 717.5);
    const double rho0 = 1.3, p0 = 1.0e5;
    const double s0 = eos::sg_entropy(rho0, p0, m);
    for (double c : {1.2, 2.0, 3.7}) {
        const double rho = rho0 * c;
        const double p = p0 * std::pow(c, m.gamma);
        CHECK(eos::sg_entropy(rho, p, m) == doctest::Approx(s0).epsilon(1e-12));
    }
}

TEST_CASE("high-pressure mixture state round trip") {
    // Shock-tube left state: assemble the mixture energy at p = 1e9 and
    // recover the pressure through the isobaric closure.
    std::vector<MaterialParams> mats{stiff(4.4, 6.0e6, 1606.0), ideal(1.4, 714.0)};
    const double p = 1.0e9, T = 293.02, eps = 1e-6;
    std::vector<double> alpha{1.0 - eps, eps};
    std::vector<double> m(2), rho(2);
    double rho_e = 0.0;
    for (int k = 0; k < 2; ++k) {
        rho[k] = (p + mats[k].p_inf) / ((mats[k].gamma - 1.0) * mats[k].cv * T);
        m[k] = alpha[k] * rho[k];
        rho_e += m[k] * eos::sg_energy(rho[k], p, mats[k]);
    }
    CHECK(eos::mixture_pressure(m, rho_e, alpha, mats) == doctest::Approx(p).epsilon(1e-12));
}
