#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mcf/parabolic.hpp"
#include "mcf/util.hpp"

using namespace mcf;

namespace {

Grid periodic_1d(int n, double L = 1.0) {
    return Grid::make_1d(n, 0.0, L, BoundaryTag::periodic, BoundaryTag::periodic);
}

DiffusionOperator unit_op(const Grid& g, double k = 1.0, double c = 1.0) {
    std::vector<double> kc(g.size(), k), cc(g.size(), c);
    return make_diffusion_operator(g, kc, {}, cc);
}

double interior_sum_cv(const DiffusionOperator& op, const std::vector<double>& v) {
    const Grid& g = op.grid;
    double s = 0.0;
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) s += op.capacity[g.idx(i, j)] * v[g.idx(i, j)];
    return s;
}

// Power iteration on -(1/c) L, an independent check that the Gershgorin
// bound dominates the true spectral radius.
double power_iteration(const DiffusionOperator& op, int iters = 300) {
    const Grid& g = op.grid;
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    std::vector<double> v(g.size(), 0.0), w(g.size(), 0.0);
    for (int i = g.ib(); i < g.ie(); ++i) v[g.idx(i, 0)] = ur(rng);
    double lam = 0.0;
    for (int it = 0; it < iters; ++it) {
        op.fill(v);
        op.apply(v, w);
        double norm = 0.0;
        for (int i = g.ib(); i < g.ie(); ++i) {
            w[g.idx(i, 0)] = -w[g.idx(i, 0)];
            norm = std::max(norm, std::abs(w[g.idx(i, 0)]));
        }
        if (norm == 0.0) return 0.0;
        lam = norm;
        for (int i = g.ib(); i < g.ie(); ++i) v[g.idx(i, 0)] = w[g.idx(i, 0)] / norm;
    }
    return lam;
}

} // namespace

TEST_CASE("spectral bound") {
    SUBCASE("constant unit coefficients give the row-sum bound 4/dx^2") {
        Grid g = periodic_1d(16, 16.0); // dx = 1
        CHECK(spectral_bound(unit_op(g)) == doctest::Approx(4.0).epsilon(1e-14));
    }
    SUBCASE("zero conductivity gives zero") {
        Grid g = periodic_1d(8);
        CHECK(spectral_bound(unit_op(g, 0.0)) == 0.0);
    }
    SUBCASE("bound dominates a power-iteration estimate on random coefficients") {
        Grid g = periodic_1d(32);
        std::mt19937 rng(9);
        std::uniform_real_distribution<double> ur(0.1, 5.0);
        std::vector<double> kc(g.size(), 0.0), cc(g.size(), 1.0);
        for (int i = 0; i < g.sx(); ++i) {
            kc[i] = ur(rng);
            cc[i] = 0.5 + ur(rng);
        }
        const DiffusionOperator op = make_diffusion_operator(g, kc, {}, cc);
        const double bound = spectral_bound(op);
        const double est = power_iteration(op);
        CHECK(est <= bound * (1.0 + 1e-12));
        CHECK(est > 0.25 * bound); // the bound is tight to within a small factor
    }
}

TEST_CASE("chebyshev schedule") {
    SUBCASE("small dt*lambda collapses to a single explicit iteration") {
        const LimSchedule s = lim_schedule(0.5, 1.0); // dt*lambda = 0.5
        CHECK(s.P == 1);
        REQUIRE(s.b.size() == 1);
        CHECK(s.b[0] == 0.0);
    }
    SUBCASE("dt*lambda = 15 gives P = 4 and 7 iterations") {
        const LimSchedule s = lim_schedule(15.0, 1.0);
        CHECK(s.P == 4);
        CHECK(s.b.size() == 7);
        CHECK(s.b.back() == 0.0); // a_1 = 0: final iteration is the corrector
    }
    SUBCASE("schedule length and parameter ordering") {
        for (double dtl : {3.0, 40.0, 400.0, 4000.0}) {
            const LimSchedule s = lim_schedule(dtl, 1.0);
            CHECK(static_cast<int>(s.b.size()) == 2 * s.P - 1);
            // first block a_P..a_2, second a_P..a_1
            for (int m = 0; m + 1 < s.P - 1; ++m) CHECK(s.b[m] >= s.b[m + 1]);
            CHECK(s.b[s.P - 1] == s.b[0]); // both blocks start at a_P
            for (double b : s.b) CHECK(b >= 0.0);
        }
    }
}

TEST_CASE("lim_solve basics") {
    Grid g = periodic_1d(64);
    const DiffusionOperator op = unit_op(g, 0.8, 1.0);

    SUBCASE("constant field with no source is a fixed point") {
        std::vector<double> v(g.size(), 3.25);
        const LimResult r = lim_solve(v, op, {}, 0.01);
        for (int i = g.ib(); i < g.ie(); ++i)
            CHECK(r.v[g.idx(i, 0)] == doctest::Approx(3.25).epsilon(1e-14));
    }
    SUBCASE("P = 1 reproduces explicit Euler exactly") {
        std::mt19937 rng(4);
        std::uniform_real_distribution<double> ur(0.0, 1.0);
        std::vector<double> v(g.size(), 0.0), f(g.size(), 0.0);
        for (int i = 0; i < g.sx(); ++i) {
            v[i] = ur(rng);
            f[i] = ur(rng);
        }
        const double lam = spectral_bound(op);
        const double dt = 0.4 / lam; // P stays 1
        const LimResult r = lim_solve(v, op, f, dt);
        CHECK(r.schedule.P == 1);

        std::vector<double> vv = v, lv(g.size(), 0.0);
        op.fill(vv);
        op.apply(vv, lv);
        for (int i = g.ib(); i < g.ie(); ++i) {
            const std::size_t c = g.idx(i, 0);
            const double euler = v[c] + dt * (lv[c] + f[c] / op.capacity[c]);
            CHECK(r.v[c] == doctest::Approx(euler).epsilon(1e-14));
            CHECK(r.v_predicted[c] == v[c]); // predictor is the input state
        }
    }
}

TEST_CASE("heat kernel accuracy and second-order convergence") {
    // Periodic Gaussian; the wrapped analytic kernel solution after time t
    // has variance s0^2 + 2 k t.
    const double k = 0.02, t_end = 0.5, s0 = 0.05;
    auto exact = [&](double x, double t) {
        const double s2 = s0 * s0 + 2.0 * k * t;
        double sum = 0.0;
        for (int im = -3; im <= 3; ++im)
            sum += std::exp(-sq(x - 0.5 + im) / (2.0 * s2)) / std::sqrt(s2);
        return sum * s0; // normalized so the t=0 peak is O(1)
    };

    auto l2_error = [&](int n, bool use_lim) {
        Grid g = periodic_1d(n);
        const DiffusionOperator op = unit_op(g, k);
        std::vector<double> v(g.size(), 0.0);
        for (int i = g.ib(); i < g.ie(); ++i) v[g.idx(i, 0)] = exact(g.xc(i), 0.0);
        const int steps = 2000; // time error negligible next to space error
        const double dt = t_end / steps;
        for (int s = 0; s < steps; ++s)
            v = use_lim ? lim_solve(v, op, {}, dt).v : implicit_solve(v, op, {}, dt, 1e-12);
        double e2 = 0.0;
        for (int i = g.ib(); i < g.ie(); ++i)
            e2 += sq(v[g.idx(i, 0)] - exact(g.xc(i), t_end)) * g.dx;
        return std::sqrt(e2);
    };

    const double e64 = l2_error(64, true);
    const double e128 = l2_error(128, true);
    CHECK(e64 / e128 >= 3.5); // second order in space

    // Implicit and LIM agree within discretization error.
    const double ei64 = l2_error(64, false);
    CHECK(std::abs(ei64 - e64) <= 0.5 * e64);
}

TEST_CASE("implicit solve degenerate cases") {
    SUBCASE("constant field unchanged") {
        Grid g = periodic_1d(32);
        const DiffusionOperator op = unit_op(g, 2.0, 1.5);
        std::vector<double> v(g.size(), -1.75);
        const auto r = implicit_solve(v, op, {}, 0.1);
        for (int i = g.ib(); i < g.ie(); ++i) CHECK(r[g.idx(i, 0)] == -1.75);
    }
    SUBCASE("one cell with k = 0 follows the closed form") {
        Grid g = Grid::make_1d(1, 0.0, 1.0, BoundaryTag::extrapolation,
                               BoundaryTag::extrapolation);
        std::vector<double> kc(g.size(), 0.0), cc(g.size(), 2.0);
        const DiffusionOperator op = make_diffusion_operator(g, kc, {}, cc);
        std::vector<double> v(g.size(), 1.0), f(g.size(), 3.0);
        const double dt = 0.25;
        const auto r = implicit_solve(v, op, f, dt, 1e-13);
        // (c/dt) v = (c/dt) v0 + f
        CHECK(r[g.idx(g.ib(), 0)] ==
              doctest::Approx(1.0 + dt * 3.0 / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("conservation of the capacity-weighted sum") {
    Grid g = periodic_1d(100);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ur(0.2, 2.0);
    std::vector<double> kc(g.size(), 0.0), cc(g.size(), 0.0), v(g.size(), 0.0);
    for (int i = 0; i < g.sx(); ++i) {
        kc[i] = ur(rng);
        cc[i] = ur(rng);
        v[i] = ur(rng);
    }
    const DiffusionOperator op = make_diffusion_operator(g, kc, {}, cc);
    const double before = interior_sum_cv(op, v);

    const auto rl = lim_solve(v, op, {}, 0.05);
    CHECK(interior_sum_cv(op, rl.v) == doctest::Approx(before).epsilon(1e-12));

    const auto ri = implicit_solve(v, op, {}, 0.05, 1e-13);
    CHECK(interior_sum_cv(op, ri) == doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("discrete maximum principle for the super-step") {
    Grid g = periodic_1d(80);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> kc(g.size(), 0.0), cc(g.size(), 1.0), v(g.size(), 0.0);
        for (int i = 0; i < g.sx(); ++i) {
            kc[i] = 0.05 + 2.0 * ur(rng);
            v[i] = ur(rng);
        }
        const DiffusionOperator op = make_diffusion_operator(g, kc, {}, cc);
        double lo = 1e300, hi = -1e300;
        for (int i = g.ib(); i < g.ie(); ++i) {
            lo = std::min(lo, v[g.idx(i, 0)]);
            hi = std::max(hi, v[g.idx(i, 0)]);
        }
        // Super-step far beyond the explicit limit.
        const double dt = 80.0 / spectral_bound(op);
        const auto r = lim_solve(v, op, {}, dt);
        CHECK(r.schedule.P > 3);
        const double slack = 1e-12 * (hi - lo);
        for (int i = g.ib(); i < g.ie(); ++i) {
            CHECK(r.v[g.idx(i, 0)] >= lo - slack);
            CHECK(r.v[g.idx(i, 0)] <= hi + slack);
        }
    }
}

TEST_CASE("picard iteration") {
    Grid g = periodic_1d(48);
    std::vector<double> v0(g.size(), 0.0);
    for (int i = 0; i < g.sx(); ++i)
        v0[i] = 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * (i + 0.5) / g.sx());

    SUBCASE("linear problems converge in one inner solve") {
        AssembleFn lin = [&](const std::vector<double>&, DiffusionOperator& op,
                             std::vector<double>& f) {
            op = unit_op(g, 0.3);
            f.clear();
        };
        const auto r = picard_outer(v0, lin, 0.02, InnerSolver::lim);
        CHECK(r.iterations == 1);
        const auto ri = picard_outer(v0, lin, 0.02, InnerSolver::implicit_pcg);
        CHECK(ri.iterations == 1);
    }

    AssembleFn nonlinear = [&](const std::vector<double>& v, DiffusionOperator& op,
                               std::vector<double>& f) {
        std::vector<double> kc(g.size(), 0.0), cc(g.size(), 1.0);
        for (std::size_t c = 0; c < v.size(); ++c) kc[c] = std::max(v[c], 0.0); // k(v) = v
        op = make_diffusion_operator(g, kc, {}, cc);
        f.clear();
    };

    SUBCASE("k(v) = v fixed point satisfies the lagged equation") {
        const double dt = 0.05;
        const auto r = picard_outer(v0, nonlinear, dt, InnerSolver::implicit_pcg, 1e-12, 50,
                                    1e-13);
        CHECK(r.iterations > 1);
        // Residual of the converged backward-Euler equation with coefficients
        // from the final iterate.
        DiffusionOperator op;
        std::vector<double> f;
        nonlinear(r.v, op, f);
        std::vector<double> vv = r.v, lv(g.size(), 0.0);
        op.fill(vv);
        op.apply(vv, lv);
        for (int i = g.ib(); i < g.ie(); ++i) {
            const std::size_t c = g.idx(i, 0);
            CHECK(r.v[c] - v0[c] - dt * lv[c] == doctest::Approx(0.0).epsilon(1e-9));
        }
    }

    SUBCASE("tolerance self-consistency") {
        const double dt = 0.05;
        const auto loose = picard_outer(v0, nonlinear, dt, InnerSolver::implicit_pcg, 1e-4, 50);
        const auto tight = picard_outer(v0, nonlinear, dt, InnerSolver::implicit_pcg, 1e-10, 50);
        double diff = 0.0;
        for (int i = g.ib(); i < g.ie(); ++i)
            diff = std::max(diff, std::abs(loose.v[g.idx(i, 0)] - tight.v[g.idx(i, 0)]));
        CHECK(diff <= 1e-4);
    }
}

TEST_CASE("2d: split chebyshev, full implicit and the analytic kernel agree") {
    const double kx = 0.015, ky = 0.03, t_end = 0.4, s0 = 0.07;
    auto exact = [&](double x, double y, double t) {
        const double sx2 = s0 * s0 + 2.0 * kx * t;
        const double sy2 = s0 * s0 + 2.0 * ky * t;
        double sum = 0.0;
        for (int ix = -2; ix <= 2; ++ix)
            for (int iy = -2; iy <= 2; ++iy)
                sum += std::exp(-sq(x - 0.5 + ix) / (2.0 * sx2) - sq(y - 0.5 + iy) / (2.0 * sy2));
        return sum * s0 * s0 / std::sqrt(sx2 * sy2);
    };
    Grid g = Grid::make_2d(48, 48, 0.0, 1.0, 0.0, 1.0,
                           {BoundaryTag::periodic, BoundaryTag::periodic, BoundaryTag::periodic,
                            BoundaryTag::periodic});
    std::vector<double> kxc(g.size(), kx), kyc(g.size(), ky), cc(g.size(), 1.0);
    const DiffusionOperator op = make_diffusion_operator(g, kxc, kyc, cc);
    DiffusionOperator op_x = op, op_y = op;
    op_x.mode = DiffusionOperator::Mode::x_only;
    op_y.mode = DiffusionOperator::Mode::y_only;

    std::vector<double> v0(g.size(), 0.0);
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i)
            v0[g.idx(i, j)] = exact(g.xc(i), g.yc(j), 0.0);

    const int steps = 50;
    std::vector<double> v_split = v0, v_imp = v0;
    for (int s = 0; s < steps; ++s) {
        v_split = lim_solve_split2d(v_split, op_x, op_y, {}, t_end / steps);
        v_imp = implicit_solve(v_imp, op, {}, t_end / steps, 1e-12);
    }
    double err_split = 0.0, err_imp = 0.0, diff = 0.0, scale = 0.0;
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) {
            const std::size_t c = g.idx(i, j);
            const double ex = exact(g.xc(i), g.yc(j), t_end);
            err_split = std::max(err_split, std::abs(v_split[c] - ex));
            err_imp = std::max(err_imp, std::abs(v_imp[c] - ex));
            diff = std::max(diff, std::abs(v_split[c] - v_imp[c]));
            scale = std::max(scale, std::abs(ex));
        }
    CHECK(err_split / scale < 0.02);
    CHECK(err_imp / scale < 0.02);
    // First-order stage errors of opposite sign; mutual gap stays bounded by
    // the two accuracy checks above.
    CHECK(diff / scale < 0.03);

    // Conservation through the split path.
    double sum0 = 0.0, sum1 = 0.0;
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) {
            sum0 += v0[g.idx(i, j)];
            sum1 += v_split[g.idx(i, j)];
        }
    CHECK(sum1 == doctest::Approx(sum0).epsilon(1e-12));
}
