#include "mcf/exact_riemann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcf/util.hpp"

namespace mcf::riemann {
namespace {

struct Side {
    double rho, u, p, gamma, pinf;
    double pi;   // p + p_inf
    double a;    // sound speed
};

Side make_side(const SideState& w, const MaterialParams& m) {
    Side s{w.rho, w.u, w.p, m.gamma, m.p_inf, 0.0, 0.0};
    s.pi = w.p + m.p_inf;
    if (!(s.rho > 0.0) || !(s.pi > 0.0))
        throw NumericalError("exact_riemann: invalid side state rho=" + std::to_string(s.rho) +
                             " p+pinf=" + std::to_string(s.pi));
    s.a = std::sqrt(s.gamma * s.pi / s.rho);
    return s;
}

// Branch function and derivative for one side in the shifted pressure.
void branch(const Side& s, double p_star, double& f, double& df) {
    const double pi_star = p_star + s.pinf;
    if (pi_star > s.pi) { // shock
        const double A = 2.0 / ((s.gamma + 1.0) * s.rho);
        const double B = (s.gamma - 1.0) / (s.gamma + 1.0) * s.pi;
        const double q = std::sqrt(A / (pi_star + B));
        f = (pi_star - s.pi) * q;
        df = q * (1.0 - 0.5 * (pi_star - s.pi) / (pi_star + B));
    } else { // rarefaction
        const double z = (s.gamma - 1.0) / (2.0 * s.gamma);
        const double ratio = pi_star / s.pi;
        f = 2.0 * s.a / (s.gamma - 1.0) * (std::pow(ratio, z) - 1.0);
        df = std::pow(ratio, -(s.gamma + 1.0) / (2.0 * s.gamma)) / (s.rho * s.a);
    }
}

double star_density(const Side& s, double p_star) {
    const double ratio = (p_star + s.pinf) / s.pi;
    if (ratio > 1.0) {
        const double gfac = (s.gamma - 1.0) / (s.gamma + 1.0);
        return s.rho * (ratio + gfac) / (gfac * ratio + 1.0);
    }
    return s.rho * std::pow(ratio, 1.0 / s.gamma);
}

} // namespace

RiemannSolution exact_riemann(const SideState& wl, const SideState& wr,
                              const MaterialParams& ml, const MaterialParams& mr) {
    const Side L = make_side(wl, ml);
    const Side R = make_side(wr, mr);
    const double du = R.u - L.u;

    const double p_floor = std::max(-ml.p_inf, -mr.p_inf);
    const double vel_scale = std::max({std::abs(L.u), std::abs(R.u), L.a, R.a});
    const double tol = 1e-12 * vel_scale;

    auto phi = [&](double p, double& f, double& df) {
        double fl, dfl, fr, dfr;
        branch(L, p, fl, dfl);
        branch(R, p, fr, dfr);
        f = fl + fr + du;
        df = dfl + dfr;
    };

    // Vacuum check at the admissible lower end.
    const double vac_limit = du - 2.0 * L.a / (L.gamma - 1.0) - 2.0 * R.a / (R.gamma - 1.0);
    if (vac_limit >= 0.0)
        throw NumericalError("exact_riemann: vacuum formation, pressure function has no root");

    // Two-rarefaction style initial guess using averaged exponent; only a
    // starting point, the bracketed Newton below does the work.
    const double gbar = 0.5 * (L.gamma + R.gamma);
    const double z = (gbar - 1.0) / (2.0 * gbar);
    double guess = std::pow(
        std::max((L.a + R.a - 0.5 * (gbar - 1.0) * du), 1e-300) /
            (L.a / std::pow(L.pi, z) + R.a / std::pow(R.pi, z)),
        1.0 / z);
    guess -= 0.5 * (ml.p_inf + mr.p_inf);

    double lo = (p_floor == 0.0) ? 0.0 : p_floor * (1.0 - 1e-13);
    double hi = std::max({guess, L.p, R.p, p_floor + (L.pi + R.pi)});
    double f, df;
    phi(hi, f, df);
    int guard = 0;
    while (f < 0.0) {
        hi = p_floor + 2.0 * (hi - p_floor);
        phi(hi, f, df);
        if (++guard > 400)
            throw NumericalError("exact_riemann: failed to bracket star pressure");
    }

    double p = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
    RiemannSolution sol;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        phi(p, f, df);
        sol.iterations = it + 1;
        if (std::abs(f) <= tol) {
            converged = true;
            break;
        }
        if (f < 0.0) lo = p; else hi = p;
        double p_new = p - f / df;
        if (!(p_new > lo) || !(p_new < hi)) p_new = 0.5 * (lo + hi);
        if (p_new == p) { converged = std::abs(f) <= 1e3 * tol; break; }
        p = p_new;
    }
    if (!converged)
        throw NumericalError("exact_riemann: star-pressure iteration did not converge, residual=" +
                             std::to_string(f));

    double fl, dfl, fr, dfr;
    branch(L, p, fl, dfl);
    branch(R, p, fr, dfr);

    sol.p_star = p;
    sol.u_star = 0.5 * (L.u + R.u) + 0.5 * (fr - fl);
    sol.rho_star_left = star_density(L, p);
    sol.rho_star_right = star_density(R, p);
    sol.left_wave = (p + ml.p_inf > L.pi) ? WaveKind::shock : WaveKind::rarefaction;
    sol.right_wave = (p + mr.p_inf > R.pi) ? WaveKind::shock : WaveKind::rarefaction;

    const double gl = L.gamma, gr = R.gamma;
    if (sol.left_wave == WaveKind::shock) {
        const double ratio = (p + ml.p_inf) / L.pi;
        sol.left_head = sol.left_tail =
            L.u - L.a * std::sqrt((gl + 1.0) / (2.0 * gl) * ratio + (gl - 1.0) / (2.0 * gl));
    } else {
        const double a_star = L.a * std::pow((p + ml.p_inf) / L.pi, (gl - 1.0) / (2.0 * gl));
        sol.left_head = L.u - L.a;
        sol.left_tail = sol.u_star - a_star;
    }
    if (sol.right_wave == WaveKind::shock) {
        const double ratio = (p + mr.p_inf) / R.pi;
        sol.right_head = sol.right_tail =
            R.u + R.a * std::sqrt((gr + 1.0) / (2.0 * gr) * ratio + (gr - 1.0) / (2.0 * gr));
    } else {
        const double a_star = R.a * std::pow((p + mr.p_inf) / R.pi, (gr - 1.0) / (2.0 * gr));
        sol.right_head = R.u + R.a;
        sol.right_tail = sol.u_star + a_star;
    }

    sol.left = wl;
    sol.right = wr;
    sol.mat_left = ml;
    sol.mat_right = mr;
    return sol;
}

SamplePoint sample_solution(const RiemannSolution& sol, double xi) {
    SamplePoint out;
    if (xi <= sol.u_star) {
        out.material = 0;
        const Side s = make_side(sol.left, sol.mat_left);
        if (sol.left_wave == WaveKind::shock) {
            if (xi <= sol.left_head) {
                out = {s.rho, s.u, s.p, 0};
            } else {
                out = {sol.rho_star_left, sol.u_star, sol.p_star, 0};
            }
        } else {
            if (xi <= sol.left_head) {
                out = {s.rho, s.u, s.p, 0};
            } else if (xi >= sol.left_tail) {
                out = {sol.rho_star_left, sol.u_star, sol.p_star, 0};
            } else {
                const double g = s.gamma;
                const double a = 2.0 / (g + 1.0) * (s.a + 0.5 * (g - 1.0) * (s.u - xi));
                const double u = 2.0 / (g + 1.0) * (s.a + 0.5 * (g - 1.0) * s.u + xi);
                const double pi = s.pi * std::pow(a / s.a, 2.0 * g / (g - 1.0));
                out = {g * pi / (a * a), u, pi - s.pinf, 0};
            }
        }
    } else {
        out.material = 1;
        const Side s = make_side(sol.right, sol.mat_right);
        if (sol.right_wave == WaveKind::shock) {
            if (xi >= sol.right_head) {
                out = {s.rho, s.u, s.p, 1};
            } else {
                out = {sol.rho_star_right, sol.u_star, sol.p_star, 1};
            }
        } else {
            if (xi >= sol.right_head) {
                out = {s.rho, s.u, s.p, 1};
            } else if (xi <= sol.right_tail) {
                out = {sol.rho_star_right, sol.u_star, sol.p_star, 1};
            } else {
                const double g = s.gamma;
                const double a = 2.0 / (g + 1.0) * (s.a - 0.5 * (g - 1.0) * (s.u - xi));
                const double u = 2.0 / (g + 1.0) * (-s.a + 0.5 * (g - 1.0) * s.u + xi);
                const double pi = s.pi * std::pow(a / s.a, 2.0 * g / (g - 1.0));
                out = {g * pi / (a * a), u, pi - s.pinf, 1};
            }
        }
    }
    return out;
}

} // namespace mcf::riemann
