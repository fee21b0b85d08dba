#include "mcf/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "mcf/closures.hpp"
#include "mcf/eos.hpp"
#include "mcf/util.hpp"

namespace mcf {

namespace {

// e_k(T, p) = cv*T*(p + gamma*pinf)/(p + pinf) + w and the pieces of the
// coupled residuals.
struct CellThermo {
    std::span<const double> m;
    std::span<const MaterialParams> mats;

    double saturation(double T, double p) const { // sum alpha_k - 1
        double s = -1.0;
        for (std::size_t k = 0; k < m.size(); ++k)
            s += m[k] * (mats[k].gamma - 1.0) * mats[k].cv * T / (p + mats[k].p_inf);
        return s;
    }
    double energy(double T, double p) const { // sum m_k e_k
        double s = 0.0;
        for (std::size_t k = 0; k < m.size(); ++k) {
            const MaterialParams& mk = mats[k];
            s += m[k] * (mk.cv * T * (p + mk.gamma * mk.p_inf) / (p + mk.p_inf) + mk.w);
        }
        return s;
    }
};

} // namespace

double saturation_pressure(std::span<const double> m, double T,
                           std::span<const MaterialParams> mats, double p_guess) {
    CellThermo ct{m, mats};
    // Residual is strictly decreasing in p, +inf at the admissible floor
    // p > -min_k pinf_k (positive temperature in every phase).
    double p_floor = mats[0].p_inf;
    for (const auto& mk : mats) p_floor = std::min(p_floor, mk.p_inf);
    p_floor = -p_floor;
    double lo = (p_floor == 0.0) ? 0.0 : p_floor * (1.0 - 1e-13);

    double hi = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k)
        hi += m[k] * (mats[k].gamma - 1.0) * mats[k].cv * T;
    double f = ct.saturation(T, hi);
    int guard = 0;
    while (f > 0.0) {
        hi = p_floor + 2.0 * (hi - p_floor);
        f = ct.saturation(T, hi);
        if (++guard > 200)
            throw NumericalError("saturation_pressure: no bracket, residual=" +
                                 std::to_string(f));
    }

    double p = (p_guess > lo && p_guess < hi) ? p_guess : 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        f = ct.saturation(T, p);
        if (std::abs(f) <= 1e-13) return p;
        if (f > 0.0) lo = p; else hi = p;
        double df = 0.0;
        for (std::size_t k = 0; k < m.size(); ++k)
            df -= m[k] * (mats[k].gamma - 1.0) * mats[k].cv * T / sq(p + mats[k].p_inf);
        double p_new = p - f / df;
        if (!(p_new > lo) || !(p_new < hi)) p_new = 0.5 * (lo + hi);
        if (p_new == p) break;
        p = p_new;
    }
    if (std::abs(ct.saturation(T, p)) > 1e-11)
        throw NumericalError("saturation_pressure: no convergence");
    return p;
}

double effective_heat_capacity(std::span<const double> m, double T, double p,
                               std::span<const MaterialParams> mats) {
    // dp/dT from the saturation constraint at a common temperature, then the
    // chain rule through e_k(T, p).
    double D1 = 0.0, D2 = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        const double c = m[k] * (mats[k].gamma - 1.0) * mats[k].cv;
        D1 += c / (p + mats[k].p_inf);
        D2 += c * T / sq(p + mats[k].p_inf);
    }
    const double dpdT = D1 / D2;
    double A = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        const MaterialParams& mk = mats[k];
        const double deT = mk.cv * (p + mk.gamma * mk.p_inf) / (p + mk.p_inf);
        const double dep = -mk.cv * T * (mk.gamma - 1.0) * mk.p_inf / sq(p + mk.p_inf);
        A += m[k] * (deT + dep * dpdT);
    }
    return A;
}

RelaxResult relax_cell(std::span<const double> m, std::span<const double> e_in,
                       std::span<const MaterialParams> mats, double T_guess, double p_guess) {
    const std::size_t n = m.size();
    CellThermo ct{m, mats};
    double E_int = 0.0, e_scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        E_int += m[k] * e_in[k];
        e_scale += m[k] * std::abs(e_in[k] - mats[k].w);
    }
    e_scale = std::max(e_scale, 1e-300);

    double p_floor = mats[0].p_inf;
    for (const auto& mk : mats) p_floor = std::min(p_floor, mk.p_inf);
    p_floor = -p_floor;

    double T = T_guess > 0.0 ? T_guess : 1.0;
    double p = p_guess > p_floor ? p_guess : p_floor + e_scale;

    RelaxResult out;
    for (int it = 0; it < 60; ++it) {
        const double g1 = ct.saturation(T, p);
        const double g2 = ct.energy(T, p) - E_int;
        out.iterations = it + 1;
        if (std::abs(g1) <= 1e-12 && std::abs(g2) <= 1e-12 * e_scale) {
            out.T = T;
            out.p = p;
            return out;
        }
        double J11 = 0.0, J12 = 0.0, J21 = 0.0, J22 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const MaterialParams& mk = mats[k];
            const double c = m[k] * (mk.gamma - 1.0) * mk.cv;
            J11 += c / (p + mk.p_inf);
            J12 -= c * T / sq(p + mk.p_inf);
            J21 += m[k] * mk.cv * (p + mk.gamma * mk.p_inf) / (p + mk.p_inf);
            J22 -= m[k] * mk.cv * T * (mk.gamma - 1.0) * mk.p_inf / sq(p + mk.p_inf);
        }
        const double det = J11 * J22 - J12 * J21;
        if (det == 0.0) break;
        double dT = (-g1 * J22 + g2 * J12) / det;
        double dp = (-J11 * g2 + J21 * g1) / det;
        // Damp into the admissible region.
        double damp = 1.0;
        while ((T + damp * dT <= 0.0 || p + damp * dp <= p_floor) && damp > 1e-8) damp *= 0.5;
        T += damp * dT;
        p += damp * dp;
        if (!(T > 0.0) || !std::isfinite(T) || !std::isfinite(p)) break;
    }

    // Bisection fallback on T: h(T) = energy(T, p_sat(T)) - E_int is
    // monotone increasing (positive effective heat capacity).
    double T_lo = T > 0.0 && std::isfinite(T) ? T : 1.0;
    double p_sat = saturation_pressure(m, T_lo, mats);
    double h = ct.energy(T_lo, p_sat) - E_int;
    int guard = 0;
    while (h > 0.0 && ++guard < 400) {
        T_lo *= 0.5;
        p_sat = saturation_pressure(m, T_lo, mats, p_sat);
        h = ct.energy(T_lo, p_sat) - E_int;
    }
    double T_hi = T_lo;
    guard = 0;
    do {
        T_hi *= 2.0;
        p_sat = saturation_pressure(m, T_hi, mats, p_sat);
        h = ct.energy(T_hi, p_sat) - E_int;
    } while (h < 0.0 && ++guard < 400);

    for (int it = 0; it < 200; ++it) {
        const double T_mid = 0.5 * (T_lo + T_hi);
        p_sat = saturation_pressure(m, T_mid, mats, p_sat);
        h = ct.energy(T_mid, p_sat) - E_int;
        out.iterations++;
        if (std::abs(h) <= 1e-12 * e_scale || T_hi - T_lo <= 1e-15 * T_mid) {
            out.T = T_mid;
            out.p = p_sat;
            return out;
        }
        (h < 0.0 ? T_lo : T_hi) = T_mid;
    }
    throw NumericalError("relax_cell: Newton and bisection both failed, |g2|=" +
                         std::to_string(h));
}

double relax_cell_linearized(std::span<const double> m, std::span<const double> T_in, double p,
                             std::span<const MaterialParams> mats) {
    const std::size_t n = m.size();
    // dp/dT_j from the saturation constraint at per-phase temperatures.
    double D2 = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        D2 += m[k] * (mats[k].gamma - 1.0) * mats[k].cv * T_in[k] / sq(p + mats[k].p_inf);

    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const MaterialParams& mk = mats[k];
        const double dep = -mk.cv * T_in[k] * (mk.gamma - 1.0) * mk.p_inf / sq(p + mk.p_inf);
        for (std::size_t jj = 0; jj < n; ++jj) {
            const MaterialParams& mj = mats[jj];
            const double dpdTj = m[jj] * (mj.gamma - 1.0) * mj.cv / (p + mj.p_inf) / D2;
            double dek_dTj = dep * dpdTj;
            if (jj == k) dek_dTj += mk.cv * (p + mk.gamma * mk.p_inf) / (p + mk.p_inf);
            const double Ajk = m[k] * dek_dTj;
            num += Ajk * T_in[jj];
            den += Ajk;
        }
    }
    return num / den;
}

void relax_temperatures_all(FlowField& U, PrimField& W, std::vector<std::vector<double>>& mE,
                            const std::vector<MaterialParams>& mats, const ThermalConfig& cfg) {
    const Grid& g = U.grid;
    const int n = U.nphase;
    const int rows = g.je() - g.jb();
    parallel_for(static_cast<std::size_t>(rows), [&](std::size_t rb, std::size_t re) {
        std::vector<double> m(n), e(n), Tin(n);
        for (std::size_t r = rb; r < re; ++r) {
            const int j = g.jb() + static_cast<int>(r);
            for (int i = g.ib(); i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, j);
                const double kin = 0.5 * (sq(W.vel[0][c]) + sq(W.vel[1][c]));
                double mcv = 0.0, mcvT = 0.0;
                for (int k = 0; k < n; ++k) {
                    m[k] = U.m[k][c];
                    e[k] = mE[k][c] / m[k] - kin;
                    Tin[k] = W.T[k][c];
                    mcv += m[k] * mats[k].cv;
                    mcvT += m[k] * mats[k].cv * W.T[k][c];
                }
                double T, p;
                try {
                    if (cfg.linearized_relax) {
                        T = relax_cell_linearized(m, Tin, W.p[c], mats);
                        p = saturation_pressure(m, T, mats, W.p[c]);
                    } else {
                        RelaxResult rr = relax_cell(m, e, mats, mcvT / mcv, W.p[c]);
                        T = rr.T;
                        p = rr.p;
                    }
                } catch (const NumericalError& err) {
                    throw NumericalError(err.what(), "relax", i - g.ng, g.two_d ? j - g.ng : -1);
                }
                double rhoE = 0.0;
                for (int k = 0; k < n; ++k) {
                    const MaterialParams& mk = mats[k];
                    const double rhok = eos::sg_density_from_Tp(T, p, mk);
                    const double ek = eos::sg_energy_from_Tp(T, p, mk);
                    W.rho[k][c] = rhok;
                    W.alpha[k][c] = m[k] / rhok;
                    W.T[k][c] = T;
                    W.e[k][c] = ek;
                    mE[k][c] = m[k] * (ek + kin);
                    rhoE += mE[k][c];
                }
                W.p[c] = p;
                for (int k = 0; k + 1 < n; ++k) U.alpha[k][c] = W.alpha[k][c];
                U.rhoE[c] = rhoE;
            }
        }
    });
}

void heat_conduction_step(FlowField& U, PrimField& W, std::vector<std::vector<double>>& mE,
                          const std::vector<MaterialParams>& mats, const UnitScales& us,
                          double dt, const std::vector<double>& deposition,
                          const ThermalConfig& cfg) {
    const Grid& g = U.grid;
    const int n = U.nphase;
    const std::size_t sz = g.size();

    std::vector<double> T0(sz, 0.0);
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) T0[g.idx(i, j)] = W.T[0][g.idx(i, j)];

    // Warm-start pressures for the per-cell saturation solves.
    std::vector<double> p_cache = W.p;

    AssembleFn assemble = [&](const std::vector<double>& Tit, DiffusionOperator& op,
                              std::vector<double>& f) {
        std::vector<double> lam(sz, 0.0), capacity(sz, 1.0);
        const int rows = g.je() - g.jb();
        parallel_for(static_cast<std::size_t>(rows), [&](std::size_t rb, std::size_t re) {
            std::vector<double> m(n);
            for (std::size_t r = rb; r < re; ++r) {
                const int j = g.jb() + static_cast<int>(r);
                for (int i = g.ib(); i < g.ie(); ++i) {
                    const std::size_t c = g.idx(i, j);
                    for (int k = 0; k < n; ++k) m[k] = U.m[k][c];
                    const double T = Tit[c];
                    double p;
                    try {
                        p = saturation_pressure(m, T, mats, p_cache[c]);
                    } catch (const NumericalError& err) {
                        throw NumericalError(err.what(), "conduction", i - g.ng,
                                             g.two_d ? j - g.ng : -1);
                    }
                    p_cache[c] = p;
                    double lam_mix = 0.0;
                    for (int k = 0; k < n; ++k) {
                        const MaterialParams& mk = mats[k];
                        const double rhok = eos::sg_density_from_Tp(T, p, mk);
                        const double ak = m[k] / rhok;
                        const double muk =
                            closures::phase_viscosity(mk.viscosity, rhok, T, us);
                        lam_mix += ak * closures::phase_conductivity(mk.conductivity, mk, rhok,
                                                                     T, muk, us);
                    }
                    lam[c] = lam_mix;
                    capacity[c] = effective_heat_capacity(m, T, p, mats);
                }
            }
        });
        fill_ghosts(g, lam, 1, 1);
        fill_ghosts(g, capacity, 1, 1);
        op = make_diffusion_operator(g, lam, lam, capacity, 1, 1);
        f = deposition;
    };

    // Stage-accuracy substepping: probe the stiffness at stage entry.
    int n_sub = 1;
    if (cfg.stage_substep_cap > 1) {
        DiffusionOperator probe_op;
        std::vector<double> probe_f;
        assemble(T0, probe_op, probe_f);
        const double z = dt * spectral_bound(probe_op);
        n_sub = std::clamp(static_cast<int>(std::ceil(z / cfg.stage_z_target)), 1,
                           cfg.stage_substep_cap);
    }

    // One stage substep, halving recursively when the Picard iteration
    // cannot cope (violently nonlinear coefficients, e.g. a cold medium
    // under sudden deposition).
    std::function<std::vector<double>(const std::vector<double>&, double, int)> advance =
        [&](const std::vector<double>& Tin, double dts, int depth) -> std::vector<double> {
        try {
            return picard_outer(Tin, assemble, dts, cfg.inner, cfg.picard_tol,
                                cfg.picard_max_iter, cfg.pcg_tol)
                .v;
        } catch (const NumericalError&) {
            if (depth >= 24) throw;
            std::vector<double> half = advance(Tin, 0.5 * dts, depth + 1);
            return advance(half, 0.5 * dts, depth + 1);
        }
    };

    std::vector<double> T_new = T0;
    try {
        for (int s = 0; s < n_sub; ++s) T_new = advance(T_new, dt / n_sub, 0);
    } catch (const NumericalError& err) {
        throw NumericalError(std::string("heat_conduction_step: ") + err.what());
    }

    // Re-closure from (m_k, T): saturation pressure, phase densities and
    // volume fractions, phase energies.
    const int rows = g.je() - g.jb();
    parallel_for(static_cast<std::size_t>(rows), [&](std::size_t rb, std::size_t re) {
        std::vector<double> m(n);
        for (std::size_t r = rb; r < re; ++r) {
            const int j = g.jb() + static_cast<int>(r);
            for (int i = g.ib(); i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, j);
                for (int k = 0; k < n; ++k) m[k] = U.m[k][c];
                const double T = T_new[c];
                double p;
                try {
                    p = saturation_pressure(m, T, mats, p_cache[c]);
                } catch (const NumericalError& err) {
                    throw NumericalError(err.what(), "conduction", i - g.ng,
                                         g.two_d ? j - g.ng : -1);
                }
                const double kin = 0.5 * (sq(W.vel[0][c]) + sq(W.vel[1][c]));
                double rhoE = 0.0;
                for (int k = 0; k < n; ++k) {
                    const MaterialParams& mk = mats[k];
                    const double rhok = eos::sg_density_from_Tp(T, p, mk);
                    const double ek = eos::sg_energy_from_Tp(T, p, mk);
                    W.rho[k][c] = rhok;
                    W.alpha[k][c] = m[k] / rhok;
                    W.T[k][c] = T;
                    W.e[k][c] = ek;
                    mE[k][c] = m[k] * (ek + kin);
                    rhoE += mE[k][c];
                }
                W.p[c] = p;
                for (int k = 0; k + 1 < n; ++k) U.alpha[k][c] = W.alpha[k][c];
                U.rhoE[c] = rhoE;
            }
        }
    });
}

} // namespace mcf
