#include "mcf/viscous.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcf/closures.hpp"
#include "mcf/eos.hpp"
#include "mcf/util.hpp"

namespace mcf {

double mixture_viscosity(const std::vector<double>& alpha, const std::vector<double>& mu_k) {
    double mu = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) mu += alpha[k] * mu_k[k];
    return mu;
}

namespace {

// Re-closure shared by both the 1D and 2D paths: given updated velocity and
// phase energies, recover e_k, solve the pressure/volume-fraction system and
// refresh U and W.
void reclose(FlowField& U, PrimField& W, const std::vector<std::vector<double>>& mE,
             const std::vector<MaterialParams>& mats, const std::vector<double>& u_new,
             const std::vector<double>& v_new) {
    const Grid& g = U.grid;
    const int n = U.nphase;
    std::vector<double> m(n), e(n);
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) {
            const std::size_t c = g.idx(i, j);
            const double uu = u_new[c];
            const double vv = v_new.empty() ? 0.0 : v_new[c];
            const double kin = 0.5 * (uu * uu + vv * vv);
            double rho = 0.0, rhoE = 0.0;
            for (int k = 0; k < n; ++k) {
                m[k] = U.m[k][c];
                rho += m[k];
                e[k] = mE[k][c] / m[k] - kin;
                rhoE += mE[k][c];
                if (!(e[k] - mats[k].w > 0.0))
                    throw NumericalError("viscous re-closure: non-positive phase energy e=" +
                                             std::to_string(e[k]),
                                         "viscous", i - g.ng, g.two_d ? j - g.ng : -1);
            }
            eos::PressureAlphaResult pa;
            try {
                pa = eos::solve_pressure_volume_fractions(m, e, mats, W.p[c]);
            } catch (const NumericalError& err) {
                throw NumericalError(err.what(), "viscous", i - g.ng, g.two_d ? j - g.ng : -1);
            }
            U.mom[0][c] = rho * uu;
            U.mom[1][c] = rho * vv;
            U.rhoE[c] = rhoE;
            for (int k = 0; k + 1 < n; ++k) U.alpha[k][c] = pa.alpha[k];
            W.p[c] = pa.p;
            W.vel[0][c] = uu;
            W.vel[1][c] = vv;
            for (int k = 0; k < n; ++k) {
                W.alpha[k][c] = pa.alpha[k];
                W.rho[k][c] = m[k] / std::clamp(pa.alpha[k], kAlphaDivisionGuard,
                                                n == 1 ? 1.0 : 1.0 - kAlphaDivisionGuard);
                W.e[k][c] = e[k];
                W.T[k][c] = eos::sg_temperature(W.rho[k][c], pa.p, mats[k]);
            }
        }
}

} // namespace

void viscous_step(FlowField& U, PrimField& W, std::vector<std::vector<double>>& mE,
                  const std::vector<MaterialParams>& mats, const UnitScales& us, double dt,
                  const ViscousConfig& cfg) {
    const Grid& g = U.grid;
    const int n = U.nphase;
    const std::size_t sz = g.size();

    // Per-phase viscosities at stage entry; temperatures stay lagged for the
    // whole velocity solve.
    std::vector<std::vector<double>> mu_k(n, std::vector<double>(sz, 0.0));
    std::vector<double> mu_mix(sz, 0.0), rho(sz, 0.0);
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) {
            const std::size_t c = g.idx(i, j);
            double mu = 0.0, r = 0.0;
            for (int k = 0; k < n; ++k) {
                mu_k[k][c] =
                    closures::phase_viscosity(mats[k].viscosity, W.rho[k][c], W.T[k][c], us);
                mu += W.alpha[k][c] * mu_k[k][c];
                r += U.m[k][c];
            }
            mu_mix[c] = mu;
            rho[c] = r;
        }
    for (int k = 0; k < n; ++k) {
        fill_ghosts(g, mu_k[k], 1, 1);
        fill_ghosts(g, W.alpha[k], 1, 1); // face averages also live on boundary faces
    }
    fill_ghosts(g, mu_mix, 1, 1);

    auto solve_component = [&](int comp, const std::vector<double>& cross_source,
                               std::vector<double>& out_final, std::vector<double>& out_pred) {
        std::vector<double> kx(sz, 0.0), ky(sz, 0.0);
        // Normal-direction coefficient (4/3) mu + mu_b, plain mu transverse.
        for (std::size_t c = 0; c < sz; ++c) {
            const double kn = 4.0 / 3.0 * mu_mix[c] + cfg.mu_bulk;
            kx[c] = (comp == 0) ? kn : mu_mix[c];
            ky[c] = (comp == 0) ? mu_mix[c] : kn;
        }
        const int px = (comp == 0) ? -1 : 1;
        const int py = (comp == 1) ? -1 : 1;
        AssembleFn assemble = [&](const std::vector<double>&, DiffusionOperator& op,
                                  std::vector<double>& f) {
            op = make_diffusion_operator(g, kx, ky, rho, px, py);
            f = cross_source;
        };
        PicardResult pr = picard_outer(W.vel[comp], assemble, dt, cfg.inner, cfg.picard_tol,
                                       cfg.picard_max_iter, cfg.pcg_tol);
        out_final = std::move(pr.v);
        out_pred = std::move(pr.v_predicted);
    };

    if (!g.two_d) {
        std::vector<double> u_new, u_pred, none;
        solve_component(0, none, u_new, u_pred);

        // Face work fluxes from the predictor velocity (the final iteration of
        // the scheme updates energy with the 2P-2 state).
        fill_ghosts(g, u_pred, -1, 1);
        std::vector<double> flux(sz, 0.0);
        const double inv_dx = 1.0 / g.dx;
        for (int k = 0; k < n; ++k) {
            for (int i = g.ib() - 1; i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, 0);
                const double dudx = (u_pred[c + 1] - u_pred[c]) * inv_dx;
                const double uf = 0.5 * (u_pred[c] + u_pred[c + 1]);
                const double af = 0.5 * (W.alpha[k][c] + W.alpha[k][c + 1]);
                const double mkf = 0.5 * (mu_k[k][c] + mu_k[k][c + 1]);
                flux[c] = af * (4.0 / 3.0 * mkf * dudx) * uf;
            }
            for (int i = g.ib(); i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, 0);
                mE[k][c] += dt * (flux[c] - flux[c - 1]) * inv_dx;
            }
        }
        reclose(U, W, mE, mats, u_new, {});
        return;
    }

    // 2D: components solved sequentially; cross-derivative stress parts are
    // explicit from the stage-entry velocity, in flux form.
    std::vector<double> u0 = W.vel[0], v0 = W.vel[1];
    fill_ghosts(g, u0, -1, 1);
    fill_ghosts(g, v0, 1, -1);
    const double inv_dx = 1.0 / g.dx, inv_dy = 1.0 / g.dy;
    const int sxs = g.sx();

    auto cell_ddy = [&](const std::vector<double>& a, std::size_t c) {
        return (a[c + sxs] - a[c - sxs]) * (0.5 * inv_dy);
    };
    auto cell_ddx = [&](const std::vector<double>& a, std::size_t c) {
        return (a[c + 1] - a[c - 1]) * (0.5 * inv_dx);
    };

    auto cross_source_for = [&](int comp) {
        std::vector<double> src(sz, 0.0);
        std::vector<double> fx(sz, 0.0), fy(sz, 0.0);
        const std::vector<double>& other = (comp == 0) ? v0 : u0;
        // x-face and y-face stress contributions that involve the other
        // component's derivatives.
        for (int j = g.jb() - 1; j < g.je() + 1; ++j)
            for (int i = g.ib() - 1; i < g.ie() + 1; ++i) {
                const std::size_t c = g.idx(i, j);
                if (comp == 0) {
                    const double dvdy = 0.5 * (cell_ddy(other, c) + cell_ddy(other, c + 1));
                    fx[c] = 0.5 * (mu_mix[c] + mu_mix[c + 1]) * (-2.0 / 3.0) * dvdy;
                    const double dvdx = 0.5 * (cell_ddx(other, c) + cell_ddx(other, c + sxs));
                    fy[c] = 0.5 * (mu_mix[c] + mu_mix[c + sxs]) * dvdx;
                } else {
                    const double dudy = 0.5 * (cell_ddy(other, c) + cell_ddy(other, c + 1));
                    fx[c] = 0.5 * (mu_mix[c] + mu_mix[c + 1]) * dudy;
                    const double dudx = 0.5 * (cell_ddx(other, c) + cell_ddx(other, c + sxs));
                    fy[c] = 0.5 * (mu_mix[c] + mu_mix[c + sxs]) * (-2.0 / 3.0) * dudx;
                }
            }
        for (int j = g.jb(); j < g.je(); ++j)
            for (int i = g.ib(); i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, j);
                src[c] = (fx[c] - fx[c - 1]) * inv_dx + (fy[c] - fy[c - sxs]) * inv_dy;
            }
        return src;
    };

    std::vector<double> u_new, v_new, pred;
    solve_component(0, cross_source_for(0), u_new, pred);
    solve_component(1, cross_source_for(1), v_new, pred);

    // Energy update from the full Newtonian tensor with the final velocities.
    std::vector<double> uf = u_new, vf = v_new;
    fill_ghosts(g, uf, -1, 1);
    fill_ghosts(g, vf, 1, -1);
    std::vector<double> fx(sz, 0.0), fy(sz, 0.0);
    for (int k = 0; k < n; ++k) {
        for (int j = g.jb() - 1; j < g.je(); ++j)
            for (int i = g.ib() - 1; i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, j);
                { // x-face
                    const double mkf = 0.5 * (mu_k[k][c] + mu_k[k][c + 1]);
                    const double af = 0.5 * (W.alpha[k][c] + W.alpha[k][c + 1]);
                    const double dudx = (uf[c + 1] - uf[c]) * inv_dx;
                    const double dvdx = (vf[c + 1] - vf[c]) * inv_dx;
                    const double dudy = 0.5 * (cell_ddy(uf, c) + cell_ddy(uf, c + 1));
                    const double dvdy = 0.5 * (cell_ddy(vf, c) + cell_ddy(vf, c + 1));
                    const double txx = mkf * (4.0 / 3.0 * dudx - 2.0 / 3.0 * dvdy);
                    const double txy = mkf * (dudy + dvdx);
                    const double um = 0.5 * (uf[c] + uf[c + 1]);
                    const double vm = 0.5 * (vf[c] + vf[c + 1]);
                    fx[c] = af * (txx * um + txy * vm);
                }
                { // y-face
                    const double mkf = 0.5 * (mu_k[k][c] + mu_k[k][c + sxs]);
                    const double af = 0.5 * (W.alpha[k][c] + W.alpha[k][c + sxs]);
                    const double dudy = (uf[c + sxs] - uf[c]) * inv_dy;
                    const double dvdy = (vf[c + sxs] - vf[c]) * inv_dy;
                    const double dudx = 0.5 * (cell_ddx(uf, c) + cell_ddx(uf, c + sxs));
                    const double dvdx = 0.5 * (cell_ddx(vf, c) + cell_ddx(vf, c + sxs));
                    const double tyy = mkf * (4.0 / 3.0 * dvdy - 2.0 / 3.0 * dudx);
                    const double tyx = mkf * (dudy + dvdx);
                    const double um = 0.5 * (uf[c] + uf[c + sxs]);
                    const double vm = 0.5 * (vf[c] + vf[c + sxs]);
                    fy[c] = af * (tyx * um + tyy * vm);
                }
            }
        for (int j = g.jb(); j < g.je(); ++j)
            for (int i = g.ib(); i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, j);
                mE[k][c] += dt * ((fx[c] - fx[c - 1]) * inv_dx + (fy[c] - fy[c - sxs]) * inv_dy);
            }
    }
    reclose(U, W, mE, mats, u_new, v_new);
}

} // namespace mcf
