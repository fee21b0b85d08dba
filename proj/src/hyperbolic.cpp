#include "mcf/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "mcf/eos.hpp"
#include "mcf/util.hpp"

namespace mcf {

namespace {

struct SideDerived {
    double rho = 0.0;   // mixture density
    double a = 0.0;     // Wood mixture sound speed
    double rhoE = 0.0;  // mixture total energy per volume
    std::array<double, kMaxPhases> m{};
};

SideDerived derive(const FacePrim& w, const std::vector<MaterialParams>& mats) {
    SideDerived d;
    double inv_A = 0.0;
    double rho_e = 0.0;
    for (int k = 0; k < w.n; ++k) {
        const MaterialParams& mk = mats[k];
        d.m[k] = w.alpha[k] * w.rho[k];
        d.rho += d.m[k];
        inv_A += w.alpha[k] / (mk.gamma * (w.p + mk.p_inf));
        const double ek = (w.p + mk.gamma * mk.p_inf) / ((mk.gamma - 1.0) * w.rho[k]) + mk.w;
        rho_e += d.m[k] * ek;
    }
    d.a = std::sqrt(1.0 / (inv_A * d.rho));
    d.rhoE = rho_e + 0.5 * d.rho * (w.un * w.un + w.ut * w.ut);
    return d;
}

// Physical flux F(U) = un*U + p*D for one side (conservative components).
void phys_flux(const FacePrim& w, const SideDerived& d, HllcBreakdown& out) {
    for (int k = 0; k < w.n; ++k) out.flux_m[k] = d.m[k] * w.un;
    out.flux_mom_n = d.rho * w.un * w.un + w.p;
    out.flux_mom_t = d.rho * w.un * w.ut;
    out.flux_E = w.un * (d.rhoE + w.p);
}

// Star-region conserved state on side K and the corresponding HLLC flux
// F = F_K + S_K (U* - U_K), written directly into `out`.
void star_flux(const FacePrim& w, const SideDerived& d, double S, double S_star,
               HllcBreakdown& out) {
    phys_flux(w, d, out);
    const double factor = (S - w.un) / (S - S_star);
    const double rho_star = d.rho * factor;
    for (int k = 0; k < w.n; ++k) out.flux_m[k] += S * (d.m[k] * factor - d.m[k]);
    out.flux_mom_n += S * (rho_star * S_star - d.rho * w.un);
    out.flux_mom_t += S * (rho_star * w.ut - d.rho * w.ut);
    const double E_spec = d.rhoE / d.rho;
    const double E_star =
        rho_star * (E_spec + (S_star - w.un) * (S_star + w.p / (d.rho * (S - w.un))));
    out.flux_E += S * (E_star - d.rhoE);
}

// The fractions ride the contact: flux alpha * S_star with alpha upwinded by
// the contact speed. Pairing the source divergence with the same face speed
// makes the compression terms cancel exactly for uniform fractions.
void alpha_flux(const FacePrim& L, const FacePrim& R, HllcBreakdown& out) {
    for (int k = 0; k + 1 < L.n; ++k) {
        double a;
        if (out.S_star > 0.0) a = L.alpha[k];
        else if (out.S_star < 0.0) a = R.alpha[k];
        else a = 0.5 * (L.alpha[k] + R.alpha[k]);
        out.flux_alpha[k] = a * out.S_star;
    }
}

} // namespace

HllcBreakdown hllc_flux(const FacePrim& L, const FacePrim& R,
                        const std::vector<MaterialParams>& mats) {
    const SideDerived dl = derive(L, mats);
    const SideDerived dr = derive(R, mats);

    HllcBreakdown out;
    out.S_L = std::min(L.un - dl.a, R.un - dr.a);
    out.S_R = std::max(L.un + dl.a, R.un + dr.a);
    if (!(out.S_L < out.S_R) || !std::isfinite(out.S_L) || !std::isfinite(out.S_R))
        throw NumericalError("hllc_flux: degenerate wave fan, S_L=" + std::to_string(out.S_L) +
                             " S_R=" + std::to_string(out.S_R));

    const double ql = dl.rho * (out.S_L - L.un);
    const double qr = dr.rho * (out.S_R - R.un);
    out.S_star = (R.p - L.p + ql * L.un - qr * R.un) / (ql - qr);

    if (out.S_L >= 0.0) {
        phys_flux(L, dl, out);
    } else if (out.S_R <= 0.0) {
        phys_flux(R, dr, out);
    } else if (out.S_star > 0.0) {
        star_flux(L, dl, out.S_L, out.S_star, out);
    } else if (out.S_star < 0.0) {
        star_flux(R, dr, out.S_R, out.S_star, out);
    } else {
        // Exactly stalled contact: average of both star fluxes.
        HllcBreakdown a = out, b = out;
        star_flux(L, dl, out.S_L, out.S_star, a);
        star_flux(R, dr, out.S_R, out.S_star, b);
        for (int k = 0; k < L.n; ++k) out.flux_m[k] = 0.5 * (a.flux_m[k] + b.flux_m[k]);
        out.flux_mom_n = 0.5 * (a.flux_mom_n + b.flux_mom_n);
        out.flux_mom_t = 0.5 * (a.flux_mom_t + b.flux_mom_t);
        out.flux_E = 0.5 * (a.flux_E + b.flux_E);
    }
    alpha_flux(L, R, out);
    return out;
}

double limited_slope(double wm, double w0, double wp, SlopeLimiter limiter) {
    const double dm = w0 - wm;
    const double dp = wp - w0;
    if (dm * dp <= 0.0) return 0.0;
    const double mm = std::abs(dm) < std::abs(dp) ? dm : dp;
    return limiter == SlopeLimiter::minmod ? mm : 2.0 * mm;
}

void alpha_slopes(const double* am, const double* a0, const double* ap, int n,
                  SlopeLimiter limiter, double* s_out) {
    double sum = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
        s_out[k] = limited_slope(am[k], a0[k], ap[k], limiter);
        sum += s_out[k];
    }
    s_out[n - 1] = -sum; // face sums stay exactly one

    double theta = 1.0;
    for (int k = 0; k < n; ++k) {
        const double half = 0.5 * std::abs(s_out[k]);
        if (half == 0.0) continue;
        const double room = std::min(1.0 - a0[k], a0[k]); // distance to the nearer bound
        if (a0[k] + half > 1.0 || a0[k] - half < 0.0)
            theta = std::min(theta, std::max(0.0, room / half));
    }
    if (theta < 1.0)
        for (int k = 0; k < n; ++k) s_out[k] *= theta;
}

std::pair<FacePrim, FacePrim> muscl_reconstruct(const FacePrim& wm, const FacePrim& w0,
                                                const FacePrim& wp, SlopeLimiter limiter,
                                                bool overbee_alpha) {
    FacePrim lo = w0, hi = w0;
    auto set = [&](double s, double& a, double& b) {
        a -= 0.5 * s;
        b += 0.5 * s;
    };
    for (int k = 0; k < w0.n; ++k)
        set(limited_slope(wm.rho[k], w0.rho[k], wp.rho[k], limiter), lo.rho[k], hi.rho[k]);
    set(limited_slope(wm.un, w0.un, wp.un, limiter), lo.un, hi.un);
    set(limited_slope(wm.ut, w0.ut, wp.ut, limiter), lo.ut, hi.ut);
    set(limited_slope(wm.p, w0.p, wp.p, limiter), lo.p, hi.p);

    std::array<double, kMaxPhases> s{};
    alpha_slopes(wm.alpha.data(), w0.alpha.data(), wp.alpha.data(), w0.n,
                 overbee_alpha ? SlopeLimiter::overbee : limiter, s.data());
    for (int k = 0; k < w0.n; ++k) set(s[k], lo.alpha[k], hi.alpha[k]);
    return {lo, hi};
}

double alpha_source(const FacePrim& cell, const std::vector<MaterialParams>& mats, int l,
                    double face_divergence) {
    double inv_A = 0.0;
    for (int k = 0; k < cell.n; ++k)
        inv_A += cell.alpha[k] / (mats[k].gamma * (cell.p + mats[k].p_inf));
    const double A_wood = 1.0 / inv_A;
    const double A_l = mats[l].gamma * (cell.p + mats[l].p_inf);
    return (A_wood / A_l) * cell.alpha[l] * face_divergence;
}

double compute_dt_cfl(const FlowField& U, const PrimField& W,
                      const std::vector<MaterialParams>& mats, double cfl) {
    const Grid& g = U.grid;
    const int n = U.nphase;
    double dt_min = std::numeric_limits<double>::infinity();
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) {
            const std::size_t c = g.idx(i, j);
            double rho = 0.0, inv_A = 0.0;
            for (int k = 0; k < n; ++k) {
                rho += U.m[k][c];
                inv_A += W.alpha[k][c] / (mats[k].gamma * (W.p[c] + mats[k].p_inf));
            }
            const double a = std::sqrt(1.0 / (inv_A * rho));
            double local = g.dx / (std::abs(W.vel[0][c]) + a);
            if (g.two_d) local = std::min(local, g.dy / (std::abs(W.vel[1][c]) + a));
            dt_min = std::min(dt_min, local);
        }
    const double dt = cfl * dt_min;
    if (!std::isfinite(dt) || !(dt > 0.0))
        throw NumericalError("compute_dt_cfl: non-finite or non-positive time step " +
                             std::to_string(dt));
    return dt;
}

namespace {

// Slope component layout: rho_k [0,N), un [N], ut [N+1], p [N+2], alpha_k [N+3, 2N+3).
// Flux component layout: m_k [0,N), mom_n [N], mom_t [N+1], E [N+2], alpha_l [N+3, 2N+2).
struct Layout {
    int n;
    int slope_count() const { return 2 * n + 3; }
    int flux_count() const { return 2 * n + 2; }
};

void ensure_workspace(HydroWorkspace& ws, const FlowField& U) {
    if (ws.ready) return;
    const Layout lay{U.nphase};
    ws.W = PrimField::allocate(U.grid, U.nphase);
    ws.U1 = FlowField::allocate(U.grid, U.nphase);
    ws.U2 = FlowField::allocate(U.grid, U.nphase);
    ws.rhs = FlowField::allocate(U.grid, U.nphase);
    ws.slope.assign(lay.slope_count(), std::vector<double>(U.grid.size(), 0.0));
    ws.fflux.assign(lay.flux_count(), std::vector<double>(U.grid.size(), 0.0));
    ws.sstar.assign(U.grid.size(), 0.0);
    ws.boundary_influx.assign(U.nphase, 0.0);
    ws.stage_influx.assign(U.nphase, 0.0);
    ws.ready = true;
}

void fill_primitive_ghosts(const Grid& g, PrimField& W, int n) {
    for (int k = 0; k < n; ++k) {
        fill_ghosts(g, W.rho[k], 1, 1);
        fill_ghosts(g, W.alpha[k], 1, 1);
    }
    fill_ghosts(g, W.p, 1, 1);
    fill_ghosts(g, W.vel[0], -1, 1);
    fill_ghosts(g, W.vel[1], 1, -1);
}

FacePrim gather_face(const PrimField& W, int n, std::size_t c, int dir) {
    FacePrim w;
    w.n = n;
    for (int k = 0; k < n; ++k) {
        w.rho[k] = W.rho[k][c];
        w.alpha[k] = W.alpha[k][c];
    }
    w.un = W.vel[dir][c];
    w.ut = W.vel[1 - dir][c];
    w.p = W.p[c];
    return w;
}

// Adds the flux divergence and compression source of one direction to rhs.
void accumulate_direction(const FlowField& U, PrimField& W,
                          const std::vector<MaterialParams>& mats, const HydroOptions& opt,
                          HydroWorkspace& ws, int dir, FlowField& rhs) {
    const Grid& g = U.grid;
    const int n = U.nphase;
    const Layout lay{n};
    const std::ptrdiff_t stride = (dir == 0) ? 1 : g.sx();
    const double h = (dir == 0) ? g.dx : g.dy;
    const SlopeLimiter base = SlopeLimiter::minmod;
    const SlopeLimiter alpha_lim = opt.overbee_alpha ? SlopeLimiter::overbee : base;

    // Limited slopes on interior plus one ring in the sweep direction.
    const int jb = (dir == 0) ? g.jb() : std::max(1, g.jb() - 1);
    const int je = (dir == 0) ? g.je() : std::min(g.sy() - 1, g.je() + 1);
    const int ib = (dir == 0) ? std::max(1, g.ib() - 1) : g.ib();
    const int ie = (dir == 0) ? std::min(g.sx() - 1, g.ie() + 1) : g.ie();

    if (opt.first_order) {
        for (auto& s : ws.slope) std::fill(s.begin(), s.end(), 0.0);
    } else
    parallel_for(static_cast<std::size_t>(je - jb), [&](std::size_t rb, std::size_t re) {
        std::array<double, kMaxPhases> am, a0, ap, s;
        for (std::size_t r = rb; r < re; ++r) {
            const int j = jb + static_cast<int>(r);
            for (int i = ib; i < ie; ++i) {
                const std::size_t c = g.idx(i, j);
                for (int k = 0; k < n; ++k)
                    ws.slope[k][c] = limited_slope(W.rho[k][c - stride], W.rho[k][c],
                                                   W.rho[k][c + stride], base);
                ws.slope[n][c] = limited_slope(W.vel[dir][c - stride], W.vel[dir][c],
                                               W.vel[dir][c + stride], base);
                ws.slope[n + 1][c] = limited_slope(W.vel[1 - dir][c - stride], W.vel[1 - dir][c],
                                                   W.vel[1 - dir][c + stride], base);
                ws.slope[n + 2][c] =
                    limited_slope(W.p[c - stride], W.p[c], W.p[c + stride], base);
                for (int k = 0; k < n; ++k) {
                    am[k] = W.alpha[k][c - stride];
                    a0[k] = W.alpha[k][c];
                    ap[k] = W.alpha[k][c + stride];
                }
                alpha_slopes(am.data(), a0.data(), ap.data(), n, alpha_lim, s.data());
                for (int k = 0; k < n; ++k) ws.slope[n + 3 + k][c] = s[k];
            }
        }
    });

    // Face fluxes; the flux through face (i, i+stride) is stored at i.
    const int fjb = (dir == 0) ? g.jb() : g.jb() - 1;
    const int fje = (dir == 0) ? g.je() : g.je();
    const int fib = (dir == 0) ? g.ib() - 1 : g.ib();
    const int fie = (dir == 0) ? g.ie() : g.ie();

    parallel_for(static_cast<std::size_t>(fje - fjb), [&](std::size_t rb, std::size_t re) {
        for (std::size_t r = rb; r < re; ++r) {
            const int j = fjb + static_cast<int>(r);
            for (int i = fib; i < fie; ++i) {
                const std::size_t c = g.idx(i, j);
                const std::size_t cr = c + stride;
                FacePrim L = gather_face(W, n, c, dir);
                FacePrim R = gather_face(W, n, cr, dir);
                for (int k = 0; k < n; ++k) {
                    L.rho[k] += 0.5 * ws.slope[k][c];
                    R.rho[k] -= 0.5 * ws.slope[k][cr];
                    L.alpha[k] += 0.5 * ws.slope[n + 3 + k][c];
                    R.alpha[k] -= 0.5 * ws.slope[n + 3 + k][cr];
                }
                L.un += 0.5 * ws.slope[n][c];
                R.un -= 0.5 * ws.slope[n][cr];
                L.ut += 0.5 * ws.slope[n + 1][c];
                R.ut -= 0.5 * ws.slope[n + 1][cr];
                L.p += 0.5 * ws.slope[n + 2][c];
                R.p -= 0.5 * ws.slope[n + 2][cr];

                HllcBreakdown hb;
                try {
                    hb = hllc_flux(L, R, mats);
                } catch (const NumericalError& e) {
                    throw NumericalError(e.what(), "hydro-flux", i - g.ng,
                                         g.two_d ? j - g.ng : -1);
                }
                for (int k = 0; k < n; ++k) ws.fflux[k][c] = hb.flux_m[k];
                ws.fflux[n][c] = hb.flux_mom_n;
                ws.fflux[n + 1][c] = hb.flux_mom_t;
                ws.fflux[n + 2][c] = hb.flux_E;
                for (int k = 0; k + 1 < n; ++k) ws.fflux[n + 3 + k][c] = hb.flux_alpha[k];
                ws.sstar[c] = hb.S_star;
            }
        }
    });

    // Partial-density boundary influx of this RHS evaluation (periodic sides
    // cancel identically).
    if (dir == 0) {
        for (int j = g.jb(); j < g.je(); ++j)
            for (int k = 0; k < n; ++k)
                ws.stage_influx[k] += (ws.fflux[k][g.idx(g.ib() - 1, j)] -
                                       ws.fflux[k][g.idx(g.ie() - 1, j)]) /
                                      h;
    } else {
        for (int i = g.ib(); i < g.ie(); ++i)
            for (int k = 0; k < n; ++k)
                ws.stage_influx[k] += (ws.fflux[k][g.idx(i, g.jb() - 1)] -
                                       ws.fflux[k][g.idx(i, g.je() - 1)]) /
                                      h;
    }

    // Flux differences and the non-conservative volume-fraction source.
    parallel_for(static_cast<std::size_t>(g.je() - g.jb()), [&](std::size_t rb, std::size_t re) {
        for (std::size_t r = rb; r < re; ++r) {
            const int j = g.jb() + static_cast<int>(r);
            for (int i = g.ib(); i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, j);
                const std::size_t cl = c - stride;
                const double inv_h = 1.0 / h;
                for (int k = 0; k < n; ++k)
                    rhs.m[k][c] -= (ws.fflux[k][c] - ws.fflux[k][cl]) * inv_h;
                rhs.mom[dir][c] -= (ws.fflux[n][c] - ws.fflux[n][cl]) * inv_h;
                rhs.mom[1 - dir][c] -= (ws.fflux[n + 1][c] - ws.fflux[n + 1][cl]) * inv_h;
                rhs.rhoE[c] -= (ws.fflux[n + 2][c] - ws.fflux[n + 2][cl]) * inv_h;

                const double div = (ws.sstar[c] - ws.sstar[cl]) * inv_h;
                double inv_A = 0.0;
                for (int k = 0; k < n; ++k)
                    inv_A += W.alpha[k][c] / (mats[k].gamma * (W.p[c] + mats[k].p_inf));
                const double A_wood = 1.0 / inv_A;
                for (int l = 0; l + 1 < n; ++l) {
                    rhs.alpha[l][c] -= (ws.fflux[n + 3 + l][c] - ws.fflux[n + 3 + l][cl]) * inv_h;
                    const double A_l = mats[l].gamma * (W.p[c] + mats[l].p_inf);
                    rhs.alpha[l][c] += (A_wood / A_l) * W.alpha[l][c] * div;
                }
            }
        }
    });
}

void compute_rhs(const FlowField& U, const std::vector<MaterialParams>& mats,
                 const HydroOptions& opt, HydroWorkspace& ws, FlowField& rhs) {
    const Grid& g = U.grid;
    decode_all(U, mats, ws.W);
    fill_primitive_ghosts(g, ws.W, U.nphase);

    for (int k = 0; k < U.nphase; ++k) std::fill(rhs.m[k].begin(), rhs.m[k].end(), 0.0);
    std::fill(rhs.mom[0].begin(), rhs.mom[0].end(), 0.0);
    std::fill(rhs.mom[1].begin(), rhs.mom[1].end(), 0.0);
    std::fill(rhs.rhoE.begin(), rhs.rhoE.end(), 0.0);
    for (int l = 0; l + 1 < U.nphase; ++l) std::fill(rhs.alpha[l].begin(), rhs.alpha[l].end(), 0.0);

    accumulate_direction(U, ws.W, mats, opt, ws, 0, rhs);
    if (g.two_d) accumulate_direction(U, ws.W, mats, opt, ws, 1, rhs);
}

// out = ca*A + cb*B (+ cdt*dt*RHS) over interior cells of every component.
void combine(const FlowField& A, double ca, const FlowField& B, double cb, const FlowField& rhs,
             double cdt, FlowField& out) {
    const Grid& g = A.grid;
    auto each = [&](const std::vector<double>& a, const std::vector<double>& b,
                    const std::vector<double>& r, std::vector<double>& o) {
        for (int j = g.jb(); j < g.je(); ++j) {
            const std::size_t c0 = g.idx(g.ib(), j);
            for (int i = 0; i < g.nx; ++i)
                o[c0 + i] = ca * a[c0 + i] + cb * b[c0 + i] + cdt * r[c0 + i];
        }
    };
    for (int k = 0; k < A.nphase; ++k) each(A.m[k], B.m[k], rhs.m[k], out.m[k]);
    each(A.mom[0], B.mom[0], rhs.mom[0], out.mom[0]);
    each(A.mom[1], B.mom[1], rhs.mom[1], out.mom[1]);
    each(A.rhoE, B.rhoE, rhs.rhoE, out.rhoE);
    for (int l = 0; l + 1 < A.nphase; ++l) each(A.alpha[l], B.alpha[l], rhs.alpha[l], out.alpha[l]);
}

} // namespace

void hydro_step(FlowField& U, PrimField& W, const std::vector<MaterialParams>& mats, double dt,
                const HydroOptions& opt, HydroWorkspace& ws) {
    ensure_workspace(ws, U);
    std::vector<double> influx(U.nphase, 0.0);
    auto take_stage = [&](double weight) {
        for (int k = 0; k < U.nphase; ++k) {
            influx[k] += weight * ws.stage_influx[k];
            ws.stage_influx[k] = 0.0;
        }
    };
    for (int k = 0; k < U.nphase; ++k) ws.stage_influx[k] = 0.0;

    compute_rhs(U, mats, opt, ws, ws.rhs);
    take_stage(1.0 / 6.0);
    combine(U, 1.0, U, 0.0, ws.rhs, dt, ws.U1);

    compute_rhs(ws.U1, mats, opt, ws, ws.rhs);
    take_stage(1.0 / 6.0);
    combine(U, 0.75, ws.U1, 0.25, ws.rhs, 0.25 * dt, ws.U2);

    compute_rhs(ws.U2, mats, opt, ws, ws.rhs);
    take_stage(2.0 / 3.0);
    combine(U, 1.0 / 3.0, ws.U2, 2.0 / 3.0, ws.rhs, 2.0 / 3.0 * dt, U);

    // Commit the budget only once the advanced state proves valid, so a
    // rejected step leaves no trace in the accounting.
    decode_all(U, mats, W);
    for (int k = 0; k < U.nphase; ++k) ws.boundary_influx[k] += dt * influx[k];
}

} // namespace mcf
