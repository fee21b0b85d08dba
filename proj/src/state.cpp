#include "mcf/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcf/eos.hpp"
#include "mcf/util.hpp"

namespace mcf {

ConservedState conserved_from_primitive(const PrimitiveState& w,
                                        const std::vector<MaterialParams>& mats) {
    const std::size_t n = mats.size();
    ConservedState u;
    u.m.resize(n);
    u.alpha.assign(w.alpha.begin(), w.alpha.end() - 1);
    double rho = 0.0, rho_e = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        u.m[k] = w.alpha[k] * w.rho[k];
        rho += u.m[k];
        rho_e += u.m[k] * eos::sg_energy(w.rho[k], w.p, mats[k]);
    }
    u.mom[0] = rho * w.vel[0];
    u.mom[1] = rho * w.vel[1];
    u.rhoE = rho_e + 0.5 * rho * (sq(w.vel[0]) + sq(w.vel[1]));
    return u;
}

PrimitiveState primitive_from_conserved(const ConservedState& u,
                                        const std::vector<MaterialParams>& mats) {
    const std::size_t n = mats.size();
    PrimitiveState w;
    w.rho.resize(n);
    w.alpha.resize(n);
    w.T.resize(n);
    w.e.resize(n);

    double asum = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        w.alpha[k] = u.alpha[k];
        asum += u.alpha[k];
    }
    w.alpha[n - 1] = 1.0 - asum;

    double rho = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!(w.alpha[k] > 0.0) || !(w.alpha[k] <= 1.0))
            throw NumericalError("closure: volume fraction out of (0,1]: alpha[" +
                                 std::to_string(k) + "]=" + std::to_string(w.alpha[k]));
        if (!(u.m[k] > 0.0))
            throw NumericalError("closure: non-positive partial density m[" + std::to_string(k) +
                                 "]=" + std::to_string(u.m[k]));
        const double ak =
            (n == 1) ? w.alpha[k]
                     : std::clamp(w.alpha[k], kAlphaDivisionGuard, 1.0 - kAlphaDivisionGuard);
        w.rho[k] = u.m[k] / ak;
        rho += u.m[k];
    }
    w.vel[0] = u.mom[0] / rho;
    w.vel[1] = u.mom[1] / rho;
    const double rho_e = u.rhoE - 0.5 * (sq(u.mom[0]) + sq(u.mom[1])) / rho;
    if (!(rho_e > 0.0))
        throw NumericalError("closure: non-positive mixture internal energy " +
                             std::to_string(rho_e));
    w.p = eos::mixture_pressure(u.m, rho_e, w.alpha, mats);
    for (std::size_t k = 0; k < n; ++k) {
        w.e[k] = eos::sg_energy(w.rho[k], w.p, mats[k]);
        w.T[k] = eos::sg_temperature(w.rho[k], w.p, mats[k]);
    }
    return w;
}

std::vector<double> reconstruct_phase_energies(const PrimitiveState& w,
                                               const std::vector<MaterialParams>& mats) {
    const double kin = 0.5 * (sq(w.vel[0]) + sq(w.vel[1]));
    std::vector<double> mE(mats.size());
    for (std::size_t k = 0; k < mats.size(); ++k)
        mE[k] = w.alpha[k] * w.rho[k] * (eos::sg_energy(w.rho[k], w.p, mats[k]) + kin);
    return mE;
}

FlowField FlowField::allocate(const Grid& g, int nphase) {
    FlowField f;
    f.grid = g;
    f.nphase = nphase;
    f.m.assign(nphase, std::vector<double>(g.size(), 0.0));
    f.mom[0].assign(g.size(), 0.0);
    f.mom[1].assign(g.size(), 0.0);
    f.rhoE.assign(g.size(), 0.0);
    f.alpha.assign(nphase - 1, std::vector<double>(g.size(), 0.0));
    return f;
}

ConservedState FlowField::gather(std::size_t c) const {
    ConservedState u;
    u.m.resize(nphase);
    u.alpha.resize(nphase - 1);
    for (int k = 0; k < nphase; ++k) u.m[k] = m[k][c];
    u.mom[0] = mom[0][c];
    u.mom[1] = mom[1][c];
    u.rhoE = rhoE[c];
    for (int k = 0; k + 1 < nphase; ++k) u.alpha[k] = alpha[k][c];
    return u;
}

void FlowField::scatter(std::size_t c, const ConservedState& u) {
    for (int k = 0; k < nphase; ++k) m[k][c] = u.m[k];
    mom[0][c] = u.mom[0];
    mom[1][c] = u.mom[1];
    rhoE[c] = u.rhoE;
    for (int k = 0; k + 1 < nphase; ++k) alpha[k][c] = u.alpha[k];
}

PrimField PrimField::allocate(const Grid& g, int nphase) {
    PrimField w;
    w.rho.assign(nphase, std::vector<double>(g.size(), 0.0));
    w.vel[0].assign(g.size(), 0.0);
    w.vel[1].assign(g.size(), 0.0);
    w.p.assign(g.size(), 0.0);
    w.T.assign(nphase, std::vector<double>(g.size(), 0.0));
    w.e.assign(nphase, std::vector<double>(g.size(), 0.0));
    w.alpha.assign(nphase, std::vector<double>(g.size(), 0.0));
    return w;
}

PrimitiveState PrimField::gather(std::size_t c, int nphase) const {
    PrimitiveState s;
    s.rho.resize(nphase);
    s.alpha.resize(nphase);
    s.T.resize(nphase);
    s.e.resize(nphase);
    for (int k = 0; k < nphase; ++k) {
        s.rho[k] = rho[k][c];
        s.alpha[k] = alpha[k][c];
        s.T[k] = T[k][c];
        s.e[k] = e[k][c];
    }
    s.vel[0] = vel[0][c];
    s.vel[1] = vel[1][c];
    s.p = p[c];
    return s;
}

void PrimField::scatter(std::size_t c, const PrimitiveState& w) {
    const int n = static_cast<int>(w.rho.size());
    for (int k = 0; k < n; ++k) {
        rho[k][c] = w.rho[k];
        alpha[k][c] = w.alpha[k];
        T[k][c] = w.T[k];
        e[k][c] = w.e[k];
    }
    vel[0][c] = w.vel[0];
    vel[1][c] = w.vel[1];
    p[c] = w.p;
}

void decode_all(const FlowField& U, const std::vector<MaterialParams>& mats, PrimField& W) {
    const Grid& g = U.grid;
    const int n = U.nphase;
    const int rows = g.je() - g.jb();
    parallel_for(static_cast<std::size_t>(rows), [&](std::size_t rb, std::size_t re) {
        for (std::size_t r = rb; r < re; ++r) {
            const int j = g.jb() + static_cast<int>(r);
            for (int i = g.ib(); i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, j);
                double asum = 0.0;
                for (int k = 0; k + 1 < n; ++k) {
                    W.alpha[k][c] = U.alpha[k][c];
                    asum += U.alpha[k][c];
                }
                W.alpha[n - 1][c] = 1.0 - asum;

                double rho = 0.0;
                for (int k = 0; k < n; ++k) {
                    const double ak = W.alpha[k][c];
                    const double mk = U.m[k][c];
                    if (!(ak > 0.0) || !(ak <= 1.0) || !(mk > 0.0))
                        throw NumericalError(
                            "closure: invalid state, alpha=" + std::to_string(ak) +
                                " m=" + std::to_string(mk) + " phase " + std::to_string(k),
                            "closure", i - g.ng, g.two_d ? j - g.ng : -1);
                    const double adiv =
                        (n == 1) ? ak
                                 : std::clamp(ak, kAlphaDivisionGuard, 1.0 - kAlphaDivisionGuard);
                    W.rho[k][c] = mk / adiv;
                    rho += mk;
                }
                const double u = U.mom[0][c] / rho;
                const double v = U.mom[1][c] / rho;
                W.vel[0][c] = u;
                W.vel[1][c] = v;
                const double rho_e = U.rhoE[c] - 0.5 * rho * (u * u + v * v);

                double num = rho_e, den = 0.0;
                for (int k = 0; k < n; ++k) {
                    const MaterialParams& mk = mats[k];
                    num -= W.alpha[k][c] * mk.gamma * mk.p_inf / (mk.gamma - 1.0) +
                           U.m[k][c] * mk.w;
                    den += W.alpha[k][c] / (mk.gamma - 1.0);
                }
                const double p = num / den;
                W.p[c] = p;
                for (int k = 0; k < n; ++k) {
                    const MaterialParams& mk = mats[k];
                    if (!(p + mk.p_inf > 0.0))
                        throw NumericalError("closure: p + p_inf <= 0, p=" + std::to_string(p),
                                             "closure", i - g.ng, g.two_d ? j - g.ng : -1);
                    W.e[k][c] = (p + mk.gamma * mk.p_inf) / ((mk.gamma - 1.0) * W.rho[k][c]) + mk.w;
                    W.T[k][c] = (p + mk.p_inf) / ((mk.gamma - 1.0) * W.rho[k][c] * mk.cv);
                }
            }
        }
    });
}

void encode_all(const PrimField& W, const std::vector<MaterialParams>& mats, FlowField& U) {
    const Grid& g = U.grid;
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) {
            const std::size_t c = g.idx(i, j);
            U.scatter(c, conserved_from_primitive(W.gather(c, U.nphase), mats));
        }
}

} // namespace mcf
