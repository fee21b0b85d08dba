#include "mcf/eos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mcf/util.hpp"

namespace mcf::eos {

double sg_pressure(double rho, double e, const MaterialParams& m) {
    const double p = (m.gamma - 1.0) * rho * (e - m.w) - m.gamma * m.p_inf;
    if (!(p + m.p_inf > 0.0))
        throw NumericalError("stiffened-gas pressure out of range: p=" + std::to_string(p) +
                             " p_inf=" + std::to_string(m.p_inf));
    return p;
}

double sg_energy(double rho, double p, const MaterialParams& m) {
    return (p + m.gamma * m.p_inf) / ((m.gamma - 1.0) * rho) + m.w;
}

double sg_temperature(double rho, double p, const MaterialParams& m) {
    const double T = (p + m.p_inf) / ((m.gamma - 1.0) * rho * m.cv);
    if (!(T > 0.0))
        throw NumericalError("non-positive temperature from EOS: T=" + std::to_string(T));
    return T;
}

double sg_sound_speed(double rho, double p, const MaterialParams& m) {
    const double a2 = m.gamma * (p + m.p_inf) / rho;
    if (!(a2 > 0.0))
        throw NumericalError("imaginary sound speed: a^2=" + std::to_string(a2));
    return std::sqrt(a2);
}

double sg_density_from_Tp(double T, double p, const MaterialParams& m) {
    return (p + m.p_inf) / ((m.gamma - 1.0) * m.cv * T);
}

double sg_energy_from_Tp(double T, double p, const MaterialParams& m) {
    return m.cv * T * (p + m.gamma * m.p_inf) / (p + m.p_inf) + m.w;
}

double sg_entropy(double rho, double p, const MaterialParams& m) {
    return m.cv * std::log((p + m.p_inf) / std::pow(rho, m.gamma));
}

double mixture_pressure(std::span<const double> m, double rho_e, std::span<const double> alpha,
                        std::span<const MaterialParams> mats) {
    double num = rho_e;
    double den = 0.0;
    for (std::size_t k = 0; k < mats.size(); ++k) {
        num -= alpha[k] * mats[k].gamma * mats[k].p_inf / (mats[k].gamma - 1.0);
        num -= m[k] * mats[k].w;
        den += alpha[k] / (mats[k].gamma - 1.0);
    }
    if (!(den > 0.0))
        throw NumericalError("mixture pressure closure: non-positive denominator");
    const double p = num / den;
    for (const auto& mk : mats)
        if (!(p + mk.p_inf > 0.0))
            throw NumericalError("mixture pressure closure: p + p_inf <= 0, p=" +
                                 std::to_string(p));
    return p;
}

double phase_modulus(double p, const MaterialParams& m) { return m.gamma * (p + m.p_inf); }

double wood_modulus(std::span<const double> alpha, std::span<const double> phase_mod) {
    double inv = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) inv += alpha[k] / phase_mod[k];
    return 1.0 / inv;
}

namespace {

// sum_k alpha_k(p) - 1 and its p-derivative; strictly decreasing in p on the
// admissible interval.
void saturation_residual(std::span<const double> m, std::span<const double> e,
                         std::span<const MaterialParams> mats, double p, double& f, double& df) {
    f = -1.0;
    df = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        const double num = (mats[k].gamma - 1.0) * m[k] * (e[k] - mats[k].w);
        const double den = p + mats[k].gamma * mats[k].p_inf;
        f += num / den;
        df -= num / (den * den);
    }
}

} // namespace

PressureAlphaResult solve_pressure_volume_fractions(std::span<const double> m,
                                                    std::span<const double> e_phase,
                                                    std::span<const MaterialParams> mats,
                                                    double p_guess) {
    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (!(m[k] > 0.0))
            throw NumericalError("pressure/volume-fraction solve: non-positive partial density");
        if (!(e_phase[k] - mats[k].w > 0.0))
            throw NumericalError("pressure/volume-fraction solve: non-positive thermal energy, "
                                 "e-w=" + std::to_string(e_phase[k] - mats[k].w));
    }

    // Admissible pressures: p + gamma_k*pinf_k > 0 for every phase, so the
    // floor is set by the smallest gamma*p_inf.
    double p_floor = mats[0].gamma * mats[0].p_inf;
    for (const auto& mk : mats) p_floor = std::min(p_floor, mk.gamma * mk.p_inf);
    p_floor = -p_floor;

    const double tol = 1e-12;
    double f, df;

    // Bracket [lo, hi] with f(lo) > 0 > f(hi); f is strictly decreasing with
    // f -> +inf as p -> p_floor. At p = sum (gamma-1)*m*(e-w) the sum of
    // fractions is already <= 1.
    double lo = (p_floor == 0.0) ? 0.0 : p_floor * (1.0 - 1e-13);
    double scale = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        scale += (mats[k].gamma - 1.0) * m[k] * (e_phase[k] - mats[k].w);
    double hi = scale;
    saturation_residual(m, e_phase, mats, hi, f, df);
    int guard = 0;
    while (f > 0.0) {
        hi = p_floor + 2.0 * (hi - p_floor);
        saturation_residual(m, e_phase, mats, hi, f, df);
        if (++guard > 200)
            throw NumericalError("pressure/volume-fraction solve: no sign change on bracket, "
                                 "residual=" + std::to_string(f));
    }

    double p = (p_guess > lo && p_guess < hi) ? p_guess : 0.5 * (lo + hi);
    PressureAlphaResult out;
    bool converged = false;
    for (int it = 0; it < 100 && !converged; ++it) {
        saturation_residual(m, e_phase, mats, p, f, df);
        out.iterations = it + 1;
        if (std::abs(f) <= tol) {
            converged = true;
            break;
        }
        if (f > 0.0) lo = p; else hi = p;
        double p_new = p - f / df;
        if (!(p_new > lo) || !(p_new < hi)) p_new = 0.5 * (lo + hi); // bisection safeguard
        if (p_new == p) break; // bracket exhausted at machine precision
        p = p_new;
    }
    if (!converged) {
        saturation_residual(m, e_phase, mats, p, f, df);
        if (std::abs(f) > tol)
            throw NumericalError("pressure/volume-fraction solve: no convergence, residual=" +
                                 std::to_string(f));
    }

    out.p = p;
    out.alpha.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        out.alpha[k] = (mats[k].gamma - 1.0) * m[k] * (e_phase[k] - mats[k].w) /
                       (p + mats[k].gamma * mats[k].p_inf);
    return out;
}

double mixture_entropy(std::span<const double> m, std::span<const double> rho, double p,
                       std::span<const MaterialParams> mats) {
    double rs = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) rs += m[k] * sg_entropy(rho[k], p, mats[k]);
    return rs;
}

} // namespace mcf::eos
