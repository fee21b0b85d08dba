#pragma once

#include "mcf/types.hpp"

namespace mcf::riemann {

/// Pure-fluid state on one side of the discontinuity.
struct SideState {
    double rho = 0.0;
    double u = 0.0;
    double p = 0.0;
};

enum class WaveKind { shock, rarefaction };

/// Exact solution of the two-material stiffened-gas Riemann problem.
/// A stiffened gas behaves like an ideal gas in the shifted pressure
/// pi = p + p_inf, so the classical shock/rarefaction branch functions apply
/// with every pressure shifted by the side's p_inf.
struct RiemannSolution {
    double p_star = 0.0;
    double u_star = 0.0;
    double rho_star_left = 0.0;
    double rho_star_right = 0.0;
    WaveKind left_wave = WaveKind::shock;
    WaveKind right_wave = WaveKind::shock;
    // Wave speeds: shocks carry one speed, rarefactions a head/tail pair.
    double left_head = 0.0, left_tail = 0.0;
    double right_head = 0.0, right_tail = 0.0;
    SideState left, right;
    MaterialParams mat_left, mat_right;
    int iterations = 0;
};

RiemannSolution exact_riemann(const SideState& wl, const SideState& wr,
                              const MaterialParams& ml, const MaterialParams& mr);

struct SamplePoint {
    double rho = 0.0;
    double u = 0.0;
    double p = 0.0;
    int material = 0; // 0 = left fluid, 1 = right fluid
};

/// Self-similar sampling at speed xi = x/t, including rarefaction fans.
SamplePoint sample_solution(const RiemannSolution& sol, double xi);

} // namespace mcf::riemann
