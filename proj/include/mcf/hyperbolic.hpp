#pragma once

#include <array>
#include <vector>

#include "mcf/state.hpp"
#include "mcf/types.hpp"

namespace mcf {

inline constexpr int kMaxPhases = 8;

enum class SlopeLimiter { minmod, overbee };

struct HydroOptions {
    bool overbee_alpha = false; // Overbee sharpening for the volume fractions
    bool first_order = false;   // piecewise-constant reconstruction
};

/// Reconstructed primitive data on one side of a face (normal/tangential
/// velocity components, all N volume fractions).
struct FacePrim {
    int n = 0;
    std::array<double, kMaxPhases> rho{};
    std::array<double, kMaxPhases> alpha{};
    double un = 0.0, ut = 0.0, p = 0.0;
};

/// HLLC wave structure and the resulting face flux. Component layout:
/// m_k (N), normal momentum, tangential momentum, mixture energy, stored
/// volume fractions (N-1, advected with the contact).
struct HllcBreakdown {
    double S_L = 0.0, S_star = 0.0, S_R = 0.0;
    std::array<double, kMaxPhases> flux_m{};
    double flux_mom_n = 0.0, flux_mom_t = 0.0, flux_E = 0.0;
    std::array<double, kMaxPhases> flux_alpha{};
};

/// Davis wave-speed bounds with the Wood mixture sound speed; the volume
/// fractions ride the contact wave like a conserved density (their
/// compression source is added separately from the cell-centered
/// coefficients and the face contact speeds).
HllcBreakdown hllc_flux(const FacePrim& left, const FacePrim& right,
                        const std::vector<MaterialParams>& mats);

/// minmod / Overbee slope of one variable from a three-cell window.
double limited_slope(double wm, double w0, double wp, SlopeLimiter limiter);

/// Limited slopes for all N volume fractions of one cell: the first N-1 are
/// limited individually, the last balances their sum, then all are shrunk by
/// a common factor until both face values of every fraction stay in [0,1].
/// Face sums equal one by construction.
void alpha_slopes(const double* am, const double* a0, const double* ap, int n,
                  SlopeLimiter limiter, double* s_out);

/// Face-extrapolated states of the middle cell of a three-cell window
/// (first = west face, second = east face). Exposed for tests; the step
/// routine below uses the same arithmetic on whole fields.
std::pair<FacePrim, FacePrim> muscl_reconstruct(const FacePrim& wm, const FacePrim& w0,
                                                const FacePrim& wp, SlopeLimiter limiter,
                                                bool overbee_alpha);

/// Non-conservative compression source for one stored fraction:
/// (A/A_l) * alpha_l * (face-velocity divergence), with A the Wood modulus of
/// the cell and the divergence formed from the HLLC contact speeds.
double alpha_source(const FacePrim& cell, const std::vector<MaterialParams>& mats, int l,
                    double face_divergence);

/// CFL time step: cfl * min over cells and directions of h_d/(|u_d| + a_mix).
double compute_dt_cfl(const FlowField& U, const PrimField& W,
                      const std::vector<MaterialParams>& mats, double cfl);

/// Scratch buffers reused across steps.
struct HydroWorkspace {
    PrimField W;
    FlowField U1, U2, rhs;
    std::vector<std::vector<double>> slope; // per reconstructed variable
    std::vector<std::vector<double>> fflux; // per flux component, face-indexed
    std::vector<double> sstar;
    bool ready = false;

    // Net partial-density influx through the domain boundary, integrated in
    // time with the SSP stage weights; the budget for open-boundary mass
    // accounting. Cell-sum units (sum_cells m_k changes by this amount).
    std::vector<double> boundary_influx;
    std::vector<double> stage_influx; // one RHS evaluation's contribution
};

/// One SSP-RK3 step of the homogeneous hyperbolic sub-system. On return U
/// holds the advanced state; W the matching primitives.
void hydro_step(FlowField& U, PrimField& W, const std::vector<MaterialParams>& mats, double dt,
                const HydroOptions& opt, HydroWorkspace& ws);

} // namespace mcf
