#pragma once

#include <functional>
#include <vector>

#include "mcf/grid.hpp"

namespace mcf {

enum class InnerSolver { lim, implicit_pcg };

/// Second-order central discretization of d/dt(c v) = div(k grad v) + f on a
/// structured grid. Face coefficients are arithmetic means of cell values;
/// boundary behavior comes from the ghost fill of the iterated variable
/// (copy = zero flux, wrap = periodic, odd mirror = homogeneous Dirichlet at
/// the wall face). The operator is self-adjoint with respect to the
/// capacity-weighted inner product and -L has eigenvalues in [0, lambda_max].
struct DiffusionOperator {
    enum class Mode { full, x_only, y_only };

    Grid grid;
    Mode mode = Mode::full;
    int parity_x = 1, parity_y = 1;
    std::vector<double> capacity;     // c_i, ghost-sized storage
    std::vector<double> inv_capacity;
    std::vector<double> kxl, kxr;     // per-cell x-face coefficients
    std::vector<double> kyl, kyu;     // per-cell y-face coefficients (2D)

    /// Ghost fill for the solution variable with this operator's parities.
    void fill(std::vector<double>& v) const;

    /// out = div(k grad v) on interior cells; ghosts of v must be filled.
    void apply_raw(const std::vector<double>& v, std::vector<double>& out) const;

    /// out = (1/c) div(k grad v).
    void apply(const std::vector<double>& v, std::vector<double>& out) const;

    bool x_active() const { return mode != Mode::y_only; }
    bool y_active() const { return grid.two_d && mode != Mode::x_only; }

    bool same_coefficients(const DiffusionOperator& o) const;
};

/// Builds the operator from cell-centered coefficients (per direction) and
/// capacities. `ky_cell` may be empty in 1D or to reuse `kx_cell`.
DiffusionOperator make_diffusion_operator(const Grid& g, const std::vector<double>& kx_cell,
                                          const std::vector<double>& ky_cell,
                                          const std::vector<double>& capacity, int parity_x = 1,
                                          int parity_y = 1,
                                          DiffusionOperator::Mode mode = DiffusionOperator::Mode::full);

/// Gershgorin row-sum bound on the spectrum of -(1/c) div(k grad .):
/// max_i sum_d 2*(k_left + k_right)/(c_i h_d^2). Always >= the true spectral
/// radius.
double spectral_bound(const DiffusionOperator& op);

/// Chebyshev iteration parameters for one super-step of size dt.
struct LimSchedule {
    int P = 1;
    double lambda_max = 0.0;
    std::vector<double> b; // 2P-1 entries: (a_P..a_2, a_P..a_1), a_1 = 0
};

LimSchedule lim_schedule(double dt, double lambda_max);

struct LimResult {
    std::vector<double> v;           // after 2P-1 iterations
    std::vector<double> v_predicted; // after 2P-2 iterations (= input state for P = 1)
    LimSchedule schedule;            // schedule of one (sub)step
    int substeps = 1;
};

/// Intermediate iterates of one sweep grow like partial Chebyshev products;
/// beyond this stencil count the peak amplification (~(dt lambda)^2/9/25...)
/// costs enough double-precision digits to disturb 1e-12-level invariants,
/// so longer steps are composed from shorter sweeps of equal quality.
inline constexpr int kLimMaxStencil = 8;

/// Explicit Chebyshev super-step for dv/dt = (1/c)[div(k grad v) + f].
/// For P = 1 this is exactly one explicit Euler step. Steps needing
/// P > kLimMaxStencil are split into equal substeps, each its own sweep.
LimResult lim_solve(const std::vector<double>& v_n, const DiffusionOperator& op,
                    const std::vector<double>& f, double dt);

struct ImplicitStats {
    int iterations = 0;
    double residual = 0.0;
};

/// Backward-Euler step solved with Jacobi-preconditioned conjugate gradients
/// on (c/dt) v - div(k grad v) = (c/dt) v_n + f; relative residual <= tol.
std::vector<double> implicit_solve(const std::vector<double>& v_n, const DiffusionOperator& op,
                                   const std::vector<double>& f, double dt, double tol = 1e-10,
                                   int max_iter = 0, ImplicitStats* stats = nullptr);

/// Produces the operator and physical source for a given iterate.
using AssembleFn =
    std::function<void(const std::vector<double>& v, DiffusionOperator& op, std::vector<double>& f)>;

struct PicardResult {
    std::vector<double> v;
    std::vector<double> v_predicted; // from the last inner solve (LIM only)
    int iterations = 0;              // inner solves performed
};

/// Fixed-point iteration for quasi-linear problems: coefficients lag one
/// iterate behind. Stops when the iterate stops changing (max-norm relative
/// change <= tol) or when a re-assembly reproduces the previous coefficients
/// exactly, so linear problems converge in one inner solve.
PicardResult picard_outer(const std::vector<double>& v_n, const AssembleFn& assemble, double dt,
                          InnerSolver inner, double tol = 1e-8, int max_iter = 20,
                          double pcg_tol = 1e-10);

/// Strang-split 2D LIM step: x half-step, y full step (carrying the source),
/// x half-step. Operators must be the x_only / y_only views of the problem.
std::vector<double> lim_solve_split2d(const std::vector<double>& v_n,
                                      const DiffusionOperator& op_x,
                                      const DiffusionOperator& op_y,
                                      const std::vector<double>& f, double dt);

} // namespace mcf
