#include "mcf/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "mcf/kernels.hpp"
#include "mcf/util.hpp"

namespace mcf {

void DiffusionOperator::fill(std::vector<double>& v) const {
    fill_ghosts(grid, v, parity_x, parity_y);
}

void DiffusionOperator::apply_raw(const std::vector<double>& v, std::vector<double>& out) const {
    const Grid& g = grid;
    const auto& K = kernels::ops();
    const double sx = x_active() ? 1.0 / (g.dx * g.dx) : 0.0;
    const int n = g.nx;
    const int rows = g.je() - g.jb();
    parallel_for(static_cast<std::size_t>(rows), [&](std::size_t rb, std::size_t re) {
        for (std::size_t r = rb; r < re; ++r) {
            const int j = g.jb() + static_cast<int>(r);
            const std::size_t c = g.idx(g.ib(), j);
            if (x_active()) {
                K.stencil_row(n, v.data() + c, kxl.data() + c, kxr.data() + c, sx,
                              out.data() + c);
            } else {
                std::memset(out.data() + c, 0, sizeof(double) * n);
            }
            if (y_active()) {
                const double sy = 1.0 / (g.dy * g.dy);
                K.stencil_tri(n, v.data() + g.idx(g.ib(), j - 1), v.data() + c,
                              v.data() + g.idx(g.ib(), j + 1), kyl.data() + c, kyu.data() + c,
                              sy, out.data() + c);
            }
        }
    });
}

void DiffusionOperator::apply(const std::vector<double>& v, std::vector<double>& out) const {
    apply_raw(v, out);
    const Grid& g = grid;
    const auto& K = kernels::ops();
    for (int j = g.jb(); j < g.je(); ++j) {
        const std::size_t c = g.idx(g.ib(), j);
        K.vmul(g.nx, out.data() + c, inv_capacity.data() + c, out.data() + c);
    }
}

bool DiffusionOperator::same_coefficients(const DiffusionOperator& o) const {
    return mode == o.mode && capacity == o.capacity && kxl == o.kxl && kxr == o.kxr &&
           kyl == o.kyl && kyu == o.kyu;
}

DiffusionOperator make_diffusion_operator(const Grid& g, const std::vector<double>& kx_cell,
                                          const std::vector<double>& ky_cell,
                                          const std::vector<double>& capacity, int parity_x,
                                          int parity_y, DiffusionOperator::Mode mode) {
    DiffusionOperator op;
    op.grid = g;
    op.mode = mode;
    op.parity_x = parity_x;
    op.parity_y = parity_y;
    op.capacity = capacity;
    op.inv_capacity.resize(capacity.size());
    for (std::size_t c = 0; c < capacity.size(); ++c)
        op.inv_capacity[c] = capacity[c] > 0.0 ? 1.0 / capacity[c] : 0.0;

    std::vector<double> kx = kx_cell;
    fill_ghosts(g, kx, 1, 1);
    op.kxl.assign(g.size(), 0.0);
    op.kxr.assign(g.size(), 0.0);
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) {
            const std::size_t c = g.idx(i, j);
            op.kxl[c] = 0.5 * (kx[g.idx(i - 1, j)] + kx[c]);
            op.kxr[c] = 0.5 * (kx[c] + kx[g.idx(i + 1, j)]);
        }
    if (g.two_d) {
        std::vector<double> ky = ky_cell.empty() ? kx_cell : ky_cell;
        fill_ghosts(g, ky, 1, 1);
        op.kyl.assign(g.size(), 0.0);
        op.kyu.assign(g.size(), 0.0);
        for (int j = g.jb(); j < g.je(); ++j)
            for (int i = g.ib(); i < g.ie(); ++i) {
                const std::size_t c = g.idx(i, j);
                op.kyl[c] = 0.5 * (ky[g.idx(i, j - 1)] + ky[c]);
                op.kyu[c] = 0.5 * (ky[c] + ky[g.idx(i, j + 1)]);
            }
    }
    return op;
}

double spectral_bound(const DiffusionOperator& op) {
    const Grid& g = op.grid;
    double bound = 0.0;
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) {
            const std::size_t c = g.idx(i, j);
            double row = 0.0;
            if (op.x_active()) row += 2.0 * (op.kxl[c] + op.kxr[c]) / (g.dx * g.dx);
            if (op.y_active()) row += 2.0 * (op.kyl[c] + op.kyu[c]) / (g.dy * g.dy);
            bound = std::max(bound, row * op.inv_capacity[c]);
        }
    return bound;
}

LimSchedule lim_schedule(double dt, double lambda_max) {
    LimSchedule s;
    s.lambda_max = lambda_max;
    const double arg = std::max(dt * lambda_max + 1.0, 1.0);
    s.P = std::max(1, static_cast<int>(std::ceil(std::numbers::pi / 4.0 * std::sqrt(arg))));
    const int P = s.P;
    const double beta1 = std::cos(std::numbers::pi / (2.0 * P));
    auto a = [&](int m) {
        const double beta_m = std::cos((2.0 * m - 1.0) * std::numbers::pi / (2.0 * P));
        return lambda_max * (beta1 - beta_m) / (1.0 + beta1);
    };
    s.b.reserve(2 * P - 1);
    for (int m = P; m >= 2; --m) s.b.push_back(a(m));
    for (int m = P; m >= 1; --m) s.b.push_back(a(m));
    return s;
}

namespace {

void check_finite(const Grid& g, const std::vector<double>& v, const char* where) {
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i)
            if (!std::isfinite(v[g.idx(i, j)]))
                throw NumericalError(std::string(where) + ": non-finite iterate",
                                     "parabolic", i - g.ng, g.two_d ? j - g.ng : -1);
}

// f_tilde = f / c on interior cells (empty f stays empty).
std::vector<double> capacity_scaled_source(const DiffusionOperator& op,
                                           const std::vector<double>& f) {
    if (f.empty()) return {};
    const Grid& g = op.grid;
    std::vector<double> ft(f.size(), 0.0);
    const auto& K = kernels::ops();
    for (int j = g.jb(); j < g.je(); ++j) {
        const std::size_t c = g.idx(g.ib(), j);
        K.vmul(g.nx, f.data() + c, op.inv_capacity.data() + c, ft.data() + c);
    }
    return ft;
}

} // namespace

namespace {

// One Chebyshev sweep of 2P-1 iterations over a step of size dt.
void lim_sweep(const std::vector<double>& v_n, const DiffusionOperator& op,
               const std::vector<double>& ft, double dt, const LimSchedule& sched,
               std::vector<double>& out, std::vector<double>& predicted) {
    const Grid& g = op.grid;
    const auto& K = kernels::ops();
    const int iters = 2 * sched.P - 1;

    std::vector<double> prev = v_n;
    std::vector<double> cur(v_n.size(), 0.0);
    std::vector<double> lv(v_n.size(), 0.0);
    predicted = v_n; // P = 1: the predicted state is the input

    for (int m = 1; m <= iters; ++m) {
        op.fill(prev);
        op.apply(prev, lv);
        const double b = sched.b[m - 1];
        const double dtb = dt * b;
        const double inv = 1.0 / (1.0 + dtb);
        const int rows = g.je() - g.jb();
        parallel_for(static_cast<std::size_t>(rows), [&](std::size_t rb, std::size_t re) {
            for (std::size_t r = rb; r < re; ++r) {
                const int j = g.jb() + static_cast<int>(r);
                const std::size_t c = g.idx(g.ib(), j);
                K.lim_combine(g.nx, v_n.data() + c, prev.data() + c, lv.data() + c,
                              ft.empty() ? nullptr : ft.data() + c, dtb, dt, inv,
                              cur.data() + c);
            }
        });
        check_finite(g, cur, "lim_solve");
        if (m == iters - 1) predicted = cur;
        std::swap(prev, cur);
    }
    out = std::move(prev);
}

} // namespace

LimResult lim_solve(const std::vector<double>& v_n, const DiffusionOperator& op,
                    const std::vector<double>& f, double dt) {
    LimResult res;
    const double lambda = spectral_bound(op);

    // Keep each sweep below the stencil cap.
    const double cap = sq(4.0 * kLimMaxStencil / std::numbers::pi) - 1.0;
    res.substeps = std::max(1, static_cast<int>(std::ceil(dt * lambda / cap)));
    const double dt_sub = dt / res.substeps;
    res.schedule = lim_schedule(dt_sub, lambda);

    const std::vector<double> ft = capacity_scaled_source(op, f);
    std::vector<double> v = v_n;
    for (int s = 0; s < res.substeps; ++s)
        lim_sweep(v, op, ft, dt_sub, res.schedule, v, res.v_predicted);
    res.v = std::move(v);
    return res;
}

std::vector<double> implicit_solve(const std::vector<double>& v_n, const DiffusionOperator& op,
                                   const std::vector<double>& f, double dt, double tol,
                                   int max_iter, ImplicitStats* stats) {
    const Grid& g = op.grid;
    const auto& K = kernels::ops();
    const std::size_t sz = v_n.size();
    const int n = g.nx;
    if (max_iter <= 0) max_iter = std::max<int>(2000, 20 * static_cast<int>(g.interior_count()));

    // Row-wise helpers over interior cells with fixed traversal order.
    auto for_rows = [&](auto&& fn) {
        for (int j = g.jb(); j < g.je(); ++j) fn(g.idx(g.ib(), j));
    };
    auto dot_interior = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double acc = 0.0;
        for_rows([&](std::size_t c) { acc += K.dot(n, a.data() + c, b.data() + c); });
        return acc;
    };

    std::vector<double> cdt(sz, 0.0);
    for_rows([&](std::size_t c) {
        for (int i = 0; i < n; ++i) cdt[c + i] = op.capacity[c + i] / dt;
    });

    // Jacobi diagonal with boundary-aware face contributions.
    std::vector<double> inv_diag(sz, 0.0);
    const double sx = op.x_active() ? 1.0 / (g.dx * g.dx) : 0.0;
    const double sy = op.y_active() ? 1.0 / (g.dy * g.dy) : 0.0;
    auto face_diag = [](BoundaryTag bc, int parity, double k) {
        if (bc == BoundaryTag::periodic) return k;
        if (bc == BoundaryTag::reflective && parity == -1) return 2.0 * k;
        return 0.0; // zero-flux ghost copy
    };
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) {
            const std::size_t c = g.idx(i, j);
            double d = cdt[c];
            if (op.x_active()) {
                d += sx * ((i > g.ib()) ? op.kxl[c]
                                        : face_diag(g.bc[0], op.parity_x, op.kxl[c]));
                d += sx * ((i < g.ie() - 1) ? op.kxr[c]
                                            : face_diag(g.bc[1], op.parity_x, op.kxr[c]));
            }
            if (op.y_active()) {
                d += sy * ((j > g.jb()) ? op.kyl[c]
                                        : face_diag(g.bc[2], op.parity_y, op.kyl[c]));
                d += sy * ((j < g.je() - 1) ? op.kyu[c]
                                            : face_diag(g.bc[3], op.parity_y, op.kyu[c]));
            }
            inv_diag[c] = 1.0 / d;
        }

    auto apply_A = [&](std::vector<double>& v, std::vector<double>& out) {
        op.fill(v);
        op.apply_raw(v, out);
        for_rows([&](std::size_t c) {
            K.spmv_combine(n, cdt.data() + c, v.data() + c, out.data() + c, out.data() + c);
        });
    };

    std::vector<double> b(sz, 0.0);
    for_rows([&](std::size_t c) {
        for (int i = 0; i < n; ++i)
            b[c + i] = cdt[c + i] * v_n[c + i] + (f.empty() ? 0.0 : f[c + i]);
    });

    std::vector<double> x = v_n;
    std::vector<double> r(sz, 0.0), z(sz, 0.0), p(sz, 0.0), Ap(sz, 0.0);
    apply_A(x, Ap);
    for_rows([&](std::size_t c) {
        for (int i = 0; i < n; ++i) r[c + i] = b[c + i] - Ap[c + i];
    });

    const double bnorm = std::sqrt(std::max(dot_interior(b, b), 1e-300));
    double rnorm = std::sqrt(dot_interior(r, r));
    if (rnorm <= tol * bnorm) {
        if (stats) *stats = {0, rnorm / bnorm};
        return x;
    }

    for_rows([&](std::size_t c) { K.vmul(n, r.data() + c, inv_diag.data() + c, z.data() + c); });
    p = z;
    double rz = dot_interior(r, z);

    std::vector<double> history;
    int it = 0;
    for (; it < max_iter; ++it) {
        apply_A(p, Ap);
        const double pAp = dot_interior(p, Ap);
        if (!(pAp > 0.0))
            throw NumericalError("implicit_solve: operator lost positive definiteness, pAp=" +
                                 std::to_string(pAp));
        const double a = rz / pAp;
        for_rows([&](std::size_t c) { K.axpy(n, a, p.data() + c, x.data() + c); });
        for_rows([&](std::size_t c) { K.axpy(n, -a, Ap.data() + c, r.data() + c); });
        rnorm = std::sqrt(dot_interior(r, r));
        history.push_back(rnorm / bnorm);
        if (rnorm <= tol * bnorm) break;
        for_rows(
            [&](std::size_t c) { K.vmul(n, r.data() + c, inv_diag.data() + c, z.data() + c); });
        const double rz_new = dot_interior(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for_rows([&](std::size_t c) { K.xpay(n, z.data() + c, beta, p.data() + c); });
    }
    if (rnorm > tol * bnorm) {
        std::string tail;
        for (std::size_t h = history.size() > 5 ? history.size() - 5 : 0; h < history.size(); ++h)
            tail += " " + std::to_string(history[h]);
        throw NumericalError("implicit_solve: PCG exceeded " + std::to_string(max_iter) +
                             " iterations; trailing relative residuals:" + tail);
    }
    if (stats) *stats = {it + 1, rnorm / bnorm};
    return x;
}

PicardResult picard_outer(const std::vector<double>& v_n, const AssembleFn& assemble, double dt,
                          InnerSolver inner, double tol, int max_iter, double pcg_tol) {
    PicardResult res;
    DiffusionOperator op, op_prev;
    std::vector<double> f, f_prev;
    std::vector<double> v = v_n;

    double change = 0.0;
    for (int s = 0; s < max_iter; ++s) {
        assemble(v, op, f);
        if (s > 0 && op.same_coefficients(op_prev) && f == f_prev) return res; // fixed point
        std::vector<double> v_new;
        if (inner == InnerSolver::lim) {
            LimResult lr = lim_solve(v_n, op, f, dt);
            v_new = std::move(lr.v);
            res.v_predicted = std::move(lr.v_predicted);
        } else {
            v_new = implicit_solve(v_n, op, f, dt, pcg_tol);
            res.v_predicted = v_new;
        }
        res.iterations = s + 1;

        if (s > 0) {
            const Grid& g = op.grid;
            double diff = 0.0, scale = 0.0;
            for (int j = g.jb(); j < g.je(); ++j)
                for (int i = g.ib(); i < g.ie(); ++i) {
                    const std::size_t c = g.idx(i, j);
                    diff = std::max(diff, std::abs(v_new[c] - v[c]));
                    scale = std::max(scale, std::abs(v_new[c]));
                }
            change = diff / std::max(scale, 1e-300);
            v = std::move(v_new);
            res.v = v;
            if (change <= tol) return res;
        } else {
            v = std::move(v_new);
            res.v = v;
        }
        op_prev = op;
        f_prev = f;
    }
    throw NumericalError("picard_outer: no convergence after " + std::to_string(max_iter) +
                         " iterations, last relative change=" + std::to_string(change));
}

std::vector<double> lim_solve_split2d(const std::vector<double>& v_n,
                                      const DiffusionOperator& op_x,
                                      const DiffusionOperator& op_y,
                                      const std::vector<double>& f, double dt) {
    const std::vector<double> none;
    std::vector<double> v = lim_solve(v_n, op_x, none, 0.5 * dt).v;
    v = lim_solve(v, op_y, f, dt).v;
    v = lim_solve(v, op_x, none, 0.5 * dt).v;
    return v;
}

} // namespace mcf
