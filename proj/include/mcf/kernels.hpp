#pragma once

#include <string>

namespace mcf::kernels {

// Data-parallel inner loops of the parabolic solvers, dispatched at runtime
// between scalar reference code and SIMD variants (AVX2 on x86-64). Pointwise
// kernels are bitwise-identical across variants (no FMA contraction);
// reductions use a fixed lane order and agree to a few ulps.
//
// MCFLOW_SIMD=scalar|avx2|auto overrides the selection.

struct Ops {
    // out[i] = s*(kr[i]*(v[i+1]-v[i]) - kl[i]*(v[i]-v[i-1])), v must have one
    // valid halo cell on each side of [0, n).
    void (*stencil_row)(int n, const double* v, const double* kl, const double* kr, double s,
                        double* out);
    // out[i] += s*(ku[i]*(vu[i]-v[i]) - kd[i]*(v[i]-vd[i]))
    void (*stencil_tri)(int n, const double* vd, const double* v, const double* vu,
                        const double* kd, const double* ku, double s, double* out);
    // out[i] = (vn[i] + dtb*vm[i] + dt*lv[i] + dt*f[i]) * inv; f may be null
    void (*lim_combine)(int n, const double* vn, const double* vm, const double* lv,
                        const double* f, double dtb, double dt, double inv, double* out);
    // out[i] = cdt[i]*v[i] - lv[i]
    void (*spmv_combine)(int n, const double* cdt, const double* v, const double* lv, double* out);
    // out[i] = x[i]*c[i]
    void (*vmul)(int n, const double* x, const double* c, double* out);
    double (*dot)(int n, const double* x, const double* y);
    void (*axpy)(int n, double a, const double* x, double* y); // y += a*x
    void (*xpay)(int n, const double* x, double a, double* y); // y = x + a*y
};

const Ops& scalar_ops();
bool avx2_available();
#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();
#endif

/// Kernel set selected at startup (env override respected).
const Ops& ops();

/// Name of the active variant ("scalar" or "avx2").
const std::string& active_variant();

} // namespace mcf::kernels
