#include "mcf/kernels.hpp"

// Reference kernels. These define the semantics the SIMD variants are tested
// against; keep expression order in sync with kernels_avx2.cpp.

namespace mcf::kernels {
namespace {

void stencil_row_s(int n, const double* v, const double* kl, const double* kr, double s,
                   double* out) {
    for (int i = 0; i < n; ++i)
        out[i] = s * (kr[i] * (v[i + 1] - v[i]) - kl[i] * (v[i] - v[i - 1]));
}

void stencil_tri_s(int n, const double* vd, const double* v, const double* vu, const double* kd,
                   const double* ku, double s, double* out) {
    for (int i = 0; i < n; ++i)
        out[i] += s * (ku[i] * (vu[i] - v[i]) - kd[i] * (v[i] - vd[i]));
}

void lim_combine_s(int n, const double* vn, const double* vm, const double* lv, const double* f,
                   double dtb, double dt, double inv, double* out) {
    if (f) {
        for (int i = 0; i < n; ++i)
            out[i] = (((vn[i] + dtb * vm[i]) + dt * lv[i]) + dt * f[i]) * inv;
    } else {
        for (int i = 0; i < n; ++i) out[i] = ((vn[i] + dtb * vm[i]) + dt * lv[i]) * inv;
    }
}

void spmv_combine_s(int n, const double* cdt, const double* v, const double* lv, double* out) {
    for (int i = 0; i < n; ++i) out[i] = cdt[i] * v[i] - lv[i];
}

void vmul_s(int n, const double* x, const double* c, double* out) {
    for (int i = 0; i < n; ++i) out[i] = x[i] * c[i];
}

double dot_s(int n, const double* x, const double* y) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_s(int n, double a, const double* x, double* y) {
    for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpay_s(int n, const double* x, double a, double* y) {
    for (int i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops{stencil_row_s, stencil_tri_s, lim_combine_s, spmv_combine_s,
                         vmul_s,        dot_s,         axpy_s,        xpay_s};
    return ops;
}

} // namespace mcf::kernels
