#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "mcf/kernels.hpp"

// AVX2 variants. Pointwise kernels replicate the scalar expression order with
// separate mul/add (no FMA) so results match the reference bitwise. The dot
// product keeps four independent lane accumulators combined in a fixed order;
// it is equivalence-tested to a relative tolerance rather than bitwise.

namespace mcf::kernels {
namespace {

void stencil_row_v(int n, const double* v, const double* kl, const double* kr, double s,
                   double* out) {
    const __m256d vs = _mm256_set1_pd(s);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vc = _mm256_loadu_pd(v + i);
        const __m256d vp = _mm256_loadu_pd(v + i + 1);
        const __m256d vm = _mm256_loadu_pd(v + i - 1);
        const __m256d fr = _mm256_mul_pd(_mm256_loadu_pd(kr + i), _mm256_sub_pd(vp, vc));
        const __m256d fl = _mm256_mul_pd(_mm256_loadu_pd(kl + i), _mm256_sub_pd(vc, vm));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vs, _mm256_sub_pd(fr, fl)));
    }
    for (; i < n; ++i) out[i] = s * (kr[i] * (v[i + 1] - v[i]) - kl[i] * (v[i] - v[i - 1]));
}

void stencil_tri_v(int n, const double* vd, const double* v, const double* vu, const double* kd,
                   const double* ku, double s, double* out) {
    const __m256d vs = _mm256_set1_pd(s);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vc = _mm256_loadu_pd(v + i);
        const __m256d fu = _mm256_mul_pd(_mm256_loadu_pd(ku + i),
                                         _mm256_sub_pd(_mm256_loadu_pd(vu + i), vc));
        const __m256d fd = _mm256_mul_pd(_mm256_loadu_pd(kd + i),
                                         _mm256_sub_pd(vc, _mm256_loadu_pd(vd + i)));
        const __m256d add = _mm256_mul_pd(vs, _mm256_sub_pd(fu, fd));
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), add));
    }
    for (; i < n; ++i) out[i] += s * (ku[i] * (vu[i] - v[i]) - kd[i] * (v[i] - vd[i]));
}

void lim_combine_v(int n, const double* vn, const double* vm, const double* lv, const double* f,
                   double dtb, double dt, double inv, double* out) {
    const __m256d vb = _mm256_set1_pd(dtb);
    const __m256d vdt = _mm256_set1_pd(dt);
    const __m256d vinv = _mm256_set1_pd(inv);
    int i = 0;
    if (f) {
        for (; i + 4 <= n; i += 4) {
            __m256d acc = _mm256_add_pd(_mm256_loadu_pd(vn + i),
                                        _mm256_mul_pd(vb, _mm256_loadu_pd(vm + i)));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(vdt, _mm256_loadu_pd(lv + i)));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(vdt, _mm256_loadu_pd(f + i)));
            _mm256_storeu_pd(out + i, _mm256_mul_pd(acc, vinv));
        }
        for (; i < n; ++i)
            out[i] = (((vn[i] + dtb * vm[i]) + dt * lv[i]) + dt * f[i]) * inv;
    } else {
        for (; i + 4 <= n; i += 4) {
            __m256d acc = _mm256_add_pd(_mm256_loadu_pd(vn + i),
                                        _mm256_mul_pd(vb, _mm256_loadu_pd(vm + i)));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(vdt, _mm256_loadu_pd(lv + i)));
            _mm256_storeu_pd(out + i, _mm256_mul_pd(acc, vinv));
        }
        for (; i < n; ++i) out[i] = ((vn[i] + dtb * vm[i]) + dt * lv[i]) * inv;
    }
}

void spmv_combine_v(int n, const double* cdt, const double* v, const double* lv, double* out) {
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_mul_pd(_mm256_loadu_pd(cdt + i), _mm256_loadu_pd(v + i));
        _mm256_storeu_pd(out + i, _mm256_sub_pd(t, _mm256_loadu_pd(lv + i)));
    }
    for (; i < n; ++i) out[i] = cdt[i] * v[i] - lv[i];
}

void vmul_v(int n, const double* x, const double* c, double* out) {
    int i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(c + i)));
    for (; i < n; ++i) out[i] = x[i] * c[i];
}

double dot_v(int n, const double* x, const double* y) {
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double r = ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

void axpy_v(int n, double a, const double* x, double* y) {
    const __m256d va = _mm256_set1_pd(a);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), t));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void xpay_v(int n, const double* x, double a, double* y) {
    const __m256d va = _mm256_set1_pd(a);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(x + i), t));
    }
    for (; i < n; ++i) y[i] = x[i] + a * y[i];
}

} // namespace

const Ops& avx2_ops() {
    static const Ops ops{stencil_row_v, stencil_tri_v, lim_combine_v, spmv_combine_v,
                         vmul_v,        dot_v,         axpy_v,        xpay_v};
    return ops;
}

} // namespace mcf::kernels

#endif // x86-64
