#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mcf/kernels.hpp"

using namespace mcf::kernels;

namespace {

std::vector<double> randvec(std::mt19937& rng, int n, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> ur(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = ur(rng);
    return v;
}

} // namespace

// The SIMD variants must reproduce the scalar reference: bitwise for the
// pointwise kernels, a few ulps for the dot reduction. Sizes cover the
// vector-width remainder lanes.
TEST_CASE("simd kernels match the scalar reference") {
    if (!avx2_available()) {
        MESSAGE("AVX2 not available; dispatch falls back to scalar");
        CHECK(active_variant() == "scalar");
        return;
    }
#if defined(__x86_64__) || defined(_M_X64)
    const Ops& s = scalar_ops();
    const Ops& v = avx2_ops();
    std::mt19937 rng(42);

    for (int n : {1, 2, 3, 4, 5, 7, 8, 16, 33, 64, 129, 1000}) {
        auto vn = randvec(rng, n + 2);
        auto vm = randvec(rng, n);
        auto lv = randvec(rng, n);
        auto f = randvec(rng, n);
        auto kl = randvec(rng, n, 0.0, 3.0);
        auto kr = randvec(rng, n, 0.0, 3.0);
        auto cdt = randvec(rng, n, 0.5, 3.0);

        SUBCASE("pointwise kernels are bitwise identical") {}
        {
            std::vector<double> a(n, 0.0), b(n, 0.0);
            s.stencil_row(n, vn.data() + 1, kl.data(), kr.data(), 1.7, a.data());
            v.stencil_row(n, vn.data() + 1, kl.data(), kr.data(), 1.7, b.data());
            CHECK(a == b);

            auto a2 = randvec(rng, n);
            auto b2 = a2;
            s.stencil_tri(n, vm.data(), lv.data(), f.data(), kl.data(), kr.data(), 0.9,
                          a2.data());
            v.stencil_tri(n, vm.data(), lv.data(), f.data(), kl.data(), kr.data(), 0.9,
                          b2.data());
            CHECK(a2 == b2);

            s.lim_combine(n, vm.data(), lv.data(), f.data(), kl.data(), 0.3, 0.01, 0.7,
                          a.data());
            v.lim_combine(n, vm.data(), lv.data(), f.data(), kl.data(), 0.3, 0.01, 0.7,
                          b.data());
            CHECK(a == b);
            s.lim_combine(n, vm.data(), lv.data(), f.data(), nullptr, 0.3, 0.01, 0.7, a.data());
            v.lim_combine(n, vm.data(), lv.data(), f.data(), nullptr, 0.3, 0.01, 0.7, b.data());
            CHECK(a == b);

            s.spmv_combine(n, cdt.data(), vm.data(), lv.data(), a.data());
            v.spmv_combine(n, cdt.data(), vm.data(), lv.data(), b.data());
            CHECK(a == b);

            s.vmul(n, vm.data(), cdt.data(), a.data());
            v.vmul(n, vm.data(), cdt.data(), b.data());
            CHECK(a == b);

            auto ya = randvec(rng, n);
            auto yb = ya;
            s.axpy(n, 1.3, vm.data(), ya.data());
            v.axpy(n, 1.3, vm.data(), yb.data());
            CHECK(ya == yb);

            s.xpay(n, vm.data(), -0.7, ya.data());
            v.xpay(n, vm.data(), -0.7, yb.data());
            CHECK(ya == yb);
        }
        {
            const double ds = s.dot(n, vm.data(), lv.data());
            const double dv = v.dot(n, vm.data(), lv.data());
            CHECK(dv == doctest::Approx(ds).epsilon(1e-13));
        }
    }
#endif
}

TEST_CASE("dispatch honors the environment override") {
    // The active variant was fixed at startup; it must be one of the two
    // known names and consistent with availability.
    const std::string& name = active_variant();
    CHECK((name == "scalar" || name == "avx2"));
    if (name == "avx2") CHECK(avx2_available());
}
