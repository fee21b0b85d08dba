#include "mcf/kernels.hpp"

#include <cstdlib>

namespace mcf::kernels {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

struct Selection {
    const Ops* ops;
    std::string name;
};

Selection select() {
    const char* env = std::getenv("MCFLOW_SIMD");
    const std::string mode = env ? env : "auto";
    if (mode == "scalar") return {&scalar_ops(), "scalar"};
#if (defined(__x86_64__) || defined(_M_X64)) && !defined(MCF_NO_AVX2_TU)
    if (mode == "avx2" || (mode == "auto" && avx2_available())) return {&avx2_ops(), "avx2"};
#endif
    return {&scalar_ops(), "scalar"};
}

const Selection& selection() {
    static const Selection s = select();
    return s;
}

} // namespace

const Ops& ops() { return *selection().ops; }

const std::string& active_variant() { return selection().name; }

} // namespace mcf::kernels
