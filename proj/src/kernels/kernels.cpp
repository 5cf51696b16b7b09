#include "mglc/kernels.hpp"

#include <cstdlib>

namespace mglc::kernels {
namespace {

#if defined(__x86_64__) || defined(_M_X64)
bool cpu_has_avx2() { return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"); }
#else
bool cpu_has_avx2() { return false; }
#endif

struct Selection {
    const Ops* ops;
    std::string name;
};

Selection select() {
    const char* forced = std::getenv("MGLC_KERNELS");
    if (forced) {
        std::string f = forced;
        if (f == "scalar") return {&scalar_ops(), "scalar"};
        if (f == "avx2" && cpu_has_avx2()) return {&avx2_ops(), "avx2"};
    }
    if (cpu_has_avx2()) return {&avx2_ops(), "avx2"};
    return {&scalar_ops(), "scalar"};
}

const Selection& selection() {
    static const Selection s = select();
    return s;
}

} // namespace

bool avx2_available() { return cpu_has_avx2(); }

const Ops& active() { return *selection().ops; }

const std::string& active_name() { return selection().name; }

} // namespace mglc::kernels
