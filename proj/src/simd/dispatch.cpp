#include "mimetic/simd.hpp"

#include <cstdlib>
#include <string>

namespace mimetic::simd {
namespace {

bool cpu_has_avx2()
{
#if defined(MIMETIC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelTable* pick_initial()
{
    Backend want = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    if (const char* env = std::getenv("MIMETIC_SIMD")) {
        Backend b;
        if (parse_backend(env, b) && backend_available(b)) want = b;
    }
    return &kernels(want);
}

const KernelTable*& active()
{
    static const KernelTable* table = pick_initial();
    return table;
}

}  // namespace

bool backend_available(Backend b)
{
    switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2: return cpu_has_avx2();
    }
    return false;
}

const KernelTable& kernels(Backend b)
{
#if defined(MIMETIC_HAVE_AVX2)
    if (b == Backend::avx2 && cpu_has_avx2()) return detail::avx2_table;
#else
    (void)b;
#endif
    return detail::scalar_table;
}

const KernelTable& kernels() { return *active(); }

Backend active_backend() { return active()->backend; }

void set_backend(Backend b) { active() = &kernels(b); }

std::string_view backend_name(Backend b)
{
    return b == Backend::avx2 ? "avx2" : "scalar";
}

bool parse_backend(std::string_view name, Backend& out)
{
    if (name == "scalar") {
        out = Backend::scalar;
        return true;
    }
    if (name == "avx2") {
        out = Backend::avx2;
        return true;
    }
    return false;
}

}  // namespace mimetic::simd
