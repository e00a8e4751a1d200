#pragma once
// Row kernels shared by every stencil in the library.
//
// Each kernel has a scalar reference version and, on x86-64, an AVX2 version.
// The table is picked once at startup from the CPU features; MIMETIC_SIMD
// (scalar|avx2) overrides the choice. All kernels are elementwise with the same
// operation order in every backend, so results are bitwise identical.

#include <cstddef>
#include <string_view>

namespace mimetic::simd {

enum class Backend { scalar, avx2 };

struct KernelTable {
    // out[i] = (hi[i] - lo[i]) * scale
    void (*diff)(double* out, const double* hi, const double* lo, std::size_t n, double scale);
    // out[i] = out[i] + (hi[i] - lo[i]) * scale
    void (*diff_add)(double* out, const double* hi, const double* lo, std::size_t n, double scale);
    // y[i] = y[i] + a * x[i]
    void (*axpy)(double* y, const double* x, std::size_t n, double a);
    // y[i] = y[i] + (a * w[i]) * x[i]
    void (*waxpy)(double* y, const double* w, const double* x, std::size_t n, double a);
    // out[i] = w[i] * x[i]
    void (*mul)(double* out, const double* w, const double* x, std::size_t n);
    // out[i] = x[i] / w[i]
    void (*div)(double* out, const double* x, const double* w, std::size_t n);
    Backend backend;
};

const KernelTable& kernels();
const KernelTable& kernels(Backend b);

bool backend_available(Backend b);
Backend active_backend();
// Swaps the active table. Intended for tests and the CLI --simd flag; not thread safe.
void set_backend(Backend b);

std::string_view backend_name(Backend b);
// Returns false when the name is unknown.
bool parse_backend(std::string_view name, Backend& out);

namespace detail {
extern const KernelTable scalar_table;
#if defined(MIMETIC_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace mimetic::simd
