#include "mimetic/simd.hpp"

namespace mimetic::simd::detail {
namespace {

void diff_scalar(double* out, const double* hi, const double* lo, std::size_t n, double scale)
{
    for (std::size_t i = 0; i < n; ++i) out[i] = (hi[i] - lo[i]) * scale;
}

void diff_add_scalar(double* out, const double* hi, const double* lo, std::size_t n, double scale)
{
    for (std::size_t i = 0; i < n; ++i) out[i] = out[i] + (hi[i] - lo[i]) * scale;
}

void axpy_scalar(double* y, const double* x, std::size_t n, double a)
{
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void waxpy_scalar(double* y, const double* w, const double* x, std::size_t n, double a)
{
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + (a * w[i]) * x[i];
}

void mul_scalar(double* out, const double* w, const double* x, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) out[i] = w[i] * x[i];
}

void div_scalar(double* out, const double* x, const double* w, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] / w[i];
}

}  // namespace

const KernelTable scalar_table = {
    diff_scalar, diff_add_scalar, axpy_scalar, waxpy_scalar, mul_scalar, div_scalar, Backend::scalar,
};

}  // namespace mimetic::simd::detail
