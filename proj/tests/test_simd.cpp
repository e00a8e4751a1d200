#include <doctest.h>

#include "mimetic/operators3.hpp"
#include "mimetic/random.hpp"
#include "mimetic/simd.hpp"
#include "mimetic/wave1d.hpp"
#include "mimetic/wave3d.hpp"

#include <cstring>
#include <limits>
#include <vector>

using namespace mimetic;
using simd::Backend;

namespace {

std::vector<double> random_vec(std::size_t n, Rng& rng, double lo = -2.0, double hi = 2.0)
{
    std::vector<double> v(n);
    for (double& x : v) x = uniform(rng, lo, hi);
    return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b)
{
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct BackendGuard {
    Backend saved = simd::active_backend();
    ~BackendGuard() { simd::set_backend(saved); }
};

}  // namespace

TEST_CASE("backend names round trip")
{
    Backend b;
    CHECK(simd::parse_backend("scalar", b));
    CHECK(b == Backend::scalar);
    CHECK(simd::parse_backend("avx2", b));
    CHECK(b == Backend::avx2);
    CHECK_FALSE(simd::parse_backend("neon", b));
    CHECK(simd::backend_name(Backend::avx2) == "avx2");
    CHECK(simd::backend_available(Backend::scalar));
}

TEST_CASE("kernels(b) reports the backend it implements")
{
    CHECK(simd::kernels(Backend::scalar).backend == Backend::scalar);
    if (simd::backend_available(Backend::avx2)) CHECK(simd::kernels(Backend::avx2).backend == Backend::avx2);
    else CHECK(simd::kernels(Backend::avx2).backend == Backend::scalar);
}

TEST_CASE("avx2 kernels match the scalar reference bit for bit")
{
    if (!simd::backend_available(Backend::avx2)) {
        MESSAGE("avx2 not available on this CPU; skipping");
        return;
    }
    const auto& s = simd::kernels(Backend::scalar);
    const auto& v = simd::kernels(Backend::avx2);
    Rng rng(42);
    // Lengths around the 4-wide blocks, including empty and tail-only rows.
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 33u, 257u}) {
        CAPTURE(n);
        const auto hi = random_vec(n, rng), lo = random_vec(n, rng), w = random_vec(n, rng, 0.5, 3.0);
        const double scale = uniform(rng, -40.0, 40.0);
        {
            std::vector<double> a(n), b(n);
            s.diff(a.data(), hi.data(), lo.data(), n, scale);
            v.diff(b.data(), hi.data(), lo.data(), n, scale);
            CHECK(same_bits(a, b));
        }
        {
            auto a = random_vec(n, rng);
            auto b = a;
            s.diff_add(a.data(), hi.data(), lo.data(), n, scale);
            v.diff_add(b.data(), hi.data(), lo.data(), n, scale);
            CHECK(same_bits(a, b));
        }
        {
            auto a = random_vec(n, rng);
            auto b = a;
            s.axpy(a.data(), hi.data(), n, scale);
            v.axpy(b.data(), hi.data(), n, scale);
            CHECK(same_bits(a, b));
        }
        {
            auto a = random_vec(n, rng);
            auto b = a;
            s.waxpy(a.data(), w.data(), hi.data(), n, scale);
            v.waxpy(b.data(), w.data(), hi.data(), n, scale);
            CHECK(same_bits(a, b));
        }
        {
            std::vector<double> a(n), b(n);
            s.mul(a.data(), w.data(), hi.data(), n);
            v.mul(b.data(), w.data(), hi.data(), n);
            CHECK(same_bits(a, b));
            s.div(a.data(), hi.data(), w.data(), n);
            v.div(b.data(), hi.data(), w.data(), n);
            CHECK(same_bits(a, b));
        }
    }
}

TEST_CASE("kernels work in place")
{
    for (Backend b : {Backend::scalar, Backend::avx2}) {
        if (!simd::backend_available(b)) continue;
        const auto& k = simd::kernels(b);
        std::vector<double> x{1, 2, 3, 4, 5, 6};
        const std::vector<double> w{2, 2, 2, 2, 2, 2};
        k.mul(x.data(), w.data(), x.data(), x.size());
        CHECK(x == std::vector<double>{2, 4, 6, 8, 10, 12});
        k.div(x.data(), x.data(), w.data(), x.size());
        CHECK(x == std::vector<double>{1, 2, 3, 4, 5, 6});
    }
}

TEST_CASE("kernels propagate non-finite values like the scalar code")
{
    if (!simd::backend_available(Backend::avx2)) return;
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const std::vector<double> hi{inf, 1.0, nan, 0.0, -0.0, 1e308};
    const std::vector<double> lo{1.0, inf, 0.0, -0.0, 0.0, -1e308};
    std::vector<double> a(6), b(6);
    simd::kernels(Backend::scalar).diff(a.data(), hi.data(), lo.data(), 6, 2.0);
    simd::kernels(Backend::avx2).diff(b.data(), hi.data(), lo.data(), 6, 2.0);
    CHECK(same_bits(a, b));
}

TEST_CASE("whole solver steps agree across backends")
{
    if (!simd::backend_available(Backend::avx2)) return;
    BackendGuard guard;
    using namespace mimetic3d;

    auto run3d = [] {
        const Grid3 g = Grid3::cube(6, 1.0, Boundary::bounded);
        const Star3 m = Star3::sampled(
            g, [](double x, double, double) { return 1.0 + 0.3 * x; },
            [](double, double y, double) { return 1.0 + 0.2 * y; },
            [](double, double, double z) { return Sym3::diag(1.0 + z, 2.0, 1.5); },
            [](double x, double, double) { return Sym3::diag(1.0, 1.0 + x * x, 1.2); }, MatrixMode::diagonal);
        auto run = wave3d::run_maxwell_cavity(m, wave3d::suggest_dt(m, 0.8, wave3d::Physics::maxwell), 20, 5);
        std::vector<double> out;
        for (const auto& smp : run.series) out.insert(out.end(), {smp.cn.value(), smp.chalf.value(), smp.div.divE});
        return out;
    };
    auto run1d = [] {
        wave1d::Grid1D g{0.0, 1.0, 33, 0.5, 40};
        wave1d::Problem1D p{g, wave1d::make_preset("bump p=2 q=1", g), wave1d::Form::vmp,
                            wave1d::Init1D::taylor_sine, 2};
        auto run = wave1d::simulate(p, 0);
        return run.final_state.f.std();
    };

    simd::set_backend(Backend::scalar);
    const auto a3 = run3d();
    const auto a1 = run1d();
    simd::set_backend(Backend::avx2);
    const auto b3 = run3d();
    const auto b1 = run1d();
    CHECK(same_bits(a3, b3));
    CHECK(same_bits(a1, b1));
}
