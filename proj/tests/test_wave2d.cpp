#include <doctest.h>

#include "mimetic/error.hpp"
#include "mimetic/random.hpp"
#include "mimetic/wave2d.hpp"

#include <cmath>
#include <numbers>

using namespace mimetic;
using namespace mimetic::wave2d;
using std::numbers::pi;

namespace {

double f_test(double x, double y) { return std::sin(2 * x + 3 * y) + x * y * y; }

double sum(const Array2& a)
{
    double s = 0.0;
    for (double v : a.values()) s += v;
    return s;
}

double sum_sq(const Array2& a)
{
    double s = 0.0;
    for (double v : a.values()) s += v * v;
    return s;
}

Array2 random_array(Shape2 sh, Rng& rng)
{
    Array2 a(sh.nx, sh.ny);
    for (double& v : a.values()) v = uniform(rng);
    return a;
}

void zero_ring(Array2& fp)
{
    for (int i = 0; i < fp.nx(); ++i) fp(i, 0) = fp(i, fp.ny() - 1) = 0.0;
    for (int j = 0; j < fp.ny(); ++j) fp(0, j) = fp(fp.nx() - 1, j) = 0.0;
}

}  // namespace

TEST_CASE("array shapes per kind")
{
    const Grid2 g{5, 4};
    auto is = [&](Kind2 k, int nx, int ny) {
        const Shape2 s = shape_of(g, k);
        return s.nx == nx && s.ny == ny;
    };
    CHECK(is(Kind2::fp, 6, 5));
    CHECK(is(Kind2::gp, 5, 4));
    CHECK(is(Kind2::fd, 5, 4));
    CHECK(is(Kind2::gd, 4, 3));
    CHECK(is(Kind2::txp, 5, 5));
    CHECK(is(Kind2::nyp, 5, 5));
    CHECK(is(Kind2::typ, 6, 4));
    CHECK(is(Kind2::nxp, 6, 4));
    CHECK(is(Kind2::txd, 4, 4));
    CHECK(is(Kind2::nyd, 4, 4));
    CHECK(is(Kind2::tyd, 5, 3));
    CHECK(is(Kind2::nxd, 5, 3));
    CHECK_THROWS_AS((Grid2{1, 4}.validate()), ConfigError);
    CHECK(g.xd(0) == doctest::Approx(0.1));
    CHECK(g.yp(4) == 1.0);
}

TEST_CASE("operators match the numpy reference on a 5x4 grid")
{
    const Grid2 g{5, 4};
    const auto tp = grad2p(sample(g, Kind2::fp, f_test), g);
    CHECK(sum_sq(tp.x) + sum_sq(tp.y) == doctest::Approx(100.71857288869403).epsilon(1e-13));
    const auto td = grad2d(sample(g, Kind2::fd, f_test), g);
    CHECK(sum_sq(td.x) + sum_sq(td.y) == doctest::Approx(58.64835050317547).epsilon(1e-13));
    const Array2 gd = div2d({sample(g, Kind2::nxd, f_test), sample(g, Kind2::nyd, f_test)}, g);
    CHECK(sum(gd) == doctest::Approx(-25.537603059603818).epsilon(1e-13));
    CHECK(gd(1, 2) == doctest::Approx(-3.7337636024741565).epsilon(1e-13));
    const Array2 gp = div2p({sample(g, Kind2::nxp, f_test), sample(g, Kind2::nyp, f_test)}, g);
    CHECK(sum(gp) == doctest::Approx(-28.874966248214072).epsilon(1e-13));
    CHECK(gp(3, 1) == doctest::Approx(-3.3458235675114514).epsilon(1e-13));
}

TEST_CASE("wrong shapes are rejected")
{
    const Grid2 g{5, 4};
    CHECK_THROWS_AS(grad2p(Array2(5, 5), g), ShapeError);
    CHECK_THROWS_AS(div2d({make(g, Kind2::nxd), make(g, Kind2::tyd)}, g), ShapeError);
    Array2 a(3, 3);
    CHECK_THROWS_AS(a += Array2(3, 4), ShapeError);
}

TEST_CASE("star operators place values on the shifted points")
{
    const Grid2 g{4, 3};
    Star2 s;
    s.A11 = 2.0;
    s.A22 = 3.0;
    s.a = 0.5;
    const Array2 fp = sample(g, Kind2::fp, f_test);
    const auto tp = grad2p(fp, g);
    const auto nd = star2_A(tp, g, s);
    CHECK(nd.x(2, 1) == 2.0 * tp.x(2, 2));
    CHECK(nd.y(1, 2) == 3.0 * tp.y(2, 2));
    CHECK(star2_a(fp, g, s)(0, 0) == 0.5 * fp(1, 1));
    // Inverses restore the interior and leave boundary rows at zero.
    const auto back = star2_A_inv(nd, g, s);
    for (int i = 0; i < g.Nx; ++i) {
        CHECK(back.x(i, 0) == 0.0);
        CHECK(back.x(i, g.Ny) == 0.0);
        for (int j = 1; j < g.Ny; ++j) CHECK(back.x(i, j) == doctest::Approx(tp.x(i, j)).epsilon(1e-15));
    }
    for (int j = 0; j < g.Ny; ++j) CHECK(back.y(0, j) == 0.0);
    const Array2 ring = star2_a_inv(star2_a(fp, g, s), g, s);
    CHECK(ring(0, 2) == 0.0);
    CHECK(ring(2, 2) == doctest::Approx(fp(2, 2)).epsilon(1e-15));

    Star2 bad;
    bad.B22 = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("property: b star round trip is within one ulp")
{
    const Grid2 g{7, 6};
    Rng rng(21);
    for (double b : {0.3, 1.7, 3.0, 1.0 / 3.0}) {
        Star2 s;
        s.b = b;
        s.B11 = 1.0 / b;
        s.B22 = b * b;
        const Array2 fd = random_array(shape_of(g, Kind2::fd), rng);
        const Array2 back = star2_b_inv(star2_b(fd, g, s), g, s);
        for (std::size_t i = 0; i < fd.size(); ++i)
            CHECK(std::abs(back.values()[i] - fd.values()[i]) <= std::nextafter(std::abs(fd.values()[i]), 1e300) -
                                                                      std::abs(fd.values()[i]));
        const Pair2 td{random_array(shape_of(g, Kind2::txd), rng), random_array(shape_of(g, Kind2::tyd), rng)};
        const Pair2 tb = star2_B_inv(star2_B(td, g, s), g, s);
        CHECK((tb.x - td.x).max_abs() <= 2.3e-16);
        CHECK((tb.y - td.y).max_abs() <= 2.3e-16);
    }
}

TEST_CASE("property: the wave operators are adjoint in the weighted products")
{
    Rng rng(5);
    for (const Grid2& g : {Grid2{5, 4}, Grid2{9, 12}, Grid2{16, 16}}) {
        Star2 s;
        s.a = 0.7;
        s.A11 = 1.3;
        s.A22 = 2.1;
        const Ops2 ops = wave2d_operators(g, s);
        for (int trial = 0; trial < 10; ++trial) {
            Array2 f = random_array(shape_of(g, Kind2::fp), rng);
            zero_ring(f);
            const Pair2 v{random_array(shape_of(g, Kind2::nxd), rng), random_array(shape_of(g, Kind2::nyd), rng)};
            const Pair2 Af = ops.apply_A(f);
            const Array2 Asv = ops.apply_Astar(v);
            const double lhs = inner_nd(Af, v, g, s), rhs = inner_fp(f, Asv, g, s);
            const double scale = std::sqrt(inner_nd(Af, Af, g, s) * inner_nd(v, v, g, s)) +
                                 std::sqrt(inner_fp(f, f, g, s) * inner_fp(Asv, Asv, g, s));
            CHECK(std::abs(lhs - rhs) <= 1e-14 * scale);
        }
    }
}

TEST_CASE("exact mode values")
{
    // tests/oracles/wave2d_oracle.py (symbolic check of the PDE residual, then sampled)
    const Exact2 a = exact_solution_2d(1, 1, 1.5, 0.3, 0.7, 0.2);
    CHECK(a.u == doctest::Approx(0.15426297541936024).epsilon(1e-14));
    CHECK(a.vx == doctest::Approx(0.326776306514033).epsilon(1e-14));
    CHECK(a.vy == doctest::Approx(-0.3267763065140329).epsilon(1e-14));
    const Exact2 b = exact_solution_2d(2, 3, 1.5, 0.3, 0.7, 0.2);
    CHECK(b.u == doctest::Approx(-0.28427316088544113).epsilon(1e-14));
    CHECK(b.vx == doctest::Approx(0.013441137309525229).epsilon(1e-14));
    CHECK(b.vy == doctest::Approx(-0.19097441997846112).epsilon(1e-14));
    CHECK_THROWS_AS(exact_solution_2d(0, 1, 1.0, 0.5, 0.5, 0.0), ConfigError);
    CHECK_THROWS_AS(exact_solution_2d(1, -2, 1.0, 0.5, 0.5, 0.0), ConfigError);
}

TEST_CASE("wave steps match the numpy reference")
{
    const Grid2 g{6, 5};
    Star2 s;
    s.a = 1.0 / 1.5;
    s.A11 = s.A22 = 1.5;
    const double dt = 0.02;
    const Ops2 ops = wave2d_operators(g, s);
    Array2 u0 = sample(g, Kind2::fp, [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); });
    zero_ring(u0);
    const Pair2 v0{make(g, Kind2::nxd), make(g, Kind2::nyd)};
    State2 st = core::make_state(u0, core::init_g_half(u0, v0, ops, dt), ops, dt);
    for (int n = 0; n < 10; ++n) wave2d_step(st, g, s);
    CHECK(st.f(3, 2) == doctest::Approx(0.24033620759190608).epsilon(1e-13));
    CHECK(st.g_half.x(2, 1) == doctest::Approx(0.17136417937974027).epsilon(1e-13));
}

TEST_CASE("property: mode runs conserve C and converge at second order")
{
    for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 3}}) {
        const auto run = run_mode(Grid2{24, 20}, m, n, 1.2, 0.01, 400, 10);
        CHECK(run.drift_n < 1e-13);
        CHECK(run.drift_half < 1e-13);
        CHECK(run.steps.back() == 400);
    }
    // dt = dx / 4, final time 0.375
    auto err = [](int N) { return run_mode(Grid2{N, N}, 1, 1, 1.0, 0.25 / N, 3 * N / 2, 0).error_u; };
    const double e16 = err(16), e32 = err(32);
    CHECK(e16 / e32 == doctest::Approx(4.0).epsilon(0.1));
    CHECK_THROWS_AS(run_mode(Grid2{4, 4}, 1, 1, 0.0, 0.1, 1), ConfigError);
}
