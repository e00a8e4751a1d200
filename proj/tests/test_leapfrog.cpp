#include <doctest.h>

#include "mimetic/leapfrog.hpp"
#include "mimetic/random.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <utility>

using namespace mimetic;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// A random operator A : R^n -> R^m with SPD weights on both spaces, so the
// adjoint is A* = Wx^-1 A^T Wy.
struct Problem {
    MatrixXd A, Wx, Wy, Astar;
    core::OperatorPair<VectorXd, VectorXd> ops;
    core::InnerProduct<VectorXd> ix, iy;
};

MatrixXd random_spd(int n, Rng& rng)
{
    MatrixXd q(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q(i, j) = uniform(rng, -0.3, 0.3);
    return q * q.transpose() + MatrixXd::Identity(n, n);
}

VectorXd random_vec(int n, Rng& rng)
{
    VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(rng);
    return v;
}

Problem make_problem(int n, int m, std::uint64_t seed, double sign = 1.0)
{
    Rng rng(seed);
    Problem p;
    p.A.resize(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) p.A(i, j) = uniform(rng);
    p.Wx = random_spd(n, rng);
    p.Wy = random_spd(m, rng);
    p.Astar = sign * p.Wx.inverse() * p.A.transpose() * p.Wy;
    const MatrixXd A = p.A, As = p.Astar, Wx = p.Wx, Wy = p.Wy;
    p.ops.apply_A = [A](const VectorXd& f) -> VectorXd { return A * f; };
    p.ops.apply_Astar = [As](const VectorXd& g) -> VectorXd { return As * g; };
    p.ix = [Wx](const VectorXd& a, const VectorXd& b) { return a.dot(Wx * b); };
    p.iy = [Wy](const VectorXd& a, const VectorXd& b) { return a.dot(Wy * b); };
    return p;
}

// Largest singular value of A as a map between the weighted spaces.
double weighted_norm(const Problem& p)
{
    Eigen::LLT<MatrixXd> lx(p.Wx), ly(p.Wy);
    const MatrixXd Lx = lx.matrixL(), Ly = ly.matrixL();
    const MatrixXd B = Ly.transpose() * p.A * Lx.transpose().inverse();
    Eigen::JacobiSVD<MatrixXd> svd(B);
    return svd.singularValues()(0);
}

}  // namespace

TEST_CASE("Eigen vectors satisfy the vector concept")
{
    static_assert(core::VectorLike<VectorXd>);
    static_assert(core::VectorLike<double>);
}

TEST_CASE("zero state stays zero")
{
    auto p = make_problem(5, 4, 1);
    auto s = core::make_state(VectorXd::Zero(5).eval(), VectorXd::Zero(4).eval(), p.ops, 0.1);
    for (int i = 0; i < 10; ++i) core::system_step(s, p.ops);
    CHECK(s.f.norm() == 0.0);
    CHECK(s.g_half.norm() == 0.0);
}

TEST_CASE("adjoint residual is at round-off for the true adjoint and large for a wrong sign")
{
    auto p = make_problem(7, 5, 2);
    Rng rng(3);
    std::function<VectorXd(Rng&)> sx = [](Rng& r) { return random_vec(7, r); };
    std::function<VectorXd(Rng&)> sy = [](Rng& r) { return random_vec(5, r); };
    CHECK(core::check_adjointness(p.ops, p.ix, p.iy, 50, sx, sy, rng) < 1e-13);
    auto bad = make_problem(7, 5, 2, -1.0);
    CHECK(core::check_adjointness(bad.ops, bad.ix, bad.iy, 50, sx, sy, rng) > 0.1);
    CHECK_THROWS(core::check_adjointness(p.ops, p.ix, p.iy, 0, sx, sy, rng));
}

TEST_CASE("one step follows the update formulas")
{
    auto p = make_problem(4, 3, 4);
    Rng rng(5);
    const VectorXd f0 = random_vec(4, rng), gh = random_vec(3, rng);
    const double dt = 0.05;
    auto s = core::make_state(f0, gh, p.ops, dt);
    CHECK((s.g_prev_half - (gh - dt * p.A * f0)).norm() < 1e-15);
    auto s1 = core::system_step(std::as_const(s), p.ops);
    const VectorXd f1 = f0 - dt * p.Astar * gh;
    CHECK((s1.f - f1).norm() < 1e-14);
    CHECK((s1.g_half - (gh + dt * p.A * f1)).norm() < 1e-14);
    CHECK(s1.g_prev_half == gh);
    CHECK(s1.step == 1);
    CHECK(s.step == 0);
}

TEST_CASE("property: conserved quantities are invariant below the step bound")
{
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        for (double frac : {0.2, 0.9, 0.99}) {
            CAPTURE(seed);
            CAPTURE(frac);
            auto p = make_problem(9, 6, seed);
            const double dt = frac * 2.0 / weighted_norm(p);
            Rng rng(seed + 100);
            auto s = core::make_state(random_vec(9, rng), random_vec(6, rng), p.ops, dt);
            const double cn0 = core::conserved_full(s, p.ops, p.ix, p.iy);
            const double ch0 = core::conserved_half_step(s, p.ops, p.ix, p.iy);
            CHECK(cn0 > 0.0);
            CHECK(ch0 > 0.0);
            for (int n = 0; n < 500; ++n) {
                core::system_step(s, p.ops);
                REQUIRE(std::abs(core::conserved_full(s, p.ops, p.ix, p.iy) - cn0) <= 1e-11 * cn0);
                REQUIRE(std::abs(core::conserved_half_step(s, p.ops, p.ix, p.iy) - ch0) <= 1e-11 * ch0);
            }
        }
    }
}

TEST_CASE("above the bound the scheme blows up")
{
    auto p = make_problem(9, 6, 21);
    const double dt = 1.1 * 2.0 / weighted_norm(p);
    Rng rng(1);
    auto s = core::make_state(random_vec(9, rng), random_vec(6, rng), p.ops, dt);
    const double n0 = s.f.norm();
    for (int n = 0; n < 400; ++n) core::system_step(s, p.ops);
    CHECK(s.f.norm() > 1e6 * n0);
}

TEST_CASE("conserved parts add up")
{
    auto p = make_problem(5, 5, 8);
    Rng rng(9);
    auto s = core::make_state(random_vec(5, rng), random_vec(5, rng), p.ops, 0.01);
    const auto c = core::conserved_full_parts(s, p.ops, p.ix, p.iy);
    CHECK(c.value() == core::conserved_full(s, p.ops, p.ix, p.iy));
    CHECK(c.c1 == doctest::Approx(p.ix(s.f, s.f)));
    CHECK(c.c3 == doctest::Approx(0.005 * 0.005 * p.iy(p.A * s.f, p.A * s.f)));
}

TEST_CASE("the oscillator-form half step is the accurate one")
{
    // Exact g(dt/2) for f' = -A* g, g' = A f through the matrix exponential of
    // [[0, -A*], [A, 0]] in the plain (unweighted) case with A square.
    Rng rng(31);
    MatrixXd A(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) = uniform(rng);
    core::OperatorPair<VectorXd, VectorXd> ops;
    ops.apply_A = [A](const VectorXd& f) -> VectorXd { return A * f; };
    ops.apply_Astar = [A](const VectorXd& g) -> VectorXd { return A.transpose() * g; };
    const VectorXd f0 = random_vec(3, rng), g0 = random_vec(3, rng);
    MatrixXd M = MatrixXd::Zero(6, 6);
    M.block(0, 3, 3, 3) = -A.transpose();
    M.block(3, 0, 3, 3) = A;
    auto exact_half = [&](double dt) {
        // Taylor series to many terms is exact to round-off for these sizes.
        VectorXd y(6), term(6);
        y << f0, g0;
        term = y;
        VectorXd sum = y;
        for (int k = 1; k < 30; ++k) {
            term = (dt / 2.0) / k * (M * term);
            sum += term;
        }
        return VectorXd(sum.tail(3));
    };
    double prev_osc = 0.0, prev_sys = 0.0;
    for (double dt : {0.1, 0.05}) {
        const VectorXd ex = exact_half(dt);
        const double e_osc = (core::init_g_half(f0, g0, ops, dt, core::HalfStepInit::oscillator_taylor) - ex).norm();
        const double e_sys = (core::init_g_half(f0, g0, ops, dt, core::HalfStepInit::system_taylor) - ex).norm();
        CHECK(e_osc < e_sys);
        if (prev_osc > 0.0) {
            CHECK(std::log2(prev_osc / e_osc) > 2.8);  // local error O(dt^3)
            CHECK(std::log2(prev_sys / e_sys) < 2.2);  // wrong dt^2 coefficient
        }
        prev_osc = e_osc;
        prev_sys = e_sys;
    }
    CHECK(core::init_name(core::HalfStepInit::system_taylor) == "system-taylor");
}

TEST_CASE("scalar doubles work as a one-dimensional system")
{
    core::OperatorPair<double, double> ops;
    const double w = 1.0;
    ops.apply_A = [w](const double& f) { return w * f; };
    ops.apply_Astar = [w](const double& g) { return w * g; };
    core::InnerProduct<double> ip = [](const double& a, const double& b) { return a * b; };
    auto s = core::make_state(1.0, core::init_g_half(1.0, 0.0, ops, 0.01), ops, 0.01);
    const double c0 = core::conserved_full(s, ops, ip, ip);
    // Twice the oscillator's conserved quantity: no factor 1/2 here.
    CHECK(c0 == doctest::Approx(2.0 * 0.4999875).epsilon(1e-15));
    for (int n = 0; n < 1000; ++n) core::system_step(s, ops);
    CHECK(s.f == doctest::Approx(-0.83904886054678117305).epsilon(1e-12));
}
