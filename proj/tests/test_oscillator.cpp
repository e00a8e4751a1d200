#include <doctest.h>

#include "mimetic/error.hpp"
#include "mimetic/oscillator.hpp"

#include <cmath>

using namespace mimetic;
using namespace mimetic::osc;

namespace {

OscState advance(OscState s, const OscParams& p, int steps)
{
    for (int i = 0; i < steps; ++i) s = leapfrog_step(s, p);
    return s;
}

}  // namespace

TEST_CASE("zero data stays zero")
{
    OscParams p{1.0, 0.1, 0};
    OscState s = make_state(0.0, 0.0, p);
    s = advance(s, p, 50);
    CHECK(s.u_n == 0.0);
    CHECK(s.v_half == 0.0);
    CHECK(conserved_n(s, p) == 0.0);
}

TEST_CASE("zero time step leaves u fixed")
{
    OscParams p{3.0, 0.0, 0};
    OscState s = make_state(0.7, -0.2, p);
    s = advance(s, p, 10);
    CHECK(s.u_n == 0.7);
    CHECK(s.v_half == -0.2);
}

TEST_CASE("parameters are validated")
{
    CHECK_THROWS_AS(OscParams({0.0, 0.1, 0}).validate(), ConfigError);
    CHECK_THROWS_AS(OscParams({-1.0, 0.1, 0}).validate(), ConfigError);
    CHECK_THROWS_AS(OscParams({1.0, -0.1, 0}).validate(), ConfigError);
    CHECK_THROWS_AS(OscParams({1.0, std::nan(""), 0}).validate(), ConfigError);
    CHECK_NOTHROW(OscParams({1.0, 0.1, 5}).validate());
}

TEST_CASE("Taylor half step")
{
    OscParams p{2.0, 0.1, 0};
    // v0 + (dt/2) w u0 - 1/2 (dt/2)^2 w^2 v0 with u0 = 1, v0 = 0.5
    CHECK(init_half_step(1.0, 0.5, p) == doctest::Approx(0.5 + 0.1 - 0.5 * 0.0025 * 4.0 * 0.5).epsilon(1e-15));
}

TEST_CASE("leapfrog matches the 50-digit reference")
{
    // tests/oracles/oscillator_oracle.py, w = 1, dt = 0.01, u0 = 1, v0 = 0
    OscParams p{1.0, 0.01, 0};
    OscState s0 = make_state(1.0, 0.0, p);
    CHECK(s0.v_half == doctest::Approx(0.005).epsilon(1e-15));
    CHECK(conserved_n(s0, p) == doctest::Approx(0.4999875).epsilon(1e-15));

    OscState s = advance(s0, p, 1);
    CHECK(s.u_n == doctest::Approx(0.99995).epsilon(1e-15));
    CHECK(s.v_half == doctest::Approx(0.0149995).epsilon(1e-14));
    s = advance(s0, p, 10);
    CHECK(s.u_n == doctest::Approx(0.99500412368021447998).epsilon(1e-14));
    CHECK(s.v_half == doctest::Approx(0.10480760392426350321).epsilon(1e-13));
    s = advance(s0, p, 1000);
    CHECK(s.u_n == doctest::Approx(-0.83904886054678117305).epsilon(1e-12));
    CHECK(s.v_half == doctest::Approx(-0.548244515683468117).epsilon(1e-12));
    CHECK(conserved_n(s, p) == doctest::Approx(0.4999875).epsilon(1e-14));
}

TEST_CASE("leapfrog and the second-order recurrence produce the same u")
{
    OscParams p{1.7, 0.05, 0};
    OscState s = make_state(0.3, 0.9, p);
    double um1 = s.u_n;
    OscState s1 = leapfrog_step(s, p);
    double u = s1.u_n;
    OscState cur = s1;
    for (int n = 0; n < 200; ++n) {
        const double up1 = second_order_step(u, um1, p);
        cur = leapfrog_step(cur, p);
        CHECK(cur.u_n == doctest::Approx(up1).epsilon(1e-12));
        um1 = u;
        u = up1;
    }
}

TEST_CASE("exact solution")
{
    CHECK(exact_u(1.0, 0.0, 1.0, 1.0) == doctest::Approx(0.5403023058681397174).epsilon(1e-15));
    CHECK(exact_v(1.0, 0.0, 1.0, 1.0) == doctest::Approx(0.84147098480789650665).epsilon(1e-15));
    // u' = -w v, v' = w u
    const double t = 0.37, w = 2.5, h = 1e-6;
    const double du = (exact_u(0.4, -0.8, w, t + h) - exact_u(0.4, -0.8, w, t - h)) / (2 * h);
    CHECK(du == doctest::Approx(-w * exact_v(0.4, -0.8, w, t)).epsilon(1e-8));
}

TEST_CASE("exact-mode start is second-order close to the Taylor start")
{
    OscParams p{1.0, 0.02, 0};
    const double a = make_state(1.0, 0.3, p, InitMode::exact).v_half;
    const double b = make_state(1.0, 0.3, p, InitMode::taylor).v_half;
    CHECK(std::abs(a - b) < std::pow(p.dt, 3));
}

TEST_CASE("property: both conserved quantities are invariant for stable steps")
{
    for (double wdt : {0.01, 0.3, 1.0, 1.5, 1.9, 1.99}) {
        for (double u0 : {1.0, -0.4}) {
            CAPTURE(wdt);
            OscParams p{2.0, wdt / 2.0, 0};
            OscState s = make_state(u0, 0.25, p);
            const double cn0 = conserved_n(s, p), ch0 = conserved_half(s, p);
            CHECK(cn0 > 0.0);
            CHECK(ch0 > 0.0);
            for (int n = 0; n < 2000; ++n) {
                s = leapfrog_step(s, p);
                REQUIRE(std::abs(conserved_n(s, p) - cn0) <= 1e-12 * cn0);
                REQUIRE(std::abs(conserved_half(s, p) - ch0) <= 1e-12 * ch0);
            }
        }
    }
}

TEST_CASE("conserved_half overloads agree")
{
    OscParams p{1.3, 0.2, 0};
    OscState s = advance(make_state(0.6, 0.1, p), p, 7);
    const OscState next = leapfrog_step(s, p);
    CHECK(conserved_half(s, p) == conserved_half(next.u_n, s.u_n, s.v_half, p));
}

TEST_CASE("stability edge")
{
    auto probe = [](double wdt) { return stability_probe(OscParams{1.0, wdt, 0}); };
    CHECK(probe(1.99).verdict == Stability::stable);
    CHECK(probe(1.5).verdict == Stability::stable);
    CHECK(probe(1.99).steps_run == 10000);
    const auto bad = probe(2.30);
    CHECK(bad.verdict == Stability::unstable);
    // First step with |u| > 10, from the reference run.
    CHECK(bad.steps_run == 3);
    CHECK(probe(2.01).steps_run == 15);
    CHECK(probe(2.01).verdict == Stability::unstable);
}

TEST_CASE("stability probe honours n_steps")
{
    const auto r = stability_probe(OscParams{1.0, 0.5, 123});
    CHECK(r.steps_run == 123);
    CHECK(r.max_abs_u <= 1.0 + 1e-12);
}
