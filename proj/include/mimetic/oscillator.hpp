#pragma once
// Harmonic oscillator u'' = -omega^2 u, in second-order form and as the
// first-order pair u' = -omega v, v' = omega u advanced by leapfrog.

#include <cstdint>

namespace mimetic::osc {

struct OscParams {
    double omega = 1.0;
    double dt = 0.01;
    std::int64_t n_steps = 0;

    double alpha() const { return omega * dt / 2.0; }
    // Throws ConfigError unless omega > 0, dt >= 0 and alpha is finite.
    void validate() const;
};

// u at t_n, v at t_{n+1/2} and t_{n-1/2}.
struct OscState {
    double u_n = 0.0;
    double v_half = 0.0;
    double prev_v_half = 0.0;
    std::int64_t step = 0;
};

enum class InitMode { taylor, exact };

double second_order_step(double u_n, double u_nm1, const OscParams& p);

// u first, then v from the new u.
OscState leapfrog_step(const OscState& s, const OscParams& p);

// v0 + (dt/2) omega u0 - 1/2 (dt/2)^2 omega^2 v0
double init_half_step(double u0, double v0, const OscParams& p);

// State at n = 0. Taylor mode uses init_half_step; exact mode samples the
// analytic solution through (u0, v0) at t = dt/2. prev_v_half is filled by
// running the v update backwards, so conserved_n is defined from the start.
OscState make_state(double u0, double v0, const OscParams& p, InitMode mode = InitMode::taylor);

// 1/2 [(1 - alpha^2) u_n^2 + vbar^2], vbar the mean of the two v halves.
double conserved_n(const OscState& s, const OscParams& p);
// 1/2 [((u_{n+1} + u_n)/2)^2 + (1 - alpha^2) v_{n+1/2}^2]
double conserved_half(double u_np1, double u_n, double v_half, const OscParams& p);
// Same, with u_{n+1} taken from one leapfrog step of s.
double conserved_half(const OscState& s, const OscParams& p);

// Analytic solution with u(0) = u0, v(0) = v0.
double exact_u(double u0, double v0, double omega, double t);
double exact_v(double u0, double v0, double omega, double t);

enum class Stability { stable, unstable };

struct StabilityResult {
    Stability verdict = Stability::stable;
    double max_abs_u = 0.0;
    std::int64_t steps_run = 0;
};

// 10^4 leapfrog steps (or p.n_steps if positive) from u0 = 1, v0 = 0;
// stable iff max |u| <= 10.
StabilityResult stability_probe(const OscParams& p);

}  // namespace mimetic::osc
