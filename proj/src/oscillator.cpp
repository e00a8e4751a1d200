#include "mimetic/oscillator.hpp"

#include "mimetic/error.hpp"

#include <algorithm>
#include <cmath>

namespace mimetic::osc {

void OscParams::validate() const
{
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ConfigError("oscillator: omega must be positive");
    if (!(dt >= 0.0) || !std::isfinite(dt)) throw ConfigError("oscillator: dt must be nonnegative");
    if (!std::isfinite(alpha())) throw ConfigError("oscillator: alpha is not finite");
    if (n_steps < 0) throw ConfigError("oscillator: n_steps must be nonnegative");
}

double second_order_step(double u_n, double u_nm1, const OscParams& p)
{
    const double wdt = p.omega * p.dt;
    return (2.0 - wdt * wdt) * u_n - u_nm1;
}

OscState leapfrog_step(const OscState& s, const OscParams& p)
{
    OscState out;
    out.u_n = s.u_n - p.dt * p.omega * s.v_half;
    out.prev_v_half = s.v_half;
    out.v_half = s.v_half + p.dt * p.omega * out.u_n;
    out.step = s.step + 1;
    return out;
}

double init_half_step(double u0, double v0, const OscParams& p)
{
    const double h = p.dt / 2.0;
    return v0 + h * p.omega * u0 - 0.5 * h * h * p.omega * p.omega * v0;
}

OscState make_state(double u0, double v0, const OscParams& p, InitMode mode)
{
    OscState s;
    s.u_n = u0;
    s.v_half = mode == InitMode::exact ? exact_v(u0, v0, p.omega, p.dt / 2.0) : init_half_step(u0, v0, p);
    s.prev_v_half = s.v_half - p.dt * p.omega * u0;
    return s;
}

double conserved_n(const OscState& s, const OscParams& p)
{
    const double a = p.alpha();
    const double vbar = (s.v_half + s.prev_v_half) / 2.0;
    return 0.5 * ((1.0 - a * a) * s.u_n * s.u_n + vbar * vbar);
}

double conserved_half(double u_np1, double u_n, double v_half, const OscParams& p)
{
    const double a = p.alpha();
    const double ubar = (u_np1 + u_n) / 2.0;
    return 0.5 * (ubar * ubar + (1.0 - a * a) * v_half * v_half);
}

double conserved_half(const OscState& s, const OscParams& p)
{
    const double u_np1 = s.u_n - p.dt * p.omega * s.v_half;
    return conserved_half(u_np1, s.u_n, s.v_half, p);
}

double exact_u(double u0, double v0, double omega, double t)
{
    return u0 * std::cos(omega * t) - v0 * std::sin(omega * t);
}

double exact_v(double u0, double v0, double omega, double t)
{
    return v0 * std::cos(omega * t) + u0 * std::sin(omega * t);
}

StabilityResult stability_probe(const OscParams& p)
{
    p.validate();
    constexpr double kBound = 10.0;
    const std::int64_t steps = p.n_steps > 0 ? p.n_steps : 10000;
    StabilityResult r;
    OscState s = make_state(1.0, 0.0, p);
    r.max_abs_u = std::abs(s.u_n);
    for (std::int64_t n = 0; n < steps; ++n) {
        s = leapfrog_step(s, p);
        r.max_abs_u = std::max(r.max_abs_u, std::abs(s.u_n));
        r.steps_run = n + 1;
        // Once past the bound the verdict cannot change; stop before overflow.
        if (!(r.max_abs_u <= kBound)) break;
    }
    r.verdict = r.max_abs_u <= kBound ? Stability::stable : Stability::unstable;
    return r;
}

}  // namespace mimetic::osc
