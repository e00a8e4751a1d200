#pragma once
// Staggered-time integrator for f' = -A* g, g' = A f, where A : X -> Y and A*
// is its adjoint for the inner products supplied by the caller.
//
// X and Y only need value semantics plus
//     x + y, x - y, s * x (s double), x += y, x -= y
// so Eigen vectors and the grid field types all plug in directly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string_view>

namespace mimetic::core {

template <class V>
concept VectorLike = requires(V a, const V& b, double s) {
    { b + b } -> std::convertible_to<V>;
    { b - b } -> std::convertible_to<V>;
    { s * b } -> std::convertible_to<V>;
    a += b;
    a -= b;
};

template <VectorLike X, VectorLike Y>
struct OperatorPair {
    std::function<Y(const X&)> apply_A;
    std::function<X(const Y&)> apply_Astar;
    double norm_bound_A = std::numeric_limits<double>::infinity();
    double norm_bound_Astar = std::numeric_limits<double>::infinity();
};

template <VectorLike X>
using InnerProduct = std::function<double(const X&, const X&)>;

// f at t_n; g at t_{n+1/2} and t_{n-1/2}.
template <VectorLike X, VectorLike Y>
struct SystemState {
    X f;
    Y g_half;
    Y g_prev_half;
    std::int64_t step = 0;
    double dt = 0.0;
};

// Two readings of the Taylor half step for g. They differ only in the
// coefficient of the A A* g0 term:
//   system_taylor:     g0 + (dt/2) A f0 - (dt^2/2)     A A* g0
//   oscillator_taylor: g0 + (dt/2) A f0 - 1/2 (dt/2)^2 A A* g0
// Only the oscillator form matches the second Taylor coefficient of g.
enum class HalfStepInit { system_taylor, oscillator_taylor };

inline std::string_view init_name(HalfStepInit v)
{
    return v == HalfStepInit::system_taylor ? "system-taylor" : "oscillator-taylor";
}

template <VectorLike X, VectorLike Y>
Y init_g_half(const X& f0, const Y& g0, const OperatorPair<X, Y>& ops, double dt,
              HalfStepInit variant = HalfStepInit::oscillator_taylor)
{
    const double c2 = variant == HalfStepInit::system_taylor ? dt * dt / 2.0 : 0.5 * (dt / 2.0) * (dt / 2.0);
    Y g = g0;
    g += (dt / 2.0) * ops.apply_A(f0);
    g -= c2 * ops.apply_A(ops.apply_Astar(g0));
    return g;
}

// Builds the state at n = 0 from f0 and g^{1/2}. g^{-1/2} is recovered by
// running the g update backwards, which keeps C^0 consistent with the scheme.
template <VectorLike X, VectorLike Y>
SystemState<X, Y> make_state(const X& f0, const Y& g_half, const OperatorPair<X, Y>& ops, double dt)
{
    SystemState<X, Y> s{f0, g_half, g_half, 0, dt};
    s.g_prev_half -= dt * ops.apply_A(f0);
    return s;
}

template <VectorLike X, VectorLike Y>
void system_step(SystemState<X, Y>& s, const OperatorPair<X, Y>& ops)
{
    s.f -= s.dt * ops.apply_Astar(s.g_half);
    Y g_next = s.g_half + s.dt * ops.apply_A(s.f);
    s.g_prev_half = std::move(s.g_half);
    s.g_half = std::move(g_next);
    ++s.step;
}

template <VectorLike X, VectorLike Y>
SystemState<X, Y> system_step(const SystemState<X, Y>& s, const OperatorPair<X, Y>& ops)
{
    SystemState<X, Y> out = s;
    system_step(out, ops);
    return out;
}

// The three pieces of a conserved quantity: C = c1 + c2 - c3 with c3 already
// multiplied by (dt/2)^2.
struct Conserved {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double value() const { return c1 + c2 - c3; }
};

// C^n = |f^n|^2 + |(g^{n+1/2} + g^{n-1/2})/2|^2 - (dt/2)^2 |A f^n|^2
template <VectorLike X, VectorLike Y>
Conserved conserved_full_parts(const SystemState<X, Y>& s, const OperatorPair<X, Y>& ops,
                               const InnerProduct<X>& ix, const InnerProduct<Y>& iy)
{
    const double h = s.dt / 2.0;
    Y gbar = 0.5 * (s.g_half + s.g_prev_half);
    Y af = ops.apply_A(s.f);
    return {ix(s.f, s.f), iy(gbar, gbar), h * h * iy(af, af)};
}

template <VectorLike X, VectorLike Y>
double conserved_full(const SystemState<X, Y>& s, const OperatorPair<X, Y>& ops,
                      const InnerProduct<X>& ix, const InnerProduct<Y>& iy)
{
    return conserved_full_parts(s, ops, ix, iy).value();
}

// C^{n+1/2} = |(f^{n+1} + f^n)/2|^2 + |g^{n+1/2}|^2 - (dt/2)^2 |A* g^{n+1/2}|^2
// with f^{n+1} produced from the state by the f half of the step.
template <VectorLike X, VectorLike Y>
Conserved conserved_half_step_parts(const SystemState<X, Y>& s, const OperatorPair<X, Y>& ops,
                                    const InnerProduct<X>& ix, const InnerProduct<Y>& iy)
{
    const double h = s.dt / 2.0;
    X asg = ops.apply_Astar(s.g_half);
    X f_next = s.f - s.dt * asg;
    X fbar = 0.5 * (f_next + s.f);
    return {ix(fbar, fbar), iy(s.g_half, s.g_half), h * h * ix(asg, asg)};
}

template <VectorLike X, VectorLike Y>
double conserved_half_step(const SystemState<X, Y>& s, const OperatorPair<X, Y>& ops,
                           const InnerProduct<X>& ix, const InnerProduct<Y>& iy)
{
    return conserved_half_step_parts(s, ops, ix, iy).value();
}

// Relative mismatch |<Af,g> - <f,A*g>| / (|f||g| + floor) for one pair.
template <VectorLike X, VectorLike Y>
double adjoint_residual(const X& f, const Y& g, const OperatorPair<X, Y>& ops,
                        const InnerProduct<X>& ix, const InnerProduct<Y>& iy, double floor = 1e-300)
{
    const double lhs = iy(ops.apply_A(f), g);
    const double rhs = ix(f, ops.apply_Astar(g));
    const double scale = std::sqrt(ix(f, f)) * std::sqrt(iy(g, g)) + floor;
    return std::abs(lhs - rhs) / scale;
}

// Max residual over random pairs. The samplers draw f and g; every other
// trial replaces g by A f so that a sign error on A* cannot hide behind the
// near-orthogonality of random vectors.
template <VectorLike X, VectorLike Y, class Rng>
double check_adjointness(const OperatorPair<X, Y>& ops, const InnerProduct<X>& ix, const InnerProduct<Y>& iy,
                         int trials, const std::function<X(Rng&)>& sample_x,
                         const std::function<Y(Rng&)>& sample_y, Rng& rng)
{
    if (trials < 1) throw std::invalid_argument("check_adjointness: trials must be >= 1");
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        X f = sample_x(rng);
        Y g = sample_y(rng);
        if (t % 2 == 1) g += ops.apply_A(f);
        worst = std::max(worst, adjoint_residual(f, g, ops, ix, iy));
    }
    return worst;
}

}  // namespace mimetic::core
