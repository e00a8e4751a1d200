#include "mimetic/wave3d.hpp"

#include "mimetic/operators3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mimetic::wave3d {
namespace {

using namespace mimetic3d;
using std::numbers::pi;

double stencil_bound(const Grid3& g)
{
    double s = 0.0;
    for (int a = 0; a < 3; ++a) s += 1.0 / (g.h(a) * g.h(a));
    return 2.0 * std::sqrt(s);
}

void check_guarantee(const Star3& m)
{
    const bool full = m.A.mode == MatrixMode::full || m.B.mode == MatrixMode::full;
    if (full && m.guarantee)
        throw ConfigError("wave3d: full-matrix materials are not allowed in a conserved-quantity guaranteed run");
}

core::InnerProduct<NodeField> node_ip(const Star3& m)
{
    return [&m](const NodeField& a, const NodeField& b) { return inner3(a, b, m); };
}
core::InnerProduct<DualFaceField> dual_face_ip(const Star3& m)
{
    return [&m](const DualFaceField& a, const DualFaceField& b) { return inner3(a, b, m); };
}
core::InnerProduct<EdgeField> edge_ip(const Star3& m)
{
    return [&m](const EdgeField& a, const EdgeField& b) { return inner3(a, b, m); };
}
core::InnerProduct<DualEdgeField> dual_edge_ip(const Star3& m)
{
    return [&m](const DualEdgeField& a, const DualEdgeField& b) { return inner3(a, b, m); };
}

double interior_l2(const Array3& a, const Grid3& g, bool skip_surface)
{
    const auto sh = a.shape();
    double s = 0.0;
    for (int k = 0; k < sh[2]; ++k)
        for (int j = 0; j < sh[1]; ++j)
            for (int i = 0; i < sh[0]; ++i) {
                if (skip_surface && (i == 0 || j == 0 || k == 0 || i == sh[0] - 1 || j == sh[1] - 1 || k == sh[2] - 1))
                    continue;
                s += a(i, j, k) * a(i, j, k);
            }
    return std::sqrt(s * g.dV());
}

}  // namespace

ScalarOps scalar_operators(const Star3& m)
{
    check_guarantee(m);
    ScalarOps ops;
    ops.apply_A = [&m](const NodeField& s) { return star_A(grad3(s), m); };
    ops.apply_Astar = [&m](const DualFaceField& v) {
        NodeField out = star_a_inv(div3_star(v), m);
        pin_boundary(out);
        out *= -1.0;
        return out;
    };
    ops.norm_bound_A = wave_speed_bound(m, Physics::scalar_wave) * stencil_bound(m.grid);
    ops.norm_bound_Astar = ops.norm_bound_A;
    return ops;
}

MaxwellOps maxwell_operators(const Star3& m)
{
    check_guarantee(m);
    MaxwellOps ops;
    ops.apply_A = [&m](const EdgeField& e) {
        DualEdgeField h = star_B_inv(curl3(e), m);
        h *= -1.0;
        return h;
    };
    ops.apply_Astar = [&m](const DualEdgeField& h) {
        EdgeField e = star_A_inv(curl3_star(h), m);
        pin_boundary(e);
        e *= -1.0;
        return e;
    };
    ops.norm_bound_A = wave_speed_bound(m, Physics::maxwell) * stencil_bound(m.grid);
    ops.norm_bound_Astar = ops.norm_bound_A;
    return ops;
}

void scalar_wave_step(ScalarWaveState3& s, const Star3& m) { core::system_step(s, scalar_operators(m)); }

void maxwell_step(MaxwellState3& s, const Star3& m) { core::system_step(s, maxwell_operators(m)); }

DualFaceField scalar_wave_init_v(const NodeField& s0, const DualFaceField& v0, const Star3& m, double dt)
{
    return core::init_g_half(s0, v0, scalar_operators(m), dt, core::HalfStepInit::oscillator_taylor);
}

ScalarWaveState3 scalar_state(const NodeField& s0, const DualFaceField& v_half, const Star3& m, double dt)
{
    NodeField s = s0;
    pin_boundary(s);
    return core::make_state(s, v_half, scalar_operators(m), dt);
}

MaxwellState3 maxwell_state(const EdgeField& E0, const DualEdgeField& H_half, const Star3& m, double dt)
{
    EdgeField e = E0;
    pin_boundary(e);
    return core::make_state(e, H_half, maxwell_operators(m), dt);
}

core::Conserved scalar_conserved_n(const ScalarWaveState3& s, const Star3& m)
{
    return core::conserved_full_parts(s, scalar_operators(m), node_ip(m), dual_face_ip(m));
}

core::Conserved scalar_conserved_half(const ScalarWaveState3& s, const Star3& m)
{
    return core::conserved_half_step_parts(s, scalar_operators(m), node_ip(m), dual_face_ip(m));
}

core::Conserved maxwell_conserved_n(const MaxwellState3& s, const Star3& m)
{
    return core::conserved_full_parts(s, maxwell_operators(m), edge_ip(m), dual_edge_ip(m));
}

core::Conserved maxwell_conserved_half(const MaxwellState3& s, const Star3& m)
{
    return core::conserved_half_step_parts(s, maxwell_operators(m), edge_ip(m), dual_edge_ip(m));
}

DivergenceAudit divergence_audit(const MaxwellState3& s, const Star3& m)
{
    const Grid3& g = m.grid;
    const bool bounded = g.boundary == Boundary::bounded;
    DivergenceAudit a;
    a.divE = interior_l2(div3_star(star_A(s.f, m))[0], g, bounded);
    a.divH = interior_l2(div3(star_B(s.g_half, m))[0], g, false);
    return a;
}

double wave_speed_bound(const Star3& m, Physics physics)
{
    if (physics == Physics::scalar_wave) return std::sqrt(m.A_diag_max() / m.a_min());
    return 1.0 / std::sqrt(m.A_diag_min() * m.B_diag_min());
}

double suggest_dt(const Star3& m, double safety, Physics physics)
{
    if (!(safety > 0.0)) throw ConfigError("suggest_dt: safety must be positive");
    return safety * 2.0 / (wave_speed_bound(m, physics) * stencil_bound(m.grid));
}

double cavity_s(double x, double y, double z, double t, double c)
{
    return std::cos(c * std::sqrt(3.0) * pi * t) * std::sin(pi * x) * std::sin(pi * y) * std::sin(pi * z);
}

void cavity_maxwell_fields(double t, EdgeField& E, DualEdgeField* H)
{
    const double w = std::sqrt(2.0) * pi;
    E.fill(0, [](double, double, double) { return 0.0; });
    E.fill(1, [](double, double, double) { return 0.0; });
    E.fill(2, [&](double x, double y, double) { return std::sin(pi * x) * std::sin(pi * y) * std::cos(w * t); });
    if (!H) return;
    H->fill(0, [&](double x, double y, double) { return -(pi / w) * std::sin(pi * x) * std::cos(pi * y) * std::sin(w * t); });
    H->fill(1, [&](double x, double y, double) { return (pi / w) * std::cos(pi * x) * std::sin(pi * y) * std::sin(w * t); });
    H->fill(2, [](double, double, double) { return 0.0; });
}

namespace {

template <class State, class SampleFn, class DivFn>
void drive(State& st, std::int64_t steps, int record_every, Run3& run, SampleFn sample, DivFn div_scale,
           const std::function<void(State&)>& step)
{
    Sample3 first = sample(st);
    run.series.push_back(first);
    run.min_c_half = first.chalf.value();
    const double c0n = first.cn.value(), c0h = first.chalf.value();
    const double scale = div_scale(st);
    for (std::int64_t n = 0; n < steps; ++n) {
        step(st);
        const bool rec = record_every > 0 && (st.step % record_every == 0 || st.step == steps);
        if (!rec) continue;
        Sample3 smp = sample(st);
        run.drift_n = std::max(run.drift_n, std::abs(smp.cn.value() - c0n) / std::abs(c0n));
        run.drift_half = std::max(run.drift_half, std::abs(smp.chalf.value() - c0h) / std::abs(c0h));
        run.div_drift = std::max({run.div_drift, std::abs(smp.div.divE - first.div.divE) / scale,
                                  std::abs(smp.div.divH - first.div.divH) / scale});
        run.min_c_half = std::min(run.min_c_half, smp.chalf.value());
        run.series.push_back(smp);
    }
}

}  // namespace

Run3 run_scalar_cavity(const Star3& m, double dt, std::int64_t steps, int record_every, ScalarWaveState3* final_state)
{
    const Grid3& g = m.grid;
    const double c = std::sqrt(m.A_diag_max() / m.a_max());
    NodeField s0(g);
    s0.fill(0, [c](double x, double y, double z) { return cavity_s(x, y, z, 0.0, c); });
    pin_boundary(s0);
    DualFaceField v0(g);
    ScalarWaveState3 st = scalar_state(s0, scalar_wave_init_v(s0, v0, m, dt), m, dt);
    const ScalarOps ops = scalar_operators(m);
    Run3 run;
    drive(
        st, steps, record_every, run,
        [&](const ScalarWaveState3& x) {
            Sample3 smp;
            smp.step = x.step;
            smp.t = x.step * dt;
            smp.cn = scalar_conserved_n(x, m);
            smp.chalf = scalar_conserved_half(x, m);
            return smp;
        },
        [](const ScalarWaveState3&) { return 1.0; },
        std::function<void(ScalarWaveState3&)>([&](ScalarWaveState3& x) { core::system_step(x, ops); }));
    NodeField exact(g);
    const double T = steps * dt;
    exact.fill(0, [&](double x, double y, double z) { return cavity_s(x, y, z, T, c); });
    pin_boundary(exact);
    run.final_error = (st.f - exact).max_abs();
    if (final_state) *final_state = st;
    return run;
}

Run3 run_maxwell_cavity(const Star3& m, double dt, std::int64_t steps, int record_every, MaxwellState3* final_state)
{
    const Grid3& g = m.grid;
    EdgeField E0(g);
    cavity_maxwell_fields(0.0, E0);
    pin_boundary(E0);
    const MaxwellOps ops = maxwell_operators(m);
    DualEdgeField H0(g);
    MaxwellState3 st = maxwell_state(E0, core::init_g_half(E0, H0, ops, dt), m, dt);
    Run3 run;
    drive(
        st, steps, record_every, run,
        [&](const MaxwellState3& x) {
            Sample3 smp;
            smp.step = x.step;
            smp.t = x.step * dt;
            smp.cn = maxwell_conserved_n(x, m);
            smp.chalf = maxwell_conserved_half(x, m);
            smp.div = divergence_audit(x, m);
            return smp;
        },
        [&](const MaxwellState3& x) {
            const double fs = std::max(norm3(x.f, m), norm3(x.g_half, m));
            return fs > 0.0 ? fs / g.h_min() : 1.0;
        },
        std::function<void(MaxwellState3&)>([&](MaxwellState3& x) { core::system_step(x, ops); }));
    EdgeField exact(g);
    cavity_maxwell_fields(steps * dt, exact);
    pin_boundary(exact);
    run.final_error = (st.f - exact).max_abs();
    if (final_state) *final_state = st;
    return run;
}

}  // namespace mimetic::wave3d
