#pragma once
// 3D scalar wave and Maxwell solvers on the mimetic grid.
//
// Scalar wave, s on nodes, v on dual faces:
//   s^{n+1} = s^n + dt a^-1 D* v^{n+1/2},   v^{n+3/2} = v^{n+1/2} + dt A G s^{n+1}
// Maxwell, E on edges, H on dual edges, with A = eps and B = mu in the Star3:
//   E^{n+1} = E^n + dt eps^-1 R* H^{n+1/2},  H^{n+3/2} = H^{n+1/2} - dt mu^-1 R E^{n+1}
//
// On bounded boxes s is pinned to zero on the surface and tangential E is
// pinned (PEC).

#include "mimetic/inner3.hpp"
#include "mimetic/leapfrog.hpp"

#include <cstdint>
#include <vector>

namespace mimetic::wave3d {

using mimetic3d::DualEdgeField;
using mimetic3d::DualFaceField;
using mimetic3d::EdgeField;
using mimetic3d::Grid3;
using mimetic3d::NodeField;
using mimetic3d::Star3;

using ScalarOps = core::OperatorPair<NodeField, DualFaceField>;
using ScalarWaveState3 = core::SystemState<NodeField, DualFaceField>;
using MaxwellOps = core::OperatorPair<EdgeField, DualEdgeField>;
using MaxwellState3 = core::SystemState<EdgeField, DualEdgeField>;

// The operator pairs hold a reference to m, which must outlive them.
// Core form: A = A G, A* = -a^-1 D* (pinned).
ScalarOps scalar_operators(const Star3& m);
// Core form: A = -mu^-1 R, A* = -eps^-1 R* (pinned).
MaxwellOps maxwell_operators(const Star3& m);

void scalar_wave_step(ScalarWaveState3& s, const Star3& m);
void maxwell_step(MaxwellState3& s, const Star3& m);

// v0 + (dt/2) A G s0 + 1/2 (dt/2)^2 A G (a^-1 D* v0)
DualFaceField scalar_wave_init_v(const NodeField& s0, const DualFaceField& v0, const Star3& m, double dt);

ScalarWaveState3 scalar_state(const NodeField& s0, const DualFaceField& v_half, const Star3& m, double dt);
MaxwellState3 maxwell_state(const EdgeField& E0, const DualEdgeField& H_half, const Star3& m, double dt);

core::Conserved scalar_conserved_n(const ScalarWaveState3& s, const Star3& m);
core::Conserved scalar_conserved_half(const ScalarWaveState3& s, const Star3& m);
core::Conserved maxwell_conserved_n(const MaxwellState3& s, const Star3& m);
core::Conserved maxwell_conserved_half(const MaxwellState3& s, const Star3& m);

struct DivergenceAudit {
    double divE = 0.0;  // |D*(eps E)| over interior nodes
    double divH = 0.0;  // |D(mu H)| over cells
};

DivergenceAudit divergence_audit(const MaxwellState3& s, const Star3& m);

enum class Physics { scalar_wave, maxwell };

// dt = safety * 2 / N with N = s_max * 2 * sqrt(1/dx^2 + 1/dy^2 + 1/dz^2).
// Scalar wave: s_max = sqrt(max A / min a). Maxwell: s_max = 1/sqrt(min eps * min mu).
double suggest_dt(const Star3& m, double safety, Physics physics = Physics::scalar_wave);
double wave_speed_bound(const Star3& m, Physics physics);

// Cavity modes on [0,1]^3 with constant materials.
// Scalar: s = cos(c sqrt(3) pi t) sin(pi x) sin(pi y) sin(pi z).
double cavity_s(double x, double y, double z, double t, double c = 1.0);
// Maxwell (1,1,0) mode, eps = mu = 1: Ez = sin(pi x) sin(pi y) cos(w t), w = sqrt(2) pi.
void cavity_maxwell_fields(double t, EdgeField& E, DualEdgeField* H = nullptr);

struct Sample3 {
    std::int64_t step = 0;
    double t = 0.0;
    core::Conserved cn;
    core::Conserved chalf;
    DivergenceAudit div;
};

struct Run3 {
    std::vector<Sample3> series;
    double drift_n = 0.0;
    double drift_half = 0.0;
    double div_drift = 0.0;   // max |divX_n - divX_0| / (field scale / h)
    double min_c_half = 0.0;
    double final_error = 0.0; // max abs error against the cavity mode, if one was run
};

// Cavity-mode runs from the exact t = 0 data with the Taylor half step. The
// final state is copied out when a destination is given.
Run3 run_scalar_cavity(const Star3& m, double dt, std::int64_t steps, int record_every = 1,
                       ScalarWaveState3* final_state = nullptr);
Run3 run_maxwell_cavity(const Star3& m, double dt, std::int64_t steps, int record_every = 1,
                        MaxwellState3* final_state = nullptr);

}  // namespace mimetic::wave3d
