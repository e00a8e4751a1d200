#pragma once
// Mass-conserving, sign-preserving 1D transport and diffusion.
//
// Cells c = 0..M-1 hold rho at cell centres; edges i = 0..M carry v (or D), edge
// i sitting between cells i-1 and i. Outside the domain rho is zero, so nothing
// flows in. Material pushed out through edge 0 or M is added to left_domain, so
// mass() + left_domain is the audited total.

#include <cstdint>
#include <vector>

namespace mimetic::positivity {

struct TransportState {
    std::vector<double> rho;  // M cells
    std::vector<double> v;    // M + 1 edges
    double dx = 1.0;
    double dt = 0.0;
    double left_domain = 0.0;
    std::int64_t step = 0;

    double mass() const;
    void validate() const;
};

struct DiffusionState {
    std::vector<double> rho;  // M cells
    std::vector<double> D;    // M + 1 edges, D >= 0
    double dx = 1.0;
    double dt = 0.0;
    double left_domain = 0.0;
    std::int64_t step = 0;

    double mass() const;
    void validate() const;
};

struct StepReport {
    bool guard_ok = true;    // the published step bound held
    bool outflow_ok = true;  // no cell could lose more than it holds (transport only)
    bool warning() const { return !guard_ok || !outflow_ok; }
};

// V dt/dx with V = max |v|.
double transport_courant(const std::vector<double>& v, double dx, double dt);
// Largest fraction of a cell's content that leaves it in one step:
// max_c (max(-v_c, 0) + max(v_{c+1}, 0)) dt/dx. At most 2 V dt/dx.
double transport_outflow_fraction(const std::vector<double>& v, double dx, double dt);
// max_i (D_i + D_{i+1}) dt/dx^2 over cells.
double diffusion_number(const std::vector<double>& D, double dx, double dt);

// True iff the given step number is <= 1.
bool positivity_guard(double number);

// Upwind flux on every edge, chosen by the sign of v without branching.
StepReport transport_step(TransportState& s);
// Three-point explicit update in the nonnegative-weight form.
StepReport diffusion_step(DiffusionState& s);

// One Lax-Wendroff step for rho_t + a rho_x = 0 with Courant number nu, zero
// ghosts. Used only to show a scheme that does not keep rho >= 0.
std::vector<double> lax_wendroff_step(const std::vector<double>& rho, double nu);

// Helpers for the standard runs on [-1, 1] (x_c = -1 + (c + 1/2) dx).
std::vector<double> square_wave(int cells, int lo, int hi, double height = 1.0);
std::vector<double> edge_velocity(int cells, double (*fn)(double x), double x0 = -1.0, double x1 = 1.0);

}  // namespace mimetic::positivity
