#pragma once
// 1D wave equation on [a, b] with u pinned to zero at both ends.
//
//   CMP:  u_t = c v_x,          v_t = c u_x
//   VMP:  u_t = (1/rho) v_x,    v_t = tau u_x
//
// u lives on the Nx primal points, v on the Nx-1 dual points (cell centres).
// Both forms are instances of the leapfrog core with f = u, g = v:
//   CMP  A = c grad1,    A* = -c div1
//   VMP  A = tau grad1,  A* = -(1/rho) div1

#include "mimetic/leapfrog.hpp"
#include "mimetic/vec.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mimetic::wave1d {

struct Grid1D {
    double a = 0.0;
    double b = 1.0;
    int Nx = 3;
    double T = 1.0;
    std::int64_t Nt = 1;

    double dx() const { return (b - a) / (Nx - 1); }
    double dt() const { return T / static_cast<double>(Nt); }
    double xp(int i) const { return a + i * dx(); }
    double xd(int i) const { return a + (i + 0.5) * dx(); }
    int dual_count() const { return Nx - 1; }
    void validate() const;
};

// rho at primal points, tau at dual points. For a CMP problem `c` is the
// speed and rho = 1/c, tau = c are filled in so the VMP path can run it too.
struct Materials1D {
    Vec rho;
    Vec tau;
    bool cmp = false;
    double c = 0.0;
    std::string label;

    static Materials1D constant_speed(const Grid1D& g, double c);
    static Materials1D sampled(const Grid1D& g, const std::function<double(double)>& rho_fn,
                               const std::function<double(double)>& tau_fn, std::string label = "custom");
    // Throws ConfigError on nonpositive entries, ShapeError on wrong sizes.
    void validate(const Grid1D& g) const;
};

// Named presets on [0, 1]. Grammar: name followed by key=value tokens.
//   constant
//   cmp c=1
//   linear target=rho|tau sign=+|-          1 +- x/2
//   bump p=2 q=2                            rho = 1+(2x(1-x))^p, tau = 1+(2x(1-x))^q
//   piecewise-linear target=rho|tau a=0.25 b=0.75 c=1 d=2
//   jump target=rho|tau dir=up|down         1 +- H(x-1/2)/2, H(0) = 1
Materials1D make_preset(std::string_view spec, const Grid1D& g);
// Every preset exercised by the conservation suite.
std::vector<std::string> standard_presets();

using WaveState1D = core::SystemState<Vec, Vec>;
using Ops1D = core::OperatorPair<Vec, Vec>;

// out_i = (u_{i+1} - u_i)/dx, length Nx-1.
Vec grad1(const Vec& u, double dx);
// out_i = (v_{i+1/2} - v_{i-1/2})/dx on interior points, zero at both ends.
Vec div1(const Vec& v, double dx);

Ops1D cmp_operators(double c, const Grid1D& g);
Ops1D vmp_operators(const Materials1D& m, const Grid1D& g);

void cmp_step(WaveState1D& s, double c, const Grid1D& g);
void vmp_step(WaveState1D& s, const Materials1D& m, const Grid1D& g);

double weighted_inner_rho(const Vec& u1, const Vec& u2, const Materials1D& m, const Grid1D& g);
double weighted_inner_tau(const Vec& v1, const Vec& v2, const Materials1D& m, const Grid1D& g);
// Material-free sums with weight dx, used for CMP.
double plain_inner(const Vec& a, const Vec& b, const Grid1D& g);

core::InnerProduct<Vec> rho_product(const Materials1D& m, const Grid1D& g);
core::InnerProduct<Vec> tau_product(const Materials1D& m, const Grid1D& g);
core::InnerProduct<Vec> plain_product(const Grid1D& g);

double conserved_n_1d(const WaveState1D& s, const Materials1D& m, const Grid1D& g);
double conserved_half_1d(const WaveState1D& s, const Materials1D& m, const Grid1D& g);
double conserved_n_cmp(const WaveState1D& s, double c, const Grid1D& g);
double conserved_half_cmp(const WaveState1D& s, double c, const Grid1D& g);

// sqrt(max tau / min rho); c for CMP.
double cfl_speed(const Materials1D& m);

// p_k = (ln Er_k - ln Er_{k+1}) / (ln dx_k - ln dx_{k+1}) for (dx, Er) pairs.
std::vector<double> estimate_order(const std::vector<std::pair<double, double>>& dx_err);
// Least-squares slope of ln Er against ln dx over all entries.
double fit_order(const std::vector<std::pair<double, double>>& dx_err);

struct RefineError {
    std::vector<double> x;
    std::vector<double> er;          // u_fine - u_coarse at coarse points
    std::vector<double> er_over_dx2; // er / dx_coarse^2
    double max_abs = 0.0;
    double dx = 0.0;
};

// Fine grid must have Nx_f = 2(Nx_c - 1) + 1 and Nt_f = 2 Nt_c on the same interval.
RefineError refine_compare(const Vec& u_coarse, const Grid1D& coarse, const Vec& u_fine, const Grid1D& fine);

Vec v_at_final_time(const Vec& v_half_last, const Vec& v_half_prev);

// Analytic CMP mode on [0, 1]: u = cos(m pi c t) sin(m pi x), v = sin(m pi c t) cos(m pi x).
double mode_u(int m, double c, double x, double t);
double mode_v(int m, double c, double x, double t);

enum class Form { cmp, vmp };
enum class Init1D {
    exact_mode,  // u0 and v(dt/2) from the analytic mode
    taylor_sine  // u0 = sin(m pi x), v0 = 0, v^{1/2} by the oscillator-form Taylor step
};

struct Problem1D {
    Grid1D grid;
    Materials1D mat;
    Form form = Form::cmp;
    Init1D init = Init1D::exact_mode;
    int m = 1;
};

WaveState1D initial_state(const Problem1D& p);
Ops1D operators(const Problem1D& p);

struct Sample1D {
    std::int64_t step = 0;
    double t = 0.0;
    core::Conserved cn;
    core::Conserved chalf;
    double max_abs_u = 0.0;
};

struct Run1D {
    WaveState1D final_state;
    std::vector<Sample1D> series;  // one entry per recorded step, step 0 included
    double drift_n = 0.0;          // max |C^n - C^0| / |C^0|
    double drift_half = 0.0;
    double max_abs_u = 0.0;
    bool diverged = false;         // max |u| passed the stop threshold
};

// Runs Nt steps. Conserved quantities are sampled every `record_every` steps
// (0 disables). Stops early once max|u| exceeds stop_above.
Run1D simulate(const Problem1D& p, int record_every = 1, double stop_above = 1e300);

// Grid-refinement study. Nx = 2^k + 1 and Nt = 2^(k+f) on [0, 1], so dt/dx is
// the same for every k. A positive `courant` instead sets Nt = T / (courant dx),
// which must come out integral. With `analytic` the error is measured against the CMP
// mode; otherwise against the solution on the next finer grid.
struct ConvergenceSpec {
    std::string preset = "cmp c=1";
    Form form = Form::cmp;
    Init1D init = Init1D::exact_mode;
    double T = 1.0;
    int f = 1;
    double courant = 0.0;
    int k_min = 4;
    int k_max = 8;
    int m = 1;
    bool analytic = true;
};

struct ConvergenceRow {
    int k = 0;
    int Nx = 0;
    double dx = 0.0;
    double er = 0.0;
    double p = 0.0;  // order against the previous row; NaN on the first
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double fitted_order = 0.0;
    RefineError finest;  // pointwise error on the finest measured grid
};

ConvergenceTable convergence_study(const ConvergenceSpec& spec);

}  // namespace mimetic::wave1d
