#include "mimetic/positivity.hpp"

#include "mimetic/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mimetic::positivity {
namespace {

double sum(const std::vector<double>& x)
{
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

void check_common(std::size_t cells, std::size_t edges, double dx, double dt, const char* what)
{
    if (cells == 0) throw ConfigError(std::string(what) + ": need at least one cell");
    if (edges != cells + 1) throw ShapeError(std::string(what) + ": edge array must have one more entry than rho");
    if (!(dx > 0.0)) throw ConfigError(std::string(what) + ": dx must be positive");
    if (!(dt >= 0.0)) throw ConfigError(std::string(what) + ": dt must be nonnegative");
}

}  // namespace

double TransportState::mass() const { return sum(rho) * dx; }

void TransportState::validate() const { check_common(rho.size(), v.size(), dx, dt, "transport"); }

double DiffusionState::mass() const { return sum(rho) * dx; }

void DiffusionState::validate() const
{
    check_common(rho.size(), D.size(), dx, dt, "diffusion");
    for (double d : D)
        if (!(d >= 0.0)) throw ConfigError("diffusion: D must be nonnegative");
}

double transport_courant(const std::vector<double>& v, double dx, double dt)
{
    double V = 0.0;
    for (double x : v) V = std::max(V, std::abs(x));
    return V * dt / dx;
}

double transport_outflow_fraction(const std::vector<double>& v, double dx, double dt)
{
    double worst = 0.0;
    for (std::size_t c = 0; c + 1 < v.size(); ++c)
        worst = std::max(worst, std::max(-v[c], 0.0) + std::max(v[c + 1], 0.0));
    return worst * dt / dx;
}

double diffusion_number(const std::vector<double>& D, double dx, double dt)
{
    double worst = 0.0;
    for (std::size_t c = 0; c + 1 < D.size(); ++c) worst = std::max(worst, D[c] + D[c + 1]);
    return worst * dt / (dx * dx);
}

bool positivity_guard(double number) { return number <= 1.0; }

StepReport transport_step(TransportState& s)
{
    s.validate();
    const std::size_t M = s.rho.size();
    const double r = s.dt / s.dx;
    StepReport rep;
    rep.guard_ok = positivity_guard(transport_courant(s.v, s.dx, s.dt));
    rep.outflow_ok = positivity_guard(transport_outflow_fraction(s.v, s.dx, s.dt));

    // flux[i] > 0 moves material from cell i-1 to cell i.
    std::vector<double> flux(M + 1);
    for (std::size_t i = 0; i <= M; ++i) {
        const double nu = s.v[i] * r;
        const double left = i > 0 ? s.rho[i - 1] : 0.0;
        const double right = i < M ? s.rho[i] : 0.0;
        flux[i] = std::max(nu, 0.0) * left + std::min(nu, 0.0) * right;
    }
    // Outflow is removed before inflow is added, so a cell emptied by a unit
    // Courant number ends up holding exactly its upwind neighbour's value.
    for (std::size_t c = 0; c < M; ++c) {
        const double out = std::max(flux[c + 1], 0.0) + std::max(-flux[c], 0.0);
        const double in = std::max(flux[c], 0.0) + std::max(-flux[c + 1], 0.0);
        s.rho[c] = (s.rho[c] - out) + in;
    }
    s.left_domain += (std::max(flux[M], 0.0) + std::max(-flux[0], 0.0)) * s.dx;
    ++s.step;
    return rep;
}

StepReport diffusion_step(DiffusionState& s)
{
    s.validate();
    const std::size_t M = s.rho.size();
    const double r = s.dt / (s.dx * s.dx);
    StepReport rep;
    rep.guard_ok = positivity_guard(diffusion_number(s.D, s.dx, s.dt));

    std::vector<double> next(M);
    for (std::size_t c = 0; c < M; ++c) {
        const double left = c > 0 ? s.rho[c - 1] : 0.0;
        const double right = c + 1 < M ? s.rho[c + 1] : 0.0;
        const double stay = 1.0 - r * (s.D[c] + s.D[c + 1]);
        next[c] = stay * s.rho[c] + r * s.D[c] * left + r * s.D[c + 1] * right;
    }
    s.left_domain += r * (s.D[0] * s.rho[0] + s.D[M] * s.rho[M - 1]) * s.dx;
    s.rho = std::move(next);
    ++s.step;
    return rep;
}

std::vector<double> lax_wendroff_step(const std::vector<double>& rho, double nu)
{
    const std::size_t M = rho.size();
    std::vector<double> out(M);
    for (std::size_t i = 0; i < M; ++i) {
        const double l = i > 0 ? rho[i - 1] : 0.0;
        const double r = i + 1 < M ? rho[i + 1] : 0.0;
        out[i] = rho[i] - 0.5 * nu * (r - l) + 0.5 * nu * nu * (r - 2.0 * rho[i] + l);
    }
    return out;
}

std::vector<double> square_wave(int cells, int lo, int hi, double height)
{
    if (cells < 1 || lo < 0 || hi > cells || lo > hi) throw ConfigError("square_wave: bad index range");
    std::vector<double> rho(static_cast<std::size_t>(cells), 0.0);
    for (int c = lo; c < hi; ++c) rho[static_cast<std::size_t>(c)] = height;
    return rho;
}

std::vector<double> edge_velocity(int cells, double (*fn)(double x), double x0, double x1)
{
    if (cells < 1 || !(x1 > x0)) throw ConfigError("edge_velocity: bad grid");
    const double dx = (x1 - x0) / cells;
    std::vector<double> v(static_cast<std::size_t>(cells) + 1);
    for (int i = 0; i <= cells; ++i) v[static_cast<std::size_t>(i)] = fn(x0 + i * dx);
    return v;
}

}  // namespace mimetic::positivity
