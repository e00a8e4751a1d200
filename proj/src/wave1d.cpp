#include "mimetic/wave1d.hpp"

#include "mimetic/error.hpp"
#include "mimetic/simd.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace mimetic::wave1d {
namespace {

using std::numbers::pi;

double heaviside(double x) { return x >= 0.0 ? 1.0 : 0.0; }

std::map<std::string, std::string> parse_tokens(std::string_view spec, std::string& name)
{
    std::istringstream in{std::string(spec)};
    std::map<std::string, std::string> kv;
    if (!(in >> name)) throw ConfigError("material preset: empty spec");
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("material preset '" + std::string(spec) + "': expected key=value, got '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
}

double get_num(const std::map<std::string, std::string>& kv, const std::string& key, double fallback)
{
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        std::size_t used = 0;
        double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("material preset: '" + key + "' is not a number: " + it->second);
    }
}

std::string get_word(const std::map<std::string, std::string>& kv, const std::string& key, const std::string& fallback)
{
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, std::string>& kv, std::initializer_list<const char*> allowed)
{
    for (const auto& [k, v] : kv) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw ConfigError("material preset: unknown key '" + k + "'");
    }
}

bool target_is_rho(const std::map<std::string, std::string>& kv)
{
    std::string t = get_word(kv, "target", "rho");
    if (t != "rho" && t != "tau") throw ConfigError("material preset: target must be rho or tau");
    return t == "rho";
}

}  // namespace

void Grid1D::validate() const
{
    if (Nx < 3) throw ConfigError("Grid1D: Nx must be at least 3");
    if (!(b > a)) throw ConfigError("Grid1D: need b > a");
    if (Nt < 1) throw ConfigError("Grid1D: Nt must be at least 1");
    if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("Grid1D: T must be positive");
}

Materials1D Materials1D::constant_speed(const Grid1D& g, double c)
{
    if (!(c > 0.0)) throw ConfigError("CMP speed c must be positive");
    Materials1D m = sampled(g, [c](double) { return 1.0 / c; }, [c](double) { return c; }, "cmp c=" + std::to_string(c));
    m.cmp = true;
    m.c = c;
    return m;
}

Materials1D Materials1D::sampled(const Grid1D& g, const std::function<double(double)>& rho_fn,
                                 const std::function<double(double)>& tau_fn, std::string label)
{
    Materials1D m;
    m.rho = Vec(static_cast<std::size_t>(g.Nx));
    m.tau = Vec(static_cast<std::size_t>(g.dual_count()));
    for (int i = 0; i < g.Nx; ++i) m.rho[i] = rho_fn(g.xp(i));
    for (int i = 0; i < g.dual_count(); ++i) m.tau[i] = tau_fn(g.xd(i));
    m.label = std::move(label);
    m.validate(g);
    return m;
}

void Materials1D::validate(const Grid1D& g) const
{
    if (rho.size() != static_cast<std::size_t>(g.Nx) || tau.size() != static_cast<std::size_t>(g.dual_count()))
        throw ShapeError("Materials1D: rho needs Nx entries and tau Nx-1");
    for (double r : rho)
        if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("Materials1D: rho must be positive");
    for (double t : tau)
        if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("Materials1D: tau must be positive");
    if (cmp && !(c > 0.0)) throw ConfigError("Materials1D: CMP speed must be positive");
}

Materials1D make_preset(std::string_view spec, const Grid1D& g)
{
    std::string name;
    auto kv = parse_tokens(spec, name);
    const std::string label(spec);
    auto one = [](double) { return 1.0; };

    if (name == "constant") {
        reject_unknown(kv, {});
        return Materials1D::sampled(g, one, one, label);
    }
    if (name == "cmp") {
        reject_unknown(kv, {"c"});
        Materials1D m = Materials1D::constant_speed(g, get_num(kv, "c", 1.0));
        m.label = label;
        return m;
    }
    if (name == "linear") {
        reject_unknown(kv, {"target", "sign"});
        std::string sign = get_word(kv, "sign", "+");
        if (sign != "+" && sign != "-") throw ConfigError("linear preset: sign must be + or -");
        const double s = sign == "+" ? 0.5 : -0.5;
        auto lin = [s](double x) { return 1.0 + s * x; };
        return target_is_rho(kv) ? Materials1D::sampled(g, lin, one, label) : Materials1D::sampled(g, one, lin, label);
    }
    if (name == "bump") {
        reject_unknown(kv, {"p", "q"});
        const double p = get_num(kv, "p", 2.0);
        const double q = get_num(kv, "q", 2.0);
        return Materials1D::sampled(
            g, [p](double x) { return 1.0 + std::pow(2.0 * x * (1.0 - x), p); },
            [q](double x) { return 1.0 + std::pow(2.0 * x * (1.0 - x), q); }, label);
    }
    if (name == "piecewise-linear") {
        reject_unknown(kv, {"target", "a", "b", "c", "d"});
        const double a = get_num(kv, "a", 0.25), b = get_num(kv, "b", 0.75);
        const double c = get_num(kv, "c", 1.0), d = get_num(kv, "d", 2.0);
        if (!(a < b)) throw ConfigError("piecewise-linear preset: need a < b");
        auto pw = [=](double x) {
            const double ramp = ((a * d - b * c) + (c - d) * x) / (a - b);
            return c * (1.0 - heaviside(x - a)) + d * heaviside(x - b) + ramp * (heaviside(x - a) - heaviside(x - b));
        };
        return target_is_rho(kv) ? Materials1D::sampled(g, pw, one, label) : Materials1D::sampled(g, one, pw, label);
    }
    if (name == "jump") {
        reject_unknown(kv, {"target", "dir"});
        std::string dir = get_word(kv, "dir", "up");
        if (dir != "up" && dir != "down") throw ConfigError("jump preset: dir must be up or down");
        const double s = dir == "up" ? 0.5 : -0.5;
        auto jmp = [s](double x) { return 1.0 + s * heaviside(x - 0.5); };
        return target_is_rho(kv) ? Materials1D::sampled(g, jmp, one, label) : Materials1D::sampled(g, one, jmp, label);
    }
    throw ConfigError("unknown 1D material preset '" + name + "'");
}

std::vector<std::string> standard_presets()
{
    return {
        "constant",
        "linear target=rho sign=+",
        "linear target=rho sign=-",
        "linear target=tau sign=+",
        "linear target=tau sign=-",
        "bump p=1 q=1",
        "bump p=1 q=2",
        "bump p=2 q=1",
        "bump p=2 q=2",
        "piecewise-linear target=rho a=0.25 b=0.75 c=1 d=2",
        "piecewise-linear target=tau a=0.25 b=0.75 c=1 d=2",
        "jump target=rho dir=up",
        "jump target=rho dir=down",
        "jump target=tau dir=up",
        "jump target=tau dir=down",
    };
}

Vec grad1(const Vec& u, double dx)
{
    if (u.size() < 2) throw ShapeError("grad1: need at least 2 primal values");
    Vec out(u.size() - 1);
    simd::kernels().diff(out.data(), u.data() + 1, u.data(), out.size(), 1.0 / dx);
    return out;
}

Vec div1(const Vec& v, double dx)
{
    if (v.size() < 2) throw ShapeError("div1: need at least 2 dual values");
    Vec out(v.size() + 1);
    simd::kernels().diff(out.data() + 1, v.data() + 1, v.data(), v.size() - 1, 1.0 / dx);
    return out;
}

Ops1D cmp_operators(double c, const Grid1D& g)
{
    const double dx = g.dx();
    Ops1D ops;
    ops.apply_A = [c, dx](const Vec& u) { return c * grad1(u, dx); };
    ops.apply_Astar = [c, dx](const Vec& v) { return (-c) * div1(v, dx); };
    ops.norm_bound_A = 2.0 * c / dx;
    ops.norm_bound_Astar = ops.norm_bound_A;
    return ops;
}

Ops1D vmp_operators(const Materials1D& m, const Grid1D& g)
{
    m.validate(g);
    const double dx = g.dx();
    Ops1D ops;
    // Copies keep the closures valid after the caller's materials go away.
    ops.apply_A = [tau = m.tau, dx](const Vec& u) {
        Vec gu = grad1(u, dx);
        simd::kernels().mul(gu.data(), tau.data(), gu.data(), gu.size());
        return gu;
    };
    ops.apply_Astar = [rho = m.rho, dx](const Vec& v) {
        Vec dv = div1(v, dx);
        simd::kernels().div(dv.data(), dv.data(), rho.data(), dv.size());
        return -1.0 * dv;
    };
    ops.norm_bound_A = 2.0 * cfl_speed(m) / dx;
    ops.norm_bound_Astar = ops.norm_bound_A;
    return ops;
}

void cmp_step(WaveState1D& s, double c, const Grid1D& g) { core::system_step(s, cmp_operators(c, g)); }

void vmp_step(WaveState1D& s, const Materials1D& m, const Grid1D& g) { core::system_step(s, vmp_operators(m, g)); }

double weighted_inner_rho(const Vec& u1, const Vec& u2, const Materials1D& m, const Grid1D& g)
{
    if (u1.size() != m.rho.size() || u2.size() != m.rho.size()) throw ShapeError("weighted_inner_rho: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < u1.size(); ++i) s += u1[i] * u2[i] * m.rho[i];
    return s * g.dx();
}

double weighted_inner_tau(const Vec& v1, const Vec& v2, const Materials1D& m, const Grid1D& g)
{
    if (v1.size() != m.tau.size() || v2.size() != m.tau.size()) throw ShapeError("weighted_inner_tau: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < v1.size(); ++i) s += v1[i] * v2[i] / m.tau[i];
    return s * g.dx();
}

double plain_inner(const Vec& a, const Vec& b, const Grid1D& g) { return dot(a, b) * g.dx(); }

core::InnerProduct<Vec> rho_product(const Materials1D& m, const Grid1D& g)
{
    return [m, g](const Vec& a, const Vec& b) { return weighted_inner_rho(a, b, m, g); };
}

core::InnerProduct<Vec> tau_product(const Materials1D& m, const Grid1D& g)
{
    return [m, g](const Vec& a, const Vec& b) { return weighted_inner_tau(a, b, m, g); };
}

core::InnerProduct<Vec> plain_product(const Grid1D& g)
{
    return [g](const Vec& a, const Vec& b) { return plain_inner(a, b, g); };
}

double conserved_n_1d(const WaveState1D& s, const Materials1D& m, const Grid1D& g)
{
    return core::conserved_full(s, vmp_operators(m, g), rho_product(m, g), tau_product(m, g));
}

double conserved_half_1d(const WaveState1D& s, const Materials1D& m, const Grid1D& g)
{
    return core::conserved_half_step(s, vmp_operators(m, g), rho_product(m, g), tau_product(m, g));
}

double conserved_n_cmp(const WaveState1D& s, double c, const Grid1D& g)
{
    return core::conserved_full(s, cmp_operators(c, g), plain_product(g), plain_product(g));
}

double conserved_half_cmp(const WaveState1D& s, double c, const Grid1D& g)
{
    return core::conserved_half_step(s, cmp_operators(c, g), plain_product(g), plain_product(g));
}

double cfl_speed(const Materials1D& m)
{
    if (m.cmp) return m.c;
    if (m.rho.size() == 0 || m.tau.size() == 0) throw ShapeError("cfl_speed: empty materials");
    const double tmax = *std::max_element(m.tau.begin(), m.tau.end());
    const double rmin = *std::min_element(m.rho.begin(), m.rho.end());
    return std::sqrt(tmax / rmin);
}

std::vector<double> estimate_order(const std::vector<std::pair<double, double>>& dx_err)
{
    if (dx_err.size() < 2) throw std::invalid_argument("estimate_order: need at least two entries");
    for (const auto& [dx, er] : dx_err)
        if (!(dx > 0.0) || !(er > 0.0)) throw std::invalid_argument("estimate_order: dx and Er must be positive");
    std::vector<double> p;
    for (std::size_t k = 0; k + 1 < dx_err.size(); ++k) {
        const auto& [dx1, e1] = dx_err[k];
        const auto& [dx2, e2] = dx_err[k + 1];
        p.push_back((std::log(e1) - std::log(e2)) / (std::log(dx1) - std::log(dx2)));
    }
    return p;
}

double fit_order(const std::vector<std::pair<double, double>>& dx_err)
{
    if (dx_err.size() < 2) throw std::invalid_argument("fit_order: need at least two entries");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [dx, er] : dx_err) {
        if (!(dx > 0.0) || !(er > 0.0)) throw std::invalid_argument("fit_order: dx and Er must be positive");
        const double x = std::log(dx), y = std::log(er);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(dx_err.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RefineError refine_compare(const Vec& u_coarse, const Grid1D& coarse, const Vec& u_fine, const Grid1D& fine)
{
    if (fine.Nx != 2 * (coarse.Nx - 1) + 1 || fine.Nt != 2 * coarse.Nt || fine.a != coarse.a || fine.b != coarse.b)
        throw ShapeError("refine_compare: grids are not nested");
    if (u_coarse.size() != static_cast<std::size_t>(coarse.Nx) || u_fine.size() != static_cast<std::size_t>(fine.Nx))
        throw ShapeError("refine_compare: field length does not match grid");
    RefineError r;
    r.dx = coarse.dx();
    const double inv = 1.0 / (r.dx * r.dx);
    for (int i = 0; i < coarse.Nx; ++i) {
        const double e = u_fine[2 * i] - u_coarse[i];
        r.x.push_back(coarse.xp(i));
        r.er.push_back(e);
        r.er_over_dx2.push_back(e * inv);
        r.max_abs = std::max(r.max_abs, std::abs(e));
    }
    return r;
}

Vec v_at_final_time(const Vec& v_half_last, const Vec& v_half_prev) { return 0.5 * (v_half_last + v_half_prev); }

double mode_u(int m, double c, double x, double t) { return std::cos(m * pi * c * t) * std::sin(m * pi * x); }

double mode_v(int m, double c, double x, double t) { return std::sin(m * pi * c * t) * std::cos(m * pi * x); }

Ops1D operators(const Problem1D& p)
{
    if (p.form == Form::cmp) {
        if (!p.mat.cmp) throw ConfigError("CMP form needs constant-speed materials");
        return cmp_operators(p.mat.c, p.grid);
    }
    return vmp_operators(p.mat, p.grid);
}

WaveState1D initial_state(const Problem1D& p)
{
    p.grid.validate();
    p.mat.validate(p.grid);
    if (p.m < 1) throw ConfigError("mode number m must be >= 1");
    const Grid1D& g = p.grid;
    const double dt = g.dt();
    Vec u0(static_cast<std::size_t>(g.Nx));
    for (int i = 1; i + 1 < g.Nx; ++i) u0[i] = std::sin(p.m * pi * g.xp(i));
    Ops1D ops = operators(p);
    Vec vh(static_cast<std::size_t>(g.dual_count()));
    if (p.init == Init1D::exact_mode) {
        // The analytic mode is a CMP solution; with VMP it is only meaningful for rho = 1/c, tau = c.
        const double c = p.mat.cmp ? p.mat.c : 1.0;
        for (int i = 0; i < g.dual_count(); ++i) vh[i] = mode_v(p.m, c, g.xd(i), dt / 2.0);
    } else {
        vh = core::init_g_half(u0, Vec(static_cast<std::size_t>(g.dual_count())), ops, dt);
    }
    return core::make_state(u0, vh, ops, dt);
}

Run1D simulate(const Problem1D& p, int record_every, double stop_above)
{
    Run1D run;
    WaveState1D s = initial_state(p);
    Ops1D ops = operators(p);
    core::InnerProduct<Vec> ix, iy;
    if (p.form == Form::cmp) {
        ix = plain_product(p.grid);
        iy = ix;
    } else {
        ix = rho_product(p.mat, p.grid);
        iy = tau_product(p.mat, p.grid);
    }
    double c0n = 0.0, c0h = 0.0;
    auto record = [&](bool first) {
        Sample1D smp;
        smp.step = s.step;
        smp.t = s.step * s.dt;
        smp.cn = core::conserved_full_parts(s, ops, ix, iy);
        smp.chalf = core::conserved_half_step_parts(s, ops, ix, iy);
        smp.max_abs_u = max_abs(s.f);
        if (first) {
            c0n = smp.cn.value();
            c0h = smp.chalf.value();
        } else {
            run.drift_n = std::max(run.drift_n, std::abs(smp.cn.value() - c0n) / std::abs(c0n));
            run.drift_half = std::max(run.drift_half, std::abs(smp.chalf.value() - c0h) / std::abs(c0h));
        }
        run.series.push_back(smp);
    };
    if (record_every > 0) record(true);
    run.max_abs_u = max_abs(s.f);
    for (std::int64_t n = 0; n < p.grid.Nt; ++n) {
        core::system_step(s, ops);
        const double mu = max_abs(s.f);
        if (!(mu <= run.max_abs_u)) run.max_abs_u = mu;
        if (!(run.max_abs_u <= stop_above)) {
            run.diverged = true;
            break;
        }
        if (record_every > 0 && (s.step % record_every == 0 || s.step == p.grid.Nt)) record(false);
    }
    run.final_state = std::move(s);
    return run;
}

namespace {

Problem1D refinement_problem(const ConvergenceSpec& spec, int k)
{
    Grid1D g;
    g.Nx = (1 << k) + 1;
    g.T = spec.T;
    if (spec.courant > 0.0) {
        const double nt = spec.T / (spec.courant * g.dx());
        g.Nt = std::llround(nt);
        if (g.Nt < 1 || std::abs(nt - static_cast<double>(g.Nt)) > 1e-9 * nt)
            throw ConfigError("convergence study: T / (courant dx) is not an integer at k = " + std::to_string(k));
    } else {
        g.Nt = std::int64_t{1} << (k + spec.f);
    }
    return Problem1D{g, make_preset(spec.preset, g), spec.form, spec.init, spec.m};
}

}  // namespace

ConvergenceTable convergence_study(const ConvergenceSpec& spec)
{
    if (spec.k_min < 2 || spec.k_max < spec.k_min + 1 || spec.k_max > 24)
        throw ConfigError("convergence study: need 2 <= k_min < k_max <= 24");
    if (spec.k_min + spec.f < 0) throw ConfigError("convergence study: k + f must be nonnegative");
    ConvergenceTable table;
    std::vector<std::pair<double, double>> pairs;
    Vec next_u;
    bool have_next = false;
    // Finest first, so each refinement run is reused as the reference of the next coarser one.
    const int k_top = spec.analytic ? spec.k_max : spec.k_max + 1;
    std::vector<ConvergenceRow> rows;
    for (int k = k_top; k >= spec.k_min; --k) {
        Problem1D p = refinement_problem(spec, k);
        Run1D run = simulate(p, 0);
        const Vec& u = run.final_state.f;
        if (run.diverged || !std::isfinite(max_abs(u))) throw ConfigError("convergence study: run diverged at k = " + std::to_string(k));
        RefineError err;
        bool measured = false;
        if (spec.analytic) {
            if (!p.mat.cmp) throw ConfigError("convergence study: analytic errors need a cmp preset");
            const Grid1D& g = p.grid;
            err.dx = g.dx();
            for (int i = 0; i < g.Nx; ++i) {
                const double e = u[i] - mode_u(spec.m, p.mat.c, g.xp(i), spec.T);
                err.x.push_back(g.xp(i));
                err.er.push_back(e);
                err.er_over_dx2.push_back(e / (err.dx * err.dx));
                err.max_abs = std::max(err.max_abs, std::abs(e));
            }
            measured = true;
        } else if (have_next) {
            Problem1D fine = refinement_problem(spec, k + 1);
            err = refine_compare(u, p.grid, next_u, fine.grid);
            measured = true;
        }
        if (measured) {
            if (rows.empty()) table.finest = err;
            rows.push_back({k, p.grid.Nx, p.grid.dx(), err.max_abs, std::nan("")});
        }
        next_u = u;
        have_next = true;
    }
    std::reverse(rows.begin(), rows.end());
    for (const auto& r : rows) pairs.push_back({r.dx, r.er});
    const auto p = estimate_order(pairs);
    for (std::size_t i = 1; i < rows.size(); ++i) rows[i].p = p[i - 1];
    table.fitted_order = fit_order(pairs);
    table.rows = std::move(rows);
    return table;
}

}  // namespace mimetic::wave1d
