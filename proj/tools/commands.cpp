#include "commands.hpp"

#include "mimetic/adjoint3.hpp"
#include "mimetic/dump3.hpp"
#include "mimetic/error.hpp"
#include "mimetic/leapfrog.hpp"
#include "mimetic/operators3.hpp"
#include "mimetic/oscillator.hpp"
#include "mimetic/positivity.hpp"
#include "mimetic/random.hpp"
#include "mimetic/wave1d.hpp"
#include "mimetic/wave2d.hpp"
#include "mimetic/wave3d.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <fstream>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

namespace mimetic::cli {
namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
using std::numbers::pi;

const std::vector<std::string> series_header{"step", "t", "C_n", "C_half", "C1", "C2", "C3", "divE", "divH"};

double rel_change(double x, double x0) { return std::abs(x - x0) / (x0 != 0.0 ? std::abs(x0) : 1.0); }

double parse_number(const std::string& s, const char* what)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError(std::string(what) + ": expected a number, got '" + s + "'");
    return v;
}

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be positive");
}

void require_count(std::int64_t v, std::int64_t lo, const char* what)
{
    if (v < lo) throw ConfigError(std::string(what) + " must be at least " + std::to_string(lo));
}

bool due(std::int64_t step, std::int64_t last, int every) { return every > 0 && (step % every == 0 || step == last); }

std::vector<double> conserved_row(std::int64_t step, double t, const core::Conserved& cn, const core::Conserved& ch,
                                  double divE = nan, double divH = nan)
{
    return {static_cast<double>(step), t, cn.value(), ch.value(), cn.c1, cn.c2, cn.c3, divE, divH};
}

// ---- 1D helpers

wave1d::Init1D parse_init1d(const std::string& s)
{
    if (s == "taylor-sine") return wave1d::Init1D::taylor_sine;
    if (s == "exact-mode") return wave1d::Init1D::exact_mode;
    throw ConfigError("init must be taylor-sine or exact-mode, got '" + s + "'");
}

// ---- 3D helpers

mimetic3d::Star3 make_star3(const std::string& name, const mimetic3d::Grid3& g)
{
    using mimetic3d::MatrixMode;
    using mimetic3d::Star3;
    using mimetic3d::Sym3;
    if (name == "trivial3d") return Star3::trivial(g);
    if (name == "scalar3d")
        return Star3::sampled(
            g, [](double x, double y, double) { return 1.0 + 0.5 * x * y; },
            [](double, double y, double z) { return 2.0 + std::sin(y + z); },
            [](double x, double, double z) { return Sym3::identity(1.0 + 0.3 * x + 0.2 * z); },
            [](double, double y, double) { return Sym3::identity(1.5 - 0.4 * y); }, MatrixMode::scalar);
    if (name == "diag3d")
        return Star3::sampled(
            g, [](double x, double, double) { return 1.0 + x; }, [](double, double, double z) { return 1.0 + z * z; },
            [](double x, double y, double z) { return Sym3::diag(1.0 + x, 2.0 + y * z, 1.0 + 0.5 * std::cos(z)); },
            [](double x, double y, double) { return Sym3::diag(0.5 + x * y, 1.0, 1.0 + y); }, MatrixMode::diagonal);
    throw ConfigError("materials must be trivial3d, scalar3d or diag3d, got '" + name + "'");
}

mimetic3d::Boundary parse_boundary(const std::string& s)
{
    if (s == "bounded") return mimetic3d::Boundary::bounded;
    if (s == "periodic") return mimetic3d::Boundary::periodic;
    throw ConfigError("boundary must be bounded or periodic, got '" + s + "'");
}

std::filesystem::path output_path(const Context& ctx, const std::string& p)
{
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : ctx.out_dir / path;
}

void write_series(const Context& ctx, Report& rep, const std::vector<wave3d::Sample3>& series, bool with_div)
{
    Csv csv(ctx.file("series.csv"), series_header);
    for (const auto& s : series)
        csv.row(conserved_row(s.step, s.t, s.cn, s.chalf, with_div ? s.div.divE : nan, with_div ? s.div.divH : nan));
    rep.add_file(ctx.file("series.csv"));
}

// ---- positivity helpers

std::vector<double> cell_profile(const std::string& profile, int cells, double x0, double x1)
{
    const double dx = 2.0 / cells;
    std::vector<double> rho(static_cast<std::size_t>(cells), 0.0);
    if (profile == "square") {
        if (!(x1 > x0)) throw ConfigError("square profile needs x1 > x0");
        for (int c = 0; c < cells; ++c) {
            const double x = -1.0 + (c + 0.5) * dx;
            if (x >= x0 && x < x1) rho[static_cast<std::size_t>(c)] = 1.0;
        }
    } else if (profile == "spike") {
        rho[static_cast<std::size_t>(cells / 2)] = 1.0 / dx;
    } else {
        throw ConfigError("profile must be square or spike, got '" + profile + "'");
    }
    return rho;
}

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

void write_profile(const Context& ctx, Report& rep, const std::vector<double>& rho0, const std::vector<double>& rho)
{
    Csv csv(ctx.file("profile.csv"), {"x", "rho_initial", "rho_final"});
    const double dx = 2.0 / static_cast<double>(rho.size());
    for (std::size_t c = 0; c < rho.size(); ++c) csv.row({-1.0 + (c + 0.5) * dx, rho0[c], rho[c]});
    rep.add_file(ctx.file("profile.csv"));
}

// ---- smooth periodic fields for the verify accuracy check

double wave(int c, double x, double y, double z)
{
    return std::sin(2 * pi * x + c) * std::sin(2 * pi * y + 2 * c) * std::sin(2 * pi * z + 3 * c);
}

double dwave(int c, int axis, double x, double y, double z)
{
    const double a[3] = {2 * pi * x + c, 2 * pi * y + 2 * c, 2 * pi * z + 3 * c};
    double v = 2 * pi;
    for (int d = 0; d < 3; ++d) v *= d == axis ? std::cos(a[d]) : std::sin(a[d]);
    return v;
}

double grad_error(int n)
{
    using namespace mimetic3d;
    const Grid3 g = Grid3::cube(n, 1.0, Boundary::periodic);
    NodeField s(g);
    s.fill(0, [](double x, double y, double z) { return wave(0, x, y, z); });
    EdgeField e(g);
    for (int c = 0; c < 3; ++c) e.fill(c, [c](double x, double y, double z) { return dwave(0, c, x, y, z); });
    return (grad3(s) - e).max_abs();
}

double div_error(int n)
{
    using namespace mimetic3d;
    const Grid3 g = Grid3::cube(n, 1.0, Boundary::periodic);
    FaceField f(g);
    for (int c = 0; c < 3; ++c) f.fill(c, [c](double x, double y, double z) { return wave(c, x, y, z); });
    CellField d(g);
    d.fill(0, [](double x, double y, double z) {
        return dwave(0, 0, x, y, z) + dwave(1, 1, x, y, z) + dwave(2, 2, x, y, z);
    });
    return (div3(f) - d).max_abs();
}

template <mimetic3d::Kind K>
mimetic3d::Field3<K> random_field(const mimetic3d::Grid3& g, Rng& rng)
{
    mimetic3d::Field3<K> f(g);
    for (int c = 0; c < mimetic3d::Field3<K>::ncomp; ++c)
        for (double& v : f[c].values()) v = uniform(rng);
    return f;
}

template <mimetic3d::Kind K>
double max_rel_diff(const mimetic3d::Field3<K>& a, const mimetic3d::Field3<K>& b)
{
    double worst = 0.0;
    for (int c = 0; c < mimetic3d::Field3<K>::ncomp; ++c)
        for (std::size_t i = 0; i < a[c].size(); ++i) {
            const double x = b[c].values()[i];
            if (x != 0.0) worst = std::max(worst, std::abs(a[c].values()[i] - x) / std::abs(x));
        }
    return worst;
}

std::string tag(mimetic3d::Boundary b, int n)
{
    return std::string(b == mimetic3d::Boundary::bounded ? "bounded" : "periodic") + "/" + std::to_string(n);
}

void verify_mimetic3d(const VerifyOpts& o, Report& rep)
{
    using namespace mimetic3d;
    for (int n : o.grids)
        for (Boundary b : {Boundary::periodic, Boundary::bounded}) {
            const Grid3 g = Grid3::cube(n, 1.0, b);
            const double h = g.h_min();
            Rng rng(o.seed);
            double worst = 0.0;
            auto rel = [&](double r, double scale) { worst = std::max(worst, r / (scale / h)); };
            const auto gs = grad3(random_field<Kind::node>(g, rng));
            rel(curl3(gs).max_abs(), gs.max_abs());
            const auto rt = curl3(random_field<Kind::edge>(g, rng));
            rel(div3(rt).max_abs(), rt.max_abs());
            const auto gsd = grad3_star(random_field<Kind::dual_node>(g, rng));
            rel(curl3_star(gsd).max_abs(), gsd.max_abs());
            const auto rtd = curl3_star(random_field<Kind::dual_edge>(g, rng));
            rel(div3_star(rtd).max_abs(), rtd.max_abs());
            rep.le("exactness/" + tag(b, n), worst, 1e-13);

            const Star3 m = make_star3("diag3d", g);
            const auto t = random_field<Kind::edge>(g, rng);
            const auto hd = random_field<Kind::dual_edge>(g, rng);
            const auto s = random_field<Kind::node>(g, rng);
            const auto q = random_field<Kind::dual_node>(g, rng);
            const double trip = std::max({max_rel_diff(star_A_inv(star_A(t, m), m), t),
                                          max_rel_diff(star_B_inv(star_B(hd, m), m), hd),
                                          max_rel_diff(star_a_inv(star_a(s, m), m), s),
                                          max_rel_diff(star_b_inv(star_b(q, m), m), q)});
            rep.le("star_roundtrip/" + tag(b, n), trip, 2 * std::numeric_limits<double>::epsilon());

            AdjointOptions opt;
            opt.trials = o.trials;
            opt.seed = o.seed;
            for (const char* name : {"trivial3d", "diag3d"}) {
                const Star3 mm = make_star3(name, g);
                rep.le(std::string("adjoint/") + name + "/" + tag(b, n), check_discrete_adjoints(mm, opt).max_residual(),
                       1e-12);
                rep.require(std::string("negativity/") + name + "/" + tag(b, n),
                            negativity_check(mm, o.trials, o.seed).ok);
            }
        }
    // Second order under refinement: the error ratio lies in [3.5, 4.5] when h halves.
    for (std::size_t i = 1; i < o.grids.size(); ++i) {
        const int a = o.grids[i - 1], b = o.grids[i];
        const double lo = std::log(3.5) / std::log(2.0), hi = std::log(4.5) / std::log(2.0);
        const double step = std::log(static_cast<double>(b) / a);
        for (auto [name, fn] : {std::pair{"grad", &grad_error}, std::pair{"div", &div_error}}) {
            const double p = std::log(fn(a) / fn(b)) / step;
            const std::string key = std::string("order/") + name + "/" + std::to_string(a) + "-" + std::to_string(b);
            rep.ge(key, p, lo);
            rep.le(key, p, hi);
        }
    }
}

void verify_adjoint(const VerifyOpts& o, Report& rep)
{
    using namespace mimetic3d;
    if (o.broken_sign) rep.warn("the starred gradient sign is flipped on purpose; this suite is expected to fail");
    for (int n : o.grids)
        for (Boundary b : {Boundary::periodic, Boundary::bounded}) {
            const Grid3 g = Grid3::cube(n, 1.0, b);
            AdjointOptions opt;
            opt.trials = o.trials;
            opt.seed = o.seed;
            opt.flip_grad_star_sign = o.broken_sign;
            for (const char* name : {"trivial3d", "scalar3d", "diag3d"}) {
                const auto r = check_discrete_adjoints(make_star3(name, g), opt);
                for (const auto& e : r.entries)
                    rep.le("adjoint/" + std::string(name) + "/" + tag(b, n) + "/" + e.name, e.residual, 1e-12);
            }
        }
}

void verify_wave1d_sbp(const VerifyOpts& o, Report& rep)
{
    using namespace wave1d;
    for (int n : o.grids) {
        Grid1D g{0.0, 1.0, n + 1, 1.0, 1};
        Rng rng(o.seed);
        std::function<Vec(Rng&)> su = [n](Rng& r) {
            Vec u(static_cast<std::size_t>(n + 1));
            for (int i = 1; i < n; ++i) u[static_cast<std::size_t>(i)] = uniform(r);
            return u;
        };
        std::function<Vec(Rng&)> sv = [n](Rng& r) {
            Vec v(static_cast<std::size_t>(n));
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = uniform(r);
            return v;
        };
        for (const auto& preset : standard_presets()) {
            const auto m = make_preset(preset, g);
            const double r =
                core::check_adjointness(vmp_operators(m, g), rho_product(m, g), tau_product(m, g), o.trials, su, sv, rng);
            rep.le("sbp/" + slug(preset) + "/" + std::to_string(n), r, 1e-13);
        }
    }
}

}  // namespace

std::pair<int, int> parse_k_range(const std::string& s)
{
    const auto dots = s.find("..");
    auto to_int = [&](const std::string& t) {
        int v = 0;
        const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
            throw ConfigError("k range must look like 4..9, got '" + s + "'");
        return v;
    };
    if (dots == std::string::npos) {
        const int k = to_int(s);
        return {k, k};
    }
    return {to_int(s.substr(0, dots)), to_int(s.substr(dots + 2))};
}

std::string slug(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        if (std::isalnum(static_cast<unsigned char>(ch)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        else if (!out.empty() && out.back() != '_')
            out += '_';
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out;
}

void run_oscillator(const OscillatorOpts& o, const Context& ctx, Report& rep)
{
    osc::OscParams p{o.omega, o.dt, o.steps};
    p.validate();
    require_count(o.steps, 0, "steps");
    osc::InitMode mode;
    if (o.init == "taylor")
        mode = osc::InitMode::taylor;
    else if (o.init == "exact")
        mode = osc::InitMode::exact;
    else
        throw ConfigError("init must be taylor or exact, got '" + o.init + "'");
    const double wdt = o.omega * o.dt;
    std::string expect = o.expect;
    if (expect == "auto") expect = wdt < 2.0 ? "stable" : "unstable";
    if (expect != "stable" && expect != "unstable") throw ConfigError("expect must be auto, stable or unstable");
    if (expect == "stable" && wdt >= 2.0) rep.warn("omega dt >= 2: the leapfrog step bound is violated");

    Csv csv(ctx.file("series.csv"), series_header);
    rep.add_file(ctx.file("series.csv"));
    const double a2 = p.alpha() * p.alpha();
    auto record = [&](const osc::OscState& s) {
        const double vbar = 0.5 * (s.v_half + s.prev_v_half);
        const core::Conserved parts{0.5 * s.u_n * s.u_n, 0.5 * vbar * vbar, 0.5 * a2 * s.u_n * s.u_n};
        std::vector<double> row = conserved_row(s.step, s.step * o.dt, parts, parts);
        row[3] = osc::conserved_half(s, p);
        csv.row(row);
    };

    auto s = osc::make_state(o.u0, o.v0, p, mode);
    const double c0 = osc::conserved_n(s, p), h0 = osc::conserved_half(s, p);
    const double amplitude = std::max(std::hypot(o.u0, o.v0), std::numeric_limits<double>::min());
    double dn = 0.0, dh = 0.0, umax = std::abs(s.u_n);
    record(s);
    for (std::int64_t n = 1; n <= o.steps; ++n) {
        s = osc::leapfrog_step(s, p);
        umax = std::max(umax, std::abs(s.u_n));
        dn = std::max(dn, rel_change(osc::conserved_n(s, p), c0));
        dh = std::max(dh, rel_change(osc::conserved_half(s, p), h0));
        if (due(n, o.steps, o.record_every)) record(s);
        if (umax > 1e100 * amplitude) break;  // diverged; stop before overflow
    }
    const double T = s.step * o.dt;
    rep.metrics["omega_dt"] = wdt;
    rep.metrics["steps_run"] = s.step;
    rep.metrics["drift_n"] = number(dn);
    rep.metrics["drift_half"] = number(dh);
    rep.metrics["max_abs_u"] = number(umax);
    rep.metrics["final_u"] = number(s.u_n);
    rep.metrics["exact_u"] = osc::exact_u(o.u0, o.v0, o.omega, T);
    rep.metrics["final_error"] = number(std::abs(s.u_n - osc::exact_u(o.u0, o.v0, o.omega, T)));
    if (expect == "stable") {
        rep.le("drift_n", dn, o.tol);
        rep.le("drift_half", dh, o.tol);
        rep.require("bounded", umax <= 10.0 * amplitude);
    } else {
        rep.require("diverged", umax > 10.0 * amplitude);
    }
}

void run_system(const SystemOpts& o, const Context& ctx, Report& rep)
{
    using Eigen::MatrixXd;
    using Eigen::VectorXd;
    if (o.nx < 1 || o.ny < 1) throw ConfigError("nx and ny must be at least 1");
    require_positive(o.ratio, "ratio");
    require_count(o.steps, 0, "steps");
    core::HalfStepInit variant;
    if (o.init == "oscillator-taylor")
        variant = core::HalfStepInit::oscillator_taylor;
    else if (o.init == "system-taylor")
        variant = core::HalfStepInit::system_taylor;
    else
        throw ConfigError("init must be oscillator-taylor or system-taylor, got '" + o.init + "'");

    // Random A with diagonal weights on both spaces; A* = Wx^-1 A^T Wy.
    Rng rng(o.seed);
    MatrixXd A(o.ny, o.nx);
    for (int j = 0; j < o.nx; ++j)
        for (int i = 0; i < o.ny; ++i) A(i, j) = uniform(rng);
    VectorXd wx(o.nx), wy(o.ny);
    for (int i = 0; i < o.nx; ++i) wx[i] = uniform(rng, 0.5, 2.0);
    for (int i = 0; i < o.ny; ++i) wy[i] = uniform(rng, 0.5, 2.0);
    const MatrixXd As = wx.cwiseInverse().asDiagonal() * A.transpose() * wy.asDiagonal();
    const MatrixXd scaled = wy.cwiseSqrt().asDiagonal() * A * wx.cwiseSqrt().cwiseInverse().asDiagonal();
    const double normA = Eigen::JacobiSVD<MatrixXd>(scaled).singularValues()(0);
    if (!(normA > 0.0)) throw ConfigError("system: the random operator is zero");
    const double dt = o.ratio / normA;

    core::OperatorPair<VectorXd, VectorXd> ops;
    ops.apply_A = [A](const VectorXd& f) { return VectorXd(A * f); };
    ops.apply_Astar = [As](const VectorXd& g) { return VectorXd(As * g); };
    ops.norm_bound_A = ops.norm_bound_Astar = normA;
    core::InnerProduct<VectorXd> ix = [wx](const VectorXd& a, const VectorXd& b) {
        return (a.array() * wx.array() * b.array()).sum();
    };
    core::InnerProduct<VectorXd> iy = [wy](const VectorXd& a, const VectorXd& b) {
        return (a.array() * wy.array() * b.array()).sum();
    };
    std::function<VectorXd(Rng&)> sx = [&](Rng& r) {
        VectorXd v(o.nx);
        for (int i = 0; i < o.nx; ++i) v[i] = uniform(r);
        return v;
    };
    std::function<VectorXd(Rng&)> sy = [&](Rng& r) {
        VectorXd v(o.ny);
        for (int i = 0; i < o.ny; ++i) v[i] = uniform(r);
        return v;
    };
    const double adj = core::check_adjointness(ops, ix, iy, 20, sx, sy, rng);

    const VectorXd f0 = sx(rng), g0 = sy(rng);
    auto st = core::make_state(f0, core::init_g_half(f0, g0, ops, dt, variant), ops, dt);
    Csv csv(ctx.file("series.csv"), series_header);
    rep.add_file(ctx.file("series.csv"));
    auto sample = [&] {
        const auto cn = core::conserved_full_parts(st, ops, ix, iy);
        const auto ch = core::conserved_half_step_parts(st, ops, ix, iy);
        return std::pair{cn, ch};
    };
    auto [cn0, ch0] = sample();
    csv.row(conserved_row(0, 0.0, cn0, ch0));
    double dn = 0.0, dh = 0.0;
    for (std::int64_t n = 1; n <= o.steps; ++n) {
        core::system_step(st, ops);
        auto [cn, ch] = sample();
        dn = std::max(dn, rel_change(cn.value(), cn0.value()));
        dh = std::max(dh, rel_change(ch.value(), ch0.value()));
        if (due(n, o.steps, o.record_every)) csv.row(conserved_row(n, n * dt, cn, ch));
        if (!std::isfinite(cn.value())) break;
    }
    rep.metrics["norm_A"] = normA;
    rep.metrics["dt"] = dt;
    rep.metrics["adjoint_residual"] = adj;
    rep.metrics["drift_n"] = number(dn);
    rep.metrics["drift_half"] = number(dh);
    rep.metrics["init"] = std::string(core::init_name(variant));
    rep.le("adjoint_residual", adj, 1e-13);
    if (o.ratio < 2.0) {
        rep.le("drift_n", dn, o.tol);
        rep.le("drift_half", dh, o.tol);
    } else {
        rep.warn("dt |A| >= 2: the step bound is violated and conservation is not asserted");
    }
}

void run_wave1d(const Wave1DOpts& o, const Context& ctx, Report& rep)
{
    using namespace wave1d;
    Grid1D g{0.0, 1.0, o.nx, o.T, o.nt};
    g.validate();
    Materials1D mat = make_preset(o.material, g);
    Form form;
    if (o.form == "auto")
        form = mat.cmp ? Form::cmp : Form::vmp;
    else if (o.form == "cmp")
        form = Form::cmp;
    else if (o.form == "vmp")
        form = Form::vmp;
    else
        throw ConfigError("form must be auto, cmp or vmp, got '" + o.form + "'");
    Problem1D p{g, mat, form, parse_init1d(o.init), o.m};
    const double cfl = cfl_speed(mat) * g.dt() / g.dx();
    if (cfl >= 1.0) rep.warn("c dt/dx = " + format_number(cfl) + " is not below 1; expect growth");

    const Run1D r = simulate(p, o.record_every, 1e100);
    Csv csv(ctx.file("series.csv"), series_header);
    rep.add_file(ctx.file("series.csv"));
    for (const auto& s : r.series) csv.row(conserved_row(s.step, s.t, s.cn, s.chalf));

    rep.metrics["form"] = form == Form::cmp ? "cmp" : "vmp";
    rep.metrics["courant"] = cfl;
    rep.metrics["drift_n"] = number(r.drift_n);
    rep.metrics["drift_half"] = number(r.drift_half);
    rep.metrics["max_abs_u"] = number(r.max_abs_u);
    rep.metrics["diverged"] = r.diverged;
    if (mat.cmp && !r.diverged) {
        Csv err(ctx.file("errors.csv"), {"x", "Er", "Er/dx2"});
        rep.add_file(ctx.file("errors.csv"));
        const double dx2 = g.dx() * g.dx();
        double worst = 0.0;
        for (int i = 0; i < g.Nx; ++i) {
            const double e = r.final_state.f[static_cast<std::size_t>(i)] - mode_u(o.m, mat.c, g.xp(i), g.T);
            worst = std::max(worst, std::abs(e));
            err.row({g.xp(i), e, e / dx2});
        }
        rep.metrics["final_error"] = worst;
    }
    rep.require("bounded", !r.diverged);
    rep.le("drift_n", r.drift_n, o.tol);
    rep.le("drift_half", r.drift_half, o.tol);
}

void run_wave1d_convergence(const Wave1DConvergenceOpts& o, const Context& ctx, Report& rep)
{
    using namespace wave1d;
    ConvergenceSpec spec;
    if (o.kase == "cmp")
        spec.form = Form::cmp;
    else if (o.kase == "vmp")
        spec.form = Form::vmp;
    else
        throw ConfigError("case must be cmp or vmp, got '" + o.kase + "'");
    spec.preset = !o.material.empty() ? o.material : spec.form == Form::cmp ? "cmp c=1" : "bump p=2 q=2";
    std::tie(spec.k_min, spec.k_max) = parse_k_range(o.k);
    spec.f = o.f;
    spec.courant = o.courant;
    spec.init = parse_init1d(o.init);
    spec.m = o.m;
    const Materials1D probe = make_preset(spec.preset, Grid1D{0.0, 1.0, 3, 1.0, 1});

    if (o.reference == "auto")
        spec.analytic = probe.cmp;
    else if (o.reference == "analytic" || o.reference == "refine")
        spec.analytic = o.reference == "analytic";
    else
        throw ConfigError("reference must be auto, analytic or refine, got '" + o.reference + "'");

    if (o.final_time == "generic") {
        spec.T = 0.75;
    } else if (o.final_time == "half-period" || o.final_time == "full-period") {
        if (!probe.cmp) throw ConfigError("half-period and full-period need a constant-speed material");
        spec.T = (o.final_time == "half-period" ? 1.0 : 2.0) / (o.m * probe.c);
    } else {
        spec.T = parse_number(o.final_time, "final");
        require_positive(spec.T, "final");
    }

    const ConvergenceTable t = convergence_study(spec);
    const double dt_dx = spec.courant > 0.0 ? spec.courant : spec.T / std::ldexp(1.0, spec.f);
    const double courant = cfl_speed(probe) * dt_dx;
    if (courant == 1.0)
        rep.warn("unit Courant number: the constant-speed scheme is exact there and orders are meaningless");
    else if (courant > 1.0)
        rep.warn("Courant number above 1; the runs are unstable");

    Csv csv(ctx.file("table.csv"), {"k", "Nx", "dx", "Er", "p"});
    rep.add_file(ctx.file("table.csv"));
    for (const auto& r : t.rows) csv.row({double(r.k), double(r.Nx), r.dx, r.er, r.p});
    Csv err(ctx.file("errors.csv"), {"x", "Er", "Er/dx2"});
    rep.add_file(ctx.file("errors.csv"));
    for (std::size_t i = 0; i < t.finest.x.size(); ++i)
        err.row({t.finest.x[i], t.finest.er[i], t.finest.er[i] / (t.finest.dx * t.finest.dx)});

    rep.metrics["material"] = spec.preset;
    rep.metrics["T"] = spec.T;
    rep.metrics["courant"] = courant;
    rep.metrics["reference"] = spec.analytic ? "analytic" : "refine";
    rep.metrics["fitted_order"] = number(t.fitted_order);
    if (o.min_order) rep.ge("fitted_order", t.fitted_order, *o.min_order);
    if (o.max_order) rep.le("fitted_order", t.fitted_order, *o.max_order);
}

void run_convergence_table(const ConvergenceTableOpts& o, const Context& ctx, Report& rep)
{
    using namespace wave1d;
    if (o.materials.empty()) throw ConfigError("convergence-table needs at least one material");
    const auto [kmin, kmax] = parse_k_range(o.k);
    json orders = json::object();
    for (const auto& preset : o.materials) {
        ConvergenceSpec spec;
        spec.preset = preset;
        spec.form = make_preset(preset, Grid1D{0.0, 1.0, 3, 1.0, 1}).cmp ? Form::cmp : Form::vmp;
        spec.init = parse_init1d(o.init);
        spec.T = o.T;
        spec.f = o.f;
        spec.k_min = kmin;
        spec.k_max = kmax;
        spec.analytic = false;
        const ConvergenceTable t = convergence_study(spec);
        const auto path = ctx.file(slug(preset) + ".csv");
        Csv csv(path, {"k", "Nx", "dx", "Er", "p"});
        rep.add_file(path);
        for (const auto& r : t.rows) csv.row({double(r.k), double(r.Nx), r.dx, r.er, r.p});
        orders[preset] = number(t.fitted_order);
        if (o.min_order) rep.ge("fitted_order/" + slug(preset), t.fitted_order, *o.min_order);
    }
    rep.metrics["fitted_order"] = orders;
    rep.metrics["T"] = o.T;
}

void run_wave2d(const Wave2DOpts& o, const Context& ctx, Report& rep)
{
    using namespace wave2d;
    const Grid2 g{o.nx, o.ny};
    g.validate();
    require_positive(o.c, "c");
    require_count(o.steps, 0, "steps");
    const double norm = o.c * 2.0 * std::sqrt(1.0 / (g.dx() * g.dx()) + 1.0 / (g.dy() * g.dy()));
    const double dt = o.dt > 0.0 ? o.dt : o.safety * 2.0 / norm;
    require_positive(dt, "dt");
    if (dt * norm >= 2.0) rep.warn("dt |A| >= 2: the step bound is violated");
    const Run2 r = run_mode(g, o.m, o.n, o.c, dt, o.steps, o.record_every);
    Csv csv(ctx.file("series.csv"), series_header);
    rep.add_file(ctx.file("series.csv"));
    for (std::size_t i = 0; i < r.steps.size(); ++i)
        csv.row(conserved_row(r.steps[i], r.steps[i] * dt, r.cn[i], r.chalf[i]));
    rep.metrics["dt"] = dt;
    rep.metrics["T"] = o.steps * dt;
    rep.metrics["drift_n"] = number(r.drift_n);
    rep.metrics["drift_half"] = number(r.drift_half);
    rep.metrics["final_error"] = number(r.error_u);
    rep.le("drift_n", r.drift_n, o.tol);
    rep.le("drift_half", r.drift_half, o.tol);
}

void run_wave3d(const Wave3DOpts& o, const Context& ctx, Report& rep)
{
    using namespace wave3d;
    const Grid3 g = Grid3::cube(o.grid, 1.0, parse_boundary(o.boundary));
    g.validate();
    require_count(o.steps, 0, "steps");
    const Star3 m = make_star3(o.materials, g);
    const double dt = o.dt > 0.0 ? o.dt : suggest_dt(m, o.safety, Physics::scalar_wave);
    require_positive(dt, "dt");
    ScalarWaveState3 fin;
    const Run3 r = run_scalar_cavity(m, dt, o.steps, o.record_every, o.dump.empty() ? nullptr : &fin);
    write_series(ctx, rep, r.series, false);
    rep.metrics["dt"] = dt;
    rep.metrics["drift_n"] = number(r.drift_n);
    rep.metrics["drift_half"] = number(r.drift_half);
    rep.metrics["min_C_half"] = number(r.min_c_half);
    // The cavity mode is an exact solution only for constant materials in the box.
    if (o.materials == "trivial3d" && g.boundary == mimetic3d::Boundary::bounded)
        rep.metrics["final_error"] = number(r.final_error);
    if (!o.dump.empty()) {
        const auto path = output_path(ctx, o.dump);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        mimetic3d::write_field(out, fin.f);
        rep.add_file(path);
    }
    rep.le("drift_n", r.drift_n, o.tol);
    rep.le("drift_half", r.drift_half, o.tol);
    rep.ge("min_C_half", r.min_c_half, 0.0);
}

void run_maxwell(const Wave3DOpts& o, const Context& ctx, Report& rep)
{
    using namespace wave3d;
    const Grid3 g = Grid3::cube(o.grid, 1.0, parse_boundary(o.boundary));
    g.validate();
    require_count(o.steps, 0, "steps");
    const Star3 m = make_star3(o.materials, g);
    const double dt = o.dt > 0.0 ? o.dt : suggest_dt(m, o.safety, Physics::maxwell);
    require_positive(dt, "dt");
    MaxwellState3 fin;
    const Run3 r = run_maxwell_cavity(m, dt, o.steps, o.record_every, o.dump.empty() ? nullptr : &fin);
    write_series(ctx, rep, r.series, true);
    rep.metrics["dt"] = dt;
    rep.metrics["drift_n"] = number(r.drift_n);
    rep.metrics["drift_half"] = number(r.drift_half);
    rep.metrics["div_drift"] = number(r.div_drift);
    rep.metrics["reference_drift"] = 2e-16;
    if (o.materials == "trivial3d" && g.boundary == mimetic3d::Boundary::bounded)
        rep.metrics["final_error"] = number(r.final_error);
    if (!o.dump.empty()) {
        const auto path = output_path(ctx, o.dump);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        mimetic3d::write_field(out, fin.f);
        rep.add_file(path);
    }
    rep.le("drift_n", r.drift_n, o.tol);
    rep.le("drift_half", r.drift_half, o.tol);
    rep.le("div_drift", r.div_drift, o.tol);
}

void run_transport(const TransportOpts& o, const Context& ctx, Report& rep)
{
    using namespace positivity;
    if (o.cells < 1) throw ConfigError("cells must be at least 1");
    require_positive(o.courant, "courant");
    require_count(o.steps, 0, "steps");
    TransportState s;
    s.dx = 2.0 / o.cells;
    bool constant = false;
    if (o.velocity == "x")
        s.v = edge_velocity(o.cells, [](double x) { return x; });
    else if (o.velocity == "-x")
        s.v = edge_velocity(o.cells, [](double x) { return -x; });
    else {
        s.v.assign(static_cast<std::size_t>(o.cells) + 1, parse_number(o.velocity, "velocity"));
        constant = true;
    }
    const double V = transport_courant(s.v, s.dx, 1.0) * s.dx;
    s.dt = V > 0.0 ? o.courant * s.dx / V : o.courant * s.dx;
    s.rho = cell_profile(o.profile, o.cells, o.x0, o.x1);
    const std::vector<double> rho0 = s.rho;
    const double total = s.mass();

    Csv csv(ctx.file("series.csv"), {"step", "t", "mass", "left_domain", "total", "min_rho"});
    rep.add_file(ctx.file("series.csv"));
    csv.row({0.0, 0.0, s.mass(), 0.0, s.mass(), min_of(s.rho)});
    bool guard = true, outflow = true;
    double rho_min = min_of(s.rho), mass_err = 0.0;
    for (std::int64_t n = 1; n <= o.steps; ++n) {
        const StepReport r = transport_step(s);
        guard = guard && r.guard_ok;
        outflow = outflow && r.outflow_ok;
        rho_min = std::min(rho_min, min_of(s.rho));
        mass_err = std::max(mass_err, rel_change(s.mass() + s.left_domain, total));
        csv.row({double(n), n * s.dt, s.mass(), s.left_domain, s.mass() + s.left_domain, min_of(s.rho)});
    }
    write_profile(ctx, rep, rho0, s.rho);
    rep.metrics["dt"] = s.dt;
    rep.metrics["outflow_fraction"] = transport_outflow_fraction(s.v, s.dx, s.dt);
    rep.metrics["mass_error"] = mass_err;
    rep.metrics["min_rho"] = rho_min;
    rep.metrics["left_domain"] = s.left_domain;
    if (!guard) rep.warn("max|v| dt/dx > 1: the step bound is violated");
    if (guard && !outflow) rep.warn("a cell loses more than its content through both faces; rho may go negative");
    rep.le("mass_error", mass_err, o.tol);
    if (guard && outflow)
        rep.ge("min_rho", rho_min, 0.0);
    if (constant && o.courant == 1.0) {
        // One cell per step, with zero inflow at the upwind end.
        const auto M = static_cast<std::int64_t>(rho0.size());
        const std::int64_t shift = s.v.front() > 0.0 ? o.steps : -o.steps;
        std::vector<double> expect(rho0.size(), 0.0);
        for (std::int64_t c = 0; c < M; ++c)
            if (c - shift >= 0 && c - shift < M) expect[static_cast<std::size_t>(c)] = rho0[static_cast<std::size_t>(c - shift)];
        rep.require("unit_shift_bit_exact", expect == s.rho);
    }
}

void run_diffusion(const DiffusionOpts& o, const Context& ctx, Report& rep)
{
    using namespace positivity;
    if (o.cells < 1) throw ConfigError("cells must be at least 1");
    require_positive(o.number, "number");
    require_count(o.steps, 0, "steps");
    DiffusionState s;
    s.dx = 2.0 / o.cells;
    if (o.D == "variable")
        s.D = edge_velocity(o.cells, [](double x) { return 1.0 + 0.5 * std::sin(3.0 * x); });
    else
        s.D.assign(static_cast<std::size_t>(o.cells) + 1, parse_number(o.D, "D"));
    const double rate = diffusion_number(s.D, s.dx, 1.0);
    require_positive(rate, "D");
    s.dt = o.number / rate;
    s.rho = cell_profile(o.profile, o.cells, o.x0, o.x1);
    const std::vector<double> rho0 = s.rho;
    const double total = s.mass();

    Csv csv(ctx.file("series.csv"), {"step", "t", "mass", "left_domain", "total", "min_rho"});
    rep.add_file(ctx.file("series.csv"));
    csv.row({0.0, 0.0, s.mass(), 0.0, s.mass(), min_of(s.rho)});
    bool guard = true;
    double rho_min = min_of(s.rho), mass_err = 0.0;
    for (std::int64_t n = 1; n <= o.steps; ++n) {
        guard = diffusion_step(s).guard_ok && guard;
        rho_min = std::min(rho_min, min_of(s.rho));
        mass_err = std::max(mass_err, rel_change(s.mass() + s.left_domain, total));
        csv.row({double(n), n * s.dt, s.mass(), s.left_domain, s.mass() + s.left_domain, min_of(s.rho)});
    }
    write_profile(ctx, rep, rho0, s.rho);
    rep.metrics["dt"] = s.dt;
    rep.metrics["mass_error"] = mass_err;
    rep.metrics["min_rho"] = rho_min;
    rep.metrics["left_domain"] = s.left_domain;
    if (!guard) rep.warn("(D_i + D_{i+1}) dt/dx^2 > 1: the step bound is violated");
    rep.le("mass_error", mass_err, o.tol);
    if (guard) rep.ge("min_rho", rho_min, 0.0);
}

void run_verify(const VerifyOpts& o, const Context& ctx, Report& rep)
{
    if (o.grids.empty()) throw ConfigError("verify needs at least one grid size");
    for (int n : o.grids)
        if (n < 2) throw ConfigError("grid sizes must be at least 2");
    if (o.trials < 1) throw ConfigError("trials must be at least 1");
    const bool all = o.suite == "all";
    if (!all && o.suite != "mimetic3d" && o.suite != "adjoint" && o.suite != "wave1d-sbp")
        throw ConfigError("suite must be mimetic3d, adjoint, wave1d-sbp or all, got '" + o.suite + "'");
    if (all || o.suite == "mimetic3d") verify_mimetic3d(o, rep);
    if (all || o.suite == "adjoint") verify_adjoint(o, rep);
    if (all || o.suite == "wave1d-sbp") verify_wave1d_sbp(o, rep);
    Csv csv(ctx.file("checks.csv"), {"name", "value", "op", "limit", "pass"});
    rep.add_file(ctx.file("checks.csv"));
    for (const auto& c : rep.checks())
        csv.row_text({c.name, format_number(c.value), c.op, format_number(c.limit), c.pass ? "1" : "0"});
    rep.metrics["checks"] = rep.checks().size();
}

}  // namespace mimetic::cli
