#include "cli.hpp"

#include "commands.hpp"
#include "mimetic/error.hpp"
#include "mimetic/simd.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <ostream>

namespace mimetic::cli {
namespace {

using Runner = std::function<void(const Context&, Report&)>;

struct Subcommand {
    CLI::App* app = nullptr;
    Runner run;
};

// Everything the subcommands bind to must outlive parsing.
struct AllOpts {
    OscillatorOpts osc;
    SystemOpts sys;
    Wave1DOpts w1;
    Wave1DConvergenceOpts w1c;
    ConvergenceTableOpts table;
    Wave2DOpts w2;
    Wave3DOpts w3;
    Wave3DOpts mx;
    TransportOpts tr;
    DiffusionOpts df;
    VerifyOpts ver;
};

bool is_help(const CLI::Option* o)
{
    for (const auto& n : o->get_lnames())
        if (n == "help" || n == "help-all") return true;
    return false;
}

std::string option_key(const CLI::Option* o)
{
    if (!o->get_lnames().empty()) return o->get_lnames().front();
    return o->get_name();
}

json option_schema(const CLI::Option* o)
{
    json j;
    j["name"] = o->get_lnames().empty() ? o->get_name() : "--" + o->get_lnames().front();
    j["type"] = o->get_type_name();
    j["default"] = o->get_default_str();
    j["positional"] = o->get_positional();
    j["multiple"] = o->get_expected_max() > 1;
    j["description"] = o->get_description();
    return j;
}

json schema_of(const CLI::App& app, const CLI::App& sub)
{
    json s;
    s["command"] = sub.get_name();
    s["description"] = sub.get_description();
    s["config_section"] = "[" + sub.get_name() + "]";
    json opts = json::array();
    for (const CLI::Option* o : sub.get_options())
        if (!is_help(o)) opts.push_back(option_schema(o));
    s["options"] = opts;
    json global = json::array();
    for (const CLI::Option* o : app.get_options())
        if (!is_help(o)) global.push_back(option_schema(o));
    s["global_options"] = global;
    return s;
}

// The effective value of every option: given on the command line or in the
// config file, otherwise the default.
json effective_config(const CLI::App& sub)
{
    json c = json::object();
    for (const CLI::Option* o : sub.get_options()) {
        if (is_help(o)) continue;
        if (o->count() > 0) {
            const auto& r = o->results();
            if (r.size() == 1)
                c[option_key(o)] = r.front();
            else
                c[option_key(o)] = r;
        } else {
            c[option_key(o)] = o->get_default_str();
        }
    }
    return c;
}

void add_wave3d_options(CLI::App* s, Wave3DOpts& o)
{
    s->add_option("--grid", o.grid, "cells per axis on the unit cube");
    s->add_option("--boundary", o.boundary, "bounded (pinned walls) or periodic");
    s->add_option("--materials", o.materials, "trivial3d, scalar3d or diag3d");
    s->add_option("--steps", o.steps, "time steps");
    s->add_option("--safety", o.safety, "fraction of the stable step used when --dt is not given");
    s->add_option("--dt", o.dt, "time step; overrides --safety when positive");
    s->add_option("--record-every", o.record_every, "series sampling interval in steps");
    s->add_option("--tol", o.tol, "limit on the relative drift of the conserved quantities");
    s->add_option("--dump", o.dump, "write the final primal field to this file (relative to --out)");
}

std::vector<Subcommand> build(CLI::App& app, AllOpts& a)
{
    std::vector<Subcommand> cmds;
    auto add = [&](const char* name, const char* desc, Runner run) {
        CLI::App* s = app.add_subcommand(name, desc);
        cmds.push_back({s, std::move(run)});
        return s;
    };

    {
        auto& o = a.osc;
        auto* s = add("oscillator", "leapfrog harmonic oscillator with conserved-quantity audit",
                      [&o](const Context& c, Report& r) { run_oscillator(o, c, r); });
        s->add_option("--omega", o.omega, "angular frequency");
        s->add_option("--dt", o.dt, "time step");
        s->add_option("--steps", o.steps, "number of steps");
        s->add_option("--init", o.init, "taylor or exact half step");
        s->add_option("--u0", o.u0, "initial u");
        s->add_option("--v0", o.v0, "initial v");
        s->add_option("--record-every", o.record_every, "series sampling interval in steps");
        s->add_option("--tol", o.tol, "limit on the relative drift");
        s->add_option("--expect", o.expect, "auto, stable or unstable");
    }
    {
        auto& o = a.sys;
        auto* s = add("system", "leapfrog on a random weighted linear system",
                      [&o](const Context& c, Report& r) { run_system(o, c, r); });
        s->add_option("--nx", o.nx, "dimension of X");
        s->add_option("--ny", o.ny, "dimension of Y");
        s->add_option("--seed", o.seed, "random seed");
        s->add_option("--ratio", o.ratio, "dt times the weighted norm of A");
        s->add_option("--steps", o.steps, "number of steps");
        s->add_option("--init", o.init, "oscillator-taylor or system-taylor half step");
        s->add_option("--record-every", o.record_every, "series sampling interval in steps");
        s->add_option("--tol", o.tol, "limit on the relative drift");
    }
    {
        auto& o = a.w1;
        auto* s = add("wave1d", "1D wave equation with pinned ends",
                      [&o](const Context& c, Report& r) { run_wave1d(o, c, r); });
        s->add_option("--material", o.material, "material preset, e.g. \"cmp c=1\" or \"jump target=rho dir=up\"");
        s->add_option("--form", o.form, "auto, cmp or vmp");
        s->add_option("--nx", o.nx, "primal points");
        s->add_option("--final", o.T, "final time");
        s->add_option("--nt", o.nt, "time steps");
        s->add_option("--init", o.init, "taylor-sine or exact-mode");
        s->add_option("--mode", o.m, "mode number");
        s->add_option("--record-every", o.record_every, "series sampling interval in steps");
        s->add_option("--tol", o.tol, "limit on the relative drift");
    }
    {
        auto& o = a.w1c;
        auto* s = add("wave1d-convergence", "1D grid-refinement study",
                      [&o](const Context& c, Report& r) { run_wave1d_convergence(o, c, r); });
        s->add_option("--case", o.kase, "cmp or vmp");
        s->add_option("--material", o.material, "material preset; defaults by case");
        s->add_option("--k", o.k, "refinement levels, Nx = 2^k + 1 (e.g. 4..9)");
        s->add_option("--final", o.final_time, "generic, half-period, full-period or a number");
        s->add_option("--f", o.f, "Nt = 2^(k+f)");
        s->add_option("--courant", o.courant, "fixed dt/dx instead of --f when positive");
        s->add_option("--init", o.init, "taylor-sine or exact-mode");
        s->add_option("--mode", o.m, "mode number");
        s->add_option("--reference", o.reference, "auto, analytic or refine");
        s->add_option_function<double>(
            "--min-order", [&o](const double& v) { o.min_order = v; }, "fail below this fitted order");
        s->add_option_function<double>(
            "--max-order", [&o](const double& v) { o.max_order = v; }, "fail above this fitted order");
    }
    {
        auto& o = a.table;
        auto* s = add("convergence-table", "refinement tables for several materials, one CSV each",
                      [&o](const Context& c, Report& r) { run_convergence_table(o, c, r); });
        s->add_option("--materials", o.materials, "material presets");
        s->add_option("--k", o.k, "refinement levels");
        s->add_option("--f", o.f, "Nt = 2^(k+f)");
        s->add_option("--final", o.T, "final time");
        s->add_option("--init", o.init, "taylor-sine or exact-mode");
        s->add_option_function<double>(
            "--min-order", [&o](const double& v) { o.min_order = v; }, "fail below this fitted order");
    }
    {
        auto& o = a.w2;
        auto* s = add("wave2d", "2D scalar wave mode on the unit square",
                      [&o](const Context& c, Report& r) { run_wave2d(o, c, r); });
        s->add_option("--nx", o.nx, "cells along x");
        s->add_option("--ny", o.ny, "cells along y");
        s->add_option("--m", o.m, "mode number along x");
        s->add_option("--n", o.n, "mode number along y");
        s->add_option("--c", o.c, "wave speed");
        s->add_option("--safety", o.safety, "fraction of the stable step used when --dt is not given");
        s->add_option("--dt", o.dt, "time step; overrides --safety when positive");
        s->add_option("--steps", o.steps, "time steps");
        s->add_option("--record-every", o.record_every, "series sampling interval in steps");
        s->add_option("--tol", o.tol, "limit on the relative drift");
    }
    add_wave3d_options(add("wave3d", "3D scalar wave cavity mode",
                           [&a](const Context& c, Report& r) { run_wave3d(a.w3, c, r); }),
                       a.w3);
    add_wave3d_options(add("maxwell", "3D Maxwell cavity mode with divergence audit",
                           [&a](const Context& c, Report& r) { run_maxwell(a.mx, c, r); }),
                       a.mx);
    {
        auto& o = a.tr;
        auto* s = add("transport", "upwind transport with mass and sign audit",
                      [&o](const Context& c, Report& r) { run_transport(o, c, r); });
        s->add_option("--cells", o.cells, "cells on [-1, 1]");
        s->add_option("--velocity", o.velocity, "x, -x or a constant");
        s->add_option("--courant", o.courant, "max|v| dt/dx");
        s->add_option("--steps", o.steps, "time steps");
        s->add_option("--profile", o.profile, "square or spike");
        s->add_option("--x0", o.x0, "square profile start");
        s->add_option("--x1", o.x1, "square profile end");
        s->add_option("--tol", o.tol, "limit on the relative mass error");
    }
    {
        auto& o = a.df;
        auto* s = add("diffusion", "explicit diffusion with mass and sign audit",
                      [&o](const Context& c, Report& r) { run_diffusion(o, c, r); });
        s->add_option("--cells", o.cells, "cells on [-1, 1]");
        s->add_option("--D", o.D, "a constant or variable");
        s->add_option("--number", o.number, "max (D_i + D_{i+1}) dt/dx^2");
        s->add_option("--steps", o.steps, "time steps");
        s->add_option("--profile", o.profile, "square or spike");
        s->add_option("--x0", o.x0, "square profile start");
        s->add_option("--x1", o.x1, "square profile end");
        s->add_option("--tol", o.tol, "limit on the relative mass error");
    }
    {
        auto& o = a.ver;
        auto* s = add("verify", "operator verification suites",
                      [&o](const Context& c, Report& r) { run_verify(o, c, r); });
        s->add_option("suite", o.suite, "mimetic3d, adjoint, wave1d-sbp or all");
        s->add_option("--grids", o.grids, "cube sizes (3D) or cell counts (1D)");
        s->add_option("--trials", o.trials, "random trials per check");
        s->add_option("--seed", o.seed, "random seed");
        s->add_flag("--broken-sign", o.broken_sign, "flip the starred gradient sign so the adjoint checks fail");
    }
    return cmds;
}

void print_summary(const Report& rep, const std::filesystem::path& report_path, bool quiet, std::ostream& out,
                   std::ostream& err)
{
    for (const auto& w : rep.warnings()) err << "warning: " << w << "\n";
    if (quiet) return;
    for (const auto& [k, v] : rep.metrics.items()) {
        if (v.is_number()) out << "  " << k << " = " << format_number(v.get<double>()) << "\n";
        if (v.is_object())
            for (const auto& [k2, v2] : v.items())
                if (v2.is_number()) out << "  " << k << "[" << k2 << "] = " << format_number(v2.get<double>()) << "\n";
    }
    for (const auto& c : rep.checks())
        out << (c.pass ? "  ok    " : "  FAIL  ") << c.name << " = " << format_number(c.value) << " " << c.op << " "
            << format_number(c.limit) << "\n";
    out << rep.command() << ": " << (rep.pass() ? "PASS" : "FAIL") << " (" << rep.checks().size()
        << " checks), report " << report_path.string() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Leapfrog mimetic wave solvers and verifiers", "mimetic"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_dir = ".";
    std::string simd_name = "auto";
    bool schema = false;
    bool quiet = false;
    app.set_config("--config", "", "INI file, one [section] per subcommand; flags win");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.add_option("--out", out_dir, "output directory")->envname("MIMETIC_OUTPUT_DIR");
    app.add_option("--simd", simd_name, "kernel backend: auto, scalar or avx2");
    app.add_flag("--schema", schema, "print the subcommand's option schema as JSON and exit");
    app.add_flag("--quiet", quiet, "print warnings only");

    AllOpts opts;
    const std::vector<Subcommand> cmds = build(app, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const Subcommand* cmd = nullptr;
    for (const auto& c : cmds)
        if (c.app->parsed()) cmd = &c;
    if (!cmd) {
        err << "error: no subcommand given\n";
        return 2;
    }
    if (schema) {
        out << schema_of(app, *cmd->app).dump(2) << "\n";
        return 0;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const std::string name = cmd->app->get_name();
    Report rep(name);
    std::filesystem::path report_path;
    try {
        if (simd_name != "auto") {
            simd::Backend b;
            if (!simd::parse_backend(simd_name, b)) throw ConfigError("--simd must be auto, scalar or avx2");
            if (!simd::backend_available(b)) throw ConfigError("the " + simd_name + " backend is not available here");
            simd::set_backend(b);
        }
        std::filesystem::create_directories(out_dir);
        const Context ctx{out_dir, slug(name)};
        rep.config = effective_config(*cmd->app);
        rep.config["simd"] = std::string(simd::backend_name(simd::active_backend()));
        cmd->run(ctx, rep);
        report_path = ctx.file("report.json");
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ofstream f(report_path);
        if (!f) throw std::runtime_error("cannot write " + report_path.string());
        f << rep.to_json(wall).dump(2) << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    print_summary(rep, report_path, quiet, out, err);
    return rep.pass() ? 0 : 1;
}

}  // namespace mimetic::cli
