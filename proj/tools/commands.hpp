#pragma once
// Subcommand options and implementations. Each command fills a Report and
// writes its CSV files into the output directory.

#include "report.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mimetic::cli {

struct Context {
    std::filesystem::path out_dir;
    std::string prefix;  // file name prefix, usually the command name
    std::filesystem::path file(const std::string& what) const { return out_dir / (prefix + "_" + what); }
};

struct OscillatorOpts {
    double omega = 1.0;
    double dt = 0.01;
    std::int64_t steps = 10000;
    std::string init = "taylor";  // taylor | exact
    double u0 = 1.0;
    double v0 = 0.0;
    int record_every = 1;
    double tol = 1e-12;
    std::string expect = "auto";  // auto | stable | unstable
};

struct SystemOpts {
    int nx = 3;
    int ny = 2;
    std::uint64_t seed = 1;
    double ratio = 0.5;  // dt times the weighted norm of A
    std::int64_t steps = 1000;
    std::string init = "oscillator-taylor";  // oscillator-taylor | system-taylor
    int record_every = 1;
    double tol = 1e-12;
};

struct Wave1DOpts {
    std::string material = "cmp c=1";
    std::string form = "auto";  // auto | cmp | vmp
    int nx = 65;
    double T = 2.0;
    std::int64_t nt = 512;
    std::string init = "taylor-sine";  // taylor-sine | exact-mode
    int m = 1;
    int record_every = 1;
    double tol = 1e-12;
};

struct Wave1DConvergenceOpts {
    std::string kase = "cmp";  // cmp | vmp
    std::string material;      // default: "cmp c=1" or "bump p=2 q=2"
    std::string k = "4..8";
    std::string final_time = "generic";  // generic | half-period | full-period | <number>
    int f = 2;
    double courant = 0.0;
    std::string init = "taylor-sine";
    int m = 1;
    std::string reference = "auto";  // auto | analytic | refine
    std::optional<double> min_order;
    std::optional<double> max_order;
};

struct ConvergenceTableOpts {
    std::vector<std::string> materials{"cmp c=1", "jump target=tau dir=up", "bump p=2 q=2"};
    std::string k = "4..8";
    int f = 2;
    double T = 0.75;  // not a multiple of the CMP half period
    std::string init = "taylor-sine";
    std::optional<double> min_order;
};

struct Wave2DOpts {
    int nx = 32;
    int ny = 32;
    int m = 1;
    int n = 1;
    double c = 1.0;
    double safety = 0.5;
    double dt = 0.0;  // overrides safety when positive
    std::int64_t steps = 200;
    int record_every = 1;
    double tol = 1e-12;
};

struct Wave3DOpts {
    int grid = 16;
    std::string boundary = "bounded";     // bounded | periodic
    std::string materials = "trivial3d";  // trivial3d | scalar3d | diag3d
    std::int64_t steps = 500;
    double safety = 0.9;
    double dt = 0.0;
    int record_every = 1;
    double tol = 1e-12;
    std::string dump;  // binary snapshot of the final primal field
};

struct TransportOpts {
    int cells = 100;
    std::string velocity = "x";  // x | -x | <constant>
    double courant = 0.9;        // max|v| dt/dx
    std::int64_t steps = 100;
    std::string profile = "square";  // square | spike
    double x0 = -0.3;
    double x1 = 0.3;
    double tol = 1e-13;
};

struct DiffusionOpts {
    int cells = 200;
    std::string D = "1";  // <constant> | variable
    double number = 1.0;  // max (D_i + D_{i+1}) dt/dx^2
    std::int64_t steps = 1000;
    std::string profile = "spike";
    double x0 = -0.3;
    double x1 = 0.3;
    double tol = 1e-13;
};

struct VerifyOpts {
    std::string suite;  // mimetic3d | adjoint | wave1d-sbp | all
    std::vector<int> grids{8, 16};
    int trials = 100;
    std::uint64_t seed = 1;
    bool broken_sign = false;
};

void run_oscillator(const OscillatorOpts& o, const Context& ctx, Report& rep);
void run_system(const SystemOpts& o, const Context& ctx, Report& rep);
void run_wave1d(const Wave1DOpts& o, const Context& ctx, Report& rep);
void run_wave1d_convergence(const Wave1DConvergenceOpts& o, const Context& ctx, Report& rep);
void run_convergence_table(const ConvergenceTableOpts& o, const Context& ctx, Report& rep);
void run_wave2d(const Wave2DOpts& o, const Context& ctx, Report& rep);
void run_wave3d(const Wave3DOpts& o, const Context& ctx, Report& rep);
void run_maxwell(const Wave3DOpts& o, const Context& ctx, Report& rep);
void run_transport(const TransportOpts& o, const Context& ctx, Report& rep);
void run_diffusion(const DiffusionOpts& o, const Context& ctx, Report& rep);
void run_verify(const VerifyOpts& o, const Context& ctx, Report& rep);

// "4..9" -> (4, 9); "6" -> (6, 6). ConfigError otherwise.
std::pair<int, int> parse_k_range(const std::string& s);
// Lower-case alphanumerics with single underscores, for file names.
std::string slug(const std::string& s);

}  // namespace mimetic::cli
