#include <doctest.h>

#include "cli.hpp"
#include "commands.hpp"
#include "mimetic/dump3.hpp"
#include "mimetic/error.hpp"
#include "mimetic/simd.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

using namespace mimetic;
using namespace mimetic::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::initializer_list<std::string> args)
{
    std::vector<std::string> store{"mimetic"};
    store.insert(store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : store) argv.push_back(s.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name)
{
    const fs::path d = fs::temp_directory_path() / ("mimetic_cli_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST_CASE("k ranges and slugs")
{
    CHECK(parse_k_range("4..9") == std::pair{4, 9});
    CHECK(parse_k_range("6") == std::pair{6, 6});
    CHECK_THROWS_AS(parse_k_range("4..x"), ConfigError);
    CHECK_THROWS_AS(parse_k_range(""), ConfigError);
    CHECK(slug("jump target=tau dir=up") == "jump_target_tau_dir_up");
    CHECK(slug("cmp c=1") == "cmp_c_1");
    CHECK(slug("--A  b--") == "a_b");
}

TEST_CASE("oscillator run writes a passing report and a series")
{
    const auto d = fresh_dir("osc");
    const auto r = run({"--out", d.string(), "oscillator", "--omega", "1", "--dt", "0.01", "--steps", "10000"});
    CHECK(r.code == 0);
    const json rep = load(d / "oscillator_report.json");
    CHECK(rep["pass"] == true);
    CHECK(rep["command"] == "oscillator");
    CHECK(rep["metrics"]["drift_n"].get<double>() <= 1e-12);
    CHECK(rep["metrics"]["drift_half"].get<double>() <= 1e-12);
    CHECK(rep["config"]["dt"] == "0.01");
    CHECK(rep["wall_time_s"].is_number());
    const std::string csv = slurp(d / "oscillator_series.csv");
    CHECK(csv.rfind("step,t,C_n,C_half,C1,C2,C3,divE,divH\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10002);
}

TEST_CASE("exit codes")
{
    const auto d = fresh_dir("codes");
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"oscillator", "--help"}).code == 0);
    CHECK(run({}).code == 2);
    CHECK(run({"--out", d.string(), "no-such-command"}).code == 2);
    CHECK(run({"--out", d.string(), "oscillator", "--no-such-flag"}).code == 2);
    CHECK(run({"--out", d.string(), "oscillator", "--dt", "abc"}).code == 2);
    CHECK(run({"--out", d.string(), "oscillator", "--init", "sideways"}).code == 2);
    CHECK(run({"--out", d.string(), "oscillator", "--omega", "-1"}).code == 2);
    CHECK(run({"--out", d.string(), "--simd", "neon", "oscillator"}).code == 2);
    // A violated step bound with stability demanded is a failed check, not a usage error.
    const auto r = run({"--out", d.string(), "oscillator", "--dt", "2.5", "--steps", "200", "--expect", "stable"});
    CHECK(r.code == 1);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(load(d / "oscillator_report.json")["pass"] == false);
    // Above the bound the default expectation is divergence.
    CHECK(run({"--out", d.string(), "oscillator", "--dt", "2.5", "--steps", "200"}).code == 0);
}

TEST_CASE("CSV output is deterministic")
{
    const auto a = fresh_dir("det_a");
    const auto b = fresh_dir("det_b");
    for (const auto& d : {a, b}) REQUIRE(run({"--out", d.string(), "--quiet", "wave2d", "--nx", "12", "--ny", "10", "--steps", "40"}).code == 0);
    CHECK(slurp(a / "wave2d_series.csv") == slurp(b / "wave2d_series.csv"));
    CHECK(!slurp(a / "wave2d_series.csv").empty());
}

TEST_CASE("scalar and avx2 backends give identical output")
{
    if (!simd::backend_available(simd::Backend::avx2)) return;
    const auto saved = simd::active_backend();
    const auto a = fresh_dir("simd_a");
    const auto b = fresh_dir("simd_b");
    REQUIRE(run({"--out", a.string(), "--simd", "scalar", "maxwell", "--grid", "6", "--steps", "30"}).code == 0);
    REQUIRE(run({"--out", b.string(), "--simd", "avx2", "maxwell", "--grid", "6", "--steps", "30"}).code == 0);
    CHECK(slurp(a / "maxwell_series.csv") == slurp(b / "maxwell_series.csv"));
    CHECK(load(a / "maxwell_report.json")["config"]["simd"] == "scalar");
    simd::set_backend(saved);
}

TEST_CASE("schema dump")
{
    const auto r = run({"--schema", "oscillator"});
    REQUIRE(r.code == 0);
    const json s = json::parse(r.out);
    CHECK(s["command"] == "oscillator");
    bool found = false;
    for (const auto& o : s["options"])
        if (o["name"] == "--omega") {
            found = true;
            CHECK(o["default"] == "1");
            CHECK(!o["description"].get<std::string>().empty());
        }
    CHECK(found);
    CHECK(!s["global_options"].empty());
    for (const char* cmd : {"system", "wave1d", "wave1d-convergence", "convergence-table", "wave2d", "wave3d", "maxwell",
                            "transport", "diffusion", "verify"})
        CHECK(run({"--schema", cmd}).code == 0);
}

TEST_CASE("config file values apply and flags win")
{
    const auto d = fresh_dir("config");
    const auto ini = d / "run.ini";
    std::ofstream(ini) << "[oscillator]\ndt=0.02\nsteps=50\nrecord-every=10\n";
    REQUIRE(run({"--out", d.string(), "--config", ini.string(), "oscillator", "--steps", "30"}).code == 0);
    const json rep = load(d / "oscillator_report.json");
    CHECK(rep["config"]["dt"] == "0.02");
    CHECK(rep["config"]["steps"] == "30");
    CHECK(rep["config"]["record-every"] == "10");
    // 0, 10, 20, 30 plus the header.
    const std::string csv = slurp(d / "oscillator_series.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

    const auto bad = d / "bad.ini";
    std::ofstream(bad) << "[oscillator]\nfrobnicate=3\n";
    CHECK(run({"--out", d.string(), "--config", bad.string(), "oscillator"}).code == 2);
    CHECK(run({"--out", d.string(), "--config", (d / "missing.ini").string(), "oscillator"}).code == 2);
}

TEST_CASE("output directory from the environment")
{
    const auto d = fresh_dir("env");
    ::setenv("MIMETIC_OUTPUT_DIR", (d / "nested").c_str(), 1);
    const auto r = run({"transport", "--steps", "10"});
    ::unsetenv("MIMETIC_OUTPUT_DIR");
    CHECK(r.code == 0);
    CHECK(fs::exists(d / "nested" / "transport_report.json"));
    CHECK(fs::exists(d / "nested" / "transport_profile.csv"));
}

TEST_CASE("verify suites")
{
    const auto d = fresh_dir("verify");
    CHECK(run({"--out", d.string(), "verify", "mimetic3d"}).code == 0);
    const json rep = load(d / "verify_report.json");
    CHECK(rep["pass"] == true);
    CHECK(rep["checks"].size() > 10);
    CHECK(fs::exists(d / "verify_checks.csv"));
    CHECK(run({"--out", d.string(), "verify", "wave1d-sbp"}).code == 0);
    CHECK(run({"--out", d.string(), "verify", "adjoint", "--grids", "5"}).code == 0);
    const auto broken = run({"--out", d.string(), "verify", "adjoint", "--grids", "5", "--broken-sign"});
    CHECK(broken.code == 1);
    CHECK(broken.out.find("FAIL") != std::string::npos);
    CHECK(run({"--out", d.string(), "verify", "everything"}).code == 2);
    CHECK(run({"--out", d.string(), "verify"}).code == 2);
}

TEST_CASE("convergence commands")
{
    const auto d = fresh_dir("conv");
    // Generic final time: second order.
    CHECK(run({"--out", d.string(), "wave1d-convergence", "--case", "cmp", "--k", "4..8", "--min-order", "1.9",
               "--max-order", "2.1"})
              .code == 0);
    const std::string table = slurp(d / "wave1d_convergence_table.csv");
    CHECK(table.rfind("k,Nx,dx,Er,p\n", 0) == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 6);
    // At a full period the leading error cancels, so second order is exceeded.
    CHECK(run({"--out", d.string(), "wave1d-convergence", "--case", "cmp", "--k", "4..8", "--final", "full-period",
               "--max-order", "2.1"})
              .code == 1);
    const auto r = run({"--out", d.string(), "wave1d-convergence", "--case", "cmp", "--k", "4..6", "--final", "2",
                        "--f", "1"});
    CHECK(r.code == 0);
    CHECK(r.err.find("unit Courant") != std::string::npos);
    CHECK(run({"--out", d.string(), "convergence-table", "--k", "4..6"}).code == 0);
    CHECK(fs::exists(d / "convergence_table_cmp_c_1.csv"));
    CHECK(fs::exists(d / "convergence_table_jump_target_tau_dir_up.csv"));
    CHECK(fs::exists(d / "convergence_table_bump_p_2_q_2.csv"));
    CHECK(run({"--out", d.string(), "wave1d-convergence", "--case", "vmp", "--final", "half-period"}).code == 2);
}

TEST_CASE("maxwell dump reads back")
{
    const auto d = fresh_dir("dump");
    REQUIRE(run({"--out", d.string(), "maxwell", "--grid", "6", "--steps", "20", "--dump", "e.bin"}).code == 0);
    std::ifstream in(d / "e.bin", std::ios::binary);
    const auto E = mimetic3d::read_field<mimetic3d::Kind::edge>(in);
    CHECK(E.grid().n[0] == 6);
    CHECK(E.max_abs() > 0.0);
    const json rep = load(d / "maxwell_report.json");
    CHECK(rep["metrics"]["div_drift"].get<double>() <= 1e-12);
    CHECK(rep["files"].size() == 2);
}

TEST_CASE("3D, transport and diffusion commands")
{
    const auto d = fresh_dir("misc");
    CHECK(run({"--out", d.string(), "wave3d", "--grid", "6", "--steps", "40", "--materials", "diag3d"}).code == 0);
    CHECK(run({"--out", d.string(), "wave3d", "--grid", "6", "--materials", "marble"}).code == 2);
    CHECK(run({"--out", d.string(), "system", "--steps", "100"}).code == 0);
    CHECK(run({"--out", d.string(), "wave1d", "--material", "jump target=rho dir=up", "--nt", "256"}).code == 0);
    const auto shift = run({"--out", d.string(), "transport", "--velocity", "-1", "--courant", "1", "--steps", "15"});
    CHECK(shift.code == 0);
    CHECK(shift.out.find("unit_shift_bit_exact") != std::string::npos);
    CHECK(run({"--out", d.string(), "diffusion", "--D", "variable", "--steps", "200"}).code == 0);
    // Above the step bound diffusion loses positivity; the run warns and skips the sign check.
    const auto over = run({"--out", d.string(), "diffusion", "--number", "1.5", "--steps", "50"});
    CHECK(over.err.find("warning") != std::string::npos);
    CHECK(load(d / "diffusion_report.json")["metrics"]["min_rho"].get<double>() < 0.0);
}
