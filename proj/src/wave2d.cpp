#include "mimetic/wave2d.hpp"

#include "mimetic/error.hpp"
#include "mimetic/simd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mimetic::wave2d {
namespace {

using std::numbers::pi;

void require(const Array2& a, Shape2 s, const char* what)
{
    if (a.nx() != s.nx || a.ny() != s.ny)
        throw ShapeError(std::string("wave2d: ") + what + " has shape " + std::to_string(a.nx()) + "x" +
                         std::to_string(a.ny()) + ", expected " + std::to_string(s.nx) + "x" + std::to_string(s.ny));
}

}  // namespace

void Grid2::validate() const
{
    if (Nx < 2 || Ny < 2) throw ConfigError("wave2d: Nx and Ny must be at least 2");
}

Array2::Array2(int nx, int ny, double value)
    : nx_(nx), ny_(ny), d_(static_cast<std::size_t>(std::max(nx, 0)) * std::max(ny, 0), value)
{
    if (nx < 0 || ny < 0) throw ShapeError("Array2: negative extent");
}

Array2& Array2::axpy(double a, const Array2& x)
{
    if (x.nx_ != nx_ || x.ny_ != ny_) throw ShapeError("Array2: shape mismatch");
    simd::kernels().axpy(d_.data(), x.d_.data(), d_.size(), a);
    return *this;
}

Array2& Array2::operator*=(double s)
{
    for (double& v : d_) v *= s;
    return *this;
}

double Array2::max_abs() const
{
    double m = 0.0;
    for (double v : d_) {
        if (std::isnan(v)) return v;
        m = std::max(m, std::abs(v));
    }
    return m;
}

Pair2& Pair2::operator+=(const Pair2& o)
{
    x += o.x;
    y += o.y;
    return *this;
}

Pair2& Pair2::operator-=(const Pair2& o)
{
    x -= o.x;
    y -= o.y;
    return *this;
}

Pair2& Pair2::operator*=(double s)
{
    x *= s;
    y *= s;
    return *this;
}

Shape2 shape_of(const Grid2& g, Kind2 k)
{
    const int X = g.Nx, Y = g.Ny;
    switch (k) {
    case Kind2::fp: return {X + 1, Y + 1};
    case Kind2::gp:
    case Kind2::fd: return {X, Y};
    case Kind2::txp:
    case Kind2::nyp: return {X, Y + 1};
    case Kind2::typ:
    case Kind2::nxp: return {X + 1, Y};
    case Kind2::gd: return {X - 1, Y - 1};
    case Kind2::txd:
    case Kind2::nyd: return {X - 1, Y};
    case Kind2::tyd:
    case Kind2::nxd: return {X, Y - 1};
    }
    return {0, 0};
}

Array2 make(const Grid2& g, Kind2 k)
{
    const Shape2 s = shape_of(g, k);
    return Array2(s.nx, s.ny);
}

Pair2 grad2p(const Array2& fp, const Grid2& g)
{
    require(fp, shape_of(g, Kind2::fp), "fp");
    Pair2 t{make(g, Kind2::txp), make(g, Kind2::typ)};
    const double rx = 1.0 / g.dx(), ry = 1.0 / g.dy();
    for (int j = 0; j <= g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i) t.x(i, j) = (fp(i + 1, j) - fp(i, j)) * rx;
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i <= g.Nx; ++i) t.y(i, j) = (fp(i, j + 1) - fp(i, j)) * ry;
    return t;
}

Array2 div2d(const Pair2& nd, const Grid2& g)
{
    require(nd.x, shape_of(g, Kind2::nxd), "nxd");
    require(nd.y, shape_of(g, Kind2::nyd), "nyd");
    Array2 gd = make(g, Kind2::gd);
    const double rx = 1.0 / g.dx(), ry = 1.0 / g.dy();
    for (int j = 0; j < g.Ny - 1; ++j)
        for (int i = 0; i < g.Nx - 1; ++i)
            gd(i, j) = (nd.x(i + 1, j) - nd.x(i, j)) * rx + (nd.y(i, j + 1) - nd.y(i, j)) * ry;
    return gd;
}

Pair2 grad2d(const Array2& fd, const Grid2& g)
{
    require(fd, shape_of(g, Kind2::fd), "fd");
    Pair2 t{make(g, Kind2::txd), make(g, Kind2::tyd)};
    const double rx = 1.0 / g.dx(), ry = 1.0 / g.dy();
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx - 1; ++i) t.x(i, j) = (fd(i + 1, j) - fd(i, j)) * rx;
    for (int j = 0; j < g.Ny - 1; ++j)
        for (int i = 0; i < g.Nx; ++i) t.y(i, j) = (fd(i, j + 1) - fd(i, j)) * ry;
    return t;
}

Array2 div2p(const Pair2& np, const Grid2& g)
{
    require(np.x, shape_of(g, Kind2::nxp), "nxp");
    require(np.y, shape_of(g, Kind2::nyp), "nyp");
    Array2 gp = make(g, Kind2::gp);
    const double rx = 1.0 / g.dx(), ry = 1.0 / g.dy();
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i)
            gp(i, j) = (np.x(i + 1, j) - np.x(i, j)) * rx + (np.y(i, j + 1) - np.y(i, j)) * ry;
    return gp;
}

void Star2::validate() const
{
    for (double v : {a, A11, A22, b, B11, B22})
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("wave2d: material constants must be positive and finite");
}

Pair2 star2_A(const Pair2& tp, const Grid2& g, const Star2& s)
{
    require(tp.x, shape_of(g, Kind2::txp), "txp");
    require(tp.y, shape_of(g, Kind2::typ), "typ");
    Pair2 n{make(g, Kind2::nxd), make(g, Kind2::nyd)};
    for (int j = 0; j < g.Ny - 1; ++j)
        for (int i = 0; i < g.Nx; ++i) n.x(i, j) = s.A11 * tp.x(i, j + 1);
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx - 1; ++i) n.y(i, j) = s.A22 * tp.y(i + 1, j);
    return n;
}

Pair2 star2_A_inv(const Pair2& nd, const Grid2& g, const Star2& s)
{
    require(nd.x, shape_of(g, Kind2::nxd), "nxd");
    require(nd.y, shape_of(g, Kind2::nyd), "nyd");
    Pair2 t{make(g, Kind2::txp), make(g, Kind2::typ)};
    for (int j = 0; j < g.Ny - 1; ++j)
        for (int i = 0; i < g.Nx; ++i) t.x(i, j + 1) = nd.x(i, j) / s.A11;
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx - 1; ++i) t.y(i + 1, j) = nd.y(i, j) / s.A22;
    return t;
}

Array2 star2_a(const Array2& fp, const Grid2& g, const Star2& s)
{
    require(fp, shape_of(g, Kind2::fp), "fp");
    Array2 gd = make(g, Kind2::gd);
    for (int j = 0; j < g.Ny - 1; ++j)
        for (int i = 0; i < g.Nx - 1; ++i) gd(i, j) = s.a * fp(i + 1, j + 1);
    return gd;
}

Array2 star2_a_inv(const Array2& gd, const Grid2& g, const Star2& s)
{
    require(gd, shape_of(g, Kind2::gd), "gd");
    Array2 fp = make(g, Kind2::fp);
    for (int j = 0; j < g.Ny - 1; ++j)
        for (int i = 0; i < g.Nx - 1; ++i) fp(i + 1, j + 1) = gd(i, j) / s.a;
    return fp;
}

Pair2 star2_B(const Pair2& td, const Grid2& g, const Star2& s)
{
    require(td.x, shape_of(g, Kind2::txd), "txd");
    require(td.y, shape_of(g, Kind2::tyd), "tyd");
    Pair2 n{make(g, Kind2::nxp), make(g, Kind2::nyp)};
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx - 1; ++i) n.x(i + 1, j) = s.B11 * td.x(i, j);
    for (int j = 0; j < g.Ny - 1; ++j)
        for (int i = 0; i < g.Nx; ++i) n.y(i, j + 1) = s.B22 * td.y(i, j);
    return n;
}

Pair2 star2_B_inv(const Pair2& np, const Grid2& g, const Star2& s)
{
    require(np.x, shape_of(g, Kind2::nxp), "nxp");
    require(np.y, shape_of(g, Kind2::nyp), "nyp");
    Pair2 t{make(g, Kind2::txd), make(g, Kind2::tyd)};
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx - 1; ++i) t.x(i, j) = np.x(i + 1, j) / s.B11;
    for (int j = 0; j < g.Ny - 1; ++j)
        for (int i = 0; i < g.Nx; ++i) t.y(i, j) = np.y(i, j + 1) / s.B22;
    return t;
}

Array2 star2_b(const Array2& fd, const Grid2& g, const Star2& s)
{
    require(fd, shape_of(g, Kind2::fd), "fd");
    Array2 gp = fd;
    gp *= s.b;
    return gp;
}

Array2 star2_b_inv(const Array2& gp, const Grid2& g, const Star2& s)
{
    require(gp, shape_of(g, Kind2::gp), "gp");
    Array2 fd = gp;
    for (double& v : fd.values()) v /= s.b;
    return fd;
}

Ops2 wave2d_operators(const Grid2& g, const Star2& s)
{
    g.validate();
    s.validate();
    Ops2 ops;
    ops.apply_A = [g, s](const Array2& f) { return star2_A(grad2p(f, g), g, s); };
    ops.apply_Astar = [g, s](const Pair2& v) {
        Array2 out = star2_a_inv(div2d(v, g), g, s);
        out *= -1.0;
        return out;
    };
    const double speed = std::sqrt(std::max(s.A11, s.A22) / s.a);
    ops.norm_bound_A = speed * 2.0 * std::sqrt(1.0 / (g.dx() * g.dx()) + 1.0 / (g.dy() * g.dy()));
    ops.norm_bound_Astar = ops.norm_bound_A;
    return ops;
}

void wave2d_step(State2& st, const Grid2& g, const Star2& s) { core::system_step(st, wave2d_operators(g, s)); }

double inner_fp(const Array2& a, const Array2& b, const Grid2& g, const Star2& s)
{
    require(a, shape_of(g, Kind2::fp), "fp");
    require(b, shape_of(g, Kind2::fp), "fp");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a.values()[i] * b.values()[i];
    return s.a * sum * g.dx() * g.dy();
}

double inner_nd(const Pair2& a, const Pair2& b, const Grid2& g, const Star2& s)
{
    require(a.x, shape_of(g, Kind2::nxd), "nxd");
    require(a.y, shape_of(g, Kind2::nyd), "nyd");
    require(b.x, shape_of(g, Kind2::nxd), "nxd");
    require(b.y, shape_of(g, Kind2::nyd), "nyd");
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < a.x.size(); ++i) sx += a.x.values()[i] * b.x.values()[i];
    for (std::size_t i = 0; i < a.y.size(); ++i) sy += a.y.values()[i] * b.y.values()[i];
    return (sx / s.A11 + sy / s.A22) * g.dx() * g.dy();
}

namespace {

core::InnerProduct<Array2> fp_ip(const Grid2& g, const Star2& s)
{
    return [g, s](const Array2& a, const Array2& b) { return inner_fp(a, b, g, s); };
}
core::InnerProduct<Pair2> nd_ip(const Grid2& g, const Star2& s)
{
    return [g, s](const Pair2& a, const Pair2& b) { return inner_nd(a, b, g, s); };
}

}  // namespace

core::Conserved wave2d_conserved_n(const State2& st, const Grid2& g, const Star2& s)
{
    return core::conserved_full_parts(st, wave2d_operators(g, s), fp_ip(g, s), nd_ip(g, s));
}

core::Conserved wave2d_conserved_half(const State2& st, const Grid2& g, const Star2& s)
{
    return core::conserved_half_step_parts(st, wave2d_operators(g, s), fp_ip(g, s), nd_ip(g, s));
}

Exact2 exact_solution_2d(int m, int n, double c, double x, double y, double t)
{
    if (m < 1 || n < 1) throw ConfigError("exact_solution_2d: mode numbers must be at least 1");
    const double S = std::sqrt(static_cast<double>(m * m + n * n));
    const double w = c * S * pi;
    const double sx = std::sin(m * pi * x), cx = std::cos(m * pi * x);
    const double sy = std::sin(n * pi * y), cy = std::cos(n * pi * y);
    const double st = std::sin(w * t);
    return {std::cos(w * t) * sx * sy, st * m * cx * sy / S, st * n * sx * cy / S};
}

Run2 run_mode(const Grid2& g, int m, int n, double c, double dt, std::int64_t steps, int record_every)
{
    if (!(c > 0.0)) throw ConfigError("run_mode: c must be positive");
    if (!(dt > 0.0)) throw ConfigError("run_mode: dt must be positive");
    Star2 s;
    s.a = 1.0 / c;
    s.A11 = s.A22 = c;
    const Ops2 ops = wave2d_operators(g, s);
    Array2 u0 = sample(g, Kind2::fp, [&](double x, double y) { return exact_solution_2d(m, n, c, x, y, 0.0).u; });
    for (int i = 0; i <= g.Nx; ++i) u0(i, 0) = u0(i, g.Ny) = 0.0;
    for (int j = 0; j <= g.Ny; ++j) u0(0, j) = u0(g.Nx, j) = 0.0;
    Pair2 v0{make(g, Kind2::nxd), make(g, Kind2::nyd)};
    State2 st = core::make_state(u0, core::init_g_half(u0, v0, ops, dt), ops, dt);

    Run2 run;
    auto ip_x = fp_ip(g, s);
    auto ip_y = nd_ip(g, s);
    auto record = [&] {
        run.steps.push_back(st.step);
        run.cn.push_back(core::conserved_full_parts(st, ops, ip_x, ip_y));
        run.chalf.push_back(core::conserved_half_step_parts(st, ops, ip_x, ip_y));
    };
    record();
    run.c0 = run.cn.front().value();
    const double c0h = run.chalf.front().value();
    for (std::int64_t k = 0; k < steps; ++k) {
        core::system_step(st, ops);
        if (record_every > 0 && (st.step % record_every == 0 || st.step == steps)) {
            record();
            run.drift_n = std::max(run.drift_n, std::abs(run.cn.back().value() - run.c0) / std::abs(run.c0));
            run.drift_half = std::max(run.drift_half, std::abs(run.chalf.back().value() - c0h) / std::abs(c0h));
        }
    }
    const double T = steps * dt;
    const Array2 exact = sample(g, Kind2::fp, [&](double x, double y) { return exact_solution_2d(m, n, c, x, y, T).u; });
    run.error_u = (st.f - exact).max_abs();
    return run;
}

}  // namespace mimetic::wave2d
