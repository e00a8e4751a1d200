#pragma once
// 2D grids on the unit square, the centred difference operators between them,
// and the 2D scalar wave.
//
// Indices are 0-based. Against the 1-based description of the grids, primal
// node i here is node i+1 there; e.g. nxd(i,j) = A11 txp(i,j+1) reads the same
// in both because only the relative shift matters.
//
//   fp  (Nx+1)x(Ny+1)  (xp_i, yp_j)      fd  Nx x Ny          (xd_i, yd_j)
//   gp  Nx x Ny        (xd_i, yd_j)      gd  (Nx-1)x(Ny-1)    (xp_{i+1}, yp_{j+1})
//   txp Nx x (Ny+1)    (xd_i, yp_j)      txd (Nx-1) x Ny      (xp_{i+1}, yd_j)
//   typ (Nx+1) x Ny    (xp_i, yd_j)      tyd Nx x (Ny-1)      (xd_i, yp_{j+1})
//   nxp (Nx+1) x Ny    (xp_i, yd_j)      nxd Nx x (Ny-1)      (xd_i, yp_{j+1})
//   nyp Nx x (Ny+1)    (xd_i, yp_j)      nyd (Nx-1) x Ny      (xp_{i+1}, yd_j)
//
// with xp_i = i dx and xd_i = (i + 1/2) dx.

#include "mimetic/leapfrog.hpp"

#include <cstdint>
#include <vector>

namespace mimetic::wave2d {

struct Grid2 {
    int Nx = 2;
    int Ny = 2;
    double dx() const { return 1.0 / Nx; }
    double dy() const { return 1.0 / Ny; }
    double xp(int i) const { return i * dx(); }
    double yp(int j) const { return j * dy(); }
    double xd(int i) const { return (i + 0.5) * dx(); }
    double yd(int j) const { return (j + 0.5) * dy(); }
    void validate() const;
};

class Array2 {
public:
    Array2() = default;
    Array2(int nx, int ny, double value = 0.0);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    std::size_t size() const { return d_.size(); }
    double& operator()(int i, int j) { return d_[static_cast<std::size_t>(j) * nx_ + i]; }
    double operator()(int i, int j) const { return d_[static_cast<std::size_t>(j) * nx_ + i]; }
    double* data() { return d_.data(); }
    const double* data() const { return d_.data(); }
    const std::vector<double>& values() const { return d_; }
    std::vector<double>& values() { return d_; }

    Array2& axpy(double a, const Array2& x);
    Array2& operator+=(const Array2& x) { return axpy(1.0, x); }
    Array2& operator-=(const Array2& x) { return axpy(-1.0, x); }
    Array2& operator*=(double s);
    friend Array2 operator+(Array2 a, const Array2& b) { return a += b; }
    friend Array2 operator-(Array2 a, const Array2& b) { return a -= b; }
    friend Array2 operator*(double s, Array2 a) { return a *= s; }

    double max_abs() const;

private:
    int nx_ = 0;
    int ny_ = 0;
    std::vector<double> d_;
};

// A pair of components, e.g. (txp, typ) or (nxd, nyd).
struct Pair2 {
    Array2 x;
    Array2 y;
    Pair2& operator+=(const Pair2& o);
    Pair2& operator-=(const Pair2& o);
    Pair2& operator*=(double s);
    friend Pair2 operator+(Pair2 a, const Pair2& b) { return a += b; }
    friend Pair2 operator-(Pair2 a, const Pair2& b) { return a -= b; }
    friend Pair2 operator*(double s, Pair2 a) { return a *= s; }
};

enum class Kind2 { fp, gp, txp, typ, nxp, nyp, fd, gd, txd, tyd, nxd, nyd };
struct Shape2 {
    int nx, ny;
};
Shape2 shape_of(const Grid2& g, Kind2 k);
Array2 make(const Grid2& g, Kind2 k);

// Sample fn at the points of kind k.
template <class F>
Array2 sample(const Grid2& g, Kind2 k, F&& fn);

Pair2 grad2p(const Array2& fp, const Grid2& g);     // -> (txp, typ)
Array2 div2d(const Pair2& nd, const Grid2& g);      // (nxd, nyd) -> gd
Pair2 grad2d(const Array2& fd, const Grid2& g);     // -> (txd, tyd)
Array2 div2p(const Pair2& np, const Grid2& g);      // (nxp, nyp) -> gp

// Constant materials.
struct Star2 {
    double a = 1.0, A11 = 1.0, A22 = 1.0;
    double b = 1.0, B11 = 1.0, B22 = 1.0;
    void validate() const;
};

Pair2 star2_A(const Pair2& tp, const Grid2& g, const Star2& s);      // (txp,typ) -> (nxd,nyd)
Pair2 star2_A_inv(const Pair2& nd, const Grid2& g, const Star2& s);  // (nxd,nyd) -> (txp,typ), boundary rows 0
Array2 star2_a(const Array2& fp, const Grid2& g, const Star2& s);    // fp -> gd
Array2 star2_a_inv(const Array2& gd, const Grid2& g, const Star2& s);// gd -> fp, boundary ring 0
Pair2 star2_B(const Pair2& td, const Grid2& g, const Star2& s);      // (txd,tyd) -> (nxp,nyp), boundary rows 0
Pair2 star2_B_inv(const Pair2& np, const Grid2& g, const Star2& s);  // (nxp,nyp) -> (txd,tyd)
Array2 star2_b(const Array2& fd, const Grid2& g, const Star2& s);    // fd -> gp
Array2 star2_b_inv(const Array2& gp, const Grid2& g, const Star2& s);// gp -> fd

// Scalar wave s_t = a^-1 div v, v_t = A grad s with s on fp and v on (nxd, nyd).
using Ops2 = core::OperatorPair<Array2, Pair2>;
using State2 = core::SystemState<Array2, Pair2>;

Ops2 wave2d_operators(const Grid2& g, const Star2& s);
void wave2d_step(State2& st, const Grid2& g, const Star2& s);
double inner_fp(const Array2& a, const Array2& b, const Grid2& g, const Star2& s);
double inner_nd(const Pair2& a, const Pair2& b, const Grid2& g, const Star2& s);
core::Conserved wave2d_conserved_n(const State2& st, const Grid2& g, const Star2& s);
core::Conserved wave2d_conserved_half(const State2& st, const Grid2& g, const Star2& s);

struct Exact2 {
    double u, vx, vy;
};
// u = cos(c S pi t) sin(m pi x) sin(n pi y),
// v = (1/S) sin(c S pi t) (m cos(m pi x) sin(n pi y), n sin(m pi x) cos(n pi y)), S = sqrt(m^2+n^2).
// Solves the system with a = 1/c, A = c. Throws ConfigError if m or n < 1.
Exact2 exact_solution_2d(int m, int n, double c, double x, double y, double t);

struct Run2 {
    double drift_n = 0.0;
    double drift_half = 0.0;
    double error_u = 0.0;  // max over fp at the final time
    double c0 = 0.0;
    std::vector<std::int64_t> steps;
    std::vector<core::Conserved> cn, chalf;
};

// Mode (m, n) from t = 0 with the Taylor half step; materials a = 1/c, A = c.
Run2 run_mode(const Grid2& g, int m, int n, double c, double dt, std::int64_t steps, int record_every = 1);

template <class F>
Array2 sample(const Grid2& g, Kind2 k, F&& fn)
{
    Array2 out = make(g, k);
    auto pos = [&](int i, int j) -> std::pair<double, double> {
        switch (k) {
        case Kind2::fp: return {g.xp(i), g.yp(j)};
        case Kind2::gp:
        case Kind2::fd: return {g.xd(i), g.yd(j)};
        case Kind2::txp:
        case Kind2::nyp: return {g.xd(i), g.yp(j)};
        case Kind2::typ:
        case Kind2::nxp: return {g.xp(i), g.yd(j)};
        case Kind2::gd: return {g.xp(i + 1), g.yp(j + 1)};
        case Kind2::txd:
        case Kind2::nyd: return {g.xp(i + 1), g.yd(j)};
        case Kind2::tyd:
        case Kind2::nxd: return {g.xd(i), g.yp(j + 1)};
        }
        return {0.0, 0.0};
    };
    for (int j = 0; j < out.ny(); ++j)
        for (int i = 0; i < out.nx(); ++i) {
            auto [x, y] = pos(i, j);
            out(i, j) = fn(x, y);
        }
    return out;
}

}  // namespace mimetic::wave2d
