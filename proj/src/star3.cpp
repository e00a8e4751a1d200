#include "mimetic/star3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mimetic::mimetic3d {
namespace {

Array3 sample_scalar(const Grid3& g, std::array<int, 3> st, const ScalarFn& fn)
{
    Array3 out({g.count(0, st[0]), g.count(1, st[1]), g.count(2, st[2])});
    const auto sh = out.shape();
    for (int k = 0; k < sh[2]; ++k)
        for (int j = 0; j < sh[1]; ++j)
            for (int i = 0; i < sh[0]; ++i) {
                auto p = position(g, st, i, j, k);
                out(i, j, k) = fn(p[0], p[1], p[2]);
            }
    return out;
}

Sym3 inverse(const Sym3& m)
{
    // Cofactors of a symmetric 3x3 matrix.
    const double c00 = m.yy * m.zz - m.yz * m.yz;
    const double c01 = m.xz * m.yz - m.xy * m.zz;
    const double c02 = m.xy * m.yz - m.xz * m.yy;
    const double c11 = m.xx * m.zz - m.xz * m.xz;
    const double c12 = m.xy * m.xz - m.xx * m.yz;
    const double c22 = m.xx * m.yy - m.xy * m.xy;
    const double det = m.xx * c00 + m.xy * c01 + m.xz * c02;
    if (!(std::abs(det) > 0.0)) throw ConfigError("Star3: singular material matrix");
    return {c00 / det, c11 / det, c22 / det, c01 / det, c02 / det, c12 / det};
}

MatrixField sample_matrix(const Grid3& g, Kind target_of_rows, const MatrixFn& fn, MatrixMode mode)
{
    MatrixField f;
    f.mode = mode;
    for (int r = 0; r < 3; ++r) {
        const auto st = stagger(target_of_rows, r);
        const int r1 = (r + 1) % 3, r2 = (r + 2) % 3;
        f.diag[r] = sample_scalar(g, st, [&](double x, double y, double z) {
            Sym3 m = fn(x, y, z);
            return mode == MatrixMode::scalar ? m.xx : m.at(r, r);
        });
        if (mode != MatrixMode::full) continue;
        f.off[r][0] = sample_scalar(g, st, [&](double x, double y, double z) { return fn(x, y, z).at(r, r1); });
        f.off[r][1] = sample_scalar(g, st, [&](double x, double y, double z) { return fn(x, y, z).at(r, r2); });
        f.inv_diag[r] = sample_scalar(g, st, [&](double x, double y, double z) { return inverse(fn(x, y, z)).at(r, r); });
        f.inv_off[r][0] = sample_scalar(g, st, [&](double x, double y, double z) { return inverse(fn(x, y, z)).at(r, r1); });
        f.inv_off[r][1] = sample_scalar(g, st, [&](double x, double y, double z) { return inverse(fn(x, y, z)).at(r, r2); });
    }
    return f;
}

// Average along one axis from stagger `from` to stagger `to`.
Array3 average_axis(const Array3& src, int axis, int from, int to, const Grid3& g)
{
    if (from == to) return src;
    auto sh = src.shape();
    sh[axis] = g.count(axis, to);
    Array3 out(sh);
    const bool periodic = g.boundary == Boundary::periodic;
    const int nsrc = src.shape()[axis];
    for (int k = 0; k < sh[2]; ++k)
        for (int j = 0; j < sh[1]; ++j)
            for (int i = 0; i < sh[0]; ++i) {
                std::array<int, 3> idx{i, j, k};
                const int m = idx[axis];
                // Half-shifted target: neighbours m, m+1. Node-aligned target: m-1, m.
                int lo = to == 1 ? m : m - 1;
                int hi = lo + 1;
                if (periodic) {
                    lo = (lo + nsrc) % nsrc;
                    hi = hi % nsrc;
                }
                double sum = 0.0;
                int cnt = 0;
                for (int s : {lo, hi}) {
                    if (s < 0 || s >= nsrc) continue;
                    std::array<int, 3> q = idx;
                    q[axis] = s;
                    sum += src(q[0], q[1], q[2]);
                    ++cnt;
                }
                out(i, j, k) = sum / cnt;
            }
    return out;
}

template <Kind Src, Kind Dst>
Field3<Dst> apply_matrix(const Field3<Src>& in, const MatrixField& mf, bool inverse_op)
{
    const Grid3& g = in.grid();
    Field3<Dst> out(g);
    const auto& k = simd::kernels();
    for (int r = 0; r < 3; ++r) {
        const std::size_t n = out[r].size();
        if (mf.mode != MatrixMode::full) {
            if (inverse_op)
                k.div(out[r].data(), in[r].data(), mf.diag[r].data(), n);
            else
                k.mul(out[r].data(), mf.diag[r].data(), in[r].data(), n);
            continue;
        }
        const auto& dg = inverse_op ? mf.inv_diag : mf.diag;
        const auto& od = inverse_op ? mf.inv_off : mf.off;
        k.mul(out[r].data(), dg[r].data(), in[r].data(), n);
        for (int o = 0; o < 2; ++o) {
            const int c = (r + 1 + o) % 3;
            Array3 avg = average_to(in[c], stagger(Src, c), stagger(Src, r), g);
            Array3 prod(avg.shape());
            k.mul(prod.data(), od[r][o].data(), avg.data(), n);
            k.axpy(out[r].data(), prod.data(), n, 1.0);
        }
    }
    return out;
}

template <Kind Src, Kind Dst>
Field3<Dst> scale_scalar(const Field3<Src>& in, const Array3& w, bool inverse_op)
{
    Field3<Dst> out(in.grid());
    if (inverse_op)
        simd::kernels().div(out[0].data(), in[0].data(), w.data(), w.size());
    else
        simd::kernels().mul(out[0].data(), w.data(), in[0].data(), w.size());
    return out;
}

void check_grid(const Grid3& a, const Grid3& b)
{
    if (!(a == b)) throw ShapeError("star operator: field and material grids differ");
}

double arr_min(const Array3& a) { return *std::min_element(a.values().begin(), a.values().end()); }
double arr_max(const Array3& a) { return *std::max_element(a.values().begin(), a.values().end()); }

}  // namespace

const char* mode_name(MatrixMode m)
{
    switch (m) {
    case MatrixMode::scalar: return "scalar";
    case MatrixMode::diagonal: return "diagonal";
    case MatrixMode::full: return "full";
    }
    return "?";
}

double Sym3::at(int r, int c) const
{
    if (r > c) std::swap(r, c);
    if (r == c) return r == 0 ? xx : (r == 1 ? yy : zz);
    if (r == 0) return c == 1 ? xy : xz;
    return yz;
}

Star3 Star3::trivial(const Grid3& g)
{
    return constant(g, 1.0, 1.0, Sym3::identity(), Sym3::identity(), MatrixMode::scalar);
}

Star3 Star3::constant(const Grid3& g, double a, double b, Sym3 A, Sym3 B, MatrixMode mode, bool guarantee)
{
    return sampled(
        g, [a](double, double, double) { return a; }, [b](double, double, double) { return b; },
        [A](double, double, double) { return A; }, [B](double, double, double) { return B; }, mode, guarantee);
}

Star3 Star3::sampled(const Grid3& g, const ScalarFn& a, const ScalarFn& b, const MatrixFn& A, const MatrixFn& B,
                     MatrixMode mode, bool guarantee)
{
    g.validate();
    Star3 s;
    s.grid = g;
    s.guarantee = guarantee;
    s.a = sample_scalar(g, stagger(Kind::node, 0), a);
    s.b = sample_scalar(g, stagger(Kind::cell, 0), b);
    s.A = sample_matrix(g, Kind::edge, A, mode);
    s.B = sample_matrix(g, Kind::face, B, mode);
    s.validate();
    return s;
}

void Star3::validate() const
{
    if (A.mode == MatrixMode::full || B.mode == MatrixMode::full) {
        if (guarantee)
            throw ConfigError("Star3: full-matrix materials cannot be used in a conserved-quantity guaranteed run");
    }
    auto positive = [](const Array3& x) {
        for (double v : x.values())
            if (!(v > 0.0) || !std::isfinite(v)) return false;
        return true;
    };
    if (!positive(a) || !positive(b)) throw ConfigError("Star3: a and b must be positive");
    for (int r = 0; r < 3; ++r)
        if (!positive(A.diag[r]) || !positive(B.diag[r]))
            throw ConfigError("Star3: diagonal entries of A and B must be positive");
}

double Star3::a_min() const { return arr_min(a); }
double Star3::a_max() const { return arr_max(a); }
double Star3::b_min() const { return arr_min(b); }
double Star3::b_max() const { return arr_max(b); }
double Star3::A_diag_min() const { return std::min({arr_min(A.diag[0]), arr_min(A.diag[1]), arr_min(A.diag[2])}); }
double Star3::A_diag_max() const { return std::max({arr_max(A.diag[0]), arr_max(A.diag[1]), arr_max(A.diag[2])}); }
double Star3::B_diag_min() const { return std::min({arr_min(B.diag[0]), arr_min(B.diag[1]), arr_min(B.diag[2])}); }
double Star3::B_diag_max() const { return std::max({arr_max(B.diag[0]), arr_max(B.diag[1]), arr_max(B.diag[2])}); }

Array3 average_to(const Array3& src, std::array<int, 3> from, std::array<int, 3> to, const Grid3& g)
{
    Array3 cur = src;
    for (int axis = 0; axis < 3; ++axis) cur = average_axis(cur, axis, from[axis], to[axis], g);
    return cur;
}

DualCellField star_a(const NodeField& s, const Star3& m)
{
    check_grid(s.grid(), m.grid);
    return scale_scalar<Kind::node, Kind::dual_cell>(s, m.a, false);
}

NodeField star_a_inv(const DualCellField& d, const Star3& m)
{
    check_grid(d.grid(), m.grid);
    return scale_scalar<Kind::dual_cell, Kind::node>(d, m.a, true);
}

CellField star_b(const DualNodeField& s, const Star3& m)
{
    check_grid(s.grid(), m.grid);
    return scale_scalar<Kind::dual_node, Kind::cell>(s, m.b, false);
}

DualNodeField star_b_inv(const CellField& d, const Star3& m)
{
    check_grid(d.grid(), m.grid);
    return scale_scalar<Kind::cell, Kind::dual_node>(d, m.b, true);
}

DualFaceField star_A(const EdgeField& t, const Star3& m)
{
    check_grid(t.grid(), m.grid);
    return apply_matrix<Kind::edge, Kind::dual_face>(t, m.A, false);
}

EdgeField star_A_inv(const DualFaceField& n, const Star3& m)
{
    check_grid(n.grid(), m.grid);
    return apply_matrix<Kind::dual_face, Kind::edge>(n, m.A, true);
}

FaceField star_B(const DualEdgeField& t, const Star3& m)
{
    check_grid(t.grid(), m.grid);
    return apply_matrix<Kind::dual_edge, Kind::face>(t, m.B, false);
}

DualEdgeField star_B_inv(const FaceField& n, const Star3& m)
{
    check_grid(n.grid(), m.grid);
    return apply_matrix<Kind::face, Kind::dual_edge>(n, m.B, true);
}

}  // namespace mimetic::mimetic3d
