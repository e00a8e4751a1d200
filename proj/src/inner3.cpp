#include "mimetic/inner3.hpp"

namespace mimetic::mimetic3d {
namespace {

// sum (w f) g  or  sum (f / w) g, times dV.
double weighted(const Array3& f, const Array3& g, const Array3& w, bool inverse_w)
{
    const auto& x = f.values();
    const auto& y = g.values();
    const auto& z = w.values();
    double s = 0.0;
    if (inverse_w)
        for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] / z[i]) * y[i];
    else
        for (std::size_t i = 0; i < x.size(); ++i) s += (z[i] * x[i]) * y[i];
    return s;
}

template <Kind K>
double diag_sum(const Field3<K>& f, const Field3<K>& g, const MatrixField& mf, bool inverse_w)
{
    double s = 0.0;
    for (int c = 0; c < 3; ++c) s += weighted(f[c], g[c], mf.diag[c], inverse_w);
    return s * f.grid().dV();
}

// Sum of products between co-located components of two kinds, times dV.
template <Kind K1, Kind K2>
double cross_sum(const Field3<K1>& f, const Field3<K2>& g)
{
    double s = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto& x = f[c].values();
        const auto& y = g[c].values();
        for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    }
    return s * f.grid().dV();
}

void check(const Grid3& a, const Grid3& b, const Grid3& c)
{
    if (!(a == b) || !(a == c)) throw ShapeError("inner3: grids differ");
}

}  // namespace

double inner3(const NodeField& f, const NodeField& g, const Star3& m)
{
    check(f.grid(), g.grid(), m.grid);
    return weighted(f[0], g[0], m.a, false) * f.grid().dV();
}

double inner3(const EdgeField& f, const EdgeField& g, const Star3& m)
{
    check(f.grid(), g.grid(), m.grid);
    if (m.A.mode == MatrixMode::full) return cross_sum(star_A(f, m), g);
    return diag_sum(f, g, m.A, false);
}

double inner3(const FaceField& f, const FaceField& g, const Star3& m)
{
    check(f.grid(), g.grid(), m.grid);
    if (m.B.mode == MatrixMode::full) return cross_sum(star_B_inv(f, m), g);
    return diag_sum(f, g, m.B, true);
}

double inner3(const CellField& f, const CellField& g, const Star3& m)
{
    check(f.grid(), g.grid(), m.grid);
    return weighted(f[0], g[0], m.b, true) * f.grid().dV();
}

double inner3(const DualNodeField& f, const DualNodeField& g, const Star3& m)
{
    check(f.grid(), g.grid(), m.grid);
    return weighted(f[0], g[0], m.b, false) * f.grid().dV();
}

double inner3(const DualEdgeField& f, const DualEdgeField& g, const Star3& m)
{
    check(f.grid(), g.grid(), m.grid);
    if (m.B.mode == MatrixMode::full) return cross_sum(star_B(f, m), g);
    return diag_sum(f, g, m.B, false);
}

double inner3(const DualFaceField& f, const DualFaceField& g, const Star3& m)
{
    check(f.grid(), g.grid(), m.grid);
    if (m.A.mode == MatrixMode::full) return cross_sum(star_A_inv(f, m), g);
    return diag_sum(f, g, m.A, true);
}

double inner3(const DualCellField& f, const DualCellField& g, const Star3& m)
{
    check(f.grid(), g.grid(), m.grid);
    return weighted(f[0], g[0], m.a, true) * f.grid().dV();
}

}  // namespace mimetic::mimetic3d
