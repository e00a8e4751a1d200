#include "mimetic/operators3.hpp"

#include <string>
#include <vector>

namespace mimetic::mimetic3d {
namespace {

// One scalar element with the same operation order as the row kernels.
inline void put(double& out, double hi, double lo, double scale, bool acc)
{
    out = acc ? out + (hi - lo) * scale : (hi - lo) * scale;
}

void row_kernel(double* out, const double* hi, const double* lo, std::size_t n, double scale, bool acc)
{
    if (n == 0) return;
    if (acc)
        simd::kernels().diff_add(out, hi, lo, n, scale);
    else
        simd::kernels().diff(out, hi, lo, n, scale);
}

void check_shapes(const Array3& out, const Array3& in, int axis, bool forward, const Grid3& g)
{
    const auto& so = out.shape();
    const auto& si = in.shape();
    bool ok = true;
    for (int a = 0; a < 3; ++a)
        if (a != axis) ok = ok && so[a] == si[a];
    const int N = g.n[axis];
    if (g.boundary == Boundary::periodic)
        ok = ok && so[axis] == N && si[axis] == N;
    else if (forward)
        ok = ok && si[axis] == N + 1 && so[axis] == N;
    else
        ok = ok && si[axis] == N && so[axis] == N + 1;
    if (!ok) throw ShapeError("difference: array shapes do not fit axis " + std::to_string(axis));
}

}  // namespace

void difference(Array3& out, const Array3& in, int axis, bool forward, double scale, bool accumulate,
                const Grid3& g)
{
    check_shapes(out, in, axis, forward, g);
    const auto so = out.shape();
    const bool periodic = g.boundary == Boundary::periodic;
    const int N = g.n[axis];

    if (axis == 0) {
        for (int k = 0; k < so[2]; ++k)
            for (int j = 0; j < so[1]; ++j) {
                double* o = out.row(j, k);
                const double* r = in.row(j, k);
                if (forward) {
                    if (periodic) {
                        row_kernel(o, r + 1, r, N - 1, scale, accumulate);
                        put(o[N - 1], r[0], r[N - 1], scale, accumulate);
                    } else {
                        row_kernel(o, r + 1, r, N, scale, accumulate);
                    }
                } else {
                    if (periodic) {
                        put(o[0], r[0], r[N - 1], scale, accumulate);
                    } else {
                        put(o[0], r[0], 0.0, scale, accumulate);
                        put(o[N], 0.0, r[N - 1], scale, accumulate);
                    }
                    row_kernel(o + 1, r + 1, r, N - 1, scale, accumulate);
                }
            }
        return;
    }

    const int nx = so[0];
    const std::vector<double> zeros(static_cast<std::size_t>(nx), 0.0);
    const int nin = in.shape()[axis];
    for (int k = 0; k < so[2]; ++k)
        for (int j = 0; j < so[1]; ++j) {
            const int m = axis == 1 ? j : k;
            int hi, lo;
            if (forward) {
                hi = m + 1;
                lo = m;
                if (periodic && hi == N) hi = 0;
            } else {
                hi = m;
                lo = m - 1;
                if (periodic && lo < 0) lo = N - 1;
            }
            auto row_at = [&](int idx) -> const double* {
                if (idx < 0 || idx >= nin) return zeros.data();
                return axis == 1 ? in.row(idx, k) : in.row(j, idx);
            };
            row_kernel(out.row(j, k), row_at(hi), row_at(lo), static_cast<std::size_t>(nx), scale, accumulate);
        }
}

EdgeField grad3(const NodeField& s)
{
    const Grid3& g = s.grid();
    EdgeField t(g);
    for (int c = 0; c < 3; ++c) difference(t[c], s[0], c, true, 1.0 / g.h(c), false, g);
    return t;
}

// Component c of the curl is d_{c+1} t_{c+2} - d_{c+2} t_{c+1} (indices mod 3).
FaceField curl3(const EdgeField& t)
{
    const Grid3& g = t.grid();
    FaceField n(g);
    for (int c = 0; c < 3; ++c) {
        const int p = (c + 1) % 3, q = (c + 2) % 3;
        difference(n[c], t[q], p, true, 1.0 / g.h(p), false, g);
        difference(n[c], t[p], q, true, -1.0 / g.h(q), true, g);
    }
    return n;
}

CellField div3(const FaceField& n)
{
    const Grid3& g = n.grid();
    CellField d(g);
    for (int c = 0; c < 3; ++c) difference(d[0], n[c], c, true, 1.0 / g.h(c), c > 0, g);
    return d;
}

DualEdgeField grad3_star(const DualNodeField& s)
{
    const Grid3& g = s.grid();
    DualEdgeField t(g);
    for (int c = 0; c < 3; ++c) difference(t[c], s[0], c, false, 1.0 / g.h(c), false, g);
    return t;
}

DualFaceField curl3_star(const DualEdgeField& t)
{
    const Grid3& g = t.grid();
    DualFaceField n(g);
    for (int c = 0; c < 3; ++c) {
        const int p = (c + 1) % 3, q = (c + 2) % 3;
        difference(n[c], t[q], p, false, 1.0 / g.h(p), false, g);
        difference(n[c], t[p], q, false, -1.0 / g.h(q), true, g);
    }
    return n;
}

DualCellField div3_star(const DualFaceField& n)
{
    const Grid3& g = n.grid();
    DualCellField d(g);
    for (int c = 0; c < 3; ++c) difference(d[0], n[c], c, false, 1.0 / g.h(c), c > 0, g);
    return d;
}

}  // namespace mimetic::mimetic3d
