#include "mimetic/grid3.hpp"

#include <algorithm>
#include <cmath>

namespace mimetic::mimetic3d {

double Grid3::h_min() const { return std::min({h(0), h(1), h(2)}); }

void Grid3::validate() const
{
    for (int a = 0; a < 3; ++a) {
        if (n[a] < 2) throw ConfigError("Grid3: every axis needs at least 2 cells");
        if (!(L[a] > 0.0) || !std::isfinite(L[a])) throw ConfigError("Grid3: extents must be positive");
    }
}

const char* kind_name(Kind k)
{
    switch (k) {
    case Kind::node: return "node";
    case Kind::edge: return "edge";
    case Kind::face: return "face";
    case Kind::cell: return "cell";
    case Kind::dual_node: return "dual_node";
    case Kind::dual_edge: return "dual_edge";
    case Kind::dual_face: return "dual_face";
    case Kind::dual_cell: return "dual_cell";
    }
    return "?";
}

Array3::Array3(std::array<int, 3> shape, double value)
    : shape_(shape), data_(static_cast<std::size_t>(shape[0]) * shape[1] * shape[2], value)
{
}

std::array<int, 3> shape_of(const Grid3& g, Kind k, int comp)
{
    const auto st = stagger(k, comp);
    return {g.count(0, st[0]), g.count(1, st[1]), g.count(2, st[2])};
}

void pin_boundary(Array3& a, std::array<int, 3> st, const Grid3& g)
{
    if (g.boundary == Boundary::periodic) return;
    const auto sh = a.shape();
    auto on_surface = [&](int axis, int idx) { return st[axis] == 0 && (idx == 0 || idx == g.n[axis]); };
    for (int k = 0; k < sh[2]; ++k)
        for (int j = 0; j < sh[1]; ++j) {
            const bool jk = on_surface(1, j) || on_surface(2, k);
            double* r = a.row(j, k);
            if (jk) {
                std::fill(r, r + sh[0], 0.0);
                continue;
            }
            if (st[0] == 0) {
                r[0] = 0.0;
                r[sh[0] - 1] = 0.0;
            }
        }
}

void zero_layer(Array3& a, std::array<int, 3> st, const Grid3& g, int layers)
{
    if (g.boundary == Boundary::periodic || layers <= 0) return;
    const auto sh = a.shape();
    // Node-aligned sample i sits at i*h; half-shifted at (i+1/2)h. Keep samples
    // whose distance from both walls is more than `layers` cells.
    auto inside = [&](int axis, int idx) {
        const double pos = idx + 0.5 * st[axis];
        return pos > layers && pos < g.n[axis] - layers;
    };
    for (int k = 0; k < sh[2]; ++k)
        for (int j = 0; j < sh[1]; ++j)
            for (int i = 0; i < sh[0]; ++i)
                if (!(inside(0, i) && inside(1, j) && inside(2, k))) a(i, j, k) = 0.0;
}

}  // namespace mimetic::mimetic3d
