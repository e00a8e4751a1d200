#pragma once
// Uniform 3D primal/dual staggered grid and the eight field kinds living on it.
//
// Every component array is described by a stagger triple: 0 means the samples
// sit on primal node planes along that axis, 1 means half a cell further.
//
//   kind        comp  stagger      kind        comp  stagger
//   node        -     (0,0,0)      dual_node   -     (1,1,1)
//   edge        x     (1,0,0)      dual_edge   x     (0,1,1)
//   face        x     (0,1,1)      dual_face   x     (1,0,0)
//   cell        -     (1,1,1)      dual_cell   -     (0,0,0)
//
// so each dual kind shares its sample points with one primal kind and the star
// operators are pointwise. Ex sits at (i+1/2, j, k), Hx at (i, j+1/2, k+1/2).
//
// Periodic boxes hold N samples per axis for either stagger. Bounded boxes hold
// N+1 node-aligned and N half-shifted samples per axis, origin at 0.

#include "mimetic/error.hpp"
#include "mimetic/simd.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mimetic::mimetic3d {

enum class Boundary : std::uint8_t { periodic = 0, bounded = 1 };

struct Grid3 {
    std::array<int, 3> n{2, 2, 2};          // cells per axis
    std::array<double, 3> L{1.0, 1.0, 1.0}; // extents
    Boundary boundary = Boundary::bounded;

    static Grid3 cube(int cells, double length, Boundary b)
    {
        return Grid3{{cells, cells, cells}, {length, length, length}, b};
    }

    double h(int axis) const { return L[axis] / n[axis]; }
    double dV() const { return h(0) * h(1) * h(2); }
    double h_min() const;
    // Sample count along an axis for the given stagger.
    int count(int axis, int stagger) const
    {
        return boundary == Boundary::periodic ? n[axis] : n[axis] + (stagger == 0 ? 1 : 0);
    }
    void validate() const;
    bool operator==(const Grid3&) const = default;
};

enum class Kind : std::uint8_t { node, edge, face, cell, dual_node, dual_edge, dual_face, dual_cell };

constexpr int components(Kind k)
{
    return (k == Kind::edge || k == Kind::face || k == Kind::dual_edge || k == Kind::dual_face) ? 3 : 1;
}

constexpr std::array<int, 3> stagger(Kind k, int comp)
{
    switch (k) {
    case Kind::node:
    case Kind::dual_cell: return {0, 0, 0};
    case Kind::cell:
    case Kind::dual_node: return {1, 1, 1};
    case Kind::edge:
    case Kind::dual_face: return {comp == 0 ? 1 : 0, comp == 1 ? 1 : 0, comp == 2 ? 1 : 0};
    case Kind::face:
    case Kind::dual_edge: return {comp == 0 ? 0 : 1, comp == 1 ? 0 : 1, comp == 2 ? 0 : 1};
    }
    return {0, 0, 0};
}

const char* kind_name(Kind k);

class Array3 {
public:
    Array3() = default;
    explicit Array3(std::array<int, 3> shape, double value = 0.0);

    const std::array<int, 3>& shape() const { return shape_; }
    std::size_t size() const { return data_.size(); }
    std::size_t index(int i, int j, int k) const
    {
        return (static_cast<std::size_t>(k) * shape_[1] + j) * shape_[0] + i;
    }
    double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
    double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double* row(int j, int k) { return data_.data() + index(0, j, k); }
    const double* row(int j, int k) const { return data_.data() + index(0, j, k); }
    std::vector<double>& values() { return data_; }
    const std::vector<double>& values() const { return data_; }

private:
    std::array<int, 3> shape_{0, 0, 0};
    std::vector<double> data_;
};

std::array<int, 3> shape_of(const Grid3& g, Kind k, int comp);

// Physical coordinate of sample (i, j, k) of a component with the given stagger.
inline std::array<double, 3> position(const Grid3& g, std::array<int, 3> st, int i, int j, int k)
{
    return {(i + 0.5 * st[0]) * g.h(0), (j + 0.5 * st[1]) * g.h(1), (k + 0.5 * st[2]) * g.h(2)};
}

template <Kind K>
class Field3 {
public:
    static constexpr Kind kind = K;
    static constexpr int ncomp = components(K);

    Field3() = default;
    explicit Field3(const Grid3& g) : grid_(g)
    {
        g.validate();
        for (int c = 0; c < ncomp; ++c) comp_[c] = Array3(shape_of(g, K, c));
    }

    const Grid3& grid() const { return grid_; }
    Array3& operator[](int c) { return comp_[c]; }
    const Array3& operator[](int c) const { return comp_[c]; }
    std::array<int, 3> stagger_of(int c) const { return stagger(K, c); }

    // Fill component c from a function of position.
    template <class F>
    void fill(int c, F&& fn)
    {
        const auto st = stagger(K, c);
        const auto sh = comp_[c].shape();
        for (int k = 0; k < sh[2]; ++k)
            for (int j = 0; j < sh[1]; ++j)
                for (int i = 0; i < sh[0]; ++i) {
                    auto p = position(grid_, st, i, j, k);
                    comp_[c](i, j, k) = fn(p[0], p[1], p[2]);
                }
    }

    Field3& axpy(double a, const Field3& x)
    {
        check_same(x);
        for (int c = 0; c < ncomp; ++c)
            simd::kernels().axpy(comp_[c].data(), x.comp_[c].data(), comp_[c].size(), a);
        return *this;
    }
    Field3& operator+=(const Field3& x) { return axpy(1.0, x); }
    Field3& operator-=(const Field3& x) { return axpy(-1.0, x); }
    Field3& operator*=(double s)
    {
        for (int c = 0; c < ncomp; ++c)
            for (double& v : comp_[c].values()) v *= s;
        return *this;
    }
    friend Field3 operator+(Field3 a, const Field3& b) { return a += b; }
    friend Field3 operator-(Field3 a, const Field3& b) { return a -= b; }
    friend Field3 operator*(double s, Field3 a) { return a *= s; }

    double max_abs() const
    {
        double m = 0.0;
        for (int c = 0; c < ncomp; ++c)
            for (double v : comp_[c].values()) {
                if (v != v) return v;
                m = std::max(m, v < 0 ? -v : v);
            }
        return m;
    }

    void check_same(const Field3& x) const
    {
        if (!(x.grid_ == grid_)) throw ShapeError(std::string("field grids differ for kind ") + kind_name(K));
    }

private:
    Grid3 grid_;
    std::array<Array3, ncomp> comp_;
};

using NodeField = Field3<Kind::node>;
using EdgeField = Field3<Kind::edge>;
using FaceField = Field3<Kind::face>;
using CellField = Field3<Kind::cell>;
using DualNodeField = Field3<Kind::dual_node>;
using DualEdgeField = Field3<Kind::dual_edge>;
using DualFaceField = Field3<Kind::dual_face>;
using DualCellField = Field3<Kind::dual_cell>;

// Zero every sample lying on the box surface, i.e. with a node-aligned index at
// 0 or N on some axis. No-op on periodic grids.
void pin_boundary(Array3& a, std::array<int, 3> st, const Grid3& g);

template <Kind K>
void pin_boundary(Field3<K>& f)
{
    for (int c = 0; c < Field3<K>::ncomp; ++c) pin_boundary(f[c], stagger(K, c), f.grid());
}

// Zero the samples within `layers` cells of the box surface (bounded grids only).
void zero_layer(Array3& a, std::array<int, 3> st, const Grid3& g, int layers);

template <Kind K>
void zero_layer(Field3<K>& f, int layers)
{
    for (int c = 0; c < Field3<K>::ncomp; ++c) zero_layer(f[c], stagger(K, c), f.grid(), layers);
}

}  // namespace mimetic::mimetic3d
