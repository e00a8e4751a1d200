#pragma once
// Material (star) operators between the primal and dual grids.
//
//   a : node       -> dual_cell     (and back with 1/a)
//   b : dual_node  -> cell
//   A : edge       -> dual_face     matrix field sampled at edge points
//   B : dual_edge  -> face          matrix field sampled at face points
//
// The source and target kinds share sample points, so scalar and diagonal
// modes are pointwise. In full mode the off-diagonal terms pick up the other
// components averaged onto the target point from their neighbours.

#include "mimetic/grid3.hpp"

#include <functional>

namespace mimetic::mimetic3d {

enum class MatrixMode { scalar, diagonal, full };

const char* mode_name(MatrixMode m);

struct Sym3 {
    double xx = 1.0, yy = 1.0, zz = 1.0;
    double xy = 0.0, xz = 0.0, yz = 0.0;
    double at(int r, int c) const;
    static Sym3 identity(double s = 1.0) { return {s, s, s, 0.0, 0.0, 0.0}; }
    static Sym3 diag(double x, double y, double z) { return {x, y, z, 0.0, 0.0, 0.0}; }
};

// Entries of a symmetric matrix field, row by row. Row r is sampled at the
// points of component r of the kind it multiplies.
struct MatrixField {
    MatrixMode mode = MatrixMode::scalar;
    std::array<Array3, 3> diag;                // (r, r)
    std::array<std::array<Array3, 2>, 3> off;  // (r, r+1), (r, r+2), indices mod 3; full mode only
    // Full mode: the same layout for the pointwise inverse matrix.
    std::array<Array3, 3> inv_diag;
    std::array<std::array<Array3, 2>, 3> inv_off;
};

using ScalarFn = std::function<double(double, double, double)>;
using MatrixFn = std::function<Sym3(double, double, double)>;

struct Star3 {
    Grid3 grid;
    Array3 a;  // node points
    Array3 b;  // cell points
    MatrixField A;
    MatrixField B;
    // Set for runs whose conserved quantities must hold exactly; full mode is
    // then refused because the averaged A and the pointwise inverse of A are
    // not inverse to each other.
    bool guarantee = true;

    static Star3 trivial(const Grid3& g);
    static Star3 constant(const Grid3& g, double a, double b, Sym3 A, Sym3 B, MatrixMode mode, bool guarantee = true);
    static Star3 sampled(const Grid3& g, const ScalarFn& a, const ScalarFn& b, const MatrixFn& A,
                         const MatrixFn& B, MatrixMode mode, bool guarantee = true);

    // ConfigError on nonpositive coefficients, or full mode with guarantee set.
    void validate() const;

    double a_min() const;
    double a_max() const;
    double b_min() const;
    double b_max() const;
    // Extremes over the diagonal entries of A (or B).
    double A_diag_min() const;
    double A_diag_max() const;
    double B_diag_min() const;
    double B_diag_max() const;
};

DualCellField star_a(const NodeField& s, const Star3& m);
NodeField star_a_inv(const DualCellField& d, const Star3& m);
CellField star_b(const DualNodeField& s, const Star3& m);
DualNodeField star_b_inv(const CellField& d, const Star3& m);

DualFaceField star_A(const EdgeField& t, const Star3& m);
EdgeField star_A_inv(const DualFaceField& n, const Star3& m);
FaceField star_B(const DualEdgeField& t, const Star3& m);
DualEdgeField star_B_inv(const FaceField& n, const Star3& m);

// Average of `src` (stagger `from`) onto the points of stagger `to`. Along each
// axis where the staggers differ the two neighbours are averaged; on bounded
// boxes missing neighbours are left out of the average.
Array3 average_to(const Array3& src, std::array<int, 3> from, std::array<int, 3> to, const Grid3& g);

}  // namespace mimetic::mimetic3d
