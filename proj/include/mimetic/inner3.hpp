#pragma once
// The eight weighted inner products. With <<f, g>> the plain sum of f*g over
// all samples times dV:
//
//   node       <<a s1, s2>>          dual_node  <<b s1, s2>>
//   edge       <<A t1, t2>>          dual_edge  <<B t1, t2>>
//   face       <<B^-1 n1, n2>>       dual_face  <<A^-1 n1, n2>>
//   cell       <<b^-1 d1, d2>>       dual_cell  <<a^-1 d1, d2>>
//
// Sums run component by component in storage order, so results are
// reproducible bit for bit.

#include "mimetic/star3.hpp"

#include <cmath>

namespace mimetic::mimetic3d {

double inner3(const NodeField& f, const NodeField& g, const Star3& m);
double inner3(const EdgeField& f, const EdgeField& g, const Star3& m);
double inner3(const FaceField& f, const FaceField& g, const Star3& m);
double inner3(const CellField& f, const CellField& g, const Star3& m);
double inner3(const DualNodeField& f, const DualNodeField& g, const Star3& m);
double inner3(const DualEdgeField& f, const DualEdgeField& g, const Star3& m);
double inner3(const DualFaceField& f, const DualFaceField& g, const Star3& m);
double inner3(const DualCellField& f, const DualCellField& g, const Star3& m);

// <<f, g>>: unweighted sum times dV.
template <Kind K>
double plain3(const Field3<K>& f, const Field3<K>& g)
{
    f.check_same(g);
    double s = 0.0;
    for (int c = 0; c < Field3<K>::ncomp; ++c) {
        const auto& x = f[c].values();
        const auto& y = g[c].values();
        for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    }
    return s * f.grid().dV();
}

template <Kind K>
double norm3(const Field3<K>& f, const Star3& m)
{
    return std::sqrt(inner3(f, f, m));
}

}  // namespace mimetic::mimetic3d
