#pragma once
// The six mimetic difference operators.
//
//   primal:  node --G--> edge --R--> face --D--> cell        (forward differences)
//   dual:    dual_node --G*--> dual_edge --R*--> dual_face --D*--> dual_cell
//                                                         (backward differences)
//
// On bounded boxes the starred operators read zero outside the box. That makes
// each starred operator the exact negative transpose (or transpose, for the
// curl) of its primal partner, with no assumption on boundary values.

#include "mimetic/grid3.hpp"

namespace mimetic::mimetic3d {

EdgeField grad3(const NodeField& s);
FaceField curl3(const EdgeField& t);
CellField div3(const FaceField& n);

DualEdgeField grad3_star(const DualNodeField& s);
DualFaceField curl3_star(const DualEdgeField& t);
DualCellField div3_star(const DualFaceField& n);

// out = (+/-) difference of `in` along `axis`, times scale. `forward` selects
// in[i+1]-in[i] (half-shifted output from node-aligned input) versus
// in[i]-in[i-1]. With accumulate the result is added to out.
void difference(Array3& out, const Array3& in, int axis, bool forward, double scale, bool accumulate,
                const Grid3& g);

}  // namespace mimetic::mimetic3d
