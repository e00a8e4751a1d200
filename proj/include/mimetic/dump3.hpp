#pragma once
// Binary field snapshots. All values little-endian.
//
//   offset  size  content
//   0       4     magic "MFD1"
//   4       4     u32 kind (Kind enum value)
//   8       4     u32 boundary (0 periodic, 1 bounded)
//   12      12    u32 cells nx, ny, nz
//   24      24    f64 extents Lx, Ly, Lz
//   48      4     u32 component count
//   52      12*c  u32 shape (sx, sy, sz) per component
//   ...           f64 samples, component after component, x fastest

#include "mimetic/grid3.hpp"

#include <iosfwd>
#include <string>

namespace mimetic::mimetic3d {

struct DumpHeader {
    Kind kind = Kind::node;
    Grid3 grid;
    int ncomp = 1;
    std::array<std::array<int, 3>, 3> shapes{};
};

void write_header(std::ostream& out, const DumpHeader& h);
DumpHeader read_header(std::istream& in);
void write_values(std::ostream& out, const Array3& a);
void read_values(std::istream& in, Array3& a);

template <Kind K>
void write_field(std::ostream& out, const Field3<K>& f)
{
    DumpHeader h;
    h.kind = K;
    h.grid = f.grid();
    h.ncomp = Field3<K>::ncomp;
    for (int c = 0; c < h.ncomp; ++c) h.shapes[c] = f[c].shape();
    write_header(out, h);
    for (int c = 0; c < h.ncomp; ++c) write_values(out, f[c]);
}

// Throws ShapeError if the stored kind or shapes do not match K.
template <Kind K>
Field3<K> read_field(std::istream& in)
{
    DumpHeader h = read_header(in);
    if (h.kind != K)
        throw ShapeError(std::string("field dump holds kind ") + kind_name(h.kind) + ", expected " + kind_name(K));
    Field3<K> f(h.grid);
    for (int c = 0; c < Field3<K>::ncomp; ++c) {
        if (h.shapes[c] != f[c].shape()) throw ShapeError("field dump: component shape does not match grid");
        read_values(in, f[c]);
    }
    return f;
}

}  // namespace mimetic::mimetic3d
