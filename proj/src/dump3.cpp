#include "mimetic/dump3.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

namespace mimetic::mimetic3d {
namespace {

constexpr char kMagic[4] = {'M', 'F', 'D', '1'};

void put_u32(std::ostream& out, std::uint32_t v)
{
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double d)
{
    std::uint64_t v = std::bit_cast<std::uint64_t>(d);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& in)
{
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) throw ShapeError("field dump: truncated header");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

double get_f64(std::istream& in)
{
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw ShapeError("field dump: truncated data");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(v);
}

}  // namespace

void write_header(std::ostream& out, const DumpHeader& h)
{
    out.write(kMagic, 4);
    put_u32(out, static_cast<std::uint32_t>(h.kind));
    put_u32(out, static_cast<std::uint32_t>(h.grid.boundary));
    for (int a = 0; a < 3; ++a) put_u32(out, static_cast<std::uint32_t>(h.grid.n[a]));
    for (int a = 0; a < 3; ++a) put_f64(out, h.grid.L[a]);
    put_u32(out, static_cast<std::uint32_t>(h.ncomp));
    for (int c = 0; c < h.ncomp; ++c)
        for (int a = 0; a < 3; ++a) put_u32(out, static_cast<std::uint32_t>(h.shapes[c][a]));
}

DumpHeader read_header(std::istream& in)
{
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw ShapeError("field dump: bad magic");
    DumpHeader h;
    const std::uint32_t kind = get_u32(in);
    if (kind > static_cast<std::uint32_t>(Kind::dual_cell)) throw ShapeError("field dump: unknown kind");
    h.kind = static_cast<Kind>(kind);
    const std::uint32_t bnd = get_u32(in);
    if (bnd > 1) throw ShapeError("field dump: unknown boundary policy");
    h.grid.boundary = static_cast<Boundary>(bnd);
    for (int a = 0; a < 3; ++a) h.grid.n[a] = static_cast<int>(get_u32(in));
    for (int a = 0; a < 3; ++a) h.grid.L[a] = get_f64(in);
    h.grid.validate();
    h.ncomp = static_cast<int>(get_u32(in));
    if (h.ncomp != components(h.kind)) throw ShapeError("field dump: component count does not match kind");
    for (int c = 0; c < h.ncomp; ++c)
        for (int a = 0; a < 3; ++a) h.shapes[c][a] = static_cast<int>(get_u32(in));
    return h;
}

void write_values(std::ostream& out, const Array3& a)
{
    for (double v : a.values()) put_f64(out, v);
}

void read_values(std::istream& in, Array3& a)
{
    for (double& v : a.values()) v = get_f64(in);
}

}  // namespace mimetic::mimetic3d
