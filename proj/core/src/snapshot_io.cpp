#include "landau/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace landau {

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int k = 0; k < 4; ++k) b[k] = static_cast<char>((v >> (8 * k)) & 0xffu);
    os.write(b, 4);
}

void put_f64(std::ostream& os, double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    char b[8];
    for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((v >> (8 * k)) & 0xffu);
    os.write(b, 8);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error("snapshot: truncated header");
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(b[k]) << (8 * k);
    return v;
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("snapshot: truncated data");
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(b[k]) << (8 * k);
    return std::bit_cast<double>(v);
}

}  // namespace

void write_snapshot(std::ostream& os, const Field& f) {
    const auto& g = f.grid;
    os.write("LNDF", 4);
    put_u32(os, kSnapshotVersion);
    put_u32(os, static_cast<std::uint32_t>(g.x_dims));
    const auto dims = g.dims();
    for (auto d : dims) put_u32(os, static_cast<std::uint32_t>(d));
    put_f64(os, g.x_extent);
    put_f64(os, g.v_extent);
    put_f64(os, f.time);
    for (double v : f.values) put_f64(os, v);
    if (!os) throw std::runtime_error("snapshot: write failed");
}

Field read_snapshot(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "LNDF", 4) != 0) throw std::runtime_error("snapshot: bad magic");
    const auto version = get_u32(is);
    if (version != kSnapshotVersion) throw std::runtime_error("snapshot: unsupported version");
    GridSpec g;
    g.x_dims = static_cast<int>(get_u32(is));
    std::uint32_t counts[6];
    for (auto& c : counts) c = get_u32(is);
    if (g.x_dims > 3) throw std::runtime_error("snapshot: bad x-axis count");
    g.x_count = g.x_dims > 0 ? static_cast<int>(counts[0]) : g.x_count;
    g.v_count = static_cast<int>(counts[3]);
    for (int k = 0; k < g.x_dims; ++k)
        if (counts[k] != counts[0]) throw std::runtime_error("snapshot: non-uniform x counts");
    if (counts[4] != counts[3] || counts[5] != counts[3]) throw std::runtime_error("snapshot: non-uniform v counts");
    g.x_extent = get_f64(is);
    g.v_extent = get_f64(is);
    g.validate();
    Field f(g, get_f64(is));
    for (auto& v : f.values) v = get_f64(is);
    return f;
}

void write_snapshot_file(const std::string& path, const Field& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("snapshot: cannot open " + path);
    write_snapshot(os, f);
}

Field read_snapshot_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("snapshot: cannot open " + path);
    return read_snapshot(is);
}

}  // namespace landau
