#pragma once

#include <iosfwd>
#include <string>

#include "landau/grid.hpp"

namespace landau {

inline constexpr std::uint32_t kSnapshotVersion = 1;

// Little-endian: "LNDF", u32 version, u32 active x-axes, u32[6] axis counts
// (x0,x1,x2,v0,v1,v2; inactive x axes store 1), f64[2] extents (Lx, V), f64 time,
// then row-major f64 values with x outermost.
void write_snapshot(std::ostream& os, const Field& f);
Field read_snapshot(std::istream& is);

void write_snapshot_file(const std::string& path, const Field& f);
Field read_snapshot_file(const std::string& path);

}  // namespace landau
