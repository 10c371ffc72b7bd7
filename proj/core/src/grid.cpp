#include "landau/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace landau {

std::size_t GridSpec::nx_total() const {
    std::size_t n = 1;
    for (int k = 0; k < x_dims; ++k) n *= static_cast<std::size_t>(x_count);
    return n;
}

double GridSpec::cell_volume_x() const {
    double w = 1.0;
    for (int k = 0; k < x_dims; ++k) w *= hx();
    return w;
}

std::array<std::size_t, 6> GridSpec::dims() const {
    std::array<std::size_t, 6> d{1, 1, 1, 0, 0, 0};
    for (int k = 0; k < x_dims; ++k) d[k] = static_cast<std::size_t>(x_count);
    for (int k = 3; k < 6; ++k) d[k] = static_cast<std::size_t>(v_count);
    return d;
}

Vec3 GridSpec::v_point(std::size_t vflat) const {
    const auto n = static_cast<std::size_t>(v_count);
    int i2 = static_cast<int>(vflat % n);
    int i1 = static_cast<int>((vflat / n) % n);
    int i0 = static_cast<int>(vflat / (n * n));
    return {v_coord(i0), v_coord(i1), v_coord(i2)};
}

Vec3 GridSpec::x_point(std::size_t xflat) const {
    Vec3 x{0.0, 0.0, 0.0};
    const auto n = static_cast<std::size_t>(x_count);
    for (int k = x_dims - 1; k >= 0; --k) {
        x[k] = x_coord(static_cast<int>(xflat % n));
        xflat /= n;
    }
    return x;
}

void GridSpec::validate() const {
    if (x_dims < 0 || x_dims > 3) throw std::invalid_argument("grid: x_dims must be 0..3");
    if (x_dims > 0 && x_count < 8) throw std::invalid_argument("grid: x_count must be >= 8 per active axis");
    if (v_count < 8) throw std::invalid_argument("grid: v_count must be >= 8");
    if (!(x_extent > 0.0)) throw std::invalid_argument("grid: x_extent must be > 0");
    if (!(v_extent > 0.0)) throw std::invalid_argument("grid: v_extent must be > 0");
    if (stencil_order != 2 && stencil_order != 4) throw std::invalid_argument("grid: stencil_order must be 2 or 4");
    if (max_derivative_order < 0) throw std::invalid_argument("grid: max_derivative_order must be >= 0");
}

std::string GridSpec::describe() const {
    std::ostringstream os;
    os << "x_dims=" << x_dims << " x_count=" << x_count << " x_extent=" << x_extent << " v_count=" << v_count
       << " v_extent=" << v_extent << " stencil_order=" << stencil_order;
    return os.str();
}

bool Field::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

void Field::require_finite(const char* what) const {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw std::domain_error(std::string(what) + ": non-finite value at flat index " + std::to_string(i));
    }
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double japanese_bracket(const Vec3& v) { return std::sqrt(1.0 + v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

VelocityTable::VelocityTable(const GridSpec& g) {
    const std::size_t nv = g.nv_total();
    v.resize(nv);
    bracket.resize(nv);
    speed.resize(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        v[i] = g.v_point(i);
        bracket[i] = japanese_bracket(v[i]);
        speed[i] = std::sqrt(v[i][0] * v[i][0] + v[i][1] * v[i][1] + v[i][2] * v[i][2]);
    }
}

BoundaryDecay boundary_decay(const Field& f, double threshold) {
    BoundaryDecay r;
    const auto& g = f.grid;
    const int n = g.v_count;
    const std::size_t nv = g.nv_total();
    for (std::size_t xi = 0; xi < g.nx_total(); ++xi) {
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2) {
                    double a = std::abs(f.values[xi * nv + g.v_flat(i0, i1, i2)]);
                    r.field_max = std::max(r.field_max, a);
                    bool face = i0 == 0 || i1 == 0 || i2 == 0 || i0 == n - 1 || i1 == n - 1 || i2 == n - 1;
                    if (face) r.face_max = std::max(r.face_max, a);
                }
    }
    r.flagged = r.face_max > threshold * r.field_max;
    return r;
}

}  // namespace landau
