#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace landau {

using Vec3 = std::array<double, 3>;

// Tensor grid: periodic x box [-Lx, Lx)^d (d = x_dims active axes, 0..3),
// velocity box with nodes v_k = -V + k*hv, k = 0..v_count-1 on every axis.
struct GridSpec {
    int x_dims = 0;
    int x_count = 16;
    double x_extent = 3.141592653589793;
    int v_count = 24;
    double v_extent = 8.0;
    int stencil_order = 2;
    int max_derivative_order = 4;

    double hx() const { return 2.0 * x_extent / x_count; }
    double hv() const { return 2.0 * v_extent / v_count; }
    std::size_t nx_total() const;
    std::size_t nv_total() const { return static_cast<std::size_t>(v_count) * v_count * v_count; }
    std::size_t size() const { return nx_total() * nv_total(); }
    unsigned x_axis_mask() const { return (1u << x_dims) - 1u; }
    double x_coord(int i) const { return -x_extent + i * hx(); }
    double v_coord(int i) const { return -v_extent + i * hv(); }
    // Integration weights of the tensor trapezoid rule (periodic / decaying data).
    double cell_volume_x() const;
    double cell_volume_v() const { return hv() * hv() * hv(); }

    // Axis sizes in the order (x0, x1, x2, v0, v1, v2); inactive x axes have size 1.
    std::array<std::size_t, 6> dims() const;
    Vec3 v_point(std::size_t vflat) const;
    Vec3 x_point(std::size_t xflat) const;
    std::size_t v_flat(int i0, int i1, int i2) const {
        return (static_cast<std::size_t>(i0) * v_count + i1) * v_count + i2;
    }

    void validate() const;
    std::string describe() const;
    bool operator==(const GridSpec&) const = default;
};

struct Field {
    GridSpec grid;
    std::vector<double> values;
    double time = 0.0;

    Field() = default;
    explicit Field(const GridSpec& g, double t = 0.0) : grid(g), values(g.size(), 0.0), time(t) {}

    std::size_t index(std::size_t xflat, std::size_t vflat) const { return xflat * grid.nv_total() + vflat; }
    double& at(std::size_t xflat, std::size_t vflat) { return values[index(xflat, vflat)]; }
    double at(std::size_t xflat, std::size_t vflat) const { return values[index(xflat, vflat)]; }

    bool all_finite() const;
    // Throws std::domain_error naming `what` and the first offending index.
    void require_finite(const char* what) const;
    double max_abs() const;
};

// Velocity-only tables shared by norms, kernels and the solver.
struct VelocityTable {
    std::vector<Vec3> v;
    std::vector<double> bracket;  // <v> = sqrt(1+|v|^2)
    std::vector<double> speed;    // |v|
    explicit VelocityTable(const GridSpec& g);
};

double japanese_bracket(const Vec3& v);

template <class F>
Field make_field(const GridSpec& g, F&& fn, double t = 0.0) {
    Field f(g, t);
    const std::size_t nv = g.nv_total();
    for (std::size_t xi = 0; xi < g.nx_total(); ++xi) {
        Vec3 x = g.x_point(xi);
        for (std::size_t vi = 0; vi < nv; ++vi) f.values[xi * nv + vi] = fn(x, g.v_point(vi));
    }
    return f;
}

// Largest |f| on the faces of the velocity box and the flag raised when it
// exceeds threshold * max|f|.
struct BoundaryDecay {
    double face_max = 0.0;
    double field_max = 0.0;
    bool flagged = false;
};
BoundaryDecay boundary_decay(const Field& f, double threshold = 1e-8);

}  // namespace landau
