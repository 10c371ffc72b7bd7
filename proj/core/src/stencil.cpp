#include "landau/stencil.hpp"

#include <stdexcept>
#include <string>

namespace landau {

std::vector<double> fd_weights(double z, const std::vector<double>& x, int k) {
    const int n = static_cast<int>(x.size());
    if (k < 0 || k >= n) throw std::invalid_argument("fd_weights: need more nodes than the derivative order");
    // c[j][d] = weight of node j for derivative d
    std::vector<std::vector<double>> c(n, std::vector<double>(k + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, k);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int d = mn; d >= 1; --d) c[i][d] = c1 * (d * c[i - 1][d - 1] - c5 * c[i - 1][d]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int d = mn; d >= 1; --d) c[j][d] = (c4 * c[j][d] - d * c[j][d - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = c[j][k];
    return w;
}

int Stencil1D::central_width(int k, int accuracy) { return 2 * ((k + 1) / 2) - 1 + accuracy; }

Stencil1D Stencil1D::make(int n, double h, int k, int accuracy, bool periodic) {
    Stencil1D st;
    st.n = n;
    st.periodic = periodic;
    st.first.resize(n);
    st.weights.resize(n);
    const int cw = central_width(k, accuracy);
    const int half = (cw - 1) / 2;
    auto row = [&](int lo, int width) {
        std::vector<double> nodes(width);
        for (int j = 0; j < width; ++j) nodes[j] = (lo + j) * h;
        return fd_weights(0.0, nodes, k);
    };
    const auto central = row(-half, cw);
    if (periodic) {
        if (cw > n) throw std::invalid_argument("stencil wider than periodic axis");
        for (int i = 0; i < n; ++i) {
            st.first[i] = -half;
            st.weights[i] = central;
        }
        return st;
    }
    const int ow = one_sided_width(k, accuracy);
    if (ow > n || cw > n) throw std::invalid_argument("stencil wider than bounded axis");
    for (int i = 0; i < n; ++i) {
        if (i - half >= 0 && i + half <= n - 1) {
            st.first[i] = -half;
            st.weights[i] = central;
        } else {
            int lo = i < half ? -i : (n - 1 - i) - (ow - 1);
            st.first[i] = lo;
            st.weights[i] = row(lo, ow);
        }
    }
    return st;
}

void apply_along_axis(const std::vector<double>& in, std::vector<double>& out, const std::array<std::size_t, 6>& dims,
                      int axis, const Stencil1D& st) {
    std::size_t stride = 1;
    for (int d = axis + 1; d < 6; ++d) stride *= dims[d];
    const std::size_t n = dims[axis];
    std::size_t outer = 1;
    for (int d = 0; d < axis; ++d) outer *= dims[d];
    out.assign(in.size(), 0.0);
    const long nn = static_cast<long>(n);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& w = st.weights[i];
            const long lo = static_cast<long>(i) + st.first[i];
            for (std::size_t s = 0; s < stride; ++s) {
                const std::size_t base = o * n * stride + s;
                double acc = 0.0;
                for (std::size_t j = 0; j < w.size(); ++j) {
                    long p = lo + static_cast<long>(j);
                    if (st.periodic) p = ((p % nn) + nn) % nn;
                    acc += w[j] * in[base + static_cast<std::size_t>(p) * stride];
                }
                out[base + i * stride] = acc;
            }
        }
    }
}

bool derivative_resolvable(const GridSpec& g, const MultiIndex& m) {
    if (!m.valid() || m.order() > g.max_derivative_order) return false;
    for (int k = 0; k < 3; ++k) {
        if (m.alpha[k] > 0) {
            if (k >= g.x_dims) continue;  // derivative along an inactive axis is identically zero
            if (Stencil1D::central_width(m.alpha[k], g.stencil_order) > g.x_count) return false;
        }
        if (m.beta[k] > 0) {
            if (Stencil1D::one_sided_width(m.beta[k], g.stencil_order) > g.v_count) return false;
        }
    }
    return true;
}

Field derivative(const Field& f, const MultiIndex& m) {
    const auto& g = f.grid;
    if (!derivative_resolvable(g, m))
        throw std::invalid_argument("derivative: order of " + m.label() + " too high for grid (max order " +
                                    std::to_string(g.max_derivative_order) + ")");
    Field out(g, f.time);
    for (int k = 0; k < 3; ++k) {
        if (m.alpha[k] > 0 && k >= g.x_dims) return out;
    }
    std::vector<double> cur = f.values, tmp;
    const auto dims = g.dims();
    for (int k = 0; k < 3; ++k) {
        if (m.alpha[k] > 0) {
            auto st = Stencil1D::make(g.x_count, g.hx(), m.alpha[k], g.stencil_order, true);
            apply_along_axis(cur, tmp, dims, k, st);
            cur.swap(tmp);
        }
    }
    for (int k = 0; k < 3; ++k) {
        if (m.beta[k] > 0) {
            auto st = Stencil1D::make(g.v_count, g.hv(), m.beta[k], g.stencil_order, false);
            apply_along_axis(cur, tmp, dims, 3 + k, st);
            cur.swap(tmp);
        }
    }
    out.values = std::move(cur);
    return out;
}

}  // namespace landau
