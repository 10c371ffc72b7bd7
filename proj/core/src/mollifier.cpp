#include "landau/mollifier.hpp"

#include <cmath>
#include <stdexcept>

#include "landau/cutoffs.hpp"

namespace landau {

std::vector<double> mollifier_weights(double epsilon, double h) {
    if (!(epsilon >= 2.0 * h * (1.0 - 1e-12)))
        throw std::invalid_argument("mollify: epsilon must span at least two grid spacings");
    const int half = static_cast<int>(std::floor(epsilon / h));
    std::vector<double> w(2 * half + 1);
    double sum = 0.0;
    for (int j = -half; j <= half; ++j) {
        const double b = 1.0 - smoothstep5(std::abs(j * h) / epsilon);
        w[j + half] = b;
        sum += b;
    }
    for (double& x : w) x /= sum;
    return w;
}

namespace {

void smooth_axis(std::vector<double>& data, const std::array<std::size_t, 6>& dims, int axis,
                 const std::vector<double>& w, bool periodic) {
    std::size_t stride = 1;
    for (int d = axis + 1; d < 6; ++d) stride *= dims[d];
    const std::size_t n = dims[axis];
    std::size_t outer = 1;
    for (int d = 0; d < axis; ++d) outer *= dims[d];
    const long half = static_cast<long>(w.size() / 2);
    const long nn = static_cast<long>(n);
    std::vector<double> out(data.size(), 0.0);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t s = 0; s < stride; ++s) {
            const std::size_t base = o * n * stride + s;
            for (long i = 0; i < nn; ++i) {
                double acc = 0.0;
                for (long j = -half; j <= half; ++j) {
                    long p = i - j;
                    if (periodic) {
                        p = ((p % nn) + nn) % nn;
                    } else if (p < 0 || p >= nn) {
                        continue;
                    }
                    acc += w[static_cast<std::size_t>(j + half)] * data[base + static_cast<std::size_t>(p) * stride];
                }
                out[base + static_cast<std::size_t>(i) * stride] = acc;
            }
        }
    data.swap(out);
}

}  // namespace

Field mollify(const Field& f, const MollifierSpec& spec) {
    const auto& g = f.grid;
    Field out = f;
    const auto dims = g.dims();
    if (g.x_dims > 0) {
        const auto wx = mollifier_weights(spec.epsilon, g.hx());
        if (wx.size() > static_cast<std::size_t>(g.x_count))
            throw std::invalid_argument("mollify: epsilon wider than the periodic x box");
        for (int k = 0; k < g.x_dims; ++k) smooth_axis(out.values, dims, k, wx, true);
    }
    const auto wv = mollifier_weights(spec.epsilon, g.hv());
    for (int k = 0; k < 3; ++k) smooth_axis(out.values, dims, 3 + k, wv, false);
    return out;
}

}  // namespace landau
