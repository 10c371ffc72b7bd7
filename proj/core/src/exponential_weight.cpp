#include "landau/exponential_weight.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace landau {

void ExponentialWeight::validate() const {
    if (!(d0 > 0.0) || !std::isfinite(d0)) throw std::invalid_argument("ExponentialWeight: d0 must be positive");
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("ExponentialWeight: kappa must be positive");
}

namespace {

void check_time(const ExponentialWeight& w, double t) {
    w.validate();
    const double T0 = w.T0();
    if (t < 0.0 || t > T0 * (1.0 + 1e-12))
        throw std::invalid_argument("exponential transform: t = " + std::to_string(t) + " outside [0, T0 = " +
                                    std::to_string(T0) + "]");
}

Field scale(const Field& in, const ExponentialWeight& w, double t, double sign) {
    check_time(w, t);
    const double d = w.d(t);
    const auto& g = in.grid;
    const VelocityTable vt(g);
    Field out(g, in.time);
    const std::size_t nv = g.nv_total();
    std::vector<double> mult(nv);
    for (std::size_t p = 0; p < nv; ++p) {
        mult[p] = std::exp(sign * d * vt.bracket[p]);
        if (!std::isfinite(mult[p]))
            throw std::overflow_error("exponential transform overflows at <v> = " + std::to_string(vt.bracket[p]));
    }
    for (std::size_t xi = 0; xi < g.nx_total(); ++xi)
        for (std::size_t p = 0; p < nv; ++p) {
            const std::size_t idx = xi * nv + p;
            const double v = in.values[idx] * mult[p];
            if (!std::isfinite(v))
                throw std::overflow_error("exponential transform overflows at <v> = " + std::to_string(vt.bracket[p]));
            out.values[idx] = v;
        }
    return out;
}

}  // namespace

Field to_g(const Field& f, const ExponentialWeight& w, double t) { return scale(f, w, t, 1.0); }

Field to_f(const Field& g, const ExponentialWeight& w, double t) { return scale(g, w, t, -1.0); }

}  // namespace landau
