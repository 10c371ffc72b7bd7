#include "landau/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "landau/stencil.hpp"

namespace landau {

std::vector<double> psi_table(const GridSpec& g, const CutoffFamily& fam, int level) {
    std::vector<double> t(g.nv_total(), 1.0);
    if (level <= 0) return t;
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = psi(fam, level, g.v_point(i));
    return t;
}

double weighted_l2(const Field& df, double exponent, const std::vector<double>* psi) {
    const auto& g = df.grid;
    const std::size_t nv = g.nv_total();
    std::vector<double> w(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        w[i] = std::pow(japanese_bracket(g.v_point(i)), exponent);
        if (psi) w[i] *= (*psi)[i];
    }
    double sum = 0.0;
    for (std::size_t xi = 0; xi < g.nx_total(); ++xi) {
        const double* row = df.values.data() + xi * nv;
        for (std::size_t i = 0; i < nv; ++i) {
            const double a = w[i] * row[i];
            sum += a * a;
        }
    }
    return std::sqrt(sum * g.cell_volume_x() * g.cell_volume_v());
}

double weighted_norm(const Field& f, const MultiIndex& m, double extra_weight, const WeightHierarchy& h,
                     std::optional<CutoffLevel> cutoff) {
    f.require_finite("weighted_norm");
    const double w = h(m) + extra_weight;
    const Field df = m.is_zero() ? f : derivative(f, m);
    if (cutoff && cutoff->family) {
        auto psi = psi_table(f.grid, *cutoff->family, cutoff->level);
        return weighted_l2(df, w, &psi);
    }
    return weighted_l2(df, w, nullptr);
}

double y_norm(const Field& f, const WeightHierarchy& h, int max_order) {
    double s = 0.0;
    for (const auto& m : enumerate_indices(max_order, f.grid.x_axis_mask())) {
        const double y = weighted_norm(f, m, 0.0, h);
        s += y * y;
    }
    return std::sqrt(s);
}

double ball_norm(const Field& G, const WeightHierarchy& h, const CutoffFamily& fam, int m, double s, int l) {
    G.require_finite("ball_norm");
    double sum = 0.0;
    for (const auto& idx : enumerate_indices(m, G.grid.x_axis_mask())) {
        const int level = std::min(std::max(idx.order() - l, 0), fam.max_level);
        const double y = weighted_norm(G, idx, 0.5 * s, h, CutoffLevel{&fam, level});
        sum += y * y;
    }
    return std::sqrt(sum);
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) s += 0.5 * (t[k] - t[k - 1]) * (y[k] + y[k - 1]);
    return s;
}

EnergyReport energy_report(const std::vector<Field>& traj, const WeightHierarchy& h, int max_order,
                           const CutoffFamily* cutoff) {
    if (traj.empty()) throw std::invalid_argument("energy_report: empty trajectory");
    const auto& g = traj.front().grid;
    for (const auto& f : traj) {
        if (!(f.grid == g)) throw std::invalid_argument("energy_report: inconsistent grids across trajectory");
        f.require_finite("energy_report");
    }
    if (traj.size() > 2) {
        const double dt = traj[1].time - traj[0].time;
        for (std::size_t k = 2; k < traj.size(); ++k) {
            if (std::abs((traj[k].time - traj[k - 1].time) - dt) > 1e-9 * std::max(std::abs(dt), 1e-300))
                throw std::invalid_argument("energy_report: snapshot times must be uniformly spaced");
        }
    }
    EnergyReport rep;
    rep.max_order = max_order;
    rep.has_ball = cutoff != nullptr;
    for (const auto& f : traj) rep.times.push_back(f.time);
    const std::size_t nt = traj.size();
    const auto indices = enumerate_indices(max_order, g.x_axis_mask());

    std::vector<std::vector<double>> psi_by_level;
    if (cutoff) {
        for (int lv = 0; lv <= max_order; ++lv) psi_by_level.push_back(psi_table(g, *cutoff, std::min(lv, cutoff->max_level)));
    }
    rep.y_total.assign(nt, 0.0);
    rep.x_total.assign(nt, 0.0);
    if (cutoff) {
        rep.ball_y.assign(nt, 0.0);
        rep.ball_x.assign(nt, 0.0);
    }
    double sup_sum = 0.0;
    for (const auto& m : indices) {
        IndexSeries s;
        s.index = m;
        s.weight = h(m);
        for (const auto& f : traj) {
            const Field df = m.is_zero() ? f : derivative(f, m);
            s.y.push_back(weighted_l2(df, s.weight));
            s.x.push_back(weighted_l2(df, s.weight + 0.5));
            if (cutoff) {
                const auto& psi = psi_by_level[static_cast<std::size_t>(m.order())];
                s.ball.push_back(weighted_l2(df, s.weight, &psi));
                const double bx = weighted_l2(df, s.weight + 0.5, &psi);
                rep.ball_x[s.ball.size() - 1] += bx * bx;
            }
        }
        double sup = 0.0;
        for (std::size_t k = 0; k < nt; ++k) {
            rep.y_total[k] += s.y[k] * s.y[k];
            rep.x_total[k] += s.x[k] * s.x[k];
            if (cutoff) rep.ball_y[k] += s.ball[k] * s.ball[k];
            sup = std::max(sup, s.y[k] * s.y[k]);
        }
        sup_sum += sup;
        rep.indices.push_back(std::move(s));
    }
    const double x_int = trapezoid(rep.times, rep.x_total);
    for (auto& v : rep.y_total) v = std::sqrt(v);
    for (auto& v : rep.x_total) v = std::sqrt(v);
    rep.Y_T = std::sqrt(sup_sum);
    rep.X_T = std::sqrt(x_int);
    rep.E_T = std::sqrt(sup_sum + x_int);
    if (cutoff) {
        double sup_ball = 0.0;
        for (double v : rep.ball_y) sup_ball = std::max(sup_ball, v);
        const double bx_int = trapezoid(rep.times, rep.ball_x);
        for (auto& v : rep.ball_y) v = std::sqrt(v);
        for (auto& v : rep.ball_x) v = std::sqrt(v);
        rep.ball_energy = std::sqrt(sup_ball + bx_int);
    }
    return rep;
}

}  // namespace landau
