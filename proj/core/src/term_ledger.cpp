#include "landau/term_ledger.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include "landau/norms.hpp"
#include "landau/stencil.hpp"
#include "landau/sym3.hpp"

namespace landau {

namespace {

enum Slot {
    A1, A2, A3,
    B1, B2, B3, B4, B5,
    T1, T2, T3_1, T3_2, T3_3, T4, T5_1, T5_2, T6_1, T6_2,
    kSlotCount
};

using Arr = std::vector<double>;

Arr abs_of(const Arr& a) {
    Arr r(a.size());
    std::transform(a.begin(), a.end(), r.begin(), [](double x) { return std::abs(x); });
    return r;
}

void add_abs(Arr& acc, const Arr& a) {
    for (std::size_t i = 0; i < a.size(); ++i) acc[i] += std::abs(a[i]);
}

Field as_field(const GridSpec& g, Arr values) {
    Field f(g);
    f.values = std::move(values);
    return f;
}

// Sums |d^m u| over all indices with (|alpha|, |beta|) = (a, b), for a + b <= order.
class MagnitudeSums {
public:
    MagnitudeSums(std::size_t size, int order) : order_(order), sums_((order + 1) * (order + 1), Arr(size, 0.0)) {}
    void add(const MultiIndex& m, const Arr& values) { add_abs(sums_[slot(m.abs_alpha(), m.abs_beta())], values); }
    const Arr& operator()(int a, int b) const { return sums_[slot(a, b)]; }
    int order() const { return order_; }

private:
    std::size_t slot(int a, int b) const { return static_cast<std::size_t>(a * (order_ + 1) + b); }
    int order_;
    std::vector<Arr> sums_;
};

}  // namespace

const std::vector<std::string>& ledger_manifest() {
    static const std::vector<std::string> names{"A1",   "A2",   "A3",   "B1",   "B2",   "B3",  "B4",
                                                "B5",   "T1",   "T2",   "T3_1", "T3_2", "T3_3", "T4",
                                                "T5_1", "T5_2", "T6_1", "T6_2"};
    return names;
}

bool is_boundary_term(const std::string& name) { return !name.empty() && name[0] == 'B'; }

double TermLedger::total(const std::string& name) const {
    const auto it = std::find(manifest.begin(), manifest.end(), name);
    if (it == manifest.end()) throw std::out_of_range("TermLedger: unknown slot " + name);
    const auto k = static_cast<std::size_t>(it - manifest.begin());
    double s = 0.0;
    for (const auto& r : rows) s += r.values[k];
    return s;
}

double TermLedger::boundary_total() const {
    double s = 0.0;
    for (const auto& name : manifest)
        if (is_boundary_term(name)) s += total(name);
    return s;
}

bool TermLedger::all_nonnegative() const {
    for (const auto& r : rows)
        for (double v : r.values)
            if (!(v >= 0.0)) return false;
    return true;
}

std::vector<std::vector<double>> ledger_integrands(const Field& G, const CoefficientField& cf, const LedgerParams& p) {
    const GridSpec& g = G.grid;
    if (!(cf.grid == g)) throw std::invalid_argument("ledger: coefficient grid differs from the solution grid");
    const int M = p.max_order;
    const int Mc = std::max(M, 2);
    const std::size_t N = g.size();
    const std::size_t nv = g.nv_total();
    const unsigned mask = g.x_axis_mask();
    const VelocityTable vt(g);
    const double cell = g.cell_volume_x() * g.cell_volume_v();
    const double eps = p.epsilon;

    // Derivatives of G up to order M.
    const auto g_indices = enumerate_indices(M, mask);
    std::map<MultiIndex, Arr> dG;
    MagnitudeSums SG(N, M);
    for (const auto& m : g_indices) {
        Arr d = m.is_zero() ? G.values : derivative(G, m).values;
        SG.add(m, d);
        dG.emplace(m, std::move(d));
    }

    // Coefficient families and their derivatives up to order Mc.
    std::array<Arr, 6> A;  // abar + eps delta
    for (std::size_t s = 0; s < 6; ++s) {
        A[s] = cf.abar.comp[s];
        if (kSymPairs[s][0] == kSymPairs[s][1])
            for (double& v : A[s]) v += eps;
    }
    std::array<Arr, 3> AU{Arr(N), Arr(N), Arr(N)};
    Arr TR(N), AW(N);
    for (std::size_t idx = 0; idx < N; ++idx) {
        const std::size_t vi = idx % nv;
        const Vec3& v = vt.v[vi];
        const double b = vt.bracket[vi];
        Sym3 a;
        for (std::size_t s = 0; s < 6; ++s) a.c[s] = A[s][idx];
        const Vec3 u{v[0] / b, v[1] / b, v[2] / b};
        const auto au = a.apply(u);
        for (int j = 0; j < 3; ++j) AU[j][idx] = au[j];
        TR[idx] = a.trace() / b;
        AW[idx] = a.quad(u);
    }
    std::array<Field, 6> Araw;
    for (std::size_t s = 0; s < 6; ++s) Araw[s] = as_field(g, cf.abar.comp[s]);
    const Field Cf = as_field(g, cf.cbar);
    std::array<Field, 3> AUf;
    for (int j = 0; j < 3; ++j) AUf[j] = as_field(g, AU[j]);
    const Field TRf = as_field(g, TR), AWf = as_field(g, AW);

    std::array<MagnitudeSums, 6> SA{MagnitudeSums(N, Mc), MagnitudeSums(N, Mc), MagnitudeSums(N, Mc),
                                    MagnitudeSums(N, Mc), MagnitudeSums(N, Mc), MagnitudeSums(N, Mc)};
    MagnitudeSums SC(N, Mc), ST(N, Mc), SW(N, Mc);
    std::array<MagnitudeSums, 3> SAU{MagnitudeSums(N, Mc), MagnitudeSums(N, Mc), MagnitudeSums(N, Mc)};
    // Pure velocity derivatives of abar needed by A1 and A3.
    std::array<Arr, 6> d2a;                 // d_{v_i v_j} abar_ij, slot (i,j)
    std::array<std::array<Arr, 6>, 3> d1a;  // d_{v_l} abar_s
    for (const auto& m : enumerate_indices(Mc, mask)) {
        auto D = [&m](const Field& f) { return m.is_zero() ? f.values : derivative(f, m).values; };
        for (std::size_t s = 0; s < 6; ++s) {
            Arr d = D(Araw[s]);
            // derivatives of eps delta_ij vanish, so the magnitude sums of abar and abar + eps differ only at order 0
            if (m.is_zero()) d = A[s];
            SA[s].add(m, d);
            if (m.abs_alpha() == 0 && m.order() == 2) {
                const int i = kSymPairs[s][0], j = kSymPairs[s][1];
                if (m == MultiIndex::v(i) + MultiIndex::v(j)) d2a[s] = abs_of(d);
            }
            if (m.abs_alpha() == 0 && m.order() == 1)
                for (int l = 0; l < 3; ++l)
                    if (m == MultiIndex::v(l)) d1a[static_cast<std::size_t>(l)][s] = abs_of(d);
        }
        SC.add(m, D(Cf));
        ST.add(m, D(TRf));
        SW.add(m, D(AWf));
        for (int j = 0; j < 3; ++j) SAU[j].add(m, D(AUf[j]));
    }

    const auto rows = enumerate_indices(M, mask);
    std::vector<std::vector<double>> out(rows.size(), std::vector<double>(kSlotCount, 0.0));
    std::vector<double> ob(nv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const MultiIndex& mi = rows[r];
        const int a = mi.abs_alpha(), b = mi.abs_beta(), m = mi.order();
        const double omega = p.hierarchy(mi);
        const Arr D = abs_of(dG.at(mi));

        // velocity profiles
        std::vector<double> w(nv), w1(nv), w2(nv), psi(nv, 1.0);
        std::vector<Vec3> dpsi(nv, Vec3{0.0, 0.0, 0.0});
        std::vector<Sym3> hpsi(nv);
        for (std::size_t vi = 0; vi < nv; ++vi) {
            const double br = vt.bracket[vi];
            w[vi] = std::pow(br, 2.0 * omega);
            w1[vi] = w[vi] / br;
            w2[vi] = w1[vi] / br;
            if (m > 0) {
                psi[vi] = landau::psi(p.family, m, vt.v[vi]);
                dpsi[vi] = psi_gradient(p.family, m, vt.v[vi]);
                hpsi[vi] = psi_hessian(p.family, m, vt.v[vi]);
            }
        }
        auto integrate = [&](auto&& fn) {
            double s = 0.0;
            for (std::size_t idx = 0; idx < N; ++idx) s += fn(idx, idx % nv);
            return s * cell;
        };
        auto& o = out[r];

        for (std::size_t s = 0; s < 6; ++s) {
            o[A1] = std::max(o[A1], integrate([&](std::size_t i, std::size_t v) {
                return w[v] * psi[v] * psi[v] * d2a[s][i] * D[i] * D[i];
            }));
            o[A2] = std::max(o[A2], integrate([&](std::size_t i, std::size_t v) {
                return w2[v] * psi[v] * psi[v] * std::abs(cf.abar.comp[s][i]) * D[i] * D[i];
            }));
            for (int l = 0; l < 3; ++l)
                o[A3] = std::max(o[A3], integrate([&](std::size_t i, std::size_t v) {
                    return w1[v] * psi[v] * psi[v] * d1a[static_cast<std::size_t>(l)][s][i] * D[i] * D[i];
                }));
        }

        if (m > 0) {
            for (std::size_t s = 0; s < 6; ++s) {
                const int si = kSymPairs[s][0], sj = kSymPairs[s][1];
                o[B1] = std::max(o[B1], integrate([&](std::size_t i, std::size_t v) {
                    return w[v] * psi[v] * std::abs(hpsi[v](si, sj)) * std::abs(A[s][i]) * D[i] * D[i];
                }));
                for (std::size_t q = 0; q < 6; ++q) {
                    const int k = kSymPairs[q][0], l = kSymPairs[q][1];
                    o[B2] = std::max(o[B2], integrate([&](std::size_t i, std::size_t v) {
                        return w[v] * std::abs(dpsi[v][k] * dpsi[v][l]) * std::abs(A[s][i]) * D[i] * D[i];
                    }));
                }
                for (int l = 0; l < 3; ++l)
                    o[B3] = std::max(o[B3], integrate([&](std::size_t i, std::size_t v) {
                        return w1[v] * psi[v] * std::abs(dpsi[v][l]) * std::abs(A[s][i]) * D[i] * D[i];
                    }));
                for (int l = 0; l < 3; ++l) {
                    double acc = 0.0;
                    for (int a1 = 0; a1 <= 1; ++a1) {
                        const int b1 = 1 - a1;
                        for (int a2 = 0; a2 <= m; ++a2) {
                            const int b2 = m - a2;
                            const int a3 = 2 * a - a1 - a2, b3 = 2 * b + 1 - b1 - b2;
                            if (a3 < 0 || b3 < 0 || a3 + b3 > M) continue;
                            const Arr& G3 = SG(a3, b3);
                            const Arr& Ac = SA[s](a1, b1);
                            const Arr& G2 = SG(a2, b2);
                            acc += integrate([&](std::size_t i, std::size_t v) {
                                return w[v] * psi[v] * std::abs(dpsi[v][l]) * G3[i] * Ac[i] * G2[i];
                            });
                        }
                    }
                    o[B4] = std::max(o[B4], acc);
                }
            }
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l)
                    o[B5] = std::max(o[B5], integrate([&](std::size_t i, std::size_t v) {
                        return w[v] * psi[v] * std::abs(dpsi[v][l]) * std::abs(AU[j][i]) * D[i] * D[i];
                    }));
        }

        // T1: |alpha'| <= |alpha|+1, |beta'| <= |beta|-1
        for (int a1 = 0; a1 <= a + 1; ++a1)
            for (int b1 = 0; b1 <= b - 1; ++b1) {
                if (a1 + b1 > M) continue;
                const Arr& S = SG(a1, b1);
                o[T1] += integrate([&](std::size_t i, std::size_t v) { return w[v] * psi[v] * psi[v] * D[i] * S[i]; });
            }
        // T2: alpha fixed, |beta'| <= |beta|-1
        for (const auto& [mm, d] : dG) {
            if (mm.alpha != mi.alpha || mm.abs_beta() > b - 1) continue;
            o[T2] += p.kappa * integrate([&, &d = d](std::size_t i, std::size_t v) {
                return w[v] * psi[v] * psi[v] * D[i] * std::abs(d[i]);
            });
        }
        // T3_1
        for (std::size_t s = 0; s < 6; ++s) {
            double acc = 0.0;
            for (int a1 = 0; a1 <= Mc; ++a1)
                for (int b1 = 0; a1 + b1 <= std::min(m, 8); ++b1) {
                    if (a1 + b1 < 2) continue;
                    for (int a3 = 0; a3 <= m; ++a3) {
                        const int b3 = m - a3;
                        for (int a2 = 0; a2 <= M; ++a2)
                            for (int b2 = 0; a2 + b2 <= m; ++b2) {
                                if (a1 + a2 + a3 > 2 * a || b1 + b2 + b3 > 2 * b + 2) continue;
                                const Arr& G3 = SG(a3, b3);
                                const Arr& Ac = SA[s](a1, b1);
                                const Arr& G2 = SG(a2, b2);
                                acc += integrate([&](std::size_t i, std::size_t v) {
                                    return w[v] * psi[v] * psi[v] * G3[i] * Ac[i] * G2[i];
                                });
                            }
                    }
                }
            o[T3_1] = std::max(o[T3_1], acc);
        }
        // T3_2: at least nine derivatives on abar; empty below total order nine.
        if (m >= 9) {
            for (std::size_t s = 0; s < 6; ++s) {
                const int si = kSymPairs[s][0], sj = kSymPairs[s][1];
                double acc = 0.0;
                for (const auto& [mm, d] : dG) {
                    const int a2 = mm.abs_alpha(), b2 = mm.abs_beta();
                    const int a1 = a - a2, b1 = b - b2;
                    if (a1 < 0 || b1 < 0 || a1 + b1 < 9 || a1 + b1 > Mc) continue;
                    const MultiIndex shifted = mm + MultiIndex::v(si) + MultiIndex::v(sj);
                    if (shifted.order() > M) continue;
                    const Arr& G2 = dG.at(shifted);
                    const Arr& Ac = SA[s](a1, b1);
                    acc += integrate([&](std::size_t i, std::size_t v) {
                        return w[v] * psi[v] * psi[v] * D[i] * Ac[i] * std::abs(G2[i]);
                    });
                }
                o[T3_2] = std::max(o[T3_2], acc);
            }
        }
        // T3_3: exactly one derivative on abar
        if (m >= 1) {
            for (std::size_t s = 0; s < 6; ++s)
                for (int l = 0; l < 3; ++l) {
                    double acc = 0.0;
                    for (int a1 = 0; a1 <= 1; ++a1) {
                        const int b1 = 1 - a1, a2 = a - a1, b2 = b - b1;
                        if (a2 < 0 || b2 < 0) continue;
                        Arr G2(N, 0.0);
                        for (const auto& [mm, d] : dG)
                            if (mm.abs_alpha() == a2 && mm.abs_beta() == b2) add_abs(G2, dG.at(mm + MultiIndex::v(l)));
                        const Arr& Ac = SA[s](a1, b1);
                        acc += integrate([&](std::size_t i, std::size_t v) {
                            return w1[v] * psi[v] * psi[v] * D[i] * Ac[i] * G2[i];
                        });
                    }
                    o[T3_3] = std::max(o[T3_3], acc);
                }
        }
        // T4, T6_1, T6_2: |alpha'|+|alpha''| <= |alpha|, |beta'|+|beta''| <= |beta|
        for (int a1 = 0; a1 <= a; ++a1)
            for (int b1 = 0; b1 <= b; ++b1)
                for (int a2 = 0; a1 + a2 <= a; ++a2)
                    for (int b2 = 0; b1 + b2 <= b; ++b2) {
                        const Arr& G2 = SG(a2, b2);
                        auto term = [&](const Arr& C) {
                            return integrate([&](std::size_t i, std::size_t v) {
                                return w[v] * psi[v] * psi[v] * D[i] * C[i] * G2[i];
                            });
                        };
                        o[T4] += term(SC(a1, b1));
                        if (a1 + b1 >= 1) o[T6_1] += term(ST(a1, b1));
                        o[T6_2] += term(SW(a1, b1));
                    }
        // T5_1: |alpha'|+|alpha''| = |alpha|, |beta'|+|beta''| = |beta|+1, 1 <= |alpha'|+|beta'| <= m
        for (int j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (int a1 = 0; a1 <= a; ++a1)
                for (int b1 = 0; b1 <= b + 1; ++b1) {
                    const int a2 = a - a1, b2 = b + 1 - b1;
                    if (a1 + b1 < 1 || a1 + b1 > m || a2 + b2 > M) continue;
                    const Arr& G2 = SG(a2, b2);
                    const Arr& C = SAU[j](a1, b1);
                    acc += integrate([&](std::size_t i, std::size_t v) {
                        return w[v] * psi[v] * psi[v] * D[i] * C[i] * G2[i];
                    });
                }
            o[T5_1] = std::max(o[T5_1], acc);
            o[T5_2] = std::max(o[T5_2], integrate([&](std::size_t i, std::size_t v) {
                return w1[v] * psi[v] * psi[v] * D[i] * std::abs(AU[j][i]) * D[i];
            }));
        }
    }
    return out;
}

TermLedger integrate_ledger(const std::vector<double>& times, const std::vector<std::vector<std::vector<double>>>& per_time,
                            const std::vector<MultiIndex>& indices, const LedgerParams& p) {
    if (times.size() != per_time.size()) throw std::invalid_argument("ledger: times and samples differ in length");
    TermLedger L;
    L.manifest = ledger_manifest();
    L.times = times;
    const std::size_t K = L.manifest.size();
    for (std::size_t r = 0; r < indices.size(); ++r) {
        LedgerRow row;
        row.index = indices[r];
        row.weight = p.hierarchy(indices[r]);
        row.values.assign(K, 0.0);
        for (std::size_t k = 0; k < K; ++k) {
            std::vector<double> y(times.size());
            for (std::size_t t = 0; t < times.size(); ++t) y[t] = per_time[t][r][k];
            row.values[k] = trapezoid(times, y);
        }
        L.rows.push_back(std::move(row));
    }
    return L;
}

}  // namespace landau
