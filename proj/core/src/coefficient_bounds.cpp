#include "landau/coefficient_bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "landau/coefficients.hpp"
#include "landau/kernels.hpp"
#include "landau/multiindex.hpp"
#include "landau/stencil.hpp"
#include "landau/sym3.hpp"

namespace landau {

namespace {

// Kernel slots of one sample row.
constexpr int kA = 0;         // 6 components
constexpr int kDA = 6;        // 3 directions x 6 components
constexpr int kDDA = 24;      // 6 direction pairs x 6 components
constexpr int kC = 60;
constexpr int kPow2 = 61;     // |z|^{2+gamma} on |df|
constexpr int kPow1 = 62;     // |z|^{1+gamma} on |df|
constexpr int kPow0 = 63;     // |z|^{gamma} on |df|
constexpr int kSlots = 64;

struct Group {
    int first;
    int count;
    bool on_abs;
    MultiKernelFn fn;
};

std::vector<Group> kernel_groups(double gamma) {
    std::vector<Group> gs;
    gs.push_back({kA, 6, false, [gamma](const Vec3& z, double* o) {
                      const Sym3 a = kernel_matrix(z, gamma);
                      std::copy(a.c.begin(), a.c.end(), o);
                  }});
    for (int k = 0; k < 3; ++k)
        gs.push_back({kDA + 6 * k, 6, false, [gamma, k](const Vec3& z, double* o) {
                          const Sym3 a = kernel_gradient(z, gamma, k);
                          std::copy(a.c.begin(), a.c.end(), o);
                      }});
    for (int p = 0; p < 6; ++p) {
        const int k = kSymPairs[static_cast<std::size_t>(p)][0], l = kSymPairs[static_cast<std::size_t>(p)][1];
        gs.push_back({kDDA + 6 * p, 6, false, [gamma, k, l](const Vec3& z, double* o) {
                          const Sym3 a = kernel_hessian(z, gamma, k, l);
                          std::copy(a.c.begin(), a.c.end(), o);
                      }});
    }
    gs.push_back({kC, 1, false, [gamma](const Vec3& z, double* o) { o[0] = kernel_c(z, gamma); }});
    gs.push_back({kPow2, 3, true, [gamma](const Vec3& z, double* o) {
                      o[0] = abs_pow(z, 2.0 + gamma);
                      o[1] = abs_pow(z, 1.0 + gamma);
                      o[2] = abs_pow(z, gamma);
                  }});
    return gs;
}

struct SamplePoint {
    std::size_t xflat;
    std::size_t vflat;
};

std::vector<int> lattice_axis(int count, int cells) {
    const int stride = (count % cells == 0) ? count / cells : 1;
    std::vector<int> idx;
    for (int i = 0; i < count; i += stride) idx.push_back(i);
    return idx;
}

std::vector<SamplePoint> choose_samples(const GridSpec& g, const BoundOptions& opt) {
    const auto vaxis = lattice_axis(g.v_count, opt.lattice_cells_v);
    const double rmax = opt.region * g.v_extent;
    std::vector<std::size_t> vcand;
    for (int i0 : vaxis)
        for (int i1 : vaxis)
            for (int i2 : vaxis) {
                const Vec3 v{g.v_coord(i0), g.v_coord(i1), g.v_coord(i2)};
                if (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] <= rmax * rmax) vcand.push_back(g.v_flat(i0, i1, i2));
            }
    std::vector<std::size_t> xcand;
    if (g.x_dims == 0) {
        xcand.push_back(0);
    } else {
        const auto xaxis = lattice_axis(g.x_count, opt.lattice_cells_x);
        std::vector<std::size_t> cur{0};
        for (int d = 0; d < g.x_dims; ++d) {
            std::vector<std::size_t> next;
            for (std::size_t c : cur)
                for (int i : xaxis) next.push_back(c * static_cast<std::size_t>(g.x_count) + static_cast<std::size_t>(i));
            cur = std::move(next);
        }
        xcand = std::move(cur);
    }
    std::vector<SamplePoint> all;
    all.reserve(xcand.size() * vcand.size());
    for (std::size_t x : xcand)
        for (std::size_t v : vcand) all.push_back({x, v});
    // Partial Fisher-Yates with an explicit modulus draw keeps the choice identical across standard libraries.
    std::mt19937_64 rng(opt.seed);
    const std::size_t want = std::min<std::size_t>(all.size(), static_cast<std::size_t>(std::max(opt.samples, 1)));
    for (std::size_t i = 0; i < want; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (all.size() - i));
        std::swap(all[i], all[j]);
    }
    all.resize(want);
    std::sort(all.begin(), all.end(), [](const SamplePoint& a, const SamplePoint& b) {
        return a.xflat != b.xflat ? a.xflat < b.xflat : a.vflat < b.vflat;
    });
    return all;
}

struct SliceMoments {
    double m4 = 0.0;    // int <v>^4 |df|
    double m2g = 0.0;   // int <v>^{2+gamma} |df|
    double l1 = 0.0;    // int |df|
    std::map<double, double> l2;  // exponent k -> || <v>^k df ||_{L2_v}
};

class Accumulator {
public:
    Accumulator(std::string name, std::string kind) { e_.name = std::move(name); e_.kind = std::move(kind); }
    void add(double lhs, double rhs, const MultiIndex& m, const Vec3& v, std::size_t x) {
        if (rhs == 0.0) {
            if (lhs == 0.0) ++e_.skipped;
            else ++e_.violations;
            return;
        }
        const double r = lhs / rhs;
        ++e_.samples;
        if (!std::isfinite(r)) {
            e_.finite = false;
            return;
        }
        if (r > e_.constant || e_.samples == 1) {
            e_.constant = r;
            e_.worst_index = m.label();
            e_.worst_v = v;
            e_.worst_x = x;
        }
    }
    BoundEntry take() { return std::move(e_); }

private:
    BoundEntry e_;
};

double u_deriv(const Vec3& v, int i, int k) {
    // d_k (v_i / <v>)
    const double s = 1.0 / japanese_bracket(v);
    return (i == k ? s : 0.0) - v[i] * v[k] * s * s * s;
}

}  // namespace

const std::vector<std::string>& bound_names() {
    static const std::vector<std::string> names{
        "pw_a",       "pw_a_v",       "pw_a_2v",       "pw_der_a",       "pw_der_a_v",       "pw_2der_a",       "pw_c",
        "linf_a",     "linf_a_v",     "linf_a_2v",     "linf_der_a",     "linf_der_a_v",     "linf_2der_a",     "linf_c",
        "interpolation_l1_l2"};
    return names;
}

const BoundEntry& BoundReport::entry(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw std::out_of_range("BoundReport: no entry named " + name);
}

double BoundReport::max_constant() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.constant);
    return m;
}

bool BoundReport::all_finite() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const BoundEntry& e) { return e.finite && e.violations == 0; });
}

BoundReport verify_coefficient_bounds(const Field& f, double gamma, const BoundOptions& opt) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("verify_coefficient_bounds: gamma must lie in [0,1]");
    f.require_finite("verify_coefficient_bounds");
    const GridSpec& g = f.grid;
    const std::size_t nv = g.nv_total();
    const auto samples = choose_samples(g, opt);
    const auto indices = enumerate_indices(opt.max_order, g.x_axis_mask());

    std::vector<std::size_t> slices;
    for (const auto& s : samples)
        if (slices.empty() || slices.back() != s.xflat) slices.push_back(s.xflat);

    GridSpec vg = g;
    vg.x_dims = 0;
    const VelocityTable vt(vg);
    const double cell = vg.cell_volume_v();

    // values[index][sample][slot]
    std::vector<std::vector<std::array<double, kSlots>>> values(indices.size(),
                                                                std::vector<std::array<double, kSlots>>(samples.size()));
    std::vector<std::vector<SliceMoments>> moments(indices.size(), std::vector<SliceMoments>(slices.size()));
    std::vector<Field> dfs;
    dfs.reserve(indices.size());
    for (const auto& m : indices) dfs.push_back(m.is_zero() ? f : derivative(f, m));

    const std::array<double, 5> l2_exponents{4.0 + gamma, 6.0, 3.0 + gamma, 2.0 + gamma, 2.0};
    for (std::size_t mi = 0; mi < indices.size(); ++mi)
        for (std::size_t si = 0; si < slices.size(); ++si) {
            const double* d = dfs[mi].values.data() + slices[si] * nv;
            auto& mo = moments[mi][si];
            for (double k : l2_exponents) mo.l2[k] = 0.0;
            for (std::size_t p = 0; p < nv; ++p) {
                const double b = vt.bracket[p];
                const double a = std::abs(d[p]);
                mo.l1 += cell * a;
                mo.m4 += cell * b * b * b * b * a;
                mo.m2g += cell * std::pow(b, 2.0 + gamma) * a;
                for (auto& [k, acc] : mo.l2) acc += cell * std::pow(b, 2.0 * k) * d[p] * d[p];
            }
            for (auto& [k, acc] : mo.l2) acc = std::sqrt(acc);
        }

    const auto groups = kernel_groups(gamma);
    std::unique_ptr<VelocityConvolver> conv;
    if (opt.engine == Engine::FFT) conv = std::make_unique<VelocityConvolver>(vg);
    std::vector<double> slice_in(nv), slice_out(nv);
    for (const auto& grp : groups) {
        std::vector<VelocityConvolver::Spectrum> ks;
        if (conv) ks = conv->kernel_spectra(grp.fn, grp.count);
        for (std::size_t mi = 0; mi < indices.size(); ++mi) {
            std::size_t sp = 0;
            for (std::size_t si = 0; si < slices.size(); ++si) {
                const double* d = dfs[mi].values.data() + slices[si] * nv;
                for (std::size_t p = 0; p < nv; ++p) slice_in[p] = grp.on_abs ? std::abs(d[p]) : d[p];
                VelocityConvolver::Spectrum ds;
                if (conv) ds = conv->density_spectrum(slice_in.data());
                const std::size_t sp_begin = sp;
                for (int c = 0; c < grp.count; ++c) {
                    if (conv) {
                        conv->convolve(ks[static_cast<std::size_t>(c)], ds, slice_out.data());
                    } else {
                        const auto& fn = grp.fn;
                        direct_convolve(vg,
                                        [&fn, c](const Vec3& z) {
                                            std::array<double, 6> tmp{};
                                            fn(z, tmp.data());
                                            return tmp[static_cast<std::size_t>(c)];
                                        },
                                        slice_in.data(), slice_out.data());
                    }
                    for (sp = sp_begin; sp < samples.size() && samples[sp].xflat == slices[si]; ++sp)
                        values[mi][sp][static_cast<std::size_t>(grp.first + c)] = slice_out[samples[sp].vflat];
                }
            }
        }
    }

    std::vector<Accumulator> acc;
    for (std::size_t k = 0; k < bound_names().size(); ++k)
        acc.emplace_back(bound_names()[k], k < 7 ? "pointwise" : (k < 14 ? "linf" : "interpolation"));

    double box = 0.0;
    for (std::size_t p = 0; p < nv; ++p) box += cell / std::pow(vt.bracket[p], 4.0);
    box = std::sqrt(box);

    for (std::size_t mi = 0; mi < indices.size(); ++mi) {
        const auto& m = indices[mi];
        std::size_t si = 0;
        for (std::size_t sp = 0; sp < samples.size(); ++sp) {
            while (slices[si] != samples[sp].xflat) ++si;
            const auto& row = values[mi][sp];
            const auto& mo = moments[mi][si];
            const Vec3& v = vt.v[samples[sp].vflat];
            const double b = vt.bracket[samples[sp].vflat];
            const std::size_t x = samples[sp].xflat;
            auto A = [&](int base, int i, int j) { return row[static_cast<std::size_t>(base + Sym3::slot(i, j))]; };
            std::array<double, 3> u{v[0] / b, v[1] / b, v[2] / b};

            double pw_a = 0.0, pw_a_v = 0.0, pw_a_2v = 0.0, pw_der_a = 0.0, pw_der_a_v = 0.0, pw_2der_a = 0.0;
            for (int s = 0; s < 6; ++s) pw_a = std::max(pw_a, std::abs(row[static_cast<std::size_t>(kA + s)]));
            for (int j = 0; j < 3; ++j) {
                double t = 0.0;
                for (int i = 0; i < 3; ++i) t += A(kA, i, j) * u[i];
                pw_a_v = std::max(pw_a_v, std::abs(t));
            }
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) pw_a_2v += A(kA, i, j) * u[i] * u[j];
            pw_a_2v = std::abs(pw_a_2v);
            for (int s = 0; s < 18; ++s) pw_der_a = std::max(pw_der_a, std::abs(row[static_cast<std::size_t>(kDA + s)]));
            for (int k = 0; k < 3; ++k)
                for (int j = 0; j < 3; ++j) {
                    double t = 0.0;
                    for (int i = 0; i < 3; ++i) t += A(kDA + 6 * k, i, j) * u[i] + A(kA, i, j) * u_deriv(v, i, k);
                    pw_der_a_v = std::max(pw_der_a_v, std::abs(t));
                }
            for (int s = 0; s < 36; ++s) pw_2der_a = std::max(pw_2der_a, std::abs(row[static_cast<std::size_t>(kDDA + s)]));
            const double pw_c = std::abs(row[kC]);

            const double g1 = std::pow(b, gamma);
            const std::array<double, 7> lhs{pw_a, pw_a_v, pw_a_2v, pw_der_a, pw_der_a_v, pw_2der_a, pw_c};
            const std::array<double, 7> rhs{row[kPow2],          std::pow(b, 1.0 + gamma) * mo.m2g, g1 * mo.m4,
                                            row[kPow1],          g1 * mo.m2g,                       row[kPow0],
                                            row[kPow0]};
            const std::array<double, 7> p_exp{2.0 + gamma, 1.0 + gamma, gamma, 1.0 + gamma, gamma, gamma, gamma};
            const std::array<double, 7> k_exp{4.0 + gamma, 4.0 + gamma, 6.0, 3.0 + gamma, 4.0 + gamma, 2.0 + gamma,
                                              2.0 + gamma};
            for (std::size_t t = 0; t < 7; ++t) {
                acc[t].add(lhs[t], rhs[t], m, v, x);
                acc[7 + t].add(std::pow(b, -p_exp[t]) * lhs[t], mo.l2.at(k_exp[t]), m, v, x);
            }
        }
        for (std::size_t s = 0; s < slices.size(); ++s) {
            const auto& mo = moments[mi][s];
            acc[14].add(mo.l1, box * mo.l2.at(2.0), m, Vec3{0.0, 0.0, 0.0}, slices[s]);
        }
    }

    BoundReport rep;
    rep.gamma = gamma;
    rep.grid = g;
    rep.seed = opt.seed;
    rep.max_order = opt.max_order;
    rep.sample_points = static_cast<int>(samples.size());
    rep.derivative_indices = static_cast<int>(indices.size());
    rep.interpolation_box_constant = box;
    for (auto& a : acc) rep.entries.push_back(a.take());
    return rep;
}

}  // namespace landau
