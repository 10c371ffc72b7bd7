#include "landau/coefficients.hpp"

#include <cmath>
#include <stdexcept>

#include "landau/kernels.hpp"
#include "landau/stencil.hpp"

namespace landau {

SymField::SymField(const GridSpec& g) : grid(g) {
    for (auto& c : comp) c.assign(g.size(), 0.0);
}

Sym3 SymField::at(std::size_t flat) const {
    Sym3 s;
    for (int k = 0; k < 6; ++k) s.c[static_cast<std::size_t>(k)] = comp[static_cast<std::size_t>(k)][flat];
    return s;
}

std::vector<Field> convolve_many(const Field& f, const std::vector<KernelFn>& kernels, Engine engine) {
    const auto& g = f.grid;
    std::vector<Field> out(kernels.size(), Field(g, f.time));
    const std::size_t nv = g.nv_total();
    const std::size_t nx = g.nx_total();
    if (engine == Engine::Direct) {
        for (std::size_t k = 0; k < kernels.size(); ++k)
            for (std::size_t xi = 0; xi < nx; ++xi)
                direct_convolve(g, kernels[k], f.values.data() + xi * nv, out[k].values.data() + xi * nv);
        return out;
    }
    VelocityConvolver conv(g);
    if (nx <= kernels.size()) {
        std::vector<VelocityConvolver::Spectrum> dens;
        dens.reserve(nx);
        for (std::size_t xi = 0; xi < nx; ++xi) dens.push_back(conv.density_spectrum(f.values.data() + xi * nv));
        for (std::size_t k = 0; k < kernels.size(); ++k) {
            const auto ks = conv.kernel_spectrum(kernels[k]);
            for (std::size_t xi = 0; xi < nx; ++xi) conv.convolve(ks, dens[xi], out[k].values.data() + xi * nv);
        }
    } else {
        std::vector<VelocityConvolver::Spectrum> ks;
        ks.reserve(kernels.size());
        for (const auto& k : kernels) ks.push_back(conv.kernel_spectrum(k));
        for (std::size_t xi = 0; xi < nx; ++xi) {
            const auto ds = conv.density_spectrum(f.values.data() + xi * nv);
            for (std::size_t k = 0; k < kernels.size(); ++k) conv.convolve(ks[k], ds, out[k].values.data() + xi * nv);
        }
    }
    return out;
}

namespace {

std::vector<KernelFn> matrix_kernels(double gamma) {
    std::vector<KernelFn> ks;
    for (int s = 0; s < 6; ++s) ks.push_back([gamma, s](const Vec3& z) { return kernel_matrix(z, gamma).c[s]; });
    return ks;
}

std::vector<KernelFn> gradient_kernels(double gamma, int k) {
    std::vector<KernelFn> ks;
    for (int s = 0; s < 6; ++s)
        ks.push_back([gamma, s, k](const Vec3& z) { return kernel_gradient(z, gamma, k).c[s]; });
    return ks;
}

std::vector<KernelFn> hessian_kernels(double gamma, int k, int l) {
    std::vector<KernelFn> ks;
    for (int s = 0; s < 6; ++s)
        ks.push_back([gamma, s, k, l](const Vec3& z) { return kernel_hessian(z, gamma, k, l).c[s]; });
    return ks;
}

SymField to_sym(const GridSpec& g, std::vector<Field>&& fs, std::size_t offset = 0) {
    SymField s(g);
    for (std::size_t k = 0; k < 6; ++k) s.comp[k] = std::move(fs[offset + k].values);
    return s;
}

void require_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0,1]");
}

}  // namespace

SymField abar(const Field& f, double gamma, Engine engine) {
    require_gamma(gamma);
    f.require_finite("abar");
    return to_sym(f.grid, convolve_many(f, matrix_kernels(gamma), engine));
}

Field cbar(const Field& f, double gamma, Engine engine) {
    require_gamma(gamma);
    f.require_finite("cbar");
    return convolve_field([gamma](const Vec3& z) { return kernel_c(z, gamma); }, f, engine);
}

CoefficientEngine::CoefficientEngine(const GridSpec& g, double gamma, Engine engine)
    : grid_(g), gamma_(gamma), engine_(engine) {
    require_gamma(gamma);
    if (engine_ == Engine::FFT) {
        conv_ = std::make_unique<VelocityConvolver>(g);
        spectra_ = conv_->kernel_spectra(
            [gamma](const Vec3& z, double* out) {
                const Sym3 a = kernel_matrix(z, gamma);
                for (int s = 0; s < 6; ++s) out[s] = a.c[static_cast<std::size_t>(s)];
                out[6] = kernel_c(z, gamma);
            },
            7);
    }
}

CoefficientEngine::~CoefficientEngine() = default;
CoefficientEngine::CoefficientEngine(CoefficientEngine&&) noexcept = default;
CoefficientEngine& CoefficientEngine::operator=(CoefficientEngine&&) noexcept = default;

CoefficientField CoefficientEngine::operator()(const Field& f) const {
    if (!(f.grid == grid_)) throw std::invalid_argument("CoefficientEngine: grid mismatch");
    if (engine_ == Engine::Direct) return coefficients(f, gamma_, Engine::Direct);
    f.require_finite("coefficients");
    CoefficientField cf;
    cf.grid = grid_;
    cf.abar = SymField(grid_);
    cf.cbar.assign(grid_.size(), 0.0);
    const std::size_t nv = grid_.nv_total();
    for (std::size_t xi = 0; xi < grid_.nx_total(); ++xi) {
        const auto ds = conv_->density_spectrum(f.values.data() + xi * nv);
        for (std::size_t s = 0; s < 6; ++s) conv_->convolve(spectra_[s], ds, cf.abar.comp[s].data() + xi * nv);
        conv_->convolve(spectra_[6], ds, cf.cbar.data() + xi * nv);
    }
    return cf;
}

CoefficientField coefficients(const Field& f, double gamma, Engine engine) {
    require_gamma(gamma);
    f.require_finite("coefficients");
    auto ks = matrix_kernels(gamma);
    ks.push_back([gamma](const Vec3& z) { return kernel_c(z, gamma); });
    auto fs = convolve_many(f, ks, engine);
    CoefficientField cf;
    cf.grid = f.grid;
    cf.cbar = std::move(fs[6].values);
    cf.abar = to_sym(f.grid, std::move(fs));
    return cf;
}

int contraction_components(Contraction c) {
    switch (c) {
        case Contraction::Plain: return 6;
        case Contraction::VOverBracket: return 3;
        case Contraction::VVOverBracket2: return 1;
        case Contraction::TraceOverBracket: return 1;
    }
    return 0;
}

namespace {

double kd(int i, int j) { return i == j ? 1.0 : 0.0; }

// s = <v>^{-1} and its first two derivatives
double s_fn(const Vec3& v, int dk, int dl) {
    const double s = 1.0 / japanese_bracket(v);
    if (dk < 0) return s;
    const double s3 = s * s * s;
    if (dl < 0) return -v[dk] * s3;
    return -kd(dk, dl) * s3 + 3.0 * v[dk] * v[dl] * s3 * s * s;
}

// q = <v>^{-2} and its first two derivatives
double q_fn(const Vec3& v, int dk, int dl) {
    const double q = 1.0 / (1.0 + v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (dk < 0) return q;
    if (dl < 0) return -2.0 * v[dk] * q * q;
    return -2.0 * kd(dk, dl) * q * q + 8.0 * v[dk] * v[dl] * q * q * q;
}

// u_i = v_i s
double u_fn(const Vec3& v, int i, int dk, int dl) {
    if (dk < 0) return v[i] * s_fn(v, -1, -1);
    if (dl < 0) return kd(i, dk) * s_fn(v, -1, -1) + v[i] * s_fn(v, dk, -1);
    return kd(i, dk) * s_fn(v, dl, -1) + kd(i, dl) * s_fn(v, dk, -1) + v[i] * s_fn(v, dk, dl);
}

// W_ij = v_i v_j q
double w_fn(const Vec3& v, int i, int j, int dk, int dl) {
    if (dk < 0) return v[i] * v[j] * q_fn(v, -1, -1);
    if (dl < 0) return (kd(i, dk) * v[j] + kd(j, dk) * v[i]) * q_fn(v, -1, -1) + v[i] * v[j] * q_fn(v, dk, -1);
    return (kd(i, dk) * kd(j, dl) + kd(j, dk) * kd(i, dl)) * q_fn(v, -1, -1) +
           (kd(i, dk) * v[j] + kd(j, dk) * v[i]) * q_fn(v, dl, -1) +
           (kd(i, dl) * v[j] + kd(j, dl) * v[i]) * q_fn(v, dk, -1) + v[i] * v[j] * q_fn(v, dk, dl);
}

}  // namespace

double outer_factor(Contraction c, int comp, int i, int j, const Vec3& v, int dk, int dl) {
    switch (c) {
        case Contraction::Plain: {
            if (dk >= 0) return 0.0;
            const auto& p = kSymPairs[static_cast<std::size_t>(comp)];
            // picks the packed component (i,j) = p; symmetric sum counts off-diagonal twice, so halve.
            if ((i == p[0] && j == p[1]) || (i == p[1] && j == p[0])) return p[0] == p[1] ? 1.0 : 0.5;
            return 0.0;
        }
        case Contraction::VOverBracket: return j == comp ? u_fn(v, i, dk, dl) : 0.0;
        case Contraction::VVOverBracket2: return w_fn(v, i, j, dk, dl);
        case Contraction::TraceOverBracket: return kd(i, j) * s_fn(v, dk, dl);
    }
    return 0.0;
}

std::vector<Field> abar_derived(const Field& f, const MultiIndex& m, KernelDerivative kdv, Contraction c, double gamma,
                                Engine engine) {
    require_gamma(gamma);
    if (kdv.order < 0 || kdv.order > 2)
        throw std::invalid_argument("abar_derived: kernel derivative order must be 0, 1 or 2");
    for (int t = 0; t < kdv.order; ++t)
        if (kdv.dirs[static_cast<std::size_t>(t)] < 0 || kdv.dirs[static_cast<std::size_t>(t)] > 2)
            throw std::invalid_argument("abar_derived: derivative direction out of range");
    const auto& g = f.grid;
    const Field df = m.is_zero() ? f : derivative(f, m);
    df.require_finite("abar_derived");
    const int k = kdv.dirs[0], l = kdv.dirs[1];

    // terms: (kernel derivative set, outer-factor derivative (dk, dl))
    struct Term {
        int kernel;  // 0: a, 1: d_k a, 2: d_l a, 3: d_kl a
        int dk, dl;
    };
    std::vector<Term> terms;
    std::vector<KernelFn> kernels = matrix_kernels(gamma);
    if (kdv.order == 0) {
        terms = {{0, -1, -1}};
    } else if (kdv.order == 1) {
        auto gk = gradient_kernels(gamma, k);
        kernels.insert(kernels.end(), gk.begin(), gk.end());
        terms = {{1, -1, -1}, {0, k, -1}};
    } else {
        auto gk = gradient_kernels(gamma, k);
        auto gl = gradient_kernels(gamma, l);
        auto hk = hessian_kernels(gamma, k, l);
        kernels.insert(kernels.end(), gk.begin(), gk.end());
        kernels.insert(kernels.end(), gl.begin(), gl.end());
        kernels.insert(kernels.end(), hk.begin(), hk.end());
        terms = {{3, -1, -1}, {1, l, -1}, {2, k, -1}, {0, k, l}};
    }
    const auto conv = convolve_many(df, kernels, engine);
    const int ncomp = contraction_components(c);
    std::vector<Field> out(static_cast<std::size_t>(ncomp), Field(g, f.time));
    const VelocityTable vt(g);
    const std::size_t nv = g.nv_total();
    for (std::size_t xi = 0; xi < g.nx_total(); ++xi) {
        for (std::size_t vi = 0; vi < nv; ++vi) {
            const std::size_t idx = xi * nv + vi;
            const Vec3& v = vt.v[vi];
            for (int comp = 0; comp < ncomp; ++comp) {
                double acc = 0.0;
                for (const auto& t : terms) {
                    const std::size_t base = static_cast<std::size_t>(t.kernel) * 6;
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) {
                            const double o = outer_factor(c, comp, i, j, v, t.dk, t.dl);
                            if (o == 0.0) continue;
                            acc += o * conv[base + static_cast<std::size_t>(Sym3::slot(i, j))].values[idx];
                        }
                }
                out[static_cast<std::size_t>(comp)].values[idx] = acc;
            }
        }
    }
    return out;
}

Field collision_operator(const Field& f, double gamma, Engine engine) {
    require_gamma(gamma);
    f.require_finite("collision_operator");
    const auto& g = f.grid;
    auto ks = matrix_kernels(gamma);
    for (int i = 0; i < 3; ++i) ks.push_back([gamma, i](const Vec3& z) { return kernel_b(z, gamma)[i]; });
    const auto conv = convolve_many(f, ks, engine);
    std::array<Field, 3> grad;
    for (int j = 0; j < 3; ++j) grad[j] = derivative(f, MultiIndex::v(j));
    Field q(g, f.time);
    for (int i = 0; i < 3; ++i) {
        Field flux(g, f.time);
        for (std::size_t p = 0; p < g.size(); ++p) {
            double s = -conv[static_cast<std::size_t>(6 + i)].values[p] * f.values[p];
            for (int j = 0; j < 3; ++j) s += conv[static_cast<std::size_t>(Sym3::slot(i, j))].values[p] * grad[j].values[p];
            flux.values[p] = s;
        }
        const Field dflux = derivative(flux, MultiIndex::v(i));
        for (std::size_t p = 0; p < g.size(); ++p) q.values[p] += dflux.values[p];
    }
    return q;
}

}  // namespace landau
