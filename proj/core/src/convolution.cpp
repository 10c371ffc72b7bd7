#include "landau/convolution.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace landau {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct VelocityConvolver::Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

VelocityConvolver::VelocityConvolver(const GridSpec& g, int padding)
    : n_(g.v_count), N_(padding * g.v_count), h_(g.hv()), plans_(std::make_unique<Plans>()) {
    if (N_ < 2 * n_ - 1) throw std::invalid_argument("fft convolution: padding must reach 2n-1 points per axis");
    const std::size_t real_size = static_cast<std::size_t>(N_) * N_ * N_;
    const std::size_t cplx_size = static_cast<std::size_t>(N_) * N_ * (N_ / 2 + 1);
    std::vector<double> r(real_size);
    std::vector<std::complex<double>> c(cplx_size);
    auto* cp = reinterpret_cast<fftw_complex*>(c.data());
    std::lock_guard<std::mutex> lock(planner_mutex());
    plans_->forward = fftw_plan_dft_r2c_3d(N_, N_, N_, r.data(), cp, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_->backward =
        fftw_plan_dft_c2r_3d(N_, N_, N_, cp, r.data(), FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_DESTROY_INPUT);
    if (!plans_->forward || !plans_->backward) throw std::runtime_error("fft convolution: planning failed");
}

VelocityConvolver::~VelocityConvolver() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plans_->forward) fftw_destroy_plan(plans_->forward);
    if (plans_->backward) fftw_destroy_plan(plans_->backward);
}

VelocityConvolver::Spectrum VelocityConvolver::kernel_spectrum(const KernelFn& k) const {
    auto s = kernel_spectra([&k](const Vec3& z, double* out) { out[0] = k(z); }, 1);
    return std::move(s.front());
}

std::vector<VelocityConvolver::Spectrum> VelocityConvolver::kernel_spectra(const MultiKernelFn& k, int count) const {
    const std::size_t N = static_cast<std::size_t>(N_);
    const std::size_t cnt = static_cast<std::size_t>(count);
    std::vector<std::vector<double>> bufs(cnt, std::vector<double>(N * N * N, 0.0));
    std::vector<double> vals(cnt);
    for (int d0 = -(n_ - 1); d0 <= n_ - 1; ++d0)
        for (int d1 = -(n_ - 1); d1 <= n_ - 1; ++d1)
            for (int d2 = -(n_ - 1); d2 <= n_ - 1; ++d2) {
                const std::size_t i0 = static_cast<std::size_t>((d0 + N_) % N_);
                const std::size_t i1 = static_cast<std::size_t>((d1 + N_) % N_);
                const std::size_t i2 = static_cast<std::size_t>((d2 + N_) % N_);
                k({d0 * h_, d1 * h_, d2 * h_}, vals.data());
                for (std::size_t c = 0; c < cnt; ++c) bufs[c][(i0 * N + i1) * N + i2] = vals[c];
            }
    std::vector<Spectrum> out;
    out.reserve(cnt);
    for (auto& b : bufs) {
        Spectrum s(N * N * (N / 2 + 1));
        fftw_execute_dft_r2c(plans_->forward, b.data(), reinterpret_cast<fftw_complex*>(s.data()));
        out.push_back(std::move(s));
        std::vector<double>().swap(b);
    }
    return out;
}

VelocityConvolver::Spectrum VelocityConvolver::density_spectrum(const double* f) const {
    const std::size_t N = static_cast<std::size_t>(N_);
    const std::size_t n = static_cast<std::size_t>(n_);
    std::vector<double> buf(N * N * N, 0.0);
    for (std::size_t i0 = 0; i0 < n; ++i0)
        for (std::size_t i1 = 0; i1 < n; ++i1)
            for (std::size_t i2 = 0; i2 < n; ++i2) buf[(i0 * N + i1) * N + i2] = f[(i0 * n + i1) * n + i2];
    Spectrum s(N * N * (N / 2 + 1));
    fftw_execute_dft_r2c(plans_->forward, buf.data(), reinterpret_cast<fftw_complex*>(s.data()));
    return s;
}

void VelocityConvolver::convolve(const Spectrum& k, const Spectrum& f, double* out) const {
    const std::size_t N = static_cast<std::size_t>(N_);
    const std::size_t n = static_cast<std::size_t>(n_);
    Spectrum prod(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) prod[i] = k[i] * f[i];
    std::vector<double> buf(N * N * N);
    fftw_execute_dft_c2r(plans_->backward, reinterpret_cast<fftw_complex*>(prod.data()), buf.data());
    const double scale = h_ * h_ * h_ / static_cast<double>(N * N * N);
    for (std::size_t i0 = 0; i0 < n; ++i0)
        for (std::size_t i1 = 0; i1 < n; ++i1)
            for (std::size_t i2 = 0; i2 < n; ++i2) out[(i0 * n + i1) * n + i2] = buf[(i0 * N + i1) * N + i2] * scale;
}

void direct_convolve(const GridSpec& g, const KernelFn& k, const double* f, double* out) {
    const int n = g.v_count;
    const int m = 2 * n - 1;
    const double h = g.hv();
    std::vector<double> table(static_cast<std::size_t>(m) * m * m);
    for (int d0 = 0; d0 < m; ++d0)
        for (int d1 = 0; d1 < m; ++d1)
            for (int d2 = 0; d2 < m; ++d2)
                table[(static_cast<std::size_t>(d0) * m + d1) * m + d2] =
                    k({(d0 - n + 1) * h, (d1 - n + 1) * h, (d2 - n + 1) * h});
    const double cell = h * h * h;
    for (int p0 = 0; p0 < n; ++p0)
        for (int p1 = 0; p1 < n; ++p1)
            for (int p2 = 0; p2 < n; ++p2) {
                double acc = 0.0;
                for (int q0 = 0; q0 < n; ++q0) {
                    const int d0 = p0 - q0 + n - 1;
                    for (int q1 = 0; q1 < n; ++q1) {
                        const int d1 = p1 - q1 + n - 1;
                        const double* trow = &table[(static_cast<std::size_t>(d0) * m + d1) * m + (p2 + n - 1)];
                        const double* frow = &f[(static_cast<std::size_t>(q0) * n + q1) * n];
                        for (int q2 = 0; q2 < n; ++q2) acc += trow[-q2] * frow[q2];
                    }
                }
                out[(static_cast<std::size_t>(p0) * n + p1) * n + p2] = acc * cell;
            }
}

Field convolve_field(const KernelFn& k, const Field& f, Engine engine) {
    const auto& g = f.grid;
    Field out(g, f.time);
    const std::size_t nv = g.nv_total();
    if (engine == Engine::Direct) {
        for (std::size_t xi = 0; xi < g.nx_total(); ++xi)
            direct_convolve(g, k, f.values.data() + xi * nv, out.values.data() + xi * nv);
        return out;
    }
    VelocityConvolver conv(g);
    const auto ks = conv.kernel_spectrum(k);
    for (std::size_t xi = 0; xi < g.nx_total(); ++xi) {
        const auto fs = conv.density_spectrum(f.values.data() + xi * nv);
        conv.convolve(ks, fs, out.values.data() + xi * nv);
    }
    return out;
}

}  // namespace landau
