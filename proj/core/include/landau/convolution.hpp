#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "landau/grid.hpp"

namespace landau {

enum class Engine { Direct, FFT };

using KernelFn = std::function<double(const Vec3&)>;
// Writes `count` kernel components at z into out[0..count).
using MultiKernelFn = std::function<void(const Vec3&, double*)>;

// Velocity convolution (K * f)(v_p) = hv^3 sum_q K(v_p - v_q) f(v_q) on one
// velocity slice. The FFT path zero-pads every axis to padding*n and crops.
class VelocityConvolver {
public:
    explicit VelocityConvolver(const GridSpec& g, int padding = 2);
    ~VelocityConvolver();
    VelocityConvolver(const VelocityConvolver&) = delete;
    VelocityConvolver& operator=(const VelocityConvolver&) = delete;

    using Spectrum = std::vector<std::complex<double>>;

    Spectrum kernel_spectrum(const KernelFn& k) const;
    std::vector<Spectrum> kernel_spectra(const MultiKernelFn& k, int count) const;
    Spectrum density_spectrum(const double* f) const;
    // out (n^3 values) = crop(IFFT(K^ . F^)) * hv^3
    void convolve(const Spectrum& k, const Spectrum& f, double* out) const;

    int n() const { return n_; }
    int padded() const { return N_; }

private:
    int n_;
    int N_;
    double h_;
    struct Plans;
    std::unique_ptr<Plans> plans_;
};

// O(n^6) reference quadrature with the kernel tabulated on the difference lattice.
void direct_convolve(const GridSpec& g, const KernelFn& k, const double* f, double* out);

// Convolve every x-slice of f with k.
Field convolve_field(const KernelFn& k, const Field& f, Engine engine);

}  // namespace landau
