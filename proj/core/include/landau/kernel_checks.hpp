#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace landau {

struct KernelCheckOptions {
    int samples = 10000;     // random (z, xi) pairs for the algebraic identities
    int fd_samples = 1000;   // points for the finite-difference contraction check
    double fd_step = 1e-2;
    int conv_grid = 16;      // velocity points per axis for the engine comparison
    std::uint64_t seed = 1;
};

struct KernelCheck {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    long long samples = 0;
    bool passed = false;
};

struct KernelCheckReport {
    double gamma = 0.0;
    std::uint64_t seed = 0;
    std::vector<KernelCheck> checks;
    bool passed() const;
};

// Null direction a(z)z = 0, quadratic form, anisotropy identity, finite-difference
// contraction against c(z), FFT against direct convolution, and the point-mass translate.
KernelCheckReport verify_kernels(double gamma, const KernelCheckOptions& opt = {});

}  // namespace landau
