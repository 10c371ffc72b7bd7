#pragma once

#include <array>
#include <memory>
#include <vector>

#include "landau/convolution.hpp"
#include "landau/grid.hpp"
#include "landau/multiindex.hpp"
#include "landau/sym3.hpp"

namespace landau {

struct SymField {
    GridSpec grid;
    std::array<std::vector<double>, 6> comp;

    SymField() = default;
    explicit SymField(const GridSpec& g);
    Sym3 at(std::size_t flat) const;
};

struct CoefficientField {
    GridSpec grid;
    SymField abar;
    std::vector<double> cbar;
};

// Caches the kernel spectra of a and c for one velocity grid and gamma so that
// repeated coefficient evaluations (one per snapshot of h) only transform f.
class CoefficientEngine {
public:
    CoefficientEngine(const GridSpec& g, double gamma, Engine engine = Engine::FFT);
    ~CoefficientEngine();
    CoefficientEngine(CoefficientEngine&&) noexcept;
    CoefficientEngine& operator=(CoefficientEngine&&) noexcept;

    CoefficientField operator()(const Field& f) const;
    double gamma() const { return gamma_; }

private:
    GridSpec grid_;
    double gamma_;
    Engine engine_;
    std::unique_ptr<VelocityConvolver> conv_;
    std::vector<VelocityConvolver::Spectrum> spectra_;
};

SymField abar(const Field& f, double gamma, Engine engine);
Field cbar(const Field& f, double gamma, Engine engine);
CoefficientField coefficients(const Field& f, double gamma, Engine engine);

// Convolve one density against several kernels, sharing transforms.
std::vector<Field> convolve_many(const Field& f, const std::vector<KernelFn>& kernels, Engine engine);

enum class Contraction { Plain, VOverBracket, VVOverBracket2, TraceOverBracket };

struct KernelDerivative {
    int order = 0;                 // 0, 1 or 2 velocity derivatives on kernel x outer factor
    std::array<int, 2> dirs{0, 0};  // k (and l) directions
};

// Outer velocity factor O_ij(v) of a contraction (component `comp`) and its
// derivatives: d = -1 means no derivative, otherwise derivative directions.
double outer_factor(Contraction c, int comp, int i, int j, const Vec3& v, int dk, int dl);
int contraction_components(Contraction c);

// d^{dirs}_v [ sum_ij abar_ij[d^m f] O_ij(v) ], product rule over kernel derivatives
// and analytic derivatives of the outer factor.
std::vector<Field> abar_derived(const Field& f, const MultiIndex& m, KernelDerivative kd, Contraction c,
                                double gamma, Engine engine);

// Q(f,f) = d_i( abar_ij d_j f - bbar_i f ), bbar_i = (d_j a_ij) * f, assembled per x-slice.
Field collision_operator(const Field& f, double gamma, Engine engine);

}  // namespace landau
