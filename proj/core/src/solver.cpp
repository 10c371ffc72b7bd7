#include "landau/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "landau/mollifier.hpp"
#include "landau/selling.hpp"
#include "landau/sym3.hpp"

namespace landau {

void SolverConfig::validate(const GridSpec& g) const {
    g.validate();
    params.validate();
    weight.validate();
    if (!(epsilon >= 0.0)) throw std::invalid_argument("solver: epsilon must be >= 0");
    if (!(R > 0.0)) throw std::invalid_argument("solver: R must be positive");
    if (R > g.v_extent / 1.2 * (1.0 + 1e-12))
        throw std::invalid_argument("solver: R must not exceed v_extent/1.2");
    if (initial_cutoff && !(R > 3.0)) throw std::invalid_argument("solver: the initial cutoff chi_R needs R > 3");
    if (!(dt >= 0.0)) throw std::invalid_argument("solver: dt must be >= 0");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw std::invalid_argument("solver: cfl_safety must lie in (0,1]");
    if (snapshot_every < 1) throw std::invalid_argument("solver: snapshot_every must be >= 1");
    if (ledger_every < 1) throw std::invalid_argument("solver: ledger_every must be >= 1");
    if (max_derivative_order < 0 || max_derivative_order > g.max_derivative_order)
        throw std::invalid_argument("solver: max_derivative_order exceeds the grid's derivative order");
    if (mollifier_epsilon < 0.0) throw std::invalid_argument("solver: mollifier_epsilon must be >= 0");
    if (!(growth_cap > 0.0)) throw std::invalid_argument("solver: growth_cap must be positive");
}

struct LinearizedOperator::Local {
    Sym3 A;          // abar + eps I
    Vec3 drift;      // -2 d sum_i A_ij v_i/<v>
    double reaction; // -cbar - kappa <v> - d (tr A/<v> - (d + s) vAv/<v>^2)
};

namespace {

// One second-order term rho (G(v + h e) + G(v - h e) - 2 G(v)) / h^2.
struct Term {
    double rho = 0.0;
    Vec3 e{0.0, 0.0, 0.0};
    std::ptrdiff_t offset = 0;  // flat offset of +h e within the velocity block
    signed char axis = -1;      // index of the axis when e = +-unit vector
    signed char sign = 0;       // +1 or -1 along that axis
    bool plus_inside = false;   // whether v + h e (resp. v - h e) is on the grid
    bool minus_inside = false;
};

struct Stencil {
    std::array<Term, 6> terms;
    // The 19-point split carries no drift share, so the drift is upwinded along the axes instead.
    bool fallback = false;
};

// Weights on G(v - h e) - G(v) and G(v + h e) - G(v) for rho d_ee + beta d_e, exponentially
// fitted so both stay nonnegative; central differencing is recovered when |beta| h << rho.
std::pair<double, double> fitted_weights(double rho, double beta, double h) {
    double keff = rho;
    if (rho > 0.0) {
        const double x = beta * h / (2.0 * rho);
        keff = std::abs(x) < 1e-4 ? rho * (1.0 + x * x / 3.0) : rho * x / std::tanh(x);
    } else {
        keff = std::abs(beta) * h / 2.0;
    }
    return {keff / (h * h) - beta / (2.0 * h), keff / (h * h) + beta / (2.0 * h)};
}

}  // namespace

struct LinearizedOperator::Prepared {
    std::size_t k = 0;
    double th = 0.0;
    CoefficientField cf;
    std::vector<Stencil> stencils;  // per velocity-block point, indexed by flat index
};

LinearizedOperator::~LinearizedOperator() = default;
LinearizedOperator::LinearizedOperator(LinearizedOperator&&) noexcept = default;
LinearizedOperator& LinearizedOperator::operator=(LinearizedOperator&&) noexcept = default;

LinearizedOperator::LinearizedOperator(const GridSpec& g, const SolverConfig& cfg, std::vector<Field> h_snapshots)
    : grid_(g), cfg_(cfg), vt_(g) {
    cfg_.validate(g);
    if (h_snapshots.empty()) throw std::invalid_argument("solver: h trajectory is empty");
    std::stable_sort(h_snapshots.begin(), h_snapshots.end(),
                     [](const Field& a, const Field& b) { return a.time < b.time; });
    const CoefficientEngine engine(g, cfg_.params.gamma, cfg_.engine);
    for (auto& h : h_snapshots) {
        if (!(h.grid == g)) throw std::invalid_argument("solver: h snapshot grid differs from the solution grid");
        h.require_finite("solver input h");
        const Field src = cfg_.mollifier_epsilon > 0.0 ? mollify(h, {cfg_.mollifier_epsilon}) : h;
        times_.push_back(h.time);
        coeffs_.push_back(engine(src));
    }
    interior_ = interior_mask(g, wall_radius());
}

std::vector<char> interior_mask(const GridSpec& g, double R) {
    const int n = g.v_count;
    const VelocityTable vt(g);
    std::vector<char> mask(g.nv_total(), 0);
    for (int i0 = 1; i0 < n - 1; ++i0)
        for (int i1 = 1; i1 < n - 1; ++i1)
            for (int i2 = 1; i2 < n - 1; ++i2) {
                const std::size_t p = g.v_flat(i0, i1, i2);
                if (vt.speed[p] < R) mask[p] = 1;
            }
    return mask;
}

CoefficientField LinearizedOperator::coefficients_at(double t) const {
    if (coeffs_.size() == 1 || t <= times_.front()) return coeffs_.front();
    if (t >= times_.back()) return coeffs_.back();
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - times_.begin()) - 1;
    const double span = times_[k + 1] - times_[k];
    const double th = span > 0.0 ? (t - times_[k]) / span : 0.0;
    CoefficientField out = coeffs_[k];
    const auto& nx = coeffs_[k + 1];
    for (std::size_t s = 0; s < 6; ++s)
        for (std::size_t i = 0; i < out.abar.comp[s].size(); ++i)
            out.abar.comp[s][i] = (1.0 - th) * out.abar.comp[s][i] + th * nx.abar.comp[s][i];
    for (std::size_t i = 0; i < out.cbar.size(); ++i) out.cbar[i] = (1.0 - th) * out.cbar[i] + th * nx.cbar[i];
    return out;
}

const LinearizedOperator::Prepared& LinearizedOperator::prepare(double t) const {
    std::size_t k = 0;
    double th = 0.0;
    if (coeffs_.size() > 1 && t > times_.front()) {
        if (t >= times_.back()) {
            k = coeffs_.size() - 1;
        } else {
            const auto it = std::upper_bound(times_.begin(), times_.end(), t);
            k = static_cast<std::size_t>(it - times_.begin()) - 1;
            const double span = times_[k + 1] - times_[k];
            th = span > 0.0 ? (t - times_[k]) / span : 0.0;
        }
    }
    if (cache_ && cache_->k == k && cache_->th == th) return *cache_;

    auto P = std::make_unique<Prepared>();
    P->k = k;
    P->th = th;
    P->cf = coefficients_at(t);
    const GridSpec& g = grid_;
    const int n = g.v_count;
    const std::size_t nv = g.nv_total();
    const std::array<std::ptrdiff_t, 3> vs{static_cast<std::ptrdiff_t>(n) * n, n, 1};
    P->stencils.assign(nv * g.nx_total(), Stencil{});
    std::size_t fallbacks = 0;
    double added = 0.0;
    int reach = 0;
    for (std::size_t xi = 0; xi < g.nx_total(); ++xi)
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2) {
                    const std::size_t p = g.v_flat(i0, i1, i2);
                    if (!interior_[p]) continue;
                    const std::size_t idx = xi * nv + p;
                    Sym3 A;
                    for (std::size_t s = 0; s < 6; ++s) A.c[s] = P->cf.abar.comp[s][idx];
                    for (int i = 0; i < 3; ++i) A(i, i) += cfg_.epsilon;
                    std::array<SellingTerm, 6> terms;
                    Stencil& st = P->stencils[idx];
                    if (auto sd = selling_decomposition(A)) {
                        terms = *sd;
                    } else {
                        ++fallbacks;
                        st.fallback = true;
                        std::size_t m = 0;
                        for (int i = 0; i < 3; ++i) {
                            double kk = A(i, i);
                            for (int j = 0; j < 3; ++j)
                                if (j != i) kk -= std::abs(A(i, j));
                            if (kk < 0.0 && cfg_.artificial_viscosity) {
                                added = std::max(added, -kk);
                                kk = 0.0;
                            }
                            Offset3 e{0, 0, 0};
                            e[static_cast<std::size_t>(i)] = 1;
                            terms[m++] = {kk, e};
                        }
                        for (int i = 0; i < 3; ++i)
                            for (int j = i + 1; j < 3; ++j) {
                                Offset3 e{0, 0, 0};
                                e[static_cast<std::size_t>(i)] = 1;
                                e[static_cast<std::size_t>(j)] = A(i, j) >= 0.0 ? 1 : -1;
                                terms[m++] = {std::abs(A(i, j)), e};
                            }
                    }
                    const std::array<int, 3> c{i0, i1, i2};
                    for (std::size_t q = 0; q < 6; ++q) {
                        Term& tm = st.terms[q];
                        const Offset3& e = terms[q].e;
                        tm.rho = terms[q].rho;
                        for (std::size_t a = 0; a < 3; ++a) tm.e[static_cast<int>(a)] = e[a];
                        if (tm.rho == 0.0) continue;
                        bool plus = true, minus = true;
                        int nonzero = 0;
                        for (std::size_t a = 0; a < 3; ++a) {
                            tm.offset += e[a] * vs[a];
                            plus = plus && c[a] + e[a] >= 0 && c[a] + e[a] < n;
                            minus = minus && c[a] - e[a] >= 0 && c[a] - e[a] < n;
                            if (e[a] != 0) {
                                ++nonzero;
                                tm.axis = static_cast<signed char>(a);
                            }
                            reach = std::max(reach, std::abs(e[a]));
                        }
                        if (nonzero != 1 || std::abs(e[static_cast<std::size_t>(tm.axis)]) != 1)
                            tm.axis = -1;
                        else
                            tm.sign = static_cast<signed char>(e[static_cast<std::size_t>(tm.axis)]);
                        tm.plus_inside = plus;
                        tm.minus_inside = minus;
                    }
                }
    stats_.fallback_points = std::max(stats_.fallback_points, fallbacks);
    stats_.max_added_viscosity = std::max(stats_.max_added_viscosity, added);
    stats_.max_reach = std::max(stats_.max_reach, reach);
    cache_ = std::move(P);
    return *cache_;
}

LinearizedOperator::Local LinearizedOperator::local(const Prepared& P, std::size_t idx, double d) const {
    const std::size_t p = idx % grid_.nv_total();
    const Vec3& v = vt_.v[p];
    const double br = vt_.bracket[p];
    Local L;
    for (std::size_t s = 0; s < 6; ++s) L.A.c[s] = P.cf.abar.comp[s][idx];
    for (int i = 0; i < 3; ++i) L.A(i, i) += cfg_.epsilon;
    const Vec3 u{v[0] / br, v[1] / br, v[2] / br};
    const auto Au = L.A.apply(u);
    for (int j = 0; j < 3; ++j) L.drift[j] = -2.0 * d * Au[j];
    const double s = cfg_.variant == ReactionVariant::BracketInverse ? 1.0 / br : 1.0;
    L.reaction = -P.cf.cbar[idx] - cfg_.weight.kappa * br - d * (L.A.trace() / br - (d + s) * L.A.quad(v) / (br * br));
    return L;
}

namespace {

struct Strides {
    std::size_t nv;
    std::array<std::size_t, 3> v;
    int x_dims;
    int nx;
    std::array<std::size_t, 3> x;
};

Strides strides_of(const GridSpec& g) {
    Strides s;
    s.nv = g.nv_total();
    const auto n = static_cast<std::size_t>(g.v_count);
    s.v = {n * n, n, 1};
    s.x_dims = g.x_dims;
    s.nx = g.x_count;
    std::size_t st = 1;
    s.x = {0, 0, 0};
    for (int k = g.x_dims - 1; k >= 0; --k) {
        s.x[static_cast<std::size_t>(k)] = st;
        st *= static_cast<std::size_t>(g.x_count);
    }
    return s;
}

// Periodic neighbour in x along active axis k.
std::size_t x_neighbour(const Strides& s, std::size_t xflat, int k, int dir) {
    const std::size_t st = s.x[static_cast<std::size_t>(k)];
    const auto nx = static_cast<std::size_t>(s.nx);
    const std::size_t c = (xflat / st) % nx;
    const std::size_t cn = (c + nx + static_cast<std::size_t>(dir + static_cast<int>(nx))) % nx;
    return xflat - c * st + cn * st;
}

// Terms solved implicitly in the IMEX split: unit offsets along an axis.
bool implicit_term(const Term& tm, bool imex, bool) { return imex && tm.axis >= 0; }

// b = A eta with eta = -2 d v/<v>, so the drift splits over the same offsets as A.
Vec3 drift_direction(const VelocityTable& vt, std::size_t p, double d) {
    const double s = -2.0 * d / vt.bracket[p];
    return {s * vt.v[p][0], s * vt.v[p][1], s * vt.v[p][2]};
}

std::pair<double, double> weights(const Term& tm, const Vec3& eta, bool fallback, double h) {
    if (tm.rho == 0.0) return {0.0, 0.0};
    if (fallback) return {tm.rho / (h * h), tm.rho / (h * h)};
    const double beta = tm.rho * (tm.e[0] * eta[0] + tm.e[1] * eta[1] + tm.e[2] * eta[2]);
    return fitted_weights(tm.rho, beta, h);
}

}  // namespace

double LinearizedOperator::rate_at(const Prepared& P, std::size_t idx, double d, bool imex) const {
    const Local L = local(P, idx, d);
    const double hv = grid_.hv(), hx = grid_.hx();
    const Vec3& v = vt_.v[idx % grid_.nv_total()];
    double rate = 0.0;
    for (int k = 0; k < grid_.x_dims; ++k) rate += std::abs(v[k]) / hx;
    const Stencil& st = P.stencils[idx];
    if (!imex) {
        rate += 2.0 * cfg_.epsilon * grid_.x_dims / (hx * hx);
        if (st.fallback)
            for (int j = 0; j < 3; ++j) rate += std::abs(L.drift[j]) / hv;
        rate += std::max(0.0, -L.reaction);
    }
    const Vec3 eta = drift_direction(vt_, idx % grid_.nv_total(), d);
    for (const Term& tm : st.terms) {
        if (implicit_term(tm, imex, st.fallback)) continue;
        const auto [cm, cp] = weights(tm, eta, st.fallback, hv);
        rate += std::max(cm, 0.0) + std::max(cp, 0.0);
    }
    return rate;
}

double LinearizedOperator::positivity_bound(double t) const {
    const Prepared& P = prepare(t);
    const double d = cfg_.weight.d(t);
    const bool imex = cfg_.scheme == Scheme::IMEX;
    double rmax = 0.0;
    const std::size_t nv = grid_.nv_total();
    const auto nx = static_cast<std::ptrdiff_t>(grid_.nx_total());
#pragma omp parallel for reduction(max : rmax) schedule(static)
    for (std::ptrdiff_t xi = 0; xi < nx; ++xi)
        for (std::size_t p = 0; p < nv; ++p)
            if (interior_[p]) rmax = std::max(rmax, rate_at(P, static_cast<std::size_t>(xi) * nv + p, d, imex));
    return rmax > 0.0 ? 1.0 / rmax : std::numeric_limits<double>::infinity();
}

double LinearizedOperator::stable_dt(double T) const {
    std::vector<double> ts{0.0, T};
    for (double t : times_)
        if (t > 0.0 && t < T) ts.push_back(t);
    double b = std::numeric_limits<double>::infinity();
    for (double t : ts) b = std::min(b, positivity_bound(t));
    return cfg_.cfl_safety * b;
}

void LinearizedOperator::apply_boundary(Field& G) const {
    const std::size_t nv = grid_.nv_total();
    for (std::size_t xi = 0; xi < grid_.nx_total(); ++xi)
        for (std::size_t p = 0; p < nv; ++p)
            if (!interior_[p]) G.values[xi * nv + p] = 0.0;
}

Field LinearizedOperator::explicit_part(const Field& G, double t, bool imex) const {
    if (!(G.grid == grid_)) throw std::invalid_argument("solver: field grid differs from the operator grid");
    const Prepared& P = prepare(t);
    const double d = cfg_.weight.d(t);
    const Strides S = strides_of(grid_);
    const double hv = grid_.hv(), hx = grid_.hx();
    const double ihx2 = 1.0 / (hx * hx);
    Field out(grid_, t);
    const auto& u = G.values;
    const auto nx = static_cast<std::ptrdiff_t>(grid_.nx_total());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t sxi = 0; sxi < nx; ++sxi) {
        const auto xi = static_cast<std::size_t>(sxi);
        const std::size_t base = xi * S.nv;
        for (std::size_t p = 0; p < S.nv; ++p) {
            if (!interior_[p]) continue;
            const std::size_t idx = base + p;
            const double g0 = u[idx];
            const Vec3& v = vt_.v[p];
            double r = 0.0;
            for (int k = 0; k < S.x_dims; ++k) {
                const std::size_t xp = x_neighbour(S, xi, k, +1) * S.nv + p;
                const std::size_t xm = x_neighbour(S, xi, k, -1) * S.nv + p;
                r += v[k] > 0.0 ? -v[k] * (g0 - u[xm]) / hx : -v[k] * (u[xp] - g0) / hx;
                if (!imex) r += cfg_.epsilon * (u[xp] + u[xm] - 2.0 * g0) * ihx2;
            }
            const Stencil& st = P.stencils[idx];
            const Vec3 eta = drift_direction(vt_, idx % grid_.nv_total(), d);
            for (const Term& tm : st.terms) {
                if (implicit_term(tm, imex, st.fallback)) continue;
                const auto [cm, cp] = weights(tm, eta, st.fallback, hv);
                if (cm == 0.0 && cp == 0.0) continue;
                const auto sidx = static_cast<std::ptrdiff_t>(idx);
                const double gp = tm.plus_inside ? u[static_cast<std::size_t>(sidx + tm.offset)] : 0.0;
                const double gm = tm.minus_inside ? u[static_cast<std::size_t>(sidx - tm.offset)] : 0.0;
                r += cp * (gp - g0) + cm * (gm - g0);
            }
            if (!imex) {
                const Local L = local(P, idx, d);
                if (st.fallback)
                    for (int i = 0; i < 3; ++i) {
                        const std::size_t si = S.v[static_cast<std::size_t>(i)];
                        const double b = L.drift[i];
                        r += b > 0.0 ? b * (u[idx + si] - g0) / hv : b * (g0 - u[idx - si]) / hv;
                    }
                r += L.reaction * g0;
            }
            out.values[idx] = r;
        }
    }
    return out;
}

Field LinearizedOperator::rhs(const Field& G, double t) const { return explicit_part(G, t, false); }

namespace {

// Solves (1 + l_i + u_i) x_i - l_i x_{i-1} - u_i x_{i+1} = b_i with zero ends (Thomas).
void tridiag_dirichlet(const std::vector<double>& l, const std::vector<double>& u, std::vector<double>& b) {
    const std::size_t n = b.size();
    if (n == 0) return;
    std::vector<double> cp(n), dp(n);
    double diag = 1.0 + l[0] + u[0];
    cp[0] = -u[0] / diag;
    dp[0] = b[0] / diag;
    for (std::size_t i = 1; i < n; ++i) {
        diag = 1.0 + l[i] + u[i] + l[i] * cp[i - 1];
        cp[i] = -u[i] / diag;
        dp[i] = (b[i] + l[i] * dp[i - 1]) / diag;
    }
    b[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) b[i] = dp[i] - cp[i] * b[i + 1];
}

// Constant-coefficient periodic system (1 + 2c) x_i - c x_{i-1} - c x_{i+1} = b_i (Sherman-Morrison).
void tridiag_periodic(double c, std::vector<double>& b) {
    const std::size_t n = b.size();
    if (c == 0.0) return;
    const double a = -c, diag = 1.0 + 2.0 * c, gam = -diag;
    std::vector<double> dd(n, diag), u(n, 0.0);
    dd[0] = diag - gam;
    dd[n - 1] = diag - a * a / gam;
    u[0] = gam;
    u[n - 1] = a;
    auto solve = [&](std::vector<double>& rhs) {
        std::vector<double> cp(n), dp(n);
        cp[0] = a / dd[0];
        dp[0] = rhs[0] / dd[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double m = dd[i] - a * cp[i - 1];
            cp[i] = a / m;
            dp[i] = (rhs[i] - a * dp[i - 1]) / m;
        }
        rhs[n - 1] = dp[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) rhs[i] = dp[i] - cp[i] * rhs[i + 1];
    };
    solve(b);
    solve(u);
    const double fact = (b[0] + a * b[n - 1] / gam) / (1.0 + u[0] + a * u[n - 1] / gam);
    for (std::size_t i = 0; i < n; ++i) b[i] -= fact * u[i];
}

}  // namespace

void LinearizedOperator::implicit_solve(Field& G, double t, double dt) const {
    const Prepared& P = prepare(t);
    const double d = cfg_.weight.d(t);
    const Strides S = strides_of(grid_);
    const double hv = grid_.hv(), hx = grid_.hx();
    const int n = grid_.v_count;
    auto& u = G.values;
    // Reaction, pointwise implicit. Its damping part keeps the update positive for any dt.
    for (std::size_t xi = 0; xi < grid_.nx_total(); ++xi)
        for (std::size_t p = 0; p < S.nv; ++p) {
            if (!interior_[p]) continue;
            const std::size_t idx = xi * S.nv + p;
            const Local L = local(P, idx, d);
            if (L.reaction < 0.0)
                u[idx] /= (1.0 - dt * L.reaction);
            else
                u[idx] *= (1.0 + dt * L.reaction);
        }
    // Unit-offset diffusion and upwind drift along each axis, one Dirichlet system per interior run.
    std::vector<double> ll, uu, bb;
    std::vector<std::size_t> run;
    for (int axis = 0; axis < 3; ++axis) {
        for (std::size_t xi = 0; xi < grid_.nx_total(); ++xi)
            for (int o1 = 0; o1 < n; ++o1)
                for (int o2 = 0; o2 < n; ++o2) {
                    std::array<int, 3> c{0, 0, 0};
                    int slot = 0;
                    for (int k = 0; k < 3; ++k)
                        if (k != axis) c[static_cast<std::size_t>(k)] = (slot++ == 0) ? o1 : o2;
                    run.clear();
                    for (int q = 0; q < n; ++q) {
                        c[static_cast<std::size_t>(axis)] = q;
                        const std::size_t p = grid_.v_flat(c[0], c[1], c[2]);
                        if (interior_[p]) run.push_back(xi * S.nv + p);
                    }
                    if (run.empty()) continue;
                    ll.resize(run.size());
                    uu.resize(run.size());
                    bb.resize(run.size());
                    for (std::size_t q = 0; q < run.size(); ++q) {
                        const Stencil& st = P.stencils[run[q]];
                        const Vec3 eta = drift_direction(vt_, run[q] % S.nv, d);
                        double lo = 0.0, hi = 0.0;
                        for (const Term& tm : st.terms) {
                            if (tm.axis != axis) continue;
                            const auto [cm, cp] = weights(tm, eta, st.fallback, hv);
                            lo += std::max(tm.sign > 0 ? cm : cp, 0.0);
                            hi += std::max(tm.sign > 0 ? cp : cm, 0.0);
                        }
                        if (st.fallback) {
                            const double b = local(P, run[q], d).drift[axis];
                            lo += std::max(-b, 0.0) / hv;
                            hi += std::max(b, 0.0) / hv;
                        }
                        ll[q] = dt * lo;
                        uu[q] = dt * hi;
                        bb[q] = u[run[q]];
                    }
                    tridiag_dirichlet(ll, uu, bb);
                    for (std::size_t q = 0; q < run.size(); ++q) u[run[q]] = bb[q];
                }
    }
    // eps Laplacian in x, periodic.
    if (cfg_.epsilon > 0.0) {
        const double c = dt * cfg_.epsilon / (hx * hx);
        std::vector<double> line(static_cast<std::size_t>(S.nx));
        for (int k = 0; k < S.x_dims; ++k)
            for (std::size_t xi = 0; xi < grid_.nx_total(); ++xi) {
                if ((xi / S.x[static_cast<std::size_t>(k)]) % static_cast<std::size_t>(S.nx) != 0) continue;
                for (std::size_t p = 0; p < S.nv; ++p) {
                    if (!interior_[p]) continue;
                    std::size_t xc = xi;
                    for (int q = 0; q < S.nx; ++q) {
                        line[static_cast<std::size_t>(q)] = u[xc * S.nv + p];
                        xc = x_neighbour(S, xc, k, +1);
                    }
                    tridiag_periodic(c, line);
                    xc = xi;
                    for (int q = 0; q < S.nx; ++q) {
                        u[xc * S.nv + p] = line[static_cast<std::size_t>(q)];
                        xc = x_neighbour(S, xc, k, +1);
                    }
                }
            }
    }
}

Field LinearizedOperator::step(const Field& G, double t, double dt) const {
    if (!(dt >= 0.0)) throw std::invalid_argument("step: dt must be >= 0");
    if (dt == 0.0) return G;
    const double bound = positivity_bound(t);
    if (dt > bound * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "step: dt = " << dt << " exceeds the stability bound " << bound;
        throw std::invalid_argument(os.str());
    }
    const bool imex = cfg_.scheme == Scheme::IMEX;
    const Field r = explicit_part(G, t, imex);
    Field out(grid_, t + dt);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = G.values[i] + dt * r.values[i];
    if (imex) implicit_solve(out, t, dt);
    apply_boundary(out);
    return out;
}

Field rhs_linearized(const Field& G, const Field& h, const SolverConfig& cfg, double t) {
    const LinearizedOperator op(G.grid, cfg, {h});
    return op.rhs(G, t);
}

Field step(const Field& G, const Field& h, const SolverConfig& cfg, double t, double dt) {
    const LinearizedOperator op(G.grid, cfg, {h});
    return op.step(G, t, dt);
}

double damping_term(const Field& G, const CoefficientField& cf, double d) {
    const auto& g = G.grid;
    const VelocityTable vt(g);
    const std::size_t nv = g.nv_total();
    const double cell = g.cell_volume_x() * g.cell_volume_v();
    double s = 0.0;
    for (std::size_t i = 0; i < G.values.size(); ++i) {
        const double tr = cf.abar.comp[0][i] + cf.abar.comp[3][i] + cf.abar.comp[5][i];
        s += tr / vt.bracket[i % nv] * G.values[i] * G.values[i];
    }
    return -d * s * cell;
}

GronwallFit fit_gronwall(const std::vector<double>& t, const std::vector<double>& y) {
    GronwallFit fit;
    if (t.size() != y.size() || t.empty()) throw std::invalid_argument("fit_gronwall: bad series");
    const double y0 = y.front();
    if (y0 == 0.0) {
        const bool all_zero = std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; });
        fit.holds = all_zero;
        if (!all_zero) fit.C_envelope = fit.C_fit = std::numeric_limits<double>::infinity();
        return fit;
    }
    double num = 0.0, den = 0.0;
    bool any = false;
    for (std::size_t k = 1; k < t.size(); ++k) {
        const double dtk = t[k] - t.front();
        if (dtk <= 0.0) continue;
        const double l = std::log((y[k] * y[k]) / (y0 * y0));
        const double c = l / dtk;
        fit.C_envelope = any ? std::max(fit.C_envelope, c) : c;
        any = true;
        num += dtk * l;
        den += dtk * dtk;
    }
    fit.C_fit = den > 0.0 ? num / den : 0.0;
    const double tT = t.back() - t.front();
    fit.holds = y.back() * y.back() <= y0 * y0 * std::exp(fit.C_fit * tT) * (1.0 + 1e-12);
    return fit;
}

Field prepare_initial(const Field& g_ini, const SolverConfig& cfg) {
    Field G = cfg.mollifier_epsilon > 0.0 ? mollify(g_ini, {cfg.mollifier_epsilon}) : g_ini;
    if (cfg.initial_cutoff) {
        const auto& g = G.grid;
        const VelocityTable vt(g);
        const std::size_t nv = g.nv_total();
        std::vector<double> c(nv);
        for (std::size_t p = 0; p < nv; ++p) c[p] = chi(cfg.R, {0.0, 0.0, 0.0, vt.v[p][0], vt.v[p][1], vt.v[p][2]});
        for (std::size_t i = 0; i < G.values.size(); ++i) G.values[i] *= c[i % nv];
    }
    return G;
}

SolveResult solve_linearized(const Field& g_ini, const std::vector<Field>& h_trajectory, const SolverConfig& cfg,
                             double T) {
    const GridSpec& g = g_ini.grid;
    cfg.validate(g);
    g_ini.require_finite("solve_linearized: g_ini");
    if (!(T >= 0.0)) throw std::invalid_argument("solve_linearized: T must be >= 0");
    if (T > cfg.weight.T0() * (1.0 + 1e-12))
        throw std::invalid_argument("solve_linearized: T exceeds T0 = d0/(2 kappa)");
    for (const auto& h : h_trajectory)
        for (double v : h.values)
            if (v < 0.0) throw std::invalid_argument("solve_linearized: h must be nonnegative");

    const LinearizedOperator op(g, cfg, h_trajectory);
    SolveResult res;

    Field G = prepare_initial(g_ini, cfg);
    G.time = 0.0;
    op.apply_boundary(G);

    int nsteps = 0;
    double dt = 0.0;
    if (T > 0.0) {
        const double stable = op.stable_dt(T);
        if (cfg.dt > 0.0) {
            if (cfg.dt > stable / cfg.cfl_safety * (1.0 + 1e-12)) {
                std::ostringstream os;
                os << "solve_linearized: dt = " << cfg.dt << " exceeds the stability bound " << stable / cfg.cfl_safety;
                throw SolverAbort(os.str());
            }
            nsteps = static_cast<int>(std::ceil(T / cfg.dt - 1e-9));
        } else {
            nsteps = static_cast<int>(std::ceil(T / stable - 1e-9));
        }
        nsteps = std::max(nsteps, 1);
        const int k = cfg.snapshot_every;
        nsteps = ((nsteps + k - 1) / k) * k;
        dt = T / nsteps;
    }
    res.stats.steps = nsteps;
    res.stats.dt = dt;

    const VelocityTable vt(g);
    const std::size_t nv = g.nv_total();
    auto monitor = [&](const Field& F, double t) {
        const double d = cfg.weight.d(t);
        double fmin = 0.0, fmax = 0.0;
        for (std::size_t i = 0; i < F.values.size(); ++i) {
            const double f = F.values[i] * std::exp(-d * vt.bracket[i % nv]);
            fmin = std::min(fmin, f);
            fmax = std::max(fmax, f);
        }
        const double ratio = fmax > 0.0 ? fmin / fmax : (fmin < 0.0 ? -1.0 : 0.0);
        res.stats.min_F_ratio = std::min(res.stats.min_F_ratio, ratio);
        if (ratio < -1e-12) res.stats.positivity_ok = false;
    };
    monitor(G, 0.0);
    res.trajectory.push_back(G);
    for (int s = 0; s < nsteps; ++s) {
        const double t = s * dt;
        G = op.step(G, t, dt);
        G.time = (s + 1) * dt;
        if (!G.all_finite()) throw SolverAbort("solve_linearized: non-finite values at step " + std::to_string(s + 1));
        monitor(G, G.time);
        if ((s + 1) % cfg.snapshot_every == 0) res.trajectory.push_back(G);
    }

    const auto ss = op.stencil_stats();
    res.stats.max_added_viscosity = ss.max_added_viscosity;
    res.stats.stencil_fallback_points = ss.fallback_points;
    res.stats.max_stencil_reach = ss.max_reach;

    const CutoffFamily fam{cfg.R, 10, 5};
    const WeightHierarchy hier = WeightHierarchy::main(cfg.params);
    res.energy = energy_report(res.trajectory, hier, cfg.max_derivative_order, &fam);

    if (cfg.compute_ledger) {
        const LedgerParams lp{hier, fam, cfg.max_derivative_order, cfg.epsilon, cfg.weight.kappa};
        std::vector<double> ts;
        std::vector<std::vector<std::vector<double>>> vals;
        for (std::size_t k = 0; k < res.trajectory.size(); ++k) {
            if (k % static_cast<std::size_t>(cfg.ledger_every) != 0 && k + 1 != res.trajectory.size()) continue;
            const Field& Gk = res.trajectory[k];
            ts.push_back(Gk.time);
            vals.push_back(ledger_integrands(Gk, op.coefficients_at(Gk.time), lp));
        }
        res.ledger = integrate_ledger(ts, vals, enumerate_indices(cfg.max_derivative_order, g.x_axis_mask()), lp);
    }

    // The cutoff-localised norm keeps derivative terms off the Dirichlet wall, whose gradient
    // layer scales like 1/h_v and would otherwise dominate the fit.
    res.gronwall = fit_gronwall(res.energy.times, res.energy.ball_y);
    if (res.gronwall.C_envelope > cfg.growth_cap) {
        std::ostringstream os;
        os << "solve_linearized: norm growth exponent " << res.gronwall.C_envelope << " exceeds the cap "
           << cfg.growth_cap;
        throw SolverAbort(os.str(), res.ledger);
    }
    return res;
}

}  // namespace landau
