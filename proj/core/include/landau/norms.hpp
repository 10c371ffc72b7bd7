#pragma once

#include <optional>
#include <vector>

#include "landau/cutoffs.hpp"
#include "landau/grid.hpp"
#include "landau/multiindex.hpp"
#include "landau/weights.hpp"

namespace landau {

struct CutoffLevel {
    const CutoffFamily* family = nullptr;
    int level = 0;
};

// psi_level sampled on the velocity grid (levels below zero map to psi_0 = 1).
std::vector<double> psi_table(const GridSpec& g, const CutoffFamily& fam, int level);

// sqrt( sum cell * (<v>^exponent * df * psi)^2 ); psi may be null.
double weighted_l2(const Field& df, double exponent, const std::vector<double>* psi = nullptr);

// || <v>^(w_{a,b} + extra) d^a_x d^b_v f psi ||_{L2_x L2_v}
double weighted_norm(const Field& f, const MultiIndex& m, double extra_weight, const WeightHierarchy& h,
                     std::optional<CutoffLevel> cutoff = std::nullopt);

// Y^m_{x,v}: square root of the sum over |a|+|b| <= m of the squared weighted norms.
double y_norm(const Field& f, const WeightHierarchy& h, int max_order);

// ||G||_{Y^{m,s}_{l,Omega_R}} with psi_{i-l} on the order-i indices.
double ball_norm(const Field& G, const WeightHierarchy& h, const CutoffFamily& fam, int m, double s, int l);

struct IndexSeries {
    MultiIndex index;
    double weight = 0.0;
    std::vector<double> y;     // ||<v>^w dG||
    std::vector<double> x;     // ||<v>^(w+1/2) dG||
    std::vector<double> ball;  // ||<v>^w dG psi_{|a|+|b|}||, empty without a cutoff family
};

struct EnergyReport {
    int max_order = 0;
    std::vector<double> times;
    std::vector<IndexSeries> indices;
    std::vector<double> y_total;     // Y^m_{x,v}(t)
    std::vector<double> x_total;     // (sum_idx X_idx^2)^{1/2}(t)
    std::vector<double> ball_y;      // Y^{m,0}_{0,Omega_R}(t)
    std::vector<double> ball_x;      // Y^{m,1}_{0,Omega_R}(t)
    double Y_T = 0.0;                // (sum_idx sup_t Y_idx^2)^{1/2}
    double X_T = 0.0;                // (int sum_idx X_idx^2 dt)^{1/2}
    double E_T = 0.0;                // (Y_T^2 + X_T^2)^{1/2}
    double ball_energy = 0.0;        // E^m_{T,Omega_R}: (sup_t Y^{m,0}_0^2 + int Y^{m,1}_0^2)^{1/2}
    bool has_ball = false;
};

double trapezoid(const std::vector<double>& t, const std::vector<double>& y);

EnergyReport energy_report(const std::vector<Field>& trajectory, const WeightHierarchy& h, int max_order,
                           const CutoffFamily* cutoff = nullptr);

}  // namespace landau
