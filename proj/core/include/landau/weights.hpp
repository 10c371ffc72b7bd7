#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "landau/multiindex.hpp"

namespace landau {

using Rational = boost::rational<std::int64_t>;

// Accepts "3", "-2", "0.125", "1/10", "1e-2".
Rational parse_rational(std::string_view text);
double to_double(const Rational& r);
std::string to_string(const Rational& r);

struct ModelParams {
    double gamma = 0.0;
    Rational eta{1, 10};

    static ModelParams make(double gamma, Rational eta = Rational(1, 10));

    bool hard_sphere_limit() const { return gamma == 1.0; }
    Rational delta() const { return hard_sphere_limit() ? eta : Rational(0); }
    double delta_value() const { return to_double(delta()); }
    void validate() const;
};

struct WeightHierarchy {
    ModelParams params;
    int base = 20;
    int max_order = 10;

    static WeightHierarchy main(const ModelParams& p) { return {p, 20, 10}; }
    static WeightHierarchy contraction(const ModelParams& p) { return {p, 10, 4}; }

    Rational x_cost() const { return Rational(3, 2) + params.delta(); }
    Rational v_cost() const { return Rational(1, 2) + params.delta(); }

    // Affine formula without the order check; the audit needs it for shifted indices.
    Rational affine(int abs_alpha, int abs_beta) const {
        return Rational(base) - x_cost() * abs_alpha - v_cost() * abs_beta;
    }
    Rational exact(const MultiIndex& m) const;
    double operator()(const MultiIndex& m) const { return to_double(exact(m)); }
};

double weight(const WeightHierarchy& h, const MultiIndex& m);

}  // namespace landau
