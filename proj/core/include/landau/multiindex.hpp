#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace landau {

// Mixed derivative index: alpha acts on x, beta on v.
struct MultiIndex {
    std::array<int, 3> alpha{0, 0, 0};
    std::array<int, 3> beta{0, 0, 0};

    int abs_alpha() const { return alpha[0] + alpha[1] + alpha[2]; }
    int abs_beta() const { return beta[0] + beta[1] + beta[2]; }
    int order() const { return abs_alpha() + abs_beta(); }
    bool is_zero() const { return order() == 0; }

    MultiIndex operator+(const MultiIndex& o) const;
    // Componentwise difference; caller must check contains().
    MultiIndex operator-(const MultiIndex& o) const;
    // True when o <= *this componentwise.
    bool contains(const MultiIndex& o) const;
    bool valid() const;

    static MultiIndex x(int axis, int k = 1);
    static MultiIndex v(int axis, int k = 1);

    std::string label() const;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);
};

// All indices with |alpha|+|beta| <= max_order, ordered by total order then
// lexicographically on (alpha, beta) descending.
std::vector<MultiIndex> enumerate_indices(int max_order);

// Same, restricted to x-axes whose bit is set in x_axis_mask (bit k = axis k).
std::vector<MultiIndex> enumerate_indices(int max_order, unsigned x_axis_mask);

// Number of 3-component nonnegative tuples with sum n.
long long tuples_with_sum(int n);

}  // namespace landau
