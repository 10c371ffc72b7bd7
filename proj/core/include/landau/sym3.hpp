#pragma once

#include <array>
#include <cstddef>

namespace landau {

// Packed symmetric 3x3 matrix, storage order xx, xy, xz, yy, yz, zz.
struct Sym3 {
    std::array<double, 6> c{};

    static constexpr int slot(int i, int j) {
        if (i > j) { int t = i; i = j; j = t; }
        return i == 0 ? j : (i == 1 ? 2 + j : 5);
    }
    double operator()(int i, int j) const { return c[static_cast<std::size_t>(slot(i, j))]; }
    double& operator()(int i, int j) { return c[static_cast<std::size_t>(slot(i, j))]; }
    double trace() const { return c[0] + c[3] + c[5]; }
    double quad(const std::array<double, 3>& x) const {
        double s = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s += (*this)(i, j) * x[i] * x[j];
        return s;
    }
    std::array<double, 3> apply(const std::array<double, 3>& x) const {
        std::array<double, 3> r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i] += (*this)(i, j) * x[j];
        return r;
    }
};

// (i, j) pairs in packed order.
inline constexpr std::array<std::array<int, 2>, 6> kSymPairs{{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

}  // namespace landau
