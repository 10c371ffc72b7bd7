#include "landau/multiindex.hpp"

#include <algorithm>
#include <stdexcept>

namespace landau {

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
    MultiIndex r;
    for (int k = 0; k < 3; ++k) {
        r.alpha[k] = alpha[k] + o.alpha[k];
        r.beta[k] = beta[k] + o.beta[k];
    }
    return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
    MultiIndex r;
    for (int k = 0; k < 3; ++k) {
        r.alpha[k] = alpha[k] - o.alpha[k];
        r.beta[k] = beta[k] - o.beta[k];
    }
    return r;
}

bool MultiIndex::contains(const MultiIndex& o) const {
    for (int k = 0; k < 3; ++k) {
        if (o.alpha[k] > alpha[k] || o.beta[k] > beta[k]) return false;
    }
    return true;
}

bool MultiIndex::valid() const {
    for (int k = 0; k < 3; ++k) {
        if (alpha[k] < 0 || beta[k] < 0) return false;
    }
    return true;
}

MultiIndex MultiIndex::x(int axis, int k) {
    MultiIndex m;
    m.alpha.at(static_cast<std::size_t>(axis)) = k;
    return m;
}

MultiIndex MultiIndex::v(int axis, int k) {
    MultiIndex m;
    m.beta.at(static_cast<std::size_t>(axis)) = k;
    return m;
}

std::string MultiIndex::label() const {
    auto part = [](const std::array<int, 3>& t) {
        return std::to_string(t[0]) + "." + std::to_string(t[1]) + "." + std::to_string(t[2]);
    };
    return "a" + part(alpha) + "_b" + part(beta);
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.order() <=> b.order(); c != 0) return c;
    // Higher leading components first, so (1,0,0) precedes (0,1,0).
    if (auto c = b.alpha <=> a.alpha; c != 0) return c;
    return b.beta <=> a.beta;
}

namespace {

void tuples(int n, std::vector<std::array<int, 3>>& out) {
    for (int i = n; i >= 0; --i) {
        for (int j = n - i; j >= 0; --j) out.push_back({i, j, n - i - j});
    }
}

}  // namespace

std::vector<MultiIndex> enumerate_indices(int max_order, unsigned x_axis_mask) {
    if (max_order < 0) throw std::invalid_argument("enumerate_indices: max_order must be >= 0");
    std::vector<MultiIndex> out;
    for (int total = 0; total <= max_order; ++total) {
        for (int a = total; a >= 0; --a) {
            std::vector<std::array<int, 3>> as, bs;
            tuples(a, as);
            tuples(total - a, bs);
            for (const auto& al : as) {
                bool ok = true;
                for (int k = 0; k < 3; ++k) {
                    if (al[k] > 0 && !(x_axis_mask & (1u << k))) ok = false;
                }
                if (!ok) continue;
                for (const auto& be : bs) out.push_back(MultiIndex{al, be});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MultiIndex> enumerate_indices(int max_order) { return enumerate_indices(max_order, 0b111u); }

long long tuples_with_sum(int n) {
    if (n < 0) return 0;
    return static_cast<long long>(n + 1) * (n + 2) / 2;
}

}  // namespace landau
