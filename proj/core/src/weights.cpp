#include "landau/weights.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace landau {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
    return v;
}

std::int64_t pow10(int k) {
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) r *= 10;
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto den = parse_int(s.substr(slash + 1), text);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(parse_int(s.substr(0, slash), text), den);
    }
    int exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        auto ex = s.substr(e + 1);
        if (!ex.empty() && ex.front() == '+') ex.remove_prefix(1);
        exponent = static_cast<int>(parse_int(ex, text));
        s = s.substr(0, e);
    }
    bool negative = !s.empty() && s.front() == '-';
    if (negative) s.remove_prefix(1);
    std::int64_t num = 0;
    int frac_digits = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto ip = s.substr(0, dot);
        auto fp = s.substr(dot + 1);
        frac_digits = static_cast<int>(fp.size());
        if (frac_digits > 15) throw std::invalid_argument("too many decimals in '" + std::string(text) + "'");
        std::int64_t i = ip.empty() ? 0 : parse_int(ip, text);
        std::int64_t f = fp.empty() ? 0 : parse_int(fp, text);
        num = i * pow10(frac_digits) + f;
    } else {
        num = parse_int(s, text);
    }
    exponent -= frac_digits;
    if (exponent < -15 || exponent > 15) throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
    Rational r = exponent >= 0 ? Rational(num * pow10(exponent)) : Rational(num, pow10(-exponent));
    return negative ? -r : r;
}

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

ModelParams ModelParams::make(double gamma, Rational eta) {
    ModelParams p{gamma, eta};
    p.validate();
    return p;
}

void ModelParams::validate() const {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0,1]");
    if (eta <= Rational(0)) throw std::invalid_argument("eta must be > 0");
}

Rational WeightHierarchy::exact(const MultiIndex& m) const {
    if (!m.valid()) throw std::invalid_argument("weight: negative multi-index component");
    if (m.order() > max_order)
        throw std::out_of_range("weight: order " + std::to_string(m.order()) + " exceeds hierarchy max " +
                                std::to_string(max_order));
    return affine(m.abs_alpha(), m.abs_beta());
}

double weight(const WeightHierarchy& h, const MultiIndex& m) { return h(m); }

}  // namespace landau
