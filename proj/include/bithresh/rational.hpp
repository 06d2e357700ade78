#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bithresh {

// Exact rational scalar used for weighted systems. All threshold comparisons
// go through this type (or its integer fast path); no floating point anywhere.
using Rat = boost::rational<long long>;

inline bool is_integer(const Rat& r) {
    return r.denominator() == 1;
}

inline std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "p" or "p/q" with optional leading '-' on p; q must be positive.
inline Rat rat_from_string(std::string_view s) {
    auto parse_int = [](std::string_view t) -> long long {
        if (t.empty()) throw std::invalid_argument("rat_from_string: empty integer");
        size_t pos = 0;
        bool neg = false;
        if (t[0] == '-' || t[0] == '+') {
            neg = (t[0] == '-');
            pos = 1;
        }
        if (pos == t.size()) throw std::invalid_argument("rat_from_string: sign without digits");
        long long val = 0;
        for (; pos < t.size(); ++pos) {
            if (t[pos] < '0' || t[pos] > '9') {
                throw std::invalid_argument("rat_from_string: bad digit in '" + std::string(t) + "'");
            }
            val = val * 10 + (t[pos] - '0');
        }
        return neg ? -val : val;
    };
    size_t slash = s.find('/');
    if (slash == std::string_view::npos) {
        return Rat(parse_int(s));
    }
    long long num = parse_int(s.substr(0, slash));
    long long den = parse_int(s.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("rat_from_string: denominator must be positive");
    return Rat(num, den);
}

} // namespace bithresh
