#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bithresh {

// States are bit-packed, one bit per vertex. Vertex 0 sits at the least
// significant bit, so the printed string "b1b2...bn" reads left to right
// starting from vertex 0 (labeled 1 in serialized output).
using StateCode = std::uint64_t;

inline int state_bit(StateCode x, int v) {
    return static_cast<int>((x >> v) & 1u);
}

inline StateCode with_bit(StateCode x, int v, int bit) {
    StateCode mask = StateCode{1} << v;
    return bit ? (x | mask) : (x & ~mask);
}

inline std::string state_to_string(StateCode x, int n) {
    if (n < 0 || n > 64) {
        throw std::invalid_argument("state_to_string: n must be in [0, 64]");
    }
    std::string s(static_cast<size_t>(n), '0');
    for (int v = 0; v < n; ++v) {
        if (state_bit(x, v)) s[static_cast<size_t>(v)] = '1';
    }
    return s;
}

inline StateCode state_from_string(std::string_view s) {
    if (s.empty() || s.size() > 64) {
        throw std::invalid_argument("state_from_string: length must be in [1, 64]");
    }
    StateCode x = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            x |= StateCode{1} << i;
        } else if (s[i] != '0') {
            throw std::invalid_argument("state_from_string: expected only '0'/'1', got '" +
                                        std::string(1, s[i]) + "'");
        }
    }
    return x;
}

} // namespace bithresh
