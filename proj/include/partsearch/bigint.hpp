#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace partsearch {

// Exact signed integer arithmetic at any magnitude.  Element values and
// discrepancies never truncate; 2^b - 1 for b = 64 is as valid as 3.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

// Parses an optionally signed decimal literal.  Throws std::invalid_argument
// on empty or non-digit input instead of cpp_int's unhelpful runtime_error.
inline BigInt parse_decimal(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("empty integer literal");
    }
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) {
        throw std::invalid_argument("sign without digits: '" + std::string(text) + "'");
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
        }
    }
    return BigInt(std::string(text));
}

}  // namespace partsearch
