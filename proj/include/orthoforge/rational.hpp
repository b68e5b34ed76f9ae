#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orthoforge {

/// Exact arbitrary-precision rational. Always kept in canonical form.
using Rational = mpq_class;
/// Arbitrary-precision integer, used by the fraction-free eliminations.
using Integer = mpz_class;

/// "num/den", or just "num" when the denominator is one.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Inverse of to_string. Accepts "a", "-a" and "a/b" with b != 0.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational");
    std::size_t digits = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') { ++digits; continue; }
        if (c == '-' && i == 0) continue;
        if (c == '/' && digits > 0) { digits = 0; continue; }
        throw std::invalid_argument("malformed rational: " + s);
    }
    if (digits == 0) throw std::invalid_argument("malformed rational: " + s);
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
        throw std::invalid_argument("malformed rational: " + s);
    }
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace orthoforge
