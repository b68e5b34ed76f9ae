#pragma once

// Canonical lattice families used as the test corpus.
//
//   chain k    0 < c1 < ... < c(k-2) < 1        (k = 1: "0"; k = 2: "0" < "1")
//   boolean k  subsets of {0..k-1}; label bit i is '1' iff i is in the set
//   m k        0 < a1..ak < 1                   (k atoms, length two)
//   mo k       0 < a1..ak, b1..bk < 1           (2k atoms, length two)
//   n5         0 < a < b < 1, 0 < c < 1
//   hexagon    0 < a < b < 1, 0 < c < d < 1

#include "orthoforge/lattice.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace orthoforge {

inline constexpr std::size_t kMaxChain = 64;
inline constexpr std::size_t kMaxBoolean = 6;
inline constexpr std::size_t kMaxAtoms = 32;
inline constexpr std::size_t kMaxMo = 16;

/// `k` is ignored for the fixed-size families n5 and hexagon.
inline PosetSpec generate(std::string_view family, std::size_t k = 0) {
    auto require = [&](std::size_t lo, std::size_t hi) {
        if (k < lo || k > hi) {
            throw std::invalid_argument(std::string(family) + " size must be in [" +
                                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
    };
    PosetSpec spec;
    auto link = [&](const std::string& lo, const std::string& hi) { spec.covers.emplace_back(lo, hi); };

    if (family == "chain") {
        require(1, kMaxChain);
        spec.elements.push_back("0");
        for (std::size_t i = 1; i + 1 < k; ++i) spec.elements.push_back("c" + std::to_string(i));
        if (k > 1) spec.elements.push_back("1");
        for (std::size_t i = 0; i + 1 < spec.elements.size(); ++i) link(spec.elements[i], spec.elements[i + 1]);
    } else if (family == "boolean") {
        require(1, kMaxBoolean);
        const std::size_t n = std::size_t{1} << k;
        auto name = [&](std::size_t set) {
            std::string s(k, '0');
            for (std::size_t i = 0; i < k; ++i)
                if (set >> i & 1) s[i] = '1';
            return s;
        };
        for (std::size_t s = 0; s < n; ++s) spec.elements.push_back(name(s));
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t i = 0; i < k; ++i)
                if (!(s >> i & 1)) link(name(s), name(s | std::size_t{1} << i));
    } else if (family == "m" || family == "mo") {
        const bool paired = family == "mo";
        require(1, paired ? kMaxMo : kMaxAtoms);
        spec.elements.push_back("0");
        for (std::size_t i = 1; i <= k; ++i) spec.elements.push_back("a" + std::to_string(i));
        if (paired)
            for (std::size_t i = 1; i <= k; ++i) spec.elements.push_back("b" + std::to_string(i));
        spec.elements.push_back("1");
        for (std::size_t i = 1; i + 1 < spec.elements.size(); ++i) link("0", spec.elements[i]);
        for (std::size_t i = 1; i + 1 < spec.elements.size(); ++i) link(spec.elements[i], "1");
    } else if (family == "n5") {
        spec.elements = {"0", "a", "b", "c", "1"};
        link("0", "a");
        link("a", "b");
        link("b", "1");
        link("0", "c");
        link("c", "1");
    } else if (family == "hexagon") {
        spec.elements = {"0", "a", "b", "c", "d", "1"};
        link("0", "a");
        link("a", "b");
        link("b", "1");
        link("0", "c");
        link("c", "d");
        link("d", "1");
    } else {
        throw std::invalid_argument("unknown family: " + std::string(family));
    }
    return normalize_poset(std::move(spec));
}

}  // namespace orthoforge
