#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace orthoforge {

/// Malformed input document, unknown label, duplicate element, cyclic covers.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A valid poset that fails to be a lattice.
class NotALatticeError : public std::runtime_error {
public:
    enum class Kind { NoMeet, NoJoin, NoBottom, NoTop };

    NotALatticeError(Kind kind, std::string first, std::string second)
        : std::runtime_error(describe(kind, first, second)),
          kind_(kind),
          first_(std::move(first)),
          second_(std::move(second)) {}

    Kind kind() const { return kind_; }
    /// Witness pair; empty strings for NoBottom / NoTop.
    const std::string& first() const { return first_; }
    const std::string& second() const { return second_; }

private:
    static std::string describe(Kind kind, const std::string& a, const std::string& b) {
        switch (kind) {
            case Kind::NoMeet: return "(" + a + "," + b + ") has no meet";
            case Kind::NoJoin: return "(" + a + "," + b + ") has no join";
            case Kind::NoBottom: return "no bottom element";
            case Kind::NoTop: return "no top element";
        }
        return "not a lattice";
    }

    Kind kind_;
    std::string first_;
    std::string second_;
};

/// The simplex pivot cap was reached.
class PivotLimitError : public std::runtime_error {
public:
    explicit PivotLimitError(std::uint64_t pivots)
        : std::runtime_error("pivot cap reached after " + std::to_string(pivots) + " pivots"),
          pivots_(pivots) {}

    std::uint64_t pivots() const { return pivots_; }

private:
    std::uint64_t pivots_;
};

/// A broken internal invariant (bug trap).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace orthoforge
