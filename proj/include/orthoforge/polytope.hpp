#pragma once

// The polytope of precomplements of a finite lattice, written out as an
// explicit exact system over n^2 variables x_pq (row-major, p and q in
// linear-extension order):
//
//   symmetry      x_pq - x_qp = 0                              p < q
//   row sum       sum_q x_pq = 1                               every p
//   commutation   sum_{r<=q} x_pr - sum_{r<=p} x_rq = 0        every (p, q)
//   trace         sum_{p,q} cl(p,q) x_pq = n
//   x >= 0
//
// where cl(p,q) and cu(p,q) count common lower and upper bounds.

#include "orthoforge/error.hpp"
#include "orthoforge/incidence.hpp"
#include "orthoforge/lattice.hpp"
#include "orthoforge/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orthoforge {

enum class ConstraintFamily { Symmetry, RowSum, Commutation, Trace, Nonnegativity };

inline const char* to_string(ConstraintFamily f) {
    switch (f) {
        case ConstraintFamily::Symmetry: return "symmetry";
        case ConstraintFamily::RowSum: return "row_sum";
        case ConstraintFamily::Commutation: return "commutation";
        case ConstraintFamily::Trace: return "trace";
        case ConstraintFamily::Nonnegativity: return "nonnegativity";
    }
    return "?";
}

struct IntegerTerm {
    std::size_t var;
    Integer coef;
};

struct Equality {
    ConstraintFamily family;
    std::vector<IntegerTerm> terms;  ///< sorted by variable, no zero coefficients
    Integer rhs;
    /// The (p, q) the row was generated for; q == p for row sums.
    std::size_t p = 0, q = 0;
};

struct ConstraintSystem {
    std::size_t n = 0;
    std::size_t num_vars = 0;
    std::vector<Equality> equalities;
    std::vector<Integer> common_lower;  ///< cl(p,q), indexed like the variables
    std::vector<Integer> common_upper;  ///< cu(p,q)

    std::size_t var(std::size_t p, std::size_t q) const { return p * n + q; }
};

/// Counts common lower (or upper) bounds directly over the order relation.
inline std::vector<Integer> common_bound_counts(const Poset& P, bool upper) {
    const std::size_t n = P.size();
    std::vector<Integer> out(n * n);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            long count = 0;
            for (std::size_t r = 0; r < n; ++r) {
                bool bound = upper ? P.leq(p, r) && P.leq(q, r) : P.leq(r, p) && P.leq(r, q);
                count += bound;
            }
            out[p * n + q] = count;
        }
    }
    return out;
}

inline ConstraintSystem build_polytope(const Poset& P) {
    const std::size_t n = P.size();
    ConstraintSystem S;
    S.n = n;
    S.num_vars = n * n;
    S.common_lower = common_bound_counts(P, false);
    S.common_upper = common_bound_counts(P, true);

    auto add = [&](ConstraintFamily family, std::size_t p, std::size_t q, const std::map<std::size_t, Integer>& coefs,
                   Integer rhs) {
        Equality e{family, {}, std::move(rhs), p, q};
        for (const auto& [v, c] : coefs)
            if (sgn(c) != 0) e.terms.push_back({v, c});
        S.equalities.push_back(std::move(e));
    };

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            add(ConstraintFamily::Symmetry, p, q, {{S.var(p, q), Integer(1)}, {S.var(q, p), Integer(-1)}}, 0);
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        std::map<std::size_t, Integer> row;
        for (std::size_t q = 0; q < n; ++q) row[S.var(p, q)] = 1;
        add(ConstraintFamily::RowSum, p, p, row, 1);
    }
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            std::map<std::size_t, Integer> row;
            for (std::size_t r = 0; r < n; ++r) {
                if (P.leq(r, q)) row[S.var(p, r)] += 1;
                if (P.leq(r, p)) row[S.var(r, q)] -= 1;
            }
            add(ConstraintFamily::Commutation, p, q, row, 0);
        }
    }
    std::map<std::size_t, Integer> trace;
    for (std::size_t v = 0; v < S.num_vars; ++v) trace[v] = S.common_lower[v];
    add(ConstraintFamily::Trace, 0, 0, trace, static_cast<long>(n));
    return S;
}

inline ConstraintSystem build_polytope(const Lattice& L) { return build_polytope(L.order()); }

enum class PointOrigin { LiftedPermutation, LPSolution, ConvexCombination, Other };

/// A candidate matrix alpha flattened row-major: coords[p*n + q] = alpha(p, q).
struct RationalPoint {
    std::vector<Rational> coords;
    PointOrigin origin = PointOrigin::Other;
};

/// The lift of sigma as a point: x_pq = 1 iff q = sigma(p). For an
/// involution this is the lifted matrix itself (which is symmetric).
inline RationalPoint point_from_permutation(std::span<const std::size_t> sigma) {
    const std::size_t n = sigma.size();
    if (!is_bijection(sigma)) throw std::invalid_argument("not a bijection");
    RationalPoint x{std::vector<Rational>(n * n), PointOrigin::LiftedPermutation};
    for (std::size_t p = 0; p < n; ++p) x.coords[p * n + sigma[p]] = 1;
    return x;
}

inline RationalPoint midpoint(const RationalPoint& a, const RationalPoint& b) {
    if (a.coords.size() != b.coords.size()) throw std::invalid_argument("dimension mismatch");
    RationalPoint m{std::vector<Rational>(a.coords.size()), PointOrigin::ConvexCombination};
    for (std::size_t i = 0; i < a.coords.size(); ++i) m.coords[i] = (a.coords[i] + b.coords[i]) / 2;
    return m;
}

struct FamilyStatus {
    ConstraintFamily family;
    bool satisfied = true;
};

struct MembershipReport {
    bool member = true;
    std::vector<FamilyStatus> families;
    /// First violated row: an index into equalities, or the variable index
    /// for a nonnegativity violation.
    std::optional<ConstraintFamily> witness_family;
    std::optional<std::size_t> witness_index;
};

inline Rational evaluate(const Equality& e, const RationalPoint& x) {
    Rational sum = 0;
    for (const auto& t : e.terms) sum += Rational(t.coef) * x.coords[t.var];
    return sum;
}

inline MembershipReport membership(const ConstraintSystem& S, const RationalPoint& x) {
    if (x.coords.size() != S.num_vars) throw std::invalid_argument("dimension mismatch");
    MembershipReport report;
    for (auto f : {ConstraintFamily::Symmetry, ConstraintFamily::RowSum, ConstraintFamily::Commutation,
                   ConstraintFamily::Trace, ConstraintFamily::Nonnegativity}) {
        report.families.push_back({f, true});
    }
    auto fail = [&](ConstraintFamily f, std::size_t index) {
        report.member = false;
        report.families[static_cast<std::size_t>(f)].satisfied = false;
        if (!report.witness_family) {
            report.witness_family = f;
            report.witness_index = index;
        }
    };
    for (std::size_t i = 0; i < S.equalities.size(); ++i) {
        const auto& e = S.equalities[i];
        if (evaluate(e, x) != Rational(e.rhs)) fail(e.family, i);
    }
    for (std::size_t v = 0; v < S.num_vars; ++v)
        if (sgn(x.coords[v]) < 0) fail(ConstraintFamily::Nonnegativity, v);
    return report;
}

/// For a member of S: the permutation sigma(p) = q for x_pq = 1 when every
/// coordinate is 0 or 1, nullopt otherwise.
inline std::optional<Permutation> integer_permutation(const ConstraintSystem& S, const RationalPoint& x) {
    if (x.coords.size() != S.num_vars) throw std::invalid_argument("dimension mismatch");
    for (const auto& c : x.coords)
        if (c != 0 && c != 1) return std::nullopt;
    const std::size_t n = S.n;
    Permutation sigma(n, n);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (x.coords[S.var(p, q)] != 1) continue;
            if (sigma[p] != n) throw InternalError("integral member has two ones in a row");
            sigma[p] = q;
        }
        if (sigma[p] == n) throw InternalError("integral member has an empty row");
    }
    if (!is_bijection(sigma)) throw InternalError("integral member is not a permutation matrix");
    for (std::size_t p = 0; p < n; ++p)
        if (sigma[sigma[p]] != p) throw InternalError("integral member is not an involution");
    return sigma;
}

inline bool is_integer_point(const ConstraintSystem& S, const RationalPoint& x) {
    return integer_permutation(S, x).has_value();
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
inline std::size_t integer_rank(std::vector<std::vector<Integer>> a) {
    const std::size_t rows = a.size();
    if (rows == 0) return 0;
    const std::size_t cols = a.front().size();
    std::size_t rank = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && sgn(a[pivot][c]) == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = (a[rank][c] * a[i][j] - a[i][c] * a[rank][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

/// A member is a vertex iff the equality rows restricted to its support
/// columns have full column rank: no nonzero direction keeps every equality
/// and every zero coordinate.
inline bool is_vertex(const ConstraintSystem& S, const RationalPoint& x) {
    if (x.coords.size() != S.num_vars) throw std::invalid_argument("dimension mismatch");
    std::vector<std::size_t> column(S.num_vars, S.num_vars);
    std::size_t support = 0;
    for (std::size_t v = 0; v < S.num_vars; ++v)
        if (sgn(x.coords[v]) != 0) column[v] = support++;
    if (support == 0) return true;
    std::vector<std::vector<Integer>> a;
    for (const auto& e : S.equalities) {
        std::vector<Integer> row(support);
        bool any = false;
        for (const auto& t : e.terms) {
            if (column[t.var] == S.num_vars) continue;
            row[column[t.var]] = t.coef;
            any = true;
        }
        if (any) a.push_back(std::move(row));
    }
    return integer_rank(std::move(a)) == support;
}

}  // namespace orthoforge
