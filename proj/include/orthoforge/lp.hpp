#pragma once

// Exact rational linear programming:
//
//     minimize  c.x   subject to  A x = b,  x >= 0
//
// Two-phase dense tableau simplex with Bland's rule. Before the tableau is
// built, a presolve pass substitutes frozen variables, fixes variables forced
// by singleton rows or by same-sign rows with zero right-hand side, and drops
// empty rows. Every Optimal result carries a dual vector y with
// A^T y <= c on all non-frozen columns and b.y equal to the optimum.

#include "orthoforge/error.hpp"
#include "orthoforge/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orthoforge {

struct LinearTerm {
    std::size_t var;
    Rational coef;
};

struct LinearRow {
    std::vector<LinearTerm> terms;
    Rational rhs;
};

struct LPProblem {
    std::size_t num_vars = 0;
    std::vector<Rational> costs;
    std::vector<LinearRow> rows;
};

/// Variable index -> value, substituted out before solving.
using FrozenAssignment = std::map<std::size_t, Rational>;

enum class LPStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LPStatus s) {
    switch (s) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
    }
    return "?";
}

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    std::vector<Rational> point;  ///< all num_vars coordinates, frozen ones included
    Rational value;
    std::vector<Rational> dual;  ///< one entry per row of the problem
    /// Basic structural variables of the final tableau, in row order.
    std::vector<std::size_t> basis;
    std::uint64_t pivot_count = 0;
};

struct SolveOptions {
    std::uint64_t pivot_cap = 1'000'000;
};

namespace detail {

class Tableau {
public:
    // rows: m x cols, scaled so rhs >= 0, with an artificial identity block
    // appended after the `structural` columns.
    Tableau(std::size_t structural, std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs,
            const std::vector<Rational>& costs, std::uint64_t cap)
        : m_(rows.size()), ns_(structural), cols_(structural + rows.size()), cap_(cap) {
        t_.resize(m_ * cols_);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < ns_; ++j) at(i, j) = std::move(rows[i][j]);
            at(i, ns_ + i) = 1;
        }
        rhs_ = std::move(rhs);
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) basis_[i] = ns_ + i;
        d1_.assign(cols_, Rational(0));
        d2_.assign(cols_, Rational(0));
        for (std::size_t j = 0; j < ns_; ++j) {
            d2_[j] = costs[j];
            for (std::size_t i = 0; i < m_; ++i) d1_[j] -= at(i, j);
        }
        z1_ = 0;
        for (const auto& b : rhs_) z1_ += b;
    }

    LPStatus run() {
        iterate(d1_, cols_);
        if (sgn(z1_) != 0) return LPStatus::Infeasible;
        // Degenerate pivots move zero-level artificials out where possible;
        // rows where that fails are redundant and keep their artificial.
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < ns_) continue;
            for (std::size_t j = 0; j < ns_; ++j) {
                if (sgn(at(i, j)) != 0) {
                    pivot(i, j);
                    break;
                }
            }
        }
        return iterate(d2_, ns_) ? LPStatus::Optimal : LPStatus::Unbounded;
    }

    std::uint64_t pivots() const { return pivots_; }
    const std::vector<std::size_t>& basis() const { return basis_; }
    const std::vector<Rational>& rhs() const { return rhs_; }
    /// Phase-two reduced cost of the artificial column of row i, i.e. -y_i
    /// for the scaled system.
    const Rational& artificial_reduced_cost(std::size_t i) const { return d2_[ns_ + i]; }

private:
    Rational& at(std::size_t i, std::size_t j) { return t_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return t_[i * cols_ + j]; }

    // Returns false on unboundedness. Only columns below `limit` may enter.
    bool iterate(const std::vector<Rational>& d, std::size_t limit) {
        for (;;) {
            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j) {
                if (sgn(d[j]) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == limit) return true;
            std::size_t leave = m_;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (sgn(at(i, enter)) <= 0) continue;
                Rational ratio = rhs_[i] / at(i, enter);
                if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        if (++pivots_ > cap_) throw PivotLimitError(pivots_ - 1);
        const Rational inv = 1 / at(r, c);
        nz_.clear();
        for (std::size_t j = 0; j < cols_; ++j) {
            if (sgn(at(r, j)) != 0) {
                at(r, j) *= inv;
                nz_.push_back(j);
            }
        }
        rhs_[r] *= inv;
        Rational f;
        auto eliminate = [&](auto&& entry, Rational& rhs) {
            f = entry(c);
            if (sgn(f) == 0) return;
            for (std::size_t j : nz_) entry(j) -= f * at(r, j);
            rhs -= f * rhs_[r];
        };
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            eliminate([&](std::size_t j) -> Rational& { return at(i, j); }, rhs_[i]);
        }
        // Objective rows hold reduced costs; their "rhs" is minus the value.
        Rational neg_z1 = -z1_;
        eliminate([&](std::size_t j) -> Rational& { return d1_[j]; }, neg_z1);
        z1_ = -neg_z1;
        Rational neg_z2 = -z2_;
        eliminate([&](std::size_t j) -> Rational& { return d2_[j]; }, neg_z2);
        z2_ = -neg_z2;
        basis_[r] = c;
    }

    std::size_t m_, ns_, cols_;
    std::uint64_t cap_;
    std::uint64_t pivots_ = 0;
    std::vector<Rational> t_;
    std::vector<Rational> rhs_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> d1_, d2_;
    Rational z1_, z2_;
    std::vector<std::size_t> nz_;
};

}  // namespace detail

inline void validate(const LPProblem& P) {
    if (P.costs.size() != P.num_vars) throw std::invalid_argument("cost vector has wrong length");
    for (const auto& row : P.rows)
        for (const auto& t : row.terms)
            if (t.var >= P.num_vars) throw std::invalid_argument("row references unknown variable");
}

/// Solves P with the frozen variables substituted out. A frozen value that
/// conflicts with the equalities yields Infeasible.
inline LPSolution solve_with_frozen(const LPProblem& P, const FrozenAssignment& frozen,
                                    const SolveOptions& options = {}) {
    validate(P);
    const std::size_t nv = P.num_vars;
    const std::size_t nr = P.rows.size();
    LPSolution out;

    std::vector<std::optional<Rational>> fixed(nv);
    for (const auto& [v, value] : frozen) {
        if (v >= nv) throw std::invalid_argument("frozen variable out of range");
        if (sgn(value) < 0) throw std::invalid_argument("frozen value must be nonnegative");
        fixed[v] = value;
    }

    // Merge duplicate variables within each row.
    std::vector<std::vector<LinearTerm>> rows(nr);
    std::vector<Rational> rhs(nr);
    std::vector<std::vector<std::size_t>> col_rows(nv);
    for (std::size_t i = 0; i < nr; ++i) {
        std::map<std::size_t, Rational> merged;
        for (const auto& t : P.rows[i].terms) merged[t.var] += t.coef;
        for (auto& [v, c] : merged) {
            if (sgn(c) == 0) continue;
            rows[i].push_back({v, c});
            col_rows[v].push_back(i);
        }
        rhs[i] = P.rows[i].rhs;
    }

    // Presolve bookkeeping. `live` terms are those on unfixed variables.
    enum class Op { None, Empty, Singleton, Forcing };
    std::vector<Op> op(nr, Op::None);
    std::vector<std::vector<std::size_t>> fixed_by(nr);
    std::vector<std::size_t> order;  // rows in the order they were eliminated
    std::vector<Rational> live_rhs = rhs;
    std::vector<std::size_t> live_count(nr, 0);
    for (std::size_t i = 0; i < nr; ++i) {
        for (const auto& t : rows[i]) {
            if (fixed[t.var]) live_rhs[i] -= t.coef * *fixed[t.var];
            else ++live_count[i];
        }
    }

    auto infeasible = [&] {
        out.status = LPStatus::Infeasible;
        return out;
    };

    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < nr; ++i) queue.push_back(i);
    auto fix = [&](std::size_t v, const Rational& value) {
        fixed[v] = value;
        for (std::size_t k : col_rows[v]) {
            if (op[k] != Op::None) continue;
            for (const auto& t : rows[k])
                if (t.var == v) live_rhs[k] -= t.coef * value;
            --live_count[k];
            queue.push_back(k);
        }
    };
    while (!queue.empty()) {
        std::size_t i = queue.back();
        queue.pop_back();
        if (op[i] != Op::None) continue;
        if (live_count[i] == 0) {
            if (sgn(live_rhs[i]) != 0) return infeasible();
            op[i] = Op::Empty;
            order.push_back(i);
            continue;
        }
        int sign = 0;
        bool mixed = false;
        const LinearTerm* single = nullptr;
        for (const auto& t : rows[i]) {
            if (fixed[t.var]) continue;
            single = &t;
            int s = sgn(t.coef);
            if (sign == 0) sign = s;
            else if (s != sign) mixed = true;
        }
        if (live_count[i] == 1) {
            Rational value = live_rhs[i] / single->coef;
            if (sgn(value) < 0) return infeasible();
            op[i] = Op::Singleton;
            order.push_back(i);
            fixed_by[i].push_back(single->var);
            fix(single->var, value);
            continue;
        }
        if (mixed) continue;
        int rs = sgn(live_rhs[i]);
        if (rs != 0 && rs != sign) return infeasible();
        if (rs == 0) {
            op[i] = Op::Forcing;
            order.push_back(i);
            std::vector<std::size_t> vars;
            for (const auto& t : rows[i])
                if (!fixed[t.var]) vars.push_back(t.var);
            fixed_by[i] = vars;
            for (std::size_t v : vars) fix(v, Rational(0));
        }
    }

    // Reduced problem over the surviving rows and unfixed columns.
    std::vector<std::size_t> lp_rows;
    for (std::size_t i = 0; i < nr; ++i)
        if (op[i] == Op::None) lp_rows.push_back(i);
    std::vector<std::size_t> lp_cols;
    std::vector<std::size_t> col_pos(nv, nv);
    for (std::size_t v = 0; v < nv; ++v) {
        if (fixed[v]) continue;
        bool used = false;
        for (std::size_t k : col_rows[v]) used = used || op[k] == Op::None;
        if (used) {
            col_pos[v] = lp_cols.size();
            lp_cols.push_back(v);
        } else if (sgn(P.costs[v]) < 0) {
            out.status = LPStatus::Unbounded;
            return out;
        } else {
            fixed[v] = Rational(0);
        }
    }

    std::vector<Rational> y(nr, Rational(0));
    std::vector<Rational> point(nv);
    if (!lp_rows.empty()) {
        std::vector<std::vector<Rational>> dense(lp_rows.size(), std::vector<Rational>(lp_cols.size()));
        std::vector<Rational> b(lp_rows.size());
        std::vector<int> scale(lp_rows.size(), 1);
        for (std::size_t r = 0; r < lp_rows.size(); ++r) {
            std::size_t i = lp_rows[r];
            scale[r] = sgn(live_rhs[i]) < 0 ? -1 : 1;
            for (const auto& t : rows[i])
                if (!fixed[t.var]) dense[r][col_pos[t.var]] = scale[r] * t.coef;
            b[r] = scale[r] * live_rhs[i];
        }
        std::vector<Rational> c(lp_cols.size());
        for (std::size_t j = 0; j < lp_cols.size(); ++j) c[j] = P.costs[lp_cols[j]];

        detail::Tableau tab(lp_cols.size(), std::move(dense), std::move(b), c, options.pivot_cap);
        LPStatus status = tab.run();
        out.pivot_count = tab.pivots();
        if (status != LPStatus::Optimal) {
            out.status = status;
            return out;
        }
        for (std::size_t r = 0; r < lp_rows.size(); ++r) {
            std::size_t bv = tab.basis()[r];
            if (bv < lp_cols.size()) {
                point[lp_cols[bv]] = tab.rhs()[r];
                out.basis.push_back(lp_cols[bv]);
            }
            y[lp_rows[r]] = -scale[r] * tab.artificial_reduced_cost(r);
        }
    }
    for (std::size_t v = 0; v < nv; ++v)
        if (fixed[v]) point[v] = *fixed[v];

    // Postsolve duals in reverse elimination order. Each eliminated row only
    // shares columns with rows eliminated after it or kept for the tableau.
    auto reduced_cost = [&](std::size_t v, std::size_t skip) {
        Rational r = P.costs[v];
        for (std::size_t k : col_rows[v]) {
            if (k == skip) continue;
            for (const auto& t : rows[k])
                if (t.var == v) r -= t.coef * y[k];
        }
        return r;
    };
    auto coef = [&](std::size_t i, std::size_t v) {
        for (const auto& t : rows[i])
            if (t.var == v) return t.coef;
        return Rational(0);
    };
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t i = *it;
        if (op[i] == Op::Singleton) {
            const std::size_t v = fixed_by[i].front();
            y[i] = reduced_cost(v, i) / coef(i, v);
        } else if (op[i] == Op::Forcing) {
            // Each fixed column needs a_iv * y_i <= its reduced cost without row i.
            Rational bound = 0;
            for (std::size_t v : fixed_by[i]) {
                Rational a = coef(i, v);
                Rational limit = reduced_cost(v, i) / a;
                if (sgn(a) > 0 ? limit < bound : limit > bound) bound = limit;
            }
            y[i] = bound;
        }
    }

    out.status = LPStatus::Optimal;
    out.point = std::move(point);
    out.dual = std::move(y);
    out.value = 0;
    for (std::size_t v = 0; v < nv; ++v) out.value += P.costs[v] * out.point[v];
    return out;
}

inline LPSolution solve(const LPProblem& P, const SolveOptions& options = {}) {
    return solve_with_frozen(P, {}, options);
}

/// Optimal point satisfies every row exactly, is nonnegative, honors the
/// frozen values, and value == c.x.
inline bool verify_primal(const LPProblem& P, const FrozenAssignment& frozen, const LPSolution& s) {
    if (s.status != LPStatus::Optimal || s.point.size() != P.num_vars) return false;
    for (const auto& x : s.point)
        if (sgn(x) < 0) return false;
    for (const auto& [v, value] : frozen)
        if (s.point.at(v) != value) return false;
    for (const auto& row : P.rows) {
        Rational lhs = 0;
        for (const auto& t : row.terms) lhs += t.coef * s.point[t.var];
        if (lhs != row.rhs) return false;
    }
    Rational value = 0;
    for (std::size_t v = 0; v < P.num_vars; ++v) value += P.costs[v] * s.point[v];
    return value == s.value;
}

/// Weak-duality certificate: c_j - A_j.y >= 0 on every non-frozen column and
/// b.y + sum over frozen j of (c_j - A_j.y) v_j equals the reported value,
/// so no feasible point can do better.
inline bool verify_dual(const LPProblem& P, const FrozenAssignment& frozen, const LPSolution& s) {
    if (s.status != LPStatus::Optimal || s.dual.size() != P.rows.size()) return false;
    std::vector<Rational> reduced = P.costs;
    Rational bound = 0;
    for (std::size_t i = 0; i < P.rows.size(); ++i) {
        for (const auto& t : P.rows[i].terms) reduced[t.var] -= t.coef * s.dual[i];
        bound += P.rows[i].rhs * s.dual[i];
    }
    for (std::size_t v = 0; v < P.num_vars; ++v) {
        auto it = frozen.find(v);
        if (it != frozen.end()) bound += reduced[v] * it->second;
        else if (sgn(reduced[v]) < 0) return false;
    }
    return bound == s.value;
}

}  // namespace orthoforge
