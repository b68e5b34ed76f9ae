#pragma once

// Finding every orthocomplementation of a finite lattice, two ways:
//
//  * brute_force_orthos: backtracking over involutive pairings, pruned by
//    disjointness and order reversal. Uses nothing but the lattice tables.
//  * lp_orthos: minimize a trace objective over the precomplement rows
//    (row sums, symmetry, commutation; x >= 0), then branch and bound on
//    x_pq = 0 / 1 until every integral optimum of value n is collected.

#include "orthoforge/error.hpp"
#include "orthoforge/incidence.hpp"
#include "orthoforge/lattice.hpp"
#include "orthoforge/lp.hpp"
#include "orthoforge/polytope.hpp"
#include "orthoforge/rational.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace orthoforge {

struct Certificate {
    bool involution = false;
    bool order_reversing = false;
    bool disjoint = false;
    bool conjoint = false;
    Rational disjointness_trace;
    Rational conjointness_trace;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct Orthocomplementation {
    Permutation sigma;
    Certificate certificate;

    friend bool operator==(const Orthocomplementation&, const Orthocomplementation&) = default;
    friend bool operator<(const Orthocomplementation& a, const Orthocomplementation& b) { return a.sigma < b.sigma; }
};

enum class Condition { Involution, Disjoint, OrderReversing, Conjoint, Trace };

inline const char* to_string(Condition c) {
    switch (c) {
        case Condition::Involution: return "involution";
        case Condition::Disjoint: return "disjoint";
        case Condition::OrderReversing: return "order_reversing";
        case Condition::Conjoint: return "conjoint";
        case Condition::Trace: return "trace";
    }
    return "?";
}

struct Violation {
    Condition condition;
    std::size_t first;
    std::size_t second;
};

struct Verification {
    Certificate certificate;
    /// First failed condition, checked in the order involution, disjoint,
    /// order reversing, conjoint, traces.
    std::optional<Violation> violation;

    bool passed() const { return !violation.has_value(); }
    Orthocomplementation ortho(Permutation sigma) const { return {std::move(sigma), certificate}; }
};

inline Verification verify_ortho(const Lattice& L, std::span<const std::size_t> sigma) {
    const std::size_t n = L.size();
    if (sigma.size() != n || !is_bijection(sigma)) throw std::invalid_argument("not a bijection");
    Verification out;
    auto& c = out.certificate;
    std::optional<Violation> inv, dis, ord, con;
    for (std::size_t p = 0; p < n; ++p) {
        if (!inv && sigma[sigma[p]] != p) inv = Violation{Condition::Involution, p, sigma[p]};
        if (!dis && L.meet(p, sigma[p]) != L.bottom()) dis = Violation{Condition::Disjoint, p, sigma[p]};
        if (!con && L.join(p, sigma[p]) != L.top()) con = Violation{Condition::Conjoint, p, sigma[p]};
        for (std::size_t q = 0; q < n && !ord; ++q)
            if (L.leq(p, q) && !L.leq(sigma[q], sigma[p])) ord = Violation{Condition::OrderReversing, p, q};
    }
    c.involution = !inv;
    c.disjoint = !dis;
    c.order_reversing = !ord;
    c.conjoint = !con;
    const RationalMatrix lifted = lift_permutation(n, sigma);
    c.disjointness_trace = disjointness_trace(L.order(), lifted);
    c.conjointness_trace = conjointness_trace(L.order(), lifted);
    for (const auto& v : {inv, dis, ord, con}) {
        if (v) {
            out.violation = v;
            return out;
        }
    }
    const Rational size(static_cast<long>(n));
    if (c.disjointness_trace != size || c.conjointness_trace != size) {
        out.violation = Violation{Condition::Trace, 0, 0};
    }
    return out;
}

enum class Method { Lp, Brute, Both };
/// Which trace the LP minimizes: trc(zeta zeta^T alpha) (conjoint) or
/// trc(zeta^T zeta alpha) (disjoint).
enum class Objective { Conjoint, Disjoint };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::Lp: return "lp";
        case Method::Brute: return "brute";
        case Method::Both: return "both";
    }
    return "?";
}

inline const char* to_string(Objective o) { return o == Objective::Conjoint ? "conjoint" : "disjoint"; }

struct NonexistenceCertificate {
    enum class Kind {
        Infeasible,        ///< the root relaxation has no feasible point
        OptimumAboveN,     ///< the root optimum exceeds n
        NoIntegralOptimum  ///< root optimum is n, but the tree holds no integral optimum
    };
    Kind kind;
    std::optional<Rational> root_optimum;

    friend bool operator==(const NonexistenceCertificate&, const NonexistenceCertificate&) = default;
};

inline const char* to_string(NonexistenceCertificate::Kind k) {
    switch (k) {
        case NonexistenceCertificate::Kind::Infeasible: return "infeasible";
        case NonexistenceCertificate::Kind::OptimumAboveN: return "optimum_above_n";
        case NonexistenceCertificate::Kind::NoIntegralOptimum: return "no_integral_optimum";
    }
    return "?";
}

struct SearchStats {
    std::uint64_t lp_solves = 0;
    std::uint64_t branch_nodes = 0;
    std::uint64_t pivots = 0;
    /// Smallest objective over all feasible relaxations.
    std::optional<Rational> min_relaxation_value;
    std::uint64_t brute_nodes = 0;
    /// Complete disjoint order-reversing involutions that verify_ortho rejected.
    std::uint64_t brute_rejected = 0;
    std::int64_t elapsed_ms = 0;

    /// Equality ignoring the timing.
    bool same_counts(const SearchStats& o) const {
        return lp_solves == o.lp_solves && branch_nodes == o.branch_nodes && pivots == o.pivots &&
               min_relaxation_value == o.min_relaxation_value && brute_nodes == o.brute_nodes &&
               brute_rejected == o.brute_rejected;
    }
};

struct SearchReport {
    Method method = Method::Both;
    Objective objective = Objective::Conjoint;
    std::vector<Orthocomplementation> orthos;  ///< sorted by sigma, no duplicates
    std::optional<NonexistenceCertificate> nonexistence;
    std::optional<Rational> root_optimum;
    /// Set for Method::Both: whether the two routes returned the same set.
    std::optional<bool> agreement;
    SearchStats stats;
};

/// Thrown when the pivot cap stops a search; carries what was done so far.
class SearchAborted : public PivotLimitError {
public:
    SearchAborted(std::uint64_t pivots, SearchStats partial)
        : PivotLimitError(pivots), partial_(std::move(partial)) {}
    const SearchStats& partial() const { return partial_; }

private:
    SearchStats partial_;
};

inline SearchReport brute_force_orthos(const Lattice& L) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = L.size();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    SearchReport report;
    report.method = Method::Brute;
    std::vector<std::size_t> sigma(n, unset);

    // (p -> q) and (q -> p) are consistent with every pair assigned so far.
    auto reverses = [&](std::size_t p, std::size_t q) {
        auto ok = [&](std::size_t u, std::size_t su) {
            for (std::size_t v = 0; v < n; ++v) {
                std::size_t sv = v == p ? q : v == q ? p : sigma[v];
                if (sv == unset) continue;
                if (L.leq(u, v) && !L.leq(sv, su)) return false;
                if (L.leq(v, u) && !L.leq(su, sv)) return false;
            }
            return true;
        };
        return ok(p, q) && ok(q, p);
    };

    auto recurse = [&](auto&& self, std::size_t p) -> void {
        ++report.stats.brute_nodes;
        while (p < n && sigma[p] != unset) ++p;
        if (p == n) {
            Verification v = verify_ortho(L, sigma);
            if (v.passed()) report.orthos.push_back(v.ortho(sigma));
            else ++report.stats.brute_rejected;
            return;
        }
        for (std::size_t q = p; q < n; ++q) {
            if (sigma[q] != unset) continue;
            if (L.meet(p, q) != L.bottom()) continue;
            if (!reverses(p, q)) continue;
            sigma[p] = q;
            sigma[q] = p;
            self(self, p + 1);
            sigma[p] = sigma[q] = unset;
        }
    };
    recurse(recurse, 0);
    std::sort(report.orthos.begin(), report.orthos.end());
    report.stats.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
    return report;
}

/// The branch-and-bound problem: row sums, symmetry and commutation rows of
/// the precomplement system, the chosen trace as cost, x >= 0.
inline LPProblem orthocomplement_lp(const ConstraintSystem& S, Objective objective) {
    LPProblem P;
    P.num_vars = S.num_vars;
    const auto& costs = objective == Objective::Conjoint ? S.common_upper : S.common_lower;
    for (const auto& c : costs) P.costs.emplace_back(c);
    for (const auto& e : S.equalities) {
        if (e.family == ConstraintFamily::Trace) continue;
        LinearRow row;
        for (const auto& t : e.terms) row.terms.push_back({t.var, Rational(t.coef)});
        row.rhs = e.rhs;
        P.rows.push_back(std::move(row));
    }
    return P;
}

struct LpSearchOptions {
    Objective objective = Objective::Conjoint;
    std::size_t workers = 1;
    std::uint64_t pivot_cap = 1'000'000;
};

namespace detail {

struct Node {
    FrozenAssignment frozen;
};

// Branching variable for a relaxation point, or nullopt for a leaf.
// Fractional points branch on the coordinate closest to 1/2 (lowest index on
// ties). Integral points branch on the lowest unfrozen coordinate equal to
// one, so that the x = 0 child can reach other integral optima.
inline std::optional<std::size_t> branch_variable(const ConstraintSystem& S, const std::vector<Rational>& x,
                                                  const FrozenAssignment& frozen) {
    const Rational half(1, 2);
    std::optional<std::size_t> best;
    Rational best_gap;
    for (std::size_t p = 0; p < S.n; ++p) {
        for (std::size_t q = p; q < S.n; ++q) {
            std::size_t v = S.var(p, q);
            if (is_integer(x[v])) continue;
            Rational gap = abs(x[v] - half);
            if (!best || gap < best_gap) {
                best = v;
                best_gap = gap;
            }
        }
    }
    if (best) return best;
    for (std::size_t p = 0; p < S.n; ++p)
        for (std::size_t q = p; q < S.n; ++q)
            if (x[S.var(p, q)] == 1 && !frozen.count(S.var(p, q))) return S.var(p, q);
    return std::nullopt;
}

}  // namespace detail

inline SearchReport lp_orthos(const Lattice& L, const LpSearchOptions& options = {}) {
    const auto start = std::chrono::steady_clock::now();
    const ConstraintSystem S = build_polytope(L);
    const LPProblem problem = orthocomplement_lp(S, options.objective);
    const Rational size(static_cast<long>(S.n));
    const SolveOptions solve_options{options.pivot_cap};

    SearchReport report;
    report.method = Method::Lp;
    report.objective = options.objective;

    std::mutex mutex;
    std::condition_variable wake;
    std::vector<detail::Node> pending;
    std::size_t busy = 0;
    std::exception_ptr failure;
    std::uint64_t failed_pivots = 0;
    std::set<Permutation> found;
    SearchStats& stats = report.stats;

    auto process = [&](const detail::Node& node) -> std::vector<detail::Node> {
        LPSolution sol = solve_with_frozen(problem, node.frozen, solve_options);
        std::vector<detail::Node> children;
        std::lock_guard lock(mutex);
        ++stats.lp_solves;
        ++stats.branch_nodes;
        stats.pivots += sol.pivot_count;
        if (node.frozen.empty()) {
            if (sol.status == LPStatus::Optimal) report.root_optimum = sol.value;
            else if (sol.status == LPStatus::Infeasible)
                report.nonexistence = NonexistenceCertificate{NonexistenceCertificate::Kind::Infeasible, {}};
        }
        if (sol.status != LPStatus::Optimal) {
            if (sol.status == LPStatus::Unbounded) throw InternalError("relaxation unbounded despite x >= 0");
            return children;
        }
        if (!stats.min_relaxation_value || sol.value < *stats.min_relaxation_value) {
            stats.min_relaxation_value = sol.value;
        }
        if (sol.value < size) throw InternalError("relaxation optimum below n");
        if (sol.value > size) return children;
        RationalPoint x{sol.point, PointOrigin::LPSolution};
        if (auto sigma = integer_permutation(S, x)) {
            Verification v = verify_ortho(L, *sigma);
            if (!v.passed()) throw InternalError("integral optimum failed verification");
            found.insert(*sigma);
        }
        auto branch = detail::branch_variable(S, sol.point, node.frozen);
        if (!branch) return children;
        const std::size_t p = *branch / S.n, q = *branch % S.n;
        for (int value : {0, 1}) {
            detail::Node child{node.frozen};
            child.frozen[S.var(p, q)] = value;
            child.frozen[S.var(q, p)] = value;
            children.push_back(std::move(child));
        }
        return children;
    };

    auto worker = [&] {
        for (;;) {
            detail::Node node;
            {
                std::unique_lock lock(mutex);
                wake.wait(lock, [&] { return failure || !pending.empty() || busy == 0; });
                if (failure || pending.empty()) return;
                node = std::move(pending.back());
                pending.pop_back();
                ++busy;
            }
            try {
                auto children = process(node);
                std::lock_guard lock(mutex);
                for (auto& c : children) pending.push_back(std::move(c));
                --busy;
            } catch (const PivotLimitError& e) {
                std::lock_guard lock(mutex);
                if (!failure) {
                    failure = std::current_exception();
                    failed_pivots = e.pivots();
                }
                --busy;
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) failure = std::current_exception();
                --busy;
            }
            wake.notify_all();
        }
    };

    pending.push_back(detail::Node{});
    const std::size_t workers = std::max<std::size_t>(1, options.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    stats.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (failure) {
        try {
            std::rethrow_exception(failure);
        } catch (const PivotLimitError&) {
            throw SearchAborted(failed_pivots, stats);
        }
    }

    for (const auto& sigma : found) report.orthos.push_back(verify_ortho(L, sigma).ortho(sigma));
    if (report.orthos.empty() && !report.nonexistence) {
        using Kind = NonexistenceCertificate::Kind;
        report.nonexistence = NonexistenceCertificate{
            *report.root_optimum > size ? Kind::OptimumAboveN : Kind::NoIntegralOptimum, report.root_optimum};
    }
    return report;
}

struct SearchConfig {
    Method method = Method::Both;
    LpSearchOptions lp;
};

/// Runs the requested route(s). For Method::Both the LP result is reported
/// and `agreement` records whether the oracle found the same set.
inline SearchReport find_orthos(const Lattice& L, const SearchConfig& config = {}) {
    if (config.method == Method::Brute) {
        SearchReport r = brute_force_orthos(L);
        r.objective = config.lp.objective;
        return r;
    }
    SearchReport lp = lp_orthos(L, config.lp);
    if (config.method == Method::Lp) return lp;
    SearchReport brute = brute_force_orthos(L);
    lp.method = Method::Both;
    lp.agreement = lp.orthos == brute.orthos;
    lp.stats.brute_nodes = brute.stats.brute_nodes;
    lp.stats.brute_rejected = brute.stats.brute_rejected;
    lp.stats.elapsed_ms += brute.stats.elapsed_ms;
    return lp;
}

struct CrossCheckReport {
    bool passed = true;
    std::vector<std::string> failures;
    std::size_t ortho_count = 0;
    std::optional<Rational> root_optimum;
};

/// Both routes agree; every ortho's lift is an integral vertex of the
/// precomplement polytope with both traces n; when two or more exist, the
/// midpoint of the first two is a non-integral, non-vertex member.
inline CrossCheckReport cross_check(const Lattice& L, const LpSearchOptions& options = {}) {
    CrossCheckReport out;
    auto fail = [&](std::string what) {
        out.passed = false;
        out.failures.push_back(std::move(what));
    };
    const SearchReport lp = lp_orthos(L, options);
    const SearchReport brute = brute_force_orthos(L);
    out.ortho_count = brute.orthos.size();
    out.root_optimum = lp.root_optimum;

    auto show = [&](const Permutation& s) {
        std::string text;
        for (std::size_t p = 0; p < s.size(); ++p)
            text += (p ? " " : "") + L.label(p) + "->" + L.label(s[p]);
        return text;
    };
    if (lp.orthos != brute.orthos) {
        std::set<Permutation> a, b;
        for (const auto& o : lp.orthos) a.insert(o.sigma);
        for (const auto& o : brute.orthos) b.insert(o.sigma);
        for (const auto& s : a)
            if (!b.count(s)) fail("lp only: " + show(s));
        for (const auto& s : b)
            if (!a.count(s)) fail("brute only: " + show(s));
        if (a == b) fail("certificates differ between routes");
    }
    if (brute.stats.brute_rejected != 0) fail("oracle produced involutions rejected by verification");

    const ConstraintSystem S = build_polytope(L);
    const Rational size(static_cast<long>(L.size()));
    for (const auto& o : brute.orthos) {
        RationalPoint x = point_from_permutation(o.sigma);
        if (!membership(S, x).member) fail("lift is not a member: " + show(o.sigma));
        if (!is_integer_point(S, x)) fail("lift is not integral: " + show(o.sigma));
        if (!is_vertex(S, x)) fail("lift is not a vertex: " + show(o.sigma));
        if (o.certificate.disjointness_trace != size || o.certificate.conjointness_trace != size) {
            fail("trace differs from n: " + show(o.sigma));
        }
    }
    if (brute.orthos.size() >= 2) {
        RationalPoint mid = midpoint(point_from_permutation(brute.orthos[0].sigma),
                                     point_from_permutation(brute.orthos[1].sigma));
        if (!membership(S, mid).member) fail("midpoint is not a member");
        if (is_integer_point(S, mid)) fail("midpoint is integral");
        if (is_vertex(S, mid)) fail("midpoint is a vertex");
    }
    if (lp.stats.min_relaxation_value && *lp.stats.min_relaxation_value < size) {
        fail("relaxation below n");
    }
    return out;
}

}  // namespace orthoforge
