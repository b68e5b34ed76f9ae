#pragma once

// The function space H(P) over the delta basis of a finite poset: exact
// matrices and vectors, zeta and Moebius operators, permutation lifts, the
// two trace forms, and the linearized meet/join.

#include "orthoforge/error.hpp"
#include "orthoforge/lattice.hpp"
#include "orthoforge/rational.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace orthoforge {

/// A function on the poset; coordinate p is its value at delta_p.
class RationalVector {
public:
    RationalVector() = default;
    explicit RationalVector(std::size_t n) : coords_(n) {}
    explicit RationalVector(std::vector<Rational> coords) : coords_(std::move(coords)) {}

    static RationalVector delta(std::size_t n, std::size_t p) {
        RationalVector v(n);
        v[p] = 1;
        return v;
    }
    static RationalVector unit(std::size_t n) {
        RationalVector v(n);
        for (auto& c : v.coords_) c = 1;
        return v;
    }

    std::size_t size() const { return coords_.size(); }
    Rational& operator[](std::size_t i) { return coords_[i]; }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    std::span<const Rational> coords() const { return coords_; }

    friend bool operator==(const RationalVector&, const RationalVector&) = default;

private:
    std::vector<Rational> coords_;
};

/// Dense square matrix indexed by poset elements. Column p of a lifted
/// operator is the image of delta_p.
class RationalMatrix {
public:
    RationalMatrix() = default;
    explicit RationalMatrix(std::size_t n) : n_(n), entries_(n * n) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t size() const { return n_; }
    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }

    RationalMatrix transpose() const {
        RationalMatrix t(n_);
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    Rational trace() const {
        Rational t = 0;
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
        require_same(a.n_, b.n_);
        RationalMatrix out(a.n_);
        for (std::size_t r = 0; r < a.n_; ++r) {
            for (std::size_t k = 0; k < a.n_; ++k) {
                if (sgn(a(r, k)) == 0) continue;
                for (std::size_t c = 0; c < a.n_; ++c) out(r, c) += a(r, k) * b(k, c);
            }
        }
        return out;
    }

    friend RationalVector operator*(const RationalMatrix& a, const RationalVector& v) {
        require_same(a.n_, v.size());
        RationalVector out(a.n_);
        for (std::size_t r = 0; r < a.n_; ++r)
            for (std::size_t c = 0; c < a.n_; ++c) out[r] += a(r, c) * v[c];
        return out;
    }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

    static void require_same(std::size_t a, std::size_t b) {
        if (a != b) {
            throw std::invalid_argument("dimension mismatch: " + std::to_string(a) + " vs " +
                                        std::to_string(b));
        }
    }

private:
    std::size_t n_ = 0;
    std::vector<Rational> entries_;
};

/// zeta(p, q) = 1 iff p <= q.
inline RationalMatrix zeta_matrix(const Poset& P) {
    RationalMatrix z(P.size());
    for (std::size_t p = 0; p < P.size(); ++p)
        for (std::size_t q = 0; q < P.size(); ++q)
            if (P.leq(p, q)) z(p, q) = 1;
    return z;
}

/// Inverse of zeta via mu(p,p) = 1, mu(p,q) = -sum_{p <= r < q} mu(p,r),
/// filled along the linear extension. Checked against zeta before returning.
inline RationalMatrix moebius_matrix(const Poset& P) {
    const std::size_t n = P.size();
    const auto& ext = P.extension();
    RationalMatrix mu(n);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q : ext) {
            if (!P.leq(p, q)) continue;
            if (q == p) {
                mu(p, q) = 1;
                continue;
            }
            Rational sum = 0;
            for (std::size_t r = 0; r < n; ++r)
                if (r != q && P.leq(p, r) && P.leq(r, q)) sum += mu(p, r);
            mu(p, q) = -sum;
        }
    }
    const RationalMatrix zeta = zeta_matrix(P);
    const RationalMatrix id = RationalMatrix::identity(n);
    if (mu * zeta != id || zeta * mu != id) throw InternalError("Moebius inversion check failed");
    return mu;
}

/// Both zeta and its inverse, computed together.
struct ZetaMoebiusPair {
    RationalMatrix zeta;
    RationalMatrix moebius;
};

inline ZetaMoebiusPair zeta_moebius(const Poset& P) { return {zeta_matrix(P), moebius_matrix(P)}; }

inline RationalVector pointwise_product(const RationalVector& f, const RationalVector& g) {
    RationalMatrix::require_same(f.size(), g.size());
    RationalVector out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] * g[i];
    return out;
}

/// A permutation of element indices: sigma[p] is the image of p.
using Permutation = std::vector<std::size_t>;

inline bool is_bijection(std::span<const std::size_t> sigma) {
    std::vector<char> hit(sigma.size(), 0);
    for (std::size_t v : sigma) {
        if (v >= sigma.size() || hit[v]) return false;
        hit[v] = 1;
    }
    return true;
}

/// The operator delta_p -> delta_{sigma(p)}: M(q, p) = 1 iff q = sigma(p).
inline RationalMatrix lift_permutation(std::size_t n, std::span<const std::size_t> sigma) {
    if (sigma.size() != n || !is_bijection(sigma)) throw std::invalid_argument("not a bijection");
    RationalMatrix m(n);
    for (std::size_t p = 0; p < n; ++p) m(sigma[p], p) = 1;
    return m;
}

/// zeta^T zeta: entry (p,q) counts the common lower bounds of p and q.
inline RationalMatrix lower_gram(const Poset& P) {
    const RationalMatrix z = zeta_matrix(P);
    return z.transpose() * z;
}

/// zeta zeta^T: entry (p,q) counts the common upper bounds of p and q.
inline RationalMatrix upper_gram(const Poset& P) {
    const RationalMatrix z = zeta_matrix(P);
    return z * z.transpose();
}

/// trc(zeta^T zeta M).
inline Rational disjointness_trace(const Poset& P, const RationalMatrix& m) {
    RationalMatrix::require_same(P.size(), m.size());
    return (lower_gram(P) * m).trace();
}

/// trc(zeta zeta^T M).
inline Rational conjointness_trace(const Poset& P, const RationalMatrix& m) {
    RationalMatrix::require_same(P.size(), m.size());
    return (upper_gram(P) * m).trace();
}

/// mu((zeta f) . (zeta g)). On a lattice this sends (delta_p, delta_q) to
/// delta_{p meet q}; on a general poset the result is a weighted sum.
inline RationalVector linearized_meet(const Poset& P, const RationalVector& f, const RationalVector& g) {
    RationalMatrix::require_same(P.size(), f.size());
    RationalMatrix::require_same(P.size(), g.size());
    const auto [zeta, mu] = zeta_moebius(P);
    return mu * pointwise_product(zeta * f, zeta * g);
}

/// linearized_meet on the order dual.
inline RationalVector linearized_join(const Poset& P, const RationalVector& f, const RationalVector& g) {
    return linearized_meet(P.dual(), f, g);
}

}  // namespace orthoforge
