#pragma once

// Finite posets given by cover relations, their order closure, and the
// lattice structure (meet/join tables, bottom, top) when it exists.

#include "orthoforge/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orthoforge {

using Cover = std::pair<std::string, std::string>;

/// A poset as written down: labels plus a Hasse diagram.
struct PosetSpec {
    std::vector<std::string> elements;
    /// (lower, upper) pairs, transitively reduced after normalization.
    std::vector<Cover> covers;
    /// Non-fatal notes collected during normalization (removed covers).
    std::vector<std::string> warnings;
};

/// Validates a spec and removes covers implied by transitivity.
inline PosetSpec normalize_poset(PosetSpec spec) {
    const std::size_t n = spec.elements.size();
    if (n == 0) throw ParseError("poset has no elements");

    std::map<std::string, std::size_t, std::less<>> index;
    for (std::size_t i = 0; i < n; ++i) {
        if (!index.emplace(spec.elements[i], i).second) {
            throw ParseError("duplicate element: " + spec.elements[i]);
        }
    }

    std::vector<std::vector<char>> edge(n, std::vector<char>(n, 0));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& [lo, hi] : spec.covers) {
        auto a = index.find(lo);
        auto b = index.find(hi);
        if (a == index.end()) throw ParseError("unknown label in cover: " + lo);
        if (b == index.end()) throw ParseError("unknown label in cover: " + hi);
        if (a->second == b->second) throw ParseError("cycle in covers at " + lo);
        if (edge[a->second][b->second]) {
            throw ParseError("duplicate cover: [" + lo + "," + hi + "]");
        }
        edge[a->second][b->second] = 1;
        edges.emplace_back(a->second, b->second);
    }

    // Kahn's algorithm doubles as the cycle check.
    std::vector<std::size_t> indegree(n, 0);
    for (auto [a, b] : edges) ++indegree[b];
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.push_back(i);
    std::size_t seen = 0;
    while (!ready.empty()) {
        std::size_t v = ready.back();
        ready.pop_back();
        ++seen;
        for (std::size_t w = 0; w < n; ++w)
            if (edge[v][w] && --indegree[w] == 0) ready.push_back(w);
    }
    if (seen != n) throw ParseError("cycle in covers");

    // reach[v][w]: a directed path of length >= 1 leads from v to w.
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack{s};
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w = 0; w < n; ++w) {
                if (edge[v][w] && !reach[s][w]) {
                    reach[s][w] = 1;
                    stack.push_back(w);
                }
            }
        }
    }

    std::vector<Cover> kept;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto [a, b] = edges[k];
        bool redundant = false;
        for (std::size_t w = 0; w < n && !redundant; ++w) {
            redundant = w != b && edge[a][w] && reach[w][b];
        }
        if (redundant) {
            spec.warnings.push_back("removed redundant cover [" + spec.covers[k].first + "," +
                                    spec.covers[k].second + "]");
        } else {
            kept.push_back(spec.covers[k]);
        }
    }
    spec.covers = std::move(kept);
    return spec;
}

/// Parses the JSON lattice format {"elements": [...], "covers": [[lo, hi], ...]}.
inline PosetSpec parse_poset(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("elements") || !doc["elements"].is_array()) {
        throw ParseError("malformed document: expected object with \"elements\" array");
    }
    PosetSpec spec;
    for (const auto& e : doc["elements"]) {
        if (!e.is_string()) throw ParseError("malformed document: element labels must be strings");
        spec.elements.push_back(e.get<std::string>());
    }
    if (doc.contains("covers")) {
        if (!doc["covers"].is_array()) throw ParseError("malformed document: \"covers\" must be an array");
        for (const auto& c : doc["covers"]) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string()) {
                throw ParseError("malformed document: each cover must be a pair of labels");
            }
            spec.covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
        }
    }
    return normalize_poset(std::move(spec));
}

/// Serializes a spec in the input format; parse_poset(dump_poset(s)) reproduces s.
inline std::string dump_poset(const PosetSpec& spec) {
    nlohmann::ordered_json doc;
    doc["elements"] = spec.elements;
    auto covers = nlohmann::ordered_json::array();
    for (const auto& [lo, hi] : spec.covers) covers.push_back({lo, hi});
    doc["covers"] = std::move(covers);
    return doc.dump() + "\n";
}

/// Tie-break key for the deterministic linear extension.
enum class SeedOrder { Input, Lex };

/// A finite partial order with its reflexive-transitive closure.
///
/// Posets produced by build_poset are indexed along their linear extension,
/// so extension() is the identity there and leq is upper triangular. The
/// order dual keeps the indices and reverses the extension.
class Poset {
public:
    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }

    std::optional<std::size_t> find(std::string_view label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        return std::nullopt;
    }

    std::size_t index_of(std::string_view label) const {
        if (auto i = find(label)) return *i;
        throw ParseError("unknown label: " + std::string(label));
    }

    bool leq(std::size_t p, std::size_t q) const { return leq_[p * size() + q] != 0; }

    /// Cover pairs (lower, upper) as indices.
    const std::vector<std::pair<std::size_t, std::size_t>>& covers() const { return covers_; }

    /// Element indices listed in linear-extension order.
    const std::vector<std::size_t>& extension() const { return extension_; }

    std::vector<std::size_t> down_set(std::size_t p) const {
        std::vector<std::size_t> out;
        for (std::size_t r = 0; r < size(); ++r)
            if (leq(r, p)) out.push_back(r);
        return out;
    }

    std::vector<std::size_t> up_set(std::size_t p) const {
        std::vector<std::size_t> out;
        for (std::size_t r = 0; r < size(); ++r)
            if (leq(p, r)) out.push_back(r);
        return out;
    }

    Poset dual() const {
        Poset d;
        d.labels_ = labels_;
        const std::size_t n = size();
        d.leq_.assign(n * n, 0);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) d.leq_[p * n + q] = leq_[q * n + p];
        for (auto [a, b] : covers_) d.covers_.emplace_back(b, a);
        d.extension_.assign(extension_.rbegin(), extension_.rend());
        return d;
    }

    /// Back to the written form, labels in index order.
    PosetSpec to_spec() const {
        PosetSpec spec;
        spec.elements = labels_;
        for (auto [a, b] : covers_) spec.covers.emplace_back(labels_[a], labels_[b]);
        return spec;
    }

private:
    friend Poset build_poset(const PosetSpec&, SeedOrder);

    std::vector<std::string> labels_;
    std::vector<char> leq_;
    std::vector<std::pair<std::size_t, std::size_t>> covers_;
    std::vector<std::size_t> extension_;
};

/// Closes the covers of a normalized spec and reindexes along a stable
/// topological sort (ties broken by input position or by label).
inline Poset build_poset(const PosetSpec& raw, SeedOrder order = SeedOrder::Input) {
    const PosetSpec spec = normalize_poset(raw);
    const std::size_t n = spec.elements.size();
    std::map<std::string, std::size_t, std::less<>> input_index;
    for (std::size_t i = 0; i < n; ++i) input_index.emplace(spec.elements[i], i);

    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& [lo, hi] : spec.covers) {
        std::size_t a = input_index.at(lo), b = input_index.at(hi);
        succ[a].push_back(b);
        ++indegree[b];
    }

    auto before = [&](std::size_t a, std::size_t b) {
        if (order == SeedOrder::Lex && spec.elements[a] != spec.elements[b]) {
            return spec.elements[a] > spec.elements[b];
        }
        return a > b;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(before)> ready(before);
    for (std::size_t i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.push(i);
    std::vector<std::size_t> position(n);
    std::vector<std::size_t> sorted;
    while (!ready.empty()) {
        std::size_t v = ready.top();
        ready.pop();
        position[v] = sorted.size();
        sorted.push_back(v);
        for (std::size_t w : succ[v])
            if (--indegree[w] == 0) ready.push(w);
    }

    Poset P;
    for (std::size_t v : sorted) P.labels_.push_back(spec.elements[v]);
    P.leq_.assign(n * n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t s = position[v];
        std::vector<std::size_t> stack{v};
        P.leq_[s * n + s] = 1;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t w : succ[u]) {
                if (!P.leq_[s * n + position[w]]) {
                    P.leq_[s * n + position[w]] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    for (const auto& [lo, hi] : spec.covers) {
        P.covers_.emplace_back(position[input_index.at(lo)], position[input_index.at(hi)]);
    }
    std::sort(P.covers_.begin(), P.covers_.end());
    P.extension_.resize(n);
    for (std::size_t i = 0; i < n; ++i) P.extension_[i] = i;
    return P;
}

/// A poset in which every pair has a meet and a join.
class Lattice {
public:
    const Poset& order() const { return order_; }
    std::size_t size() const { return order_.size(); }
    const std::string& label(std::size_t i) const { return order_.label(i); }
    std::size_t index_of(std::string_view label) const { return order_.index_of(label); }
    bool leq(std::size_t p, std::size_t q) const { return order_.leq(p, q); }

    std::size_t meet(std::size_t p, std::size_t q) const {
        check(p, q);
        return meet_[p * size() + q];
    }
    std::size_t join(std::size_t p, std::size_t q) const {
        check(p, q);
        return join_[p * size() + q];
    }
    std::size_t bottom() const { return bottom_; }
    std::size_t top() const { return top_; }

private:
    friend Lattice build_lattice(Poset);

    void check(std::size_t p, std::size_t q) const {
        if (p >= size() || q >= size()) throw std::out_of_range("lattice index out of range");
    }

    Poset order_;
    std::vector<std::size_t> meet_;
    std::vector<std::size_t> join_;
    std::size_t bottom_ = 0;
    std::size_t top_ = 0;
};

namespace detail {

// Greatest element of the common lower bounds of p and q (or of the common
// upper bounds when `upper`). nullopt if the bounds are empty; throws if
// they are non-empty without an extremum.
inline std::optional<std::size_t> bound(const Poset& P, std::size_t p, std::size_t q, bool upper) {
    auto below = [&](std::size_t a, std::size_t b) { return upper ? P.leq(b, a) : P.leq(a, b); };
    std::vector<std::size_t> bounds;
    for (std::size_t r = 0; r < P.size(); ++r)
        if (below(r, p) && below(r, q)) bounds.push_back(r);
    if (bounds.empty()) return std::nullopt;
    for (std::size_t g : bounds) {
        if (std::all_of(bounds.begin(), bounds.end(), [&](std::size_t r) { return below(r, g); })) {
            return g;
        }
    }
    throw NotALatticeError(upper ? NotALatticeError::Kind::NoJoin : NotALatticeError::Kind::NoMeet,
                           P.label(p), P.label(q));
}

}  // namespace detail

/// Builds meet/join tables. Pairs are scanned meets first, then joins, each
/// in index order; bottom and top are checked last.
inline Lattice build_lattice(Poset P) {
    const std::size_t n = P.size();
    Lattice L;
    L.meet_.assign(n * n, n);
    L.join_.assign(n * n, n);
    for (bool upper : {false, true}) {
        auto& table = upper ? L.join_ : L.meet_;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p; q < n; ++q) {
                if (auto g = detail::bound(P, p, q, upper)) {
                    table[p * n + q] = table[q * n + p] = *g;
                }
            }
        }
    }
    auto extremum = [&](bool top) -> std::optional<std::size_t> {
        for (std::size_t c = 0; c < n; ++c) {
            bool ok = true;
            for (std::size_t r = 0; r < n && ok; ++r) ok = top ? P.leq(r, c) : P.leq(c, r);
            if (ok) return c;
        }
        return std::nullopt;
    };
    auto bottom = extremum(false);
    if (!bottom) throw NotALatticeError(NotALatticeError::Kind::NoBottom, "", "");
    auto top = extremum(true);
    if (!top) throw NotALatticeError(NotALatticeError::Kind::NoTop, "", "");
    L.bottom_ = *bottom;
    L.top_ = *top;
    L.order_ = std::move(P);
    return L;
}

inline Lattice build_lattice(const PosetSpec& spec, SeedOrder order = SeedOrder::Input) {
    return build_lattice(build_poset(spec, order));
}

}  // namespace orthoforge
