#pragma once

// JSON and text renderings of matrices, constraint systems and search
// results. Numbers are always exact strings ("num/den" or an integer).

#include "orthoforge/incidence.hpp"
#include "orthoforge/lattice.hpp"
#include "orthoforge/lp.hpp"
#include "orthoforge/polytope.hpp"
#include "orthoforge/search.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace orthoforge {

using Json = nlohmann::ordered_json;

/// Matrix in the poset's linear-extension order.
inline Json matrix_json(const Poset& P, const RationalMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r : P.extension()) {
        Json row = Json::array();
        for (std::size_t c : P.extension()) row.push_back(to_string(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string matrix_text(const Poset& P, const RationalMatrix& m) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header{""};
    for (std::size_t c : P.extension()) header.push_back(P.label(c));
    cells.push_back(header);
    for (std::size_t r : P.extension()) {
        std::vector<std::string> row{P.label(r)};
        for (std::size_t c : P.extension()) row.push_back(to_string(m(r, c)));
        cells.push_back(std::move(row));
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& row : cells)
        for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
    std::ostringstream out;
    for (const auto& row : cells) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ' ';
            out << std::string(width[j] - row[j].size(), ' ') << row[j];
        }
        out << '\n';
    }
    return out.str();
}

/// Nonzero coordinates as label -> rational string, in index order.
inline Json vector_json(const Poset& P, const RationalVector& v) {
    Json out = Json::object();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) out[P.label(i)] = to_string(v[i]);
    return out;
}

inline std::string variable_name(const Poset& P, std::size_t p, std::size_t q) {
    return "x_" + P.label(p) + "_" + P.label(q);
}

inline Json polytope_json(const Poset& P, const ConstraintSystem& S) {
    Json doc;
    doc["n"] = S.n;
    Json vars = Json::array();
    for (std::size_t p = 0; p < S.n; ++p)
        for (std::size_t q = 0; q < S.n; ++q) vars.push_back(variable_name(P, p, q));
    doc["variables"] = vars;
    Json rows = Json::array();
    for (const auto& e : S.equalities) {
        Json terms = Json::array();
        for (const auto& t : e.terms) terms.push_back({to_string(t.coef), vars[t.var]});
        Json row;
        row["family"] = to_string(e.family);
        row["terms"] = std::move(terms);
        row["rhs"] = to_string(e.rhs);
        rows.push_back(std::move(row));
    }
    doc["equalities"] = std::move(rows);
    doc["nonnegative"] = true;
    Json costs;
    Json upper = Json::array(), lower = Json::array();
    for (const auto& c : S.common_upper) upper.push_back(to_string(c));
    for (const auto& c : S.common_lower) lower.push_back(to_string(c));
    costs["conjoint"] = std::move(upper);
    costs["disjoint"] = std::move(lower);
    doc["costs"] = std::move(costs);
    return doc;
}

/// Reads a polytope dump back as the branch-and-bound LP: every equality
/// except the trace row, with the chosen cost vector.
inline LPProblem lp_from_polytope_json(const Json& doc, Objective objective) {
    try {
        LPProblem P;
        std::map<std::string, std::size_t> index;
        for (const auto& v : doc.at("variables")) index.emplace(v.get<std::string>(), index.size());
        P.num_vars = index.size();
        for (const auto& c : doc.at("costs").at(to_string(objective)))
            P.costs.push_back(parse_rational(c.get<std::string>()));
        for (const auto& e : doc.at("equalities")) {
            if (e.at("family") == "trace") continue;
            LinearRow row;
            for (const auto& t : e.at("terms")) {
                row.terms.push_back({index.at(t.at(1).get<std::string>()), parse_rational(t.at(0).get<std::string>())});
            }
            row.rhs = parse_rational(e.at("rhs").get<std::string>());
            P.rows.push_back(std::move(row));
        }
        return P;
    } catch (const std::exception& e) {
        throw ParseError(std::string("malformed polytope dump: ") + e.what());
    }
}

inline Json certificate_json(const Certificate& c) {
    Json out;
    out["involution"] = c.involution;
    out["order_reversing"] = c.order_reversing;
    out["disjoint"] = c.disjoint;
    out["conjoint"] = c.conjoint;
    out["disjointness_trace"] = to_string(c.disjointness_trace);
    out["conjointness_trace"] = to_string(c.conjointness_trace);
    return out;
}

inline Json map_json(const Lattice& L, const Permutation& sigma) {
    Json out = Json::object();
    for (std::size_t p = 0; p < sigma.size(); ++p) out[L.label(p)] = L.label(sigma[p]);
    return out;
}

inline Json stats_json(const SearchStats& s) {
    Json out;
    out["lp_solves"] = s.lp_solves;
    out["branch_nodes"] = s.branch_nodes;
    out["pivots"] = s.pivots;
    out["min_relaxation_value"] = s.min_relaxation_value ? Json(to_string(*s.min_relaxation_value)) : Json();
    out["brute_nodes"] = s.brute_nodes;
    out["brute_rejected"] = s.brute_rejected;
    out["elapsed_ms"] = s.elapsed_ms;
    return out;
}

inline Json report_json(const Lattice& L, const SearchReport& r) {
    Json out;
    out["n"] = L.size();
    out["method"] = to_string(r.method);
    out["objective"] = to_string(r.objective);
    Json orthos = Json::array();
    for (const auto& o : r.orthos) {
        Json item;
        item["map"] = map_json(L, o.sigma);
        item["certificate"] = certificate_json(o.certificate);
        orthos.push_back(std::move(item));
    }
    out["count"] = r.orthos.size();
    out["orthocomplementations"] = std::move(orthos);
    out["root_optimum"] = r.root_optimum ? Json(to_string(*r.root_optimum)) : Json();
    if (r.nonexistence) {
        Json cert;
        cert["kind"] = to_string(r.nonexistence->kind);
        cert["optimum"] = r.nonexistence->root_optimum ? Json(to_string(*r.nonexistence->root_optimum)) : Json();
        out["nonexistence_certificate"] = std::move(cert);
    } else {
        out["nonexistence_certificate"] = nullptr;
    }
    out["agreement"] = r.agreement ? Json(*r.agreement) : Json();
    out["stats"] = stats_json(r.stats);
    return out;
}

inline std::string report_text(const Lattice& L, const SearchReport& r) {
    std::ostringstream out;
    out << "n=" << L.size() << " method=" << to_string(r.method) << " objective=" << to_string(r.objective) << '\n';
    out << r.orthos.size() << " orthocomplementation(s)\n";
    for (const auto& o : r.orthos) {
        out << " ";
        for (std::size_t p = 0; p < o.sigma.size(); ++p) out << ' ' << L.label(p) << "->" << L.label(o.sigma[p]);
        out << "   traces " << to_string(o.certificate.disjointness_trace) << ' '
            << to_string(o.certificate.conjointness_trace) << '\n';
    }
    if (r.root_optimum) out << "root optimum: " << to_string(*r.root_optimum) << '\n';
    if (r.nonexistence) out << "nonexistence: " << to_string(r.nonexistence->kind) << '\n';
    if (r.agreement) out << "agreement: " << (*r.agreement ? "yes" : "NO") << '\n';
    out << "lp solves " << r.stats.lp_solves << ", nodes " << r.stats.branch_nodes << ", pivots " << r.stats.pivots
        << ", " << r.stats.elapsed_ms << " ms\n";
    return out.str();
}

inline Json verification_json(const Lattice& L, const Verification& v) {
    Json out;
    out["passed"] = v.passed();
    out["certificate"] = certificate_json(v.certificate);
    if (v.violation) {
        Json bad;
        bad["condition"] = to_string(v.violation->condition);
        if (v.violation->condition != Condition::Trace) {
            bad["witness"] = {L.label(v.violation->first), L.label(v.violation->second)};
        }
        out["violation"] = std::move(bad);
    } else {
        out["violation"] = nullptr;
    }
    return out;
}

/// Reads a label -> label JSON object as a permutation of L's indices.
inline Permutation parse_map(const Lattice& L, std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed map: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("malformed map: expected an object");
    const std::size_t n = L.size();
    Permutation sigma(n, n);
    for (const auto& [from, to] : doc.items()) {
        if (!to.is_string()) throw ParseError("malformed map: values must be labels");
        std::size_t p = L.index_of(from);
        sigma[p] = L.index_of(to.get<std::string>());
    }
    for (std::size_t p = 0; p < n; ++p)
        if (sigma[p] == n) throw ParseError("map misses element " + L.label(p));
    if (!is_bijection(sigma)) throw ParseError("map is not a bijection");
    return sigma;
}

}  // namespace orthoforge
