// orthoforge: orthocomplementations of finite lattices via exact linear
// programming, with a combinatorial cross-check.
//
// Exit codes: 0 ok, 1 malformed input, 2 not a lattice, 3 pivot cap reached,
// 4 methods disagree, 5 verification failed.

#include "orthoforge/generate.hpp"
#include "orthoforge/incidence.hpp"
#include "orthoforge/lattice.hpp"
#include "orthoforge/polytope.hpp"
#include "orthoforge/report.hpp"
#include "orthoforge/search.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace orthoforge;

enum ExitCode : int { kOk = 0, kMalformed = 1, kNotLattice = 2, kResourceCap = 3, kDisagree = 4, kVerifyFail = 5 };

struct RunConfig {
    std::string command;
    std::string input;
    std::string generator;
    std::string method = "both";
    std::string objective = "conjoint";
    std::string format = "json";
    std::size_t workers = 1;
    std::uint64_t pivot_cap = 1'000'000;
    std::string output;
    std::string map_path;
    std::string first, second;
    std::string family;
    std::size_t size = 0;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

SeedOrder seed_order() {
    const char* env = std::getenv("ORTHOFORGE_SEED_ORDER");
    if (!env || std::string(env) == "input") return SeedOrder::Input;
    if (std::string(env) == "lex") return SeedOrder::Lex;
    throw UsageError("ORTHOFORGE_SEED_ORDER must be input or lex");
}

PosetSpec load_spec(const RunConfig& cfg) {
    if (cfg.input.empty() == cfg.generator.empty()) {
        throw UsageError("give exactly one of INPUT or --gen FAMILY[:K]");
    }
    PosetSpec spec;
    if (!cfg.generator.empty()) {
        auto colon = cfg.generator.find(':');
        std::string family = cfg.generator.substr(0, colon);
        std::size_t k = 0;
        if (colon != std::string::npos) {
            try {
                k = std::stoul(cfg.generator.substr(colon + 1));
            } catch (const std::exception&) {
                throw UsageError("bad generator size in " + cfg.generator);
            }
        }
        try {
            spec = generate(family, k);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else {
        spec = parse_poset(read_file(cfg.input));
    }
    for (const auto& w : spec.warnings) std::cerr << "warning: " << w << '\n';
    return spec;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw UsageError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void emit(const RunConfig& cfg, const Json& json, const std::string& text) {
    Output out(cfg.output);
    if (cfg.format == "json") out.stream() << json.dump(2) << '\n';
    else out.stream() << text;
}

int not_a_lattice(const RunConfig& cfg, std::size_t n, const NotALatticeError& e) {
    Json j;
    j["lattice"] = false;
    j["n"] = n;
    j["reason"] = e.what();
    if (!e.first().empty()) j["witness"] = {e.first(), e.second()};
    emit(cfg, j, std::string("not a lattice: ") + e.what() + "\n");
    return kNotLattice;
}

int cmd_check(const RunConfig& cfg) {
    const Poset P = build_poset(load_spec(cfg), seed_order());
    try {
        const Lattice L = build_lattice(P);
        Json j;
        j["lattice"] = true;
        j["n"] = L.size();
        j["bottom"] = L.label(L.bottom());
        j["top"] = L.label(L.top());
        emit(cfg, j,
             "lattice, n=" + std::to_string(L.size()) + "\nbottom: " + L.label(L.bottom()) +
                 "\ntop: " + L.label(L.top()) + "\n");
        return kOk;
    } catch (const NotALatticeError& e) {
        return not_a_lattice(cfg, P.size(), e);
    }
}

int cmd_matrix(const RunConfig& cfg, bool moebius) {
    const Poset P = build_poset(load_spec(cfg), seed_order());
    const RationalMatrix m = moebius ? moebius_matrix(P) : zeta_matrix(P);
    if (cfg.format == "json") {
        Output out(cfg.output);
        out.stream() << matrix_json(P, m).dump() << '\n';
    } else {
        emit(cfg, {}, matrix_text(P, m));
    }
    return kOk;
}

Lattice load_lattice(const RunConfig& cfg) { return build_lattice(load_spec(cfg), seed_order()); }

int cmd_find(const RunConfig& cfg) {
    const Lattice L = load_lattice(cfg);
    if (L.size() > 20) std::cerr << "warning: n=" << L.size() << " exceeds 20; the pivot cap may trigger\n";
    SearchConfig sc;
    sc.method = cfg.method == "lp" ? Method::Lp : cfg.method == "brute" ? Method::Brute : Method::Both;
    sc.lp.objective = cfg.objective == "disjoint" ? Objective::Disjoint : Objective::Conjoint;
    sc.lp.workers = cfg.workers;
    sc.lp.pivot_cap = cfg.pivot_cap;
    SearchReport report;
    try {
        report = find_orthos(L, sc);
    } catch (const SearchAborted& e) {
        Json j;
        j["error"] = e.what();
        j["stats"] = stats_json(e.partial());
        emit(cfg, j, std::string("error: ") + e.what() + "\n");
        return kResourceCap;
    }
    emit(cfg, report_json(L, report), report_text(L, report));
    if (report.agreement && !*report.agreement) {
        std::cerr << "error: lp and brute-force results differ\n";
        return kDisagree;
    }
    return kOk;
}

int cmd_verify(RunConfig cfg) {
    // With --gen there is only one positional, and it is the map.
    if (!cfg.generator.empty() && cfg.map_path.empty()) std::swap(cfg.input, cfg.map_path);
    if (cfg.map_path.empty()) throw UsageError("verify needs a map file");
    const Lattice L = load_lattice(cfg);
    const Permutation sigma = parse_map(L, read_file(cfg.map_path));
    const Verification v = verify_ortho(L, sigma);
    std::string text;
    if (v.passed()) {
        text = "pass: disjointness trace " + to_string(v.certificate.disjointness_trace) + ", conjointness trace " +
               to_string(v.certificate.conjointness_trace) + "\n";
    } else {
        text = std::string("fail: ") + to_string(v.violation->condition);
        if (v.violation->condition != Condition::Trace) {
            text += " at (" + L.label(v.violation->first) + "," + L.label(v.violation->second) + ")";
        }
        text += "\n";
    }
    emit(cfg, verification_json(L, v), text);
    return v.passed() ? kOk : kVerifyFail;
}

int cmd_polytope(const RunConfig& cfg) {
    const Lattice L = load_lattice(cfg);
    const ConstraintSystem S = build_polytope(L);
    const Json j = polytope_json(L.order(), S);
    std::ostringstream text;
    text << S.num_vars << " variables, " << S.equalities.size() << " equality rows\n";
    for (const auto& e : S.equalities) {
        text << to_string(e.family) << ":";
        for (const auto& t : e.terms) text << ' ' << to_string(t.coef) << '*' << j["variables"][t.var].get<std::string>();
        text << " = " << to_string(e.rhs) << '\n';
    }
    emit(cfg, j, text.str());
    return kOk;
}

int cmd_linear(const RunConfig& cfg, bool join) {
    const Poset P = build_poset(load_spec(cfg), seed_order());
    const std::size_t p = P.index_of(cfg.first), q = P.index_of(cfg.second);
    const auto f = RationalVector::delta(P.size(), p), g = RationalVector::delta(P.size(), q);
    const RationalVector v = join ? linearized_join(P, f, g) : linearized_meet(P, f, g);
    const Json j = vector_json(P, v);
    std::string text;
    for (const auto& [label, value] : j.items()) text += label + " " + value.get<std::string>() + "\n";
    emit(cfg, j, text);
    return kOk;
}

int cmd_generate(const RunConfig& cfg) {
    PosetSpec spec;
    try {
        spec = generate(cfg.family, cfg.size);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Output out(cfg.output);
    out.stream() << dump_poset(spec);
    return kOk;
}

int dispatch(const RunConfig& cfg) {
    const std::string& c = cfg.command;
    if (c == "check") return cmd_check(cfg);
    if (c == "zeta") return cmd_matrix(cfg, false);
    if (c == "moebius") return cmd_matrix(cfg, true);
    if (c == "find") return cmd_find(cfg);
    if (c == "verify") return cmd_verify(cfg);
    if (c == "polytope") return cmd_polytope(cfg);
    if (c == "linmeet") return cmd_linear(cfg, false);
    if (c == "linjoin") return cmd_linear(cfg, true);
    if (c == "generate") return cmd_generate(cfg);
    throw UsageError("no command given");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Orthocomplementations of finite lattices by exact linear programming"};
    app.require_subcommand(1);

    auto with_input = [&](CLI::App* sub) {
        sub->add_option("input", cfg.input, "lattice file (JSON), or - for stdin");
        sub->add_option("--gen", cfg.generator, "generated input, FAMILY[:K]");
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("-o", cfg.output, "output path");
        return sub;
    };

    with_input(app.add_subcommand("check", "validate a poset and report lattice structure"));
    with_input(app.add_subcommand("zeta", "dump the zeta matrix"));
    with_input(app.add_subcommand("moebius", "dump the Moebius matrix"));
    auto* find = with_input(app.add_subcommand("find", "find all orthocomplementations"));
    find->add_option("--method", cfg.method)->check(CLI::IsMember({"lp", "brute", "both"}));
    find->add_option("--objective", cfg.objective)->check(CLI::IsMember({"conjoint", "disjoint"}));
    find->add_option("--workers", cfg.workers)->check(CLI::PositiveNumber);
    find->add_option("--pivot-cap", cfg.pivot_cap)->check(CLI::PositiveNumber);
    auto* verify = app.add_subcommand("verify", "verify a candidate orthocomplementation");
    verify->add_option("input", cfg.input, "lattice file (JSON); omitted with --gen");
    verify->add_option("map", cfg.map_path, "JSON object label -> label");
    verify->add_option("--gen", cfg.generator, "generated input, FAMILY[:K]");
    verify->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));
    verify->add_option("-o", cfg.output, "output path");
    with_input(app.add_subcommand("polytope", "dump the precomplement constraint system"));
    for (const char* name : {"linmeet", "linjoin"}) {
        auto* sub = app.add_subcommand(name, "linearized meet/join of two delta functions");
        sub->add_option("input", cfg.input, "poset file (JSON)")->required();
        sub->add_option("p", cfg.first)->required();
        sub->add_option("q", cfg.second)->required();
        sub->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));
        sub->add_option("-o", cfg.output, "output path");
    }
    auto* gen = app.add_subcommand("generate", "write a corpus lattice: chain|boolean|m|mo|n5|hexagon");
    gen->add_option("family", cfg.family)->required();
    gen->add_option("k", cfg.size);
    gen->add_option("-o", cfg.output, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kMalformed;
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

    try {
        return dispatch(cfg);
    } catch (const NotALatticeError& e) {
        std::cerr << "not a lattice: " << e.what() << '\n';
        return kNotLattice;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kMalformed;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kMalformed;
    } catch (const PivotLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kResourceCap;
    }
}
