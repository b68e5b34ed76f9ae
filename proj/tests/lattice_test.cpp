#include "oracles.hpp"

#include "orthoforge/generate.hpp"
#include "orthoforge/lattice.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace orthoforge {
namespace {

using testing::corpus;
using testing::corpus_lattice;

TEST(ParsePoset, SmallestChain) {
    auto spec = parse_poset(R"({"elements":["0","1"],"covers":[["0","1"]]})");
    EXPECT_EQ(spec.elements.size(), 2u);
    EXPECT_EQ(spec.covers.size(), 1u);
    EXPECT_TRUE(spec.warnings.empty());
}

TEST(ParsePoset, TwoCycleIsRejected) {
    EXPECT_THROW(parse_poset(R"({"elements":["a","b"],"covers":[["a","b"],["b","a"]]})"), ParseError);
}

TEST(ParsePoset, SelfLoopIsRejected) {
    EXPECT_THROW(parse_poset(R"({"elements":["a"],"covers":[["a","a"]]})"), ParseError);
}

TEST(ParsePoset, RedundantCoverIsRemovedWithWarning) {
    auto spec = parse_poset(R"({"elements":["0","a","1"],"covers":[["0","a"],["a","1"],["0","1"]]})");
    ASSERT_EQ(spec.covers.size(), 2u);
    EXPECT_EQ(spec.covers[0], (Cover{"0", "a"}));
    EXPECT_EQ(spec.covers[1], (Cover{"a", "1"}));
    ASSERT_EQ(spec.warnings.size(), 1u);
    EXPECT_NE(spec.warnings[0].find("[0,1]"), std::string::npos);
}

TEST(ParsePoset, Errors) {
    EXPECT_THROW(parse_poset("not json"), ParseError);
    EXPECT_THROW(parse_poset(R"([1,2])"), ParseError);
    EXPECT_THROW(parse_poset(R"({"elements":[]})"), ParseError);
    EXPECT_THROW(parse_poset(R"({"elements":["a",1]})"), ParseError);
    EXPECT_THROW(parse_poset(R"({"elements":["a","a"]})"), ParseError);
    EXPECT_THROW(parse_poset(R"({"elements":["a"],"covers":[["a","z"]]})"), ParseError);
    EXPECT_THROW(parse_poset(R"({"elements":["a","b"],"covers":[["a","b"],["a","b"]]})"), ParseError);
    EXPECT_THROW(parse_poset(R"({"elements":["a","b"],"covers":[["a"]]})"), ParseError);
    EXPECT_THROW(parse_poset(R"({"elements":["a","b","c"],"covers":[["a","b"],["b","c"],["c","a"]]})"), ParseError);
}

TEST(BuildLattice, BooleanTwo) {
    auto L = build_lattice(generate("boolean", 2));
    std::size_t a = L.index_of("10"), b = L.index_of("01");
    EXPECT_EQ(L.meet(a, b), L.index_of("00"));
    EXPECT_EQ(L.join(a, b), L.index_of("11"));
    EXPECT_EQ(L.bottom(), L.index_of("00"));
    EXPECT_EQ(L.top(), L.index_of("11"));
}

TEST(BuildLattice, AntichainHasNoBottom) {
    try {
        build_lattice(parse_poset(R"({"elements":["a","b"]})"));
        FAIL() << "expected NotALatticeError";
    } catch (const NotALatticeError& e) {
        EXPECT_EQ(e.kind(), NotALatticeError::Kind::NoBottom);
    }
}

TEST(BuildLattice, ChainWithoutTopElementStillHasTop) {
    auto L = build_lattice(parse_poset(R"({"elements":["x","y"],"covers":[["y","x"]]})"));
    EXPECT_EQ(L.label(L.bottom()), "y");
    EXPECT_EQ(L.label(L.top()), "x");
}

TEST(BuildLattice, BowtieWitnessIsTopPair) {
    auto spec = parse_poset(R"({"elements":["a","b","x","y"],
        "covers":[["a","x"],["a","y"],["b","x"],["b","y"]]})");
    // Order closure works even though the lattice build fails.
    Poset P = build_poset(spec);
    EXPECT_TRUE(P.leq(P.index_of("a"), P.index_of("y")));
    try {
        build_lattice(spec);
        FAIL() << "expected NotALatticeError";
    } catch (const NotALatticeError& e) {
        EXPECT_EQ(e.kind(), NotALatticeError::Kind::NoMeet);
        EXPECT_EQ(e.first(), "x");
        EXPECT_EQ(e.second(), "y");
    }
}

TEST(BuildLattice, BoundedBowtieIsNotALattice) {
    auto spec = parse_poset(R"({"elements":["0","a","b","x","y","1"],
        "covers":[["0","a"],["0","b"],["a","x"],["a","y"],["b","x"],["b","y"],["x","1"],["y","1"]]})");
    EXPECT_THROW(build_lattice(spec), NotALatticeError);
}

TEST(BuildLattice, SingleElementIsDegenerateLattice) {
    auto L = build_lattice(parse_poset(R"({"elements":["z"]})"));
    EXPECT_EQ(L.bottom(), L.top());
    EXPECT_EQ(L.meet(0, 0), 0u);
}

TEST(Meet, OutOfRangeThrows) {
    auto L = build_lattice(generate("chain", 2));
    EXPECT_THROW(L.meet(0, 2), std::out_of_range);
    EXPECT_THROW(L.join(5, 0), std::out_of_range);
}

TEST(Meet, BooleanAtomsAreDisjoint) {
    auto L = build_lattice(generate("boolean", 3));
    for (const char* x : {"100", "010", "001"})
        for (const char* y : {"100", "010", "001"})
            if (std::string(x) != y) { EXPECT_EQ(L.label(L.meet(L.index_of(x), L.index_of(y))), "000"); }
}

TEST(Meet, BooleanMatchesBitwiseOperations) {
    auto L = build_lattice(generate("boolean", 4));
    for (std::size_t p = 0; p < L.size(); ++p) {
        for (std::size_t q = 0; q < L.size(); ++q) {
            std::string a = L.label(p), b = L.label(q), m = a, j = a;
            for (std::size_t i = 0; i < a.size(); ++i) {
                m[i] = (a[i] == '1' && b[i] == '1') ? '1' : '0';
                j[i] = (a[i] == '1' || b[i] == '1') ? '1' : '0';
            }
            EXPECT_EQ(L.label(L.meet(p, q)), m);
            EXPECT_EQ(L.label(L.join(p, q)), j);
        }
    }
}

TEST(Meet, DiamondAtomsJoinToTop) {
    auto L = build_lattice(generate("m", 3));
    EXPECT_EQ(L.join(L.index_of("a1"), L.index_of("a2")), L.top());
    EXPECT_EQ(L.meet(L.index_of("a1"), L.index_of("a3")), L.bottom());
}

TEST(Generate, Sizes) {
    auto chain = generate("chain", 3);
    EXPECT_EQ(chain.elements.size(), 3u);
    EXPECT_EQ(chain.covers.size(), 2u);
    auto b3 = generate("boolean", 3);
    EXPECT_EQ(b3.elements.size(), 8u);
    EXPECT_EQ(b3.covers.size(), 12u);
    auto mo2 = generate("mo", 2);
    EXPECT_EQ(mo2.elements.size(), 6u);
    EXPECT_EQ(mo2.covers.size(), 8u);
    EXPECT_EQ(generate("n5").elements.size(), 5u);
    EXPECT_EQ(generate("hexagon").covers.size(), 6u);
    EXPECT_EQ(generate("chain", 1).elements, std::vector<std::string>{"0"});
}

TEST(Generate, Errors) {
    EXPECT_THROW(generate("tree", 3), std::invalid_argument);
    EXPECT_THROW(generate("boolean", 7), std::invalid_argument);
    EXPECT_THROW(generate("chain", 0), std::invalid_argument);
    EXPECT_THROW(generate("mo", 0), std::invalid_argument);
}

TEST(DumpPoset, GenerateDumpParseDumpIsByteIdentical) {
    for (const auto& e : corpus()) {
        std::string once = dump_poset(generate(e.family, e.k));
        std::string twice = dump_poset(parse_poset(once));
        EXPECT_EQ(once, twice) << e.name;
    }
}

TEST(SeedOrder, LexReordersTies) {
    auto spec = parse_poset(R"({"elements":["0","z","a","1"],
        "covers":[["0","z"],["0","a"],["z","1"],["a","1"]]})");
    EXPECT_EQ(build_poset(spec, SeedOrder::Input).labels(), (std::vector<std::string>{"0", "z", "a", "1"}));
    EXPECT_EQ(build_poset(spec, SeedOrder::Lex).labels(), (std::vector<std::string>{"0", "a", "z", "1"}));
}

TEST(BuildPoset, ReindexesAlongLinearExtension) {
    auto spec = parse_poset(R"({"elements":["1","a","0"],"covers":[["0","a"],["a","1"]]})");
    Poset P = build_poset(spec);
    EXPECT_EQ(P.labels(), (std::vector<std::string>{"0", "a", "1"}));
    for (std::size_t p = 0; p < P.size(); ++p)
        for (std::size_t q = 0; q < P.size(); ++q)
            if (P.leq(p, q)) { EXPECT_LE(p, q); }
}

// A random DAG on up to 8 vertices, edges only from lower to higher input
// index, with the input order shuffled.
PosetSpec random_poset(std::mt19937& rng) {
    std::uniform_int_distribution<int> size(1, 8);
    const int n = size(rng);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    PosetSpec spec;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() % 3 == 0) spec.covers.emplace_back(names[i], names[j]);
    spec.elements = names;
    std::shuffle(spec.elements.begin(), spec.elements.end(), rng);
    return spec;
}

TEST(PosetProperties, ClosureMatchesReachability) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        PosetSpec raw = random_poset(rng);
        auto reach = testing::reachability(raw);
        Poset P = build_poset(raw);
        for (std::size_t p = 0; p < P.size(); ++p)
            for (std::size_t q = 0; q < P.size(); ++q)
                EXPECT_EQ(P.leq(p, q), reach.count({P.label(p), P.label(q)}) == 1);
        // Normalized covers generate the same order.
        EXPECT_EQ(testing::reachability(normalize_poset(raw)), reach);
    }
}

TEST(PosetProperties, OrderAxiomsAndExtension) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Poset P = build_poset(random_poset(rng));
        const std::size_t n = P.size();
        std::vector<std::size_t> pos(n);
        for (std::size_t i = 0; i < n; ++i) pos[P.extension()[i]] = i;
        for (std::size_t p = 0; p < n; ++p) {
            EXPECT_TRUE(P.leq(p, p));
            for (std::size_t q = 0; q < n; ++q) {
                if (p != q) { EXPECT_FALSE(P.leq(p, q) && P.leq(q, p)); }
                if (P.leq(p, q)) { EXPECT_LE(pos[p], pos[q]); }
                for (std::size_t r = 0; r < n; ++r)
                    if (P.leq(p, q) && P.leq(q, r)) { EXPECT_TRUE(P.leq(p, r)); }
            }
        }
    }
}

// Lattices of random intersection-closed families of subsets of {0..4}.
PosetSpec random_closure_lattice(std::mt19937& rng) {
    std::set<unsigned> family{31u};
    const int gens = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < gens; ++i) family.insert(rng() % 32);
    bool grew = true;
    while (grew) {
        grew = false;
        for (unsigned a : std::set<unsigned>(family))
            for (unsigned b : std::set<unsigned>(family)) grew |= family.insert(a & b).second;
    }
    PosetSpec spec;
    for (unsigned s : family) spec.elements.push_back("s" + std::to_string(s));
    for (unsigned a : family)
        for (unsigned b : family)
            if (a != b && (a & b) == a) spec.covers.emplace_back("s" + std::to_string(a), "s" + std::to_string(b));
    return normalize_poset(spec);
}

TEST(LatticeProperties, LawsHoldOnCorpusAndRandomLattices) {
    std::vector<Lattice> lattices;
    for (const auto& e : corpus()) lattices.push_back(corpus_lattice(e));
    std::mt19937 rng(3);
    for (int i = 0; i < 40; ++i) lattices.push_back(build_lattice(random_closure_lattice(rng)));
    for (const auto& L : lattices) {
        const std::size_t n = L.size();
        for (std::size_t x = 0; x < n; ++x) {
            EXPECT_TRUE(L.leq(L.bottom(), x));
            EXPECT_TRUE(L.leq(x, L.top()));
            EXPECT_EQ(L.meet(x, L.top()), x);
            EXPECT_EQ(L.join(x, L.bottom()), x);
            EXPECT_EQ(L.meet(x, x), x);
            EXPECT_EQ(L.join(x, x), x);
            for (std::size_t y = 0; y < n; ++y) {
                EXPECT_EQ(L.meet(x, y), L.meet(y, x));
                EXPECT_EQ(L.join(x, y), L.join(y, x));
                EXPECT_EQ(L.meet(x, L.join(x, y)), x);
                EXPECT_EQ(L.join(x, L.meet(x, y)), x);
                EXPECT_EQ(L.meet(x, y), *testing::scan_meet(L.order(), x, y));
                for (std::size_t z = 0; z < n; ++z) {
                    EXPECT_EQ(L.meet(L.meet(x, y), z), L.meet(x, L.meet(y, z)));
                    EXPECT_EQ(L.join(L.join(x, y), z), L.join(x, L.join(y, z)));
                }
            }
        }
    }
}

TEST(LatticeProperties, JoinEqualsMeetOfDual) {
    for (const auto& e : corpus()) {
        Lattice L = corpus_lattice(e);
        Poset D = L.order().dual();
        for (std::size_t p = 0; p < L.size(); ++p)
            for (std::size_t q = 0; q < L.size(); ++q) EXPECT_EQ(L.join(p, q), *testing::scan_meet(D, p, q)) << e.name;
    }
}

}  // namespace
}  // namespace orthoforge
