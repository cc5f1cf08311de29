#include "support.hpp"

#include <shadowstein/shadow.hpp>

#include <gtest/gtest.h>

#include <numeric>

using namespace shadowstein;
using namespace testsupport;

namespace {

ErrorKind kind_of(const std::string& text) {
    try {
        parse_bsh(text);
    } catch (const ShadowError& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

// boundary components of the abstract base by union-find over the corner arcs of the vertex discs
int boundary_components_oracle(const BranchedShadow& s) {
    const int V = s.num_vertices();
    std::vector<int> parent(4 * V);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    auto pos = [&](int v, int slot) {
        const auto& ccw = s.vertex(v).ccw;
        for (int k = 0; k < 4; ++k)
            if (ccw[k] == slot)
                return k;
        return -1;
    };
    // arc k at v runs from ccw[k] to ccw[k+1]
    auto after = [&](int v, int slot) { return 4 * v + pos(v, slot); };
    auto before = [&](int v, int slot) { return 4 * v + (pos(v, slot) + 3) % 4; };
    for (auto& e : s.edges()) {
        parent[find(after(e.tail.vertex, e.tail.slot))] = find(before(e.head.vertex, e.head.slot));
        parent[find(before(e.tail.vertex, e.tail.slot))] = find(after(e.head.vertex, e.head.slot));
    }
    std::set<int> roots;
    for (int i = 0; i < 4 * V; ++i)
        roots.insert(find(i));
    return static_cast<int>(roots.size());
}

} // namespace

TEST(ShadowParse, FixtureFilesMatchEmbeddedCatalog) {
    for (auto& [name, text] : fixture_catalog())
        EXPECT_EQ(slurp(source_dir() + "/fixtures/" + name + ".bsh"), text) << name;
}

TEST(ShadowParse, FixturesValidate) {
    for (auto& name : fixture_names()) {
        auto s = fixture(name);
        EXPECT_GE(s.num_vertices(), 1);
        EXPECT_EQ(s.num_edges(), 2 * s.num_vertices());
        EXPECT_TRUE(s.flagged_vertices().empty()) << name;
    }
}

TEST(ShadowParse, SerializeRoundTrip) {
    for (auto& name : fixture_names()) {
        auto s = fixture(name);
        auto again = parse_bsh(serialize_bsh(s)).shadow;
        EXPECT_EQ(serialize_bsh(again), serialize_bsh(s));
    }
    auto p2 = generate_pn(2);
    EXPECT_EQ(serialize_bsh(parse_bsh(serialize_bsh(p2)).shadow), serialize_bsh(p2));
}

TEST(ShadowParse, EmbeddingSectionRoundTrip) {
    EmbeddingData emb{{1, -2}, {0, 3}, {2, 0, 4, 1}};
    auto s = fixture("spine2");
    auto f = parse_bsh(serialize_bsh(s, emb));
    ASSERT_TRUE(f.embedding.has_value());
    EXPECT_EQ(f.embedding->iplus, emb.iplus);
    EXPECT_EQ(f.embedding->iminus, emb.iminus);
    EXPECT_EQ(f.embedding->u2, emb.u2);
}

TEST(ShadowParse, CommentsAndBlankLines) {
    std::string text = "# leading comment\n\n" + serialize_bsh(fixture("tri1")) + "   # trailing\n";
    EXPECT_EQ(serialize_bsh(parse_bsh(text).shadow), serialize_bsh(fixture("tri1")));
}

TEST(ShadowErrors, KindsAndLoci) {
    EXPECT_EQ(kind_of(""), ErrorKind::Syntax);
    EXPECT_EQ(kind_of("shadow x\nvertices one\n"), ErrorKind::Syntax);
    EXPECT_EQ(kind_of("shadow x\nvertices 1\nfoo 1\n"), ErrorKind::Syntax);
    EXPECT_EQ(kind_of("shadow x\nvertices 1\nedge 0 0.0 5.1\nedge 1 0.2 0.3\nregion 0 gleam2 0 circuit 0+\n"),
              ErrorKind::Reference);
    EXPECT_EQ(kind_of("shadow x\nvertices 1\nedge 1 0.0 0.1\n"), ErrorKind::Reference);
    EXPECT_EQ(kind_of("shadow x\nvertices 0\nregion 0 gleam2 0 circuit 0+\n"), ErrorKind::NotStandard);
    std::string mono = serialize_bsh(fixture("mono1"));
    mono.replace(mono.find("gleam2 0"), 8, "gleam2 1");
    EXPECT_EQ(kind_of(mono), ErrorKind::Parity);
    try {
        parse_bsh("shadow x\nvertices 1\nedge 0 0.0 0.1\nedge 1 0.2 0.3\nregion 0 gleam2 zero circuit 0+\n");
        FAIL();
    } catch (const ShadowError& e) {
        EXPECT_EQ(e.locus(), "line 5 col 17");
    }
}

TEST(Branching, ReversingEveryRegionKeepsPreferredPassages) {
    for (auto& name : fixture_names()) {
        auto s = fixture(name);
        auto regs = s.regions();
        for (auto& reg : regs) {
            std::reverse(reg.circuit.begin(), reg.circuit.end());
            for (auto& p : reg.circuit)
                p.dir = -p.dir;
        }
        auto t = BranchedShadow::make(name, s.num_vertices(), s.edges(), regs);
        for (int r = 0; r < s.num_regions(); ++r) {
            int n = static_cast<int>(regs[r].circuit.size());
            for (int i = 0; i < n; ++i)
                EXPECT_EQ(t.preferred({r, n - 1 - i}), s.preferred({r, i})) << name;
            EXPECT_EQ(t.z2_gleam(r), s.z2_gleam(r)) << name;
        }
    }
}

TEST(AbstractBase, MatchesUnionFindOracle) {
    auto check = [](const BranchedShadow& s) {
        auto b = s.abstract_base();
        EXPECT_EQ(b.boundary_components, boundary_components_oracle(s)) << s.name();
        EXPECT_EQ(b.euler_characteristic, s.num_vertices() - s.num_edges());
        EXPECT_EQ(b.euler_characteristic, 2 - 2 * b.genus - b.boundary_components);
    };
    for (auto& name : fixture_names())
        check(fixture(name));
    for (auto& s : random_shadows(60, 11))
        check(s);
}

TEST(AbstractBase, FixtureValues) {
    std::map<std::string, std::pair<int, int>> expected = {
        {"mono1", {1, 1}}, {"spine1", {3, 0}}, {"tri1", {3, 0}}, {"spine2", {2, 1}}, {"seed2", {2, 1}}};
    for (auto& [name, bg] : expected) {
        auto b = fixture(name).abstract_base();
        EXPECT_EQ(b.boundary_components, bg.first) << name;
        EXPECT_EQ(b.genus, bg.second) << name;
    }
}

TEST(Branching, TwoOneSplitEverywhere) {
    for (auto& s : random_shadows(80, 5)) {
        for (int e = 0; e < s.num_edges(); ++e) {
            int agree = 0, pref = 0;
            for (auto p : s.passages_of(e)) {
                agree += s.passage(p).dir == s.orientation(e);
                pref += s.preferred(p);
            }
            EXPECT_EQ(agree, 2);
            EXPECT_EQ(pref, 1);
        }
    }
}

TEST(Moves, JoinMergesTwoRegionsAndAddsGleams) {
    auto s = fixture("spine2").with_gleams({2, -4});
    for (int e = 0; e < s.num_edges(); ++e) {
        MoveLog log;
        try {
            auto t = move_join_nonpreferred(s, e, &log);
            EXPECT_EQ(t.num_regions(), s.num_regions() - 1);
            ASSERT_EQ(log.transfers.size(), 1u);
            EXPECT_EQ(log.transfers[0].inherited2, -2);
            EXPECT_EQ(t.region(log.transfers[0].region).gleam2 % 2 == 0, t.z2_gleam(log.transfers[0].region) == 0);
        } catch (const ShadowError& err) {
            EXPECT_EQ(err.kind(), ErrorKind::Domain);
        }
    }
}

TEST(Moves, OneTwoAddsAVertexAndATriangle) {
    auto s = fixture("seed2");
    int done = 0;
    for (int variant = 0; variant < 8; ++variant) {
        try {
            MoveLog log;
            auto t = move_one_two(s, 0, variant, &log);
            EXPECT_EQ(t.num_vertices(), s.num_vertices() + 1);
            EXPECT_EQ(t.num_edges(), s.num_edges() + 2);
            EXPECT_EQ(t.num_regions(), s.num_regions() + 1);
            EXPECT_EQ(t.region(t.num_regions() - 1).circuit.size(), 3u);
            EXPECT_EQ(log.transfers.back().rule, "new:z2");
            ++done;
        } catch (const ShadowError& e) {
            EXPECT_EQ(e.kind(), ErrorKind::Domain);
        }
    }
    EXPECT_GT(done, 0);
}

TEST(Moves, OneRegionFamily) {
    for (int n = 1; n <= 5; ++n) {
        auto s = generate_pn(n);
        EXPECT_EQ(s.num_regions(), 1);
        EXPECT_LT(s.num_vertices(), 2 * n);
        EXPECT_EQ(s.name(), "P" + std::to_string(n));
    }
    EXPECT_EQ(serialize_bsh(generate_pn(3)), serialize_bsh(generate_pn(3)));
}
