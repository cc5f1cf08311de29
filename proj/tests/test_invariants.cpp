#include "support.hpp"

#include <shadowstein/invariants.hpp>

#include <gtest/gtest.h>

using namespace shadowstein;
using namespace testsupport;

namespace {

std::vector<std::uint64_t> sample_masks(const BranchedShadow& s, std::mt19937_64& rng, int count) {
    const int V = s.num_vertices();
    std::vector<std::uint64_t> masks;
    if (V < 4) {
        for (std::uint64_t m = 0; m < (1ULL << V); ++m)
            masks.push_back(m);
    } else {
        for (int i = 0; i < count; ++i)
            masks.push_back(rng() & ((1ULL << V) - 1));
    }
    return masks;
}

} // namespace

TEST(UpDown, CoboundaryIsZ2GleamForEveryChoice) {
    std::mt19937_64 rng(5);
    auto shadows = random_shadows(80, 61);
    for (auto& name : fixture_names())
        shadows.push_back(fixture(name));
    for (auto& s : shadows) {
        for (auto mask : sample_masks(s, rng, 10)) {
            auto ud = up_down(s, choice_from_mask(s, mask));
            auto d = coboundary1(s, ud.values);
            for (int r = 0; r < s.num_regions(); ++r)
                EXPECT_EQ(mod2(d[r]), s.z2_gleam(r)) << s.name() << " mask " << mask;
        }
    }
}

TEST(UpDown, ChoicesDifferByMod2Coboundary) {
    std::mt19937_64 rng(6);
    for (auto& s : random_shadows(60, 62)) {
        auto base = up_down(s, default_choice(s));
        for (auto mask : sample_masks(s, rng, 6)) {
            auto ud = up_down(s, choice_from_mask(s, mask));
            std::vector<int> diff(s.num_edges());
            for (int e = 0; e < s.num_edges(); ++e)
                diff[e] = mod2(ud.values[e] - base.values[e]);
            EXPECT_TRUE(is_coboundary_mod2(s, diff));
        }
    }
}

TEST(Euler, TotalIsEulerCharacteristicOfThePolyhedron) {
    auto shadows = random_shadows(120, 63);
    for (auto& name : fixture_names())
        shadows.push_back(fixture(name));
    for (int n = 1; n <= 5; ++n)
        shadows.push_back(generate_pn(n));
    for (auto& s : shadows) {
        auto eul = euler_cochain(s);
        std::int64_t total = 0;
        for (auto x : eul.values)
            total += x;
        EXPECT_EQ(total, s.num_vertices() - s.num_edges() + s.num_regions()) << s.name();
    }
}

TEST(Euler, OneMinusHalfTheSwitches) {
    for (auto& s : random_shadows(120, 64)) {
        auto eul = euler_cochain(s);
        auto p = preferred_switch_halves(s);
        for (int r = 0; r < s.num_regions(); ++r)
            EXPECT_EQ(eul.values[r], 1 - p[r]);
    }
}

TEST(Invariants, FrozenFixtureValues) {
    struct Expect {
        std::vector<std::int64_t> eul;
        std::vector<std::int64_t> ud;
        std::vector<int> z2;
    };
    std::map<std::string, Expect> expected = {
        {"mono1", {{0}, {1, 1}, {0}}},
        {"spine1", {{1, 0}, {0, 0}, {0, 0}}},
        {"tri1", {{0, 1, 1}, {0, 1}, {1, 1, 1}}},
        {"spine2", {{0, 0}, {1, 1, 1, 1}, {0, 0}}},
        {"seed2", {{-1}, {1, 1, 1, 1}, {0}}},
    };
    for (auto& [name, ex] : expected) {
        auto s = fixture(name);
        EXPECT_EQ(euler_cochain(s).values, ex.eul) << name;
        EXPECT_EQ(up_down(s, default_choice(s)).values, ex.ud) << name;
        for (int r = 0; r < s.num_regions(); ++r)
            EXPECT_EQ(s.z2_gleam(r), ex.z2[r]) << name;
    }
}

TEST(Invariants, IntegralGleamDiffersByHalfCoboundary) {
    std::mt19937_64 rng(8);
    for (auto& s : random_shadows(60, 65)) {
        for (auto mask : sample_masks(s, rng, 4)) {
            auto choice = choice_from_mask(s, mask);
            auto glz = integral_gleam(s, choice);
            auto d = coboundary1(s, canonical_lift(up_down(s, choice)).values);
            for (int r = 0; r < s.num_regions(); ++r)
                EXPECT_EQ(2 * glz.values[r] + d[r], s.region(r).gleam2);
        }
    }
}

TEST(Invariants, ChernEvaluationIgnoresTheChoice) {
    std::mt19937_64 rng(9);
    auto shadows = random_shadows(60, 66);
    shadows.push_back(fixture("tri1"));
    for (auto& s : shadows) {
        auto K = second_homology_basis(s);
        int k = K.empty() ? 0 : static_cast<int>(K[0].size());
        auto c1 = c1_cochain(s);
        for (int j = 0; j < k; ++j) {
            std::vector<std::int64_t> z;
            for (int r = 0; r < s.num_regions(); ++r)
                z.push_back(static_cast<std::int64_t>(K[r][j]));
            std::int64_t doubled = 0;
            for (int r = 0; r < s.num_regions(); ++r)
                doubled += z[r] * c1.values[r];
            for (auto mask : sample_masks(s, rng, 4))
                EXPECT_EQ(2 * c1_evaluate(s, z, choice_from_mask(s, mask)), doubled);
        }
    }
}

TEST(Bishop, Anchors) {
    auto a = bishop_indices(1, -1, 0);
    EXPECT_EQ(a.iplus, 0);
    EXPECT_EQ(a.iminus, 0);
    auto b = bishop_indices(1, -2, 1);
    EXPECT_EQ(b.iplus, 0);
    EXPECT_EQ(b.iminus, -1);
    auto c = bishop_indices(1, -2, -1);
    EXPECT_EQ(c.iplus, -1);
    EXPECT_EQ(c.iminus, 0);
}

TEST(Bishop, RandomTriples) {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 2000; ++i) {
        std::int64_t chi = static_cast<std::int64_t>(rng() % 41) - 20;
        std::int64_t nu = static_cast<std::int64_t>(rng() % 41) - 20;
        std::int64_t c1 = static_cast<std::int64_t>(rng() % 41) - 20;
        if (mod2(chi + nu + c1) != 0) {
            try {
                bishop_indices(chi, nu, c1);
                FAIL() << "odd triple accepted";
            } catch (const ShadowError& e) {
                EXPECT_EQ(e.kind(), ErrorKind::Parity);
            }
            continue;
        }
        auto b = bishop_indices(chi, nu, c1);
        EXPECT_EQ(b.iplus + b.iminus, chi + nu);
        EXPECT_EQ(b.iplus - b.iminus, c1);
    }
}

TEST(Rewrite, KeepsParityAndClasses) {
    std::mt19937_64 rng(11);
    for (auto& s : random_shadows(60, 67)) {
        const int E = s.num_edges(), F = s.num_regions();
        EmbeddingData emb;
        emb.iplus.assign(F, 0);
        emb.iminus.assign(F, 0);
        auto ud = up_down(s, default_choice(s));
        for (int e = 0; e < E; ++e)
            emb.u2.push_back(ud.values[e] + 2 * static_cast<std::int64_t>(rng() % 3));
        for (int r = 0; r < F; ++r) {
            emb.iplus[r] = static_cast<std::int64_t>(rng() % 5) - 2;
            emb.iminus[r] = static_cast<std::int64_t>(rng() % 5) - 2;
        }
        ASSERT_TRUE(embedding_parity_ok(s, emb));
        std::vector<std::int64_t> bp(E), bm(E);
        for (int e = 0; e < E; ++e) {
            bp[e] = static_cast<std::int64_t>(rng() % 5) - 2;
            bm[e] = static_cast<std::int64_t>(rng() % 5) - 2;
        }
        auto out = he_rewrite(s, emb, bp, bm);
        EXPECT_TRUE(embedding_parity_ok(s, out));
        EXPECT_TRUE(classes_equal(s, {2, 1, emb.iplus}, {2, 1, out.iplus}));
        EXPECT_TRUE(classes_equal(s, {2, 1, emb.iminus}, {2, 1, out.iminus}));
        for (int e = 0; e < E; ++e)
            EXPECT_EQ(out.u2[e] - emb.u2[e], 2 * (bp[e] + bm[e]));
    }
}
