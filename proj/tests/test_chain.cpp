#include "support.hpp"

#include <shadowstein/chain.hpp>

#include <gtest/gtest.h>

#include <boost/integer/common_factor.hpp>

using namespace shadowstein;
using namespace testsupport;

namespace {

BigInt det(const IntMatrix& m) {
    const size_t n = m.size();
    if (n == 1)
        return m[0][0];
    BigInt acc = 0;
    for (size_t j = 0; j < n; ++j) {
        IntMatrix minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<BigInt> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j)
                    row.push_back(m[i][k]);
            minor.push_back(row);
        }
        acc += (j % 2 ? -1 : 1) * m[0][j] * det(minor);
    }
    return acc;
}

void subsets(int n, int k, std::vector<int>& cur, int start, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, cur, i + 1, out);
        cur.pop_back();
    }
}

// gcd of all k x k minors
BigInt determinantal_divisor(const IntMatrix& m, int rows, int cols, int k) {
    std::vector<std::vector<int>> rs, cs;
    std::vector<int> cur;
    subsets(rows, k, cur, 0, rs);
    subsets(cols, k, cur, 0, cs);
    BigInt g = 0;
    for (auto& r : rs)
        for (auto& c : cs) {
            IntMatrix sub(k, std::vector<BigInt>(k));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    sub[i][j] = m[r[i]][c[j]];
            g = boost::integer::gcd(g, abs(det(sub)));
        }
    return g;
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c = zero_matrix(static_cast<int>(a.size()), static_cast<int>(b[0].size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k)
            for (size_t j = 0; j < b[0].size(); ++j)
                c[i][j] += a[i][k] * b[k][j];
    return c;
}

} // namespace

TEST(Smith, DeterminantalDivisorsAndTransforms) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 4), cols = 1 + static_cast<int>(rng() % 4);
        IntMatrix m = zero_matrix(rows, cols);
        for (auto& row : m)
            for (auto& x : row)
                x = static_cast<int>(rng() % 11) - 5;
        auto snf = smith_normal_form(m, rows, cols);
        BigInt prod = 1;
        for (int k = 1; k <= std::min(rows, cols); ++k) {
            BigInt dk = determinantal_divisor(m, rows, cols, k);
            if (k <= snf.rank()) {
                prod *= snf.diag[k - 1];
                EXPECT_EQ(prod, dk) << "trial " << trial << " k " << k;
                if (k > 1)
                    EXPECT_EQ(snf.diag[k - 1] % snf.diag[k - 2], 0);
            } else {
                EXPECT_EQ(dk, 0);
            }
        }
        EXPECT_EQ(mul(mul(snf.U, m), snf.W), snf.D);
        EXPECT_EQ(mul(snf.U, snf.Uinv), identity_matrix(rows));
        EXPECT_EQ(mul(snf.W, snf.Winv), identity_matrix(cols));
    }
}

TEST(Smith, PresentedGroupNormalForms) {
    // Z^2 / <(2,0), (0,3)> is Z/6 split as Z/2 + Z/3
    IntMatrix rel = {{2, 0}, {0, 3}};
    PresentedGroup g(rel, 2, 2);
    EXPECT_EQ(g.free_rank(), 0);
    EXPECT_EQ(g.torsion(), (std::vector<BigInt>{6}));
    EXPECT_TRUE(g.is_zero({2, 3}));
    EXPECT_FALSE(g.is_zero({1, 0}));
    EXPECT_EQ(g.normal_form({1, 0}), g.normal_form({3, 3}));
    PresentedGroup free(zero_matrix(3, 0), 3, 0);
    EXPECT_EQ(free.free_rank(), 3);
}

TEST(ChainComplex, Laws) {
    std::mt19937_64 rng(17);
    auto shadows = random_shadows(200, 101);
    for (auto& name : fixture_names())
        shadows.push_back(fixture(name));
    for (auto& s : shadows) {
        auto B = boundary_matrix(s);
        for (int e = 0; e < s.num_edges(); ++e) {
            BigInt row = 0;
            for (int r = 0; r < s.num_regions(); ++r)
                row += B[e][r];
            EXPECT_EQ(row, 1);
        }
        for (int v = 0; v < s.num_vertices(); ++v) {
            std::vector<std::int64_t> a(s.num_vertices(), 0);
            a[v] = 1;
            auto d = coboundary1(s, coboundary0(s, a));
            EXPECT_TRUE(std::all_of(d.begin(), d.end(), [](std::int64_t x) { return x == 0; }));
        }
        std::vector<std::int64_t> b(s.num_edges()), z(s.num_regions());
        for (auto& x : b)
            x = static_cast<std::int64_t>(rng() % 9) - 4;
        for (auto& x : z)
            x = static_cast<std::int64_t>(rng() % 9) - 4;
        auto db = coboundary1(s, b);
        BigInt lhs = 0, rhs = 0;
        for (int r = 0; r < s.num_regions(); ++r)
            lhs += db[r] * z[r];
        for (int e = 0; e < s.num_edges(); ++e) {
            BigInt dz = 0;
            for (int r = 0; r < s.num_regions(); ++r)
                dz += B[e][r] * z[r];
            rhs += b[e] * dz;
        }
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(ChainComplex, Homology) {
    for (auto& s : random_shadows(60, 23)) {
        auto K = second_homology_basis(s);
        int k = K.empty() ? 0 : static_cast<int>(K[0].size());
        for (int j = 0; j < k; ++j) {
            std::vector<std::int64_t> z;
            for (int r = 0; r < s.num_regions(); ++r)
                z.push_back(static_cast<std::int64_t>(K[r][j]));
            EXPECT_TRUE(is_cycle(s, z));
        }
        auto H1 = first_cohomology(s);
        for (int j = 0; j < H1.basis_size; ++j) {
            std::vector<std::int64_t> c;
            for (int e = 0; e < s.num_edges(); ++e)
                c.push_back(static_cast<std::int64_t>(H1.cocycle_basis[e][j]));
            auto d = coboundary1(s, c);
            EXPECT_TRUE(std::all_of(d.begin(), d.end(), [](std::int64_t x) { return x == 0; }));
        }
    }
}

TEST(ChainComplex, SecondCohomologyOfFixtures) {
    EXPECT_TRUE(second_cohomology(fixture("mono1")).trivial());
    EXPECT_TRUE(second_cohomology(fixture("seed2")).trivial());
    auto tri = second_cohomology(fixture("tri1"));
    EXPECT_EQ(tri.free_rank(), 1);
    for (int n = 2; n <= 5; ++n)
        EXPECT_TRUE(second_cohomology(generate_pn(n)).trivial()) << n;
}

TEST(ChainComplex, ClassesModuloCoboundaries) {
    std::mt19937_64 rng(29);
    for (auto& s : random_shadows(40, 31)) {
        Cochain c{2, 1, std::vector<std::int64_t>(s.num_regions())};
        for (auto& x : c.values)
            x = static_cast<std::int64_t>(rng() % 7) - 3;
        std::vector<std::int64_t> b(s.num_edges());
        for (auto& x : b)
            x = static_cast<std::int64_t>(rng() % 7) - 3;
        Cochain shifted = c;
        auto db = coboundary1(s, b);
        for (int r = 0; r < s.num_regions(); ++r)
            shifted.values[r] += db[r];
        EXPECT_TRUE(classes_equal(s, c, shifted));
    }
}

TEST(ChainComplex, Mod2CoboundaryAgainstExhaustiveSearch) {
    std::mt19937_64 rng(37);
    for (auto& s : random_shadows(60, 41, 5)) {
        const int V = s.num_vertices(), E = s.num_edges();
        std::set<std::vector<int>> image;
        for (std::uint64_t m = 0; m < (1ULL << V); ++m) {
            std::vector<std::int64_t> a(V);
            for (int v = 0; v < V; ++v)
                a[v] = (m >> v) & 1;
            auto d = coboundary0(s, a);
            std::vector<int> bits(E);
            for (int e = 0; e < E; ++e)
                bits[e] = mod2(d[e]);
            image.insert(bits);
        }
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<int> c(E);
            if (trial % 2 == 0) {
                auto it = image.begin();
                std::advance(it, rng() % image.size());
                c = *it;
            } else {
                for (auto& x : c)
                    x = static_cast<int>(rng() % 2);
            }
            auto sol = solve_coboundary_mod2(s, c);
            EXPECT_EQ(sol.has_value(), image.count(c) == 1);
            if (sol) {
                std::vector<std::int64_t> a(sol->begin(), sol->end());
                auto d = coboundary0(s, a);
                for (int e = 0; e < E; ++e)
                    EXPECT_EQ(mod2(d[e]), c[e]);
            }
        }
    }
}
