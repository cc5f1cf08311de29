#include <shadowstein/ilp.hpp>
#include <shadowstein/stein.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace shadowstein;

namespace {

// every integer point of the box [lo, hi]^n, checked directly
bool brute_feasible(const IntProblem& p, std::int64_t lo, std::int64_t hi) {
    const int n = static_cast<int>(p.vars.size());
    std::vector<std::int64_t> x(n, lo);
    while (true) {
        if (satisfies(p, x))
            return true;
        int j = 0;
        while (j < n && x[j] == hi)
            x[j++] = lo;
        if (j == n)
            return false;
        ++x[j];
    }
}

IntProblem random_problem(std::mt19937_64& rng, int n, bool bounded) {
    IntProblem p;
    for (int j = 0; j < n; ++j) {
        IntVar v;
        v.name = "x" + std::to_string(j);
        if (bounded || rng() % 2) {
            std::int64_t a = static_cast<std::int64_t>(rng() % 7) - 3, b = static_cast<std::int64_t>(rng() % 7) - 3;
            v.lower = std::min(a, b);
            v.upper = std::max(a, b);
        }
        int par = static_cast<int>(rng() % 3);
        v.parity = par == 2 ? -1 : par;
        p.vars.push_back(v);
    }
    int m = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < m; ++i) {
        IntRow r;
        r.name = "row" + std::to_string(i);
        for (int j = 0; j < n; ++j)
            r.coeffs.push_back(static_cast<std::int64_t>(rng() % 7) - 3);
        r.rhs = static_cast<std::int64_t>(rng() % 13) - 6;
        p.rows.push_back(r);
    }
    return p;
}

void expect_farkas_verifies(const IntProblem& p, const SolveResult& r) {
    ASSERT_TRUE(r.farkas.has_value());
    std::vector<std::string> names;
    auto sys = relaxation(p, &names);
    EXPECT_EQ(r.farkas->rows, names);
    EXPECT_TRUE(verify_farkas(sys, r.farkas->multipliers));
}

} // namespace

TEST(Solver, AgreesWithBruteForceOnBoundedProblems) {
    std::mt19937_64 rng(71);
    int feasible = 0, infeasible = 0;
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + static_cast<int>(rng() % 6);
        auto p = random_problem(rng, n, true);
        auto r = solve_checked(p, {8, 2'000'000});
        bool brute = brute_feasible(p, -3, 3);
        EXPECT_EQ(r.verdict, brute ? Verdict::Feasible : Verdict::Infeasible) << "trial " << trial;
        if (r.verdict == Verdict::Feasible) {
            ++feasible;
            EXPECT_TRUE(satisfies(p, r.witness));
        } else {
            ++infeasible;
        }
        if (r.farkas)
            expect_farkas_verifies(p, r);
    }
    EXPECT_GT(feasible, 30);
    EXPECT_GT(infeasible, 30);
}

TEST(Solver, SoundOnPartlyUnboundedProblems) {
    std::mt19937_64 rng(72);
    for (int trial = 0; trial < 600; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        auto p = random_problem(rng, n, false);
        auto r = solve_checked(p, {8, 2'000'000});
        bool in_cap = brute_feasible(p, -8, 8);
        if (in_cap)
            EXPECT_EQ(r.verdict, Verdict::Feasible) << "trial " << trial;
        if (r.verdict == Verdict::Infeasible)
            EXPECT_FALSE(in_cap);
        if (r.farkas)
            expect_farkas_verifies(p, r);
    }
}

TEST(Solver, NoVariablesAndAFalseRow) {
    IntProblem p;
    p.rows.push_back({"contradiction", {}, -1});
    auto r = solve_checked(p, {});
    EXPECT_EQ(r.verdict, Verdict::Infeasible);
    IntProblem q;
    q.rows.push_back({"tautology", {}, 0});
    EXPECT_EQ(solve_checked(q, {}).verdict, Verdict::Feasible);
}

TEST(Solver, ParityForcesTheNextValue) {
    // t >= 0 even, -t <= -2
    IntProblem p;
    p.vars.push_back({"t", 0, std::nullopt, 0});
    p.rows.push_back({"t at least 2", {-1}, -2});
    auto r = solve_checked(p, {});
    ASSERT_EQ(r.verdict, Verdict::Feasible);
    EXPECT_EQ(r.witness, std::vector<std::int64_t>{2});
    p.vars[0].parity = 1;
    r = solve_checked(p, {});
    ASSERT_EQ(r.verdict, Verdict::Feasible);
    EXPECT_EQ(r.witness, std::vector<std::int64_t>{3});
}

TEST(Solver, ParityOnlyInfeasibilityHasNoFarkasCertificate) {
    // 2x = 1 has real solutions but no integer ones
    IntProblem p;
    p.vars.push_back({"x", -5, 5, -1});
    p.rows.push_back({"2x <= 1", {2}, 1});
    p.rows.push_back({"2x >= 1", {-2}, -1});
    auto r = solve_checked(p, {});
    EXPECT_EQ(r.verdict, Verdict::Infeasible);
    EXPECT_FALSE(r.farkas.has_value());
}

TEST(Solver, RealInfeasibilityComesWithAFarkasCertificate) {
    IntProblem p;
    p.vars.push_back({"x", std::nullopt, std::nullopt, -1});
    p.vars.push_back({"y", std::nullopt, std::nullopt, -1});
    p.rows.push_back({"x + y <= 1", {1, 1}, 1});
    p.rows.push_back({"x >= 1", {-1, 0}, -1});
    p.rows.push_back({"y >= 1", {0, -1}, -1});
    auto r = solve_checked(p, {});
    EXPECT_EQ(r.verdict, Verdict::Infeasible);
    expect_farkas_verifies(p, r);
}

TEST(Simplex, OptimumOfASmallProgram) {
    // minimise -x - y subject to x + 2y <= 4, 3x + y <= 6, x, y >= 0: optimum at (8/5, 6/5)
    LinearSystem sys;
    sys.nvars = 2;
    sys.G = {{1, 2}, {3, 1}, {-1, 0}, {0, -1}};
    sys.h = {4, 6, 0, 0};
    auto r = lp_optimize(sys, {-1, -1});
    ASSERT_EQ(r.status, LPResult::Optimal);
    EXPECT_EQ(r.y[0], Rational(8, 5));
    EXPECT_EQ(r.y[1], Rational(6, 5));
}
