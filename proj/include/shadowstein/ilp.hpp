#pragma once

#include "common.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace shadowstein {

using RatMatrix = std::vector<std::vector<Rational>>;

struct LPResult {
    enum Status { Optimal, Infeasible, Unbounded } status = Infeasible;
    std::vector<Rational> y;
    Rational value = 0;
};

// minimize c.y subject to M y = q, y >= 0; exact arithmetic, Bland's rule
inline LPResult simplex(const RatMatrix& M, const std::vector<Rational>& q, const std::vector<Rational>& c) {
    const int m = static_cast<int>(M.size());
    const int n = static_cast<int>(c.size());
    const int width = n + m + 1;
    RatMatrix T(m, std::vector<Rational>(width, 0));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        int sign = q[i] < 0 ? -1 : 1;
        for (int j = 0; j < n; ++j)
            T[i][j] = sign * M[i][j];
        T[i][n + i] = 1;
        T[i][width - 1] = sign * q[i];
        basis[i] = n + i;
    }
    std::vector<bool> active(m, true);

    auto pivot = [&](int r, int col) {
        Rational p = T[r][col];
        for (auto& x : T[r])
            x /= p;
        for (int i = 0; i < m; ++i) {
            if (i == r || !active[i] || T[i][col] == 0)
                continue;
            Rational f = T[i][col];
            for (int j = 0; j < width; ++j)
                if (T[r][j] != 0)
                    T[i][j] -= f * T[r][j];
        }
        basis[r] = col;
    };

    // returns false when unbounded
    auto optimize = [&](const std::vector<Rational>& cost, int ncols) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < ncols && enter < 0; ++j) {
                Rational red = cost[j];
                for (int i = 0; i < m; ++i)
                    if (active[i] && T[i][j] != 0)
                        red -= cost[basis[i]] * T[i][j];
                if (red < 0)
                    enter = j;
            }
            if (enter < 0)
                return true;
            int leave = -1;
            Rational best = 0;
            for (int i = 0; i < m; ++i) {
                if (!active[i] || T[i][enter] <= 0)
                    continue;
                Rational ratio = T[i][width - 1] / T[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0)
                return false;
            pivot(leave, enter);
        }
    };

    std::vector<Rational> phase1(n + m, 0);
    for (int i = 0; i < m; ++i)
        phase1[n + i] = 1;
    optimize(phase1, n + m);
    Rational infeas = 0;
    for (int i = 0; i < m; ++i)
        if (basis[i] >= n)
            infeas += T[i][width - 1];
    LPResult res;
    if (infeas > 0) {
        res.status = LPResult::Infeasible;
        return res;
    }
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n)
            continue;
        int col = -1;
        for (int j = 0; j < n && col < 0; ++j)
            if (T[i][j] != 0)
                col = j;
        if (col >= 0)
            pivot(i, col);
        else
            active[i] = false;
    }
    std::vector<Rational> cost(n + m, 0);
    for (int j = 0; j < n; ++j)
        cost[j] = c[j];
    if (!optimize(cost, n)) {
        res.status = LPResult::Unbounded;
        return res;
    }
    res.status = LPResult::Optimal;
    res.y.assign(n, 0);
    for (int i = 0; i < m; ++i)
        if (active[i] && basis[i] < n)
            res.y[basis[i]] = T[i][width - 1];
    for (int j = 0; j < n; ++j)
        res.value += c[j] * res.y[j];
    return res;
}

// ---------------------------------------------------------------------------
// Systems G x <= h with x free.

struct LinearSystem {
    RatMatrix G;
    std::vector<Rational> h;
    int nvars = 0;
};

inline LPResult lp_optimize(const LinearSystem& sys, const std::vector<Rational>& objective) {
    const int m = static_cast<int>(sys.G.size()), n = sys.nvars;
    RatMatrix M(m, std::vector<Rational>(2 * n + m, 0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            M[i][j] = sys.G[i][j];
            M[i][n + j] = -sys.G[i][j];
        }
        M[i][2 * n + i] = 1;
    }
    std::vector<Rational> c(2 * n + m, 0);
    for (int j = 0; j < n; ++j) {
        c[j] = objective[j];
        c[n + j] = -objective[j];
    }
    auto r = simplex(M, sys.h, c);
    if (r.status == LPResult::Optimal) {
        std::vector<Rational> x(n);
        for (int j = 0; j < n; ++j)
            x[j] = r.y[j] - r.y[n + j];
        r.y = x;
    }
    return r;
}

// lambda >= 0 with lambda^T G = 0 and lambda^T h = -1, when G x <= h has no real solution
inline std::optional<std::vector<Rational>> farkas_certificate(const LinearSystem& sys) {
    const int m = static_cast<int>(sys.G.size()), n = sys.nvars;
    RatMatrix M(n + 1, std::vector<Rational>(m, 0));
    std::vector<Rational> q(n + 1, 0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j)
            M[j][i] = sys.G[i][j];
        M[n][i] = sys.h[i];
    }
    q[n] = -1;
    auto r = simplex(M, q, std::vector<Rational>(m, 1));
    if (r.status != LPResult::Optimal)
        return std::nullopt;
    return r.y;
}

inline bool verify_farkas(const LinearSystem& sys, const std::vector<Rational>& lambda) {
    if (lambda.size() != sys.G.size())
        return false;
    Rational rhs = 0;
    std::vector<Rational> combo(sys.nvars, 0);
    for (size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i] < 0)
            return false;
        rhs += lambda[i] * sys.h[i];
        for (int j = 0; j < sys.nvars; ++j)
            combo[j] += lambda[i] * sys.G[i][j];
    }
    for (auto& x : combo)
        if (x != 0)
            return false;
    return rhs < 0;
}

// ---------------------------------------------------------------------------
// Integer feasibility

struct IntVar {
    std::string name;
    std::optional<std::int64_t> lower;
    std::optional<std::int64_t> upper;
    int parity = -1; // -1 free, else required residue mod 2
};

struct IntRow {
    std::string name;
    std::vector<std::int64_t> coeffs; // coeffs . x <= rhs
    std::int64_t rhs = 0;
};

struct IntProblem {
    std::vector<IntVar> vars;
    std::vector<IntRow> rows;
};

enum class Verdict { Feasible, Infeasible, Unknown };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Feasible: return "FEASIBLE";
    case Verdict::Infeasible: return "INFEASIBLE";
    case Verdict::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

struct FarkasCertificate {
    std::vector<std::string> rows; // names of the inequalities, including variable bounds
    std::vector<Rational> multipliers;
};

struct SolveResult {
    Verdict verdict = Verdict::Unknown;
    std::vector<std::int64_t> witness;
    std::optional<FarkasCertificate> farkas;
    std::string reason; // how the verdict was reached
    std::int64_t cap = 0;
    std::uint64_t nodes = 0;
};

struct SolveOptions {
    std::int64_t cap = 8;
    std::uint64_t node_limit = 2'000'000;
};

// real relaxation: rows plus declared bounds (the cap is a search device, not a constraint)
inline LinearSystem relaxation(const IntProblem& p, std::vector<std::string>* names = nullptr) {
    LinearSystem sys;
    sys.nvars = static_cast<int>(p.vars.size());
    for (auto& r : p.rows) {
        std::vector<Rational> row(sys.nvars, 0);
        for (int j = 0; j < sys.nvars; ++j)
            row[j] = r.coeffs[j];
        sys.G.push_back(row);
        sys.h.push_back(r.rhs);
        if (names)
            names->push_back(r.name);
    }
    for (int j = 0; j < sys.nvars; ++j) {
        const IntVar& v = p.vars[j];
        if (v.lower) {
            std::vector<Rational> row(sys.nvars, 0);
            row[j] = -1;
            sys.G.push_back(row);
            sys.h.push_back(-*v.lower);
            if (names)
                names->push_back(v.name + " >= " + std::to_string(*v.lower));
        }
        if (v.upper) {
            std::vector<Rational> row(sys.nvars, 0);
            row[j] = 1;
            sys.G.push_back(row);
            sys.h.push_back(*v.upper);
            if (names)
                names->push_back(v.name + " <= " + std::to_string(*v.upper));
        }
    }
    return sys;
}

namespace detail {

inline std::int64_t round_up_parity(std::int64_t x, int parity) { return parity < 0 || mod2(x) == parity ? x : x + 1; }
inline std::int64_t round_down_parity(std::int64_t x, int parity) { return parity < 0 || mod2(x) == parity ? x : x - 1; }

inline std::int64_t rat_floor(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
    BigInt q = num / den;
    if (num % den != 0 && num < 0)
        --q;
    return static_cast<std::int64_t>(q);
}
inline std::int64_t rat_ceil(const Rational& r) { return -rat_floor(-r); }

struct Box {
    std::vector<std::int64_t> lo, hi;
};

// interval propagation; false when some row cannot be met
inline bool propagate(const IntProblem& p, Box& b) {
    const int n = static_cast<int>(p.vars.size());
    for (int round = 0; round < 64; ++round) {
        bool changed = false;
        for (auto& r : p.rows) {
            std::int64_t minact = 0;
            for (int j = 0; j < n; ++j) {
                std::int64_t a = r.coeffs[j];
                if (a != 0)
                    minact += a > 0 ? a * b.lo[j] : a * b.hi[j];
            }
            if (minact > r.rhs)
                return false;
            for (int j = 0; j < n; ++j) {
                std::int64_t a = r.coeffs[j];
                if (a == 0 || b.lo[j] == b.hi[j])
                    continue;
                std::int64_t own = a > 0 ? a * b.lo[j] : a * b.hi[j];
                std::int64_t slack = r.rhs - (minact - own);
                if (a > 0) {
                    std::int64_t nh = round_down_parity(floor_div(slack, a), p.vars[j].parity);
                    if (nh < b.hi[j]) {
                        b.hi[j] = nh;
                        changed = true;
                    }
                } else {
                    std::int64_t nl = round_up_parity(ceil_div(slack, a), p.vars[j].parity);
                    if (nl > b.lo[j]) {
                        b.lo[j] = nl;
                        changed = true;
                    }
                }
                if (b.lo[j] > b.hi[j])
                    return false;
                minact = 0;
                for (int k = 0; k < n; ++k) {
                    std::int64_t c = r.coeffs[k];
                    if (c != 0)
                        minact += c > 0 ? c * b.lo[k] : c * b.hi[k];
                }
            }
        }
        if (!changed)
            return true;
    }
    return true;
}

// search order: ascending from a declared lower bound, otherwise 0, 1, -1, 2, -2, ...
inline std::vector<std::int64_t> value_order(const IntVar& v, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    auto ok = [&](std::int64_t x) { return x >= lo && x <= hi && (v.parity < 0 || mod2(x) == v.parity); };
    if (v.lower) {
        for (std::int64_t x = lo; x <= hi; ++x)
            if (ok(x))
                out.push_back(x);
        return out;
    }
    std::int64_t reach = std::max(std::abs(lo), std::abs(hi));
    if (ok(0))
        out.push_back(0);
    for (std::int64_t k = 1; k <= reach; ++k) {
        if (ok(k))
            out.push_back(k);
        if (ok(-k))
            out.push_back(-k);
    }
    return out;
}

} // namespace detail

// First feasible point in the search order, or a proof that none exists, or UNKNOWN.
inline SolveResult solve_integer(const IntProblem& p, const SolveOptions& opt) {
    using namespace detail;
    const int n = static_cast<int>(p.vars.size());
    SolveResult res;
    res.cap = opt.cap;

    std::vector<std::string> names;
    LinearSystem sys = relaxation(p, &names);
    if (lp_optimize(sys, std::vector<Rational>(n, 0)).status == LPResult::Infeasible) {
        auto lambda = farkas_certificate(sys);
        require(lambda && verify_farkas(sys, *lambda), ErrorKind::Internal, "", "Farkas certificate did not verify");
        res.verdict = Verdict::Infeasible;
        res.farkas = FarkasCertificate{names, *lambda};
        res.reason = "real relaxation infeasible";
        return res;
    }

    Box box{std::vector<std::int64_t>(n), std::vector<std::int64_t>(n)};
    bool complete = true;
    for (int j = 0; j < n; ++j) {
        std::vector<Rational> obj(n, 0);
        obj[j] = 1;
        auto lo = lp_optimize(sys, obj);
        obj[j] = -1;
        auto hi = lp_optimize(sys, obj);
        std::int64_t l = -opt.cap, h = opt.cap;
        if (lo.status == LPResult::Optimal) {
            std::int64_t v = rat_ceil(lo.value);
            if (v < -opt.cap)
                complete = false;
            l = std::max(l, v);
        } else {
            complete = false;
        }
        if (hi.status == LPResult::Optimal) {
            std::int64_t v = rat_floor(-hi.value);
            if (v > opt.cap)
                complete = false;
            h = std::min(h, v);
        } else {
            complete = false;
        }
        box.lo[j] = round_up_parity(l, p.vars[j].parity);
        box.hi[j] = round_down_parity(h, p.vars[j].parity);
    }

    bool limit_hit = false;
    std::vector<std::int64_t> found;
    std::function<bool(Box&, int)> dfs = [&](Box& b, int j) -> bool {
        if (++res.nodes > opt.node_limit) {
            limit_hit = true;
            return false;
        }
        if (!propagate(p, b))
            return false;
        if (j == n) {
            found = b.lo;
            return true;
        }
        for (std::int64_t x : value_order(p.vars[j], b.lo[j], b.hi[j])) {
            Box nb = b;
            nb.lo[j] = nb.hi[j] = x;
            if (dfs(nb, j + 1))
                return true;
            if (limit_hit)
                return false;
        }
        return false;
    };
    bool empty = false;
    for (int j = 0; j < n; ++j)
        empty = empty || box.lo[j] > box.hi[j];
    if (!empty && dfs(box, 0)) {
        res.verdict = Verdict::Feasible;
        res.witness = found;
        res.reason = "search";
        return res;
    }
    if (limit_hit) {
        res.verdict = Verdict::Unknown;
        res.reason = "node limit reached";
    } else if (complete) {
        res.verdict = Verdict::Infeasible;
        res.reason = "exhaustive search inside the bounds implied by the relaxation";
    } else {
        res.verdict = Verdict::Unknown;
        res.reason = "no solution within the cap; relaxation is not bounded by it";
    }
    return res;
}

} // namespace shadowstein
