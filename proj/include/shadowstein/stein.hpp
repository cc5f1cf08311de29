#pragma once

#include "chain.hpp"
#include "ilp.hpp"
#include "invariants.hpp"
#include "shadow.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace shadowstein {

inline bool satisfies(const IntProblem& p, const std::vector<std::int64_t>& x) {
    if (x.size() != p.vars.size())
        return false;
    for (size_t j = 0; j < x.size(); ++j) {
        const IntVar& v = p.vars[j];
        if ((v.lower && x[j] < *v.lower) || (v.upper && x[j] > *v.upper))
            return false;
        if (v.parity >= 0 && mod2(x[j]) != v.parity)
            return false;
    }
    for (auto& r : p.rows) {
        std::int64_t acc = 0;
        for (size_t j = 0; j < x.size(); ++j)
            acc += r.coeffs[j] * x[j];
        if (acc > r.rhs)
            return false;
    }
    return true;
}

inline SolveResult solve_checked(const IntProblem& p, const SolveOptions& opt) {
    auto res = solve_integer(p, opt);
    if (res.verdict == Verdict::Feasible)
        require(satisfies(p, res.witness), ErrorKind::Internal, "", "witness failed re-substitution");
    return res;
}

// incidence[e][r], as in the boundary matrix
using Incidence = std::vector<std::vector<std::int64_t>>;

inline Incidence incidence_of(const BranchedShadow& s) {
    auto B = boundary_matrix(s);
    Incidence inc(s.num_edges(), std::vector<std::int64_t>(s.num_regions()));
    for (int e = 0; e < s.num_edges(); ++e)
        for (int r = 0; r < s.num_regions(); ++r)
            inc[e][r] = static_cast<std::int64_t>(B[e][r]);
    return inc;
}

// t_e = 2 UD(e) >= 0, t_e = ud(e) mod 2, and 2 Eul + gleam2 + delta t <= 0 on every region
inline IntProblem mainteo_problem(const Incidence& inc, const std::vector<std::int64_t>& eul2_plus_gleam2,
                                  const std::vector<std::int64_t>& ud) {
    IntProblem p;
    const size_t E = inc.size(), F = eul2_plus_gleam2.size();
    for (size_t e = 0; e < E; ++e)
        p.vars.push_back({cat("t[", e, "]"), 0, std::nullopt, mod2(ud[e])});
    for (size_t r = 0; r < F; ++r) {
        IntRow row{cat("region ", r), std::vector<std::int64_t>(E), -eul2_plus_gleam2[r]};
        for (size_t e = 0; e < E; ++e)
            row.coeffs[e] = inc[e][r];
        p.rows.push_back(row);
    }
    return p;
}

struct ChoiceOutcome {
    std::uint64_t mask = 0;
    std::vector<std::int64_t> ud;
    SolveResult result;
};

struct MainteoOptions {
    std::optional<std::int64_t> cap;
    std::int64_t ceiling = 4096;
    std::uint64_t node_limit = 2'000'000;
    size_t max_choices = 4096;
};

struct MainteoResult {
    Verdict verdict = Verdict::Unknown;
    std::uint64_t mask = 0;
    std::vector<std::int64_t> ud;
    std::vector<std::int64_t> t;
    std::int64_t cap = 0;
    IntProblem problem;
    std::vector<ChoiceOutcome> outcomes; // last outcome per distinct ud
    std::vector<std::string> warnings;
};

inline std::int64_t default_cap(const std::vector<std::int64_t>& consts) {
    std::int64_t m = 0;
    for (auto c : consts)
        m = std::max(m, std::abs(c));
    return 2 * (1 + m);
}

// Each candidate ud is tried in order; the first FEASIBLE one wins. The cap doubles
// while some candidate is still undecided.
inline MainteoResult check_mainteo_system(const Incidence& inc, const std::vector<std::int64_t>& consts,
                                          const std::vector<std::pair<std::uint64_t, std::vector<std::int64_t>>>& candidates,
                                          const MainteoOptions& opt) {
    MainteoResult res;
    std::int64_t cap = opt.cap.value_or(default_cap(consts));
    std::int64_t ceiling = std::max(opt.ceiling, cap);
    std::vector<ChoiceOutcome> outcomes;
    for (auto& [mask, ud] : candidates)
        outcomes.push_back({mask, ud, {}});
    std::vector<size_t> pending(outcomes.size());
    std::iota(pending.begin(), pending.end(), 0);
    for (;;) {
        std::vector<size_t> still;
        for (size_t i : pending) {
            auto& o = outcomes[i];
            IntProblem p = mainteo_problem(inc, consts, o.ud);
            o.result = solve_checked(p, {cap, opt.node_limit});
            if (o.result.verdict == Verdict::Feasible) {
                res.verdict = Verdict::Feasible;
                res.mask = o.mask;
                res.ud = o.ud;
                res.t = o.result.witness;
                res.cap = cap;
                res.problem = p;
                res.outcomes = outcomes;
                return res;
            }
            if (o.result.verdict == Verdict::Unknown)
                still.push_back(i);
        }
        pending = still;
        res.cap = cap;
        if (pending.empty()) {
            res.verdict = Verdict::Infeasible;
            break;
        }
        if (cap * 2 > ceiling) {
            res.verdict = Verdict::Unknown;
            res.warnings.push_back(cat("cap ceiling ", ceiling, " reached with ", pending.size(), " undecided choices"));
            break;
        }
        cap *= 2;
    }
    res.outcomes = outcomes;
    if (!outcomes.empty())
        res.problem = mainteo_problem(inc, consts, outcomes.front().ud);
    return res;
}

inline std::vector<std::int64_t> eul2_plus_gleam2(const BranchedShadow& s) { return c1_cochain(s).values; }

// distinct ud vectors over all up/down choices, in increasing mask order
inline std::vector<std::pair<std::uint64_t, std::vector<std::int64_t>>> ud_candidates(const BranchedShadow& s,
                                                                                     size_t max_choices,
                                                                                     bool* truncated = nullptr) {
    std::vector<std::pair<std::uint64_t, std::vector<std::int64_t>>> out;
    std::set<std::vector<std::int64_t>> seen;
    const int V = s.num_vertices();
    const std::uint64_t total = V >= 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << V);
    if (truncated)
        *truncated = false;
    for (std::uint64_t m = 0; m < total; ++m) {
        if (out.size() >= max_choices) {
            if (truncated)
                *truncated = true;
            break;
        }
        auto ud = up_down(s, choice_from_mask(s, m)).values;
        if (seen.insert(ud).second)
            out.emplace_back(m, ud);
    }
    return out;
}

inline MainteoResult check_mainteo(const BranchedShadow& s, const MainteoOptions& opt = {}) {
    bool truncated = false;
    auto cands = ud_candidates(s, opt.max_choices, &truncated);
    auto res = check_mainteo_system(incidence_of(s), eul2_plus_gleam2(s), cands, opt);
    if (truncated)
        res.warnings.push_back(cat("only the first ", opt.max_choices, " distinct up/down cochains were tried"));
    return res;
}

// ---------------------------------------------------------------------------

inline IntProblem genfo_problem(const Incidence& inc, const std::vector<std::int64_t>& iplus,
                                const std::vector<std::int64_t>& iminus, const std::vector<std::int64_t>& u2) {
    IntProblem p;
    const size_t E = inc.size(), F = iplus.size();
    for (size_t e = 0; e < E; ++e)
        p.vars.push_back({cat("b+[", e, "]"), std::nullopt, std::nullopt, -1});
    for (size_t e = 0; e < E; ++e)
        p.vars.push_back({cat("b-[", e, "]"), std::nullopt, std::nullopt, -1});
    for (size_t e = 0; e < E; ++e) {
        IntRow row{cat("edge ", e), std::vector<std::int64_t>(2 * E, 0), u2[e]};
        row.coeffs[e] = -2;
        row.coeffs[E + e] = -2;
        p.rows.push_back(row);
    }
    for (int sign = 0; sign < 2; ++sign)
        for (size_t r = 0; r < F; ++r) {
            IntRow row{cat(sign == 0 ? "plus" : "minus", " region ", r), std::vector<std::int64_t>(2 * E, 0),
                       -(sign == 0 ? iplus[r] : iminus[r])};
            for (size_t e = 0; e < E; ++e)
                row.coeffs[sign * E + e] = inc[e][r];
            p.rows.push_back(row);
        }
    return p;
}

struct GenfoResult {
    Verdict verdict = Verdict::Unknown;
    std::vector<std::int64_t> bplus, bminus;
    std::optional<EmbeddingData> rewritten;
    std::int64_t cap = 0;
    IntProblem problem;
    SolveResult solve;
    std::vector<std::string> warnings;
};

inline GenfoResult check_genfo_system(const Incidence& inc, const EmbeddingData& emb, const MainteoOptions& opt = {}) {
    GenfoResult res;
    res.problem = genfo_problem(inc, emb.iplus, emb.iminus, emb.u2);
    std::int64_t m = 0;
    for (auto* v : {&emb.iplus, &emb.iminus, &emb.u2})
        for (auto x : *v)
            m = std::max(m, std::abs(x));
    std::int64_t cap = opt.cap.value_or(2 * (1 + m));
    std::int64_t ceiling = std::max(opt.ceiling, cap);
    for (;;) {
        res.solve = solve_checked(res.problem, {cap, opt.node_limit});
        res.cap = cap;
        if (res.solve.verdict != Verdict::Unknown || cap * 2 > ceiling)
            break;
        cap *= 2;
    }
    res.verdict = res.solve.verdict;
    if (res.verdict == Verdict::Unknown)
        res.warnings.push_back(cat("cap ceiling ", ceiling, " reached"));
    if (res.verdict == Verdict::Feasible) {
        const size_t E = inc.size();
        res.bplus.assign(res.solve.witness.begin(), res.solve.witness.begin() + E);
        res.bminus.assign(res.solve.witness.begin() + E, res.solve.witness.end());
        EmbeddingData out = emb;
        for (size_t r = 0; r < emb.iplus.size(); ++r)
            for (size_t e = 0; e < E; ++e) {
                out.iplus[r] += inc[e][r] * res.bplus[e];
                out.iminus[r] += inc[e][r] * res.bminus[e];
            }
        for (size_t e = 0; e < E; ++e)
            out.u2[e] += 2 * (res.bplus[e] + res.bminus[e]);
        res.rewritten = out;
    }
    return res;
}

inline GenfoResult check_genfo(const BranchedShadow& s, const EmbeddingData& emb, const MainteoOptions& opt = {}) {
    require(static_cast<int>(emb.iplus.size()) == s.num_regions() &&
                static_cast<int>(emb.iminus.size()) == s.num_regions() &&
                static_cast<int>(emb.u2.size()) == s.num_edges(),
            ErrorKind::Domain, "[embedding]", "embedding data has the wrong size");
    require(embedding_parity_ok(s, emb), ErrorKind::Parity, "[embedding]",
            "u2 mod 2 differs from the up/down cochain by more than a coboundary");
    auto res = check_genfo_system(incidence_of(s), emb, opt);
    if (res.rewritten) {
        auto again = he_rewrite(s, emb, res.bplus, res.bminus);
        require(again.iplus == res.rewritten->iplus && again.iminus == res.rewritten->iminus &&
                    again.u2 == res.rewritten->u2,
                ErrorKind::Internal, "", "rewrite mismatch");
    }
    return res;
}

// ---------------------------------------------------------------------------

struct SteinCertificate {
    std::vector<std::int64_t> t;      // 2 UD per edge
    std::vector<std::int64_t> k;      // framing relative to tb, per region
    std::vector<std::int64_t> hplus;  // zig-zags
    std::vector<std::int64_t> hminus;
    Cochain class_shift;               // sum of -h^-_i over regions
    std::vector<std::int64_t> p;      // half the preferred/non-preferred switches
    bool step3_holds = false;          // gleam2 == 2k - delta t + 2p on every region
    bool euler_matches_p = false;      // Eul == 1 - p on every region
};

inline SteinCertificate emit_surgery_certificate(const BranchedShadow& s, const std::vector<std::int64_t>& t,
                                                 const std::optional<std::vector<std::int64_t>>& hminus = std::nullopt) {
    const int F = s.num_regions();
    require(static_cast<int>(t.size()) == s.num_edges(), ErrorKind::Domain, "", "UD has the wrong length");
    auto consts = eul2_plus_gleam2(s);
    auto dt = coboundary1(s, t);
    auto eul = euler_cochain(s);
    SteinCertificate c;
    c.t = t;
    c.p = preferred_switch_halves(s);
    c.class_shift = {2, 1, std::vector<std::int64_t>(F, 0)};
    c.step3_holds = c.euler_matches_p = true;
    for (int r = 0; r < F; ++r) {
        std::int64_t k2 = consts[r] + dt[r] - 2;
        require(mod2(k2) == 0, ErrorKind::Internal, cat("region ", r), "framing is not an integer");
        std::int64_t k = k2 / 2;
        require(k <= -1, ErrorKind::Domain, cat("region ", r), cat("framing ", k, " is not <= -1"));
        std::int64_t total = -1 - k;
        std::int64_t hm = hminus ? (*hminus)[r] : 0;
        require(hm >= 0 && hm <= total, ErrorKind::Domain, cat("region ", r),
                cat("split h- = ", hm, " outside 0..", total));
        c.k.push_back(k);
        c.hminus.push_back(hm);
        c.hplus.push_back(total - hm);
        c.class_shift.values[r] = -hm;
        if (s.region(r).gleam2 != 2 * k - dt[r] + 2 * c.p[r])
            c.step3_holds = false;
        if (eul.values[r] != 1 - c.p[r])
            c.euler_matches_p = false;
    }
    return c;
}

struct ClassEntry {
    std::vector<BigInt> normal_form;
    std::vector<std::int64_t> hminus;
};

struct ClassEnumeration {
    std::vector<std::int64_t> bounds;
    std::vector<ClassEntry> classes; // distinct nonzero, in order of first appearance
    std::uint64_t zero_count = 0;
    std::uint64_t visited = 0;
    std::string group; // e.g. "Z^1 + Z/3"
};

inline std::string describe_group(const PresentedGroup& g) {
    std::string s;
    if (g.free_rank() > 0)
        s = cat("Z^", g.free_rank());
    for (auto& d : g.torsion())
        s += (s.empty() ? "" : " + ") + cat("Z/", d);
    return s.empty() ? "0" : s;
}

// h- ranges over the box 0..bounds; each split shifts the class by -h-
inline ClassEnumeration enumerate_classes(const PresentedGroup& H, const std::vector<std::int64_t>& bounds,
                                          std::uint64_t product_cap = 1'000'000) {
    const int F = static_cast<int>(bounds.size());
    ClassEnumeration out;
    out.bounds = bounds;
    out.group = describe_group(H);
    BigInt product = 1;
    for (auto b : bounds)
        product *= b + 1;
    require(product <= product_cap, ErrorKind::Domain, "", cat("search space ", product, " exceeds the cap ", product_cap));
    std::set<std::vector<BigInt>> seen;
    std::vector<std::int64_t> h(F, 0);
    for (;;) {
        ++out.visited;
        std::vector<BigInt> shift(F);
        for (int r = 0; r < F; ++r)
            shift[r] = -h[r];
        auto nf = H.normal_form(shift);
        if (std::all_of(nf.begin(), nf.end(), [](const BigInt& x) { return x == 0; }))
            ++out.zero_count;
        else if (seen.insert(nf).second)
            out.classes.push_back({nf, h});
        int r = F - 1;
        while (r >= 0 && h[r] == bounds[r]) {
            h[r] = 0;
            --r;
        }
        if (r < 0)
            break;
        ++h[r];
    }
    return out;
}

inline ClassEnumeration enumerate_stein_classes(const BranchedShadow& s, const std::vector<std::int64_t>& t,
                                                std::uint64_t product_cap = 1'000'000) {
    auto consts = eul2_plus_gleam2(s);
    auto dt = coboundary1(s, t);
    std::vector<std::int64_t> bounds;
    for (int r = 0; r < s.num_regions(); ++r) {
        std::int64_t twice = -(consts[r] + dt[r]);
        require(twice >= 0 && mod2(twice) == 0, ErrorKind::Domain, cat("region ", r),
                "UD does not satisfy the region condition");
        bounds.push_back(twice / 2);
    }
    return enumerate_classes(second_cohomology(s), bounds, product_cap);
}

// ---------------------------------------------------------------------------

struct SpineReport {
    bool is_spine = false;
    bool gleams_zero = false;
    bool euler_nonpositive = false;
    std::vector<std::int64_t> euler;
    std::optional<std::vector<int>> spine_choice; // up/down choice with ud = 0
    std::optional<SteinCertificate> positive;
    std::optional<SteinCertificate> negative;
    std::string note;
};

inline SpineReport spine_report(const BranchedShadow& s) {
    SpineReport rep;
    auto base = default_choice(s);
    auto ud = up_down(s, base).values;
    std::vector<int> ud_bits(ud.begin(), ud.end());
    auto a = solve_coboundary_mod2(s, ud_bits);
    rep.is_spine = a.has_value();
    rep.gleams_zero = std::all_of(s.regions().begin(), s.regions().end(), [](const Region& r) { return r.gleam2 == 0; });
    rep.euler = euler_cochain(s).values;
    rep.euler_nonpositive = std::all_of(rep.euler.begin(), rep.euler.end(), [](std::int64_t x) { return x <= 0; });
    if (!rep.is_spine) {
        rep.note = "up/down cochain is not a mod-2 coboundary: not a branched spine";
        return rep;
    }
    std::vector<int> choice(s.num_vertices());
    for (int v = 0; v < s.num_vertices(); ++v)
        choice[v] = base[v] ^ (*a)[v];
    auto check = up_down(s, choice).values;
    require(std::all_of(check.begin(), check.end(), [](std::int64_t x) { return x == 0; }), ErrorKind::Internal, "",
            "spine choice does not kill the up/down cochain");
    rep.spine_choice = choice;
    if (!rep.euler_nonpositive) {
        rep.note = "Euler cochain has a positive entry: hypothesis not met (no claim either way)";
        return rep;
    }
    auto flat = s.with_gleams(std::vector<std::int64_t>(s.num_regions(), 0));
    std::vector<std::int64_t> zero(s.num_edges(), 0);
    rep.positive = emit_surgery_certificate(flat, zero);
    // the reversed structure lives on the gleam-negated shadow, which is the same when gl = 0
    rep.negative = emit_surgery_certificate(flat, zero);
    rep.note = "both certificates issued for gleam 0";
    return rep;
}

struct GenusReport {
    std::int64_t chi = 0;
    std::int64_t self_intersection = 0;
    std::int64_t c = 0;
    bool tight = false;
    std::optional<std::int64_t> genus_bound;
    Verdict mainteo = Verdict::Unknown;
};

inline GenusReport minimal_genus_check(const BranchedShadow& s, const std::vector<std::int64_t>& z,
                                       const MainteoOptions& opt = {}) {
    require(static_cast<int>(z.size()) == s.num_regions(), ErrorKind::Domain, "cycle", "cycle has the wrong length");
    require(std::any_of(z.begin(), z.end(), [](std::int64_t x) { return x != 0; }), ErrorKind::Domain, "cycle",
            "zero cycle");
    require(std::all_of(z.begin(), z.end(), [](std::int64_t x) { return x >= 0; }), ErrorKind::Domain, "cycle",
            "carried cycles have non-negative coefficients");
    require(is_cycle(s, z), ErrorKind::Domain, "cycle", "not a cycle");
    GenusReport g;
    g.chi = pair(s, euler_cochain(s), z);
    g.self_intersection = pair(s, integral_gleam(s, default_choice(s)), z);
    g.c = g.chi + g.self_intersection;
    g.tight = g.c <= 0;
    if (mod2(g.chi) == 0)
        g.genus_bound = (2 - g.chi) / 2;
    g.mainteo = check_mainteo(s, opt).verdict;
    return g;
}

} // namespace shadowstein
