#pragma once

#include "chain.hpp"
#include "shadow.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace shadowstein {

// choice[v] = k selects vertical corner k of vertex v as the upper wall
using UpDownChoice = std::vector<int>;

inline UpDownChoice default_choice(const BranchedShadow& s) { return UpDownChoice(s.num_vertices(), 0); }

inline UpDownChoice choice_from_mask(const BranchedShadow& s, std::uint64_t mask) {
    UpDownChoice c(s.num_vertices());
    for (int v = 0; v < s.num_vertices(); ++v)
        c[v] = static_cast<int>((mask >> v) & 1);
    return c;
}

// At each endpoint one non-preferred sheet of the edge is the upper one: the vertical wall
// if that wall is up, the horizontal sheet otherwise. ud(e) = 1 when the two ends disagree.
inline Cochain up_down(const BranchedShadow& s, const UpDownChoice& choice) {
    require(static_cast<int>(choice.size()) == s.num_vertices(), ErrorKind::Domain, "",
            "up/down choice needs one entry per vertex");
    Cochain ud{1, 1, std::vector<std::int64_t>(s.num_edges(), 0)};
    for (int e = 0; e < s.num_edges(); ++e) {
        const Edge& ed = s.edge(e);
        auto upper_at = [&](SlotRef end, bool at_tail) {
            const VertexModel& m = s.vertex(end.vertex);
            int k = m.vertical_of_slot(end.slot);
            int wall = corner_id(m.vertical[k][0], m.vertical[k][1]);
            bool wall_up = choice[end.vertex] == k;
            int hit = -1, count = 0;
            for (int j = 0; j < 3; ++j) {
                const Sheet& sh = s.sheets(e)[j];
                if (s.preferred(sh.passage))
                    continue;
                bool is_wall = (at_tail ? sh.tail_corner : sh.head_corner) == wall;
                if (is_wall == wall_up) {
                    hit = j;
                    ++count;
                }
            }
            require(count == 1, ErrorKind::Internal, cat("edge ", e), "vertical wall is not a non-preferred sheet");
            return hit;
        };
        ud.values[e] = upper_at(ed.tail, true) == upper_at(ed.head, false) ? 0 : 1;
    }
    return ud;
}

// lift with values in {0, 1/2}, stored doubled
inline Cochain canonical_lift(const Cochain& ud) {
    Cochain u2{1, 2, ud.values};
    for (auto& x : u2.values)
        x = mod2(x);
    return u2;
}

// Corner rotation of the maw, in quarter turns, seen from the region: the field turns half a
// turn backwards at the two corners where the region switches between preferred and not.
inline int corner_rotation_quarters(const VertexModel& m, int enter, int exit) {
    return m.incoming[enter] == m.incoming[exit] ? -2 : 0;
}

inline std::int64_t euler_of_region(const BranchedShadow& s, int r) {
    const auto& c = s.region(r).circuit;
    int quarters = 0;
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
        SlotRef at = s.end_of(c[i]);
        int y = s.start_of(c[(i + 1) % c.size()]).slot;
        quarters += corner_rotation_quarters(s.vertex(at.vertex), at.slot, y);
    }
    require(quarters % 4 == 0, ErrorKind::Internal, cat("region ", r), "maw rotation is not a whole number of turns");
    return 1 + quarters / 4;
}

inline Cochain euler_cochain(const BranchedShadow& s) {
    Cochain c{2, 1, {}};
    for (int r = 0; r < s.num_regions(); ++r)
        c.values.push_back(euler_of_region(s, r));
    return c;
}

// half the number of switches between preferred and non-preferred passages
inline std::vector<std::int64_t> preferred_switch_halves(const BranchedShadow& s) {
    std::vector<std::int64_t> p;
    for (int r = 0; r < s.num_regions(); ++r) {
        int n = static_cast<int>(s.region(r).circuit.size()), changes = 0;
        for (int i = 0; i < n; ++i)
            changes += s.preferred({r, i}) != s.preferred({r, (i + 1) % n});
        p.push_back(changes / 2);
    }
    return p;
}

inline Cochain gleam_cochain(const BranchedShadow& s) {
    Cochain c{2, 2, {}};
    for (auto& r : s.regions())
        c.values.push_back(r.gleam2);
    return c;
}

// gl - (1/2) delta(lift of ud), which is integral by the parity law
inline Cochain integral_gleam(const BranchedShadow& s, const UpDownChoice& choice) {
    auto u2 = canonical_lift(up_down(s, choice));
    auto d = coboundary1(s, u2.values);
    Cochain c{2, 1, {}};
    for (int r = 0; r < s.num_regions(); ++r) {
        std::int64_t twice = s.region(r).gleam2 - d[r];
        require(mod2(twice) == 0, ErrorKind::Internal, cat("region ", r), "integral gleam is not integral");
        c.values.push_back(twice / 2);
    }
    return c;
}

// Eul + gl, doubled
inline Cochain c1_cochain(const BranchedShadow& s) {
    auto eul = euler_cochain(s);
    Cochain c{2, 2, {}};
    for (int r = 0; r < s.num_regions(); ++r)
        c.values.push_back(2 * eul.values[r] + s.region(r).gleam2);
    return c;
}

inline std::int64_t c1_evaluate(const BranchedShadow& s, const std::vector<std::int64_t>& z,
                                const UpDownChoice& choice) {
    auto eul = euler_cochain(s);
    auto glz = integral_gleam(s, choice);
    Cochain sum{2, 1, {}};
    for (int r = 0; r < s.num_regions(); ++r)
        sum.values.push_back(eul.values[r] + glz.values[r]);
    return pair(s, sum, z);
}

struct BishopIndices {
    std::int64_t iplus = 0;
    std::int64_t iminus = 0;
};

inline BishopIndices bishop_indices(std::int64_t chi, std::int64_t nu, std::int64_t c1) {
    require(mod2(chi + nu + c1) == 0, ErrorKind::Parity, "", "chi + nu + c1 must be even");
    return {(chi + nu + c1) / 2, (chi + nu - c1) / 2};
}

inline EmbeddingData he_rewrite(const BranchedShadow& s, const EmbeddingData& emb,
                                const std::vector<std::int64_t>& bplus, const std::vector<std::int64_t>& bminus) {
    EmbeddingData out = emb;
    auto dp = coboundary1(s, bplus), dm = coboundary1(s, bminus);
    for (int r = 0; r < s.num_regions(); ++r) {
        out.iplus[r] += dp[r];
        out.iminus[r] += dm[r];
    }
    for (int e = 0; e < s.num_edges(); ++e)
        out.u2[e] += 2 * (bplus[e] + bminus[e]);
    return out;
}

// u2 must agree mod 2 with ud up to a coboundary
inline bool embedding_parity_ok(const BranchedShadow& s, const EmbeddingData& emb) {
    auto ud = up_down(s, default_choice(s));
    std::vector<int> diff(s.num_edges());
    for (int e = 0; e < s.num_edges(); ++e)
        diff[e] = mod2(emb.u2[e] - ud.values[e]);
    return is_coboundary_mod2(s, diff);
}

} // namespace shadowstein
