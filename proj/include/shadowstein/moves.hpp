#pragma once

#include "fixtures.hpp"
#include "shadow.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace shadowstein {

struct GleamTransfer {
    int region = -1;             // region id in the output
    std::vector<int> sources;    // region ids in the input
    std::int64_t inherited2 = 0; // sum of source gleams
    std::int64_t gleam2 = 0;     // value written
    std::string rule;
};

struct MoveLog {
    std::string move;
    std::vector<GleamTransfer> transfers;
};

// Smallest change of `g2` that matches parity `z2`; ties go upward.
inline std::int64_t parity_fix(std::int64_t g2, int z2) { return mod2(g2) == z2 ? g2 : g2 + 1; }

inline BranchedShadow move_join_nonpreferred(const BranchedShadow& s, int e, MoveLog* log = nullptr) {
    require(e >= 0 && e < s.num_edges(), ErrorKind::Reference, cat("edge ", e), "no such edge");
    std::vector<PassageRef> np;
    for (auto p : s.passages_of(e))
        if (!s.preferred(p))
            np.push_back(p);
    require(np.size() == 2, ErrorKind::Internal, cat("edge ", e), "expected two non-preferred passages");
    PassageRef a = np[0], b = np[1];
    if (a.region > b.region)
        std::swap(a, b);
    require(a.region != b.region, ErrorKind::Domain, cat("edge ", e),
            "both non-preferred passages belong to the same region");

    auto rotated = [&](PassageRef p) {
        const auto& c = s.region(p.region).circuit;
        int n = static_cast<int>(c.size());
        std::vector<Passage> out;
        for (int k = 1; k < n; ++k)
            out.push_back(c[(p.index + k) % n]);
        return out;
    };
    Passage through = s.passage(a);
    std::vector<Passage> joined = rotated(a);
    joined.push_back(through);
    auto tail = rotated(b);
    joined.insert(joined.end(), tail.begin(), tail.end());
    joined.push_back(through);

    std::vector<Region> regs;
    int merged_id = -1;
    std::vector<int> new_id(s.num_regions(), -1);
    for (int r = 0; r < s.num_regions(); ++r) {
        if (r == b.region)
            continue;
        new_id[r] = static_cast<int>(regs.size());
        if (r == a.region) {
            merged_id = new_id[r];
            Region m;
            m.circuit = joined;
            m.gleam2 = s.region(a.region).gleam2 + s.region(b.region).gleam2;
            m.open = s.region(a.region).open || s.region(b.region).open;
            regs.push_back(std::move(m));
        } else {
            regs.push_back(s.region(r));
        }
    }
    std::int64_t inherited = regs[merged_id].gleam2;
    auto shape = BranchedShadow::make(s.name(), s.num_vertices(), s.edges(), regs, false);
    std::vector<std::int64_t> g2;
    for (auto& r : shape.regions())
        g2.push_back(r.gleam2);
    // reconnecting the sheets at e can also flip the Z2-gleam of an untouched region
    for (int r = 0; r < shape.num_regions(); ++r)
        g2[r] = parity_fix(g2[r], shape.z2_gleam(r));
    BranchedShadow out = shape.with_gleams(g2);
    if (log) {
        log->move = cat("join_nonpreferred edge ", e);
        log->transfers.push_back({merged_id, {a.region, b.region}, inherited, out.region(merged_id).gleam2,
                                  out.region(merged_id).gleam2 == inherited ? "sum" : "sum+parity"});
        for (int r = 0; r < s.num_regions(); ++r)
            if (new_id[r] >= 0 && new_id[r] != merged_id && out.region(new_id[r]).gleam2 != s.region(r).gleam2)
                log->transfers.push_back({new_id[r], {r}, s.region(r).gleam2, out.region(new_id[r]).gleam2, "parity"});
    }
    return out;
}

// The slot-th edge at `vertex` is blown up into a triangle (one vertex becomes two,
// the far endpoint is untouched). variant = 2*slot + orientation of the new triangle.
inline BranchedShadow move_one_two(const BranchedShadow& s, int vertex, int variant, MoveLog* log = nullptr) {
    require(vertex >= 0 && vertex < s.num_vertices(), ErrorKind::Reference, cat("vertex ", vertex), "no such vertex");
    require(variant >= 0 && variant < 8, ErrorKind::Domain, cat("variant ", variant), "variant must be in 0..7");
    int slot = variant / 2, flip = variant % 2;
    int e = -1;
    for (int i = 0; i < s.num_edges(); ++i)
        if (s.edge(i).tail == SlotRef{vertex, slot} || s.edge(i).head == SlotRef{vertex, slot})
            e = i;
    const Edge ed = s.edge(e);
    require(ed.tail.vertex != ed.head.vertex, ErrorKind::Domain, cat("variant ", variant),
            "the selected edge is a loop");
    const int u = ed.tail.vertex, w = ed.head.vertex, su = ed.tail.slot, sw = ed.head.slot;
    const int V = s.num_vertices(), E = s.num_edges();

    // sheet k of e leaves u through slot a[k] and w through slot b[k]
    std::array<int, 3> a{}, b{};
    for (int k = 0; k < 3; ++k) {
        auto tc = corner_slots(s.sheets(e)[k].tail_corner);
        auto hc = corner_slots(s.sheets(e)[k].head_corner);
        a[k] = tc[0] == su ? tc[1] : tc[0];
        b[k] = hc[0] == sw ? hc[1] : hc[0];
    }
    const std::array<int, 3> t{u, w, V};
    const std::array<int, 3> g{e, E, E + 1};
    auto gslot = [](int k, int m) {
        int lo = -1, hi = -1;
        for (int x = 0; x < 3; ++x)
            if (x != k)
                (lo < 0 ? lo : hi) = x;
        return m == lo ? 2 : 3;
    };
    std::map<std::pair<int, int>, SlotRef> remap;
    for (int k = 0; k < 3; ++k) {
        remap[{u, a[k]}] = {t[k], 0};
        remap[{w, b[k]}] = {t[k], 1};
    }
    auto moved = [&](SlotRef r) {
        auto it = remap.find({r.vertex, r.slot});
        return it == remap.end() ? r : it->second;
    };
    std::vector<Edge> edges(E + 2);
    for (int i = 0; i < E; ++i)
        if (i != e)
            edges[i] = {moved(s.edge(i).tail), moved(s.edge(i).head)};
    for (int m = 0; m < 3; ++m) {
        int i = m == 0 ? 1 : 0, j = m == 2 ? 1 : 2;
        edges[g[m]] = {{t[i], gslot(i, m)}, {t[j], gslot(j, m)}};
    }

    auto index_of = [](const std::array<int, 3>& arr, int x) {
        for (int k = 0; k < 3; ++k)
            if (arr[k] == x)
                return k;
        return -1;
    };
    std::vector<Region> regs;
    for (int r = 0; r < s.num_regions(); ++r) {
        const auto& c = s.region(r).circuit;
        int n = static_cast<int>(c.size());
        Region nr;
        nr.gleam2 = s.region(r).gleam2;
        nr.open = s.region(r).open;
        for (int i = 0; i < n; ++i) {
            if (c[i].edge == e)
                continue;
            nr.circuit.push_back(c[i]);
            const Passage& q = c[(i + 1) % n];
            if (q.edge == e)
                continue;
            SlotRef x = s.end_of(c[i]);
            int y = s.start_of(q).slot;
            for (auto [vv, arr] : {std::pair{u, a}, std::pair{w, b}}) {
                if (x.vertex != vv)
                    continue;
                int ki = index_of(arr, x.slot), kj = index_of(arr, y);
                if (ki < 0 || kj < 0)
                    continue;
                nr.circuit.push_back({g[3 - ki - kj], ki < kj ? 1 : -1});
            }
        }
        regs.push_back(std::move(nr));
    }
    Region tri;
    tri.circuit = flip ? std::vector<Passage>{{g[1], 1}, {g[0], -1}, {g[2], -1}}
                       : std::vector<Passage>{{g[2], 1}, {g[0], 1}, {g[1], -1}};
    regs.push_back(tri);

    // gleams are inherited; when a region's parity flips the smallest upward fix is applied
    std::vector<std::int64_t> inherited;
    for (auto& r : regs)
        inherited.push_back(r.gleam2);
    std::vector<Region> probe = regs;
    for (auto& r : probe)
        r.gleam2 = 0;
    BranchedShadow shape = [&] {
        try {
            return BranchedShadow::make(s.name(), V + 1, edges, probe, false);
        } catch (const ShadowError& err) {
            if (err.kind() == ErrorKind::Branching)
                fail(ErrorKind::Domain, cat("variant ", variant), "variant admits no branching");
            throw;
        }
    }();
    std::vector<std::int64_t> g2(regs.size());
    MoveLog local;
    local.move = cat("one_two vertex ", vertex, " variant ", variant);
    for (int r = 0; r < static_cast<int>(regs.size()); ++r) {
        bool fresh = r == static_cast<int>(regs.size()) - 1;
        g2[r] = fresh ? shape.z2_gleam(r) : parity_fix(inherited[r], shape.z2_gleam(r));
        std::string rule = fresh ? "new:z2" : g2[r] == inherited[r] ? "inherit" : "inherit+parity";
        local.transfers.push_back({r, fresh ? std::vector<int>{} : std::vector<int>{r}, fresh ? 0 : inherited[r], g2[r], rule});
    }
    if (log)
        *log = local;
    return shape.with_gleams(g2);
}

inline BranchedShadow join_all(BranchedShadow s) {
    for (bool changed = true; changed;) {
        changed = false;
        for (int e = 0; e < s.num_edges() && !changed; ++e) {
            std::vector<int> owners;
            for (auto p : s.passages_of(e))
                if (!s.preferred(p))
                    owners.push_back(p.region);
            if (owners[0] != owners[1]) {
                s = move_join_nonpreferred(s, e);
                changed = true;
            }
        }
    }
    return s;
}

inline BranchedShadow generate_pn(int n) {
    require(n >= 1, ErrorKind::Domain, cat("n=", n), "n must be positive");
    auto finish = [&](const BranchedShadow& s) {
        return s.with_gleams({s.z2_gleam(0)}).renamed(cat("P", n));
    };
    if (n == 1)
        return finish(fixture("mono1"));
    const int target = 2 * n - 1;
    std::function<std::optional<BranchedShadow>(const BranchedShadow&)> grow =
        [&](const BranchedShadow& s) -> std::optional<BranchedShadow> {
        if (s.num_vertices() == target) {
            if (s.num_regions() == 1)
                return s;
            return std::nullopt;
        }
        for (int v = 0; v < s.num_vertices(); ++v)
            for (int variant = 0; variant < 8; ++variant) {
                std::optional<BranchedShadow> next;
                try {
                    next = join_all(move_one_two(s, v, variant));
                } catch (const ShadowError& err) {
                    if (err.kind() != ErrorKind::Domain)
                        throw;
                    continue;
                }
                if (auto done = grow(*next))
                    return done;
            }
        return std::nullopt;
    };
    auto result = grow(fixture("seed2"));
    require(result.has_value(), ErrorKind::Internal, cat("n=", n), "generator exhausted its search");
    return finish(*result);
}

} // namespace shadowstein
