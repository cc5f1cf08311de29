#pragma once

#include "common.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace shadowstein {

struct SlotRef {
    int vertex = 0;
    int slot = 0;
    bool operator==(const SlotRef&) const = default;
};

struct Edge {
    SlotRef tail;
    SlotRef head;
};

// dir is +1 when the region runs along the edge from tail to head.
struct Passage {
    int edge = 0;
    int dir = 1;
    bool operator==(const Passage&) const = default;
};

struct Region {
    std::int64_t gleam2 = 0;
    std::vector<Passage> circuit;
    bool open = false;
};

struct PassageRef {
    int region = 0;
    int index = 0;
    bool operator==(const PassageRef&) const = default;
};

// scale 2 means values are stored doubled
struct Cochain {
    int degree = 0;
    int scale = 1;
    std::vector<std::int64_t> values;
};

struct EmbeddingData {
    std::vector<std::int64_t> iplus;
    std::vector<std::int64_t> iminus;
    std::vector<std::int64_t> u2;
};

// corners at a vertex are the six unordered slot pairs
inline int corner_id(int a, int b) {
    if (a > b)
        std::swap(a, b);
    static constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[a][b];
}

inline std::array<int, 2> corner_slots(int c) {
    static constexpr int table[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    return {table[c][0], table[c][1]};
}

// A region passes the vertex between passage `index` and the next one,
// entering through slot `enter` and leaving through slot `exit`.
struct Corner {
    PassageRef after;
    int enter = -1;
    int exit = -1;
};

struct VertexModel {
    std::array<bool, 4> incoming{};
    std::array<Corner, 6> corners{};
    // {in slot, out slot}, ordered by in slot
    std::array<std::array<int, 2>, 2> vertical{};
    // slots of the horizontal disc in counterclockwise order, starting at slot 0
    std::array<int, 4> ccw{};

    bool is_vertical(int c) const {
        return c == corner_id(vertical[0][0], vertical[0][1]) || c == corner_id(vertical[1][0], vertical[1][1]);
    }
    int vertical_of_slot(int s) const {
        return (vertical[0][0] == s || vertical[0][1] == s) ? 0 : 1;
    }
};

struct Sheet {
    PassageRef passage;
    int tail_corner = -1;
    int head_corner = -1;
};

struct BaseStats {
    int boundary_components = 0;
    int euler_characteristic = 0;
    int genus = 0;
};

class BranchedShadow {
public:
    // check_parity=false is for move code that sets gleams after the shape is known
    static BranchedShadow make(std::string name, int vertices, std::vector<Edge> edges, std::vector<Region> regions,
                               bool check_parity = true) {
        BranchedShadow s;
        s.check_parity_ = check_parity;
        s.name_ = std::move(name);
        s.V_ = vertices;
        s.edges_ = std::move(edges);
        s.regions_ = std::move(regions);
        s.derive();
        return s;
    }

    const std::string& name() const { return name_; }
    int num_vertices() const { return V_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_regions() const { return static_cast<int>(regions_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Region>& regions() const { return regions_; }
    const Edge& edge(int e) const { return edges_[e]; }
    const Region& region(int r) const { return regions_[r]; }
    const Passage& passage(PassageRef p) const { return regions_[p.region].circuit[p.index]; }

    // +1 when the branching orientation agrees with tail -> head
    int orientation(int e) const { return orient_[e]; }
    const std::array<PassageRef, 3>& passages_of(int e) const { return edge_passages_[e]; }
    bool preferred(PassageRef p) const { return passage(p).dir != orient_[passage(p).edge]; }
    const VertexModel& vertex(int v) const { return models_[v]; }
    const std::array<Sheet, 3>& sheets(int e) const { return sheets_[e]; }

    SlotRef start_of(const Passage& p) const { return p.dir > 0 ? edges_[p.edge].tail : edges_[p.edge].head; }
    SlotRef end_of(const Passage& p) const { return p.dir > 0 ? edges_[p.edge].head : edges_[p.edge].tail; }
    PassageRef next(PassageRef p) const {
        return {p.region, (p.index + 1) % static_cast<int>(regions_[p.region].circuit.size())};
    }
    PassageRef prev(PassageRef p) const {
        int n = static_cast<int>(regions_[p.region].circuit.size());
        return {p.region, (p.index + n - 1) % n};
    }

    // vertices where the vertical pairing was not forced
    const std::vector<int>& flagged_vertices() const { return flagged_; }

    int z2_gleam(int r) const { return z2_[r]; }
    const std::vector<int>& z2_gleams() const { return z2_; }

    std::vector<int> loop_edges() const {
        std::vector<int> out;
        for (int e = 0; e < num_edges(); ++e)
            if (edges_[e].tail.vertex == edges_[e].head.vertex)
                out.push_back(e);
        return out;
    }

    // regions that run along some edge more than once
    std::vector<int> self_adjacent_regions() const {
        std::vector<int> out;
        for (int r = 0; r < num_regions(); ++r) {
            std::set<int> seen;
            for (auto& p : regions_[r].circuit)
                if (!seen.insert(p.edge).second) {
                    out.push_back(r);
                    break;
                }
        }
        return out;
    }

    BranchedShadow with_gleams(const std::vector<std::int64_t>& gleam2) const {
        auto regs = regions_;
        for (size_t r = 0; r < regs.size(); ++r)
            regs[r].gleam2 = gleam2[r];
        return make(name_, V_, edges_, std::move(regs));
    }

    BranchedShadow renamed(std::string name) const {
        BranchedShadow s = *this;
        s.name_ = std::move(name);
        return s;
    }

    BaseStats abstract_base() const {
        // ribbon graph: discs at vertices with the horizontal cyclic order, untwisted strips along edges
        int n = 4 * V_;
        std::vector<int> other(n), rot(n);
        for (auto& e : edges_) {
            other[4 * e.tail.vertex + e.tail.slot] = 4 * e.head.vertex + e.head.slot;
            other[4 * e.head.vertex + e.head.slot] = 4 * e.tail.vertex + e.tail.slot;
        }
        for (int v = 0; v < V_; ++v)
            for (int k = 0; k < 4; ++k)
                rot[4 * v + models_[v].ccw[k]] = 4 * v + models_[v].ccw[(k + 1) % 4];
        std::vector<char> seen(n, 0);
        BaseStats st;
        for (int h = 0; h < n; ++h) {
            if (seen[h])
                continue;
            ++st.boundary_components;
            for (int x = h; !seen[x]; x = rot[other[x]])
                seen[x] = 1;
        }
        st.euler_characteristic = V_ - num_edges();
        st.genus = (2 - st.euler_characteristic - st.boundary_components) / 2;
        return st;
    }

private:
    std::string name_;
    int V_ = 0;
    std::vector<Edge> edges_;
    std::vector<Region> regions_;
    std::vector<int> orient_;
    std::vector<std::array<PassageRef, 3>> edge_passages_;
    std::vector<VertexModel> models_;
    std::vector<std::array<Sheet, 3>> sheets_;
    std::vector<int> z2_;
    std::vector<int> flagged_;
    bool check_parity_ = true;

    void derive() {
        const int E = num_edges();
        require(V_ >= 1, ErrorKind::NotStandard, "", "a standard shadow needs at least one vertex");
        require(!regions_.empty(), ErrorKind::Structure, "", "no regions");

        std::vector<int> slot_owner(4 * V_, -1);
        for (int e = 0; e < E; ++e) {
            for (const SlotRef* s : {&edges_[e].tail, &edges_[e].head}) {
                require(s->vertex >= 0 && s->vertex < V_, ErrorKind::Reference, cat("edge ", e),
                        cat("vertex ", s->vertex, " out of range"));
                require(s->slot >= 0 && s->slot < 4, ErrorKind::Reference, cat("edge ", e),
                        cat("slot ", s->slot, " out of range"));
                int& owner = slot_owner[4 * s->vertex + s->slot];
                require(owner < 0, ErrorKind::Structure, cat("vertex ", s->vertex, " slot ", s->slot),
                        cat("slot reused by edges ", owner, " and ", e));
                owner = e;
            }
        }
        for (int i = 0; i < 4 * V_; ++i)
            require(slot_owner[i] >= 0, ErrorKind::Structure, cat("vertex ", i / 4, " slot ", i % 4),
                    "slot has no edge");

        std::vector<std::vector<PassageRef>> on_edge(E);
        for (int r = 0; r < num_regions(); ++r) {
            auto& c = regions_[r].circuit;
            require(!c.empty(), ErrorKind::Structure, cat("region ", r), "empty circuit");
            for (int i = 0; i < static_cast<int>(c.size()); ++i) {
                require(c[i].edge >= 0 && c[i].edge < E, ErrorKind::Reference, cat("region ", r),
                        cat("dangling edge reference ", c[i].edge));
                require(c[i].dir == 1 || c[i].dir == -1, ErrorKind::Syntax, cat("region ", r), "bad direction");
                on_edge[c[i].edge].push_back({r, i});
            }
        }
        edge_passages_.assign(E, {});
        for (int e = 0; e < E; ++e) {
            require(on_edge[e].size() == 3, ErrorKind::Structure, cat("edge ", e),
                    cat("edge carries ", on_edge[e].size(), " region passages, expected 3"));
            std::copy(on_edge[e].begin(), on_edge[e].end(), edge_passages_[e].begin());
        }

        models_.assign(V_, VertexModel{});
        flagged_.clear();
        std::vector<std::array<bool, 6>> used(V_, std::array<bool, 6>{});
        for (int r = 0; r < num_regions(); ++r) {
            int n = static_cast<int>(regions_[r].circuit.size());
            for (int i = 0; i < n; ++i) {
                SlotRef a = end_of(regions_[r].circuit[i]);
                SlotRef b = start_of(regions_[r].circuit[(i + 1) % n]);
                require(a.vertex == b.vertex, ErrorKind::Structure, cat("region ", r, " passage ", i),
                        cat("circuit breaks between vertex ", a.vertex, " and vertex ", b.vertex));
                require(a.slot != b.slot, ErrorKind::Structure, cat("region ", r, " passage ", i),
                        "circuit turns back through the same slot");
                int c = corner_id(a.slot, b.slot);
                require(!used[a.vertex][c], ErrorKind::Structure, cat("vertex ", a.vertex),
                        cat("corner {", a.slot, ",", b.slot, "} covered twice"));
                used[a.vertex][c] = true;
                models_[a.vertex].corners[c] = Corner{{r, i}, a.slot, b.slot};
            }
        }
        for (int v = 0; v < V_; ++v)
            for (int c = 0; c < 6; ++c) {
                auto sl = corner_slots(c);
                require(used[v][c], ErrorKind::Structure, cat("vertex ", v),
                        cat("corner {", sl[0], ",", sl[1], "} not covered"));
            }

        orient_.assign(E, 0);
        for (int e = 0; e < E; ++e) {
            int sum = 0;
            for (auto p : edge_passages_[e])
                sum += passage(p).dir;
            require(sum == 1 || sum == -1, ErrorKind::Branching, cat("edge ", e),
                    "region orientations do not induce a 2:1 split");
            orient_[e] = sum;
        }

        for (int v = 0; v < V_; ++v)
            derive_vertex(v);
        check_connected();

        sheets_.assign(E, {});
        for (int e = 0; e < E; ++e)
            for (int k = 0; k < 3; ++k) {
                PassageRef p = edge_passages_[e][k];
                const Passage& ps = passage(p);
                int before = end_of(passage(prev(p))).slot;
                int after = start_of(passage(next(p))).slot;
                Sheet sh;
                sh.passage = p;
                if (ps.dir > 0) {
                    sh.tail_corner = corner_id(before, edges_[e].tail.slot);
                    sh.head_corner = corner_id(edges_[e].head.slot, after);
                } else {
                    sh.head_corner = corner_id(before, edges_[e].head.slot);
                    sh.tail_corner = corner_id(edges_[e].tail.slot, after);
                }
                sheets_[e][k] = sh;
            }

        z2_.assign(num_regions(), 0);
        for (int r = 0; r < num_regions(); ++r) {
            z2_[r] = compute_z2(r);
            if (check_parity_)
                require(mod2(regions_[r].gleam2) == z2_[r], ErrorKind::Parity, cat("region ", r),
                    cat("gleam2 ", regions_[r].gleam2, " has the wrong parity, Z2-gleam is ", z2_[r]));
        }
    }

    void derive_vertex(int v) {
        VertexModel& m = models_[v];
        for (int e = 0; e < num_edges(); ++e) {
            if (edges_[e].head.vertex == v)
                m.incoming[edges_[e].head.slot] = orient_[e] > 0;
            if (edges_[e].tail.vertex == v)
                m.incoming[edges_[e].tail.slot] = orient_[e] < 0;
        }
        std::vector<int> ins, outs;
        for (int s = 0; s < 4; ++s)
            (m.incoming[s] ? ins : outs).push_back(s);
        require(ins.size() == 2, ErrorKind::Branching, cat("vertex ", v), "vertex is not 2-in-2-out");

        int found = 0;
        for (int swap = 0; swap < 2; ++swap) {
            int b0 = outs[swap], b1 = outs[1 - swap];
            const Corner& c0 = m.corners[corner_id(ins[0], b0)];
            const Corner& c1 = m.corners[corner_id(ins[1], b1)];
            if (c0.enter == ins[0] && c1.enter == ins[1]) {
                if (found == 0)
                    m.vertical = {{{ins[0], b0}, {ins[1], b1}}};
                ++found;
            }
        }
        require(found > 0, ErrorKind::Branching, cat("vertex ", v), "no pair of vertical corners");
        if (found > 1)
            flagged_.push_back(v);

        std::array<int, 4> pred{-1, -1, -1, -1};
        for (int c = 0; c < 6; ++c) {
            if (m.is_vertical(c))
                continue;
            require(pred[m.corners[c].exit] < 0, ErrorKind::Branching, cat("vertex ", v),
                    "horizontal corners do not form a cycle");
            pred[m.corners[c].exit] = m.corners[c].enter;
        }
        m.ccw[0] = 0;
        for (int k = 1; k < 4; ++k)
            m.ccw[k] = pred[m.ccw[k - 1]];
        require(pred[m.ccw[3]] == 0, ErrorKind::Branching, cat("vertex ", v),
                "horizontal corners do not form a cycle");
    }

    void check_connected() {
        std::vector<int> parent(V_);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        for (auto& e : edges_)
            parent[find(e.tail.vertex)] = find(e.head.vertex);
        for (int v = 1; v < V_; ++v)
            require(find(v) == find(0), ErrorKind::NotStandard, cat("vertex ", v), "singular graph is disconnected");
    }

    int sheet_index(int e, PassageRef p) const {
        for (int k = 0; k < 3; ++k)
            if (edge_passages_[e][k] == p)
                return k;
        fail(ErrorKind::Internal, cat("edge ", e), "passage not on edge");
    }

    // Follow the two other sheets around the circuit. Crossing a vertex at corner
    // {s,s'} carries the sheet at corner {s,x} to the sheet at corner {s',x}.
    int compute_z2(int r) const {
        const auto& c = regions_[r].circuit;
        int n = static_cast<int>(c.size());
        std::array<int, 2> state{}, init{};
        {
            int e = c[0].edge, j = 0;
            for (int k = 0; k < 3; ++k)
                if (!(edge_passages_[e][k] == PassageRef{r, 0}))
                    state[j++] = k;
            init = state;
        }
        for (int i = 0; i < n; ++i) {
            const Passage& p = c[i];
            const Passage& q = c[(i + 1) % n];
            SlotRef at = end_of(p);
            int s2 = start_of(q).slot;
            PassageRef self{r, (i + 1) % n};
            std::array<int, 2> next_state{};
            for (int j = 0; j < 2; ++j) {
                const Sheet& sh = sheets_[p.edge][state[j]];
                auto slots = corner_slots(p.dir > 0 ? sh.head_corner : sh.tail_corner);
                int x = slots[0] == at.slot ? slots[1] : slots[0];
                int target = corner_id(s2, x);
                int hit = -1;
                for (int k = 0; k < 3; ++k) {
                    const Sheet& t = sheets_[q.edge][k];
                    if (t.passage == self)
                        continue;
                    if ((q.dir > 0 ? t.tail_corner : t.head_corner) == target)
                        hit = k;
                }
                require(hit >= 0, ErrorKind::Internal, cat("region ", r), "sheet lost while transporting");
                next_state[j] = hit;
            }
            state = next_state;
        }
        return state == init ? 0 : 1;
    }
};

// ---------------------------------------------------------------------------
// .bsh text format

struct ShadowFile {
    BranchedShadow shadow;
    std::optional<EmbeddingData> embedding;
};

namespace detail {

struct Token {
    std::string text;
    int line = 0;
    int col = 0;
    std::string locus() const { return cat("line ", line, " col ", col); }
};

inline std::vector<std::vector<Token>> tokenize_lines(const std::string& text) {
    std::vector<std::vector<Token>> out;
    int line = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string::npos)
            nl = text.size();
        ++line;
        std::string raw = text.substr(pos, nl - pos);
        size_t hash = raw.find('#');
        if (hash != std::string::npos)
            raw.resize(hash);
        std::vector<Token> toks;
        size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j])))
                ++j;
            toks.push_back({raw.substr(i, j - i), line, static_cast<int>(i) + 1});
            i = j;
        }
        if (!toks.empty())
            out.push_back(std::move(toks));
        pos = nl + 1;
    }
    return out;
}

inline std::int64_t parse_int(const Token& t) {
    const std::string& s = t.text;
    size_t i = (s.size() > 1 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    require(i < s.size() && s.size() - i <= 18 &&
                std::all_of(s.begin() + i, s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }),
            ErrorKind::Syntax, t.locus(), cat("expected an integer, got '", s, "'"));
    return std::stoll(s);
}

inline SlotRef parse_slot(const Token& t) {
    size_t dot = t.text.find('.');
    require(dot != std::string::npos, ErrorKind::Syntax, t.locus(), cat("expected vertex.slot, got '", t.text, "'"));
    Token a{t.text.substr(0, dot), t.line, t.col};
    Token b{t.text.substr(dot + 1), t.line, t.col + static_cast<int>(dot) + 1};
    return {static_cast<int>(parse_int(a)), static_cast<int>(parse_int(b))};
}

inline Passage parse_passage(const Token& t) {
    require(t.text.size() >= 2 && (t.text.back() == '+' || t.text.back() == '-'), ErrorKind::Syntax, t.locus(),
            cat("expected <edge>+ or <edge>-, got '", t.text, "'"));
    Token num{t.text.substr(0, t.text.size() - 1), t.line, t.col};
    return {static_cast<int>(parse_int(num)), t.text.back() == '+' ? 1 : -1};
}

inline void expect_count(const std::vector<Token>& l, size_t n) {
    if (l.size() != n)
        fail(ErrorKind::Syntax, l.size() > n ? l[n].locus() : l.back().locus(),
             cat("'", l[0].text, "' expects ", n - 1, " arguments"));
}

template <typename T>
void place(std::vector<std::optional<T>>& slots, const Token& idtok, T value, const char* what) {
    std::int64_t id = parse_int(idtok);
    require(id >= 0 && id < 1000000, ErrorKind::Syntax, idtok.locus(), cat(what, " id out of range"));
    if (static_cast<size_t>(id) >= slots.size())
        slots.resize(id + 1);
    require(!slots[id], ErrorKind::Syntax, idtok.locus(), cat("duplicate ", what, " ", id));
    slots[id] = std::move(value);
}

template <typename T>
std::vector<T> densify(std::vector<std::optional<T>>& slots, const char* what) {
    std::vector<T> out;
    for (size_t i = 0; i < slots.size(); ++i) {
        require(slots[i].has_value(), ErrorKind::Reference, cat(what, " ", i), cat(what, " ids must be 0..n-1"));
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

} // namespace detail

inline ShadowFile parse_bsh(const std::string& text) {
    using namespace detail;
    auto lines = tokenize_lines(text);
    require(!lines.empty(), ErrorKind::Syntax, "line 1", "empty input");
    std::string name;
    std::optional<int> V;
    std::vector<std::optional<Edge>> edges;
    std::vector<std::optional<Region>> regions;
    std::vector<std::pair<Token, std::int64_t>> opens;
    std::optional<EmbeddingData> emb;
    std::vector<std::tuple<std::string, Token, std::int64_t>> emb_entries;
    bool in_embedding = false;

    for (auto& l : lines) {
        const std::string& kw = l[0].text;
        if (kw == "[embedding]") {
            expect_count(l, 1);
            require(!in_embedding, ErrorKind::Syntax, l[0].locus(), "duplicate [embedding] section");
            in_embedding = true;
            emb.emplace();
            continue;
        }
        if (in_embedding) {
            require(kw == "iplus" || kw == "iminus" || kw == "u2", ErrorKind::Syntax, l[0].locus(),
                    cat("unknown embedding key '", kw, "'"));
            expect_count(l, 3);
            emb_entries.emplace_back(kw, l[1], parse_int(l[2]));
            continue;
        }
        if (kw == "shadow") {
            expect_count(l, 2);
            require(name.empty(), ErrorKind::Syntax, l[0].locus(), "duplicate shadow header");
            name = l[1].text;
        } else if (kw == "vertices") {
            expect_count(l, 2);
            require(!V, ErrorKind::Syntax, l[0].locus(), "duplicate vertices line");
            std::int64_t n = parse_int(l[1]);
            require(n >= 0 && n < 100000, ErrorKind::Syntax, l[1].locus(), "vertex count out of range");
            V = static_cast<int>(n);
        } else if (kw == "edge") {
            expect_count(l, 4);
            place(edges, l[1], Edge{parse_slot(l[2]), parse_slot(l[3])}, "edge");
        } else if (kw == "region") {
            require(l.size() >= 6, ErrorKind::Syntax, l.back().locus(),
                    "region line needs: region <id> gleam2 <int> circuit <passages>");
            require(l[2].text == "gleam2", ErrorKind::Syntax, l[2].locus(), "expected 'gleam2'");
            require(l[4].text == "circuit", ErrorKind::Syntax, l[4].locus(), "expected 'circuit'");
            Region r;
            r.gleam2 = parse_int(l[3]);
            for (size_t i = 5; i < l.size(); ++i)
                r.circuit.push_back(parse_passage(l[i]));
            place(regions, l[1], std::move(r), "region");
        } else if (kw == "open") {
            expect_count(l, 2);
            opens.emplace_back(l[1], parse_int(l[1]));
        } else {
            fail(ErrorKind::Syntax, l[0].locus(), cat("unknown keyword '", kw, "'"));
        }
    }
    require(!name.empty(), ErrorKind::Syntax, "line 1", "missing 'shadow <name>' header");
    require(V.has_value(), ErrorKind::Syntax, "", "missing 'vertices' line");
    auto E = densify(edges, "edge");
    auto R = densify(regions, "region");
    for (auto& [tok, id] : opens) {
        require(id >= 0 && id < static_cast<std::int64_t>(R.size()), ErrorKind::Reference, tok.locus(),
                "open marks an unknown region");
        R[id].open = true;
    }
    ShadowFile f{BranchedShadow::make(name, *V, std::move(E), std::move(R)), std::nullopt};
    if (emb) {
        int F = f.shadow.num_regions(), NE = f.shadow.num_edges();
        emb->iplus.assign(F, 0);
        emb->iminus.assign(F, 0);
        emb->u2.assign(NE, 0);
        for (auto& [key, tok, val] : emb_entries) {
            std::int64_t id = parse_int(tok);
            auto& vec = key == "iplus" ? emb->iplus : key == "iminus" ? emb->iminus : emb->u2;
            require(id >= 0 && id < static_cast<std::int64_t>(vec.size()), ErrorKind::Reference, tok.locus(),
                    cat(key, " refers to unknown id ", id));
            vec[id] = val;
        }
        f.embedding = std::move(emb);
    }
    return f;
}

inline std::string serialize_bsh(const BranchedShadow& s, const std::optional<EmbeddingData>& emb = std::nullopt) {
    std::ostringstream os;
    os << "shadow " << s.name() << "\n";
    os << "vertices " << s.num_vertices() << "\n";
    for (int e = 0; e < s.num_edges(); ++e) {
        auto& ed = s.edge(e);
        os << "edge " << e << " " << ed.tail.vertex << "." << ed.tail.slot << " " << ed.head.vertex << "."
           << ed.head.slot << "\n";
    }
    for (int r = 0; r < s.num_regions(); ++r) {
        os << "region " << r << " gleam2 " << s.region(r).gleam2 << " circuit";
        for (auto& p : s.region(r).circuit)
            os << " " << p.edge << (p.dir > 0 ? "+" : "-");
        os << "\n";
    }
    for (int r = 0; r < s.num_regions(); ++r)
        if (s.region(r).open)
            os << "open " << r << "\n";
    if (emb) {
        os << "[embedding]\n";
        for (size_t r = 0; r < emb->iplus.size(); ++r)
            os << "iplus " << r << " " << emb->iplus[r] << "\n";
        for (size_t r = 0; r < emb->iminus.size(); ++r)
            os << "iminus " << r << " " << emb->iminus[r] << "\n";
        for (size_t e = 0; e < emb->u2.size(); ++e)
            os << "u2 " << e << " " << emb->u2[e] << "\n";
    }
    return os.str();
}

} // namespace shadowstein
