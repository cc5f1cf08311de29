#pragma once

#include "shadow.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace shadowstein {

// "c:i+" is the end of arc c:i where it leaves a crossing, "c:i-" the end where it arrives.
struct HalfEdge {
    int curve = 0;
    int arc = 0;
    bool out = true;
    bool operator==(const HalfEdge&) const = default;
    auto operator<=>(const HalfEdge&) const = default;
};

// arc traversed forward (+) or backward (-); the face lies on the left
struct Dart {
    int curve = 0;
    int arc = 0;
    bool forward = true;
    bool operator==(const Dart&) const = default;
    auto operator<=>(const Dart&) const = default;
};

struct FrontCurve {
    bool ccw = true;
    bool coorient_left = true; // at the start of arc 0
    std::vector<int> path;     // crossings visited; arc i runs from path[i] to path[i+1]
    int num_arcs() const { return path.empty() ? 1 : static_cast<int>(path.size()); }
};

struct Cusp {
    int curve = 0;
    int arc = 0;
    bool left = true; // points into the face on the left of the curve
};

struct Crossing {
    std::array<HalfEdge, 4> ccw;
    HalfEdge over; // outgoing end of the over strand
};

struct Face {
    bool outer = false;
    std::vector<std::vector<Dart>> walks;
    int euler_characteristic() const { return 2 - static_cast<int>(walks.size()); }
};

struct FrontDiagram {
    std::string name;
    std::vector<FrontCurve> curves;
    std::vector<Cusp> cusps;
    std::vector<Crossing> crossings;
    std::vector<Face> faces;
};

inline std::string token_of(const HalfEdge& h) { return cat(h.curve, ":", h.arc, h.out ? "+" : "-"); }
inline std::string token_of(const Dart& d) { return cat(d.curve, ":", d.arc, d.forward ? "+" : "-"); }

// Derived combinatorics of a validated front.
class FrontMap {
public:
    explicit FrontMap(FrontDiagram d) : d_(std::move(d)) { validate(); }

    const FrontDiagram& diagram() const { return d_; }
    int face_of(const Dart& d) const { return face_of_.at(d); }
    int outer_face() const { return outer_; }
    int position(int x, const HalfEdge& h) const {
        for (int k = 0; k < 4; ++k)
            if (d_.crossings[x].ccw[k] == h)
                return k;
        return -1;
    }
    // crossing at the start / end of an arc; -1 for a crossingless curve
    int start_of(int c, int i) const {
        auto& p = d_.curves[c].path;
        return p.empty() ? -1 : p[i];
    }
    int end_of(int c, int i) const {
        auto& p = d_.curves[c].path;
        return p.empty() ? -1 : p[(i + 1) % p.size()];
    }
    // face in the sector from ccw[k] to ccw[k+1]
    int corner_face(int x, int k) const {
        const HalfEdge& h = d_.crossings[x].ccw[(k + 1) % 4];
        return face_of(Dart{h.curve, h.arc, !h.out});
    }
    // outgoing ends of the two strands
    std::array<HalfEdge, 2> strands(int x) const {
        std::array<HalfEdge, 2> s{};
        int n = 0;
        for (auto& h : d_.crossings[x].ccw)
            if (h.out)
                s[n++] = h;
        return s;
    }
    HalfEdge under(int x) const {
        auto s = strands(x);
        return s[0] == d_.crossings[x].over ? s[1] : s[0];
    }
    bool corner_left_of(int x, int k, const HalfEdge& out) const {
        int p = position(x, out);
        return k == p || k == (p + 1) % 4;
    }
    int sign(int x) const {
        int po = position(x, d_.crossings[x].over), pu = position(x, under(x));
        return pu == (po + 1) % 4 ? 1 : -1;
    }
    bool self_crossing(int x) const {
        auto s = strands(x);
        return s[0].curve == s[1].curve;
    }
    std::vector<int> repeated_corner_crossings() const {
        std::vector<int> out;
        for (int x = 0; x < static_cast<int>(d_.crossings.size()); ++x) {
            std::set<int> f;
            for (int k = 0; k < 4; ++k)
                f.insert(corner_face(x, k));
            if (f.size() < 4)
                out.push_back(x);
        }
        return out;
    }
    int components() const { return components_; }
    // winding number of curve c around every face (outer face 0, left side higher)
    std::vector<int> winding(int c) const;
    std::vector<int> winding() const;
    // rotation number of the curve after rounding its cusps
    std::int64_t rotation(int c) const;

private:
    FrontDiagram d_;
    std::map<Dart, int> face_of_;
    int outer_ = -1;
    int components_ = 0;

    void validate();
    Dart next_dart(const Dart& d) const {
        int x = d.forward ? end_of(d.curve, d.arc) : start_of(d.curve, d.arc);
        if (x < 0)
            return d;
        HalfEdge arrival{d.curve, d.arc, !d.forward};
        int k = position(x, arrival);
        const HalfEdge& h = d_.crossings[x].ccw[(k + 3) % 4];
        return Dart{h.curve, h.arc, h.out};
    }
};

inline void FrontMap::validate() {
    const int C = static_cast<int>(d_.curves.size());
    const int X = static_cast<int>(d_.crossings.size());
    for (int c = 0; c < C; ++c)
        for (int x : d_.curves[c].path)
            require(x >= 0 && x < X, ErrorKind::Reference, cat("curve ", c), cat("unknown crossing ", x));
    auto arc_ok = [&](int c, int i) { return c >= 0 && c < C && i >= 0 && i < d_.curves[c].num_arcs(); };

    // half-edges sit where the paths say
    std::set<HalfEdge> seen;
    for (int x = 0; x < X; ++x) {
        const auto& cr = d_.crossings[x];
        for (auto& h : cr.ccw) {
            require(arc_ok(h.curve, h.arc) && !d_.curves[h.curve].path.empty(), ErrorKind::Reference,
                    cat("crossing ", x), cat("half-edge ", token_of(h), " names no arc"));
            require(seen.insert(h).second, ErrorKind::Structure, cat("crossing ", x),
                    cat("half-edge ", token_of(h), " used twice"));
            int at = h.out ? start_of(h.curve, h.arc) : end_of(h.curve, h.arc);
            require(at == x, ErrorKind::Structure, cat("crossing ", x),
                    cat("half-edge ", token_of(h), " belongs to crossing ", at));
        }
        require(cr.over.out && position(x, cr.over) >= 0, ErrorKind::Reference, cat("crossing ", x),
                "'over' must name an outgoing half-edge of this crossing");
    }
    for (int c = 0; c < C; ++c) {
        const auto& p = d_.curves[c].path;
        for (int i = 0; i < static_cast<int>(p.size()); ++i) {
            int j = (i + 1) % p.size();
            int x = p[j];
            int a = position(x, {c, i, false}), b = position(x, {c, j, true});
            require(a >= 0 && b >= 0, ErrorKind::Structure, cat("crossing ", x),
                    cat("curve ", c, " passes without both half-edges listed"));
            require((a + 2) % 4 == b, ErrorKind::Structure, cat("crossing ", x),
                    cat("curve ", c, " does not go straight through"));
        }
    }

    std::vector<int> cusp_count(C, 0);
    for (size_t k = 0; k < d_.cusps.size(); ++k) {
        const auto& q = d_.cusps[k];
        require(arc_ok(q.curve, q.arc), ErrorKind::Reference, cat("cusp ", k), "cusp sits on an unknown arc");
        ++cusp_count[q.curve];
    }
    // the coorientation flips at each cusp and must close up
    for (int c = 0; c < C; ++c)
        require(cusp_count[c] % 2 == 0, ErrorKind::Parity, cat("curve ", c),
                cat("odd number of cusps (", cusp_count[c], "): coorientation does not close up"));

    // faces
    for (int f = 0; f < static_cast<int>(d_.faces.size()); ++f) {
        const auto& face = d_.faces[f];
        if (face.outer) {
            require(outer_ < 0, ErrorKind::Structure, cat("face ", f), "more than one outer face");
            outer_ = f;
        }
        for (auto& w : face.walks) {
            require(!w.empty(), ErrorKind::Structure, cat("face ", f), "empty boundary walk");
            for (size_t i = 0; i < w.size(); ++i) {
                const Dart& dt = w[i];
                require(arc_ok(dt.curve, dt.arc), ErrorKind::Reference, cat("face ", f),
                        cat("dart ", token_of(dt), " names no arc"));
                require(face_of_.emplace(dt, f).second, ErrorKind::Structure, cat("face ", f),
                        cat("side ", token_of(dt), " already bounds another face"));
                const Dart& nx = w[(i + 1) % w.size()];
                require(next_dart(dt) == nx, ErrorKind::Structure, cat("face ", f),
                        cat("walk turns wrongly after ", token_of(dt)));
            }
        }
    }
    require(outer_ >= 0, ErrorKind::Structure, "", "no outer face");
    int sides = 0;
    for (int c = 0; c < C; ++c)
        sides += 2 * d_.curves[c].num_arcs();
    require(static_cast<int>(face_of_.size()) == sides, ErrorKind::Structure, "",
            "some side of an arc bounds no face");

    // components of the planar map; a crossingless curve counts one dummy vertex
    std::vector<int> parent(X + C);
    for (size_t i = 0; i < parent.size(); ++i)
        parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    int V = X, E = 0;
    std::set<int> nodes;
    for (int c = 0; c < C; ++c) {
        const auto& p = d_.curves[c].path;
        E += d_.curves[c].num_arcs();
        if (p.empty()) {
            ++V;
            nodes.insert(X + c);
            continue;
        }
        for (size_t i = 0; i < p.size(); ++i) {
            nodes.insert(p[i]);
            parent[find(p[i])] = find(p[(i + 1) % p.size()]);
        }
    }
    std::set<int> roots;
    for (int n : nodes)
        roots.insert(find(n));
    components_ = static_cast<int>(roots.size());
    int F = static_cast<int>(d_.faces.size());
    require(V - E + F == 1 + components_, ErrorKind::Structure, "",
            cat("Euler count V-E+F = ", V - E + F, " but the map has ", components_, " components"));
    for (int c = 0; c < C; ++c) {
        auto rot = rotation(c);
        require(rot == 0 || (rot > 0) == d_.curves[c].ccw, ErrorKind::Structure, cat("curve ", c),
                cat("declared ", d_.curves[c].ccw ? "ccw" : "cw", " but the rotation number is ", rot));
    }
}

inline std::vector<int> FrontMap::winding(int c) const {
    const int F = static_cast<int>(d_.faces.size());
    std::vector<std::optional<int>> w(F);
    w[outer_] = 0;
    // left face = right face + 1 across every arc of curve c, unchanged across other curves
    for (bool changed = true; changed;) {
        changed = false;
        for (int cc = 0; cc < static_cast<int>(d_.curves.size()); ++cc)
            for (int i = 0; i < d_.curves[cc].num_arcs(); ++i) {
                int l = face_of({cc, i, true}), r = face_of({cc, i, false});
                int step = cc == c ? 1 : 0;
                if (w[r] && !w[l]) {
                    w[l] = *w[r] + step;
                    changed = true;
                } else if (w[l] && !w[r]) {
                    w[r] = *w[l] - step;
                    changed = true;
                } else if (w[l] && w[r]) {
                    require(*w[l] == *w[r] + step, ErrorKind::Structure, cat("curve ", cc, " arc ", i),
                            "winding numbers are inconsistent");
                }
            }
    }
    std::vector<int> out(F);
    for (int f = 0; f < F; ++f) {
        require(w[f].has_value(), ErrorKind::Structure, cat("face ", f), "face not reachable from the outer face");
        out[f] = *w[f];
    }
    return out;
}

inline std::vector<int> FrontMap::winding() const {
    std::vector<int> total(d_.faces.size(), 0);
    for (int c = 0; c < static_cast<int>(d_.curves.size()); ++c) {
        auto w = winding(c);
        for (size_t f = 0; f < w.size(); ++f)
            total[f] += w[f];
    }
    return total;
}

inline std::int64_t FrontMap::rotation(int c) const {
    auto w = winding(c);
    std::int64_t four = 0;
    for (size_t f = 0; f < d_.faces.size(); ++f)
        four += 4 * static_cast<std::int64_t>(w[f]) * d_.faces[f].euler_characteristic();
    for (int x = 0; x < static_cast<int>(d_.crossings.size()); ++x)
        for (int k = 0; k < 4; ++k)
            four -= w[corner_face(x, k)];
    require(four % 4 == 0, ErrorKind::Internal, cat("curve ", c), "rotation number is not an integer");
    return four / 4;
}

// ---------------------------------------------------------------------------
// .fr text format

namespace detail {

inline std::pair<int, int> parse_arc(const Token& t) {
    size_t colon = t.text.find(':');
    require(colon != std::string::npos, ErrorKind::Syntax, t.locus(), cat("expected <curve>:<arc>, got '", t.text, "'"));
    Token a{t.text.substr(0, colon), t.line, t.col};
    Token b{t.text.substr(colon + 1), t.line, t.col + static_cast<int>(colon) + 1};
    return {static_cast<int>(parse_int(a)), static_cast<int>(parse_int(b))};
}

inline std::pair<std::pair<int, int>, bool> parse_signed_arc(const Token& t) {
    require(t.text.size() >= 4 && (t.text.back() == '+' || t.text.back() == '-'), ErrorKind::Syntax, t.locus(),
            cat("expected <curve>:<arc>+ or -, got '", t.text, "'"));
    Token body{t.text.substr(0, t.text.size() - 1), t.line, t.col};
    return {parse_arc(body), t.text.back() == '+'};
}

inline bool parse_lr(const Token& t) {
    require(t.text == "L" || t.text == "R", ErrorKind::Syntax, t.locus(), cat("expected L or R, got '", t.text, "'"));
    return t.text == "L";
}

} // namespace detail

inline FrontDiagram parse_fr(const std::string& text) {
    using namespace detail;
    auto lines = tokenize_lines(text);
    require(!lines.empty(), ErrorKind::Syntax, "line 1", "empty input");
    FrontDiagram d;
    std::vector<std::optional<FrontCurve>> curves;
    std::vector<std::optional<Cusp>> cusps;
    std::vector<std::optional<Crossing>> crossings;
    std::vector<std::optional<Face>> faces;
    for (auto& l : lines) {
        const std::string& kw = l[0].text;
        if (kw == "front") {
            expect_count(l, 2);
            require(d.name.empty(), ErrorKind::Syntax, l[0].locus(), "duplicate front header");
            d.name = l[1].text;
        } else if (kw == "curve") {
            require(l.size() >= 7 && l[2].text == "oriented" && l[4].text == "coorient" && l[6].text == "path",
                    ErrorKind::Syntax, l[0].locus(),
                    "curve line needs: curve <id> oriented <cw|ccw> coorient <L|R> path <crossings>");
            require(l[3].text == "cw" || l[3].text == "ccw", ErrorKind::Syntax, l[3].locus(), "expected cw or ccw");
            FrontCurve c;
            c.ccw = l[3].text == "ccw";
            c.coorient_left = parse_lr(l[5]);
            for (size_t i = 7; i < l.size(); ++i)
                c.path.push_back(static_cast<int>(parse_int(l[i])));
            place(curves, l[1], c, "curve");
        } else if (kw == "cusp") {
            expect_count(l, 6);
            require(l[2].text == "on" && l[4].text == "side", ErrorKind::Syntax, l[0].locus(),
                    "cusp line needs: cusp <id> on <curve>:<arc> side <L|R>");
            auto [c, i] = parse_arc(l[3]);
            place(cusps, l[1], Cusp{c, i, parse_lr(l[5])}, "cusp");
        } else if (kw == "crossing") {
            expect_count(l, 9);
            require(l[2].text == "ccw" && l[7].text == "over", ErrorKind::Syntax, l[0].locus(),
                    "crossing line needs: crossing <id> ccw <h1> <h2> <h3> <h4> over <curve>:<arc>");
            Crossing cr;
            for (int k = 0; k < 4; ++k) {
                auto [ci, out] = parse_signed_arc(l[3 + k]);
                cr.ccw[k] = {ci.first, ci.second, out};
            }
            auto [c, i] = parse_arc(l[8]);
            cr.over = {c, i, true};
            place(crossings, l[1], cr, "crossing");
        } else if (kw == "face") {
            require(l.size() >= 2, ErrorKind::Syntax, l[0].locus(), "face line needs an id");
            Face f;
            size_t i = 2;
            if (i < l.size() && l[i].text == "outer") {
                f.outer = true;
                ++i;
            }
            f.walks.emplace_back();
            for (; i < l.size(); ++i) {
                if (l[i].text == "|") {
                    f.walks.emplace_back();
                    continue;
                }
                auto [ci, fwd] = parse_signed_arc(l[i]);
                f.walks.back().push_back({ci.first, ci.second, fwd});
            }
            if (f.walks.size() == 1 && f.walks[0].empty())
                f.walks.clear();
            place(faces, l[1], f, "face");
        } else {
            fail(ErrorKind::Syntax, l[0].locus(), cat("unknown keyword '", kw, "'"));
        }
    }
    require(!d.name.empty(), ErrorKind::Syntax, "line 1", "missing 'front <name>' header");
    d.curves = densify(curves, "curve");
    d.cusps = densify(cusps, "cusp");
    d.crossings = densify(crossings, "crossing");
    d.faces = densify(faces, "face");
    return d;
}

inline std::string serialize_fr(const FrontDiagram& d) {
    std::ostringstream os;
    os << "front " << d.name << "\n";
    for (size_t c = 0; c < d.curves.size(); ++c) {
        auto& cv = d.curves[c];
        os << "curve " << c << " oriented " << (cv.ccw ? "ccw" : "cw") << " coorient " << (cv.coorient_left ? "L" : "R")
           << " path";
        for (int x : cv.path)
            os << " " << x;
        os << "\n";
    }
    for (size_t k = 0; k < d.cusps.size(); ++k)
        os << "cusp " << k << " on " << d.cusps[k].curve << ":" << d.cusps[k].arc << " side "
           << (d.cusps[k].left ? "L" : "R") << "\n";
    for (size_t x = 0; x < d.crossings.size(); ++x) {
        os << "crossing " << x << " ccw";
        for (auto& h : d.crossings[x].ccw)
            os << " " << token_of(h);
        os << " over " << d.crossings[x].over.curve << ":" << d.crossings[x].over.arc << "\n";
    }
    for (size_t f = 0; f < d.faces.size(); ++f) {
        os << "face " << f << (d.faces[f].outer ? " outer" : "");
        for (size_t w = 0; w < d.faces[f].walks.size(); ++w) {
            if (w > 0)
                os << " |";
            for (auto& dt : d.faces[f].walks[w])
                os << " " << token_of(dt);
        }
        os << "\n";
    }
    return os.str();
}

// reflection of the plane; curve orientations are kept
inline FrontDiagram mirrored(const FrontDiagram& d) {
    FrontDiagram m = d;
    for (auto& c : m.curves) {
        c.ccw = !c.ccw;
        c.coorient_left = !c.coorient_left;
    }
    for (auto& q : m.cusps)
        q.left = !q.left;
    for (auto& x : m.crossings)
        std::reverse(x.ccw.begin(), x.ccw.end());
    for (auto& f : m.faces)
        for (auto& w : f.walks) {
            std::reverse(w.begin(), w.end());
            for (auto& dt : w)
                dt.forward = !dt.forward;
        }
    return m;
}

// ---------------------------------------------------------------------------

inline std::vector<int> cusp_signs(const FrontMap& m) {
    std::vector<int> s;
    for (auto& q : m.diagram().cusps)
        s.push_back(q.left ? 1 : -1);
    return s;
}

inline std::int64_t writhe(const FrontMap& m, int c) {
    std::int64_t w = 0;
    for (int x = 0; x < static_cast<int>(m.diagram().crossings.size()); ++x)
        if (m.self_crossing(x) && m.strands(x)[0].curve == c)
            w += m.sign(x);
    return w;
}

inline std::int64_t cusp_count(const FrontMap& m, int c) {
    std::int64_t n = 0;
    for (auto& q : m.diagram().cusps)
        n += q.curve == c;
    return n;
}

inline std::int64_t tb(const FrontMap& m, int c) {
    require(c >= 0 && c < static_cast<int>(m.diagram().curves.size()), ErrorKind::Reference, cat("curve ", c),
            "no such curve");
    std::int64_t k = cusp_count(m, c);
    require(k % 2 == 0, ErrorKind::Parity, cat("curve ", c), "odd cusp count");
    return writhe(m, c) - k / 2;
}

enum class CuspConvention { Statement, Proof };

// cusps carrying a hyperbolic complex point on each curve
inline std::vector<std::int64_t> hyperbolic_points(const FrontMap& m, CuspConvention conv) {
    std::vector<std::int64_t> out(m.diagram().curves.size(), 0);
    for (auto& q : m.diagram().cusps)
        if (q.left == (conv == CuspConvention::Proof))
            ++out[q.curve];
    return out;
}

// Local contributions in quarter units. Crossing corners are keyed by their side of
// the over strand, then of the under strand.
struct PolyakTable {
    int version = 0;
    int cusp_wedge = 0;
    int cusp_tip = 0;
    std::map<std::string, int> positive; // LL LR RL RR
    std::map<std::string, int> negative;
};

inline const char* default_polyak_json() {
    return R"({
  "format": "shadowstein-polyak",
  "version": 1,
  "units": "quarter",
  "cusp": { "wedge": 2, "tip": -2 },
  "crossing": {
    "positive": { "LL": 2, "LR": 0, "RL": 0, "RR": 2 },
    "negative": { "LL": 0, "LR": 2, "RL": 2, "RR": 0 }
  }
}
)";
}

inline PolyakTable parse_polyak_table(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Syntax, "polyak table", e.what());
    }
    auto need = [&](const nlohmann::json& obj, const char* key, const std::string& where) -> const nlohmann::json& {
        require(obj.is_object() && obj.contains(key), ErrorKind::Domain, "polyak table",
                cat("pattern missing from table: ", where, key));
        return obj.at(key);
    };
    auto as_int = [&](const nlohmann::json& v, const std::string& where) {
        require(v.is_number_integer(), ErrorKind::Syntax, "polyak table", cat(where, " must be an integer"));
        return v.get<int>();
    };
    require(need(j, "format", "").get<std::string>() == "shadowstein-polyak", ErrorKind::Syntax, "polyak table",
            "unrecognised format tag");
    require(need(j, "units", "").get<std::string>() == "quarter", ErrorKind::Syntax, "polyak table",
            "only quarter units are supported");
    PolyakTable t;
    t.version = as_int(need(j, "version", ""), "version");
    const auto& cusp = need(j, "cusp", "");
    t.cusp_wedge = as_int(need(cusp, "wedge", "cusp."), "cusp.wedge");
    t.cusp_tip = as_int(need(cusp, "tip", "cusp."), "cusp.tip");
    const auto& cr = need(j, "crossing", "");
    for (auto [key, dst] : {std::pair{"positive", &t.positive}, std::pair{"negative", &t.negative}}) {
        const auto& block = need(cr, key, "crossing.");
        for (const char* pat : {"LL", "LR", "RL", "RR"})
            (*dst)[pat] = as_int(need(block, pat, cat("crossing.", key, ".")), cat("crossing.", key, ".", pat));
    }
    return t;
}

inline const PolyakTable& default_polyak_table() {
    static const PolyakTable t = parse_polyak_table(default_polyak_json());
    return t;
}

struct PolyakGleams {
    std::vector<std::int64_t> quarters; // per face
    std::vector<std::int64_t> face2;    // per face; the outer face is left at 0
    std::vector<std::int64_t> curve2;   // per curve disc
};

inline PolyakGleams polyak_gleams(const FrontMap& m, const PolyakTable& t = default_polyak_table()) {
    const auto& d = m.diagram();
    PolyakGleams g;
    g.quarters.assign(d.faces.size(), 0);
    for (auto& q : d.cusps) {
        int lf = m.face_of({q.curve, q.arc, true}), rf = m.face_of({q.curve, q.arc, false});
        g.quarters[q.left ? lf : rf] += t.cusp_tip;
        g.quarters[q.left ? rf : lf] += t.cusp_wedge;
    }
    for (int x = 0; x < static_cast<int>(d.crossings.size()); ++x) {
        const auto& table = m.sign(x) > 0 ? t.positive : t.negative;
        HalfEdge over = d.crossings[x].over, under = m.under(x);
        for (int k = 0; k < 4; ++k) {
            std::string key = cat(m.corner_left_of(x, k, over) ? "L" : "R", m.corner_left_of(x, k, under) ? "L" : "R");
            g.quarters[m.corner_face(x, k)] += table.at(key);
        }
    }
    for (int f = 0; f < static_cast<int>(d.faces.size()); ++f) {
        if (f == m.outer_face()) {
            g.face2.push_back(0);
            continue;
        }
        std::int64_t q = g.quarters[f];
        require(q % 2 == 0, ErrorKind::Domain, cat("face ", f), "local contributions do not sum to a half-integer");
        g.face2.push_back(q / 2 - 2 * d.faces[f].euler_characteristic());
    }
    for (int c = 0; c < static_cast<int>(d.curves.size()); ++c)
        g.curve2.push_back(-cusp_count(m, c));
    return g;
}

// Regions: the faces in order (outer face capped and open), then one disc per curve.
// Vertices are crossings with slots in ccw order; edges are arcs, curve by curve.
struct CylinderShadow {
    BranchedShadow shadow;
    std::vector<std::vector<int>> edge_of_arc; // [curve][arc]
    int first_curve_region = 0;
};

inline CylinderShadow mapping_cylinder_shadow(const FrontMap& m, const PolyakTable& t = default_polyak_table()) {
    const auto& d = m.diagram();
    require(!d.crossings.empty(), ErrorKind::NotStandard, "", "front has no crossings: the singular set has no vertices");
    for (int c = 0; c < static_cast<int>(d.curves.size()); ++c)
        require(!d.curves[c].path.empty(), ErrorKind::NotStandard, cat("curve ", c),
                "crossingless curve gives a singular circle without vertices");
    require(m.components() == 1, ErrorKind::NotStandard, "", "front is disconnected: some region is not a disc");
    auto g = polyak_gleams(m, t);

    std::vector<std::vector<int>> edge_of_arc;
    std::vector<Edge> edges;
    for (int c = 0; c < static_cast<int>(d.curves.size()); ++c) {
        edge_of_arc.emplace_back();
        for (int i = 0; i < d.curves[c].num_arcs(); ++i) {
            int a = m.start_of(c, i), b = m.end_of(c, i);
            edge_of_arc[c].push_back(static_cast<int>(edges.size()));
            edges.push_back({{a, m.position(a, {c, i, true})}, {b, m.position(b, {c, i, false})}});
        }
    }
    std::vector<Region> regs;
    for (auto& f : d.faces) {
        require(f.walks.size() == 1, ErrorKind::NotStandard, "", "a face is not a disc");
        Region r;
        r.open = f.outer;
        for (auto& dt : f.walks[0])
            r.circuit.push_back({edge_of_arc[dt.curve][dt.arc], dt.forward ? 1 : -1});
        regs.push_back(std::move(r));
    }
    for (int c = 0; c < static_cast<int>(d.curves.size()); ++c) {
        Region r;
        for (int e : edge_of_arc[c])
            r.circuit.push_back({e, 1});
        regs.push_back(std::move(r));
    }
    auto shape = BranchedShadow::make(d.name, static_cast<int>(d.crossings.size()), edges, regs, false);
    std::vector<std::int64_t> g2;
    for (int f = 0; f < static_cast<int>(d.faces.size()); ++f)
        g2.push_back(f == m.outer_face() ? shape.z2_gleam(f) : g.face2[f]);
    for (auto v : g.curve2)
        g2.push_back(v);
    return {shape.with_gleams(g2), edge_of_arc, static_cast<int>(d.faces.size())};
}

// The core of the handle attached along curve c, capped by the faces it sweeps:
// coefficient 1 on the curve disc and minus the winding number on each face.
inline std::vector<std::int64_t> framing_cycle(const FrontMap& m, const CylinderShadow& cs, int c) {
    auto w = m.winding(c);
    std::vector<std::int64_t> z(cs.shadow.num_regions(), 0);
    for (size_t f = 0; f < w.size(); ++f)
        z[f] = -w[f];
    z[cs.first_curve_region + c] = 1;
    return z;
}

// sum of z_R^2 gleam2_R over closed regions
inline std::int64_t self_intersection2(const BranchedShadow& s, const std::vector<std::int64_t>& z) {
    std::int64_t q = 0;
    for (int r = 0; r < s.num_regions(); ++r)
        if (!s.region(r).open)
            q += z[r] * z[r] * s.region(r).gleam2;
    return q;
}

} // namespace shadowstein
