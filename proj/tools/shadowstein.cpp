#include "report.hpp"

#include <shadowstein/chain.hpp>
#include <shadowstein/fixtures.hpp>
#include <shadowstein/front.hpp>
#include <shadowstein/invariants.hpp>
#include <shadowstein/moves.hpp>
#include <shadowstein/stein.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace shadowstein;
using report::Json;
namespace fs = std::filesystem;

namespace {

enum Exit { Ok = 0, Negative = 1, Unknown = 2, InputError = 64, InternalError = 70 };

struct Options {
    std::string input;
    bool text = false;
    bool halves = false;
    bool timing = false;
    std::optional<std::int64_t> cap;
    std::int64_t ceiling = 4096;
    std::string cusp_convention = "proof";
    std::string polyak_path;
    std::string fixtures_dir;
    int n = 0;
    bool bsh = false;
    bool json = false;
    std::string cycle;
    std::string split;
    std::uint64_t mask = 0;
    std::uint64_t product_cap = 1'000'000;
};

struct Input {
    std::string source;
    std::string text;
};

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string fixtures_dir(const Options& o) {
    if (!o.fixtures_dir.empty())
        return o.fixtures_dir;
    if (const char* env = std::getenv("SHADOWSTEIN_FIXTURES"))
        return env;
    return "";
}

// a path, "-" for stdin, or a fixture name
Input load(const Options& o) {
    require(!o.input.empty(), ErrorKind::Syntax, "", "no input given");
    if (o.input == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return {"stdin", ss.str()};
    }
    if (fs::is_regular_file(o.input))
        return {o.input, read_file(o.input)};
    std::string dir = fixtures_dir(o);
    if (!dir.empty())
        for (const char* pattern : {"%", "%.bsh", "%.fr", "fronts/%.fr"}) {
            std::string rel = pattern;
            rel.replace(rel.find('%'), 1, o.input);
            fs::path p = fs::path(dir) / rel;
            if (fs::is_regular_file(p))
                return {"fixture:" + o.input, read_file(p)};
        }
    for (auto& [name, text] : fixture_catalog())
        if (name == o.input)
            return {"fixture:" + name, text};
    fail(ErrorKind::Reference, o.input, "no such file or fixture");
}

bool is_front(const std::string& text) {
    auto lines = detail::tokenize_lines(text);
    return !lines.empty() && lines[0][0].text == "front";
}

PolyakTable polyak(const Options& o) {
    if (o.polyak_path.empty())
        return default_polyak_table();
    require(fs::is_regular_file(o.polyak_path), ErrorKind::Reference, o.polyak_path, "polyak table not found");
    return parse_polyak_table(read_file(o.polyak_path));
}

CuspConvention convention(const Options& o) {
    require(o.cusp_convention == "proof" || o.cusp_convention == "statement", ErrorKind::Syntax, "--cusp-convention",
            "expected 'proof' or 'statement'");
    return o.cusp_convention == "proof" ? CuspConvention::Proof : CuspConvention::Statement;
}

MainteoOptions mainteo_options(const Options& o) {
    MainteoOptions m;
    m.cap = o.cap;
    m.ceiling = o.ceiling;
    return m;
}

std::vector<std::int64_t> parse_list(const std::string& s, const char* what) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        detail::Token t{item, 0, 0};
        try {
            out.push_back(detail::parse_int(t));
        } catch (const ShadowError&) {
            fail(ErrorKind::Syntax, what, cat("expected comma-separated integers, got '", s, "'"));
        }
    }
    return out;
}

Json shadow_summary(const BranchedShadow& s) {
    Json j;
    j["name"] = s.name();
    j["vertices"] = s.num_vertices();
    j["edges"] = s.num_edges();
    j["regions"] = s.num_regions();
    std::vector<int> open;
    for (int r = 0; r < s.num_regions(); ++r)
        if (s.region(r).open)
            open.push_back(r);
    j["open_regions"] = open;
    return j;
}

Json cochain_json(const Cochain& c) {
    return Json{{"degree", c.degree}, {"scale", c.scale}, {"values", c.values}};
}

int verdict_exit(Verdict v) { return v == Verdict::Feasible ? Ok : v == Verdict::Infeasible ? Negative : Unknown; }

Json mainteo_json(const MainteoResult& m) {
    Json j;
    j["verdict"] = verdict_name(m.verdict);
    j["cap"] = m.cap;
    if (m.verdict == Verdict::Feasible) {
        require(satisfies(m.problem, m.t), ErrorKind::Internal, "", "witness failed re-verification");
        j["choice_mask"] = m.mask;
        j["ud"] = m.ud;
        j["UD2"] = m.t;
        j["verified"] = true;
    }
    Json outs = Json::array();
    for (auto& o : m.outcomes) {
        Json e = report::solve_json(o.result);
        e["choice_mask"] = o.mask;
        e["ud"] = o.ud;
        outs.push_back(e);
    }
    j["choices"] = outs;
    j["constraints"] = report::problem_json(m.problem);
    return j;
}

Json certificate_json(const SteinCertificate& c) {
    Json j;
    j["UD2"] = c.t;
    j["k"] = c.k;
    j["hplus"] = c.hplus;
    j["hminus"] = c.hminus;
    j["class_shift"] = c.class_shift.values;
    j["p"] = c.p;
    j["gleam_recomputed"] = c.step3_holds;
    j["euler_is_1_minus_p"] = c.euler_matches_p;
    return j;
}

// --------------------------------------------------------------------------

int cmd_validate(const Options& o, const Input& in, Json& out) {
    if (is_front(in.text)) {
        FrontMap m(parse_fr(in.text));
        const auto& d = m.diagram();
        out["kind"] = "front";
        out["name"] = d.name;
        out["curves"] = d.curves.size();
        out["cusps"] = d.cusps.size();
        out["crossings"] = d.crossings.size();
        out["faces"] = d.faces.size();
        out["components"] = m.components();
        out["repeated_corner_crossings"] = m.repeated_corner_crossings();
        out["valid"] = true;
        return Ok;
    }
    auto f = parse_bsh(in.text);
    const auto& s = f.shadow;
    out["kind"] = "shadow";
    out["shadow"] = shadow_summary(s);
    out["z2_gleam"] = s.z2_gleams();
    out["flagged_vertices"] = s.flagged_vertices();
    auto base = s.abstract_base();
    out["abstract_base"] = Json{{"boundary_components", base.boundary_components},
                                {"euler_characteristic", base.euler_characteristic},
                                {"genus", base.genus}};
    out["has_embedding"] = f.embedding.has_value();
    out["valid"] = true;
    if (!s.flagged_vertices().empty())
        out["warnings"].push_back("some vertices admit more than one vertical pairing; the first was used");
    return Ok;
}

int cmd_invariants(const Options& o, const Input& in, Json& out) {
    const auto s = parse_bsh(in.text).shadow;
    auto choice = choice_from_mask(s, o.mask);
    out["shadow"] = shadow_summary(s);
    out["choice_mask"] = o.mask;
    out["z2_gleam"] = s.z2_gleams();
    out["gleam2"] = gleam_cochain(s).values;
    out["euler"] = euler_cochain(s).values;
    out["preferred_switches_half"] = preferred_switch_halves(s);
    auto ud = up_down(s, choice);
    out["ud"] = ud.values;
    out["ud_lift2"] = canonical_lift(ud).values;
    out["integral_gleam"] = integral_gleam(s, choice).values;
    out["c1_2"] = c1_cochain(s).values;
    std::vector<int> bits(ud.values.begin(), ud.values.end());
    out["ud_is_coboundary_mod2"] = is_coboundary_mod2(s, bits);
    auto H2 = second_cohomology(s);
    auto H1 = first_cohomology(s);
    out["H2"] = Json{{"group", describe_group(H2)}, {"c1_class", report::big_list(H2.normal_form(to_big(c1_cochain(s).values)))}};
    out["H1"] = Json{{"group", describe_group(H1.group)}};
    auto K = second_homology_basis(s);
    Json basis = Json::array();
    int F = s.num_regions();
    for (int j = 0; j < (K.empty() ? 0 : static_cast<int>(K[0].size())); ++j) {
        std::vector<BigInt> col(F);
        for (int r = 0; r < F; ++r)
            col[r] = K[r][j];
        basis.push_back(report::big_list(col));
    }
    out["H_2_basis"] = basis;
    auto base = s.abstract_base();
    out["abstract_base"] = Json{{"boundary_components", base.boundary_components},
                                {"euler_characteristic", base.euler_characteristic},
                                {"genus", base.genus}};
    return Ok;
}

int cmd_stein_check(const Options& o, const Input& in, Json& out) {
    const auto s = parse_bsh(in.text).shadow;
    out["shadow"] = shadow_summary(s);
    out["c1_2"] = c1_cochain(s).values;
    auto m = check_mainteo(s, mainteo_options(o));
    out["result"] = mainteo_json(m);
    for (auto& w : m.warnings)
        out["warnings"].push_back(w);
    return verdict_exit(m.verdict);
}

int cmd_stein_embed_check(const Options& o, const Input& in, Json& out) {
    auto f = parse_bsh(in.text);
    require(f.embedding.has_value(), ErrorKind::Syntax, in.source, "input has no [embedding] section");
    out["shadow"] = shadow_summary(f.shadow);
    auto g = check_genfo(f.shadow, *f.embedding, mainteo_options(o));
    Json r = report::solve_json(g.solve);
    r["verdict"] = verdict_name(g.verdict);
    r["cap"] = g.cap;
    if (g.verdict == Verdict::Feasible) {
        std::vector<std::int64_t> x = g.bplus;
        x.insert(x.end(), g.bminus.begin(), g.bminus.end());
        require(satisfies(g.problem, x), ErrorKind::Internal, "", "witness failed re-verification");
        r["bplus"] = g.bplus;
        r["bminus"] = g.bminus;
        r["rewritten"] = Json{{"iplus", g.rewritten->iplus}, {"iminus", g.rewritten->iminus}, {"u2", g.rewritten->u2}};
        r["verified"] = true;
    }
    r["constraints"] = report::problem_json(g.problem);
    out["input_embedding"] = Json{{"iplus", f.embedding->iplus}, {"iminus", f.embedding->iminus}, {"u2", f.embedding->u2}};
    out["result"] = r;
    for (auto& w : g.warnings)
        out["warnings"].push_back(w);
    return verdict_exit(g.verdict);
}

int cmd_enumerate(const Options& o, const Input& in, Json& out) {
    const auto s = parse_bsh(in.text).shadow;
    out["shadow"] = shadow_summary(s);
    auto m = check_mainteo(s, mainteo_options(o));
    out["mainteo"] = verdict_name(m.verdict);
    if (m.verdict != Verdict::Feasible)
        return verdict_exit(m.verdict);
    out["UD2"] = m.t;
    auto e = enumerate_stein_classes(s, m.t, o.product_cap);
    out["H2"] = e.group;
    out["bounds"] = e.bounds;
    out["splits_visited"] = e.visited;
    out["zero_class_splits"] = e.zero_count;
    Json cls = Json::array();
    for (auto& c : e.classes)
        cls.push_back(Json{{"class", report::big_list(c.normal_form)}, {"hminus", c.hminus}});
    out["nonzero_classes"] = cls;
    out["distinct_nonzero"] = e.classes.size();
    return Ok;
}

int cmd_certificate(const Options& o, const Input& in, Json& out) {
    const auto s = parse_bsh(in.text).shadow;
    out["shadow"] = shadow_summary(s);
    auto m = check_mainteo(s, mainteo_options(o));
    out["mainteo"] = verdict_name(m.verdict);
    if (m.verdict != Verdict::Feasible)
        return verdict_exit(m.verdict);
    std::optional<std::vector<std::int64_t>> split;
    if (!o.split.empty()) {
        split = parse_list(o.split, "--split");
        require(static_cast<int>(split->size()) == s.num_regions(), ErrorKind::Syntax, "--split",
                "one h- value per region is required");
    }
    auto c = emit_surgery_certificate(s, m.t, split);
    require(c.step3_holds && c.euler_matches_p, ErrorKind::Internal, "", "certificate bookkeeping does not close");
    out["certificate"] = certificate_json(c);
    return Ok;
}

int cmd_spine(const Options& o, const Input& in, Json& out) {
    const auto s = parse_bsh(in.text).shadow;
    out["shadow"] = shadow_summary(s);
    auto r = spine_report(s);
    out["is_spine"] = r.is_spine;
    out["gleams_zero"] = r.gleams_zero;
    out["euler"] = r.euler;
    out["euler_nonpositive"] = r.euler_nonpositive;
    out["spine_choice"] = r.spine_choice ? Json(*r.spine_choice) : Json(nullptr);
    out["positive"] = r.positive ? certificate_json(*r.positive) : Json(nullptr);
    out["negative"] = r.negative ? certificate_json(*r.negative) : Json(nullptr);
    out["note"] = r.note;
    return r.positive ? Ok : Negative;
}

int cmd_genus(const Options& o, const Input& in, Json& out) {
    const auto s = parse_bsh(in.text).shadow;
    require(!o.cycle.empty(), ErrorKind::Syntax, "--cycle", "genus-check needs --cycle");
    auto z = parse_list(o.cycle, "--cycle");
    out["shadow"] = shadow_summary(s);
    out["cycle"] = z;
    auto g = minimal_genus_check(s, z, mainteo_options(o));
    out["chi"] = g.chi;
    out["self_intersection"] = g.self_intersection;
    out["c1"] = g.c;
    out["adjunction_tight"] = g.tight;
    out["genus_bound"] = g.genus_bound ? Json(*g.genus_bound) : Json(nullptr);
    out["mainteo"] = verdict_name(g.mainteo);
    if (g.mainteo != Verdict::Feasible)
        out["warnings"].push_back("the region condition is not verified for this shadow; the bound is conditional");
    return g.tight ? Ok : Negative;
}

int cmd_front(const Options& o, const Input& in, Json& out, std::string* raw) {
    FrontMap m(parse_fr(in.text));
    auto table = polyak(o);
    auto conv = convention(o);
    const auto& d = m.diagram();
    out["front"] = d.name;
    out["cusp_convention"] = o.cusp_convention;
    out["polyak_table_version"] = table.version;
    out["cusp_signs"] = cusp_signs(m);
    Json curves = Json::array();
    auto hyp = hyperbolic_points(m, conv);
    for (int c = 0; c < static_cast<int>(d.curves.size()); ++c)
        curves.push_back(Json{{"curve", c},
                              {"cusps", cusp_count(m, c)},
                              {"writhe", writhe(m, c)},
                              {"tb", tb(m, c)},
                              {"rotation", m.rotation(c)},
                              {"hyperbolic_points", hyp[c]}});
    out["curves"] = curves;
    auto g = polyak_gleams(m, table);
    out["face_quarters"] = g.quarters;
    out["face_gleam2"] = g.face2;
    out["curve_gleam2"] = g.curve2;
    out["outer_face"] = m.outer_face();
    out["winding"] = m.winding();
    auto cs = mapping_cylinder_shadow(m, table);
    Json checks = Json::array();
    for (int c = 0; c < static_cast<int>(d.curves.size()); ++c) {
        auto z = framing_cycle(m, cs, c);
        require(is_cycle(cs.shadow, z), ErrorKind::Internal, cat("curve ", c), "framing cycle does not close");
        auto q2 = self_intersection2(cs.shadow, z);
        checks.push_back(Json{{"curve", c}, {"cycle", z}, {"self_intersection2", q2}, {"matches_tb", q2 == 2 * tb(m, c)}});
    }
    out["framing_checks"] = checks;
    out["shadow"] = shadow_summary(cs.shadow);
    out["bsh"] = serialize_bsh(cs.shadow);
    if (o.bsh)
        *raw = serialize_bsh(cs.shadow);
    return Ok;
}

int cmd_generate(const Options& o, Json& out, std::string* raw) {
    auto s = generate_pn(o.n);
    out["n"] = o.n;
    out["shadow"] = shadow_summary(s);
    out["gleam2"] = gleam_cochain(s).values;
    out["bsh"] = serialize_bsh(s);
    if (!o.json)
        *raw = serialize_bsh(s);
    return Ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Branched shadows: invariants, Stein conditions, fronts"};
    app.require_subcommand(1);
    Options o;
    auto global = [&](CLI::App* sc) {
        sc->add_flag("--text", o.text, "human-readable output");
        sc->add_flag("--halves", o.halves, "render doubled values as halves");
        sc->add_flag("--timing", o.timing, "include elapsed time");
        sc->add_option("--cap", o.cap, "initial bound on integer variables");
        sc->add_option("--ceiling", o.ceiling, "largest cap tried before UNKNOWN");
        sc->add_option("--fixtures", o.fixtures_dir, "directory searched for named inputs");
    };
    struct Verb {
        const char* name;
        const char* help;
        bool needs_input;
    };
    const Verb verbs[] = {{"validate", "validate a .bsh shadow or a .fr front", true},
                          {"invariants", "cochains and (co)homology of a shadow", true},
                          {"stein-check", "region condition with Up&Down lifts", true},
                          {"stein-embed-check", "complex-point condition for an embedded shadow", true},
                          {"enumerate-classes", "Stein classes from zig-zag splits", true},
                          {"certificate", "Legendrian surgery certificate", true},
                          {"spine-report", "branched spine check and certificates", true},
                          {"genus-check", "adjunction check on a 2-cycle", true},
                          {"front-to-shadow", "front invariants and mapping-cylinder shadow", true},
                          {"generate-pn", "one-region family", false}};
    std::map<std::string, CLI::App*> subs;
    for (auto& v : verbs) {
        auto* sc = app.add_subcommand(v.name, v.help);
        global(sc);
        if (v.needs_input)
            sc->add_option("input", o.input, "path, fixture name, or - for stdin")->required();
        subs[v.name] = sc;
    }
    subs["invariants"]->add_option("--choice", o.mask, "Up&Down choice as a vertex bitmask");
    subs["enumerate-classes"]->add_option("--max", o.product_cap, "largest number of splits to visit");
    subs["certificate"]->add_option("--split", o.split, "h- per region, comma separated");
    subs["genus-check"]->add_option("--cycle", o.cycle, "region coefficients, comma separated");
    auto* fr = subs["front-to-shadow"];
    fr->add_option("--cusp-convention", o.cusp_convention, "statement|proof");
    fr->add_option("--polyak-table", o.polyak_path, "JSON table of local gleam contributions");
    fr->add_flag("--bsh", o.bsh, "print the shadow as .bsh instead of JSON");
    subs["generate-pn"]->add_option("--n", o.n, "family index")->required();
    subs["generate-pn"]->add_flag("--json", o.json, "print a JSON report instead of .bsh");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return InputError;
    }
    std::string verb = app.get_subcommands().front()->get_name();

    auto t0 = std::chrono::steady_clock::now();
    Json out;
    out["command"] = verb;
    std::string raw;
    int code = Ok;
    try {
        if (verb == "generate-pn") {
            code = cmd_generate(o, out, &raw);
        } else {
            Input in = load(o);
            out["input"] = Json{{"source", in.source}, {"digest", "fnv1a64:" + report::fnv1a64(in.text)}};
            if (verb == "validate")
                code = cmd_validate(o, in, out);
            else if (verb == "invariants")
                code = cmd_invariants(o, in, out);
            else if (verb == "stein-check")
                code = cmd_stein_check(o, in, out);
            else if (verb == "stein-embed-check")
                code = cmd_stein_embed_check(o, in, out);
            else if (verb == "enumerate-classes")
                code = cmd_enumerate(o, in, out);
            else if (verb == "certificate")
                code = cmd_certificate(o, in, out);
            else if (verb == "spine-report")
                code = cmd_spine(o, in, out);
            else if (verb == "genus-check")
                code = cmd_genus(o, in, out);
            else if (verb == "front-to-shadow")
                code = cmd_front(o, in, out, &raw);
        }
    } catch (const ShadowError& e) {
        out["error"] = Json{{"kind", kind_name(e.kind())}, {"locus", e.locus()}, {"message", e.what()}};
        code = e.kind() == ErrorKind::Internal ? InternalError : InputError;
    } catch (const std::exception& e) {
        out["error"] = Json{{"kind", "internal"}, {"locus", ""}, {"message", e.what()}};
        code = InternalError;
    }
    if (!out.contains("warnings"))
        out["warnings"] = Json::array();
    out["exit_code"] = code;
    if (o.timing) {
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        out["timing"] = Json{{"elapsed_ms", ms}};
    }
    if (!raw.empty() && !out.contains("error")) {
        std::cout << raw;
        return code;
    }
    Json shown = o.halves ? report::with_halves(out) : out;
    if (o.text)
        report::render_text(std::cout, shown);
    else
        std::cout << shown.dump(2) << "\n";
    return code;
}
