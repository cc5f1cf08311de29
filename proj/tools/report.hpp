#pragma once

#include <shadowstein/ilp.hpp>

#include <json.hpp>

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace shadowstein::report {

using Json = nlohmann::ordered_json;

inline std::string fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

inline std::string str(const BigInt& x) { return x.str(); }
inline std::string str(const Rational& x) {
    auto n = boost::multiprecision::numerator(x), d = boost::multiprecision::denominator(x);
    return d == 1 ? n.str() : n.str() + "/" + d.str();
}

inline Json big_list(const std::vector<BigInt>& v) {
    Json a = Json::array();
    for (auto& x : v)
        a.push_back(str(x));
    return a;
}

inline Json problem_json(const IntProblem& p) {
    Json vars = Json::array();
    for (auto& v : p.vars) {
        Json j;
        j["name"] = v.name;
        j["lower"] = v.lower ? Json(*v.lower) : Json(nullptr);
        j["upper"] = v.upper ? Json(*v.upper) : Json(nullptr);
        j["parity"] = v.parity < 0 ? Json(nullptr) : Json(v.parity);
        vars.push_back(j);
    }
    Json rows = Json::array();
    for (auto& r : p.rows)
        rows.push_back(Json{{"name", r.name}, {"coeffs", r.coeffs}, {"rhs", r.rhs}});
    return Json{{"form", "coeffs . x <= rhs"}, {"variables", vars}, {"rows", rows}};
}

inline Json farkas_json(const FarkasCertificate& f) {
    Json a = Json::array();
    for (size_t i = 0; i < f.rows.size(); ++i)
        a.push_back(Json{{"row", f.rows[i]}, {"multiplier", str(f.multipliers[i])}});
    return a;
}

inline Json solve_json(const SolveResult& r) {
    Json j;
    j["verdict"] = verdict_name(r.verdict);
    j["reason"] = r.reason;
    j["cap"] = r.cap;
    j["nodes"] = r.nodes;
    if (r.farkas)
        j["farkas"] = farkas_json(*r.farkas);
    return j;
}

// Keys ending in "2" (except the mod-2 ones starting with "z2") hold doubled integers.
inline bool doubled_key(const std::string& k) {
    return k.size() >= 2 && k.back() == '2' && k.rfind("z2", 0) != 0;
}

inline Json halve(const Json& v) {
    if (v.is_number_integer()) {
        std::int64_t x = v.get<std::int64_t>();
        if (x % 2 == 0)
            return Json(x / 2);
        return Json(static_cast<double>(x) / 2.0);
    }
    if (v.is_array()) {
        Json a = Json::array();
        for (auto& e : v)
            a.push_back(halve(e));
        return a;
    }
    return v;
}

inline bool numeric(const Json& v) {
    if (v.is_number_integer())
        return true;
    if (!v.is_array())
        return false;
    for (auto& e : v)
        if (!numeric(e))
            return false;
    return true;
}

inline Json with_halves(const Json& j) {
    if (j.is_object()) {
        Json out = Json::object();
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string& k = it.key();
            if (doubled_key(k) && numeric(it.value()))
                out[k.substr(0, k.size() - (k.size() > 2 && k[k.size() - 2] == '_' ? 2 : 1))] = halve(it.value());
            else
                out[it.key()] = with_halves(it.value());
        }
        return out;
    }
    if (j.is_array()) {
        Json out = Json::array();
        for (auto& e : j)
            out.push_back(with_halves(e));
        return out;
    }
    return j;
}

inline bool flat_array(const Json& j) {
    for (auto& e : j)
        if (e.is_structured())
            return false;
    return true;
}

inline void render_text(std::ostream& os, const Json& j, int indent = 0) {
    std::string pad(indent, ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        std::string key = j.is_object() ? it.key() : "-";
        if (v.is_object() || (v.is_array() && !flat_array(v))) {
            os << pad << key << ":\n";
            render_text(os, v, indent + 2);
        } else if (v.is_array()) {
            os << pad << key << ":";
            for (auto& e : v)
                os << " " << (e.is_string() ? e.get<std::string>() : e.dump());
            os << "\n";
        } else {
            os << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

} // namespace shadowstein::report
