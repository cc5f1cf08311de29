#pragma once

#include <shadowstein/fixtures.hpp>
#include <shadowstein/moves.hpp>

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

using namespace shadowstein;

inline std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline std::string source_dir() { return SHADOWSTEIN_SOURCE_DIR; }

inline std::string front_text(const std::string& name) {
    return slurp(source_dir() + "/fixtures/fronts/" + name + ".fr");
}

inline const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {"mono1", "spine1", "tri1", "spine2", "seed2"};
    return names;
}

inline const std::vector<std::string>& front_names() {
    static const std::vector<std::string> names = {"kink", "twist2", "twist3", "eyes2", "chain3"};
    return names;
}

// Random walk of moves starting from the 2-vertex fixtures; gleams are redrawn with the right parity.
inline BranchedShadow random_shadow(std::mt19937_64& rng, int max_vertices = 6) {
    static const char* seeds[] = {"spine2", "seed2"};
    BranchedShadow s = fixture(seeds[rng() % 2]);
    int steps = static_cast<int>(rng() % 4);
    for (int k = 0; k < steps * 3 && s.num_vertices() < max_vertices; ++k) {
        try {
            s = move_one_two(s, static_cast<int>(rng() % s.num_vertices()), static_cast<int>(rng() % 8));
        } catch (const ShadowError& e) {
            if (e.kind() != ErrorKind::Domain)
                throw;
        }
    }
    if (rng() % 2) {
        int e = static_cast<int>(rng() % s.num_edges());
        try {
            s = move_join_nonpreferred(s, e);
        } catch (const ShadowError& err) {
            if (err.kind() != ErrorKind::Domain)
                throw;
        }
    }
    std::vector<std::int64_t> g2;
    for (int r = 0; r < s.num_regions(); ++r)
        g2.push_back(s.z2_gleam(r) + 2 * (static_cast<std::int64_t>(rng() % 5) - 2));
    return s.with_gleams(g2);
}

inline std::vector<BranchedShadow> random_shadows(int count, std::uint64_t seed, int max_vertices = 6) {
    std::mt19937_64 rng(seed);
    std::vector<BranchedShadow> out;
    for (int i = 0; i < count; ++i)
        out.push_back(random_shadow(rng, max_vertices));
    return out;
}

} // namespace testsupport
