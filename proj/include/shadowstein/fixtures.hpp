#pragma once

#include "shadow.hpp"

#include <string>
#include <utility>
#include <vector>

namespace shadowstein {

// Small reference shadows; the same texts live in fixtures/*.bsh.
inline const std::vector<std::pair<std::string, std::string>>& fixture_catalog() {
    static const std::vector<std::pair<std::string, std::string>> catalog = {
        {"mono1", R"bsh(shadow mono1
vertices 1
edge 0 0.3 0.2
edge 1 0.1 0.0
region 0 gleam2 0 circuit 0+ 1- 0- 0- 1+ 1+
)bsh"},
        {"spine1", R"bsh(shadow spine1
vertices 1
edge 0 0.0 0.1
edge 1 0.3 0.2
region 0 gleam2 0 circuit 0-
region 1 gleam2 0 circuit 0+ 1- 1- 0+ 1+
)bsh"},
        {"tri1", R"bsh(shadow tri1
vertices 1
edge 0 0.2 0.1
edge 1 0.0 0.3
region 0 gleam2 1 circuit 0+ 1-
region 1 gleam2 1 circuit 0- 1- 0-
region 2 gleam2 1 circuit 1+
)bsh"},
        {"spine2", R"bsh(shadow spine2
vertices 2
edge 0 0.0 1.2
edge 1 0.3 1.1
edge 2 0.2 1.0
edge 3 1.3 0.1
region 0 gleam2 0 circuit 0+ 2- 3- 1- 2+ 3+
region 1 gleam2 0 circuit 0+ 1- 3- 0- 1+ 2-
)bsh"},
        {"seed2", R"bsh(shadow seed2
vertices 2
edge 0 0.3 1.1
edge 1 0.2 1.3
edge 2 0.1 1.0
edge 3 1.2 0.0
region 0 gleam2 0 circuit 0+ 3+ 1+ 0- 1+ 2- 3- 1- 2+ 0- 2+ 3+
)bsh"},
    };
    return catalog;
}

inline BranchedShadow fixture(const std::string& name) {
    for (auto& [n, text] : fixture_catalog())
        if (n == name)
            return parse_bsh(text).shadow;
    fail(ErrorKind::Reference, name, "unknown fixture");
}

} // namespace shadowstein
