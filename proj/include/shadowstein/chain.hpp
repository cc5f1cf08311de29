#pragma once

#include "shadow.hpp"

#include <cstdint>
#include <vector>

namespace shadowstein {

using IntMatrix = std::vector<std::vector<BigInt>>;

inline IntMatrix zero_matrix(int rows, int cols) { return IntMatrix(rows, std::vector<BigInt>(cols, 0)); }

inline IntMatrix identity_matrix(int n) {
    auto m = zero_matrix(n, n);
    for (int i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

inline IntMatrix transpose(const IntMatrix& m, int rows, int cols) {
    auto t = zero_matrix(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            t[j][i] = m[i][j];
    return t;
}

inline std::vector<BigInt> mat_vec(const IntMatrix& m, const std::vector<BigInt>& v) {
    std::vector<BigInt> out(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            out[i] += m[i][j] * v[j];
    return out;
}

// D = U * M * W with D diagonal, d_0 | d_1 | ...; Uinv and Winv are kept alongside.
struct SmithForm {
    int rows = 0;
    int cols = 0;
    IntMatrix D, U, Uinv, W, Winv;
    std::vector<BigInt> diag; // nonzero diagonal entries, positive
    int rank() const { return static_cast<int>(diag.size()); }
};

inline SmithForm smith_normal_form(const IntMatrix& M, int rows, int cols) {
    SmithForm f;
    f.rows = rows;
    f.cols = cols;
    f.D = M;
    f.U = f.Uinv = identity_matrix(rows);
    f.W = f.Winv = identity_matrix(cols);
    auto& D = f.D;

    // row_i += k*row_j (U gains the same op, Uinv the inverse column op)
    auto row_add = [&](int i, int j, const BigInt& k) {
        for (int c = 0; c < cols; ++c)
            D[i][c] += k * D[j][c];
        for (int c = 0; c < rows; ++c)
            f.U[i][c] += k * f.U[j][c];
        for (int r = 0; r < rows; ++r)
            f.Uinv[r][j] -= k * f.Uinv[r][i];
    };
    auto row_swap = [&](int i, int j) {
        std::swap(D[i], D[j]);
        std::swap(f.U[i], f.U[j]);
        for (int r = 0; r < rows; ++r)
            std::swap(f.Uinv[r][i], f.Uinv[r][j]);
    };
    auto row_neg = [&](int i) {
        for (auto& x : D[i])
            x = -x;
        for (auto& x : f.U[i])
            x = -x;
        for (int r = 0; r < rows; ++r)
            f.Uinv[r][i] = -f.Uinv[r][i];
    };
    auto col_add = [&](int i, int j, const BigInt& k) {
        for (int r = 0; r < rows; ++r)
            D[r][i] += k * D[r][j];
        for (int r = 0; r < cols; ++r)
            f.W[r][i] += k * f.W[r][j];
        for (int c = 0; c < cols; ++c)
            f.Winv[j][c] -= k * f.Winv[i][c];
    };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < rows; ++r)
            std::swap(D[r][i], D[r][j]);
        for (int r = 0; r < cols; ++r)
            std::swap(f.W[r][i], f.W[r][j]);
        std::swap(f.Winv[i], f.Winv[j]);
    };

    int t = 0;
    while (t < rows && t < cols) {
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (D[i][j] != 0 && (pi < 0 || abs(D[i][j]) < abs(D[pi][pj])))
                    pi = i, pj = j;
        if (pi < 0)
            break;
        row_swap(t, pi);
        col_swap(t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (D[i][t] == 0)
                    continue;
                BigInt q = D[i][t] / D[t][t];
                row_add(i, t, -q);
                if (D[i][t] != 0) {
                    row_swap(t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (D[t][j] == 0)
                    continue;
                BigInt q = D[t][j] / D[t][t];
                col_add(j, t, -q);
                if (D[t][j] != 0) {
                    col_swap(t, j);
                    clean = false;
                }
            }
            if (!clean)
                continue;
            // divisibility: pull an offending row into row t and start again
            for (int i = t + 1; i < rows && clean; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        row_add(t, i, 1);
                        clean = false;
                        break;
                    }
        }
        if (D[t][t] < 0)
            row_neg(t);
        f.diag.push_back(D[t][t]);
        ++t;
    }
    return f;
}

// Z^n modulo the column span of `relations` (n x m).
class PresentedGroup {
public:
    PresentedGroup() = default;
    PresentedGroup(const IntMatrix& relations, int n, int m) : n_(n), snf_(smith_normal_form(relations, n, m)) {}

    int generators() const { return n_; }
    int free_rank() const { return n_ - snf_.rank(); }
    std::vector<BigInt> torsion() const {
        std::vector<BigInt> out;
        for (auto& d : snf_.diag)
            if (d > 1)
                out.push_back(d);
        return out;
    }
    bool trivial() const { return free_rank() == 0 && torsion().empty(); }

    // coordinates: one per nontrivial torsion factor (reduced into [0,d)), then the free ones
    std::vector<BigInt> normal_form(const std::vector<BigInt>& x) const {
        auto y = mat_vec(snf_.U, x);
        std::vector<BigInt> out;
        for (int i = 0; i < snf_.rank(); ++i) {
            const BigInt& d = snf_.diag[i];
            if (d == 1)
                continue;
            BigInt r = y[i] % d;
            if (r < 0)
                r += d;
            out.push_back(r);
        }
        for (int i = snf_.rank(); i < n_; ++i)
            out.push_back(y[i]);
        return out;
    }
    bool is_zero(const std::vector<BigInt>& x) const {
        for (auto& c : normal_form(x))
            if (c != 0)
                return false;
        return true;
    }
    const SmithForm& smith() const { return snf_; }

private:
    int n_ = 0;
    SmithForm snf_;
};

// Cellular boundary of a region, per passage: +1 when the passage is non-preferred.
inline IntMatrix boundary_matrix(const BranchedShadow& s) {
    auto B = zero_matrix(s.num_edges(), s.num_regions());
    for (int e = 0; e < s.num_edges(); ++e)
        for (auto p : s.passages_of(e))
            B[e][p.region] += s.preferred(p) ? -1 : 1;
    return B;
}

// edges x vertices, +1 at the head (branching orientation), -1 at the tail
inline IntMatrix vertex_coboundary(const BranchedShadow& s) {
    auto D = zero_matrix(s.num_edges(), s.num_vertices());
    for (int e = 0; e < s.num_edges(); ++e) {
        const Edge& ed = s.edge(e);
        int head = s.orientation(e) > 0 ? ed.head.vertex : ed.tail.vertex;
        int tail = s.orientation(e) > 0 ? ed.tail.vertex : ed.head.vertex;
        D[e][head] += 1;
        D[e][tail] -= 1;
    }
    return D;
}

inline std::vector<std::int64_t> coboundary1(const BranchedShadow& s, const std::vector<std::int64_t>& c) {
    require(static_cast<int>(c.size()) == s.num_edges(), ErrorKind::Domain, "", "1-cochain has the wrong length");
    std::vector<std::int64_t> out(s.num_regions(), 0);
    for (int e = 0; e < s.num_edges(); ++e)
        for (auto p : s.passages_of(e))
            out[p.region] += (s.preferred(p) ? -1 : 1) * c[e];
    return out;
}

inline std::vector<std::int64_t> coboundary0(const BranchedShadow& s, const std::vector<std::int64_t>& a) {
    require(static_cast<int>(a.size()) == s.num_vertices(), ErrorKind::Domain, "", "0-cochain has the wrong length");
    auto D = vertex_coboundary(s);
    std::vector<std::int64_t> out(s.num_edges(), 0);
    for (int e = 0; e < s.num_edges(); ++e)
        for (int v = 0; v < s.num_vertices(); ++v)
            out[e] += static_cast<std::int64_t>(D[e][v]) * a[v];
    return out;
}

inline Cochain coboundary(const BranchedShadow& s, const Cochain& c) {
    require(c.degree == 0 || c.degree == 1, ErrorKind::Domain, "", "coboundary is defined on degrees 0 and 1");
    return {c.degree + 1, c.scale, c.degree == 0 ? coboundary0(s, c.values) : coboundary1(s, c.values)};
}

inline std::vector<BigInt> to_big(const std::vector<std::int64_t>& v) {
    return std::vector<BigInt>(v.begin(), v.end());
}

inline PresentedGroup second_cohomology(const BranchedShadow& s) {
    return PresentedGroup(transpose(boundary_matrix(s), s.num_edges(), s.num_regions()), s.num_regions(),
                          s.num_edges());
}

struct FirstCohomology {
    PresentedGroup group;
    IntMatrix cocycle_basis; // columns span ker delta^1
    int basis_size = 0;
};

inline FirstCohomology first_cohomology(const BranchedShadow& s) {
    const int E = s.num_edges(), F = s.num_regions(), V = s.num_vertices();
    auto d1 = transpose(boundary_matrix(s), E, F);
    auto snf = smith_normal_form(d1, F, E);
    int r = snf.rank(), k = E - r;
    auto K = zero_matrix(E, k);
    for (int i = 0; i < E; ++i)
        for (int j = 0; j < k; ++j)
            K[i][j] = snf.W[i][r + j];
    auto d0 = vertex_coboundary(s);
    auto rel = zero_matrix(k, V);
    for (int v = 0; v < V; ++v) {
        std::vector<BigInt> col(E);
        for (int e = 0; e < E; ++e)
            col[e] = d0[e][v];
        auto y = mat_vec(snf.Winv, col);
        for (int j = 0; j < k; ++j)
            rel[j][v] = y[r + j];
    }
    return {PresentedGroup(rel, k, V), K, k};
}

// integral 2-cycles: columns span ker of the boundary
inline IntMatrix second_homology_basis(const BranchedShadow& s) {
    const int E = s.num_edges(), F = s.num_regions();
    auto snf = smith_normal_form(boundary_matrix(s), E, F);
    int r = snf.rank();
    auto K = zero_matrix(F, F - r);
    for (int i = 0; i < F; ++i)
        for (int j = 0; j < F - r; ++j)
            K[i][j] = snf.W[i][r + j];
    return K;
}

inline bool is_cycle(const BranchedShadow& s, const std::vector<std::int64_t>& z) {
    if (static_cast<int>(z.size()) != s.num_regions())
        return false;
    auto B = boundary_matrix(s);
    for (int e = 0; e < s.num_edges(); ++e) {
        BigInt acc = 0;
        for (int r = 0; r < s.num_regions(); ++r)
            acc += B[e][r] * z[r];
        if (acc != 0)
            return false;
    }
    return true;
}

// normal form of a scale-1 2-cochain in H^2
inline std::vector<BigInt> class_of(const BranchedShadow& s, const Cochain& c) {
    require(c.degree == 2 && c.scale == 1, ErrorKind::Domain, "", "class_of takes an integral 2-cochain");
    require(static_cast<int>(c.values.size()) == s.num_regions(), ErrorKind::Domain, "",
            "2-cochain has the wrong length");
    return second_cohomology(s).normal_form(to_big(c.values));
}

inline bool classes_equal(const BranchedShadow& s, const Cochain& a, const Cochain& b) {
    return class_of(s, a) == class_of(s, b);
}

// Is the mod-2 1-cochain c equal to delta(a) for some 0-cochain a? Returns a when it is.
inline std::optional<std::vector<int>> solve_coboundary_mod2(const BranchedShadow& s, const std::vector<int>& c) {
    const int E = s.num_edges(), V = s.num_vertices();
    require(static_cast<int>(c.size()) == E, ErrorKind::Domain, "", "1-cochain has the wrong length");
    auto D = vertex_coboundary(s);
    std::vector<std::vector<int>> A(E, std::vector<int>(V + 1, 0));
    for (int e = 0; e < E; ++e) {
        for (int v = 0; v < V; ++v)
            A[e][v] = static_cast<int>(((D[e][v] % 2) + 2) % 2);
        A[e][V] = c[e] & 1;
    }
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < V && row < E; ++col) {
        int p = -1;
        for (int i = row; i < E; ++i)
            if (A[i][col]) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        std::swap(A[row], A[p]);
        for (int i = 0; i < E; ++i)
            if (i != row && A[i][col])
                for (int j = 0; j <= V; ++j)
                    A[i][j] ^= A[row][j];
        pivot_col.push_back(col);
        ++row;
    }
    for (int i = row; i < E; ++i)
        if (A[i][V])
            return std::nullopt;
    std::vector<int> a(V, 0);
    for (int i = 0; i < row; ++i)
        a[pivot_col[i]] = A[i][V];
    return a;
}

inline bool is_coboundary_mod2(const BranchedShadow& s, const std::vector<int>& c) {
    return solve_coboundary_mod2(s, c).has_value();
}

// <c, z>; for scale-2 cochains the doubled value is returned
inline std::int64_t pair(const BranchedShadow& s, const Cochain& c, const std::vector<std::int64_t>& z) {
    require(c.degree == 2, ErrorKind::Domain, "", "pairing takes a 2-cochain");
    require(is_cycle(s, z), ErrorKind::Domain, "", "pairing needs a 2-cycle");
    std::int64_t acc = 0;
    for (int r = 0; r < s.num_regions(); ++r)
        acc += c.values[r] * z[r];
    return acc;
}

} // namespace shadowstein
