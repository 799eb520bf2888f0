#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gt/errors.hpp"

namespace gt {

using Int = boost::multiprecision::cpp_int;

inline Int gcd_int(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

// Dense matrix of exact integers. Row-major.
struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const IntMatrix&) const = default;
};

inline IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw domain_error("matrix size mismatch in multiply");
    IntMatrix out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Int& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j) out.at(i, j) += v * y.at(k, j);
        }
    return out;
}

inline IntMatrix transpose(const IntMatrix& m) {
    IntMatrix out(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    return out;
}

inline std::vector<Int> apply_rows(const std::vector<Int>& x, const IntMatrix& m) {
    if (static_cast<int>(x.size()) != m.rows) throw domain_error("vector size mismatch");
    std::vector<Int> out(m.cols, 0);
    for (int i = 0; i < m.rows; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < m.cols; ++j) out[j] += x[i] * m.at(i, j);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Smith normal form. D = U * M * V with U, V unimodular, D diagonal,
// non-negative, each entry dividing the next. Inverses are tracked so callers
// can move between original and normal coordinates in both directions.

struct SmithForm {
    IntMatrix D, U, V, Uinv, Vinv;
    int rank = 0;

    Int diag(int i) const {
        if (i < D.rows && i < D.cols) return D.at(i, i);
        return 0;
    }
};

namespace detail {

struct SnfOps {
    IntMatrix& D;
    IntMatrix& U;
    IntMatrix& Uinv;
    IntMatrix& V;
    IntMatrix& Vinv;

    void row_sub(int i, int t, const Int& q) {  // row_i -= q * row_t
        if (q == 0) return;
        for (int j = 0; j < D.cols; ++j) D.at(i, j) -= q * D.at(t, j);
        for (int j = 0; j < U.cols; ++j) U.at(i, j) -= q * U.at(t, j);
        for (int r = 0; r < Uinv.rows; ++r) Uinv.at(r, t) += q * Uinv.at(r, i);
    }
    void col_sub(int j, int t, const Int& q) {  // col_j -= q * col_t
        if (q == 0) return;
        for (int i = 0; i < D.rows; ++i) D.at(i, j) -= q * D.at(i, t);
        for (int i = 0; i < V.rows; ++i) V.at(i, j) -= q * V.at(i, t);
        for (int c = 0; c < Vinv.cols; ++c) Vinv.at(t, c) += q * Vinv.at(j, c);
    }
    void row_swap(int i, int t) {
        if (i == t) return;
        for (int j = 0; j < D.cols; ++j) std::swap(D.at(i, j), D.at(t, j));
        for (int j = 0; j < U.cols; ++j) std::swap(U.at(i, j), U.at(t, j));
        for (int r = 0; r < Uinv.rows; ++r) std::swap(Uinv.at(r, i), Uinv.at(r, t));
    }
    void col_swap(int j, int t) {
        if (j == t) return;
        for (int i = 0; i < D.rows; ++i) std::swap(D.at(i, j), D.at(i, t));
        for (int i = 0; i < V.rows; ++i) std::swap(V.at(i, j), V.at(i, t));
        for (int c = 0; c < Vinv.cols; ++c) std::swap(Vinv.at(j, c), Vinv.at(t, c));
    }
    void row_negate(int i) {
        for (int j = 0; j < D.cols; ++j) D.at(i, j) = -D.at(i, j);
        for (int j = 0; j < U.cols; ++j) U.at(i, j) = -U.at(i, j);
        for (int r = 0; r < Uinv.rows; ++r) Uinv.at(r, i) = -Uinv.at(r, i);
    }
};

}  // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& m) {
    SmithForm s;
    s.D = m;
    s.U = IntMatrix::identity(m.rows);
    s.Uinv = IntMatrix::identity(m.rows);
    s.V = IntMatrix::identity(m.cols);
    s.Vinv = IntMatrix::identity(m.cols);
    detail::SnfOps ops{s.D, s.U, s.Uinv, s.V, s.Vinv};
    IntMatrix& D = s.D;
    int lim = std::min(m.rows, m.cols);

    for (int t = 0; t < lim; ++t) {
        // Select pivot: smallest nonzero magnitude in D[t.., t..], then
        // smallest (row, col). Deterministic across platforms.
        int pr = -1, pc = -1;
        Int best = 0;
        for (int i = t; i < D.rows; ++i)
            for (int j = t; j < D.cols; ++j) {
                const Int& v = D.at(i, j);
                if (v == 0) continue;
                Int av = abs(v);
                if (pr < 0 || av < best) {
                    best = av;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break;  // submatrix is zero
        ops.row_swap(pr, t);
        ops.col_swap(pc, t);

        for (;;) {
            bool clean = true;
            for (int i = t + 1; i < D.rows; ++i) {
                if (D.at(i, t) == 0) continue;
                Int q = D.at(i, t) / D.at(t, t);
                ops.row_sub(i, t, q);
                if (D.at(i, t) != 0) {
                    ops.row_swap(i, t);  // remainder is strictly smaller
                    clean = false;
                }
            }
            for (int j = t + 1; j < D.cols; ++j) {
                if (D.at(t, j) == 0) continue;
                Int q = D.at(t, j) / D.at(t, t);
                ops.col_sub(j, t, q);
                if (D.at(t, j) != 0) {
                    ops.col_swap(j, t);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Pivot divides its row and column; now enforce divisibility of
            // the remaining submatrix. If some entry resists, fold its row in
            // and re-eliminate.
            int br = -1, bc = -1;
            for (int i = t + 1; i < D.rows && br < 0; ++i)
                for (int j = t + 1; j < D.cols; ++j)
                    if (D.at(i, j) % D.at(t, t) != 0) {
                        br = i;
                        bc = j;
                        break;
                    }
            if (br < 0) break;
            ops.row_sub(t, br, Int(-1));  // row_t += row_br
            (void)bc;
        }
        if (D.at(t, t) < 0) ops.row_negate(t);
    }
    s.rank = 0;
    for (int t = 0; t < lim; ++t)
        if (D.at(t, t) != 0) ++s.rank;
    return s;
}

// ---------------------------------------------------------------------------
// Incremental integer row reduction. Keeps a basis of the lattice generated
// by all added rows, one basis row per leading column. Used to condense large
// relation sets before running SNF.

struct RowLattice {
    int cols;
    std::map<int, std::vector<Int>> basis;  // leading column -> row

    explicit RowLattice(int c) : cols(c) {}

    void add(std::vector<Int> v) {
        if (static_cast<int>(v.size()) != cols) throw domain_error("row size mismatch");
        for (;;) {
            int lead = -1;
            for (int j = 0; j < cols; ++j)
                if (v[j] != 0) {
                    lead = j;
                    break;
                }
            if (lead < 0) return;
            auto it = basis.find(lead);
            if (it == basis.end()) {
                if (v[lead] < 0)
                    for (auto& x : v) x = -x;
                basis.emplace(lead, std::move(v));
                return;
            }
            std::vector<Int>& r = it->second;
            while (v[lead] != 0) {
                Int q = v[lead] / r[lead];
                if (q != 0)
                    for (int j = lead; j < cols; ++j) v[j] -= q * r[j];
                if (v[lead] != 0) std::swap(v, r);
            }
        }
    }

    IntMatrix to_matrix() const {
        IntMatrix m(static_cast<int>(basis.size()), cols);
        int i = 0;
        for (const auto& [lead, row] : basis) {
            for (int j = 0; j < cols; ++j) m.at(i, j) = row[j];
            ++i;
        }
        return m;
    }

    // Membership in the lattice spanned by the added rows.
    bool contains(std::vector<Int> v) const {
        if (static_cast<int>(v.size()) != cols) throw domain_error("row size mismatch");
        for (int j = 0; j < cols; ++j) {
            if (v[j] == 0) continue;
            auto it = basis.find(j);
            if (it == basis.end() || v[j] % it->second[j] != 0) return false;
            Int q = v[j] / it->second[j];
            for (int k = j; k < cols; ++k) v[k] -= q * it->second[k];
        }
        return true;
    }
};

// ---------------------------------------------------------------------------
// Finitely generated abelian group, normal form Z^rank + Z/d1 + ... with
// 2 <= d1 | d2 | ...

struct AbelianType {
    int rank = 0;
    std::vector<Int> torsion;

    bool operator==(const AbelianType&) const = default;
    bool trivial() const { return rank == 0 && torsion.empty(); }
};

inline std::string to_string(const AbelianType& t) {
    if (t.trivial()) return "0";
    std::string out;
    auto add = [&](const std::string& piece) {
        if (!out.empty()) out += " + ";
        out += piece;
    };
    if (t.rank == 1) add("Z");
    else if (t.rank > 1) add("Z^" + std::to_string(t.rank));
    for (const auto& d : t.torsion) add("Z/" + d.str());
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const AbelianType& t) {
    return os << to_string(t);
}

// Parse "0", "Z", "Z^r", "Z/d" and '+'-separated sums of those, e.g.
// "Z^2+Z/6". The result is renormalized to the invariant-factor form, so
// unordered torsion like "Z/3+Z/2" comes back as Z/6.
inline AbelianType parse_abelian_type(const std::string& text);

// Cokernel Z^ncols / rowspace(relations). Each relation is a row vector of
// exponents over the ncols generators.
inline AbelianType classify(const IntMatrix& relations) {
    // Reduce the relation rows to a lattice basis first so the normal form
    // runs on at most cols x cols regardless of how many relators came in.
    RowLattice lat(relations.cols);
    for (int i = 0; i < relations.rows; ++i) {
        std::vector<Int> row(relations.cols);
        for (int j = 0; j < relations.cols; ++j) row[j] = relations.at(i, j);
        lat.add(std::move(row));
    }
    SmithForm s = smith_normal_form(lat.to_matrix());
    AbelianType t;
    for (int i = 0; i < s.rank; ++i) {
        Int d = s.D.at(i, i);
        if (d >= 2) t.torsion.push_back(d);
    }
    t.rank = relations.cols - s.rank;
    return t;
}

inline AbelianType parse_abelian_type(const std::string& text) {
    int rank = 0;
    std::vector<Int> torsion;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t plus = text.find('+', pos);
        std::string piece = text.substr(pos, plus == std::string::npos ? plus : plus - pos);
        pos = plus == std::string::npos ? text.size() + 1 : plus + 1;
        size_t b = piece.find_first_not_of(" \t");
        size_t e = piece.find_last_not_of(" \t");
        piece = b == std::string::npos ? "" : piece.substr(b, e - b + 1);
        if (piece.empty() || piece == "0") continue;
        auto number = [&](const std::string& digits) {
            try {
                return Int(digits);
            } catch (const std::exception&) {
                throw parse_error("bad number in abelian group piece '" + piece + "'");
            }
        };
        if (piece == "Z") {
            ++rank;
        } else if (piece.rfind("Z^", 0) == 0) {
            Int r = number(piece.substr(2));
            if (r < 0) throw parse_error("negative rank in '" + piece + "'");
            rank += static_cast<int>(r);
        } else if (piece.rfind("Z/", 0) == 0) {
            Int d = number(piece.substr(2));
            if (d < 2) throw parse_error("torsion order below 2 in '" + piece + "'");
            torsion.push_back(d);
        } else {
            throw parse_error("unrecognized abelian group piece '" + piece + "'");
        }
    }
    // Renormalize through the classification so torsion lands in a divisor
    // chain.
    int cols = rank + static_cast<int>(torsion.size());
    IntMatrix rel(static_cast<int>(torsion.size()), cols);
    for (size_t u = 0; u < torsion.size(); ++u)
        rel.at(static_cast<int>(u), rank + static_cast<int>(u)) = torsion[u];
    return classify(rel);
}

inline bool abelian_iso(const AbelianType& a, const AbelianType& b) { return a == b; }

// Order of the group; 0 means infinite.
inline Int group_order(const AbelianType& t) {
    if (t.rank > 0) return 0;
    Int n = 1;
    for (const auto& d : t.torsion) n *= d;
    return n;
}

// ---------------------------------------------------------------------------
// Lattice computations via SNF.

// Basis of {x : M x = 0}, returned as columns of the result.
inline IntMatrix kernel_columns(const IntMatrix& m) {
    SmithForm s = smith_normal_form(m);
    int free_cols = m.cols - s.rank;
    IntMatrix out(m.cols, free_cols);
    for (int k = 0; k < free_cols; ++k) {
        int j = s.rank + k;
        for (int i = 0; i < m.cols; ++i) out.at(i, k) = s.V.at(i, j);
    }
    return out;
}

// One solution of M x = b over the integers, if any.
inline std::optional<std::vector<Int>> solve_columns(const IntMatrix& m,
                                                     const std::vector<Int>& b) {
    if (static_cast<int>(b.size()) != m.rows) throw domain_error("rhs size mismatch");
    SmithForm s = smith_normal_form(m);
    std::vector<Int> ub(m.rows, 0);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.rows; ++j) ub[i] += s.U.at(i, j) * b[j];
    std::vector<Int> y(m.cols, 0);
    for (int i = 0; i < m.rows; ++i) {
        Int d = i < std::min(m.rows, m.cols) ? s.D.at(i, i) : Int(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            if (i < m.cols) y[i] = ub[i] / d;
        }
    }
    std::vector<Int> x(m.cols, 0);
    for (int i = 0; i < m.cols; ++i)
        for (int j = 0; j < m.cols; ++j) x[i] += s.V.at(i, j) * y[j];
    return x;
}

}  // namespace gt
