#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gt/abelian.hpp"
#include "gt/errors.hpp"
#include "gt/textio.hpp"
#include "gt/words.hpp"

namespace gt {

// Finite CW complex described by integer incidence data. Cells in dimensions
// >= 3 carry only incidence coefficients; 2-cells also carry their attaching
// word over the 1-cell letters, with capitals traversing an edge backwards.
struct Cell {
    std::string id;
    int dim = 0;
    std::map<std::string, int> boundary;  // (dim-1)-cell id -> coefficient
    std::optional<std::string> attach;    // required exactly when dim == 2

    bool operator==(const Cell&) const = default;
};

struct CellComplex {
    std::vector<Cell> cells;

    bool operator==(const CellComplex&) const = default;

    int top_dimension() const {
        int d = 0;
        for (const auto& c : cells) d = std::max(d, c.dim);
        return d;
    }

    std::vector<int> of_dim(int n) const {
        std::vector<int> out;
        for (size_t i = 0; i < cells.size(); ++i)
            if (cells[i].dim == n) out.push_back(static_cast<int>(i));
        return out;
    }

    int count(int n) const { return static_cast<int>(of_dim(n).size()); }
};

// Net exponent of each edge letter in an attaching word.
inline std::map<std::string, int> signed_letter_counts(const std::string& w) {
    std::map<std::string, int> out;
    for (char c : w) {
        bool inv = is_inverse_char(c);
        char base = inv ? inverse_letter(c) : c;
        out[std::string(1, base)] += inv ? -1 : 1;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

inline IntMatrix boundary_matrix(const CellComplex& c, int n);

inline CellComplex make_complex(std::vector<Cell> cells) {
    CellComplex out;
    out.cells = std::move(cells);
    std::map<std::string, int> index;
    for (size_t i = 0; i < out.cells.size(); ++i) {
        Cell& cell = out.cells[i];
        if (cell.id.empty()) throw domain_error("cell with empty id");
        if (cell.dim < 0) throw domain_error("cell " + cell.id + " has negative dimension");
        if (!index.emplace(cell.id, static_cast<int>(i)).second)
            throw domain_error("duplicate cell id " + cell.id);
    }
    for (Cell& cell : out.cells) {
        std::erase_if(cell.boundary, [](const auto& kv) { return kv.second == 0; });
        if (cell.dim == 0 && !cell.boundary.empty())
            throw domain_error("vertex " + cell.id + " has a boundary");
        for (const auto& [tid, coeff] : cell.boundary) {
            auto it = index.find(tid);
            if (it == index.end())
                throw domain_error("cell " + cell.id + " bounds unknown cell " + tid);
            if (out.cells[it->second].dim != cell.dim - 1)
                throw domain_error("cell " + cell.id + " bounds " + tid +
                                   " of the wrong dimension");
        }
        if ((cell.dim == 2) != cell.attach.has_value())
            throw domain_error(cell.dim == 2
                                   ? "2-cell " + cell.id + " has no attaching word"
                                   : "cell " + cell.id +
                                         " of dimension != 2 has an attaching word");
        if (cell.attach) {
            for (char ch : *cell.attach) {
                char base = is_inverse_char(ch) ? inverse_letter(ch) : ch;
                if (!is_generator_char(base))
                    throw domain_error("attaching word of " + cell.id +
                                       " uses a non-letter");
                auto it = index.find(std::string(1, base));
                if (it == index.end() || out.cells[it->second].dim != 1)
                    throw domain_error("attaching word of " + cell.id +
                                       " crosses unknown edge " + std::string(1, base));
            }
            auto counts = signed_letter_counts(*cell.attach);
            if (cell.boundary.empty())
                cell.boundary = counts;
            else if (cell.boundary != counts)
                throw domain_error("boundary of " + cell.id +
                                   " disagrees with its attaching word");
        }
    }
    for (int n = 2; n <= out.top_dimension(); ++n) {
        IntMatrix prod = multiply(boundary_matrix(out, n - 1), boundary_matrix(out, n));
        for (const auto& x : prod.a)
            if (x != 0)
                throw domain_error("boundary of boundary is nonzero in dimension " +
                                   std::to_string(n));
    }
    return out;
}

// Matrix of the n-th boundary map, rows over (n-1)-cells and columns over
// n-cells in stored order.
inline IntMatrix boundary_matrix(const CellComplex& c, int n) {
    if (n < 1 || n > c.top_dimension())
        throw domain_error("boundary dimension " + std::to_string(n) + " out of range");
    std::vector<int> rows = c.of_dim(n - 1), cols = c.of_dim(n);
    std::map<std::string, int> row_of;
    for (size_t i = 0; i < rows.size(); ++i) row_of[c.cells[rows[i]].id] = static_cast<int>(i);
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [tid, coeff] : c.cells[cols[j]].boundary)
            m.at(row_of.at(tid), static_cast<int>(j)) = coeff;
    return m;
}

struct ChainComplex {
    std::vector<IntMatrix> boundary;  // boundary[n] is the map out of dimension n+1
};

inline ChainComplex chain_complex(const CellComplex& c) {
    ChainComplex out;
    for (int n = 1; n <= c.top_dimension(); ++n)
        out.boundary.push_back(boundary_matrix(c, n));
    return out;
}

inline int euler_characteristic(const CellComplex& c) {
    int chi = 0;
    for (const auto& cell : c.cells) chi += cell.dim % 2 == 0 ? 1 : -1;
    return chi;
}

// ---------------------------------------------------------------------------
// Text format.

inline CellComplex parse_complex_body(LineReader& in) {
    std::vector<Cell> cells;
    std::string line;
    for (;;) {
        if (!in.next(line))
            throw parse_error(in.where() + ": unexpected end inside complex");
        auto toks = split_tokens(line);
        if (toks[0] == "end") break;
        if (toks[0] == "cell") {
            if (toks.size() != 4 || toks[2] != "dim")
                throw parse_error(in.where() + ": expected 'cell <id> dim <n>'");
            Cell cell;
            cell.id = toks[1];
            cell.dim = parse_int(toks[3], in.where());
            cells.push_back(std::move(cell));
        } else if (toks[0] == "boundary") {
            if (cells.empty())
                throw parse_error(in.where() + ": boundary before any cell");
            for (size_t i = 1; i < toks.size(); ++i) {
                std::string t = toks[i];
                int sign = 1;
                if (t[0] == '+' || t[0] == '-') {
                    sign = t[0] == '-' ? -1 : 1;
                    t.erase(0, 1);
                }
                if (t.empty()) throw parse_error(in.where() + ": bare sign in boundary");
                cells.back().boundary[t] += sign;
            }
        } else if (toks[0] == "attach") {
            if (cells.empty())
                throw parse_error(in.where() + ": attach before any cell");
            if (toks.size() != 2)
                throw parse_error(in.where() + ": expected 'attach <word>'");
            if (cells.back().attach)
                throw parse_error(in.where() + ": second attaching word for one cell");
            cells.back().attach = toks[1];
        } else {
            throw parse_error(in.where() + ": unknown directive '" + toks[0] + "'");
        }
    }
    return make_complex(std::move(cells));
}

inline CellComplex parse_complex(const std::string& text, const std::string& source) {
    std::istringstream ss(text);
    LineReader in(ss, source);
    std::string line;
    if (!in.next(line) || line != "complex")
        throw parse_error(in.where() + ": expected 'complex'");
    auto c = parse_complex_body(in);
    if (in.next(line)) throw parse_error(in.where() + ": trailing input after complex");
    return c;
}

inline void print_complex(std::ostream& os, const CellComplex& c) {
    os << "complex\n";
    for (const auto& cell : c.cells) {
        os << "cell " << cell.id << " dim " << cell.dim << "\n";
        if (!cell.boundary.empty()) {
            os << "boundary";
            for (const auto& [tid, coeff] : cell.boundary)
                for (int i = 0; i < std::abs(coeff); ++i)
                    os << ' ' << (coeff < 0 ? "-" : "") << tid;
            os << "\n";
        }
        if (cell.attach) os << "attach " << *cell.attach << "\n";
    }
    os << "end\n";
}

inline CellComplex load_complex(const std::string& path) {
    return parse_complex(read_file_text(path), path);
}

// ---------------------------------------------------------------------------
// Homology with coefficients in a finitely generated abelian group, trivial
// action. The subquotient ker(g (x) A) / im(f (x) A) is presented on a
// spanning set of the kernel preimage lattice; relations are the coefficient
// torsion, the image columns, and the syzygies of the spanning set.

namespace detail {

inline AbelianType tensor_subquotient(const IntMatrix& g, const IntMatrix& f,
                                      const AbelianType& coeff) {
    if (g.cols != f.rows) throw domain_error("chain maps do not compose");
    {
        IntMatrix zero = multiply(g, f);
        for (const auto& x : zero.a)
            if (x != 0) throw domain_error("composite of chain maps is nonzero");
    }
    int r = coeff.rank, t = static_cast<int>(coeff.torsion.size());
    int q = r + t;
    int b = g.cols, a = g.rows, e = f.cols;
    // Generators of {x : (g (x) id) x lies in the target's torsion lattice}.
    IntMatrix G(a * q, b * q + a * t);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            if (g.at(i, j) != 0)
                for (int s = 0; s < q; ++s) G.at(i * q + s, j * q + s) = g.at(i, j);
    for (int i = 0; i < a; ++i)
        for (int u = 0; u < t; ++u)
            G.at(i * q + r + u, b * q + i * t + u) = coeff.torsion[u];
    IntMatrix K = kernel_columns(G);
    IntMatrix P(b * q, K.cols);
    for (int i = 0; i < b * q; ++i)
        for (int j = 0; j < K.cols; ++j) P.at(i, j) = K.at(i, j);

    std::vector<std::vector<Int>> rel_rows;
    auto impose = [&](const std::vector<Int>& v) {
        auto z = solve_columns(P, v);
        if (!z) throw domain_error("relation escapes the kernel lattice");
        rel_rows.push_back(*z);
    };
    for (int j = 0; j < b; ++j)
        for (int u = 0; u < t; ++u) {
            std::vector<Int> v(b * q, 0);
            v[j * q + r + u] = coeff.torsion[u];
            impose(v);
        }
    for (int w = 0; w < e; ++w)
        for (int s = 0; s < q; ++s) {
            std::vector<Int> v(b * q, 0);
            for (int j = 0; j < b; ++j) v[j * q + s] = f.at(j, w);
            impose(v);
        }
    IntMatrix syz = kernel_columns(P);
    IntMatrix rel(static_cast<int>(rel_rows.size()) + syz.cols, P.cols);
    for (size_t i = 0; i < rel_rows.size(); ++i)
        for (int j = 0; j < P.cols; ++j) rel.at(static_cast<int>(i), j) = rel_rows[i][j];
    for (int j = 0; j < syz.cols; ++j)
        for (int i = 0; i < P.cols; ++i)
            rel.at(static_cast<int>(rel_rows.size()) + j, i) = syz.at(i, j);
    return classify(rel);
}

inline IntMatrix boundary_or_zero(const CellComplex& c, int n) {
    if (n >= 1 && n <= c.top_dimension()) return boundary_matrix(c, n);
    return IntMatrix(n >= 1 ? c.count(n - 1) : 0, n >= 0 ? c.count(n) : 0);
}

}  // namespace detail

inline AbelianType homology(const CellComplex& c, int n, const AbelianType& coeff) {
    if (n < 0) throw domain_error("negative homology dimension");
    IntMatrix g = n == 0 ? IntMatrix(0, c.count(0)) : detail::boundary_or_zero(c, n);
    IntMatrix f = detail::boundary_or_zero(c, n + 1);
    return detail::tensor_subquotient(g, f, coeff);
}

inline AbelianType cohomology(const CellComplex& c, int n, const AbelianType& coeff) {
    if (n < 0) throw domain_error("negative cohomology dimension");
    IntMatrix g = transpose(detail::boundary_or_zero(c, n + 1));
    IntMatrix f = n == 0 ? IntMatrix(c.count(0), 0)
                         : transpose(detail::boundary_or_zero(c, n));
    return detail::tensor_subquotient(g, f, coeff);
}

}  // namespace gt
