#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gt/abelian.hpp"
#include "gt/automatic.hpp"
#include "gt/cellcomplex.hpp"
#include "gt/presentation.hpp"
#include "gt/words.hpp"

namespace gt {

// Edge label on a cube cell: a freely reduced word, "" for the null edge, or
// "*" for an edge collapsed to the basepoint.
using CubeLabel = std::string;

inline bool is_point_label(const CubeLabel& l) { return l == "*"; }

inline CubeLabel invert_label(const CubeLabel& l) {
    if (is_point_label(l)) return l;
    return invert(l);
}

// Directed edges of the n-cube are pairs (axis, base vertex) where the base
// has the axis bit clear; the edge runs toward the vertex with it set. Edges
// are indexed axis-major with bases in increasing vertex order.
inline int cube_edge_count(int dim) { return dim == 0 ? 0 : dim << (dim - 1); }

inline int cube_base_rank(int axis, int vertex) {
    return ((vertex >> (axis + 1)) << axis) | (vertex & ((1 << axis) - 1));
}

inline int cube_edge_index(int dim, int axis, int base) {
    return axis * (1 << (dim - 1)) + cube_base_rank(axis, base);
}

struct LabelledCube {
    int dim = 0;
    std::vector<CubeLabel> labels;  // indexed by cube_edge_index

    bool operator==(const LabelledCube&) const = default;
    bool operator<(const LabelledCube& o) const {
        if (dim != o.dim) return dim < o.dim;
        return labels < o.labels;
    }
};

// Square with the given bottom, right, top, left edge labels. Bottom and top
// run along axis 0, left and right along axis 1.
inline LabelledCube labelled_square(CubeLabel bottom, CubeLabel right,
                                    CubeLabel top, CubeLabel left) {
    return {2, {std::move(bottom), std::move(top), std::move(left), std::move(right)}};
}

// A symmetry of the n-cube: axis i maps to axis perm[i], reversing direction
// when bit i of flips is set. There are 2^n * n! of them.
struct CubeSymmetry {
    std::vector<int> perm;
    unsigned flips = 0;
};

inline std::vector<CubeSymmetry> cube_symmetries(int dim) {
    std::vector<int> p(dim);
    for (int i = 0; i < dim; ++i) p[i] = i;
    std::vector<CubeSymmetry> out;
    do {
        for (unsigned m = 0; m < (1u << dim); ++m) out.push_back({p, m});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline int symmetry_sign(const CubeSymmetry& g) {
    int inv = 0;
    for (size_t i = 0; i < g.perm.size(); ++i)
        for (size_t j = i + 1; j < g.perm.size(); ++j)
            if (g.perm[i] > g.perm[j]) ++inv;
    for (size_t i = 0; i < g.perm.size(); ++i)
        if ((g.flips >> i) & 1) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

inline int symmetry_vertex(const CubeSymmetry& g, int v) {
    int out = 0;
    for (size_t i = 0; i < g.perm.size(); ++i) {
        int bit = (v >> i) & 1;
        if ((g.flips >> i) & 1) bit ^= 1;
        out |= bit << g.perm[i];
    }
    return out;
}

// Transport a labelling along a symmetry; reversed edges invert their labels.
inline LabelledCube apply_symmetry(const LabelledCube& c, const CubeSymmetry& g) {
    LabelledCube out{c.dim, std::vector<CubeLabel>(c.labels.size())};
    for (int axis = 0; axis < c.dim; ++axis) {
        for (int v = 0; v < (1 << c.dim); ++v) {
            if ((v >> axis) & 1) continue;
            const CubeLabel& l = c.labels[cube_edge_index(c.dim, axis, v)];
            int w = symmetry_vertex(g, v);
            int axis2 = g.perm[axis];
            bool rev = (g.flips >> axis) & 1;
            int base2 = rev ? (w & ~(1 << axis2)) : w;
            out.labels[cube_edge_index(c.dim, axis2, base2)] =
                rev ? invert_label(l) : l;
        }
    }
    return out;
}

namespace detail {

// Minimal labelling over a symmetry orbit, with the first symmetry realizing
// it. The identity comes first in cube_symmetries, so fully symmetric cubes
// report sign +1.
inline std::pair<LabelledCube, const CubeSymmetry*> canonical_with(
    const LabelledCube& c, const std::vector<CubeSymmetry>& syms) {
    const CubeSymmetry* best_g = nullptr;
    LabelledCube best;
    for (const auto& g : syms) {
        LabelledCube img = apply_symmetry(c, g);
        if (!best_g || img.labels < best.labels) {
            best = std::move(img);
            best_g = &g;
        }
    }
    return {std::move(best), best_g};
}

}  // namespace detail

// Deterministic class representative: the minimum of the labelling's orbit
// under all cube symmetries.
inline LabelledCube canonical_form(const LabelledCube& c) {
    return detail::canonical_with(c, cube_symmetries(c.dim)).first;
}

// True when some label-preserving symmetry of the cube reverses orientation.
// The class cell of such a labelling is a quotient of the cube by a
// reflection; it folds onto its boundary image, so it carries no interior
// and collapses at attachment. For the remaining classes every symmetry
// identifying two faces has a well-defined sign.
inline bool is_folded_class(const LabelledCube& c,
                            const std::vector<CubeSymmetry>& syms) {
    for (const auto& g : syms) {
        if (symmetry_sign(g) != -1) continue;
        if (apply_symmetry(c, g).labels == c.labels) return true;
    }
    return false;
}

// The four directed edges of each square 2-face, listed as edge indices.
// Bottom and top run along the lower axis of the pair.
struct SquareFace {
    int bottom, right, top, left;
};

inline std::vector<SquareFace> cube_squares(int dim) {
    std::vector<SquareFace> out;
    for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b)
            for (int v = 0; v < (1 << dim); ++v) {
                if (((v >> a) & 1) || ((v >> b) & 1)) continue;
                out.push_back({cube_edge_index(dim, a, v),
                               cube_edge_index(dim, b, v | (1 << a)),
                               cube_edge_index(dim, a, v | (1 << b)),
                               cube_edge_index(dim, b, v)});
            }
    return out;
}

// Word read once around a square face. All four labels must be words.
inline Word square_boundary_word(const CubeLabel& bottom, const CubeLabel& right,
                                 const CubeLabel& top, const CubeLabel& left) {
    if (is_point_label(bottom) || is_point_label(right) || is_point_label(top) ||
        is_point_label(left))
        throw domain_error("square boundary word requires word labels");
    return free_reduce(bottom + right + invert(top) + invert(left));
}

// Restriction to the face with one axis pinned to side 0 or 1; remaining axes
// keep their relative order.
inline LabelledCube face_restriction(const LabelledCube& c, int axis, int side) {
    if (c.dim < 1) throw domain_error("cannot restrict a 0-cube");
    if (axis < 0 || axis >= c.dim || side < 0 || side > 1)
        throw domain_error("face out of range");
    int fd = c.dim - 1;
    LabelledCube out{fd, std::vector<CubeLabel>(cube_edge_count(fd))};
    int low = (1 << axis) - 1;
    for (int na = 0; na < fd; ++na) {
        int oa = na < axis ? na : na + 1;
        for (int nv = 0; nv < (1 << fd); ++nv) {
            if ((nv >> na) & 1) continue;
            int ov = ((nv & ~low) << 1) | (side << axis) | (nv & low);
            out.labels[cube_edge_index(fd, na, nv)] =
                c.labels[cube_edge_index(c.dim, oa, ov)];
        }
    }
    return out;
}

using WordProblem = std::function<bool(const Word&)>;

namespace detail {

inline constexpr long long labelling_node_budget = 20'000'000;

// Assignment order that completes square faces as early as possible, so the
// word-problem filter prunes high in the search tree.
inline std::vector<int> pruning_edge_order(int dim) {
    auto squares = cube_squares(dim);
    int e = cube_edge_count(dim);
    std::vector<int> order;
    std::vector<char> used(e, 0);
    for (int step = 0; step < e; ++step) {
        int best = -1, best_done = -1, best_part = -1;
        for (int cand = 0; cand < e; ++cand) {
            if (used[cand]) continue;
            int done = 0, part = 0;
            for (const auto& sq : squares) {
                std::array<int, 4> es{sq.bottom, sq.right, sq.top, sq.left};
                if (std::find(es.begin(), es.end(), cand) == es.end()) continue;
                int have = used[sq.bottom] + used[sq.right] + used[sq.top] + used[sq.left];
                if (have == 3) ++done;
                else ++part;
            }
            if (done > best_done || (done == best_done && part > best_part)) {
                best = cand;
                best_done = done;
                best_part = part;
            }
        }
        order.push_back(best);
        used[best] = 1;
    }
    return order;
}

inline std::vector<LabelledCube> sensible_classes(const std::vector<CubeLabel>& pool,
                                                  int dim, const WordProblem& wp,
                                                  const std::string& stratum) {
    if (dim < 1 || dim > 3)
        throw domain_error("cube dimension " + std::to_string(dim) +
                           " unsupported: labellings are enumerated for dimensions 1 to 3");
    int e = cube_edge_count(dim);
    auto squares = cube_squares(dim);
    auto order = pruning_edge_order(dim);
    std::vector<int> pos(e);
    for (int i = 0; i < e; ++i) pos[order[i]] = i;
    // Squares keyed by the step at which their last edge gets a label.
    std::vector<std::vector<int>> ready(e);
    for (size_t si = 0; si < squares.size(); ++si) {
        const auto& sq = squares[si];
        int last = std::max({pos[sq.bottom], pos[sq.right], pos[sq.top], pos[sq.left]});
        ready[last].push_back(static_cast<int>(si));
    }
    auto syms = cube_symmetries(dim);
    std::set<std::vector<CubeLabel>> classes;
    std::vector<CubeLabel> cur(e);
    long long nodes = 0;
    std::function<void(int)> rec = [&](int at) {
        if (at == e) {
            classes.insert(canonical_with({dim, cur}, syms).first.labels);
            return;
        }
        for (const CubeLabel& l : pool) {
            if (++nodes > labelling_node_budget)
                throw domain_error("enumeration budget exceeded in the " + stratum +
                                   " stratum");
            cur[order[at]] = l;
            bool ok = true;
            for (int si : ready[at]) {
                const auto& sq = squares[si];
                if (!wp(square_boundary_word(cur[sq.bottom], cur[sq.right],
                                             cur[sq.top], cur[sq.left]))) {
                    ok = false;
                    break;
                }
            }
            if (ok) rec(at + 1);
        }
    };
    rec(0);
    std::vector<LabelledCube> out;
    out.reserve(classes.size());
    for (const auto& v : classes) out.push_back({dim, v});
    return out;
}

}  // namespace detail

// One representative per symmetry class of word labellings whose square faces
// all read to the identity under wp. Labels range over reduced words of
// length <= magnitude, the empty word included.
inline std::vector<LabelledCube> sensible_labellings(const Alphabet& alph, int magnitude,
                                                     int dim, const WordProblem& wp) {
    if (magnitude < 0) throw domain_error("labelling magnitude must be non-negative");
    return detail::sensible_classes(reduced_words_upto(alph, magnitude), dim, wp,
                                    "labelled " + std::to_string(dim) + "-cell");
}

// Classes of {null, point}-labellings with at least one null edge, under the
// same symmetry group. The all-null cube is included here and coincides with
// a word-labelled class; callers merging strata deduplicate by class.
inline std::vector<LabelledCube> degenerate_labellings(int dim) {
    if (dim < 1 || dim > 3)
        throw domain_error("cube dimension " + std::to_string(dim) +
                           " unsupported: labellings are enumerated for dimensions 1 to 3");
    int e = cube_edge_count(dim);
    auto syms = cube_symmetries(dim);
    std::set<std::vector<CubeLabel>> classes;
    for (unsigned mask = 0; mask + 1 < (1u << e); ++mask) {
        LabelledCube c{dim, {}};
        c.labels.reserve(e);
        for (int i = 0; i < e; ++i)
            c.labels.push_back(((mask >> i) & 1) ? "*" : "");
        classes.insert(detail::canonical_with(c, syms).first.labels);
    }
    std::vector<LabelledCube> out;
    out.reserve(classes.size());
    for (const auto& v : classes) out.push_back({dim, v});
    return out;
}

// Prefix combing: step t sends an element to the image of the length-t prefix
// of its normal form. Returns the full table for steps 0..n over S.
inline std::map<std::pair<Word, int>, Word> lipschitz_contraction(
    const AutomaticStructure& s, const std::vector<Word>& S, int n) {
    if (n < 0) throw domain_error("contraction step count must be non-negative");
    std::map<std::pair<Word, int>, Word> h;
    for (const Word& g : S) {
        if (normal_form(s, g) != g)
            throw domain_error("contraction domain must consist of normal forms: " +
                               word_to_text(g));
        for (int t = 0; t <= n; ++t) {
            Word prefix = g.substr(0, std::min<size_t>(t, g.size()));
            h[{g, t}] = normal_form(s, prefix);
        }
    }
    return h;
}

// Shortlex-least among the shortest words representing the element with the
// given normal form.
inline Word shortest_word_for(const AutomaticStructure& s, const Word& target) {
    if (target.empty()) return target;
    for (const Word& w : reduced_words_upto(s.alphabet, target.size()))
        if (normal_form(s, w) == target) return w;
    return target;
}

// Cellulated cylinder over a square boundary. Layer t lists the four corner
// elements in boundary order (base corner first); horizontal[t][j] labels the
// edge from corner j to corner j+1 mod 4 within layer t; vertical[t][j] labels
// the edge from layer t to layer t+1 at corner j. The bottom layer sits at the
// basepoint with its ring collapsed to point labels; the top ring carries the
// input cell's labels.
struct ContractionLayers {
    std::vector<std::vector<Word>> vertices;
    std::vector<std::vector<CubeLabel>> horizontal;
    std::vector<std::vector<CubeLabel>> vertical;

    int steps() const { return static_cast<int>(vertices.size()) - 1; }
};

inline ContractionLayers contraction_search(const AutomaticStructure& s,
                                            const LabelledCube& top, int k,
                                            int n_max) {
    if (top.dim != 2)
        throw domain_error("contraction search expects a square boundary labelling");
    for (const CubeLabel& l : top.labels)
        if (is_point_label(l))
            throw domain_error("contraction search expects word labels");
    const Word& b = top.labels[0];
    const Word& t = top.labels[1];
    const Word& l = top.labels[2];
    const Word& r = top.labels[3];
    if (!is_trivial(s, square_boundary_word(b, r, t, l)))
        throw domain_error("boundary labelling is not sensible");
    std::array<Word, 4> corner{Word{}, normal_form(s, b), normal_form(s, b + r),
                               normal_form(s, l)};
    size_t n = 0;
    for (const Word& g : corner) n = std::max(n, g.size());
    if (static_cast<long long>(n) > n_max) {
        size_t total = b.size() + r.size() + t.size() + l.size();
        Int bound = 1;
        Int base = 2 * static_cast<long long>(s.alphabet.size()) + 1;
        for (size_t i = 0; i < static_cast<size_t>(k) * total; ++i) bound *= base;
        throw domain_error("contraction budget exhausted at step " + std::to_string(n) +
                           " of " + std::to_string(n_max) +
                           "; termination is only guaranteed within " + bound.str() +
                           " layers");
    }
    ContractionLayers out;
    for (size_t step = 0; step <= n; ++step) {
        std::vector<Word> row(4);
        for (int j = 0; j < 4; ++j)
            row[j] = normal_form(s, corner[j].substr(0, std::min(step, corner[j].size())));
        if (!out.vertices.empty() && out.vertices.back() == row) continue;
        out.vertices.push_back(std::move(row));
    }
    int m = out.steps();
    for (int step = 0; step <= m; ++step) {
        std::vector<CubeLabel> ring(4);
        if (step == m) {
            ring = {b, r, invert(t), invert(l)};
        } else if (step == 0) {
            ring = {"*", "*", "*", "*"};
        } else {
            for (int j = 0; j < 4; ++j)
                ring[j] = shortest_word_for(
                    s, normal_form(s, invert(out.vertices[step][j]) +
                                          out.vertices[step][(j + 1) % 4]));
        }
        out.horizontal.push_back(std::move(ring));
    }
    for (int step = 0; step < m; ++step) {
        std::vector<CubeLabel> up(4);
        for (int j = 0; j < 4; ++j)
            up[j] = shortest_word_for(
                s, normal_form(s, invert(out.vertices[step][j]) +
                                      out.vertices[step + 1][j]));
        out.vertical.push_back(std::move(up));
    }
    return out;
}

enum class Stratum { vital, inflated, degenerate, translation };

inline const char* stratum_name(Stratum st) {
    switch (st) {
        case Stratum::vital: return "vital";
        case Stratum::inflated: return "inflated";
        case Stratum::degenerate: return "degenerate";
        case Stratum::translation: return "translation";
    }
    return "?";
}

struct SkeletonBuild {
    CellComplex complex;
    std::map<std::string, Stratum> strata;  // by cell id
    int k = 0;
    int d = 0;
    Alphabet alphabet;       // group generators
    Alphabet edge_alphabet;  // letters naming the 1-cells
    std::map<std::string, Word> edge_words;  // 1-cell id -> representative ("" = null edge)
    bool faithful = true;
    std::map<int, int> folded;  // dim -> classes collapsed at attachment
};

// Geometric model of the group on one vertex: 1-cells for words up to length
// k^d (plus the null edge), square cells for sensible and degenerate
// labellings, and translation cells expressing long edges by their letters.
inline SkeletonBuild build_skeleton(
    const AutomaticStructure& s, int k, int d,
    const std::optional<std::vector<Word>>& restrict_labels = std::nullopt) {
    int ft = fellow_traveller_constant(s).k;
    if (k < ft)
        throw domain_error("k must be at least the fellow traveller constant " +
                           std::to_string(ft));
    if (d < 1 || d > 2)
        throw domain_error("skeleton dimension " + std::to_string(d + 1) +
                           " unsupported: cells are enumerated up to dimension 3");
    long long cap = 1;
    for (int i = 0; i < d; ++i) cap *= k;

    std::vector<CubeLabel> pool;
    if (restrict_labels) {
        std::set<Word> ws{Word{}};
        for (const Word& w : *restrict_labels) {
            s.alphabet.validate_word(w);
            if (!is_reduced(w)) throw domain_error("label list must be freely reduced");
            if (static_cast<long long>(w.size()) > cap)
                throw domain_error("label '" + w + "' exceeds length " +
                                   std::to_string(cap));
            ws.insert(w);
            ws.insert(invert(w));
            // Translation cells spell long labels letter by letter, so the
            // generated subcomplex keeps the letter edges.
            for (char c : w) {
                ws.insert(Word(1, c));
                ws.insert(Word(1, inverse_letter(c)));
            }
        }
        pool.assign(ws.begin(), ws.end());
        sort_shortlex(s.alphabet, pool);
    } else {
        pool = reduced_words_upto(s.alphabet, cap);
    }

    std::map<Word, bool> wp_cache;
    WordProblem wp = [&](const Word& w) {
        auto it = wp_cache.find(w);
        if (it != wp_cache.end()) return it->second;
        bool ok = is_trivial(s, w);
        wp_cache.emplace(w, ok);
        return ok;
    };

    // 1-cells: one per inverse pair of pool words, named by single letters so
    // square cells can state attaching words.
    std::vector<Word> reps;
    {
        std::set<Word> rs;
        for (const Word& w : pool) {
            if (w.empty()) continue;
            Word iw = invert(w);
            rs.insert(shortlex_less(s.alphabet, w, iw) ? w : iw);
        }
        reps.assign(rs.begin(), rs.end());
        sort_shortlex(s.alphabet, reps);
    }
    if (1 + reps.size() > 26)
        throw domain_error("enumeration budget exceeded in the 1-cell stratum: " +
                           std::to_string(1 + reps.size()) +
                           " edges cannot be named by single letters");
    std::string letters;
    for (size_t i = 0; i < 1 + reps.size(); ++i)
        letters.push_back(static_cast<char>('a' + i));
    std::map<Word, char> rep_letter;
    for (size_t i = 0; i < reps.size(); ++i) rep_letter[reps[i]] = letters[i + 1];

    // Letter for traversing an edge labelled l in the given direction; point
    // labels vanish.  The null edge equals its own reverse, so its traversal
    // direction carries no information: degenerate cells read it forward on
    // every crossing, and word cells collapse it with the basepoint.
    auto letter_for = [&](const CubeLabel& lab, bool forward,
                          bool genuine_null) -> std::string {
        if (is_point_label(lab)) return "";
        if (lab.empty())
            return genuine_null ? std::string(1, letters[0]) : std::string{};
        Word iw = invert(lab);
        bool is_rep = shortlex_less(s.alphabet, lab, iw);
        char c = rep_letter.at(is_rep ? lab : iw);
        if (!is_rep) forward = !forward;
        return std::string(1, forward ? c : inverse_letter(c));
    };

    std::vector<Cell> cells;
    std::map<std::string, Stratum> strata;
    std::map<std::string, Word> edge_words;
    cells.push_back({"pt", 0, {}, std::nullopt});
    strata["pt"] = Stratum::vital;
    edge_words[std::string(1, letters[0])] = Word{};
    cells.push_back({std::string(1, letters[0]), 1, {}, std::nullopt});
    strata[std::string(1, letters[0])] = Stratum::vital;
    for (size_t i = 0; i < reps.size(); ++i) {
        std::string id(1, letters[i + 1]);
        cells.push_back({id, 1, {}, std::nullopt});
        strata[id] = reps[i].size() <= 1 ? Stratum::vital : Stratum::inflated;
        edge_words[id] = reps[i];
    }

    // Square cells: sensible word labellings of magnitude k^d merged with the
    // degenerate classes; the all-null square is realized once, through its
    // degenerate incidence. Word classes fixed by an orientation-reversing
    // symmetry fold onto their boundary image: they are enumerated, counted,
    // and collapsed at attachment, like the all-point faces. Null edges in
    // word cells collapse with the basepoint; degenerate cells traverse the
    // genuine null 1-cell.
    auto word2 = detail::sensible_classes(pool, 2, wp, "inflated 2-cell");
    auto deg2 = degenerate_labellings(2);
    auto syms2 = cube_symmetries(2);
    std::map<std::vector<CubeLabel>, std::string> square_ids;
    std::set<std::vector<CubeLabel>> folded2;
    std::map<std::string, std::map<std::string, int>> square_chain;
    std::map<int, int> folded_counts;
    int next2 = 0;
    bool inflated_squares = false;
    auto add_square = [&](const LabelledCube& c, Stratum st) {
        if (square_ids.count(c.labels)) return;
        bool wordcell = st != Stratum::degenerate;
        if (wordcell && is_folded_class(c, syms2)) {
            if (folded2.insert(c.labels).second) folded_counts[2]++;
            return;
        }
        std::string id = "f" + std::to_string(next2++);
        square_ids[c.labels] = id;
        std::string attach = letter_for(c.labels[0], true, !wordcell) +
                             letter_for(c.labels[3], true, !wordcell) +
                             letter_for(c.labels[1], false, !wordcell) +
                             letter_for(c.labels[2], false, !wordcell);
        square_chain[id] = signed_letter_counts(attach);
        cells.push_back({id, 2, {}, attach});
        strata[id] = st;
        if (st == Stratum::inflated) inflated_squares = true;
    };
    for (const auto& c : word2) {
        bool anyword = false;
        for (const auto& lab : c.labels)
            if (!lab.empty()) anyword = true;
        if (!anyword) continue;
        bool vital = true;
        for (const auto& lab : c.labels)
            if (static_cast<long long>(lab.size()) > k) vital = false;
        add_square(c, vital ? Stratum::vital : Stratum::inflated);
    }
    for (const auto& c : deg2) add_square(c, Stratum::degenerate);

    // Translation squares: each long edge is homotoped onto the path spelling
    // its word letter by letter.
    for (const Word& w : reps) {
        if (w.size() < 2) continue;
        std::string id = "f" + std::to_string(next2++);
        std::string attach = letter_for(w, true, false);
        for (size_t i = w.size(); i-- > 0;)
            attach += letter_for(Word(1, w[i]), false, false);
        cells.push_back({id, 2, {}, attach});
        strata[id] = Stratum::translation;
    }

    if (d == 2) {
        if (inflated_squares)
            throw domain_error(
                "enumeration budget exceeded in the translation 3-cell stratum: "
                "non-vital square cells would require cellulated contraction "
                "fillings beyond the supported budget");
        auto word3 = detail::sensible_classes(pool, 3, wp, "inflated 3-cell");
        auto deg3 = degenerate_labellings(3);
        auto syms3 = cube_symmetries(3);
        // The null label is its own inverse, so identifying a face with its
        // class representative can reverse traversals of the null edge.  The
        // mismatch is always a multiple of that edge; rerouting the attaching
        // map across the square that null-homotopes it cancels the residue
        // without changing the homotopy type.
        std::string null_id(1, letters[0]);
        std::string killer_id =
            square_ids.at(std::vector<CubeLabel>{"", "*", "*", "*"});
        int next3 = 0;
        std::set<std::vector<CubeLabel>> seen3;
        auto add_cube = [&](const LabelledCube& c, Stratum st) {
            if (seen3.count(c.labels)) return;
            bool wordcell = st != Stratum::degenerate;
            if (wordcell && is_folded_class(c, syms3)) {
                seen3.insert(c.labels);
                folded_counts[3]++;
                return;
            }
            seen3.insert(c.labels);
            std::map<std::string, int> boundary;
            for (int axis = 0; axis < 3; ++axis)
                for (int side = 0; side < 2; ++side) {
                    LabelledCube face = face_restriction(c, axis, side);
                    bool collapsed = true, allnull = true;
                    for (const auto& lab : face.labels) {
                        if (!is_point_label(lab)) collapsed = false;
                        if (!lab.empty()) allnull = false;
                    }
                    if (collapsed) continue;
                    if (wordcell && allnull) continue;
                    auto [canon, g] = detail::canonical_with(face, syms2);
                    if (folded2.count(canon.labels)) continue;
                    auto it = square_ids.find(canon.labels);
                    if (it == square_ids.end())
                        throw domain_error("3-cell face falls outside the square strata");
                    int sign = (axis % 2 ? -1 : 1) * (side ? 1 : -1) * symmetry_sign(*g);
                    boundary[it->second] += sign;
                }
            std::map<std::string, int> edge_sum;
            for (const auto& [fid, coeff] : boundary)
                for (const auto& [eid, ec] : square_chain.at(fid))
                    edge_sum[eid] += coeff * ec;
            for (const auto& [eid, v] : edge_sum)
                if (v != 0 && eid != null_id)
                    throw domain_error("face identification left a nonzero chain on edge " +
                                       eid);
            auto es = edge_sum.find(null_id);
            if (es != edge_sum.end() && es->second != 0)
                boundary[killer_id] -= es->second;
            for (auto it = boundary.begin(); it != boundary.end();)
                it = it->second == 0 ? boundary.erase(it) : std::next(it);
            std::string id = "c" + std::to_string(next3++);
            cells.push_back({id, 3, std::move(boundary), std::nullopt});
            strata[id] = st;
        };
        for (const auto& c : word3) {
            bool anyword = false;
            for (const auto& lab : c.labels)
                if (!lab.empty()) anyword = true;
            if (!anyword) continue;
            add_cube(c, Stratum::vital);
        }
        for (const auto& c : deg3) add_cube(c, Stratum::degenerate);
    }

    SkeletonBuild out{make_complex(std::move(cells)),
                      std::move(strata),
                      k,
                      d,
                      s.alphabet,
                      Alphabet(letters),
                      std::move(edge_words),
                      !restrict_labels.has_value(),
                      std::move(folded_counts)};
    return out;
}

// Generators: the 1-cells. Relators: attaching words of the square cells,
// dropping those that reduce to nothing.
inline Presentation edge_path_presentation(const SkeletonBuild& b) {
    std::vector<Word> rels;
    for (const Cell& c : b.complex.cells) {
        if (c.dim != 2 || !c.attach) continue;
        Word r = free_reduce(*c.attach);
        if (!r.empty()) rels.push_back(r);
    }
    return make_presentation(b.edge_alphabet, rels);
}

inline std::string stratum_report(const SkeletonBuild& b) {
    std::map<int, std::map<Stratum, int>> counts;
    for (const Cell& c : b.complex.cells) counts[c.dim][b.strata.at(c.id)]++;
    std::ostringstream os;
    os << "skeleton k=" << b.k << " d=" << b.d << " alphabet=" << b.alphabet.letters
       << "\n";
    if (!b.faithful) os << "restricted label pool: under-approximation only\n";
    for (const auto& [dim, per] : counts) {
        os << "dim " << dim << ":";
        for (Stratum st : {Stratum::vital, Stratum::inflated, Stratum::degenerate,
                           Stratum::translation}) {
            auto it = per.find(st);
            os << " " << stratum_name(st) << "=" << (it == per.end() ? 0 : it->second);
        }
        auto fit = b.folded.find(dim);
        os << " folded=" << (fit == b.folded.end() ? 0 : fit->second) << "\n";
    }
    os << "degenerate classes are enumerated in full; collapsed faces and folded "
          "classes contribute no incidence\n";
    return os.str();
}

}  // namespace gt
