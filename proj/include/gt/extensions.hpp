#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gt/abelian.hpp"
#include "gt/cellcomplex.hpp"
#include "gt/presentation.hpp"
#include "gt/words.hpp"

namespace gt {

// Cellular 2-cocycle on a 3-skeleton with coefficients in a fixed finitely
// generated abelian group A. Values are coordinate vectors in A's canonical
// decomposition (free coordinates first, then one residue per torsion
// factor); coords are the cocycle's class coordinates in the cohomology
// quotient, torsion residues reduced.
struct Cocycle {
    std::map<std::string, std::vector<Int>> values;
    std::vector<Int> coords;

    bool operator==(const Cocycle&) const = default;
};

struct ExtensionPresentation {
    Presentation presentation;
    std::vector<Int> class_coords;
    long long class_index = -1;
};

namespace detail {

// One coefficient summand (Z when modulus = 0, else Z/modulus). Columns of P
// span the lattice of integer cochains whose coboundary vanishes mod the
// modulus; the Smith form of the coboundary-image relations turns
// P-coordinates into class coordinates y = V^T x with invariant factor
// orders.
struct H2Component {
    Int modulus = 0;
    IntMatrix P{0, 0};
    IntMatrix Vt{0, 0};
    IntMatrix Vinvt{0, 0};
    std::vector<Int> factors;
};

inline H2Component h2_component(const IntMatrix& d2t, const IntMatrix& d3t,
                                const Int& modulus) {
    int n2 = d3t.cols;
    H2Component out;
    out.modulus = modulus;
    if (modulus == 0) {
        out.P = kernel_columns(d3t);
    } else {
        IntMatrix block(d3t.rows, n2 + d3t.rows);
        for (int i = 0; i < d3t.rows; ++i) {
            for (int j = 0; j < n2; ++j) block.at(i, j) = d3t.at(i, j);
            block.at(i, n2 + i) = -modulus;
        }
        IntMatrix K = kernel_columns(block);
        out.P = IntMatrix(n2, K.cols);
        for (int i = 0; i < n2; ++i)
            for (int j = 0; j < K.cols; ++j) out.P.at(i, j) = K.at(i, j);
    }
    std::vector<std::vector<Int>> rel;
    auto impose = [&](const std::vector<Int>& v) {
        auto x = solve_columns(out.P, v);
        if (!x) throw domain_error("coboundary escapes the cocycle lattice");
        rel.push_back(*x);
    };
    for (int j = 0; j < d2t.cols; ++j) {
        std::vector<Int> v(n2, 0);
        for (int i = 0; i < n2; ++i) v[i] = d2t.at(i, j);
        impose(v);
    }
    if (modulus != 0)
        for (int j = 0; j < n2; ++j) {
            std::vector<Int> v(n2, 0);
            v[j] = modulus;
            impose(v);
        }
    IntMatrix syz = kernel_columns(out.P);
    IntMatrix R(static_cast<int>(rel.size()) + syz.cols, out.P.cols);
    for (size_t i = 0; i < rel.size(); ++i)
        for (int j = 0; j < out.P.cols; ++j) R.at(static_cast<int>(i), j) = rel[i][j];
    for (int j = 0; j < syz.cols; ++j)
        for (int i = 0; i < out.P.cols; ++i)
            R.at(static_cast<int>(rel.size()) + j, i) = syz.at(i, j);
    auto snf = smith_normal_form(R);
    out.Vt = transpose(snf.V);
    out.Vinvt = transpose(snf.Vinv);
    out.factors.resize(out.P.cols);
    for (int i = 0; i < out.P.cols; ++i) out.factors[i] = snf.diag(i);
    return out;
}

inline Int canonical_residue(const Int& v, const Int& m) {
    if (m == 0) return v;
    Int r = v % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace detail

// Duplicate-free enumeration of H^2(c; A): one representative cocycle per
// class. Finite coordinate directions are exhausted first for each free-part
// shell; free directions spiral 0, 1, -1, 2, -2, ...
class CocycleEnumeration {
  public:
    CocycleEnumeration(const CellComplex& c, AbelianType coeff)
        : coeff_(std::move(coeff)) {
        if (c.count(0) != 1)
            throw domain_error("cocycle enumeration requires a one-vertex complex");
        for (int idx : c.of_dim(2)) {
            if (!c.cells[idx].attach)
                throw domain_error("2-cell " + c.cells[idx].id +
                                   " has no attaching word");
            cell_ids_.push_back(c.cells[idx].id);
        }
        IntMatrix d2t = transpose(detail::boundary_or_zero(c, 2));
        IntMatrix d3t = transpose(detail::boundary_or_zero(c, 3));
        std::map<Int, detail::H2Component> by_modulus;
        int q = coeff_.rank + static_cast<int>(coeff_.torsion.size());
        for (int u = 0; u < q; ++u) {
            Int t = u < coeff_.rank ? Int(0) : coeff_.torsion[u - coeff_.rank];
            auto it = by_modulus.find(t);
            if (it == by_modulus.end())
                it = by_modulus.emplace(t, detail::h2_component(d2t, d3t, t)).first;
            components_.push_back(it->second);
            const auto& comp = components_.back();
            for (int i = 0; i < static_cast<int>(comp.factors.size()); ++i) {
                if (comp.factors[i] == 1) continue;
                if (comp.factors[i] == 0)
                    free_slots_.push_back({u, i});
                else
                    torsion_slots_.push_back({u, i});
            }
        }
        torsion_state_.assign(torsion_slots_.size(), 0);
        free_state_.assign(free_slots_.size(), 0);
    }

    const AbelianType& coefficients() const { return coeff_; }

    bool finite() const { return free_slots_.empty(); }

    // Order of H^2 when finite.
    Int class_count() const {
        if (!finite()) throw domain_error("infinitely many cohomology classes");
        Int n = 1;
        for (const auto& slot : torsion_slots_)
            n *= components_[slot.first].factors[slot.second];
        return n;
    }

    AbelianType h2_type() const {
        int total = static_cast<int>(free_slots_.size() + torsion_slots_.size());
        IntMatrix rel(static_cast<int>(torsion_slots_.size()), total);
        for (size_t i = 0; i < torsion_slots_.size(); ++i)
            rel.at(static_cast<int>(i), static_cast<int>(i)) =
                components_[torsion_slots_[i].first].factors[torsion_slots_[i].second];
        return classify(rel);
    }

    std::optional<Cocycle> next() {
        if (done_) return std::nullopt;
        Cocycle out = realize();
        advance();
        return out;
    }

    // Class coordinates of an arbitrary valid cocycle, in the same layout the
    // enumeration emits: torsion slots then free slots.
    std::vector<Int> reduce(const Cocycle& z) const {
        int q = coeff_.rank + static_cast<int>(coeff_.torsion.size());
        std::vector<std::vector<Int>> ys(q);
        for (int u = 0; u < q; ++u) {
            const auto& comp = components_[u];
            std::vector<Int> v(cell_ids_.size(), 0);
            for (size_t j = 0; j < cell_ids_.size(); ++j) {
                auto it = z.values.find(cell_ids_[j]);
                if (it == z.values.end()) continue;
                if (static_cast<int>(it->second.size()) != q)
                    throw domain_error("cocycle value has the wrong coordinate count");
                v[j] = it->second[u];
            }
            auto x = solve_columns(comp.P, v);
            if (!x) throw domain_error("not a cocycle for these coefficients");
            std::vector<Int> y(comp.Vt.rows, 0);
            for (int i = 0; i < comp.Vt.rows; ++i)
                for (int j = 0; j < comp.Vt.cols; ++j) y[i] += comp.Vt.at(i, j) * (*x)[j];
            ys[u] = std::move(y);
        }
        std::vector<Int> coords;
        for (const auto& slot : torsion_slots_)
            coords.push_back(detail::canonical_residue(
                ys[slot.first][slot.second],
                components_[slot.first].factors[slot.second]));
        for (const auto& slot : free_slots_) coords.push_back(ys[slot.first][slot.second]);
        return coords;
    }

  private:
    // Spiral value for a shell index: 0, 1, -1, 2, -2, ...
    static Int spiral_value(long long idx) {
        if (idx == 0) return 0;
        return idx % 2 == 1 ? Int((idx + 1) / 2) : Int(-(idx / 2));
    }

    Cocycle realize() const {
        int q = coeff_.rank + static_cast<int>(coeff_.torsion.size());
        Cocycle out;
        std::vector<std::vector<Int>> ys(q);
        for (int u = 0; u < q; ++u) ys[u].assign(components_[u].factors.size(), 0);
        for (size_t i = 0; i < torsion_slots_.size(); ++i) {
            ys[torsion_slots_[i].first][torsion_slots_[i].second] = torsion_state_[i];
            out.coords.push_back(torsion_state_[i]);
        }
        for (size_t i = 0; i < free_slots_.size(); ++i) {
            Int v = spiral_value(free_state_[i]);
            ys[free_slots_[i].first][free_slots_[i].second] = v;
            out.coords.push_back(v);
        }
        for (size_t j = 0; j < cell_ids_.size(); ++j)
            out.values[cell_ids_[j]].assign(q, 0);
        for (int u = 0; u < q; ++u) {
            const auto& comp = components_[u];
            std::vector<Int> x(comp.P.cols, 0);
            for (int i = 0; i < comp.Vinvt.rows; ++i)
                for (int j = 0; j < comp.Vinvt.cols; ++j)
                    x[i] += comp.Vinvt.at(i, j) * ys[u][j];
            for (size_t j = 0; j < cell_ids_.size(); ++j) {
                Int v = 0;
                for (int i = 0; i < comp.P.cols; ++i)
                    v += comp.P.at(static_cast<int>(j), i) * x[i];
                out.values[cell_ids_[j]][u] = detail::canonical_residue(v, comp.modulus);
            }
        }
        return out;
    }

    void advance() {
        for (size_t i = torsion_state_.size(); i-- > 0;) {
            torsion_state_[i] += 1;
            if (torsion_state_[i] <
                components_[torsion_slots_[i].first].factors[torsion_slots_[i].second])
                return;
            torsion_state_[i] = 0;
        }
        if (free_slots_.empty()) {
            done_ = true;
            return;
        }
        // Next free tuple within the current shell: all indices <= shell with
        // at least one equal to it, in lexicographic order.
        for (;;) {
            size_t i = free_state_.size();
            while (i-- > 0) {
                if (free_state_[i] < shell_) {
                    free_state_[i] += 1;
                    std::fill(free_state_.begin() + static_cast<long>(i) + 1,
                              free_state_.end(), 0LL);
                    break;
                }
                if (i == 0) {
                    shell_ += 1;
                    std::fill(free_state_.begin(), free_state_.end(), 0LL);
                    free_state_.back() = shell_;
                    return;
                }
            }
            if (std::find(free_state_.begin(), free_state_.end(), shell_) !=
                free_state_.end())
                return;
        }
    }

    AbelianType coeff_;
    std::vector<std::string> cell_ids_;
    std::vector<detail::H2Component> components_;
    std::vector<std::pair<int, int>> torsion_slots_;  // (component, P-coordinate)
    std::vector<std::pair<int, int>> free_slots_;
    std::vector<Int> torsion_state_;
    std::vector<long long> free_state_;
    long long shell_ = 0;
    bool done_ = false;
};

inline CocycleEnumeration h2_classes(const CellComplex& c, const AbelianType& coeff) {
    return CocycleEnumeration(c, coeff);
}

// Canonical presentation of a finitely generated abelian group on the given
// letters: free generators first, then one power relator per torsion factor,
// then all pairwise commutators.
inline Presentation abelian_presentation(const AbelianType& t, const Alphabet& alph) {
    int q = t.rank + static_cast<int>(t.torsion.size());
    if (static_cast<int>(alph.letters.size()) != q)
        throw domain_error("abelian presentation needs exactly " + std::to_string(q) +
                           " letters");
    std::vector<Word> rels;
    for (size_t j = 0; j < t.torsion.size(); ++j) {
        if (t.torsion[j] > 1'000'000)
            throw domain_error("torsion order too large to spell as a relator");
        rels.push_back(Word(static_cast<size_t>(t.torsion[j]),
                            alph.letters[t.rank + static_cast<int>(j)]));
    }
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) {
            Word w;
            w += alph.letters[i];
            w += alph.letters[j];
            w += inverse_letter(alph.letters[i]);
            w += inverse_letter(alph.letters[j]);
            rels.push_back(w);
        }
    return make_presentation(alph, std::move(rels));
}

// Presentation of the central extension classified by z: generators of the
// base complex's edge-path presentation together with the coefficient
// generators; relators are the coefficient group's, then one "attach word
// equals cocycle value" relator per 2-cell, then centrality commutators.
inline ExtensionPresentation extension_presentation(const CellComplex& c,
                                                    const Cocycle& z,
                                                    const Presentation& coeff_pres,
                                                    long long class_index = -1) {
    std::string base_letters;
    for (int idx : c.of_dim(1)) {
        const std::string& id = c.cells[idx].id;
        if (id.size() != 1 || !is_generator_char(id[0]))
            throw domain_error("1-cells must be named by single letters to present " +
                               std::string("the edge-path group"));
        base_letters += id[0];
    }
    for (char x : coeff_pres.alphabet.letters)
        if (base_letters.find(x) != std::string::npos)
            throw domain_error(std::string("coefficient letter '") + x +
                               "' collides with a 1-cell");
    int q = static_cast<int>(coeff_pres.alphabet.letters.size());

    std::vector<Word> rels = coeff_pres.relators;
    for (int idx : c.of_dim(2)) {
        const Cell& cell = c.cells[idx];
        if (!cell.attach)
            throw domain_error("2-cell " + cell.id + " has no attaching word");
        auto it = z.values.find(cell.id);
        std::vector<Int> v(q, 0);
        if (it != z.values.end()) {
            if (static_cast<int>(it->second.size()) != q)
                throw domain_error("cocycle value has the wrong coordinate count");
            v = it->second;
        }
        Word a;
        for (int u = 0; u < q; ++u) {
            char pos = coeff_pres.alphabet.letters[u];
            char letter = v[u] < 0 ? inverse_letter(pos) : pos;
            Int n = v[u] < 0 ? -v[u] : v[u];
            if (n > 1'000'000)
                throw domain_error("cocycle value too large to spell as a relator");
            for (Int i = 0; i < n; ++i) a += letter;
        }
        Word rel = free_reduce(*cell.attach + invert(a));
        if (!rel.empty()) rels.push_back(std::move(rel));
    }
    for (char x : coeff_pres.alphabet.letters)
        for (char s : base_letters) {
            Word w;
            w += x;
            w += s;
            w += inverse_letter(x);
            w += inverse_letter(s);
            rels.push_back(w);
        }
    ExtensionPresentation out;
    out.presentation =
        make_presentation(Alphabet(base_letters + coeff_pres.alphabet.letters),
                          std::move(rels));
    out.class_coords = z.coords;
    out.class_index = class_index;
    return out;
}

// First `limit` central extensions of the complex's edge-path group by the
// coefficient group, in enumeration order; finite lists are returned whole if
// smaller. Coefficient letters are drawn from the end of the alphabet.
inline std::vector<ExtensionPresentation> enumerate_extensions(const CellComplex& c,
                                                               const AbelianType& coeff,
                                                               long long limit) {
    if (limit < 1) throw domain_error("extension limit must be at least 1");
    std::string used;
    for (int idx : c.of_dim(1)) used += c.cells[idx].id;
    int q = coeff.rank + static_cast<int>(coeff.torsion.size());
    std::string xs;
    for (char ch = 'z'; ch >= 'a' && static_cast<int>(xs.size()) < q; --ch)
        if (used.find(ch) == std::string::npos) xs += ch;
    if (static_cast<int>(xs.size()) < q)
        throw domain_error("not enough letters for the coefficient generators");
    Presentation coeff_pres = abelian_presentation(coeff, Alphabet(xs));

    auto en = h2_classes(c, coeff);
    std::vector<ExtensionPresentation> out;
    for (long long i = 0; i < limit; ++i) {
        auto z = en.next();
        if (!z) break;
        out.push_back(extension_presentation(c, *z, coeff_pres, i));
    }
    return out;
}

}  // namespace gt
