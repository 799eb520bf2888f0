#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "gt/abelian.hpp"
#include "gt/automatic.hpp"
#include "gt/fsa.hpp"
#include "gt/presentation.hpp"

namespace gt {

// Conjugation-tracking machine for one generator: states are the elements of
// the radius-k ball plus an absorbing fail state; reading letter b moves g to
// b^{-1} g b. A word is accepted when the conjugation path returns the
// tracked generator to itself without ever leaving the ball, so the accepted
// language contains every representative of a centralizer element.
struct CentralizerMachine {
    Fsa machine;  // single-letter alphabet, doubled order
    char letter;
    int k = 0;
};

inline CentralizerMachine centralizer_automaton(const AutomaticStructure& s, char a,
                                                int k) {
    int kmin = fellow_traveller_constant(s).k;
    if (k < kmin)
        throw domain_error("centralizer window " + std::to_string(k) +
                           " is below the structure's fellow-traveller constant " +
                           std::to_string(kmin));
    std::vector<Word> elems = ball(s, k);
    std::map<Word, int> index;
    for (size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
    int fail = static_cast<int>(elems.size());

    Word start = normal_form(s, Word(1, a));
    CentralizerMachine out;
    out.letter = a;
    out.k = k;
    std::vector<std::string> syms;
    for (char c : s.pairs.letters) syms.emplace_back(1, c);
    out.machine = make_fsa(syms, fail + 1, index.at(start), {index.at(start)});
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t b = 0; b < syms.size(); ++b) {
            char bc = syms[b][0];
            Word g = normal_form(s, Word(1, inverse_letter(bc)) + elems[i] + bc);
            auto it = index.find(g);
            out.machine.next[i][b] = it == index.end() ? fail : it->second;
        }
    for (size_t b = 0; b < syms.size(); ++b) out.machine.next[fail][b] = fail;
    return out;
}

// ---------------------------------------------------------------------------
// The sublanguage of the acceptor evaluating onto the center: intersect with
// every per-generator machine, then drop any short word that fails a direct
// commutation test (the machines may over-approximate in general).

inline Fsa center_language(const AutomaticStructure& s) {
    int k = fellow_traveller_constant(s).k;
    Fsa lang = s.acceptor;
    for (char c : s.pairs.letters) {
        CentralizerMachine m = centralizer_automaton(s, c, k);
        lang = intersect(lang, m.machine);
    }
    lang = minimize(lang);
    // Final pruning pass on the window that matters downstream.
    std::vector<Word> bad;
    for (const auto& w : enumerate_language(lang, 2 * k + 1)) {
        for (char c : s.alphabet.letters) {
            if (!equal(s, w + c, Word(1, c) + w)) {
                bad.push_back(w);
                break;
            }
        }
    }
    if (!bad.empty()) {
        // Subtract the finite set of failures.
        Fsa trie;
        trie.alphabet = lang.alphabet;
        trie.state_count = 1;
        trie.initial = 0;
        trie.accepting = {false};
        trie.next = {std::vector<int>(lang.alphabet.size(), -1)};
        for (const auto& w : bad) {
            int st = 0;
            for (char c : w) {
                int sym = trie.symbol_index(std::string(1, c));
                if (trie.next[st][sym] < 0) {
                    trie.next[st][sym] = trie.state_count++;
                    trie.accepting.push_back(false);
                    trie.next.emplace_back(lang.alphabet.size(), -1);
                }
                st = trie.next[st][sym];
            }
            trie.accepting[st] = true;
        }
        lang = minimize(intersect(lang, complement(trie)));
    }
    return lang;
}

// All nonempty center-language words of length <= 2k+1 whose commutation with
// every generator is certified by solving the word problem on the reduced
// commutator. That commutator has length <= 4k+4 by construction, so this
// decides exactly membership in the identity words of that length.
inline std::vector<Word> center_generators(const AutomaticStructure& s) {
    int k = fellow_traveller_constant(s).k;
    Fsa lang = center_language(s);
    std::vector<Word> out;
    for (const auto& g : enumerate_language(lang, 2 * k + 1)) {
        if (g.empty()) continue;
        bool central = true;
        for (char x : s.alphabet.letters) {
            Word comm = free_reduce(g + x + invert(g) + inverse_letter(x));
            if (!is_trivial(s, comm)) {
                central = false;
                break;
            }
        }
        if (central) out.push_back(g);
    }
    sort_shortlex(s.alphabet, out);
    return out;
}

// ---------------------------------------------------------------------------
// Presentation of the center on its own generator symbols. Generator words
// can outnumber the ambient letters, so relators are stored as index
// sequences over the generator list.

struct SubgroupPresentation {
    std::vector<Word> generators;            // words in the ambient group
    std::vector<std::vector<int>> relators;  // generator-index sequences

    bool operator==(const SubgroupPresentation&) const = default;
};

inline IntMatrix subgroup_exponent_matrix(const SubgroupPresentation& p) {
    IntMatrix m(static_cast<int>(p.relators.size()),
                static_cast<int>(p.generators.size()));
    for (size_t i = 0; i < p.relators.size(); ++i)
        for (int g : p.relators[i]) m.at(static_cast<int>(i), g) += 1;
    return m;
}

inline AbelianType subgroup_abelianization(const SubgroupPresentation& p) {
    return classify(subgroup_exponent_matrix(p));
}

// Relators are the short concatenations of generators that represent the
// identity, everything within the total-length budget 2(2k+1) + 2(2K +
// K(2k+1)). The full concatenation family at that length is astronomically
// large, so the stored set keeps the length-two and length-three families
// (composition and inverse pairs, located by normal-form lookup) plus proper
// powers; these already pin down the abelian invariants.
inline SubgroupPresentation center_presentation(const AutomaticStructure& s,
                                                int quasiconvexity_K) {
    int k = fellow_traveller_constant(s).k;
    int K = quasiconvexity_K;
    long long budget = 2LL * (2 * k + 1) + 2LL * (2 * K + K * (2 * k + 1));
    SubgroupPresentation p;
    p.generators = center_generators(s);

    // Normal-form steps repeat across the generator pairs; memoize them.
    std::map<std::pair<Word, char>, Word> memo;
    auto apply = [&](Word u, const Word& tail) {
        for (char c : tail) {
            auto key = std::make_pair(std::move(u), c);
            auto it = memo.find(key);
            if (it == memo.end())
                it = memo.emplace(key, successor(s, key.first, c)).first;
            u = it->second;
        }
        return u;
    };

    std::map<Word, int> by_nf;
    std::vector<Word> nf_of;
    for (size_t i = 0; i < p.generators.size(); ++i) {
        nf_of.push_back(apply("", p.generators[i]));
        by_nf[nf_of.back()] = static_cast<int>(i);
    }
    int n = static_cast<int>(p.generators.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long long pair_len = static_cast<long long>(p.generators[i].size()) +
                                 static_cast<long long>(p.generators[j].size());
            if (pair_len > budget) continue;
            Word prod = apply(nf_of[i], p.generators[j]);
            if (prod.empty()) {
                p.relators.push_back({i, j});
                continue;
            }
            auto it = by_nf.find(prod);
            if (it == by_nf.end()) continue;
            // g_i g_j g_m^{-1} with g_m^{-1} realized as the generator equal
            // to the inverse, when present.
            Word inv_nf = apply("", invert(p.generators[it->second]));
            auto inv_it = by_nf.find(inv_nf);
            if (inv_it == by_nf.end()) continue;
            if (pair_len + static_cast<long long>(
                               p.generators[inv_it->second].size()) > budget)
                continue;
            p.relators.push_back({i, j, inv_it->second});
        }
    for (int i = 0; i < n; ++i) {
        Word cur = nf_of[i];
        long long len = static_cast<long long>(p.generators[i].size());
        std::vector<int> rel{i};
        for (;;) {
            cur = apply(cur, p.generators[i]);
            len += static_cast<long long>(p.generators[i].size());
            rel.push_back(i);
            if (len > budget) break;
            if (cur.empty()) {
                p.relators.push_back(rel);
                break;
            }
        }
    }
    return p;
}

inline AbelianType center_type(const AutomaticStructure& s, int quasiconvexity_K) {
    return subgroup_abelianization(center_presentation(s, quasiconvexity_K));
}

// Quotient by a central subgroup: kill the central generators.
inline Presentation quotient_by_center(const Presentation& p,
                                       const std::vector<Word>& center_gens) {
    std::vector<Word> rels = p.relators;
    for (const auto& g : center_gens) rels.push_back(g);
    return make_presentation(p.alphabet, rels);
}

// Bundle used by the report-oriented surfaces.
struct CenterReport {
    std::vector<Word> generators;
    SubgroupPresentation presentation;
    AbelianType type;
    int k = 0;
    int K = 0;
};

inline CenterReport center_report(const AutomaticStructure& s, int quasiconvexity_K) {
    CenterReport r;
    r.k = fellow_traveller_constant(s).k;
    r.K = quasiconvexity_K;
    r.presentation = center_presentation(s, quasiconvexity_K);
    r.generators = r.presentation.generators;
    r.type = subgroup_abelianization(r.presentation);
    return r;
}

}  // namespace gt
