#pragma once

#include <deque>
#include <istream>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "gt/abelian.hpp"
#include "gt/errors.hpp"
#include "gt/textio.hpp"
#include "gt/words.hpp"

namespace gt {

// Finite group presentation. Relators are stored freely reduced but not
// cyclically reduced: the attached boundary word matters downstream, and a
// cyclic shift is a different attachment.
struct Presentation {
    Alphabet alphabet;
    std::vector<Word> relators;

    bool operator==(const Presentation&) const = default;
};

inline Presentation make_presentation(Alphabet alph, std::vector<Word> relators) {
    Presentation p{std::move(alph), {}};
    for (auto& r : relators) {
        p.alphabet.validate_word(r);
        Word red = free_reduce(r);
        if (red.empty()) throw domain_error("empty relator is not allowed");
        p.relators.push_back(std::move(red));
    }
    return p;
}

// ---------------------------------------------------------------------------
// Text format:
//   presentation
//   gens a b
//   rel abAB
//   end

inline Presentation parse_presentation_body(LineReader& lr) {
    std::string letters;
    std::vector<Word> relators;
    bool have_gens = false;
    std::string line;
    while (lr.next(line)) {
        auto toks = split_tokens(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "end") {
            if (!have_gens) throw parse_error(lr.where() + ": presentation missing gens");
            try {
                return make_presentation(Alphabet(letters), std::move(relators));
            } catch (const domain_error& e) {
                throw parse_error(lr.where() + ": " + e.what());
            }
        } else if (kw == "gens") {
            for (size_t i = 1; i < toks.size(); ++i) {
                if (toks[i].size() != 1)
                    throw parse_error(lr.where() + ": generator must be one letter");
                letters += toks[i][0];
            }
            have_gens = true;
        } else if (kw == "rel") {
            if (toks.size() != 2) throw parse_error(lr.where() + ": rel wants one word");
            relators.push_back(toks[1]);
        } else {
            throw parse_error(lr.where() + ": unknown directive '" + kw + "'");
        }
    }
    throw parse_error(lr.where() + ": unterminated presentation block");
}

inline Presentation parse_presentation(std::istream& in, const std::string& source = "<pres>") {
    LineReader lr(in, source);
    std::string line;
    while (lr.next(line)) {
        auto toks = split_tokens(line);
        if (toks.empty()) continue;
        if (toks[0] != "presentation")
            throw parse_error(lr.where() + ": expected 'presentation'");
        return parse_presentation_body(lr);
    }
    throw parse_error(source + ": empty input");
}

inline void print_presentation(std::ostream& os, const Presentation& p) {
    os << "presentation\n";
    os << "gens";
    for (char c : p.alphabet.letters) os << ' ' << c;
    os << '\n';
    for (const auto& r : p.relators) os << "rel " << r << '\n';
    os << "end\n";
}

// ---------------------------------------------------------------------------
// Exponent-sum matrix: one row per relator, one column per generator.
inline IntMatrix exponent_matrix(const Presentation& p) {
    int n = static_cast<int>(p.alphabet.letters.size());
    IntMatrix m(static_cast<int>(p.relators.size()), n);
    std::unordered_map<char, int> col;
    for (int j = 0; j < n; ++j) col[p.alphabet.letters[j]] = j;
    for (size_t i = 0; i < p.relators.size(); ++i)
        for (char c : p.relators[i]) {
            if (is_generator_char(c))
                m.at(static_cast<int>(i), col[c]) += 1;
            else
                m.at(static_cast<int>(i), col[inverse_letter(c)]) -= 1;
        }
    return m;
}

inline AbelianType abelianization(const Presentation& p) {
    return classify(exponent_matrix(p));
}

// ---------------------------------------------------------------------------
// Presentation on the short identity words of a group with a known
// normal-form machinery: relator set = all nonempty reduced words of length
// at most 2(k+1) that represent the identity.

inline Presentation presentation_from_identity_words(const Alphabet& alph, int k,
                                                     const std::vector<Word>& id_words) {
    size_t bound = 2 * (static_cast<size_t>(k) + 1);
    std::vector<Word> relators;
    for (const auto& w : id_words) {
        if (w.size() > bound)
            throw domain_error("identity word exceeds the length bound 2(k+1)");
        Word red = free_reduce(alph, w);
        if (!red.empty()) relators.push_back(std::move(red));
    }
    return Presentation{alph, std::move(relators)};
}

// ---------------------------------------------------------------------------
// Budgeted area search. Returns the least N <= budget such that w equals a
// product of N conjugates of relators in the free group, or nullopt when the
// budget is exhausted. Search is capped: conjugators range over reduced words
// of length <= conj_cap and intermediate products are pruned at len_cap, so
// a returned value is always a genuine area upper bound and is the true area
// whenever an optimal product fits inside the caps (ample at desk scale).

inline std::optional<int> area_oracle(const Presentation& p, const Word& w0, int budget,
                                      int conj_cap = 4, int len_cap = -1) {
    Word w = free_reduce(p.alphabet, w0);
    if (w.empty()) return 0;
    if (budget <= 0) return std::nullopt;
    if (len_cap < 0) len_cap = static_cast<int>(w.size()) + 8;

    // All distinct conjugated relator words c r^(+-1) c^(-1), freely reduced.
    std::vector<Word> moves;
    {
        std::unordered_set<std::string> seen;
        std::vector<Word> conjugators;
        for_each_reduced_word(p.alphabet, static_cast<size_t>(conj_cap), [&](const Word& c) {
            conjugators.push_back(c);
            return true;
        });
        for (const auto& r : p.relators)
            for (int sign = 0; sign < 2; ++sign) {
                Word rr = sign ? invert(r) : r;
                for (const auto& c : conjugators) {
                    Word m = free_reduce(c + rr + invert(c));
                    if (!m.empty() && seen.insert(m).second) moves.push_back(std::move(m));
                }
            }
    }
    if (moves.empty()) return std::nullopt;

    auto expand = [&](const std::unordered_map<std::string, int>& dist,
                      std::deque<std::string>& frontier,
                      std::unordered_map<std::string, int>& into, int d) {
        std::deque<std::string> next;
        for (const auto& v : frontier)
            for (const auto& m : moves) {
                Word u = free_reduce(v + m);
                if (static_cast<int>(u.size()) > len_cap) continue;
                if (into.count(u) || dist.count(u)) continue;
                into.emplace(u, d);
                next.push_back(u);
            }
        frontier.swap(next);
    };

    // Grow a ball of known areas around the identity, then search from w
    // toward it, level by level; meeting gives depth + stored area. An area-N
    // product whose tail fits the caps is met by level N - half, so the
    // search can stop once d + half reaches the best value found.
    int half = std::min(budget / 2, 2);
    std::unordered_map<std::string, int> ball{{"", 0}};
    {
        std::deque<std::string> frontier{""};
        for (int d = 1; d <= half; ++d) {
            std::unordered_map<std::string, int> fresh;
            expand(ball, frontier, fresh, d);
            ball.merge(fresh);
        }
    }
    int best = budget + 1;
    std::unordered_map<std::string, int> dist{{w, 0}};
    std::deque<std::string> frontier{w};
    if (auto it = ball.find(w); it != ball.end()) best = it->second;
    for (int d = 1; d <= budget && d + half < best; ++d) {
        std::unordered_map<std::string, int> fresh;
        expand(dist, frontier, fresh, d);
        for (const auto& [v, dd] : fresh)
            if (auto it = ball.find(v); it != ball.end())
                best = std::min(best, dd + it->second);
        dist.merge(fresh);
        if (frontier.empty()) break;
    }
    if (best <= budget) return best;
    return std::nullopt;
}

// A priori area bound: |w| * (|A| + 1)^(k |w|) with |A| counting letters and
// inverses separately.
inline Int area_upper_bound(const Alphabet& alph, int k, size_t wlen) {
    Int base = static_cast<int>(2 * alph.letters.size()) + 1;
    Int out = static_cast<long long>(wlen);
    Int pw = 1;
    for (size_t i = 0; i < static_cast<size_t>(k) * wlen; ++i) pw *= base;
    return out * pw;
}

}  // namespace gt
