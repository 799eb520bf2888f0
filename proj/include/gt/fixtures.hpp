#pragma once

#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "gt/automatic.hpp"
#include "gt/fsa.hpp"
#include "gt/words.hpp"

namespace gt {

// A concrete group with an exact normal-form function and a hand-built word
// acceptor for its shortlex representatives. Multipliers are derived from
// these by a product construction, so the shipped structures are correct by
// computation rather than by hand-entered transition tables.
struct GroupModel {
    std::string name;
    Alphabet alphabet;
    std::function<Word(const Word&)> canon;  // exact normal form of any word
    Fsa acceptor;                            // language of canon images
    int k0 = 2;  // fellow-traveller bound used to prune word differences
};

// ---------------------------------------------------------------------------
// Models.

namespace detail {

// Signed run: e >= 0 gives lo^e, e < 0 gives up^(-e).
inline Word signed_run(long long e, char lo) {
    Word w;
    char c = e >= 0 ? lo : inverse_letter(lo);
    for (long long i = 0; i < (e >= 0 ? e : -e); ++i) w += c;
    return w;
}

inline long long exponent_sum(const Word& w, char lo) {
    long long e = 0;
    char up = inverse_letter(lo);
    for (char c : w) {
        if (c == lo) ++e;
        if (c == up) --e;
    }
    return e;
}

// Reduced word over a sub-alphabet, other letters skipped.
inline Word reduce_over(const Word& w, const std::string& keep_lo) {
    Word out;
    for (char c : w) {
        char base = is_generator_char(c) ? c : inverse_letter(c);
        if (keep_lo.find(base) == std::string::npos) continue;
        if (!out.empty() && out.back() == inverse_letter(c))
            out.pop_back();
        else
            out += c;
    }
    return out;
}

}  // namespace detail

inline GroupModel model_z() {
    GroupModel g;
    g.name = "z";
    g.alphabet = Alphabet("a");
    g.canon = [](const Word& w) { return detail::signed_run(detail::exponent_sum(w, 'a'), 'a'); };
    g.acceptor = make_fsa({"a", "A"}, 3, 0, {0, 1, 2});
    add_transition(g.acceptor, 0, "a", 1);
    add_transition(g.acceptor, 1, "a", 1);
    add_transition(g.acceptor, 0, "A", 2);
    add_transition(g.acceptor, 2, "A", 2);
    g.k0 = 1;
    return g;
}

inline GroupModel model_z2() {
    GroupModel g;
    g.name = "z2";
    g.alphabet = Alphabet("ab");
    g.canon = [](const Word& w) {
        return detail::signed_run(detail::exponent_sum(w, 'a'), 'a') +
               detail::signed_run(detail::exponent_sum(w, 'b'), 'b');
    };
    g.acceptor = make_fsa({"a", "A", "b", "B"}, 5, 0, {0, 1, 2, 3, 4});
    add_transition(g.acceptor, 0, "a", 1);
    add_transition(g.acceptor, 0, "A", 2);
    add_transition(g.acceptor, 0, "b", 3);
    add_transition(g.acceptor, 0, "B", 4);
    add_transition(g.acceptor, 1, "a", 1);
    add_transition(g.acceptor, 1, "b", 3);
    add_transition(g.acceptor, 1, "B", 4);
    add_transition(g.acceptor, 2, "A", 2);
    add_transition(g.acceptor, 2, "b", 3);
    add_transition(g.acceptor, 2, "B", 4);
    add_transition(g.acceptor, 3, "b", 3);
    add_transition(g.acceptor, 4, "B", 4);
    g.k0 = 2;
    return g;
}

inline GroupModel model_z3() {
    GroupModel g;
    g.name = "z3";
    g.alphabet = Alphabet("abc");
    g.canon = [](const Word& w) {
        return detail::signed_run(detail::exponent_sum(w, 'a'), 'a') +
               detail::signed_run(detail::exponent_sum(w, 'b'), 'b') +
               detail::signed_run(detail::exponent_sum(w, 'c'), 'c');
    };
    // One signed run per generator, in order: 1 start + 6 run states.
    g.acceptor = make_fsa({"a", "A", "b", "B", "c", "C"}, 7, 0, {0, 1, 2, 3, 4, 5, 6});
    auto runs = std::vector<std::pair<std::string, int>>{{"a", 1}, {"A", 2}, {"b", 3},
                                                         {"B", 4}, {"c", 5}, {"C", 6}};
    for (auto& [sym, st] : runs) add_transition(g.acceptor, st, sym, st);
    for (auto& [sym, st] : runs) add_transition(g.acceptor, 0, sym, st);
    for (int from : {1, 2})
        for (auto& [sym, st] : std::vector<std::pair<std::string, int>>{
                 {"b", 3}, {"B", 4}, {"c", 5}, {"C", 6}})
            add_transition(g.acceptor, from, sym, st);
    for (int from : {3, 4})
        for (auto& [sym, st] :
             std::vector<std::pair<std::string, int>>{{"c", 5}, {"C", 6}})
            add_transition(g.acceptor, from, sym, st);
    g.k0 = 2;
    return g;
}

inline GroupModel model_f2() {
    GroupModel g;
    g.name = "f2";
    g.alphabet = Alphabet("ab");
    g.canon = [](const Word& w) { return free_reduce(w); };
    // States: 0 empty, then one per last letter a A b B.
    g.acceptor = make_fsa({"a", "A", "b", "B"}, 5, 0, {0, 1, 2, 3, 4});
    std::string letters = "aAbB";
    for (int i = 0; i < 4; ++i) add_transition(g.acceptor, 0, std::string(1, letters[i]), i + 1);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (inverse_letter(letters[i]) == letters[j]) continue;
            add_transition(g.acceptor, i + 1, std::string(1, letters[j]), j + 1);
        }
    g.k0 = 1;
    return g;
}

inline GroupModel model_dinfty() {
    GroupModel g;
    g.name = "dinfty";
    g.alphabet = Alphabet("ab");
    // a and b are involutions: fold inverses down, cancel equal neighbours.
    g.canon = [](const Word& w) {
        Word out;
        for (char c : w) {
            char base = is_generator_char(c) ? c : inverse_letter(c);
            if (!out.empty() && out.back() == base)
                out.pop_back();
            else
                out += base;
        }
        return out;
    };
    // Alternating words in a, b; capitals never appear in normal forms.
    g.acceptor = make_fsa({"a", "A", "b", "B"}, 3, 0, {0, 1, 2});
    add_transition(g.acceptor, 0, "a", 1);
    add_transition(g.acceptor, 0, "b", 2);
    add_transition(g.acceptor, 1, "b", 2);
    add_transition(g.acceptor, 2, "a", 1);
    g.k0 = 1;
    return g;
}

inline GroupModel model_zxf2() {
    GroupModel g;
    g.name = "zxf2";
    g.alphabet = Alphabet("abc");
    // a generates a central factor; b, c generate a free factor.
    g.canon = [](const Word& w) {
        return detail::signed_run(detail::exponent_sum(w, 'a'), 'a') +
               detail::reduce_over(w, "bc");
    };
    g.acceptor = make_fsa({"a", "A", "b", "B", "c", "C"}, 7, 0, {0, 1, 2, 3, 4, 5, 6});
    // 0 start, 1 a-run, 2 A-run, 3..6 free part ending in b B c C.
    add_transition(g.acceptor, 0, "a", 1);
    add_transition(g.acceptor, 0, "A", 2);
    add_transition(g.acceptor, 1, "a", 1);
    add_transition(g.acceptor, 2, "A", 2);
    std::string free_letters = "bBcC";
    for (int from : {0, 1, 2})
        for (int j = 0; j < 4; ++j)
            add_transition(g.acceptor, from, std::string(1, free_letters[j]), 3 + j);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (inverse_letter(free_letters[i]) == free_letters[j]) continue;
            add_transition(g.acceptor, 3 + i, std::string(1, free_letters[j]), 3 + j);
        }
    g.k0 = 2;
    return g;
}

// ---------------------------------------------------------------------------
// Multiplier synthesis. States are (acceptor state or frozen) per coordinate
// plus the current word difference, pruned to the radius-k0 ball.

namespace detail {

inline std::set<Word> canon_ball(const GroupModel& g, int r) {
    std::set<Word> seen{Word{}};
    std::deque<Word> q{Word{}};
    std::map<Word, int> dist{{Word{}, 0}};
    while (!q.empty()) {
        Word u = q.front();
        q.pop_front();
        if (dist[u] == r) continue;
        for (char c : g.alphabet.doubled()) {
            Word v = g.canon(u + c);
            if (seen.insert(v).second) {
                dist[v] = dist[u] + 1;
                q.push_back(v);
            }
        }
    }
    return seen;
}

}  // namespace detail

inline Fsa build_multiplier(const GroupModel& g, const PairAlphabet& pa, char x,
                            const std::set<Word>& allowed) {
    const Fsa& acc = g.acceptor;
    Word target = x == '_' ? Word{} : g.canon(Word(1, x));
    int pad = pa.pad();

    // State: (s1, frozen1, s2, frozen2, diff).
    using Key = std::tuple<int, int, int, int, Word>;
    std::map<Key, int> id;
    std::deque<Key> q;
    Fsa out;
    out.alphabet = pa.symbols;
    auto coord_ok = [&](int st, int frozen) { return frozen || acc.accepting[st]; };
    auto get = [&](const Key& k) {
        auto it = id.find(k);
        if (it != id.end()) return it->second;
        int v = static_cast<int>(id.size());
        id.emplace(k, v);
        const auto& [s1, f1, s2, f2, diff] = k;
        out.accepting.push_back(coord_ok(s1, f1) && coord_ok(s2, f2) && diff == target);
        out.next.emplace_back(pa.symbols.size(), -1);
        q.push_back(k);
        return v;
    };
    get({acc.initial, 0, acc.initial, 0, Word{}});
    out.initial = 0;
    while (!q.empty()) {
        auto [s1, f1, s2, f2, diff] = q.front();
        q.pop_front();
        int from = id[{s1, f1, s2, f2, diff}];
        for (int xs = 0; xs <= pad; ++xs)
            for (int ys = 0; ys <= pad; ++ys) {
                if (xs == pad && ys == pad) continue;
                int ns1 = s1, nf1 = f1, ns2 = s2, nf2 = f2;
                if (xs == pad) {
                    if (!f1 && !acc.accepting[s1]) continue;
                    nf1 = 1;
                } else {
                    if (f1) continue;  // pad is final per coordinate
                    ns1 = acc.next[s1][xs];
                    if (ns1 < 0) continue;
                }
                if (ys == pad) {
                    if (!f2 && !acc.accepting[s2]) continue;
                    nf2 = 1;
                } else {
                    if (f2) continue;
                    ns2 = acc.next[s2][ys];
                    if (ns2 < 0) continue;
                }
                Word w;
                if (xs != pad) w += inverse_letter(pa.letters[xs]);
                w += diff;
                if (ys != pad) w += pa.letters[ys];
                Word ndiff = g.canon(w);
                if (!allowed.count(ndiff)) continue;
                int to = get({ns1, nf1, ns2, nf2, ndiff});
                out.next[from][pa.sym(xs, ys)] = to;
            }
    }
    out.state_count = static_cast<int>(id.size());
    return trim(out);
}

inline AutomaticStructure build_structure(const GroupModel& g) {
    AutomaticStructure s;
    s.alphabet = g.alphabet;
    s.acceptor = g.acceptor;
    s.pairs = PairAlphabet::make(g.alphabet);
    std::set<Word> allowed = detail::canon_ball(g, g.k0);
    for (char c : g.alphabet.doubled())
        s.multipliers[c] = build_multiplier(g, s.pairs, c, allowed);
    s.multipliers['_'] = build_multiplier(g, s.pairs, '_', allowed);
    finalize_structure(s);
    return s;
}

inline GroupModel fixture_model(const std::string& name) {
    if (name == "z") return model_z();
    if (name == "z2") return model_z2();
    if (name == "z3") return model_z3();
    if (name == "f2") return model_f2();
    if (name == "dinfty") return model_dinfty();
    if (name == "zxf2") return model_zxf2();
    throw domain_error("unknown fixture model: " + name);
}

}  // namespace gt
