#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gt/errors.hpp"
#include "gt/fsa.hpp"
#include "gt/pairfsa.hpp"
#include "gt/presentation.hpp"
#include "gt/textio.hpp"
#include "gt/words.hpp"

namespace gt {

// Automatic structure with uniqueness: a word acceptor L with exactly one
// accepted word per group element, and for every letter x a synchronous pair
// automaton accepting {(u,v) : u,v in L, u x = v in the group}. The machine
// keyed '_' is the equality checker (x = identity). All machines are stored
// over canonical alphabets: the acceptor over the doubled letter order, the
// multipliers over the full padded-pair symbol set.
struct AutomaticStructure {
    Alphabet alphabet;
    Fsa acceptor;
    std::map<char, Fsa> multipliers;
    PairAlphabet pairs;
};

// Rebuild a machine over a target symbol ordering. Every used symbol must
// exist in the target.
inline Fsa reindex_alphabet(const Fsa& m, const std::vector<std::string>& target) {
    Fsa out;
    out.alphabet = target;
    out.state_count = m.state_count;
    out.initial = m.initial;
    out.accepting = m.accepting;
    out.next.assign(m.state_count, std::vector<int>(target.size(), -1));
    std::vector<int> remap(m.alphabet.size(), -1);
    for (size_t a = 0; a < m.alphabet.size(); ++a) {
        for (size_t b = 0; b < target.size(); ++b)
            if (target[b] == m.alphabet[a]) {
                remap[a] = static_cast<int>(b);
                break;
            }
    }
    for (int s = 0; s < m.state_count; ++s)
        for (size_t a = 0; a < m.alphabet.size(); ++a) {
            int t = m.next[s][a];
            if (t < 0) continue;
            if (remap[a] < 0)
                throw domain_error("machine uses symbol outside the canonical alphabet: " +
                                   m.alphabet[a]);
            out.next[s][remap[a]] = t;
        }
    return out;
}

// Validate and canonicalize a freshly assembled structure.
inline void finalize_structure(AutomaticStructure& s) {
    s.pairs = PairAlphabet::make(s.alphabet);
    std::vector<std::string> letter_syms;
    for (char c : s.pairs.letters) letter_syms.emplace_back(1, c);
    s.acceptor = reindex_alphabet(s.acceptor, letter_syms);
    for (char c : s.pairs.letters)
        if (!s.multipliers.count(c))
            throw domain_error(std::string("missing multiplier for letter ") + c);
    if (!s.multipliers.count('_')) throw domain_error("missing equality multiplier");
    for (auto& [c, m] : s.multipliers) m = reindex_alphabet(m, s.pairs.symbols);
}

// ---------------------------------------------------------------------------
// Text format:
//   automatic
//   gens a b
//   acceptor
//     <fsa block>
//   mult a
//     <fsa block over pair symbols>
//   ...
//   mult _
//     <fsa block>
//   end

inline AutomaticStructure parse_automatic(std::istream& in,
                                          const std::string& source = "<aut>") {
    LineReader lr(in, source);
    std::string line;
    if (!lr.next(line) || split_tokens(line) != std::vector<std::string>{"automatic"})
        throw parse_error(source + ": expected 'automatic'");
    AutomaticStructure s;
    bool have_gens = false, have_acceptor = false;
    auto expect_fsa = [&]() {
        std::string l;
        if (!lr.next(l) || split_tokens(l) != std::vector<std::string>{"fsa"})
            throw parse_error(lr.where() + ": expected an fsa block");
        return parse_fsa_body(lr);
    };
    while (lr.next(line)) {
        auto toks = split_tokens(line);
        if (toks.empty()) continue;
        if (toks[0] == "end") {
            if (!have_gens || !have_acceptor)
                throw parse_error(lr.where() + ": structure missing gens or acceptor");
            try {
                finalize_structure(s);
            } catch (const domain_error& e) {
                throw parse_error(lr.where() + ": " + e.what());
            }
            return s;
        } else if (toks[0] == "gens") {
            std::string letters;
            for (size_t i = 1; i < toks.size(); ++i) {
                if (toks[i].size() != 1)
                    throw parse_error(lr.where() + ": generator must be one letter");
                letters += toks[i][0];
            }
            s.alphabet = Alphabet(letters);
            have_gens = true;
        } else if (toks[0] == "acceptor") {
            s.acceptor = expect_fsa();
            have_acceptor = true;
        } else if (toks[0] == "mult") {
            if (toks.size() != 2 || toks[1].size() != 1)
                throw parse_error(lr.where() + ": mult wants one letter or _");
            s.multipliers[toks[1][0]] = expect_fsa();
        } else {
            throw parse_error(lr.where() + ": unknown directive '" + toks[0] + "'");
        }
    }
    throw parse_error(lr.where() + ": unterminated automatic block");
}

inline void print_automatic(std::ostream& os, const AutomaticStructure& s) {
    os << "automatic\n";
    os << "gens";
    for (char c : s.alphabet.letters) os << ' ' << c;
    os << '\n';
    os << "acceptor\n";
    print_fsa(os, s.acceptor, "  ");
    for (const auto& [c, m] : s.multipliers) {
        if (c == '_') continue;
        os << "mult " << c << '\n';
        print_fsa(os, m, "  ");
    }
    os << "mult _\n";
    print_fsa(os, s.multipliers.at('_'), "  ");
    os << "end\n";
}

inline AutomaticStructure load_automatic(const std::string& path) {
    std::istringstream is(read_file_text(path));
    return parse_automatic(is, path);
}

// ---------------------------------------------------------------------------
// Successor search: all v with (u, v) accepted by the given pair machine,
// found with the first coordinate pinned to u. Feasible-set tables keep the
// walk linear in |u| for a machine with the uniqueness property.

inline std::vector<Word> successor_words(const AutomaticStructure& s, const Fsa& m,
                                         const Word& u, size_t max_results) {
    const PairAlphabet& pa = s.pairs;
    int pad = pa.pad();
    int n = static_cast<int>(u.size());
    std::vector<int> uslot(n);
    for (int i = 0; i < n; ++i) uslot[i] = pa.slot(u[i]);

    // E[pos]: states that accept when v has already ended and u[pos..] is
    // still to be read against padding.
    std::vector<std::vector<char>> E(n + 1, std::vector<char>(m.state_count, 0));
    for (int st = 0; st < m.state_count; ++st) E[n][st] = m.accepting[st];
    for (int pos = n - 1; pos >= 0; --pos)
        for (int st = 0; st < m.state_count; ++st) {
            int t = m.next[st][pa.sym(uslot[pos], pad)];
            E[pos][st] = t >= 0 && E[pos + 1][t];
        }
    // Rext: states from which acceptance is reachable with u exhausted and v
    // continuing.
    std::vector<char> Rext(m.state_count, 0);
    for (int st = 0; st < m.state_count; ++st) Rext[st] = m.accepting[st];
    for (bool changed = true; changed;) {
        changed = false;
        for (int st = 0; st < m.state_count; ++st) {
            if (Rext[st]) continue;
            for (int y = 0; y < pad && !Rext[st]; ++y) {
                int t = m.next[st][pa.sym(pad, y)];
                if (t >= 0 && Rext[t]) {
                    Rext[st] = 1;
                    changed = true;
                }
            }
        }
    }
    // R[pos]: states from which acceptance is reachable with v still open.
    std::vector<std::vector<char>> R(n + 1, std::vector<char>(m.state_count, 0));
    R[n] = Rext;
    for (int pos = n - 1; pos >= 0; --pos)
        for (int st = 0; st < m.state_count; ++st) {
            char ok = 0;
            int t = m.next[st][pa.sym(uslot[pos], pad)];
            if (t >= 0 && E[pos + 1][t]) ok = 1;
            for (int y = 0; y < pad && !ok; ++y) {
                int t2 = m.next[st][pa.sym(uslot[pos], y)];
                if (t2 >= 0 && R[pos + 1][t2]) ok = 1;
            }
            R[pos][st] = ok;
        }

    std::vector<Word> results;
    size_t ext_cap = u.size() + static_cast<size_t>(m.state_count) + 2;
    Word v;
    std::function<void(int, int)> rec = [&](int st, int pos) {
        if (results.size() >= max_results) return;
        if (pos == n) {
            if (m.accepting[st]) results.push_back(v);
            if (v.size() > ext_cap) return;
            for (int y = 0; y < pad && results.size() < max_results; ++y) {
                int t = m.next[st][pa.sym(pad, y)];
                if (t >= 0 && Rext[t]) {
                    v += pa.letters[y];
                    rec(t, pos);
                    v.pop_back();
                }
            }
            return;
        }
        int t = m.next[st][pa.sym(uslot[pos], pad)];
        if (t >= 0 && E[pos + 1][t]) results.push_back(v);
        for (int y = 0; y < pad && results.size() < max_results; ++y) {
            int t2 = m.next[st][pa.sym(uslot[pos], y)];
            if (t2 >= 0 && R[pos + 1][t2]) {
                v += pa.letters[y];
                rec(t2, pos + 1);
                v.pop_back();
            }
        }
    };
    if (m.initial >= 0) rec(m.initial, 0);
    return results;
}

// The unique v in L with u x = v; x may be '_' for the equality machine.
inline Word successor(const AutomaticStructure& s, const Word& u, char x) {
    auto it = s.multipliers.find(x);
    if (it == s.multipliers.end())
        throw domain_error(std::string("no multiplier for letter ") + x);
    auto vs = successor_words(s, it->second, u, 2);
    if (vs.empty())
        throw domain_error(std::string("structure invalid: no successor of \"") +
                           word_to_text(u) + "\" under " + x);
    if (vs.size() > 1)
        throw domain_error(std::string("structure invalid: ambiguous successor of \"") +
                           word_to_text(u) + "\" under " + x);
    return vs[0];
}

inline Word normal_form(const AutomaticStructure& s, const Word& w) {
    s.alphabet.validate_word(w);
    Word u;
    for (char c : w) u = successor(s, u, c);
    return u;
}

inline bool equal(const AutomaticStructure& s, const Word& w1, const Word& w2) {
    return normal_form(s, w1) == normal_form(s, w2);
}

inline bool is_trivial(const AutomaticStructure& s, const Word& w) {
    return normal_form(s, w).empty();
}

// ---------------------------------------------------------------------------
// All nonempty reduced words of length <= max_len representing the identity,
// in shortlex order. Normal forms ride along a shared-prefix walk so each
// enumerated word costs one multiplier search. A prefix of an identity word
// of length m sits within distance min(t, m - t) of the identity at time t,
// so branches are cut by geodesic distance, known exactly out to radius
// ceil(m/2).

inline std::map<Word, int> ball_map(const AutomaticStructure& s, int r);

inline std::vector<Word> identity_words_upto(const AutomaticStructure& s, size_t max_len) {
    auto dist = ball_map(s, static_cast<int>((max_len + 1) / 2));
    std::vector<Word> out;
    Word w;
    std::function<void(const Word&)> rec = [&](const Word& nf) {
        if (!w.empty() && nf.empty()) out.push_back(w);
        if (w.size() == max_len) return;
        size_t left = max_len - w.size() - 1;
        for (char c : s.pairs.letters) {
            if (!w.empty() && inverse_letter(w.back()) == c) continue;
            w += c;
            Word nxt = successor(s, nf, c);
            auto it = dist.find(nxt);
            if (it != dist.end() && static_cast<size_t>(it->second) <= left) rec(nxt);
            w.pop_back();
        }
    };
    rec(Word{});
    sort_shortlex(s.alphabet, out);
    return out;
}

// Word-metric distances from the identity, out to radius r: normal form ->
// distance, via breadth-first multiplication by generators.
inline std::map<Word, int> ball_map(const AutomaticStructure& s, int r) {
    std::map<Word, int> dist;
    dist[Word{}] = 0;
    std::deque<Word> q{Word{}};
    while (!q.empty()) {
        Word u = q.front();
        q.pop_front();
        int d = dist[u];
        if (d == r) continue;
        for (char c : s.pairs.letters) {
            Word v = successor(s, u, c);
            if (!dist.count(v)) {
                dist[v] = d + 1;
                q.push_back(v);
            }
        }
    }
    return dist;
}

inline std::vector<Word> ball(const AutomaticStructure& s, int r) {
    if (r < 0) throw domain_error("ball radius must be non-negative");
    std::vector<Word> out;
    for (const auto& [w, d] : ball_map(s, r)) out.push_back(w);
    sort_shortlex(s.alphabet, out);
    return out;
}

// ---------------------------------------------------------------------------
// Fellow-traveller constant: label every reachable multiplier state with the
// group element u_t^{-1} v_t it stands for (as a normal form); k is the
// largest geodesic length among labels. Conflicting labels mean the machine
// does not define a function of (prefix pair) -> element and the structure is
// rejected.

struct FellowTravellerConstant {
    int k = 1;
    bool operator==(const FellowTravellerConstant&) const = default;
};

inline FellowTravellerConstant fellow_traveller_constant(const AutomaticStructure& s) {
    std::vector<Word> labels;
    for (const auto& [c, m] : s.multipliers) {
        std::vector<Word> label(m.state_count);
        std::vector<char> seen(m.state_count, 0);
        if (m.initial < 0) continue;
        label[m.initial] = Word{};
        seen[m.initial] = 1;
        std::deque<int> q{m.initial};
        while (!q.empty()) {
            int st = q.front();
            q.pop_front();
            for (size_t a = 0; a < m.alphabet.size(); ++a) {
                int t = m.next[st][a];
                if (t < 0) continue;
                char x = m.alphabet[a][0], y = m.alphabet[a][2];
                Word w;
                if (x != '_') w += inverse_letter(x);
                w += label[st];
                if (y != '_') w += y;
                Word lab = normal_form(s, w);
                if (!seen[t]) {
                    seen[t] = 1;
                    label[t] = lab;
                    q.push_back(t);
                } else if (label[t] != lab) {
                    throw domain_error(std::string("structure invalid: word-difference "
                                                   "conflict in multiplier ") +
                                       c);
                }
            }
        }
        for (int st = 0; st < m.state_count; ++st)
            if (seen[st]) labels.push_back(label[st]);
    }
    // Geodesic length of each label, by growing the ball only as far as the
    // deepest label actually requires.
    std::set<Word> pending(labels.begin(), labels.end());
    size_t max_len = 0;
    for (const auto& l : labels) max_len = std::max(max_len, l.size());
    int cap = static_cast<int>(4 * max_len + 4);
    std::map<Word, int> dist{{Word{}, 0}};
    std::deque<Word> layer{Word{}};
    pending.erase(Word{});
    int k = 1, r = 0;
    while (!pending.empty()) {
        if (layer.empty() || r == cap)
            throw domain_error("structure invalid: word difference escapes the ball");
        ++r;
        std::deque<Word> next;
        for (const auto& u : layer)
            for (char c : s.pairs.letters) {
                Word v = successor(s, u, c);
                if (dist.emplace(v, r).second) {
                    next.push_back(v);
                    pending.erase(v);
                }
            }
        layer.swap(next);
    }
    for (const auto& l : labels) k = std::max(k, dist.at(l));
    return FellowTravellerConstant{k};
}

// ---------------------------------------------------------------------------
// Structure verification against a presentation.

struct VerifyReport {
    bool projections_ok = false;
    bool equality_ok = false;
    bool relators_ok = false;
    bool uniqueness_ok = false;
    std::vector<std::string> messages;

    bool pass() const {
        return projections_ok && equality_ok && relators_ok && uniqueness_ok;
    }
};

inline VerifyReport verify_structure(const AutomaticStructure& s, const Presentation& p) {
    if (p.alphabet.letters != s.alphabet.letters)
        throw domain_error("presentation alphabet does not match the structure");
    VerifyReport rep;
    // (a) Multiplier coordinates stay inside the accepted language.
    try {
        bool ok = true;
        for (const auto& [c, m] : s.multipliers) {
            for (int coord = 0; coord < 2 && ok; ++coord) {
                Fsa proj = project_coordinate(m, s.pairs, coord);
                if (!subset_language(proj, s.acceptor)) {
                    ok = false;
                    rep.messages.push_back(std::string("projection ") +
                                           std::to_string(coord) + " of multiplier " + c +
                                           " leaves the language");
                }
            }
            if (!ok) break;
        }
        rep.projections_ok = ok;
    } catch (const std::exception& e) {
        rep.messages.push_back(std::string("projection check: ") + e.what());
    }
    // (b) Equality machine is the identity relation on L.
    try {
        Fsa id = identity_relation(s.acceptor, s.pairs);
        rep.equality_ok = equivalent(s.multipliers.at('_'), id);
        if (!rep.equality_ok)
            rep.messages.push_back("equality machine differs from the identity relation");
    } catch (const std::exception& e) {
        rep.messages.push_back(std::string("equality check: ") + e.what());
    }
    // (c) Each relator composes to the identity relation.
    try {
        Fsa id = minimize(identity_relation(s.acceptor, s.pairs));
        bool ok = true;
        for (const auto& r : p.relators) {
            Fsa rel = s.multipliers.at(r[0]);
            for (size_t i = 1; i < r.size(); ++i)
                rel = compose_relations(rel, s.multipliers.at(r[i]), s.pairs);
            if (!equivalent(rel, id)) {
                ok = false;
                rep.messages.push_back("relator " + r + " does not act trivially");
                break;
            }
        }
        rep.relators_ok = ok;
    } catch (const std::exception& e) {
        rep.messages.push_back(std::string("relator check: ") + e.what());
    }
    // (d) One representative per element across the radius-4 ball.
    try {
        bool ok = true;
        for (const auto& u : ball(s, 4)) {
            auto reps = successor_words(s, s.multipliers.at('_'), u, 2);
            if (reps.size() != 1 || reps[0] != u) {
                ok = false;
                rep.messages.push_back("element \"" + word_to_text(u) +
                                       "\" lacks a unique representative");
                break;
            }
        }
        rep.uniqueness_ok = ok;
    } catch (const std::exception& e) {
        rep.messages.push_back(std::string("uniqueness check: ") + e.what());
    }
    return rep;
}

}  // namespace gt
