#pragma once

#include <deque>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "gt/errors.hpp"
#include "gt/fsa.hpp"
#include "gt/words.hpp"

namespace gt {

// Symbols for synchronous pair automata: "x,y" where x, y are letters or the
// padding mark "_". Padding is right-only per coordinate and "_,_" is not a
// symbol. Canonical order: first coordinate major, letters in alphabet order
// before the pad.
struct PairAlphabet {
    std::string letters;                  // doubled alphabet, e.g. "aAbB"
    std::vector<std::string> symbols;     // canonical order
    std::vector<std::pair<int, int>> part;  // symbol -> (xslot, yslot)
    std::vector<std::vector<int>> index;  // [xslot][yslot] -> symbol or -1

    int pad() const { return static_cast<int>(letters.size()); }

    static PairAlphabet make(const Alphabet& a) {
        PairAlphabet p;
        p.letters = a.doubled();
        int n = p.pad();
        p.index.assign(n + 1, std::vector<int>(n + 1, -1));
        for (int x = 0; x <= n; ++x)
            for (int y = 0; y <= n; ++y) {
                if (x == n && y == n) continue;
                std::string sym;
                sym += x == n ? '_' : p.letters[x];
                sym += ',';
                sym += y == n ? '_' : p.letters[y];
                p.index[x][y] = static_cast<int>(p.symbols.size());
                p.symbols.push_back(sym);
                p.part.emplace_back(x, y);
            }
        return p;
    }

    int slot(char c) const {
        if (c == '_') return pad();
        auto pos = letters.find(c);
        if (pos == std::string::npos) throw domain_error(std::string("letter outside alphabet: ") + c);
        return static_cast<int>(pos);
    }

    int sym(int xslot, int yslot) const { return index[xslot][yslot]; }
};

// ---------------------------------------------------------------------------
// Small NFA with epsilon moves, for projections and relation composition.

struct Nfa {
    std::vector<std::string> alphabet;
    int state_count = 0;
    std::vector<int> initial;
    std::vector<bool> accepting;
    // edges[state] = list of (symbol or -1 for epsilon, target)
    std::vector<std::vector<std::pair<int, int>>> edges;

    int add_state(bool acc = false) {
        accepting.push_back(acc);
        edges.emplace_back();
        return state_count++;
    }
};

inline Fsa determinize(const Nfa& n) {
    auto closure = [&](std::set<int> s) {
        std::deque<int> q(s.begin(), s.end());
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (auto [sym, t] : n.edges[v])
                if (sym < 0 && !s.count(t)) {
                    s.insert(t);
                    q.push_back(t);
                }
        }
        return s;
    };
    Fsa out;
    out.alphabet = n.alphabet;
    std::map<std::set<int>, int> id;
    std::deque<std::set<int>> q;
    auto get = [&](std::set<int> s) {
        s = closure(std::move(s));
        auto it = id.find(s);
        if (it != id.end()) return it->second;
        int v = static_cast<int>(id.size());
        bool acc = false;
        for (int x : s) acc = acc || n.accepting[x];
        id.emplace(s, v);
        out.accepting.push_back(acc);
        out.next.emplace_back(n.alphabet.size(), -1);
        q.push_back(std::move(s));
        return v;
    };
    out.initial = get(std::set<int>(n.initial.begin(), n.initial.end()));
    while (!q.empty()) {
        std::set<int> s = q.front();
        q.pop_front();
        int from = id[s];
        for (size_t a = 0; a < n.alphabet.size(); ++a) {
            std::set<int> t;
            for (int v : s)
                for (auto [sym, u] : n.edges[v])
                    if (sym == static_cast<int>(a)) t.insert(u);
            if (!t.empty()) out.next[from][a] = get(std::move(t));
        }
    }
    out.state_count = static_cast<int>(id.size());
    return trim(out);
}

// ---------------------------------------------------------------------------
// Coordinate projection of a pair automaton, with padding dropped. The result
// reads single letters.

inline Fsa project_coordinate(const Fsa& m, const PairAlphabet& pa, int coord) {
    if (coord != 0 && coord != 1) throw domain_error("coordinate must be 0 or 1");
    Nfa n;
    n.alphabet.clear();
    for (char c : pa.letters) n.alphabet.emplace_back(1, c);
    for (int s = 0; s < m.state_count; ++s) n.add_state(m.accepting[s]);
    n.initial = {m.initial};
    for (int s = 0; s < m.state_count; ++s)
        for (size_t a = 0; a < m.alphabet.size(); ++a) {
            int t = m.next[s][a];
            if (t < 0) continue;
            const std::string& sym = m.alphabet[a];
            if (sym.size() != 3 || sym[1] != ',')
                throw domain_error("not a pair symbol: " + sym);
            char c = coord == 0 ? sym[0] : sym[2];
            n.edges[s].emplace_back(c == '_' ? -1 : pa.slot(c), t);
        }
    return minimize(determinize(n));
}

// The identity relation {(u,u) : u in L} as a pair automaton over pa.
inline Fsa identity_relation(const Fsa& acceptor, const PairAlphabet& pa) {
    Fsa out;
    out.alphabet = pa.symbols;
    out.state_count = acceptor.state_count;
    out.initial = acceptor.initial;
    out.accepting = acceptor.accepting;
    out.next.assign(out.state_count, std::vector<int>(pa.symbols.size(), -1));
    for (int s = 0; s < acceptor.state_count; ++s)
        for (size_t a = 0; a < acceptor.alphabet.size(); ++a) {
            int t = acceptor.next[s][a];
            if (t < 0) continue;
            int slot = pa.slot(acceptor.alphabet[a][0]);
            out.next[s][pa.sym(slot, slot)] = t;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Relation composition: (u,w) accepted iff some intermediate v joins u to w
// through r1 and r2. The intermediate may be shorter or longer than both
// coordinates; a machine whose input is exhausted freezes in an accepting
// state, and an intermediate outliving both coordinates is handled by a
// residual-tail acceptance set.

inline Fsa compose_relations(const Fsa& r1, const Fsa& r2, const PairAlphabet& pa) {
    int pad = pa.pad();
    auto step1 = [&](int m, int x, int y) { return m < 0 ? -1 : (pa.sym(x, y) < 0 ? -1 : r1.next[m][pa.sym(x, y)]); };
    auto step2 = [&](int m, int y, int z) { return m < 0 ? -1 : (pa.sym(y, z) < 0 ? -1 : r2.next[m][pa.sym(y, z)]); };

    // Residual acceptance: pairs (m1, m2) from which a tail of symbols
    // (_,y) in r1 and (y,_) in r2 reaches simultaneous acceptance.
    std::set<std::pair<int, int>> acc;
    {
        std::deque<std::pair<int, int>> q;
        for (int i = 0; i < r1.state_count; ++i)
            for (int j = 0; j < r2.state_count; ++j)
                if (r1.accepting[i] && r2.accepting[j]) {
                    acc.emplace(i, j);
                    q.emplace_back(i, j);
                }
        // Backward closure over one intermediate letter.
        std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> pred;
        for (int i = 0; i < r1.state_count; ++i)
            for (int j = 0; j < r2.state_count; ++j)
                for (int y = 0; y < pad; ++y) {
                    int i2 = step1(i, pad, y), j2 = step2(j, y, pad);
                    if (i2 >= 0 && j2 >= 0) pred[{i2, j2}].emplace_back(i, j);
                }
        while (!q.empty()) {
            auto key = q.front();
            q.pop_front();
            auto it = pred.find(key);
            if (it == pred.end()) continue;
            for (auto& p : it->second)
                if (acc.insert(p).second) q.push_back(p);
        }
    }

    // NFA over (m1, m2, intermediate-ended). A frozen machine keeps its
    // state; freezing requires it to be accepting at that moment.
    Nfa n;
    n.alphabet = pa.symbols;
    std::map<std::tuple<int, int, int>, int> id;
    std::deque<std::tuple<int, int, int>> q;
    auto get = [&](int m1, int m2, int done) {
        auto key = std::make_tuple(m1, m2, done);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        bool is_acc = done ? (r1.accepting[m1] && r2.accepting[m2]) : acc.count({m1, m2}) > 0;
        int v = n.add_state(is_acc);
        id.emplace(key, v);
        q.push_back(key);
        return v;
    };
    n.initial = {get(r1.initial, r2.initial, 0)};
    while (!q.empty()) {
        auto [m1, m2, done] = q.front();
        q.pop_front();
        int from = id[{m1, m2, done}];
        for (int x = 0; x <= pad; ++x)
            for (int z = 0; z <= pad; ++z) {
                if (x == pad && z == pad) continue;
                int sym = pa.sym(x, z);
                if (!done) {
                    // Intermediate continues with some letter y.
                    for (int y = 0; y < pad; ++y) {
                        int a = step1(m1, x, y), b = step2(m2, y, z);
                        if (a >= 0 && b >= 0) {
                            int tgt = get(a, b, 0);  // may grow n.edges
                            n.edges[from].emplace_back(sym, tgt);
                        }
                    }
                }
                // Intermediate has ended (now or earlier): machine 1 reads
                // (x,_), machine 2 reads (_,z); exhausted coordinates freeze.
                int a = x == pad ? (r1.accepting[m1] ? m1 : -1) : step1(m1, x, pad);
                int b = z == pad ? (r2.accepting[m2] ? m2 : -1) : step2(m2, pad, z);
                if (a >= 0 && b >= 0) {
                    int tgt = get(a, b, 1);
                    n.edges[from].emplace_back(sym, tgt);
                }
            }
    }
    return minimize(determinize(n));
}

}  // namespace gt
