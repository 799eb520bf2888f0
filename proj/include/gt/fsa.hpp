#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gt/errors.hpp"
#include "gt/textio.hpp"
#include "gt/words.hpp"

namespace gt {

// Deterministic finite-state automaton over an ordered symbol alphabet.
// Symbols are short strings: single letters for word languages, "x,y" pairs
// (with "_" padding) for synchronous relations. Missing transitions resolve
// to an implicit absorbing non-accepting dead state, stored as -1.
struct Fsa {
    std::vector<std::string> alphabet;
    int state_count = 0;
    int initial = 0;
    std::vector<bool> accepting;              // size state_count
    std::vector<std::vector<int>> next;       // [state][symbol] -> state or -1

    int symbol_index(std::string_view sym) const {
        for (size_t i = 0; i < alphabet.size(); ++i)
            if (alphabet[i] == sym) return static_cast<int>(i);
        return -1;
    }

    int step(int state, int sym) const {
        if (state < 0) return -1;
        return next[state][sym];
    }

    bool operator==(const Fsa&) const = default;
};

inline Fsa make_fsa(std::vector<std::string> alphabet, int states, int initial,
                    std::vector<int> accept) {
    Fsa m;
    m.alphabet = std::move(alphabet);
    m.state_count = states;
    m.initial = initial;
    m.accepting.assign(states, false);
    for (int s : accept) m.accepting.at(s) = true;
    m.next.assign(states, std::vector<int>(m.alphabet.size(), -1));
    return m;
}

inline void add_transition(Fsa& m, int from, std::string_view sym, int to) {
    int s = m.symbol_index(sym);
    if (s < 0) throw domain_error(std::string("unknown symbol: ") + std::string(sym));
    m.next.at(from).at(s) = to;
}

// ---------------------------------------------------------------------------
// Text format:
//   fsa
//   alphabet a b c
//   states 3
//   initial 0
//   accept 0 2
//   trans 0 a 1
//   ...
//   end
// '#' starts a comment; blank lines are ignored.

inline Fsa parse_fsa_body(LineReader& lr) {
    Fsa m;
    bool have_states = false;
    std::string line;
    while (lr.next(line)) {
        auto toks = split_tokens(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "end") {
            if (!have_states) throw parse_error(lr.where() + ": fsa block missing states");
            return m;
        } else if (kw == "alphabet") {
            m.alphabet.assign(toks.begin() + 1, toks.end());
        } else if (kw == "states") {
            if (toks.size() != 2) throw parse_error(lr.where() + ": states wants one count");
            m.state_count = parse_int(toks[1], lr.where());
            if (m.state_count < 0) throw parse_error(lr.where() + ": negative state count");
            m.accepting.assign(m.state_count, false);
            m.next.assign(m.state_count, std::vector<int>(m.alphabet.size(), -1));
            have_states = true;
        } else if (kw == "initial") {
            if (toks.size() != 2) throw parse_error(lr.where() + ": initial wants one state");
            m.initial = parse_int(toks[1], lr.where());
        } else if (kw == "accept") {
            for (size_t i = 1; i < toks.size(); ++i) {
                int s = parse_int(toks[i], lr.where());
                if (s < 0 || s >= m.state_count)
                    throw parse_error(lr.where() + ": accept state out of range");
                m.accepting[s] = true;
            }
        } else if (kw == "trans") {
            if (toks.size() != 4) throw parse_error(lr.where() + ": trans wants from sym to");
            if (!have_states) throw parse_error(lr.where() + ": trans before states");
            int from = parse_int(toks[1], lr.where());
            int to = parse_int(toks[3], lr.where());
            if (from < 0 || from >= m.state_count || to < 0 || to >= m.state_count)
                throw parse_error(lr.where() + ": transition state out of range");
            int sym = m.symbol_index(toks[2]);
            if (sym < 0) throw parse_error(lr.where() + ": unknown symbol " + toks[2]);
            m.next[from][sym] = to;
        } else {
            throw parse_error(lr.where() + ": unknown directive '" + kw + "'");
        }
    }
    throw parse_error(lr.where() + ": unterminated fsa block");
}

inline Fsa parse_fsa(std::istream& in, const std::string& source = "<fsa>") {
    LineReader lr(in, source);
    std::string line;
    while (lr.next(line)) {
        auto toks = split_tokens(line);
        if (toks.empty()) continue;
        if (toks[0] != "fsa") throw parse_error(lr.where() + ": expected 'fsa'");
        return parse_fsa_body(lr);
    }
    throw parse_error(source + ": empty input");
}

inline void print_fsa(std::ostream& os, const Fsa& m, const std::string& indent = "") {
    os << indent << "fsa\n";
    os << indent << "alphabet";
    for (const auto& s : m.alphabet) os << ' ' << s;
    os << '\n';
    os << indent << "states " << m.state_count << '\n';
    os << indent << "initial " << m.initial << '\n';
    os << indent << "accept";
    for (int s = 0; s < m.state_count; ++s)
        if (m.accepting[s]) os << ' ' << s;
    os << '\n';
    for (int s = 0; s < m.state_count; ++s)
        for (size_t a = 0; a < m.alphabet.size(); ++a)
            if (m.next[s][a] >= 0)
                os << indent << "trans " << s << ' ' << m.alphabet[a] << ' ' << m.next[s][a] << '\n';
    os << indent << "end\n";
}

// ---------------------------------------------------------------------------
// Basic operations.

// Run the automaton on a sequence of symbol indices.
inline bool accepts_symbols(const Fsa& m, const std::vector<int>& syms) {
    int s = m.initial;
    for (int a : syms) {
        s = m.step(s, a);
        if (s < 0) return false;
    }
    return s >= 0 && m.accepting[s];
}

// For single-character symbol alphabets: run on a word, one char per symbol.
inline bool accepts(const Fsa& m, std::string_view w) {
    int s = m.initial;
    for (char c : w) {
        int a = m.symbol_index(std::string_view(&c, 1));
        if (a < 0)
            throw parse_error(std::string("word symbol outside automaton alphabet: '") + c + "'");
        s = m.step(s, a);
        if (s < 0) return false;
    }
    return s >= 0 && m.accepting[s];
}

inline std::vector<bool> reachable_states(const Fsa& m) {
    std::vector<bool> seen(m.state_count, false);
    std::deque<int> q{m.initial};
    if (m.initial >= 0 && m.initial < m.state_count) seen[m.initial] = true;
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        for (size_t a = 0; a < m.alphabet.size(); ++a) {
            int t = m.next[s][a];
            if (t >= 0 && !seen[t]) {
                seen[t] = true;
                q.push_back(t);
            }
        }
    }
    return seen;
}

inline std::vector<bool> coaccessible_states(const Fsa& m) {
    std::vector<std::vector<int>> rev(m.state_count);
    for (int s = 0; s < m.state_count; ++s)
        for (size_t a = 0; a < m.alphabet.size(); ++a)
            if (m.next[s][a] >= 0) rev[m.next[s][a]].push_back(s);
    std::vector<bool> seen(m.state_count, false);
    std::deque<int> q;
    for (int s = 0; s < m.state_count; ++s)
        if (m.accepting[s]) {
            seen[s] = true;
            q.push_back(s);
        }
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        for (int p : rev[s])
            if (!seen[p]) {
                seen[p] = true;
                q.push_back(p);
            }
    }
    return seen;
}

// Drop states that are unreachable or cannot reach an accepting state.
// Preserves the language; the initial state is kept even when useless
// (yielding a single-state empty automaton).
inline Fsa trim(const Fsa& m) {
    auto reach = reachable_states(m);
    auto coacc = coaccessible_states(m);
    std::vector<int> remap(m.state_count, -1);
    int n = 0;
    for (int s = 0; s < m.state_count; ++s)
        if (reach[s] && coacc[s]) remap[s] = n++;
    Fsa out;
    out.alphabet = m.alphabet;
    bool initial_useful = m.initial >= 0 && remap[m.initial] >= 0;
    out.state_count = n + (initial_useful ? 0 : 1);
    out.accepting.assign(out.state_count, false);
    out.next.assign(out.state_count, std::vector<int>(m.alphabet.size(), -1));
    for (int s = 0; s < m.state_count; ++s) {
        if (remap[s] < 0) continue;
        out.accepting[remap[s]] = m.accepting[s];
        for (size_t a = 0; a < m.alphabet.size(); ++a) {
            int t = m.next[s][a];
            if (t >= 0 && remap[t] >= 0) out.next[remap[s]][a] = remap[t];
        }
    }
    out.initial = initial_useful ? remap[m.initial] : n;
    return out;
}

inline void require_same_alphabet(const Fsa& a, const Fsa& b) {
    if (a.alphabet != b.alphabet)
        throw domain_error("automaton alphabets differ");
}

// Product automaton on reachable state pairs; accepts the intersection.
inline Fsa intersect(const Fsa& a, const Fsa& b) {
    require_same_alphabet(a, b);
    Fsa out;
    out.alphabet = a.alphabet;
    std::map<std::pair<int, int>, int> id;
    std::deque<std::pair<int, int>> q;
    auto get = [&](int x, int y) {
        auto key = std::make_pair(x, y);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int n = static_cast<int>(id.size());
        id.emplace(key, n);
        out.accepting.push_back(a.accepting[x] && b.accepting[y]);
        out.next.emplace_back(out.alphabet.size(), -1);
        q.push_back(key);
        return n;
    };
    out.initial = get(a.initial, b.initial);
    while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop_front();
        int from = id[{x, y}];
        for (size_t s = 0; s < out.alphabet.size(); ++s) {
            int tx = a.next[x][s], ty = b.next[y][s];
            if (tx >= 0 && ty >= 0) out.next[from][s] = get(tx, ty);
        }
    }
    out.state_count = static_cast<int>(id.size());
    return out;
}

// Make every transition explicit by adding a dead state if needed.
inline Fsa totalize(const Fsa& m) {
    bool complete = true;
    for (int s = 0; s < m.state_count && complete; ++s)
        for (size_t a = 0; a < m.alphabet.size(); ++a)
            if (m.next[s][a] < 0) {
                complete = false;
                break;
            }
    Fsa out = m;
    if (complete) return out;
    int dead = out.state_count++;
    out.accepting.push_back(false);
    out.next.emplace_back(out.alphabet.size(), dead);
    for (int s = 0; s < dead; ++s)
        for (size_t a = 0; a < out.alphabet.size(); ++a)
            if (out.next[s][a] < 0) out.next[s][a] = dead;
    return out;
}

inline Fsa complement(const Fsa& m) {
    Fsa out = totalize(m);
    for (int s = 0; s < out.state_count; ++s) out.accepting[s] = !out.accepting[s];
    return out;
}

inline bool is_empty_language(const Fsa& m) {
    auto reach = reachable_states(m);
    for (int s = 0; s < m.state_count; ++s)
        if (reach[s] && m.accepting[s]) return false;
    return true;
}

inline bool subset_language(const Fsa& a, const Fsa& b) {
    return is_empty_language(intersect(a, complement(b)));
}

inline bool equivalent(const Fsa& a, const Fsa& b) {
    return subset_language(a, b) && subset_language(b, a);
}

// Moore partition refinement on the totalized automaton.
inline Fsa minimize(const Fsa& m0) {
    Fsa m = totalize(trim(m0));
    int n = m.state_count;
    std::vector<int> cls(n);
    for (int s = 0; s < n; ++s) cls[s] = m.accepting[s] ? 1 : 0;
    for (;;) {
        std::map<std::vector<int>, int> sig;
        std::vector<int> next_cls(n);
        for (int s = 0; s < n; ++s) {
            std::vector<int> key{cls[s]};
            for (size_t a = 0; a < m.alphabet.size(); ++a) key.push_back(cls[m.next[s][a]]);
            auto it = sig.find(key);
            if (it == sig.end()) it = sig.emplace(key, static_cast<int>(sig.size())).first;
            next_cls[s] = it->second;
        }
        bool stable = true;
        for (int s = 0; s < n && stable; ++s) stable = next_cls[s] == cls[s];
        cls = next_cls;
        if (stable) break;
    }
    int k = *std::max_element(cls.begin(), cls.end()) + 1;
    Fsa out;
    out.alphabet = m.alphabet;
    out.state_count = k;
    out.initial = cls[m.initial];
    out.accepting.assign(k, false);
    out.next.assign(k, std::vector<int>(m.alphabet.size(), -1));
    for (int s = 0; s < n; ++s) {
        out.accepting[cls[s]] = m.accepting[s];
        for (size_t a = 0; a < m.alphabet.size(); ++a) out.next[cls[s]][a] = cls[m.next[s][a]];
    }
    return trim(out);
}

// ---------------------------------------------------------------------------
// Enumeration in shortlex order (symbol order = alphabet order).

namespace detail {
// Shortest distance from each state to an accepting state, or -1.
inline std::vector<int> accept_distance(const Fsa& m) {
    std::vector<std::vector<int>> rev(m.state_count);
    for (int s = 0; s < m.state_count; ++s)
        for (size_t a = 0; a < m.alphabet.size(); ++a)
            if (m.next[s][a] >= 0) rev[m.next[s][a]].push_back(s);
    std::vector<int> dist(m.state_count, -1);
    std::deque<int> q;
    for (int s = 0; s < m.state_count; ++s)
        if (m.accepting[s]) {
            dist[s] = 0;
            q.push_back(s);
        }
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        for (int p : rev[s])
            if (dist[p] < 0) {
                dist[p] = dist[s] + 1;
                q.push_back(p);
            }
    }
    return dist;
}
}  // namespace detail

// Accepted words of length <= max_len, shortest first and within a length in
// the machine's own symbol order, so finalized structures enumerate in
// shortlex. Words are concatenations of symbols without separators.
inline std::vector<std::string> enumerate_language(const Fsa& m, size_t max_len) {
    auto dist = detail::accept_distance(m);
    std::vector<std::string> out;
    std::string w;
    std::function<void(int, size_t)> rec = [&](int s, size_t len) {
        if (len > max_len) return;
        if (m.accepting[s] && len <= max_len) out.push_back(w);
        if (len == max_len) return;
        for (size_t a = 0; a < m.alphabet.size(); ++a) {
            int t = m.next[s][a];
            if (t < 0 || dist[t] < 0) continue;
            if (len + 1 + static_cast<size_t>(dist[t]) > max_len) continue;
            w += m.alphabet[a];
            rec(t, len + 1);
            w.resize(w.size() - m.alphabet[a].size());
        }
    };
    if (m.initial >= 0) rec(m.initial, 0);
    // The DFS emits each length in symbol order already; only length needs
    // reordering.
    std::stable_sort(out.begin(), out.end(), [](const std::string& x, const std::string& y) {
        return x.size() < y.size();
    });
    return out;
}

// Number of accepted words of length exactly n (as uint64; desk scale only).
inline std::vector<std::uint64_t> length_counts(const Fsa& m, size_t max_len) {
    std::vector<std::uint64_t> counts;
    std::vector<std::uint64_t> cur(m.state_count, 0);
    if (m.initial >= 0) cur[m.initial] = 1;
    for (size_t n = 0;; ++n) {
        std::uint64_t acc = 0;
        for (int s = 0; s < m.state_count; ++s)
            if (m.accepting[s]) acc += cur[s];
        counts.push_back(acc);
        if (n == max_len) break;
        std::vector<std::uint64_t> nxt(m.state_count, 0);
        for (int s = 0; s < m.state_count; ++s) {
            if (!cur[s]) continue;
            for (size_t a = 0; a < m.alphabet.size(); ++a)
                if (m.next[s][a] >= 0) nxt[m.next[s][a]] += cur[s];
        }
        cur.swap(nxt);
    }
    return counts;
}

// Cumulative counts #{w in L : |w| <= n} for n = 0..max_len.
inline std::vector<std::uint64_t> cumulative_counts(const Fsa& m, size_t max_len) {
    auto exact = length_counts(m, max_len);
    std::uint64_t run = 0;
    for (auto& v : exact) {
        run += v;
        v = run;
    }
    return exact;
}

// ---------------------------------------------------------------------------
// Growth classification. The language has polynomial cumulative growth iff no
// useful state lies on two distinct cycles; then every nontrivial strongly
// connected component of the trimmed automaton is a single simple cycle, and
// the degree is the maximum number of cycle components met along a path from
// the initial state to an accepting state.

struct Growth {
    bool polynomial = false;
    int degree = 0;  // valid when polynomial

    bool operator==(const Growth&) const = default;
};

namespace detail {
// Tarjan SCCs; returns component index per state, components in reverse
// topological order.
inline int strongly_connected_components(const Fsa& m, std::vector<int>& comp) {
    int n = m.state_count;
    comp.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0), on(n, 0);
    std::vector<int> stack;
    int next_index = 0, ncomp = 0;
    // Iterative Tarjan to avoid deep recursion.
    struct Frame { int s; size_t a; };
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on[root] = 1;
        while (!call.empty()) {
            auto& f = call.back();
            bool descended = false;
            while (f.a < m.alphabet.size()) {
                int t = m.next[f.s][f.a++];
                if (t < 0) continue;
                if (index[t] < 0) {
                    index[t] = low[t] = next_index++;
                    stack.push_back(t);
                    on[t] = 1;
                    call.push_back({t, 0});
                    descended = true;
                    break;
                } else if (on[t]) {
                    low[f.s] = std::min(low[f.s], index[t]);
                }
            }
            if (descended) continue;
            if (low[f.s] == index[f.s]) {
                for (;;) {
                    int v = stack.back();
                    stack.pop_back();
                    on[v] = 0;
                    comp[v] = ncomp;
                    if (v == f.s) break;
                }
                ++ncomp;
            }
            int s = f.s;
            call.pop_back();
            if (!call.empty()) low[call.back().s] = std::min(low[call.back().s], low[s]);
        }
    }
    return ncomp;
}
}  // namespace detail

inline Growth growth_degree(const Fsa& m0) {
    Fsa m = trim(m0);
    if (is_empty_language(m)) return {true, 0};
    std::vector<int> comp;
    int ncomp = detail::strongly_connected_components(m, comp);
    // Count transitions internal to each component and check linearity.
    std::vector<int> internal(ncomp, 0), size(ncomp, 0);
    std::vector<int> out_per_state(m.state_count, 0);
    for (int s = 0; s < m.state_count; ++s) ++size[comp[s]];
    for (int s = 0; s < m.state_count; ++s)
        for (size_t a = 0; a < m.alphabet.size(); ++a) {
            int t = m.next[s][a];
            if (t >= 0 && comp[t] == comp[s]) {
                ++internal[comp[s]];
                ++out_per_state[s];
            }
        }
    for (int s = 0; s < m.state_count; ++s)
        if (out_per_state[s] >= 2) return {false, 0};  // two distinct cycles
    // Each component is now trivial (no internal edge) or a simple cycle.
    std::vector<int> weight(ncomp, 0);
    for (int c = 0; c < ncomp; ++c) weight[c] = internal[c] > 0 ? 1 : 0;
    // Longest cycle-weighted path over the condensation, from the initial
    // component to any accepting component. Components are numbered in
    // reverse topological order by Tarjan, so iterate increasing.
    std::vector<std::set<int>> succ(ncomp);
    for (int s = 0; s < m.state_count; ++s)
        for (size_t a = 0; a < m.alphabet.size(); ++a) {
            int t = m.next[s][a];
            if (t >= 0 && comp[t] != comp[s]) succ[comp[s]].insert(comp[t]);
        }
    std::vector<int> best(ncomp, -1);
    std::vector<bool> has_acc(ncomp, false);
    for (int s = 0; s < m.state_count; ++s)
        if (m.accepting[s]) has_acc[comp[s]] = true;
    // best[c] = max cycle weight from c to an accepting component, or -1.
    int degree = -1;
    for (int c = 0; c < ncomp; ++c) {  // successors have smaller indices
        int b = has_acc[c] ? 0 : -1;
        for (int d : succ[c])
            if (best[d] >= 0) b = std::max(b, best[d]);
        if (b >= 0) b += weight[c];
        best[c] = b;
    }
    degree = best[comp[m.initial]];
    if (degree < 0) return {true, 0};  // no accepting path (empty language)
    return {true, degree};
}

// ---------------------------------------------------------------------------
// Basic languages a0 l1* a1 ... ln* an. Covers a polynomial-growth language:
// enumerate all paths that never complete a full loop inside a cycle
// component; at each first entry into a cycle component insert the component
// cycle word as a pump.

struct BasicLanguage {
    std::vector<std::string> constants;  // a0..an, n+1 entries
    std::vector<std::string> pumps;      // l1..ln

    bool operator==(const BasicLanguage&) const = default;
};

// Membership test, used by tests to verify coverage.
inline bool basic_language_matches(const BasicLanguage& b, std::string_view w,
                                   size_t max_pump = 64) {
    // Dynamic recursion over segments.
    std::function<bool(size_t, std::string_view)> rec = [&](size_t i, std::string_view rest) {
        if (!rest.starts_with(b.constants[i])) return false;
        rest.remove_prefix(b.constants[i].size());
        if (i == b.pumps.size()) return rest.empty();
        const std::string& pump = b.pumps[i];
        for (size_t reps = 0; reps <= max_pump; ++reps) {
            if (rec(i + 1, rest)) return true;
            if (pump.empty() || !rest.starts_with(pump)) return false;
            rest.remove_prefix(pump.size());
        }
        return false;
    };
    return rec(0, w);
}

inline std::vector<BasicLanguage> decompose_basic(const Fsa& m0) {
    Growth g = growth_degree(m0);
    if (!g.polynomial) throw domain_error("language does not have polynomial growth");
    Fsa m = trim(m0);
    if (is_empty_language(m)) return {};
    std::vector<int> comp;
    detail::strongly_connected_components(m, comp);
    std::vector<bool> cyclic(m.state_count, false);
    for (int s = 0; s < m.state_count; ++s)
        for (size_t a = 0; a < m.alphabet.size(); ++a) {
            int t = m.next[s][a];
            if (t >= 0 && comp[t] == comp[s]) cyclic[s] = true;
        }
    // Word read around the unique cycle from s back to s.
    auto cycle_word = [&](int s) {
        std::string w;
        int cur = s;
        do {
            bool moved = false;
            for (size_t a = 0; a < m.alphabet.size(); ++a) {
                int t = m.next[cur][a];
                if (t >= 0 && comp[t] == comp[cur]) {
                    w += m.alphabet[a];
                    cur = t;
                    moved = true;
                    break;
                }
            }
            if (!moved) throw domain_error("broken cycle component");
        } while (cur != s);
        return w;
    };
    std::vector<BasicLanguage> out;
    // DFS over paths; inside a component segment no state may repeat.
    BasicLanguage cur;
    cur.constants.push_back("");
    std::set<int> seg_seen;
    std::function<void(int)> rec = [&](int s) {
        if (m.accepting[s]) out.push_back(cur);
        for (size_t a = 0; a < m.alphabet.size(); ++a) {
            int t = m.next[s][a];
            if (t < 0) continue;
            if (comp[t] == comp[s]) {
                if (seg_seen.count(t)) continue;  // would complete the loop
                seg_seen.insert(t);
                cur.constants.back() += m.alphabet[a];
                rec(t);
                cur.constants.back().resize(cur.constants.back().size() - m.alphabet[a].size());
                seg_seen.erase(t);
            } else {
                // Leaving the component: new segment; pump inserted at entry
                // of the next component if it is cyclic.
                auto saved = seg_seen;
                seg_seen = {t};
                bool pumped = cyclic[t];
                cur.constants.back() += m.alphabet[a];
                if (pumped) {
                    cur.pumps.push_back(cycle_word(t));
                    cur.constants.push_back("");
                }
                rec(t);
                if (pumped) {
                    cur.constants.pop_back();
                    cur.pumps.pop_back();
                }
                cur.constants.back().resize(cur.constants.back().size() - m.alphabet[a].size());
                seg_seen = saved;
            }
        }
    };
    int s0 = m.initial;
    seg_seen.insert(s0);
    if (cyclic[s0]) {
        cur.pumps.push_back(cycle_word(s0));
        cur.constants.push_back("");
    }
    rec(s0);
    return out;
}

// Identity oracle on words: returns true iff the word represents 1.
using IsIdentity = std::function<bool(const std::string&)>;

// At most one candidate torsion word per basic language: the pump-free
// representative a0 a1 ... an, kept when some power 2..p_max is trivial.
// The identity itself is excluded. Duplicates are removed, first kept.
inline std::vector<std::string> torsion_candidates(const std::vector<BasicLanguage>& dec,
                                                   const IsIdentity& wp, int p_max) {
    std::vector<std::string> out;
    for (const auto& b : dec) {
        std::string gamma;
        for (const auto& c : b.constants) gamma += c;
        if (gamma.empty() || wp(gamma)) continue;
        for (int p = 2; p <= p_max; ++p) {
            std::string pow;
            for (int i = 0; i < p; ++i) pow += gamma;
            if (wp(pow)) {
                if (std::find(out.begin(), out.end(), gamma) == out.end()) out.push_back(gamma);
                break;
            }
        }
    }
    return out;
}

}  // namespace gt
