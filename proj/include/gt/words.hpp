#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gt/errors.hpp"

namespace gt {

// A group word over a doubled letter set: generators are single lowercase
// ASCII letters, formal inverses their uppercase partners (a <-> A).
// The empty word denotes the identity and is written "1" in files.
using Word = std::string;

inline bool is_generator_char(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_inverse_char(char c) { return c >= 'A' && c <= 'Z'; }

// Involution on the doubled letter set.
inline char inverse_letter(char c) {
    if (is_generator_char(c)) return static_cast<char>(c - 'a' + 'A');
    if (is_inverse_char(c)) return static_cast<char>(c - 'A' + 'a');
    throw domain_error(std::string("not a letter: '") + c + "'");
}

// Ordered generating set. The letter order is total and fixed; it induces the
// order a < A < b < B < ... on the doubled set and the shortlex order on
// words, which every enumeration downstream follows.
struct Alphabet {
    std::string letters;  // distinct lowercase letters, in order

    Alphabet() = default;
    explicit Alphabet(std::string ls) : letters(std::move(ls)) {
        for (char c : letters) {
            if (!is_generator_char(c))
                throw domain_error(std::string("alphabet letter must be lowercase: '") + c + "'");
        }
        for (size_t i = 0; i < letters.size(); ++i)
            for (size_t j = i + 1; j < letters.size(); ++j)
                if (letters[i] == letters[j])
                    throw domain_error("duplicate alphabet letter");
    }

    size_t size() const { return letters.size(); }

    bool contains(char c) const {
        char lower = is_inverse_char(c) ? inverse_letter(c) : c;
        return letters.find(lower) != std::string::npos;
    }

    // Position in the doubled order a, A, b, B, ...
    int order_index(char c) const {
        bool upper = is_inverse_char(c);
        char lower = upper ? inverse_letter(c) : c;
        auto pos = letters.find(lower);
        if (pos == std::string::npos)
            throw domain_error(std::string("letter outside alphabet: '") + c + "'");
        return static_cast<int>(2 * pos + (upper ? 1 : 0));
    }

    // The doubled letter set in order: "aAbB...".
    std::string doubled() const {
        std::string d;
        for (char c : letters) {
            d.push_back(c);
            d.push_back(inverse_letter(c));
        }
        return d;
    }

    void validate_word(std::string_view w) const {
        for (char c : w)
            if (!contains(c))
                throw parse_error(std::string("symbol outside alphabet: '") + c + "'");
    }

    bool operator==(const Alphabet&) const = default;
};

// Cancel adjacent inverse pairs until none remain.
inline Word free_reduce(std::string_view w) {
    Word out;
    out.reserve(w.size());
    for (char c : w) {
        if (!out.empty() && out.back() == inverse_letter(c))
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

inline Word free_reduce(const Alphabet& a, std::string_view w) {
    a.validate_word(w);
    return free_reduce(w);
}

inline bool is_reduced(std::string_view w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i + 1] == inverse_letter(w[i])) return false;
    return true;
}

// Formal inverse, freely reduced.
inline Word invert(std::string_view w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse_letter(*it));
    return free_reduce(out);
}

inline bool shortlex_less(const Alphabet& a, std::string_view x, std::string_view y) {
    if (x.size() != y.size()) return x.size() < y.size();
    for (size_t i = 0; i < x.size(); ++i) {
        int ix = a.order_index(x[i]), iy = a.order_index(y[i]);
        if (ix != iy) return ix < iy;
    }
    return false;
}

inline void sort_shortlex(const Alphabet& a, std::vector<Word>& ws) {
    std::sort(ws.begin(), ws.end(), [&](const Word& x, const Word& y) {
        return shortlex_less(a, x, y);
    });
}

// The empty word serializes as "1".
inline std::string word_to_text(const Word& w) { return w.empty() ? "1" : w; }

inline Word word_from_text(const Alphabet& a, std::string_view t) {
    if (t == "1") return Word{};
    a.validate_word(t);
    return Word(t);
}

// Visit all freely reduced words of length <= max_len (including the empty
// word) by depth-first extension in letter order. The visit order is
// prefix-lexicographic, not shortlex; collect and sort when shortlex output
// is required. Return false from the callback to prune below a word.
inline void for_each_reduced_word(const Alphabet& a, size_t max_len,
                                  const std::function<bool(const Word&)>& visit) {
    std::string doubled = a.doubled();
    Word w;
    std::function<void()> rec = [&]() {
        if (w.size() >= max_len) return;
        for (char c : doubled) {
            if (!w.empty() && w.back() == inverse_letter(c)) continue;
            w.push_back(c);
            if (visit(w)) rec();
            w.pop_back();
        }
    };
    if (visit(Word{})) rec();
}

// All freely reduced words of length <= max_len in shortlex order.
inline std::vector<Word> reduced_words_upto(const Alphabet& a, size_t max_len) {
    std::vector<Word> out;
    for_each_reduced_word(a, max_len, [&](const Word& w) {
        out.push_back(w);
        return true;
    });
    sort_shortlex(a, out);
    return out;
}

}  // namespace gt
