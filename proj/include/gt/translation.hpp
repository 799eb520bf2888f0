#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

#include "gt/automatic.hpp"
#include "gt/words.hpp"

namespace gt {

using Rational = boost::multiprecision::cpp_rational;

// Upper bounds on the translation number of g: the quotients d(1, g^m)/m
// decrease to tau(g) along a subsequence, so their minimum is a certified
// upper bound and equals tau exactly when the limit is attained.
struct TranslationEstimate {
    Word g;
    std::vector<Rational> upper_bounds;  // d(1, g^m)/m for m = 1..M
    Rational inf_bound = 0;
};

// Exact geodesic distances d(1, g^m) for m = 1..M, computed by growing the
// ball around the identity one radius at a time until every power appears.
// The radius budget caps the growth; distances never exceed M * |g|, so the
// budget only bites when it is set below that.
inline TranslationEstimate translation_estimate(const AutomaticStructure& s,
                                                const Word& g, int M,
                                                int radius_budget = 64) {
    if (M < 1) throw domain_error("translation estimate needs at least one power");
    if (radius_budget < 0) throw domain_error("radius budget must be nonnegative");
    s.alphabet.validate_word(g);

    std::vector<Word> target(static_cast<size_t>(M));
    Word power;
    for (int m = 1; m <= M; ++m) {
        power += g;
        target[static_cast<size_t>(m - 1)] = normal_form(s, power);
    }

    std::map<Word, int> dist;
    std::vector<Word> frontier{normal_form(s, Word{})};
    dist[frontier.front()] = 0;
    std::string letters = s.alphabet.doubled();
    auto missing = [&] {
        for (const auto& t : target)
            if (!dist.count(t)) return true;
        return false;
    };
    int radius = 0;
    while (missing()) {
        if (radius >= radius_budget)
            throw domain_error("geodesic ball exceeded the radius budget of " +
                               std::to_string(radius_budget));
        if (frontier.empty())
            throw domain_error("geodesic ball closed before finding every power");
        ++radius;
        std::vector<Word> next;
        for (const auto& w : frontier)
            for (char c : letters) {
                Word u = normal_form(s, w + c);
                if (dist.emplace(u, radius).second) next.push_back(std::move(u));
            }
        frontier = std::move(next);
    }

    TranslationEstimate out;
    out.g = g;
    for (int m = 1; m <= M; ++m) {
        Rational bound(dist.at(target[static_cast<size_t>(m - 1)]), m);
        out.upper_bounds.push_back(bound);
        if (m == 1 || bound < out.inf_bound) out.inf_bound = bound;
    }
    return out;
}

}  // namespace gt
