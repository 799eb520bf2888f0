#include <catch2/catch_amalgamated.hpp>

#include "gt/fixtures.hpp"
#include "gt/translation.hpp"

using namespace gt;

namespace {

Rational distance_at(const TranslationEstimate& e, int m) {
    return e.upper_bounds[static_cast<size_t>(m - 1)] * m;
}

void check_subadditive(const TranslationEstimate& e) {
    int M = static_cast<int>(e.upper_bounds.size());
    for (int m = 1; m <= M; ++m)
        for (int n = 1; m + n <= M; ++n)
            CHECK(distance_at(e, m + n) <= distance_at(e, m) + distance_at(e, n));
}

}  // namespace

TEST_CASE("translation bounds on the rank-two lattice are exact multiples") {
    auto s = build_structure(fixture_model("z2"));
    auto a = translation_estimate(s, "a", 4);
    REQUIRE(a.upper_bounds.size() == 4);
    for (const auto& b : a.upper_bounds) CHECK(b == 1);
    CHECK(a.inf_bound == 1);

    auto ab = translation_estimate(s, "ab", 4);
    for (const auto& b : ab.upper_bounds) CHECK(b == 2);
    CHECK(ab.inf_bound == 2);

    auto aB = translation_estimate(s, "aB", 3);
    CHECK(aB.inf_bound == 2);

    auto aab = translation_estimate(s, "aab", 3);
    CHECK(aab.inf_bound == 3);
}

TEST_CASE("the empty word has translation zero") {
    for (const char* name : {"z", "z2", "f2", "dinfty"}) {
        auto s = build_structure(fixture_model(name));
        auto e = translation_estimate(s, "", 3);
        for (const auto& b : e.upper_bounds) CHECK(b == 0);
        CHECK(e.inf_bound == 0);
    }
}

TEST_CASE("conjugate free-group words shed their wrapping in higher powers") {
    auto s = build_structure(fixture_model("f2"));
    auto e = translation_estimate(s, "abA", 4);
    REQUIRE(e.upper_bounds.size() == 4);
    CHECK(e.upper_bounds[0] == 3);
    CHECK(e.upper_bounds[1] == 2);
    CHECK(e.upper_bounds[2] == Rational(5, 3));
    CHECK(e.upper_bounds[3] == Rational(3, 2));
    CHECK(e.inf_bound == Rational(3, 2));
    check_subadditive(e);
}

TEST_CASE("torsion elements reach a zero bound") {
    auto s = build_structure(fixture_model("dinfty"));
    auto a = translation_estimate(s, "a", 4);
    CHECK(distance_at(a, 1) == 1);
    CHECK(distance_at(a, 2) == 0);
    CHECK(distance_at(a, 3) == 1);
    CHECK(distance_at(a, 4) == 0);
    CHECK(a.inf_bound == 0);

    auto ab = translation_estimate(s, "ab", 3);
    for (const auto& b : ab.upper_bounds) CHECK(b == 2);
    CHECK(ab.inf_bound == 2);
}

TEST_CASE("conjugation moves each distance by at most twice the conjugator") {
    auto f2 = build_structure(fixture_model("f2"));
    auto z2 = build_structure(fixture_model("z2"));
    struct Probe {
        const AutomaticStructure* s;
        Word g;
        Word x;
    };
    std::vector<Probe> probes{{&f2, "b", "a"},   {&f2, "ab", "ba"},
                              {&f2, "aBa", "b"}, {&z2, "ab", "a"},
                              {&z2, "b", "ab"}};
    for (const auto& p : probes) {
        int M = 3;
        auto plain = translation_estimate(*p.s, p.g, M);
        Word conj = free_reduce(invert(p.x) + p.g + p.x);
        auto moved = translation_estimate(*p.s, conj, M);
        Rational slack(2 * static_cast<long long>(p.x.size()));
        for (int m = 1; m <= M; ++m) {
            Rational gap = distance_at(moved, m) - distance_at(plain, m);
            if (gap < 0) gap = -gap;
            CHECK(gap <= slack);
        }
        CHECK(plain.inf_bound <= moved.inf_bound + slack);
        CHECK(moved.inf_bound <= plain.inf_bound + slack);
    }
}

TEST_CASE("distances along powers are subadditive") {
    auto z2 = build_structure(fixture_model("z2"));
    check_subadditive(translation_estimate(z2, "ab", 5));
    check_subadditive(translation_estimate(z2, "aaB", 4));
    auto f2 = build_structure(fixture_model("f2"));
    check_subadditive(translation_estimate(f2, "aba", 4));
    auto d = build_structure(fixture_model("dinfty"));
    check_subadditive(translation_estimate(d, "a", 6));
    check_subadditive(translation_estimate(d, "ab", 4));
}

TEST_CASE("translation estimates reject bad inputs and tight budgets") {
    auto s = build_structure(fixture_model("z2"));
    CHECK_THROWS_AS(translation_estimate(s, "a", 0), domain_error);
    CHECK_THROWS_AS(translation_estimate(s, "a", 2, -1), domain_error);
    CHECK_THROWS_AS(translation_estimate(s, "ab", 4, 3), domain_error);
    CHECK_THROWS_AS(translation_estimate(s, "q", 2), parse_error);
    CHECK_NOTHROW(translation_estimate(s, "ab", 4, 8));
}
