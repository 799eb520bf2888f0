#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gt/fixtures.hpp"
#include "gt/kbuilder.hpp"

using namespace gt;

namespace {

const AbelianType Z = parse_abelian_type("Z");

int exponent_sum(const Word& w, char letter) {
    int s = 0;
    for (char c : w) {
        if (c == letter) ++s;
        if (c == inverse_letter(letter)) --s;
    }
    return s;
}

bool z_trivial(const Word& w) { return exponent_sum(w, 'a') == 0; }

bool z2_trivial(const Word& w) {
    return exponent_sum(w, 'a') == 0 && exponent_sum(w, 'b') == 0;
}

WordProblem cached_wp(const AutomaticStructure& s) {
    auto cache = std::make_shared<std::map<Word, bool>>();
    return [&s, cache](const Word& w) {
        auto it = cache->find(w);
        if (it != cache->end()) return it->second;
        bool ok = is_trivial(s, w);
        cache->emplace(w, ok);
        return ok;
    };
}

// Orbit count of all {null, point} edge labellings via Burnside, using only
// the vertex action. Self-inverse labels make the action a pure permutation
// of edges.
long long two_label_orbits(int dim) {
    int e = cube_edge_count(dim);
    long long total = 0;
    auto syms = cube_symmetries(dim);
    for (const auto& g : syms) {
        std::vector<int> img(e);
        for (int axis = 0; axis < dim; ++axis)
            for (int v = 0; v < (1 << dim); ++v) {
                if ((v >> axis) & 1) continue;
                int w = symmetry_vertex(g, v);
                int axis2 = g.perm[axis];
                img[cube_edge_index(dim, axis, v)] =
                    cube_edge_index(dim, axis2, w & ~(1 << axis2));
            }
        std::vector<char> seen(e, 0);
        int cycles = 0;
        for (int i = 0; i < e; ++i) {
            if (seen[i]) continue;
            ++cycles;
            for (int j = i; !seen[j]; j = img[j]) seen[j] = 1;
        }
        total += 1LL << cycles;
    }
    return total / static_cast<long long>(syms.size());
}

int count_stratum(const SkeletonBuild& b, int dim, Stratum st) {
    int n = 0;
    for (const Cell& c : b.complex.cells)
        if (c.dim == dim && b.strata.at(c.id) == st) ++n;
    return n;
}

// Every square of the layered cylinder must read to the identity, skipping
// collapsed point edges.
void check_cylinder(const AutomaticStructure& s, const ContractionLayers& cl) {
    REQUIRE(cl.horizontal.size() == cl.vertices.size());
    REQUIRE(cl.vertical.size() + 1 == cl.vertices.size());
    for (size_t t = 0; t + 1 < cl.vertices.size(); ++t) {
        for (int j = 0; j < 4; ++j) {
            Word w;
            auto append = [&](const CubeLabel& lab, bool forward) {
                if (is_point_label(lab)) return;
                w += forward ? lab : invert(lab);
            };
            append(cl.horizontal[t][j], true);
            append(cl.vertical[t][(j + 1) % 4], true);
            append(cl.horizontal[t + 1][j], false);
            append(cl.vertical[t][j], false);
            CHECK(is_trivial(s, free_reduce(w)));
        }
        for (int j = 0; j < 4; ++j)
            CHECK(equal(s, cl.vertices[t][j] + cl.vertical[t][j], cl.vertices[t + 1][j]));
    }
}

}  // namespace

TEST_CASE("cube edges, symmetries, and canonical forms") {
    CHECK(cube_edge_count(1) == 1);
    CHECK(cube_edge_count(2) == 4);
    CHECK(cube_edge_count(3) == 12);
    CHECK(cube_symmetries(1).size() == 2);
    CHECK(cube_symmetries(2).size() == 8);
    CHECK(cube_symmetries(3).size() == 48);

    auto syms1 = cube_symmetries(1);
    CHECK(symmetry_sign(syms1[0]) == 1);
    LabelledCube seg{1, {"ab"}};
    CHECK(apply_symmetry(seg, syms1[1]).labels == std::vector<CubeLabel>{"BA"});
    CHECK(canonical_form(seg) == canonical_form(LabelledCube{1, {"BA"}}));

    LabelledCube sq = labelled_square("a", "b", "", "A");
    for (const auto& g : cube_symmetries(2)) {
        LabelledCube moved = apply_symmetry(sq, g);
        CHECK(canonical_form(moved) == canonical_form(sq));
        std::multiset<size_t> before, after;
        for (const auto& l : sq.labels) before.insert(l.size());
        for (const auto& l : moved.labels) after.insert(l.size());
        CHECK(before == after);
    }
    CHECK(canonical_form(canonical_form(sq)) == canonical_form(sq));

    int plus = 0, minus = 0;
    for (const auto& g : cube_symmetries(3))
        (symmetry_sign(g) == 1 ? plus : minus)++;
    CHECK(plus == 24);
    CHECK(minus == 24);

    // The null-and-A square is fixed by the reflection swapping its sides;
    // the generic square has no label-preserving symmetry at all.
    auto syms2 = cube_symmetries(2);
    CHECK(is_folded_class(labelled_square("", "A", "", "A"), syms2));
    CHECK(is_folded_class(labelled_square("", "", "", ""), syms2));
    CHECK_FALSE(is_folded_class(labelled_square("a", "b", "", "A"), syms2));
    CHECK_FALSE(is_folded_class(labelled_square("a", "b", "a", "b"), syms2));
}

TEST_CASE("square labellings over one generator form six classes") {
    const std::vector<CubeLabel> pool{"", "a", "A"};
    auto val = [](const CubeLabel& l) { return l == "a" ? 1 : l == "A" ? -1 : 0; };
    int sensible = 0;
    std::set<std::vector<CubeLabel>> classes;
    for (const auto& b : pool)
        for (const auto& r : pool)
            for (const auto& t : pool)
                for (const auto& l : pool) {
                    if (val(b) + val(r) - val(t) - val(l) != 0) continue;
                    ++sensible;
                    classes.insert(canonical_form(labelled_square(b, r, t, l)).labels);
                }
    CHECK(sensible == 19);
    CHECK(classes.size() == 6);

    auto impl = sensible_labellings(Alphabet("a"), 1, 2, z_trivial);
    REQUIRE(impl.size() == 6);
    std::set<std::vector<CubeLabel>> got;
    for (const auto& c : impl) {
        CHECK(canonical_form(c) == c);
        CHECK(z_trivial(square_boundary_word(c.labels[0], c.labels[3], c.labels[1],
                                             c.labels[2])));
        got.insert(c.labels);
    }
    CHECK(got == classes);
    CHECK(got.count({"", "", "", ""}) == 1);
}

TEST_CASE("free-group squares close up only when the boundary cancels") {
    Alphabet f2("ab");
    auto free_wp = [](const Word& w) { return free_reduce(w).empty(); };
    auto pool = reduced_words_upto(f2, 1);
    REQUIRE(pool.size() == 5);
    int sensible = 0;
    std::set<std::vector<CubeLabel>> classes;
    for (const auto& b : pool)
        for (const auto& r : pool)
            for (const auto& t : pool)
                for (const auto& l : pool) {
                    if (!free_reduce(b + r + invert(t) + invert(l)).empty()) continue;
                    ++sensible;
                    classes.insert(canonical_form(labelled_square(b, r, t, l)).labels);
                }
    CHECK(sensible == 53);

    auto impl = sensible_labellings(f2, 1, 2, free_wp);
    CHECK(impl.size() == classes.size());
    for (const auto& c : impl)
        CHECK(free_reduce(square_boundary_word(c.labels[0], c.labels[3], c.labels[1],
                                               c.labels[2]))
                  .empty());
}

TEST_CASE("degenerate labelling classes match Burnside counts") {
    auto deg2 = degenerate_labellings(2);
    CHECK(deg2.size() == 5);
    CHECK(two_label_orbits(2) - 1 == 5);

    bool has_all_null = false;
    for (const auto& c : deg2) {
        int nulls = 0;
        for (const auto& l : c.labels) {
            CHECK((l.empty() || is_point_label(l)));
            if (l.empty()) ++nulls;
        }
        CHECK(nulls >= 1);
        if (nulls == 4) has_all_null = true;
    }
    CHECK(has_all_null);

    auto deg3 = degenerate_labellings(3);
    CHECK(static_cast<long long>(deg3.size()) == two_label_orbits(3) - 1);
    for (const auto& c : deg3) {
        bool any_null = false;
        for (const auto& l : c.labels)
            if (l.empty()) any_null = true;
        CHECK(any_null);
    }

    CHECK_THROWS_AS(degenerate_labellings(4), domain_error);
    CHECK_THROWS_AS(degenerate_labellings(0), domain_error);
    CHECK_THROWS_AS(sensible_labellings(Alphabet("a"), 1, 4, z_trivial), domain_error);
}

TEST_CASE("prefix combing table") {
    auto s = build_structure(fixture_model("z2"));
    auto h = lipschitz_contraction(s, {"aab", "b", ""}, 5);
    CHECK(h.size() == 18);
    CHECK(h.at({"aab", 0}) == "");
    CHECK(h.at({"aab", 1}) == "a");
    CHECK(h.at({"aab", 2}) == "aa");
    CHECK(h.at({"aab", 3}) == "aab");
    CHECK(h.at({"aab", 5}) == "aab");
    CHECK(h.at({"b", 0}) == "");
    CHECK(h.at({"b", 4}) == "b");
    CHECK(h.at({"", 3}) == "");
    CHECK_THROWS_AS(lipschitz_contraction(s, {"ba"}, 2), domain_error);
    CHECK_THROWS_AS(lipschitz_contraction(s, {"aA"}, 2), domain_error);
    CHECK_THROWS_AS(lipschitz_contraction(s, {"a"}, -1), domain_error);
}

TEST_CASE("contraction search combs a square boundary to the basepoint") {
    auto s = build_structure(fixture_model("z2"));

    LabelledCube doubled = labelled_square("a", "a", "aa", "");
    auto res = contraction_search(s, doubled, 2, 10);
    CHECK(res.steps() == 2);
    CHECK(res.vertices.front() == std::vector<Word>{"", "", "", ""});
    CHECK(res.vertices.back() == std::vector<Word>{"", "a", "aa", ""});
    CHECK(res.horizontal.front() == std::vector<CubeLabel>{"*", "*", "*", "*"});
    CHECK(res.horizontal.back() == std::vector<CubeLabel>{"a", "a", "AA", ""});
    for (const auto& ring : res.horizontal)
        for (const auto& lab : ring)
            CHECK(lab.size() <= 4);
    check_cylinder(s, res);

    LabelledCube mixed = labelled_square("a", "b", "ab", "");
    auto res2 = contraction_search(s, mixed, 2, 10);
    CHECK(res2.steps() == 2);
    CHECK(res2.vertices[1] == std::vector<Word>{"", "a", "a", ""});
    check_cylinder(s, res2);

    LabelledCube trivial = labelled_square("", "", "", "");
    auto res3 = contraction_search(s, trivial, 2, 10);
    CHECK(res3.steps() == 0);
    CHECK(res3.vertices == std::vector<std::vector<Word>>{{"", "", "", ""}});
    CHECK(res3.horizontal == std::vector<std::vector<CubeLabel>>{{"", "", "", ""}});
    CHECK(res3.vertical.empty());

    CHECK_THROWS_WITH(contraction_search(s, doubled, 2, 1),
                      Catch::Matchers::ContainsSubstring("budget"));
    CHECK_THROWS_WITH(contraction_search(s, labelled_square("a", "", "", ""), 2, 10),
                      Catch::Matchers::ContainsSubstring("sensible"));
    CHECK_THROWS_AS(contraction_search(s, LabelledCube{1, {"a"}}, 2, 10), domain_error);
    CHECK_THROWS_AS(contraction_search(s, labelled_square("*", "", "", ""), 2, 10),
                    domain_error);
}

TEST_CASE("one-generator skeleton at depth one") {
    auto s = build_structure(fixture_model("z"));
    auto b = build_skeleton(s, 1, 1);

    CHECK(b.complex.count(0) == 1);
    CHECK(b.complex.count(1) == 2);
    // All five letter-bearing square classes over one generator carry a
    // reversing symmetry, so only the degenerate squares survive.
    CHECK(b.complex.count(2) == 5);
    CHECK(b.folded.at(2) == 5);
    CHECK(b.edge_alphabet.letters == "ab");
    CHECK(b.edge_words.at("a") == "");
    CHECK(b.edge_words.at("b") == "a");
    CHECK(count_stratum(b, 2, Stratum::vital) == 0);
    CHECK(count_stratum(b, 2, Stratum::degenerate) == 5);
    CHECK(count_stratum(b, 2, Stratum::inflated) == 0);
    CHECK(count_stratum(b, 2, Stratum::translation) == 0);
    CHECK(count_stratum(b, 1, Stratum::vital) == 2);

    CHECK(to_string(homology(b.complex, 0, Z)) == "Z");
    CHECK(to_string(homology(b.complex, 1, Z)) == "Z");

    auto p = edge_path_presentation(b);
    CHECK(abelian_iso(abelianization(p), parse_abelian_type("Z")));

    auto report = stratum_report(b);
    CHECK(report.find("skeleton k=1 d=1") != std::string::npos);
    CHECK(report.find("dim 2: vital=0 inflated=0 degenerate=5 translation=0 folded=5") !=
          std::string::npos);

    CHECK_THROWS_WITH(build_skeleton(s, 0, 1),
                      Catch::Matchers::ContainsSubstring("fellow traveller"));
    CHECK_THROWS_AS(build_skeleton(s, 1, 0), domain_error);
    CHECK_THROWS_AS(build_skeleton(s, 1, 3), domain_error);
}

TEST_CASE("one-generator skeleton with solid cells kills second homology") {
    auto s = build_structure(fixture_model("z"));
    auto wp = cached_wp(s);

    // Independent square-balance enumeration of all 3^12 cube labellings.
    auto squares = cube_squares(3);
    std::set<std::vector<CubeLabel>> brute;
    long long sensible = 0;
    std::array<int, 12> val{};
    const std::array<CubeLabel, 3> lab{"", "a", "A"};
    const std::array<int, 3> lv{0, 1, -1};
    for (long long code = 0; code < 531441; ++code) {
        long long c = code;
        for (int i = 0; i < 12; ++i) {
            val[i] = static_cast<int>(c % 3);
            c /= 3;
        }
        bool ok = true;
        for (const auto& sq : squares) {
            if (lv[val[sq.bottom]] + lv[val[sq.right]] - lv[val[sq.top]] -
                    lv[val[sq.left]] !=
                0) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        ++sensible;
        LabelledCube cube{3, {}};
        cube.labels.reserve(12);
        for (int i = 0; i < 12; ++i) cube.labels.push_back(lab[val[i]]);
        brute.insert(canonical_form(cube).labels);
    }
    INFO("sensible cubes " << sensible << ", classes " << brute.size());

    auto word3 = sensible_labellings(s.alphabet, 1, 3, wp);
    CHECK(word3.size() == brute.size());

    // Face closure: every face of a generated solid cell is itself a
    // generated square cell of the same magnitude.
    auto word2 = sensible_labellings(s.alphabet, 1, 2, wp);
    std::set<std::vector<CubeLabel>> squares_set;
    for (const auto& c : word2) squares_set.insert(c.labels);
    for (const auto& c : word3)
        for (int axis = 0; axis < 3; ++axis)
            for (int side = 0; side < 2; ++side) {
                auto face = face_restriction(c, axis, side);
                for (const auto& l : face.labels) CHECK(l.size() <= 1);
                CHECK(z_trivial(square_boundary_word(face.labels[0], face.labels[3],
                                                     face.labels[1], face.labels[2])));
                CHECK(squares_set.count(canonical_form(face).labels) == 1);
            }

    // Fold census over the brute-force classes. The all-null cube is realized
    // through the degenerate stratum.
    auto syms3 = cube_symmetries(3);
    int folded_cubes = 0, word_cubes = 0;
    for (const auto& labels : brute) {
        LabelledCube cube{3, labels};
        bool anyword = false;
        for (const auto& l : labels)
            if (!l.empty()) anyword = true;
        if (!anyword) continue;
        (is_folded_class(cube, syms3) ? folded_cubes : word_cubes)++;
    }
    INFO("word cubes kept " << word_cubes << ", folded " << folded_cubes);

    auto b = build_skeleton(s, 1, 2);
    CHECK(b.complex.top_dimension() == 3);
    long long deg3 = two_label_orbits(3) - 1;
    CHECK(b.complex.count(3) == static_cast<int>(word_cubes + deg3));
    CHECK(count_stratum(b, 3, Stratum::vital) == word_cubes);
    CHECK(count_stratum(b, 3, Stratum::degenerate) == static_cast<int>(deg3));
    CHECK(b.folded.at(3) == folded_cubes);
    CHECK(b.folded.at(2) == 5);
    CHECK(count_stratum(b, 2, Stratum::translation) == 0);
    CHECK(to_string(homology(b.complex, 0, Z)) == "Z");
    CHECK(to_string(homology(b.complex, 1, Z)) == "Z");
    CHECK(homology(b.complex, 2, Z).trivial());
}

TEST_CASE("two-generator skeleton at depth one") {
    auto s = build_structure(fixture_model("z2"));
    auto b = build_skeleton(s, 2, 1);

    CHECK(b.complex.count(1) == 9);
    CHECK(b.edge_alphabet.letters == "abcdefghi");
    CHECK(b.edge_words.at("a") == "");
    CHECK(b.edge_words.at("b") == "a");
    CHECK(b.edge_words.at("c") == "b");
    CHECK(b.edge_words.at("d") == "aa");
    CHECK(b.edge_words.at("e") == "ab");
    CHECK(b.edge_words.at("f") == "aB");
    CHECK(b.edge_words.at("g") == "Ab");
    CHECK(b.edge_words.at("h") == "AB");
    CHECK(b.edge_words.at("i") == "bb");
    CHECK(count_stratum(b, 1, Stratum::vital) == 3);
    CHECK(count_stratum(b, 1, Stratum::inflated) == 6);

    // Independent enumeration over the 17-word label pool, split by the fold
    // census.
    auto pool = reduced_words_upto(s.alphabet, 2);
    REQUIRE(pool.size() == 17);
    auto syms2 = cube_symmetries(2);
    std::set<std::vector<CubeLabel>> classes;
    for (const auto& bb : pool)
        for (const auto& r : pool)
            for (const auto& t : pool)
                for (const auto& l : pool) {
                    if (!z2_trivial(free_reduce(bb + r + invert(t) + invert(l))))
                        continue;
                    classes.insert(canonical_form(labelled_square(bb, r, t, l)).labels);
                }
    int folded_squares = 0, word_squares = 0;
    for (const auto& labels : classes) {
        bool anyword = false;
        for (const auto& l : labels)
            if (!l.empty()) anyword = true;
        if (!anyword) continue;
        (is_folded_class({2, labels}, syms2) ? folded_squares : word_squares)++;
    }
    INFO("square classes " << classes.size() << ", kept " << word_squares);
    CHECK(count_stratum(b, 2, Stratum::vital) == word_squares);
    CHECK(b.folded.at(2) == folded_squares);
    CHECK(count_stratum(b, 2, Stratum::inflated) == 0);
    CHECK(count_stratum(b, 2, Stratum::degenerate) == 5);
    CHECK(count_stratum(b, 2, Stratum::translation) == 6);
    CHECK(count_stratum(b, 2, Stratum::translation) ==
          count_stratum(b, 1, Stratum::inflated));

    // Each translation square hits its long edge once and otherwise only
    // letter edges.
    for (const Cell& c : b.complex.cells) {
        if (c.dim != 2 || b.strata.at(c.id) != Stratum::translation) continue;
        int long_edges = 0;
        for (const auto& [edge, coeff] : c.boundary) {
            if (b.edge_words.at(edge).size() >= 2) {
                ++long_edges;
                CHECK((coeff == 1 || coeff == -1));
            } else {
                CHECK(b.strata.at(edge) == Stratum::vital);
            }
        }
        CHECK(long_edges == 1);
    }

    CHECK(to_string(homology(b.complex, 0, Z)) == "Z");
    CHECK(to_string(homology(b.complex, 1, Z)) == "Z^2");

    auto p = edge_path_presentation(b);
    auto target = make_presentation(Alphabet("ab"), {"abAB"});
    CHECK(abelian_iso(abelianization(p), abelianization(target)));

    CHECK_THROWS_WITH(build_skeleton(s, 3, 1),
                      Catch::Matchers::ContainsSubstring("1-cell"));
}

TEST_CASE("restricted label pools build under-approximations") {
    auto s = build_structure(fixture_model("z2"));
    auto b = build_skeleton(s, 2, 1, std::vector<Word>{"a", "b"});
    CHECK_FALSE(b.faithful);
    CHECK(b.complex.count(1) == 3);
    CHECK(to_string(homology(b.complex, 1, Z)) == "Z^2");
    CHECK(stratum_report(b).find("under-approximation") != std::string::npos);

    auto full = build_skeleton(s, 2, 1);
    CHECK(stratum_report(full).find("under-approximation") == std::string::npos);

    CHECK_THROWS_WITH(build_skeleton(s, 2, 2, std::vector<Word>{"aaa"}),
                      Catch::Matchers::ContainsSubstring("translation 3-cell"));
    CHECK_THROWS_AS(build_skeleton(s, 2, 1, std::vector<Word>{"aA"}), domain_error);
    CHECK_THROWS_AS(build_skeleton(s, 2, 1, std::vector<Word>{"aaa"}), domain_error);

    auto z = build_structure(fixture_model("z"));
    auto rz = build_skeleton(z, 1, 1, std::vector<Word>{"a"});
    CHECK_FALSE(rz.faithful);
    CHECK(rz.complex.count(2) == 5);
    CHECK(to_string(homology(rz.complex, 1, Z)) == "Z");
}
