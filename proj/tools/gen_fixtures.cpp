#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "gt/cellcomplex.hpp"
#include "gt/fixtures.hpp"
#include "gt/presentation.hpp"

using namespace gt;

namespace {

// a* b* over {a, b}: quadratic growth
Fsa astar_bstar() {
    Fsa m = make_fsa({"a", "b"}, 2, 0, {0, 1});
    add_transition(m, 0, "a", 0);
    add_transition(m, 0, "b", 1);
    add_transition(m, 1, "b", 1);
    return m;
}

// all words over {a, b}: exponential growth
Fsa all_ab() {
    Fsa m = make_fsa({"a", "b"}, 1, 0, {0});
    add_transition(m, 0, "a", 0);
    add_transition(m, 0, "b", 0);
    return m;
}

CellComplex torus() {
    return make_complex({{"v", 0, {}, {}},
                         {"a", 1, {}, {}},
                         {"b", 1, {}, {}},
                         {"f", 2, {}, "abAB"}});
}

CellComplex wedge() {
    return make_complex({{"v", 0, {}, {}}, {"a", 1, {}, {}}, {"b", 1, {}, {}}});
}

CellComplex sphere() {
    return make_complex({{"u", 0, {}, {}},
                         {"v", 0, {}, {}},
                         {"w", 0, {}, {}},
                         {"a", 1, {{"u", -1}, {"v", 1}}, {}},
                         {"b", 1, {{"v", -1}, {"w", 1}}, {}},
                         {"c", 1, {{"w", -1}, {"u", 1}}, {}},
                         {"top", 2, {}, "abc"},
                         {"bot", 2, {}, "CBA"}});
}

CellComplex point() { return make_complex({{"v", 0, {}, {}}}); }

}  // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir);
    int rc = 0;
    auto write = [&](const std::string& name, auto&& print) {
        std::ofstream os(dir + "/" + name);
        if (!os) {
            std::cerr << "cannot write " << dir << "/" << name << "\n";
            rc = 1;
            return;
        }
        print(os);
        std::cout << "wrote " << dir << "/" << name << "\n";
    };

    for (const std::string name : {"z", "z2", "z3", "f2", "dinfty", "zxf2"})
        write(name + ".aut", [&](std::ostream& os) {
            print_automatic(os, build_structure(fixture_model(name)));
        });

    write("torus.cw", [](std::ostream& os) { print_complex(os, torus()); });
    write("wedge.cw", [](std::ostream& os) { print_complex(os, wedge()); });
    write("sphere.cw", [](std::ostream& os) { print_complex(os, sphere()); });
    write("point.cw", [](std::ostream& os) { print_complex(os, point()); });

    // The accepted language of the z structure is a* plus A A*, the running
    // example of a rational language with linear growth.
    write("zrat.fsa", [](std::ostream& os) {
        print_fsa(os, build_structure(fixture_model("z")).acceptor);
    });
    write("astarbstar.fsa", [](std::ostream& os) { print_fsa(os, astar_bstar()); });
    write("allstar.fsa", [](std::ostream& os) { print_fsa(os, all_ab()); });

    auto pres = [&](const std::string& name, const std::string& gens,
                    std::vector<Word> rels) {
        write(name, [&](std::ostream& os) {
            print_presentation(os, make_presentation(Alphabet(gens), std::move(rels)));
        });
    };
    pres("z.pres", "a", {});
    pres("z2.pres", "ab", {"abAB"});
    pres("z2_renamed.pres", "xy", {"xyXY"});
    pres("z3.pres", "abc", {"abAB", "acAC", "bcBC"});
    pres("z3_perm.pres", "abc", {"caCA", "cbCB", "baBA"});
    pres("f2.pres", "ab", {});
    pres("dinfty.pres", "ab", {"aa", "bb"});
    pres("zxf2.pres", "abc", {"abAB", "acAC"});

    return rc;
}
