#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gt/automatic.hpp"
#include "gt/center.hpp"
#include "gt/cellcomplex.hpp"
#include "gt/extensions.hpp"
#include "gt/fsa.hpp"
#include "gt/isopipeline.hpp"
#include "gt/kbuilder.hpp"
#include "gt/presentation.hpp"
#include "gt/translation.hpp"

namespace {

using namespace gt;

const char* usage_text = R"(usage: gt <command> [flags]

commands:
  wp          --aut FILE --word WORD
                normal form and triviality of a word
  center      --aut FILE [--K INT] [--out FILE]
                center generators, presentation, and abelian type
  homology    --cw FILE --dim INT --coeff TYPE
                cellular homology of a complex
  cohomology  --cw FILE --dim INT --coeff TYPE
                cellular cohomology of a complex
  build-k     --aut FILE -k INT -d INT [--restrict-labels FILE] --out FILE
                geometric model skeleton; writes FILE and FILE.strata
  extensions  --cw FILE --coeff TYPE --limit INT --out DIR
                central extension classes, one presentation file per class
  iso         --p1 FILE --p2 FILE [--budget INT] [--max-len INT] [--depth INT]
                search for mutually inverse homomorphisms
  thmA        --p1 FILE --aut1 FILE --p2 FILE --aut2 FILE --coeff TYPE
              [--qcw FILE] [--K INT] [--budget INT] [--max-len INT] [--depth INT]
                central-decomposition comparison
  tau         --aut FILE --word WORD -M INT
                translation number upper bounds over powers 1..M
  growth      --fsa FILE
                polynomial degree or exponential growth of a language
  verify-aut  --aut FILE --pres FILE
                structure axioms checked against a presentation

  --version, --help

coefficient TYPE strings: 0, Z, Z/2, Z^2+Z/6, ...
exit codes: 0 success, 1 domain error, 2 malformed input
every report ends with a single line "RESULT: <summary>"
)";

using Flags = std::map<std::string, std::string>;

Flags parse_flags(const std::vector<std::string>& args, size_t from,
                  const std::set<std::string>& known) {
    Flags out;
    for (size_t i = from; i < args.size(); ++i) {
        const std::string& f = args[i];
        if (!known.count(f)) throw parse_error("unknown flag '" + f + "'");
        if (out.count(f)) throw parse_error("duplicate flag '" + f + "'");
        if (i + 1 >= args.size()) throw parse_error("flag '" + f + "' needs a value");
        out[f] = args[++i];
    }
    return out;
}

const std::string& need(const Flags& f, const std::string& flag) {
    auto it = f.find(flag);
    if (it == f.end()) throw parse_error("missing required flag '" + flag + "'");
    return it->second;
}

Presentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open");
    return parse_presentation(in, path);
}

Fsa load_fsa(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open");
    return parse_fsa(in, path);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw domain_error(path + ": cannot write");
    out << text;
}

std::string cells_by_dim(const CellComplex& c) {
    std::map<int, int> counts;
    for (const Cell& cell : c.cells) counts[cell.dim]++;
    std::ostringstream os;
    os << c.cells.size() << " (";
    bool first = true;
    for (const auto& [dim, n] : counts) {
        if (!first) os << ", ";
        first = false;
        os << "dim " << dim << ": " << n;
    }
    os << ")";
    return os.str();
}

void print_images(std::ostream& os, const std::map<char, Word>& images) {
    for (const auto& [c, w] : images)
        os << "  " << c << " -> " << word_to_text(w) << "\n";
}

int cmd_wp(const Flags& f) {
    AutomaticStructure s = load_automatic(need(f, "--aut"));
    Word w = word_from_text(s.alphabet, need(f, "--word"));
    Word nf = normal_form(s, w);
    std::cout << "word: " << word_to_text(w) << "\n"
              << "normal form: " << word_to_text(nf) << "\n"
              << "trivial: " << (nf.empty() ? "yes" : "no") << "\n"
              << "RESULT: " << word_to_text(nf) << "\n";
    return 0;
}

int cmd_center(const Flags& f) {
    AutomaticStructure s = load_automatic(need(f, "--aut"));
    int K = f.count("--K") ? parse_int(f.at("--K"), "--K") : 2;
    if (K < 1) throw domain_error("quasiconvexity parameter must be positive");
    CenterReport r = center_report(s, K);
    std::ostringstream os;
    os << "fellow traveller constant: " << r.k << "\n"
       << "quasiconvexity parameter: " << r.K << "\n"
       << "center generators: " << r.generators.size() << "\n";
    for (size_t i = 0; i < r.generators.size(); ++i)
        os << "  z" << i + 1 << " = " << word_to_text(r.generators[i]) << "\n";
    os << "relators: " << r.presentation.relators.size() << "\n";
    for (const auto& rel : r.presentation.relators) {
        os << " ";
        for (int g : rel) os << " z" << g + 1;
        os << "\n";
    }
    os << "abelian type: " << r.type << "\n"
       << "RESULT: " << r.type << "\n";
    std::cout << os.str();
    if (f.count("--out")) write_text_file(f.at("--out"), os.str());
    return 0;
}

int cmd_homology(const Flags& f, bool dual) {
    CellComplex c = load_complex(need(f, "--cw"));
    int n = parse_int(need(f, "--dim"), "--dim");
    AbelianType coeff = parse_abelian_type(need(f, "--coeff"));
    AbelianType h = dual ? cohomology(c, n, coeff) : homology(c, n, coeff);
    std::cout << "cells: " << cells_by_dim(c) << "\n"
              << "coefficients: " << coeff << "\n"
              << (dual ? "H^" : "H_") << n << " = " << h << "\n"
              << "RESULT: " << h << "\n";
    return 0;
}

int cmd_build_k(const Flags& f) {
    AutomaticStructure s = load_automatic(need(f, "--aut"));
    int k = parse_int(need(f, "-k"), "-k");
    int d = parse_int(need(f, "-d"), "-d");
    std::optional<std::vector<Word>> labels;
    if (f.count("--restrict-labels")) {
        const std::string& path = f.at("--restrict-labels");
        std::ifstream in(path);
        if (!in) throw parse_error(path + ": cannot open");
        LineReader lr(in, path);
        std::vector<Word> ws;
        std::string line;
        while (lr.next(line))
            for (const std::string& tok : split_tokens(line))
                ws.push_back(word_from_text(s.alphabet, tok));
        labels = std::move(ws);
    }
    SkeletonBuild b = build_skeleton(s, k, d, labels);
    const std::string& out = need(f, "--out");
    {
        std::ofstream os(out);
        if (!os) throw domain_error(out + ": cannot write");
        print_complex(os, b.complex);
    }
    write_text_file(out + ".strata", stratum_report(b));
    int top = 0;
    for (const Cell& cell : b.complex.cells) top = std::max(top, cell.dim);
    std::cout << "fellow traveller constant: " << fellow_traveller_constant(s).k << "\n"
              << "k: " << k << "\n"
              << "d: " << d << "\n"
              << "cells: " << cells_by_dim(b.complex) << "\n"
              << "faithful: " << (b.faithful ? "yes" : "no") << "\n"
              << "wrote: " << out << "\n"
              << "wrote: " << out << ".strata\n"
              << "RESULT: " << top << "-skeleton, " << b.complex.cells.size()
              << " cells\n";
    return 0;
}

int cmd_extensions(const Flags& f) {
    CellComplex c = load_complex(need(f, "--cw"));
    AbelianType coeff = parse_abelian_type(need(f, "--coeff"));
    long long limit = parse_ll(need(f, "--limit"), "--limit");
    const std::string& dir = need(f, "--out");
    auto en = h2_classes(c, coeff);
    auto classes = enumerate_extensions(c, coeff, limit);
    std::filesystem::create_directories(dir);
    std::ostringstream index;
    std::cout << "coefficients: " << coeff << "\n"
              << "second cohomology: " << en.h2_type() << "\n";
    if (en.finite())
        std::cout << "classes: " << en.class_count() << "\n";
    else
        std::cout << "classes: infinite family\n";
    for (const auto& e : classes) {
        std::string name = "class_" + std::to_string(e.class_index) + ".pres";
        std::ofstream os(dir + "/" + name);
        if (!os) throw domain_error(dir + "/" + name + ": cannot write");
        print_presentation(os, e.presentation);
        std::ostringstream coords;
        coords << "(";
        for (size_t i = 0; i < e.class_coords.size(); ++i) {
            if (i) coords << ", ";
            coords << e.class_coords[i];
        }
        coords << ")";
        index << coords.str() << " -> " << name << "\n";
        std::cout << "  class " << e.class_index << ": coords " << coords.str()
                  << ", abelianization " << abelianization(e.presentation) << " -> "
                  << name << "\n";
    }
    write_text_file(dir + "/index.txt", index.str());
    std::cout << "wrote: " << dir << "/index.txt\n"
              << "RESULT: " << classes.size()
              << (classes.size() == 1 ? " class\n" : " classes\n");
    return 0;
}

SearchBudget budget_from(const Flags& f) {
    SearchBudget b;
    if (f.count("--budget")) b.step_limit = parse_ll(f.at("--budget"), "--budget");
    if (f.count("--max-len")) b.word_length_limit = parse_int(f.at("--max-len"), "--max-len");
    if (f.count("--depth")) b.conjugate_depth_limit = parse_int(f.at("--depth"), "--depth");
    return b;
}

void print_budget(const SearchBudget& b) {
    std::cout << "budget: " << b.step_limit << " steps, image length <= "
              << b.word_length_limit << ", conjugate depth <= "
              << b.conjugate_depth_limit << "\n";
}

int cmd_iso(const Flags& f) {
    Presentation p1 = load_presentation(need(f, "--p1"));
    Presentation p2 = load_presentation(need(f, "--p2"));
    SearchBudget b = budget_from(f);
    print_budget(b);
    auto pair = find_isomorphism(p1, p2, {}, {}, b);
    if (pair) {
        std::cout << "forward:\n";
        print_images(std::cout, pair->first.images);
        std::cout << "inverse:\n";
        print_images(std::cout, pair->second.images);
        std::cout << "RESULT: isomorphic\n";
    } else {
        std::cout << "no witness within budget; this does not prove non-isomorphism\n"
                  << "RESULT: undetermined\n";
    }
    return 0;
}

int cmd_thma(const Flags& f) {
    Presentation p1 = load_presentation(need(f, "--p1"));
    Presentation p2 = load_presentation(need(f, "--p2"));
    AutomaticStructure a1 = load_automatic(need(f, "--aut1"));
    AutomaticStructure a2 = load_automatic(need(f, "--aut2"));
    AbelianType coeff = parse_abelian_type(need(f, "--coeff"));
    std::optional<CellComplex> q;
    if (f.count("--qcw")) q = load_complex(f.at("--qcw"));
    int K = f.count("--K") ? parse_int(f.at("--K"), "--K") : 2;
    if (K < 1) throw domain_error("quasiconvexity parameter must be positive");
    SearchBudget b = budget_from(f);
    AbelianType z1 = center_type(a1, K);
    if (!abelian_iso(z1, coeff))
        throw domain_error("coefficient type " + to_string(coeff) +
                           " does not match the computed center " + to_string(z1));
    // Quotient decider: abelianization comparison, complete whenever the
    // central quotient is abelian.
    auto q_oracle = [](const Presentation& qa, const Presentation& qb) {
        return abelian_iso(abelianization(qa), abelianization(qb));
    };
    std::cout << "coefficients: " << coeff << "\n";
    print_budget(b);
    CompareResult r = theoremA_compare(p1, p2, a1, a2, q_oracle, q, b, K);
    switch (r.status) {
        case CompareStatus::isomorphic:
            std::cout << "matched extension class: " << r.matched_class << "\n"
                      << "forward:\n";
            print_images(std::cout, r.witness->first.images);
            std::cout << "inverse:\n";
            print_images(std::cout, r.witness->second.images);
            std::cout << "RESULT: isomorphic (class " << r.matched_class << ")\n";
            break;
        case CompareStatus::not_isomorphic:
            std::cout << "reason: " << r.reason << "\n"
                      << "RESULT: not isomorphic (" << r.reason << ")\n";
            break;
        case CompareStatus::exhausted:
            std::cout << "search exhausted; this does not prove non-isomorphism\n"
                      << "RESULT: undetermined\n";
            break;
    }
    return 0;
}

int cmd_tau(const Flags& f) {
    AutomaticStructure s = load_automatic(need(f, "--aut"));
    Word w = word_from_text(s.alphabet, need(f, "--word"));
    int M = parse_int(need(f, "-M"), "-M");
    TranslationEstimate t = translation_estimate(s, w, M);
    std::cout << "word: " << word_to_text(w) << "\n";
    for (int m = 1; m <= M; ++m) {
        Rational d = t.upper_bounds[m - 1] * m;
        std::cout << "  m=" << m << ": distance " << d << ", bound "
                  << t.upper_bounds[m - 1] << "\n";
    }
    std::cout << "infimum of d(1, g^m)/m over m <= " << M << ": " << t.inf_bound
              << "\n"
              << "RESULT: " << t.inf_bound << "\n";
    return 0;
}

int cmd_growth(const Flags& f) {
    Fsa m = load_fsa(need(f, "--fsa"));
    Growth g = growth_degree(m);
    auto counts = length_counts(m, 8);
    std::cout << "alphabet:";
    for (const std::string& sym : m.alphabet) std::cout << " " << sym;
    std::cout << "\nstates: " << m.state_count << "\nwords by length 0..8:";
    for (auto n : counts) std::cout << " " << n;
    std::cout << "\n";
    if (g.polynomial)
        std::cout << "growth: polynomial degree " << g.degree << "\n"
                  << "RESULT: polynomial degree " << g.degree << "\n";
    else
        std::cout << "growth: exponential\n"
                  << "RESULT: exponential\n";
    return 0;
}

int cmd_verify_aut(const Flags& f) {
    AutomaticStructure s = load_automatic(need(f, "--aut"));
    Presentation p = load_presentation(need(f, "--pres"));
    VerifyReport r = verify_structure(s, p);
    auto line = [](const char* what, bool ok) {
        std::cout << what << ": " << (ok ? "ok" : "FAIL") << "\n";
    };
    line("multiplier projections stay in the language", r.projections_ok);
    line("equality machine is the identity relation", r.equality_ok);
    line("relators act trivially", r.relators_ok);
    line("normal forms are unique", r.uniqueness_ok);
    if (!r.messages.empty()) {
        std::cout << "messages:\n";
        for (const std::string& msg : r.messages) std::cout << "  - " << msg << "\n";
    }
    std::cout << "RESULT: " << (r.pass() ? "pass" : "fail") << "\n";
    return 0;
}

struct CommandSpec {
    std::set<std::string> flags;
    int (*run)(const Flags&);
};

int cmd_homology_z(const Flags& f) { return cmd_homology(f, false); }
int cmd_cohomology_z(const Flags& f) { return cmd_homology(f, true); }

const std::map<std::string, CommandSpec>& command_table() {
    static const std::map<std::string, CommandSpec> table{
        {"wp", {{"--aut", "--word"}, cmd_wp}},
        {"center", {{"--aut", "--K", "--out"}, cmd_center}},
        {"homology", {{"--cw", "--dim", "--coeff"}, cmd_homology_z}},
        {"cohomology", {{"--cw", "--dim", "--coeff"}, cmd_cohomology_z}},
        {"build-k", {{"--aut", "-k", "-d", "--restrict-labels", "--out"}, cmd_build_k}},
        {"extensions", {{"--cw", "--coeff", "--limit", "--out"}, cmd_extensions}},
        {"iso", {{"--p1", "--p2", "--budget", "--max-len", "--depth"}, cmd_iso}},
        {"thmA",
         {{"--p1", "--aut1", "--p2", "--aut2", "--coeff", "--qcw", "--K", "--budget",
           "--max-len", "--depth"},
          cmd_thma}},
        {"tau", {{"--aut", "--word", "-M"}, cmd_tau}},
        {"growth", {{"--fsa"}, cmd_growth}},
        {"verify-aut", {{"--aut", "--pres"}, cmd_verify_aut}},
    };
    return table;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) {
        std::cerr << usage_text;
        return 2;
    }
    const std::string& cmd = args[0];
    if (cmd == "--version") {
        std::cout << "gt 0.1.0\n";
        return 0;
    }
    if (cmd == "--help" || cmd == "help") {
        std::cout << usage_text;
        return 0;
    }
    try {
        auto it = command_table().find(cmd);
        if (it == command_table().end())
            throw parse_error("unknown command '" + cmd + "'");
        Flags f = parse_flags(args, 1, it->second.flags);
        return it->second.run(f);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
