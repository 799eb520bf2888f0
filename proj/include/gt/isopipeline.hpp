#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gt/abelian.hpp"
#include "gt/automatic.hpp"
#include "gt/center.hpp"
#include "gt/extensions.hpp"
#include "gt/presentation.hpp"
#include "gt/words.hpp"

namespace gt {

// Word-problem oracle: returns true when the word is trivial in the group.
// A default-constructed (empty) function means no oracle is available.
using WordOracle = std::function<bool(const Word&)>;

enum class HomStatus { unverified, verified };

struct HomCandidate {
    std::map<char, Word> images;  // source generator -> image word in the target
    HomStatus status = HomStatus::unverified;
};

// Caps for the semidecision searches. Steps are spent on image tuples, oracle
// calls and conjugate-product growth; the word-length limit bounds both image
// words and conjugators.
struct SearchBudget {
    long long step_limit = 10000;
    int word_length_limit = 2;
    int conjugate_depth_limit = 2;
};

inline void validate(const SearchBudget& b) {
    if (b.step_limit < 1 || b.word_length_limit < 1 || b.conjugate_depth_limit < 1)
        throw domain_error("search budget fields must all be positive");
}

// Apply a generator assignment letterwise; inverse letters map to inverted
// images.
inline Word apply_images(const Word& w, const std::map<char, Word>& images) {
    Word out;
    for (char c : w) {
        if (is_generator_char(c)) out += images.at(c);
        else out += invert(images.at(inverse_letter(c)));
    }
    return free_reduce(out);
}

namespace detail {

struct BudgetTracker {
    long long remaining = 0;
    bool exhausted = false;

    bool spend() {
        if (remaining <= 0) {
            exhausted = true;
            return false;
        }
        --remaining;
        return true;
    }
};

// Certifies words trivial in a presented group: through the oracle when one
// is supplied, otherwise by membership in the set of products of conjugated
// relators, grown one depth layer at a time under the shared step budget.
// Certification is sound but within budget only semicomplete.
class TrivialityCertifier {
  public:
    TrivialityCertifier(const Presentation& p, WordOracle oracle,
                        const SearchBudget& b, std::shared_ptr<BudgetTracker> steps)
        : oracle_(std::move(oracle)),
          depth_limit_(b.conjugate_depth_limit),
          steps_(std::move(steps)) {
        if (oracle_) return;
        for (const Word& x : reduced_words_upto(p.alphabet, b.word_length_limit))
            for (const Word& r : p.relators) {
                factors_.push_back(free_reduce(x + r + invert(x)));
                factors_.push_back(free_reduce(x + invert(r) + invert(x)));
            }
        products_.insert(Word{});
        frontier_.push_back(Word{});
    }

    bool trivial(const Word& w) {
        Word red = free_reduce(w);
        if (red.empty()) return true;
        if (oracle_) {
            if (!steps_->spend()) return false;
            return oracle_(red);
        }
        if (products_.count(red)) return true;
        while (depth_ < depth_limit_ && !frontier_.empty() && !steps_->exhausted) {
            grow_layer();
            if (products_.count(red)) return true;
        }
        return false;
    }

  private:
    void grow_layer() {
        std::vector<Word> next;
        for (const auto& s : frontier_)
            for (const auto& f : factors_) {
                if (!steps_->spend()) {
                    frontier_ = std::move(next);
                    return;
                }
                Word t = free_reduce(s + f);
                if (products_.insert(t).second) next.push_back(std::move(t));
            }
        frontier_ = std::move(next);
        ++depth_;
    }

    WordOracle oracle_;
    int depth_limit_;
    int depth_ = 0;
    std::shared_ptr<BudgetTracker> steps_;
    std::vector<Word> factors_;
    std::set<Word> products_;
    std::vector<Word> frontier_;
};

}  // namespace detail

// Stream of verified homomorphisms from p1 to the group of p2, one per image
// tuple that certifies. Tuples are ordered by total image length, then
// componentwise shortlex; within budget the stream is deterministic.
class HomomorphismStream {
  public:
    HomomorphismStream(Presentation p1, Presentation p2, WordOracle wp2,
                       const SearchBudget& b,
                       std::shared_ptr<detail::BudgetTracker> shared = nullptr)
        : p1_(std::move(p1)), p2_(std::move(p2)) {
        validate(b);
        tracker_ = shared ? std::move(shared)
                          : std::make_shared<detail::BudgetTracker>(
                                detail::BudgetTracker{b.step_limit, false});
        cert_ = std::make_unique<detail::TrivialityCertifier>(p2_, std::move(wp2), b,
                                                              tracker_);
        for (const Word& w : reduced_words_upto(p2_.alphabet, b.word_length_limit)) {
            if (w.size() >= by_len_.size()) by_len_.resize(w.size() + 1);
            by_len_[w.size()].push_back(w);
        }
        k_ = static_cast<int>(p1_.alphabet.letters.size());
        max_len_ = static_cast<int>(by_len_.size()) - 1;
        load_total();
    }

    std::optional<HomCandidate> next() {
        for (;;) {
            if (done_) return std::nullopt;
            if (tracker_->exhausted) {
                done_ = true;
                exhausted_ = true;
                return std::nullopt;
            }
            if (pos_ >= tuples_.size()) {
                if (total_ >= k_ * max_len_) {
                    done_ = true;
                    return std::nullopt;
                }
                ++total_;
                load_total();
                continue;
            }
            const auto& tuple = tuples_[pos_++];
            HomCandidate cand;
            for (int i = 0; i < k_; ++i) cand.images[p1_.alphabet.letters[i]] = tuple[i];
            if (verified(cand)) {
                cand.status = HomStatus::verified;
                return cand;
            }
        }
    }

    // True when the stream ended by running out of budget rather than tuples.
    bool exhausted() const { return exhausted_; }

    detail::TrivialityCertifier& certifier() { return *cert_; }
    const Presentation& source() const { return p1_; }
    const Presentation& target() const { return p2_; }

  private:
    bool verified(const HomCandidate& cand) {
        for (const Word& r : p1_.relators)
            if (!cert_->trivial(apply_images(r, cand.images))) return false;
        return true;
    }

    void load_total() {
        tuples_.clear();
        pos_ = 0;
        if (k_ == 0) {
            if (total_ == 0) tuples_.push_back({});
            return;
        }
        std::vector<Word> cur(static_cast<size_t>(k_));
        fill_slot(0, total_, cur);
    }

    void fill_slot(int slot, int rem, std::vector<Word>& cur) {
        if (tracker_->exhausted) return;
        if (slot == k_ - 1) {
            if (rem > max_len_) return;
            for (const Word& w : by_len_[static_cast<size_t>(rem)]) {
                if (!tracker_->spend()) return;
                cur[static_cast<size_t>(slot)] = w;
                tuples_.push_back(cur);
            }
            return;
        }
        int lo = std::max(0, rem - (k_ - 1 - slot) * max_len_);
        for (int len = lo; len <= std::min(max_len_, rem); ++len)
            for (const Word& w : by_len_[static_cast<size_t>(len)]) {
                cur[static_cast<size_t>(slot)] = w;
                fill_slot(slot + 1, rem - len, cur);
                if (tracker_->exhausted) return;
            }
    }

    Presentation p1_, p2_;
    std::shared_ptr<detail::BudgetTracker> tracker_;
    std::unique_ptr<detail::TrivialityCertifier> cert_;
    std::vector<std::vector<Word>> by_len_;
    int k_ = 0;
    int max_len_ = 0;
    int total_ = 0;
    std::vector<std::vector<Word>> tuples_;
    size_t pos_ = 0;
    bool done_ = false;
    bool exhausted_ = false;
};

inline HomomorphismStream enumerate_homomorphisms(const Presentation& p1,
                                                  const Presentation& p2,
                                                  WordOracle wp2,
                                                  const SearchBudget& b) {
    return HomomorphismStream(p1, p2, std::move(wp2), b);
}

// Search for a mutually inverse pair of verified homomorphisms. Candidates
// from both directions are paired as they appear; an empty result means the
// budget or the tuple space ran out, never that no isomorphism exists.
inline std::optional<std::pair<HomCandidate, HomCandidate>> find_isomorphism(
    const Presentation& p1, const Presentation& p2, WordOracle wp1, WordOracle wp2,
    const SearchBudget& b) {
    validate(b);
    auto tracker = std::make_shared<detail::BudgetTracker>(
        detail::BudgetTracker{b.step_limit, false});
    HomomorphismStream fwd(p1, p2, std::move(wp2), b, tracker);
    HomomorphismStream bwd(p2, p1, std::move(wp1), b, tracker);

    auto row_lattice = [](const Presentation& p) {
        RowLattice lat(static_cast<int>(p.alphabet.letters.size()));
        IntMatrix m = exponent_matrix(p);
        for (int i = 0; i < m.rows; ++i) {
            std::vector<Int> row(static_cast<size_t>(m.cols));
            for (int j = 0; j < m.cols; ++j) row[static_cast<size_t>(j)] = m.at(i, j);
            lat.add(std::move(row));
        }
        return lat;
    };
    RowLattice lat1 = row_lattice(p1), lat2 = row_lattice(p2);

    auto exps = [](const Word& w, const Alphabet& alph) {
        std::vector<Int> v(alph.letters.size(), 0);
        for (char c : w) {
            bool up = is_inverse_char(c);
            char low = up ? inverse_letter(c) : c;
            v[alph.letters.find(low)] += up ? -1 : 1;
        }
        return v;
    };

    auto mutually_inverse = [&](const HomCandidate& h, const HomCandidate& g) {
        std::vector<Word> dev1, dev2;
        for (char a : p1.alphabet.letters) {
            Word round = apply_images(apply_images(Word(1, a), h.images), g.images);
            dev1.push_back(free_reduce(round + inverse_letter(a)));
        }
        for (char x : p2.alphabet.letters) {
            Word round = apply_images(apply_images(Word(1, x), g.images), h.images);
            dev2.push_back(free_reduce(round + inverse_letter(x)));
        }
        // The exponent screen costs no budget and rejects a pair only when
        // the composite provably moves a generator in the abelianization.
        for (const Word& d : dev1)
            if (!d.empty() && !lat1.contains(exps(d, p1.alphabet))) return false;
        for (const Word& d : dev2)
            if (!d.empty() && !lat2.contains(exps(d, p2.alphabet))) return false;
        for (const Word& d : dev1)
            if (!bwd.certifier().trivial(d)) return false;
        for (const Word& d : dev2)
            if (!fwd.certifier().trivial(d)) return false;
        return true;
    };

    std::vector<HomCandidate> seen_fwd, seen_bwd;
    bool fwd_done = false, bwd_done = false;
    while (!fwd_done || !bwd_done) {
        if (!fwd_done) {
            auto h = fwd.next();
            if (!h) fwd_done = true;
            else {
                for (const auto& g : seen_bwd)
                    if (mutually_inverse(*h, g)) return std::make_pair(*h, g);
                seen_fwd.push_back(std::move(*h));
            }
        }
        if (!bwd_done) {
            auto g = bwd.next();
            if (!g) bwd_done = true;
            else {
                for (const auto& h : seen_fwd)
                    if (mutually_inverse(h, *g)) return std::make_pair(h, *g);
                seen_bwd.push_back(std::move(*g));
            }
        }
    }
    return std::nullopt;
}

// Identify p against an enumeration of candidate presentations by a
// triangular schedule: round r retries candidates 0..r-1, giving candidate i
// budget scaled by r - i, so every candidate eventually receives arbitrarily
// strong searches. Returns the index of the first success in schedule order;
// diverges when p matches no candidate, unless a round cap is set.
inline long long diagonal_identify(
    const Presentation& p, const std::function<Presentation(long long)>& candidates,
    const SearchBudget& per_round, WordOracle wp = {}, long long max_rounds = 0) {
    validate(per_round);
    for (long long r = 1;; ++r) {
        if (max_rounds > 0 && r > max_rounds)
            throw domain_error("identification exceeded the round cap of " +
                               std::to_string(max_rounds));
        for (long long i = 0; i < r; ++i) {
            long long scale = r - i;
            SearchBudget scaled{per_round.step_limit * scale,
                                per_round.word_length_limit + static_cast<int>(scale) -
                                    1,
                                per_round.conjugate_depth_limit};
            if (find_isomorphism(p, candidates(i), wp, {}, scaled)) return i;
        }
    }
}

enum class CompareStatus { isomorphic, not_isomorphic, exhausted };

struct CompareResult {
    CompareStatus status = CompareStatus::exhausted;
    std::string reason;  // set for not_isomorphic
    std::optional<std::pair<HomCandidate, HomCandidate>> witness;  // for isomorphic
    long long matched_class = -1;
};

// Central-decomposition comparison: centers first, then the central quotients
// through the supplied decider, then identification of both groups against
// the enumerated central extensions of the quotient. Isomorphic is only
// reported with a mutually inverse witness between p1 and p2; ambiguous
// outcomes surface as exhausted.
inline CompareResult theoremA_compare(
    const Presentation& p1, const Presentation& p2, const AutomaticStructure& aut1,
    const AutomaticStructure& aut2,
    const std::function<bool(const Presentation&, const Presentation&)>& q_oracle,
    const std::optional<CellComplex>& q_skeleton, const SearchBudget& b,
    int quasiconvexity_K = 2) {
    validate(b);
    CompareResult out;

    AbelianType z1 = center_type(aut1, quasiconvexity_K);
    AbelianType z2 = center_type(aut2, quasiconvexity_K);
    if (!abelian_iso(z1, z2)) {
        out.status = CompareStatus::not_isomorphic;
        out.reason = "center mismatch: " + to_string(z1) + " vs " + to_string(z2);
        return out;
    }

    Presentation q1 = quotient_by_center(p1, center_generators(aut1));
    Presentation q2 = quotient_by_center(p2, center_generators(aut2));
    if (!q_oracle(q1, q2)) {
        out.status = CompareStatus::not_isomorphic;
        out.reason = "central quotient mismatch";
        return out;
    }

    AbelianType ab1 = abelianization(p1);
    AbelianType ab2 = abelianization(p2);
    if (!(ab1 == ab2)) {
        out.status = CompareStatus::not_isomorphic;
        out.reason =
            "abelianization mismatch: " + to_string(ab1) + " vs " + to_string(ab2);
        return out;
    }

    if (!q_skeleton)
        throw domain_error(
            "extension comparison needs a 3-skeleton for the central quotient");

    const long long rounds = 6;
    auto exts = enumerate_extensions(*q_skeleton, z1, rounds);
    std::vector<long long> pool;
    for (const auto& e : exts)
        if (abelianization(e.presentation) == ab1) pool.push_back(e.class_index);
    if (pool.empty()) return out;

    WordOracle wp1 = [&aut1](const Word& w) { return is_trivial(aut1, w); };
    WordOracle wp2 = [&aut2](const Word& w) { return is_trivial(aut2, w); };

    auto identify = [&](const Presentation& p, const WordOracle& wp)
        -> std::pair<long long, std::optional<std::pair<HomCandidate, HomCandidate>>> {
        for (long long r = 1; r <= rounds; ++r)
            for (long long i = 0; i < std::min<long long>(r, pool.size()); ++i) {
                long long scale = r - i;
                SearchBudget scaled{
                    b.step_limit * scale,
                    b.word_length_limit + static_cast<int>(scale) - 1,
                    b.conjugate_depth_limit};
                auto w = find_isomorphism(
                    p, exts[static_cast<size_t>(pool[i])].presentation, wp, {},
                    scaled);
                if (w) return {pool[i], std::move(w)};
            }
        return {-1, std::nullopt};
    };

    auto [c1, w1] = identify(p1, wp1);
    if (c1 < 0) return out;
    auto [c2, w2] = identify(p2, wp2);
    if (c2 < 0 || c1 != c2) return out;

    // Compose p1 -> class -> p2 and back, then certify with the exact oracles.
    HomCandidate to2, to1;
    for (char a : p1.alphabet.letters)
        to2.images[a] = apply_images(apply_images(Word(1, a), w1->first.images),
                                     w2->second.images);
    for (char x : p2.alphabet.letters)
        to1.images[x] =
            apply_images(apply_images(Word(1, x), w2->first.images), w1->second.images);

    for (const Word& r : p1.relators)
        if (!wp2(apply_images(r, to2.images))) return out;
    for (const Word& r : p2.relators)
        if (!wp1(apply_images(r, to1.images))) return out;
    for (char a : p1.alphabet.letters) {
        Word round = apply_images(apply_images(Word(1, a), to2.images), to1.images);
        if (!wp1(free_reduce(round + inverse_letter(a)))) return out;
    }
    for (char x : p2.alphabet.letters) {
        Word round = apply_images(apply_images(Word(1, x), to1.images), to2.images);
        if (!wp2(free_reduce(round + inverse_letter(x)))) return out;
    }
    to2.status = HomStatus::verified;
    to1.status = HomStatus::verified;
    out.status = CompareStatus::isomorphic;
    out.witness = std::make_pair(std::move(to2), std::move(to1));
    out.matched_class = c1;
    return out;
}

}  // namespace gt
