#include <catch2/catch_amalgamated.hpp>

#include "morphic/measures.hpp"
#include "morphic/prefix.hpp"
#include "morphic/pure_decider.hpp"
#include "morphic/random_gen.hpp"

#include "helpers.hpp"

using namespace morphic;
using testing_oracle::make_morphism;

namespace {
const Morphism phi1 = make_morphism("012", {"01", "120", "2"});
const Morphism phi2 = make_morphism("012", {"01", "210", "2"});
const Morphism thue_morse = make_morphism("01", {"01", "10"});
} // namespace

TEST_CASE("left tail graphs of the running examples") {
    const TailGraph l1 = left_tail_graph(phi1, classify_letters(phi1));
    REQUIRE(l1.vertices == std::vector<Letter>({0, 1}));
    REQUIRE(l1.target == std::vector<Letter>({0, 1}));
    REQUIRE(l1.label[0].empty());
    REQUIRE(l1.label[1].empty());

    const TailGraph l2 = left_tail_graph(phi2, classify_letters(phi2));
    REQUIRE(l2.target == std::vector<Letter>({0, 1}));
    REQUIRE(l2.label[0].empty());
    REQUIRE(phi2.alphabet().format(l2.label[1]) == "2");

    // No bounded letters at all: every label is forced empty.
    const TailGraph ltm = left_tail_graph(thue_morse, classify_letters(thue_morse));
    REQUIRE(ltm.vertices == std::vector<Letter>({0, 1}));
    REQUIRE(ltm.target == std::vector<Letter>({0, 1}));
    REQUIRE(ltm.label[0].empty());
    REQUIRE(ltm.label[1].empty());
}

TEST_CASE("right tail graphs of the running examples") {
    for (const Morphism* m : {&phi1, &phi2}) {
        const TailGraph r = right_tail_graph(*m, classify_letters(*m));
        for (const Word& label : r.label)
            REQUIRE(label.empty());
    }
    // phi1: rules end in 1 and 0 respectively.
    const TailGraph r1 = right_tail_graph(phi1, classify_letters(phi1));
    REQUIRE(r1.target == std::vector<Letter>({1, 0}));

    const Morphism inner = make_morphism("012", {"021", "10", "2"});
    const TailGraph r = right_tail_graph(inner, classify_letters(inner));
    REQUIRE(r.target[0] == 1);     // suffix after the last growing letter is empty
    REQUIRE(r.label[0].empty());
    const TailGraph l = left_tail_graph(inner, classify_letters(inner));
    REQUIRE(l.target[0] == 0);
    REQUIRE(l.label[0].empty());
}

TEST_CASE("tail decomposition reproduces the rule") {
    Rng rng(808);
    for (int trial = 0; trial < 200; ++trial) {
        const Morphism m = trim_reachable(
            random_prolongable_morphism(rng, rng.range(2, 4), 3), 0);
        const GrowthClassification c = classify_letters(m);
        if (c.growing.empty())
            continue;
        const TailGraph left = left_tail_graph(m, c);
        const TailGraph right = right_tail_graph(m, c);
        for (std::size_t i = 0; i < left.vertices.size(); ++i) {
            const Word& rule = m.rule(left.vertices[i]);
            const Word& label = left.label[i];
            REQUIRE(label.size() < rule.size());
            REQUIRE(std::equal(label.begin(), label.end(), rule.begin()));
            REQUIRE(rule[label.size()] == left.target[i]);
            for (Letter b : label)
                REQUIRE_FALSE(c.is_growing(b));
            REQUIRE(c.is_growing(left.target[i]));
        }
        for (std::size_t i = 0; i < right.vertices.size(); ++i) {
            const Word& rule = m.rule(right.vertices[i]);
            const Word& label = right.label[i];
            REQUIRE(label.size() < rule.size());
            REQUIRE(std::equal(label.rbegin(), label.rend(), rule.rbegin()));
            REQUIRE(rule[rule.size() - label.size() - 1] == right.target[i]);
            for (Letter b : label)
                REQUIRE_FALSE(c.is_growing(b));
            REQUIRE(c.is_growing(right.target[i]));
        }
    }
}

TEST_CASE("tail graph rejects an inconsistent classification") {
    // Classification of a different (smaller) morphism.
    const Morphism other = make_morphism("01", {"01", "10"});
    REQUIRE_THROWS_AS(left_tail_graph(phi1, classify_letters(other)), ConsistencyError);

    // Right size, wrong content: claims 0 grows although its rule would then
    // contain no growing letter at all.
    const Morphism cross = make_morphism("01", {"11", "00"});
    GrowthClassification bogus;
    bogus.letter_count = 2;
    bogus.growing = {0};
    bogus.bounded = {1};
    bogus.growing_mask = {1, 0};
    REQUIRE_THROWS_AS(left_tail_graph(cross, bogus), ConsistencyError);
    REQUIRE_THROWS_AS(right_tail_graph(cross, bogus), ConsistencyError);
}

TEST_CASE("cycle label check") {
    const TailCycleCheck good = cycles_all_empty(left_tail_graph(phi1, classify_letters(phi1)));
    REQUIRE(good.all_empty);
    REQUIRE_FALSE(good.witness.has_value());

    const TailCycleCheck bad = cycles_all_empty(left_tail_graph(phi2, classify_letters(phi2)));
    REQUIRE_FALSE(bad.all_empty);
    REQUIRE(bad.witness.has_value());
    REQUIRE(bad.witness->cycle == std::vector<Letter>({1}));
    REQUIRE(bad.witness->edge_from == 1);
    REQUIRE(phi2.alphabet().format(bad.witness->label) == "2");

    // Non-empty label off-cycle is fine; only cycles matter.
    TailGraph t;
    t.side = TailSide::Left;
    t.vertices = {0, 1};
    t.target = {0, 0};
    t.label = {Word{}, Word{9}};
    REQUIRE(cycles_all_empty(t).all_empty);

    TailGraph loop;
    loop.side = TailSide::Right;
    loop.vertices = {0};
    loop.target = {0};
    loop.label = {Word{}};
    REQUIRE(cycles_all_empty(loop).all_empty);
}

TEST_CASE("decisions for the running examples") {
    const Decision d1 = decide_pure_nonerasing(phi1, 0);
    REQUIRE(d1.almost_periodic());
    REQUIRE_FALSE(d1.witness.has_value());
    REQUIRE(d1.clauses.size() == 3);
    for (const auto& clause : d1.clauses)
        REQUIRE(clause.satisfied);

    const Decision d2 = decide_pure_nonerasing(phi2, 0);
    REQUIRE_FALSE(d2.almost_periodic());
    REQUIRE(d2.witness.has_value());
    const auto* cycle = std::get_if<TailCycleWitness>(&*d2.witness);
    REQUIRE(cycle != nullptr);
    REQUIRE(cycle->side == TailSide::Left);
    REQUIRE(cycle->cycle == std::vector<Letter>({1}));
    REQUIRE(phi2.alphabet().format(cycle->label) == "2");

    REQUIRE(decide_pure_nonerasing(thue_morse, 0).almost_periodic());
}

TEST_CASE("decider input errors") {
    const Morphism erasing(Alphabet::from_chars("01"), {Word{0, 1}, Word{}});
    REQUIRE_THROWS_AS(decide_pure_nonerasing(erasing, 0), UnsupportedError);

    const Morphism not_prolongable = make_morphism("01", {"10", "1"});
    REQUIRE_THROWS_AS(decide_pure_nonerasing(not_prolongable, 0), PreconditionError);

    const Morphism short_rule = make_morphism("01", {"01", "1"});
    REQUIRE_THROWS_AS(decide_increasing(short_rule, 0), PreconditionError);
}

TEST_CASE("increasing criterion") {
    REQUIRE(decide_increasing(thue_morse, 0).almost_periodic());

    const Morphism one_way = make_morphism("01", {"01", "11"});
    const Decision d = decide_increasing(one_way, 0);
    REQUIRE_FALSE(d.almost_periodic());
    const auto* pair = std::get_if<UnreachablePairWitness>(&*d.witness);
    REQUIRE(pair != nullptr);

    // Untrimmed: two isolated loops are not primitive. Trimmed from 0 the
    // alphabet collapses to one letter and the constant sequence is AP.
    const Morphism split = make_morphism("01", {"00", "11"});
    REQUIRE_FALSE(decide_increasing(split, 0).almost_periodic());
    const Morphism split_trimmed = trim_reachable(split, 0);
    REQUIRE(split_trimmed.size() == 1);
    REQUIRE(decide_increasing(split_trimmed, 0).almost_periodic());

    // Agreement with the general criterion on increasing inputs.
    Rng rng(606);
    int compared = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Morphism m = trim_reachable(
            random_prolongable_morphism(rng, rng.range(1, 4), 3), 0);
        if (!m.is_increasing())
            continue;
        ++compared;
        REQUIRE(decide_increasing(m, 0).almost_periodic() ==
                decide_pure_nonerasing(m, 0).almost_periodic());
    }
    REQUIRE(compared > 20);
}

TEST_CASE("binary criterion explicit cases") {
    const Morphism zeros = make_morphism("01", {"00", "1"});
    REQUIRE(decide_binary(zeros, 0).almost_periodic()); // image of 0 all zeros

    REQUIRE(decide_binary(thue_morse, 0).almost_periodic()); // image of 1 contains 0

    const Morphism erasing(Alphabet::from_chars("01"), {{0, 0, 1}, {}});
    const Decision e = decide_binary(erasing, 0);
    REQUIRE(e.almost_periodic()); // companion erased
    REQUIRE_FALSE(e.notes.empty());

    const Morphism flanked = make_morphism("01", {"010", "1"});
    REQUIRE(decide_binary(flanked, 0).almost_periodic()); // 0u0 with fixed companion

    const Morphism none = make_morphism("01", {"01", "11"});
    const Decision d = decide_binary(none, 0);
    REQUIRE_FALSE(d.almost_periodic());
    REQUIRE(d.witness.has_value());
}

TEST_CASE("binary criterion agrees with the general decider") {
    // All non-erasing binary morphisms with rule lengths up to 3, prolongable
    // on 0; the acceptance suite extends this to length 4.
    const Alphabet binary = Alphabet::from_chars("01");
    int compared = 0;
    for (int len0 = 2; len0 <= 3; ++len0)
        for (std::uint32_t bits0 = 0; bits0 < (1u << len0); ++bits0) {
            Word r0(static_cast<std::size_t>(len0));
            for (int i = 0; i < len0; ++i)
                r0[static_cast<std::size_t>(i)] = (bits0 >> i) & 1u;
            if (r0.front() != 0)
                continue;
            for (int len1 = 1; len1 <= 3; ++len1)
                for (std::uint32_t bits1 = 0; bits1 < (1u << len1); ++bits1) {
                    Word r1(static_cast<std::size_t>(len1));
                    for (int i = 0; i < len1; ++i)
                        r1[static_cast<std::size_t>(i)] = (bits1 >> i) & 1u;
                    const Morphism m(binary, {r0, r1});
                    ++compared;
                    const bool fast = decide_binary(m, 0).almost_periodic();
                    const bool general =
                        decide_pure_nonerasing(trim_reachable(m, 0), 0).almost_periodic();
                    REQUIRE(fast == general);
                }
        }
    REQUIRE(compared == 6 * 14);
}

TEST_CASE("verdicts agree with prefix gaps on the running examples") {
    // AP: the start letter keeps bounded gaps; the max gap stabilizes between
    // the two prefix sizes.
    for (const Morphism* m : {&phi1, &thue_morse}) {
        const GapGrowth g = gap_growth(*m, 0, std::nullopt, Word{0}, 100'000, 1'000'000);
        REQUIRE_FALSE(g.grew);
    }
    // phi2: runs of 2 lengthen, so gaps of "0" grow.
    const GapGrowth g2 = gap_growth(phi2, 0, std::nullopt, Word{0}, 100'000, 1'000'000);
    REQUIRE(g2.grew);

    // The bounded-letter runs themselves: longest run of 2s grows.
    const Word small = generate_prefix(phi2, 0, 100'000);
    const Word large = generate_prefix(phi2, 0, 1'000'000);
    auto longest_run = [](const Word& w, Letter b) {
        std::size_t best = 0, cur = 0;
        for (Letter x : w) {
            cur = x == b ? cur + 1 : 0;
            best = std::max(best, cur);
        }
        return best;
    };
    REQUIRE(longest_run(large, 2) > longest_run(small, 2));
}
