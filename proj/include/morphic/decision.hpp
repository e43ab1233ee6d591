#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "morphic/alphabet.hpp"

namespace morphic {

enum class Verdict { AlmostPeriodic, NotAlmostPeriodic };

enum class TailSide { Left, Right };

inline const char* to_string(TailSide s) { return s == TailSide::Left ? "left" : "right"; }

/// Two growing letters with no path between them in the restricted graph.
struct UnreachablePairWitness {
    Letter from;
    Letter to;
};

/// A cycle in a tail graph carrying a non-empty bounded-letter label; iterating
/// the cycle pumps arbitrarily long bounded-letter runs into the sequence.
struct TailCycleWitness {
    TailSide side;
    std::vector<Letter> cycle; // in cycle order, starting at the least letter
    Letter edge_from;          // the cycle edge whose label is non-empty
    Word label;
};

/// Letters whose deep image never meets the start letter's stable class.
struct UncoveredLettersWitness {
    std::vector<Letter> letters;
};

using Witness =
    std::variant<UnreachablePairWitness, TailCycleWitness, UncoveredLettersWitness>;

struct CriterionClause {
    std::string name;
    bool satisfied = false;
    std::string detail;
};

/// Extra payload of the uniform-morphism decision path.
struct AutomaticDetail {
    std::vector<Letter> stable_class;  // letters equivalent to the start at a deep level
    std::string class_strategy;        // "refinement" or "doubling"
    int preperiod = -1;                // refinement only
    int period = -1;                   // refinement only
    int doubling_steps = -1;           // doubling only
    int coverage_log2 = 0;             // coverage checked at exponent 2^coverage_log2
    std::vector<char> covered;         // per letter
};

/// Outcome of a decision procedure. A negative verdict always carries a
/// machine-checkable witness; a positive one records the satisfied clauses.
struct Decision {
    Verdict verdict = Verdict::NotAlmostPeriodic;
    std::vector<CriterionClause> clauses;
    std::optional<Witness> witness;
    std::optional<AutomaticDetail> automatic;
    std::vector<std::string> notes;

    bool almost_periodic() const { return verdict == Verdict::AlmostPeriodic; }
};

} // namespace morphic
