#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "morphic/automatic_decider.hpp"
#include "morphic/decision.hpp"
#include "morphic/errors.hpp"
#include "morphic/growth.hpp"
#include "morphic/measures.hpp"
#include "morphic/pure_decider.hpp"
#include "morphic/spec_format.hpp"

namespace morphic {

using json = nlohmann::ordered_json;

struct RunOptions {
    bool verify = false;
    std::size_t verify_small = 10'000;
    std::size_t verify_large = 100'000;
    int verify_factor_len = 3;
    std::size_t verify_slack = 0;
    bool include_timings = false;
    std::size_t prefix_cap = kDefaultPrefixCap;
};

struct RunReport {
    json body;
    int exit_code = 2;
    std::optional<Decision> decision;
    std::string route;
};

namespace detail {

inline json letters_json(const Alphabet& a, const std::vector<Letter>& letters) {
    json out = json::array();
    for (Letter b : letters)
        out.push_back(a.name(b));
    return out;
}

inline json input_json(const MorphicInput& in) {
    json out;
    if (!in.name.empty())
        out["name"] = in.name;
    if (!in.expect.empty())
        out["expect"] = in.expect;
    out["alphabet"] = in.morphism.alphabet().names();
    out["start"] = in.morphism.alphabet().name(in.start);
    json rules = json::object();
    for (Letter b = 0; b < in.morphism.size(); ++b) {
        json image = json::array();
        for (Letter c : in.morphism.rule(b))
            image.push_back(in.morphism.alphabet().name(c));
        rules[in.morphism.alphabet().name(b)] = image;
    }
    out["rules"] = rules;
    if (in.coding) {
        json code = json::object();
        for (Letter b = 0; b < in.morphism.size(); ++b)
            code[in.morphism.alphabet().name(b)] = in.coding->target().name((*in.coding)(b));
        out["coding"] = code;
    }
    return out;
}

inline json classification_json(const Alphabet& a, const GrowthClassification& c) {
    json out;
    out["growing"] = letters_json(a, c.growing);
    out["bounded"] = letters_json(a, c.bounded);
    out["unit_image"] = letters_json(a, c.unit_image);
    out["unit_cycles"] = letters_json(a, c.unit_cycles);
    return out;
}

inline json witness_json(const Alphabet& a, const Witness& w) {
    json out;
    if (const auto* pair = std::get_if<UnreachablePairWitness>(&w)) {
        out["kind"] = "unreachable_pair";
        out["from"] = a.name(pair->from);
        out["to"] = a.name(pair->to);
    } else if (const auto* cycle = std::get_if<TailCycleWitness>(&w)) {
        out["kind"] = "tail_cycle";
        out["side"] = to_string(cycle->side);
        out["cycle"] = letters_json(a, cycle->cycle);
        out["edge_from"] = a.name(cycle->edge_from);
        out["label"] = a.format(cycle->label);
    } else if (const auto* letters = std::get_if<UncoveredLettersWitness>(&w)) {
        out["kind"] = "uncovered_letters";
        out["letters"] = letters_json(a, letters->letters);
    }
    return out;
}

inline json decision_json(const Alphabet& a, const Decision& d) {
    json out;
    out["verdict"] = d.almost_periodic() ? "almost_periodic" : "not_almost_periodic";
    json clauses = json::array();
    for (const CriterionClause& c : d.clauses) {
        json jc;
        jc["name"] = c.name;
        jc["satisfied"] = c.satisfied;
        if (!c.detail.empty())
            jc["detail"] = c.detail;
        clauses.push_back(jc);
    }
    out["clauses"] = clauses;
    if (d.witness)
        out["witness"] = witness_json(a, *d.witness);
    if (d.automatic) {
        const AutomaticDetail& ad = *d.automatic;
        json ja;
        ja["stable_class"] = letters_json(a, ad.stable_class);
        ja["class_strategy"] = ad.class_strategy;
        if (ad.preperiod >= 0)
            ja["preperiod"] = ad.preperiod;
        if (ad.period >= 0)
            ja["period"] = ad.period;
        if (ad.doubling_steps >= 0)
            ja["doubling_steps"] = ad.doubling_steps;
        ja["coverage_log2"] = ad.coverage_log2;
        json covered = json::object();
        for (Letter b = 0; b < a.size(); ++b)
            covered[a.name(b)] = ad.covered[static_cast<std::size_t>(b)] != 0;
        ja["covered"] = covered;
        out["automatic"] = ja;
    }
    if (!d.notes.empty())
        out["notes"] = d.notes;
    return out;
}

inline json evidence_json(const Alphabet& output_alphabet, const EvidenceReport& e) {
    json out;
    out["finite_scale"] = e.finite_scale;
    out["prefix_small"] = e.prefix_small;
    out["prefix_large"] = e.prefix_large;
    out["max_factor_len"] = e.max_factor_len;
    out["slack"] = e.slack;
    out["factors_checked"] = e.factors_checked;
    out["consistent"] = e.consistent();
    json grew = json::array();
    for (const FactorEvidence& f : e.grew) {
        json jf;
        jf["factor"] = output_alphabet.format(f.factor);
        jf["occurrences_small"] = f.occurrences_small;
        jf["occurrences_large"] = f.occurrences_large;
        jf["gap_small"] = f.gap_small ? json(*f.gap_small) : json(nullptr);
        jf["gap_large"] = f.gap_large ? json(*f.gap_large) : json(nullptr);
        grew.push_back(jf);
    }
    out["grew"] = grew;
    return out;
}

} // namespace detail

/// Restriction of a coding to a trimmed alphabet, matching letters by name.
inline std::optional<Coding> restrict_coding(const std::optional<Coding>& coding,
                                             const Alphabet& trimmed) {
    if (!coding)
        return std::nullopt;
    std::vector<Letter> map;
    map.reserve(static_cast<std::size_t>(trimmed.size()));
    for (Letter b = 0; b < trimmed.size(); ++b)
        map.push_back((*coding)(coding->source().index_of(trimmed.name(b))));
    return Coding(trimmed, coding->target(), std::move(map));
}

/// Full decision pipeline: trim to the reachable alphabet, pick the decider
/// matching the morphism shape, optionally attach finite-prefix evidence.
/// Exit code 0 = almost periodic, 1 = not, 2 = unusable input.
inline RunReport run_decide(const MorphicInput& input, const RunOptions& options = {}) {
    RunReport report;
    report.body["input"] = detail::input_json(input);
    const auto t0 = std::chrono::steady_clock::now();

    try {
        const std::vector<Letter> kept = reachable_letters(input.morphism, input.start);
        Morphism m = trim_reachable(input.morphism, input.start);
        const Letter start = m.alphabet().index_of(input.morphism.alphabet().name(input.start));
        std::optional<Coding> coding = restrict_coding(input.coding, m.alphabet());

        json normalization;
        json removed = json::array();
        for (Letter b = 0; b < input.morphism.size(); ++b)
            if (std::find(kept.begin(), kept.end(), b) == kept.end())
                removed.push_back(input.morphism.alphabet().name(b));
        normalization["removed_unreachable"] = removed;

        bool coding_dropped = false;
        if (coding && coding->is_identity()) {
            coding.reset();
            coding_dropped = true;
        }
        normalization["identity_coding_dropped"] = coding_dropped;

        if (m.is_non_erasing())
            normalization["classification"] =
                detail::classification_json(m.alphabet(), classify_letters(m));
        report.body["normalization"] = normalization;

        Decision decision;
        if (coding) {
            if (!m.uniform_length())
                throw UnsupportedError(
                    "coded fixed points are decided for uniform morphisms only; no "
                    "procedure here covers a coding over a non-uniform morphism");
            report.route = "automatic";
            decision = decide_automatic(m, *coding, start);
        } else if (m.size() == 2 && (m.is_non_erasing() || m.rule(1 - start).empty())) {
            report.route = "binary";
            decision = decide_binary(m, start);
        } else if (m.is_non_erasing()) {
            report.route = "pure";
            decision = decide_pure_nonerasing(m, start);
        } else {
            throw UnsupportedError("erasing morphisms outside the two-letter special shape "
                                   "are not decided");
        }
        report.body["route"] = report.route;
        report.body["decision"] = detail::decision_json(m.alphabet(), decision);

        if (options.verify) {
            if (options.verify_large > options.prefix_cap)
                throw ResourceLimitError("verification prefix exceeds the configured cap");
            const EvidenceReport evidence =
                ap_evidence(m, start, coding, options.verify_small, options.verify_large,
                            options.verify_factor_len, options.verify_slack);
            const Alphabet& out_alpha = coding ? coding->target() : m.alphabet();
            report.body["evidence"] = detail::evidence_json(out_alpha, evidence);
        }

        report.exit_code = decision.almost_periodic() ? 0 : 1;
        report.decision = std::move(decision);
    } catch (const Error& e) {
        report.body["error"] = e.what();
        report.exit_code = 2;
    }

    report.body["exit_code"] = report.exit_code;
    if (options.include_timings) {
        const auto t1 = std::chrono::steady_clock::now();
        report.body["timings_ms"] = {
            {"total", std::chrono::duration<double, std::milli>(t1 - t0).count()}};
    }
    return report;
}

/// Classification-only pipeline for the classify subcommand.
inline RunReport run_classify(const MorphicInput& input) {
    RunReport report;
    report.body["input"] = detail::input_json(input);
    try {
        const Morphism m = trim_reachable(input.morphism, input.start);
        json normalization;
        json removed = json::array();
        const std::vector<Letter> kept = reachable_letters(input.morphism, input.start);
        for (Letter b = 0; b < input.morphism.size(); ++b)
            if (std::find(kept.begin(), kept.end(), b) == kept.end())
                removed.push_back(input.morphism.alphabet().name(b));
        normalization["removed_unreachable"] = removed;
        report.body["normalization"] = normalization;
        report.body["classification"] =
            detail::classification_json(m.alphabet(), classify_letters(m));
        report.exit_code = 0;
    } catch (const Error& e) {
        report.body["error"] = e.what();
        report.exit_code = 2;
    }
    report.body["exit_code"] = report.exit_code;
    return report;
}

} // namespace morphic
