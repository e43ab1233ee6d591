#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "morphic/automatic_decider.hpp"
#include "morphic/measures.hpp"
#include "morphic/pure_decider.hpp"
#include "morphic/random_gen.hpp"
#include "morphic/report.hpp"
#include "morphic/spec_format.hpp"

namespace morphic {

struct SuiteResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t passed = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty() && checked == passed; }
};

/// Factor whose occurrence gaps the decision witness predicts to grow: the
/// unreached letter for a connectivity failure, the start letter when a tail
/// cycle pumps bounded-letter runs. Coverage witnesses carry no single factor.
inline std::optional<Word> witness_factor(const Decision& d, Letter start) {
    if (!d.witness)
        return std::nullopt;
    if (const auto* pair = std::get_if<UnreachablePairWitness>(&*d.witness))
        return Word{pair->to};
    if (std::get_if<TailCycleWitness>(&*d.witness))
        return Word{start};
    return std::nullopt;
}

namespace detail {

inline std::string describe_binary(const Word& r0, const Word& r1) {
    std::string out = "0->";
    for (Letter b : r0)
        out += static_cast<char>('0' + b);
    out += " 1->";
    if (r1.empty())
        out += "(empty)";
    for (Letter b : r1)
        out += static_cast<char>('0' + b);
    return out;
}

inline std::string describe_morphism(const Morphism& m) {
    std::string out;
    for (Letter b = 0; b < m.size(); ++b) {
        if (b)
            out += " ";
        out += m.alphabet().name(b) + "->";
        if (m.rule(b).empty())
            out += "(empty)";
        for (Letter c : m.rule(b))
            out += m.alphabet().name(c);
    }
    return out;
}

} // namespace detail

/// Exhaustive binary agreement: over all rule images with lengths up to
/// max_len (companion length may also be 0), prolongable on 0, the explicit
/// binary criterion must match the general decider on the trimmed morphism.
/// The empty-companion shape is erasing, so it is checked against finite
/// prefix evidence instead.
inline SuiteResult crosscheck_binary(int max_len, std::size_t evidence_small = 10'000,
                                     std::size_t evidence_large = 100'000) {
    SuiteResult result;
    result.name = "binary-criterion-vs-general";
    const Alphabet binary = Alphabet::from_chars("01");

    std::vector<Word> images_by_any_len;
    std::vector<Word> starts; // words starting with 0, length >= 1
    for (int len = 1; len <= max_len; ++len)
        for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
            Word w(static_cast<std::size_t>(len));
            for (int i = 0; i < len; ++i)
                w[static_cast<std::size_t>(i)] = (bits >> i) & 1u;
            images_by_any_len.push_back(w);
            if (w.front() == 0)
                starts.push_back(w);
        }
    std::vector<Word> companions = images_by_any_len;
    companions.insert(companions.begin(), Word{});

    for (const Word& r0 : starts)
        for (const Word& r1 : companions) {
            const Morphism m(binary, {r0, r1});
            if (!is_prolongable(m, 0))
                continue;
            ++result.checked;
            const Decision fast = decide_binary(m, 0);
            if (r1.empty()) {
                // Erasing shape: the criterion says almost periodic; agree with
                // the evidence instead of the (inapplicable) general decider.
                const EvidenceReport ev =
                    ap_evidence(m, 0, std::nullopt, evidence_small, evidence_large, 3, 0);
                if (fast.almost_periodic() && ev.consistent())
                    ++result.passed;
                else
                    result.failures.push_back(detail::describe_binary(r0, r1) +
                                              ": erasing shape disagreed with evidence");
                continue;
            }
            const Morphism trimmed = trim_reachable(m, 0);
            const Decision general = decide_pure_nonerasing(trimmed, 0);
            if (fast.almost_periodic() == general.almost_periodic())
                ++result.passed;
            else
                result.failures.push_back(detail::describe_binary(r0, r1) +
                                          ": binary says " +
                                          (fast.almost_periodic() ? "AP" : "NOT_AP") +
                                          ", general says " +
                                          (general.almost_periodic() ? "AP" : "NOT_AP"));
        }
    return result;
}

/// All k-uniform morphisms over `letters` letters prolongable on 0, identity
/// coding: the uniform-morphism decider must agree with the pure one on the
/// trimmed morphism.
inline SuiteResult crosscheck_uniform_exhaustive(int letters, int k) {
    SuiteResult result;
    result.name = "uniform-vs-pure-exhaustive";
    const std::uint64_t n = static_cast<std::uint64_t>(letters);
    std::uint64_t images = 1;
    for (int i = 0; i < k; ++i)
        images *= n;

    // Rule images encoded base-n; the start rule is forced to begin with 0.
    std::vector<std::uint64_t> codes(static_cast<std::size_t>(letters), 0);
    const std::uint64_t total_other = [&] {
        std::uint64_t t = 1;
        for (int b = 1; b < letters; ++b)
            t *= images;
        return t;
    }();
    const std::uint64_t starts = images / n;

    for (std::uint64_t s_code = 0; s_code < starts; ++s_code) {
        for (std::uint64_t rest = 0; rest < total_other; ++rest) {
            std::vector<Word> rules;
            rules.reserve(static_cast<std::size_t>(letters));
            {
                Word r(static_cast<std::size_t>(k));
                std::uint64_t c = s_code;
                r[0] = 0;
                for (int i = 1; i < k; ++i) {
                    r[static_cast<std::size_t>(i)] = static_cast<Letter>(c % n);
                    c /= n;
                }
                rules.push_back(std::move(r));
            }
            std::uint64_t c = rest;
            for (int b = 1; b < letters; ++b) {
                Word r(static_cast<std::size_t>(k));
                std::uint64_t code = c % images;
                c /= images;
                for (int i = 0; i < k; ++i) {
                    r[static_cast<std::size_t>(i)] = static_cast<Letter>(code % n);
                    code /= n;
                }
                rules.push_back(std::move(r));
            }
            const Morphism m(numbered_alphabet(letters), std::move(rules));
            if (!is_prolongable(m, 0))
                continue;
            ++result.checked;
            const Morphism trimmed = trim_reachable(m, 0);
            const Decision uniform =
                decide_automatic(trimmed, Coding::identity(trimmed.alphabet()), 0);
            const Decision pure = decide_pure_nonerasing(trimmed, 0);
            if (uniform.almost_periodic() == pure.almost_periodic())
                ++result.passed;
            else
                result.failures.push_back(detail::describe_morphism(m) + ": uniform says " +
                                          (uniform.almost_periodic() ? "AP" : "NOT_AP") +
                                          ", pure says " +
                                          (pure.almost_periodic() ? "AP" : "NOT_AP"));
        }
    }
    return result;
}

/// Seeded random uniform morphisms with identity coding, same agreement.
inline SuiteResult crosscheck_uniform_sampled(std::uint64_t seed, int count, int max_letters,
                                              int max_k) {
    SuiteResult result;
    result.name = "uniform-vs-pure-sampled";
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        const int n = rng.range(1, max_letters);
        const int k = rng.range(2, std::max(2, max_k));
        const Morphism m = random_uniform_morphism(rng, n, k, true);
        ++result.checked;
        const Morphism trimmed = trim_reachable(m, 0);
        const Decision uniform =
            decide_automatic(trimmed, Coding::identity(trimmed.alphabet()), 0);
        const Decision pure = decide_pure_nonerasing(trimmed, 0);
        if (uniform.almost_periodic() == pure.almost_periodic())
            ++result.passed;
        else
            result.failures.push_back("instance " + std::to_string(i) + " (seed " +
                                      std::to_string(seed) + "): " +
                                      detail::describe_morphism(m));
    }
    return result;
}

struct OracleCheckOptions {
    std::size_t consistent_small = 100'000;
    std::size_t consistent_large = 1'000'000;
    std::size_t growth_small = 10'000;
    std::size_t growth_large = 1'000'000;
    int max_factor_len = 3;
    std::size_t slack = 0;
    int max_letters = 4;
    int max_rule_len = 3;
};

/// Decider-vs-prefix-oracle agreement on seeded random non-erasing morphisms:
/// a positive verdict must leave every short factor's occurrence gaps stable
/// between the two prefix sizes; a negative verdict must show up as growing
/// gaps of the factor named by the decision witness. Growth is probed across
/// two orders of magnitude so that even the slowest pumped runs (growth rate
/// bounded by rule length to the cycle length) gain at least one letter.
inline SuiteResult crosscheck_oracle(std::uint64_t seed, int count,
                                     const OracleCheckOptions& opt = {}) {
    SuiteResult result;
    result.name = "decider-vs-oracle";
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        const int n = rng.range(2, opt.max_letters);
        const Morphism raw = random_prolongable_morphism(rng, n, opt.max_rule_len);
        const Morphism m = trim_reachable(raw, 0);
        ++result.checked;
        const Decision d = decide_pure_nonerasing(m, 0);
        const std::string tag = "instance " + std::to_string(i) + " (seed " +
                                std::to_string(seed) + "): " + detail::describe_morphism(m);
        if (d.almost_periodic()) {
            const EvidenceReport ev = ap_evidence(m, 0, std::nullopt, opt.consistent_small,
                                                  opt.consistent_large, opt.max_factor_len,
                                                  opt.slack);
            if (ev.consistent()) {
                ++result.passed;
            } else {
                std::string grown;
                for (const FactorEvidence& f : ev.grew)
                    grown += " " + m.alphabet().format(f.factor);
                result.failures.push_back(tag + ": AP but gaps grew for" + grown);
            }
        } else {
            const std::optional<Word> factor = witness_factor(d, 0);
            if (!factor) {
                result.failures.push_back(tag + ": negative verdict without a usable witness");
                continue;
            }
            const GapGrowth growth =
                gap_growth(m, 0, std::nullopt, *factor, opt.growth_small, opt.growth_large);
            if (growth.grew)
                ++result.passed;
            else
                result.failures.push_back(tag + ": NOT_AP but the witness factor '" +
                                          m.alphabet().format(*factor) +
                                          "' kept stable gaps");
        }
    }
    return result;
}

/// Every bundled description with an expected verdict must decide to exactly
/// that verdict.
inline SuiteResult crosscheck_corpus(const std::filesystem::path& corpus_dir) {
    SuiteResult result;
    result.name = "corpus";
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::is_directory(corpus_dir)) {
        result.failures.push_back("corpus directory not found: " + corpus_dir.string());
        return result;
    }
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir))
        if (entry.path().extension() == ".morph")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    for (const auto& file : files) {
        std::ifstream in(file);
        std::stringstream buffer;
        buffer << in.rdbuf();
        try {
            const MorphicInput input = build_input(parse_spec(buffer.str()));
            if (input.expect.empty()) {
                result.failures.push_back(file.filename().string() + ": no expected verdict");
                continue;
            }
            ++result.checked;
            const RunReport report = run_decide(input);
            const std::string got = report.exit_code == 0   ? "AP"
                                    : report.exit_code == 1 ? "NOT_AP"
                                                            : "ERROR";
            if (got == input.expect)
                ++result.passed;
            else
                result.failures.push_back(file.filename().string() + ": expected " +
                                          input.expect + ", got " + got);
        } catch (const Error& e) {
            result.failures.push_back(file.filename().string() + ": " + e.what());
        }
    }
    if (files.empty())
        result.failures.push_back("corpus directory has no .morph files");
    return result;
}

} // namespace morphic
