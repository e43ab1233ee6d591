#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "morphic/alphabet.hpp"
#include "morphic/errors.hpp"
#include "morphic/morphism.hpp"
#include "morphic/prefix.hpp"

namespace morphic {

/// Occurrence statistics of one factor inside one prefix. max_gap is the
/// largest difference of consecutive start positions; absent with fewer than
/// two occurrences. Overlapping occurrences count.
struct GapReport {
    Word factor;
    std::vector<std::size_t> positions;
    std::optional<std::size_t> max_gap;
    std::size_t prefix_length = 0;
};

inline GapReport factor_gaps(const Word& w, const Word& u) {
    if (u.empty())
        throw InputError("factor must be non-empty");
    GapReport out;
    out.factor = u;
    out.prefix_length = w.size();
    if (u.size() > w.size())
        return out;
    for (std::size_t i = 0; i + u.size() <= w.size(); ++i)
        if (std::equal(u.begin(), u.end(), w.begin() + static_cast<std::ptrdiff_t>(i)))
            out.positions.push_back(i);
    if (out.positions.size() >= 2) {
        std::size_t g = 0;
        for (std::size_t i = 1; i < out.positions.size(); ++i)
            g = std::max(g, out.positions[i] - out.positions[i - 1]);
        out.max_gap = g;
    }
    return out;
}

/// Occurrence starts of u in w that are divisible by k.
inline std::vector<std::size_t> aligned_occurrences(const Word& w, const Word& u,
                                                    std::size_t k) {
    if (k == 0)
        throw InputError("alignment modulus must be positive");
    std::vector<std::size_t> out;
    for (std::size_t pos : factor_gaps(w, u).positions)
        if (pos % k == 0)
            out.push_back(pos);
    return out;
}

/// Empirical recurrence-window table: entry n-1 is the least window length L
/// such that every length-n factor of w occurs in every length-L window of w,
/// or absent when some length-n factor occurs fewer than twice (no recurrence
/// evidence at all within w).
struct RegulatorEstimate {
    std::vector<std::optional<std::size_t>> window;

    std::optional<std::size_t> at(std::size_t n) const {
        if (n == 0 || n > window.size())
            return std::nullopt;
        return window[n - 1];
    }
};

inline RegulatorEstimate regulator_estimate(const Word& w, std::size_t n_max) {
    RegulatorEstimate out;
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (n > w.size()) {
            out.window.push_back(std::nullopt);
            continue;
        }
        // Group occurrence positions by factor.
        std::unordered_map<std::string, std::vector<std::size_t>> occ;
        for (std::size_t i = 0; i + n <= w.size(); ++i) {
            std::string key(reinterpret_cast<const char*>(w.data() + i), n * sizeof(Letter));
            occ[key].push_back(i);
        }
        // A window of length L starting anywhere contains every factor u iff
        // L covers the first and last occurrence margins and every gap:
        // L >= first + n, L >= |w| - last, L >= gap + n - 1.
        std::size_t needed = 0;
        bool defined = true;
        for (const auto& [key, positions] : occ) {
            (void)key;
            if (positions.size() < 2) {
                defined = false;
                break;
            }
            needed = std::max(needed, positions.front() + n);
            needed = std::max(needed, w.size() - positions.back());
            for (std::size_t i = 1; i < positions.size(); ++i)
                needed = std::max(needed, positions[i] - positions[i - 1] + n - 1);
        }
        out.window.push_back(defined ? std::optional<std::size_t>(needed) : std::nullopt);
    }
    return out;
}

/// w paired letterwise with the cyclic position counter modulo period. The
/// product alphabet is (letter, phase) in letter-major order, named
/// "<symbol>@<phase>".
struct ProductWord {
    Alphabet alphabet;
    Word word;
};

inline ProductWord product_with_periodic(const Alphabet& a, const Word& w, std::size_t period) {
    if (period == 0)
        throw InputError("period must be positive");
    check_word(a, w);
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(a.size()) * period);
    for (Letter b = 0; b < a.size(); ++b)
        for (std::size_t p = 0; p < period; ++p)
            names.push_back(a.name(b) + "@" + std::to_string(p));
    Word out;
    out.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        out.push_back(static_cast<Letter>(static_cast<std::size_t>(w[i]) * period + i % period));
    return ProductWord{Alphabet(std::move(names)), std::move(out)};
}

namespace detail {

struct FactorStats {
    std::size_t count = 0;
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t max_gap = 0; // max consecutive-start difference

    void record(std::size_t pos) {
        if (count == 0) {
            first = pos;
        } else {
            max_gap = std::max(max_gap, pos - last);
        }
        last = pos;
        ++count;
    }
};

/// Packs factors of length 1..max_len over an n-letter alphabet into integer
/// codes; one pass over w fills per-factor stats. Codes are per length:
/// offset(len) + sum letter * n^i.
class FactorScan {
public:
    FactorScan(int alphabet_size, int max_len, const Word& w)
        : n_(static_cast<std::uint64_t>(alphabet_size)), max_len_(max_len) {
        offsets_.assign(static_cast<std::size_t>(max_len_) + 1, 0);
        std::uint64_t total = 0;
        std::uint64_t pow = 1;
        for (int len = 1; len <= max_len_; ++len) {
            if (pow > (std::uint64_t{1} << 24) / n_)
                throw ResourceLimitError("factor table too large; shorten max_factor_len");
            pow *= n_;
            offsets_[static_cast<std::size_t>(len)] = total;
            total += pow;
        }
        stats_.assign(total, FactorStats{});
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::uint64_t code = 0;
            std::uint64_t scale = 1;
            for (int len = 1; len <= max_len_ && i + static_cast<std::size_t>(len) <= w.size();
                 ++len) {
                code += scale * static_cast<std::uint64_t>(w[i + static_cast<std::size_t>(len) - 1]);
                scale *= n_;
                stats_[offsets_[static_cast<std::size_t>(len)] + code].record(i);
            }
        }
    }

    const FactorStats& of(const Word& u) const {
        if (u.empty() || u.size() > static_cast<std::size_t>(max_len_))
            throw InputError("factor length outside the scanned range");
        std::uint64_t code = 0;
        std::uint64_t scale = 1;
        for (Letter b : u) {
            code += scale * static_cast<std::uint64_t>(b);
            scale *= n_;
        }
        return stats_[offsets_[u.size()] + code];
    }

    int max_len() const { return max_len_; }

    template <typename Fn>
    void for_each_factor(Fn&& fn) const {
        for (int len = 1; len <= max_len_; ++len) {
            std::uint64_t pow = 1;
            for (int i = 0; i < len; ++i)
                pow *= n_;
            for (std::uint64_t code = 0; code < pow; ++code) {
                const FactorStats& st = stats_[offsets_[static_cast<std::size_t>(len)] + code];
                if (st.count == 0)
                    continue;
                Word u(static_cast<std::size_t>(len));
                std::uint64_t rest = code;
                for (int i = 0; i < len; ++i) {
                    u[static_cast<std::size_t>(i)] = static_cast<Letter>(rest % n_);
                    rest /= n_;
                }
                fn(u, st);
            }
        }
    }

private:
    std::uint64_t n_;
    int max_len_;
    std::vector<std::uint64_t> offsets_;
    std::vector<FactorStats> stats_;
};

/// Gap metric used for evidence: the max consecutive-start difference, or the
/// whole window when the factor occurs fewer than twice (no recurrence was
/// observed inside it).
inline std::size_t evidence_gap(const FactorStats& st, std::size_t window) {
    if (st.count < 2)
        return window;
    return st.max_gap;
}

} // namespace detail

struct FactorEvidence {
    Word factor;
    std::size_t occurrences_small = 0;
    std::size_t occurrences_large = 0;
    std::optional<std::size_t> gap_small; // absent: fewer than 2 occurrences
    std::optional<std::size_t> gap_large;
};

/// Finite-scale almost-periodicity evidence: for every factor of the small
/// prefix up to max_factor_len, the max occurrence gap in the large prefix
/// may not exceed the gap in the small prefix plus the slack. Evidence, not
/// proof; no finite prefix decides almost periodicity.
struct EvidenceReport {
    bool finite_scale = true;
    std::size_t prefix_small = 0;
    std::size_t prefix_large = 0;
    int max_factor_len = 0;
    std::size_t slack = 0;
    std::size_t factors_checked = 0;
    std::vector<FactorEvidence> grew;

    bool consistent() const { return grew.empty(); }
};

inline EvidenceReport ap_evidence(const Morphism& m, Letter s, std::optional<Coding> h,
                                  std::size_t n_small, std::size_t n_large,
                                  int max_factor_len, std::size_t slack = 0) {
    if (n_small >= n_large)
        throw PreconditionError("small prefix must be shorter than the large one");
    PrefixStream stream(m, s, std::move(h), std::max(n_large, kDefaultPrefixCap));
    Word large = stream.extend_to(n_large);
    large.resize(n_large);
    Word small(large.begin(), large.begin() + static_cast<std::ptrdiff_t>(n_small));

    const int alpha = stream.output_alphabet().size();
    const detail::FactorScan scan_small(alpha, max_factor_len, small);
    const detail::FactorScan scan_large(alpha, max_factor_len, large);

    EvidenceReport report;
    report.prefix_small = n_small;
    report.prefix_large = n_large;
    report.max_factor_len = max_factor_len;
    report.slack = slack;
    scan_small.for_each_factor([&](const Word& u, const detail::FactorStats& st_small) {
        ++report.factors_checked;
        const detail::FactorStats& st_large = scan_large.of(u);
        const std::size_t gap_s = detail::evidence_gap(st_small, n_small);
        const std::size_t gap_l = detail::evidence_gap(st_large, n_large);
        if (gap_l > gap_s + slack) {
            FactorEvidence fe;
            fe.factor = u;
            fe.occurrences_small = st_small.count;
            fe.occurrences_large = st_large.count;
            if (st_small.count >= 2)
                fe.gap_small = st_small.max_gap;
            if (st_large.count >= 2)
                fe.gap_large = st_large.max_gap;
            report.grew.push_back(std::move(fe));
        }
    });
    return report;
}

/// Growth check for one factor between two prefix sizes, with the same gap
/// metric as ap_evidence.
struct GapGrowth {
    std::size_t occurrences_small = 0;
    std::size_t occurrences_large = 0;
    std::size_t gap_small = 0;
    std::size_t gap_large = 0;
    bool grew = false;
};

inline GapGrowth gap_growth(const Morphism& m, Letter s, std::optional<Coding> h,
                            const Word& factor, std::size_t n_small, std::size_t n_large) {
    if (factor.empty())
        throw InputError("factor must be non-empty");
    if (n_small >= n_large)
        throw PreconditionError("small prefix must be shorter than the large one");
    PrefixStream stream(m, s, std::move(h), std::max(n_large, kDefaultPrefixCap));
    Word large = stream.extend_to(n_large);
    large.resize(n_large);

    detail::FactorStats st_small;
    detail::FactorStats st_large;
    for (std::size_t i = 0; i + factor.size() <= large.size(); ++i) {
        if (!std::equal(factor.begin(), factor.end(),
                        large.begin() + static_cast<std::ptrdiff_t>(i)))
            continue;
        st_large.record(i);
        if (i + factor.size() <= n_small)
            st_small.record(i);
    }
    GapGrowth out;
    out.occurrences_small = st_small.count;
    out.occurrences_large = st_large.count;
    out.gap_small = detail::evidence_gap(st_small, n_small);
    out.gap_large = detail::evidence_gap(st_large, n_large);
    out.grew = out.gap_large > out.gap_small;
    return out;
}

} // namespace morphic
