#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "morphic/errors.hpp"
#include "morphic/morphism.hpp"

namespace morphic {

inline constexpr std::size_t kDefaultPrefixCap = 1'000'000;

/// Append-only prefix of the (optionally coded) fixed point. The rule image
/// of the start letter is s followed by a tail u; the fixed point is
/// s u phi(u) phi^2(u) ..., so extension appends the iterated tail blocks and
/// never re-derives earlier letters.
class PrefixStream {
public:
    PrefixStream(Morphism m, Letter start, std::optional<Coding> coding = std::nullopt,
                 std::size_t cap = kDefaultPrefixCap)
        : m_(std::move(m)), coding_(std::move(coding)), cap_(cap) {
        if (!is_prolongable(m_, start))
            throw PreconditionError("morphism is not prolongable on the start letter");
        if (coding_ && coding_->source().size() != m_.size())
            throw ConsistencyError("coding source does not match the morphism alphabet");
        const Word& r = m_.rule(start);
        tail_.assign(r.begin() + 1, r.end());
        buf_.push_back(coding_ ? (*coding_)(start) : start);
    }

    /// Grows the buffer to at least n letters (may overshoot by a block).
    const Word& extend_to(std::size_t n) {
        if (n > cap_)
            throw ResourceLimitError("requested prefix of " + std::to_string(n) +
                                     " letters exceeds the cap of " + std::to_string(cap_));
        while (buf_.size() < n) {
            if (coding_)
                for (Letter b : tail_)
                    buf_.push_back((*coding_)(b));
            else
                buf_.insert(buf_.end(), tail_.begin(), tail_.end());
            tail_ = morphic::apply(m_, tail_);
            if (tail_.empty())
                throw ConsistencyError("tail block died out; prolongability was violated");
        }
        return buf_;
    }

    const Word& buffer() const { return buf_; }
    std::size_t cap() const { return cap_; }

    const Alphabet& output_alphabet() const {
        return coding_ ? coding_->target() : m_.alphabet();
    }

private:
    Morphism m_;
    std::optional<Coding> coding_;
    Word tail_;
    Word buf_;
    std::size_t cap_;
};

/// First n letters of the (coded) fixed point of m started at s.
inline Word generate_prefix(const Morphism& m, Letter s, std::size_t n,
                            std::optional<Coding> h = std::nullopt,
                            std::size_t cap = kDefaultPrefixCap) {
    PrefixStream stream(m, s, std::move(h), cap);
    Word out = stream.extend_to(n);
    out.resize(n);
    return out;
}

} // namespace morphic
