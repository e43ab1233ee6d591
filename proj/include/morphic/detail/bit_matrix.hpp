#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace morphic::detail {

/// Square boolean matrix with 64-bit packed rows. Row-times-matrix products
/// are the hot path of the repeated-squaring loops, so rows stay contiguous.
class BitMatrix {
public:
    explicit BitMatrix(int n)
        : n_(n), words_((n + 63) / 64),
          bits_(static_cast<std::size_t>(n) * static_cast<std::size_t>(words_), 0) {}

    int size() const { return n_; }
    int words_per_row() const { return words_; }

    bool get(int i, int j) const {
        return (row(i)[static_cast<std::size_t>(j) >> 6] >> (j & 63)) & 1u;
    }

    void set(int i, int j) {
        row(i)[static_cast<std::size_t>(j) >> 6] |= std::uint64_t{1} << (j & 63);
    }

    std::uint64_t* row(int i) {
        return bits_.data() + static_cast<std::size_t>(i) * words_;
    }
    const std::uint64_t* row(int i) const {
        return bits_.data() + static_cast<std::size_t>(i) * words_;
    }

    int row_count_set(int i) const {
        int c = 0;
        const std::uint64_t* r = row(i);
        for (int w = 0; w < words_; ++w)
            c += std::popcount(r[w]);
        return c;
    }

    std::vector<int> row_members(int i) const {
        std::vector<int> out;
        const std::uint64_t* r = row(i);
        for (int w = 0; w < words_; ++w) {
            std::uint64_t bits = r[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                out.push_back(w * 64 + b);
                bits &= bits - 1;
            }
        }
        return out;
    }

    /// out(i, j) = OR over x of (*this)(i, x) AND rhs(x, j).
    BitMatrix multiplied_by(const BitMatrix& rhs) const {
        BitMatrix out(n_);
        std::vector<std::uint64_t> acc(static_cast<std::size_t>(words_));
        for (int i = 0; i < n_; ++i) {
            for (auto& w : acc)
                w = 0;
            const std::uint64_t* r = row(i);
            for (int w = 0; w < words_; ++w) {
                std::uint64_t bits = r[w];
                while (bits) {
                    const int x = w * 64 + std::countr_zero(bits);
                    bits &= bits - 1;
                    const std::uint64_t* rx = rhs.row(x);
                    for (int ww = 0; ww < words_; ++ww)
                        acc[static_cast<std::size_t>(ww)] |= rx[ww];
                }
            }
            std::uint64_t* ro = out.row(i);
            for (int ww = 0; ww < words_; ++ww)
                ro[ww] = acc[static_cast<std::size_t>(ww)];
        }
        return out;
    }

    BitMatrix squared() const { return multiplied_by(*this); }

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

private:
    int n_;
    int words_;
    std::vector<std::uint64_t> bits_;
};

} // namespace morphic::detail
