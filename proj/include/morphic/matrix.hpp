#pragma once

#include <cstdint>
#include <vector>

#include "morphic/errors.hpp"

namespace morphic {

/// Small dense square matrix over int64, enough for occurrence counts and the
/// low matrix powers the tests compare against. No overflow checking; callers
/// keep exponents small.
class IntMatrix {
public:
    explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}

    static IntMatrix identity(int n) {
        IntMatrix m(n);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = 1;
        return m;
    }

    int size() const { return n_; }

    std::int64_t& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::int64_t& at(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * n_ + j];
    }

    IntMatrix operator*(const IntMatrix& rhs) const {
        if (rhs.n_ != n_)
            throw ConsistencyError("matrix sizes differ");
        IntMatrix out(n_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                const std::int64_t v = at(i, k);
                if (v == 0)
                    continue;
                for (int j = 0; j < n_; ++j)
                    out.at(i, j) += v * rhs.at(k, j);
            }
        return out;
    }

    IntMatrix pow(unsigned exp) const {
        IntMatrix result = identity(n_);
        IntMatrix base = *this;
        while (exp > 0) {
            if (exp & 1u)
                result = result * base;
            base = base * base;
            exp >>= 1u;
        }
        return result;
    }

    bool all_positive() const {
        for (std::int64_t v : a_)
            if (v <= 0)
                return false;
        return true;
    }

    /// Column sum = length of the image of that column's letter.
    std::int64_t column_sum(int j) const {
        std::int64_t s = 0;
        for (int i = 0; i < n_; ++i)
            s += at(i, j);
        return s;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.n_ == b.n_ && a.a_ == b.a_;
    }

private:
    int n_;
    std::vector<std::int64_t> a_;
};

} // namespace morphic
