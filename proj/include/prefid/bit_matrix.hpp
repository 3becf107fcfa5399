#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace prefid {

/// Square boolean matrix packed into 64-bit words, row-major. Used for
/// relation graphs on X x X and for metric balls.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n_ * words_, 0) {}

    std::size_t size() const { return n_; }
    std::size_t words_per_row() const { return words_; }

    bool test(std::size_t i, std::size_t j) const {
        return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
    }
    void set(std::size_t i, std::size_t j, bool value = true) {
        auto& w = bits_[i * words_ + j / 64];
        const std::uint64_t mask = std::uint64_t{1} << (j % 64);
        w = value ? (w | mask) : (w & ~mask);
    }

    std::span<std::uint64_t> row(std::size_t i) { return {bits_.data() + i * words_, words_}; }
    std::span<const std::uint64_t> row(std::size_t i) const {
        return {bits_.data() + i * words_, words_};
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool empty() const {
        return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
    }

    /// True when every set bit of *this is also set in other.
    bool subset_of(const BitMatrix& other) const {
        for (std::size_t k = 0; k < bits_.size(); ++k) {
            if (bits_[k] & ~other.bits_[k]) return false;
        }
        return true;
    }

    BitMatrix& operator&=(const BitMatrix& other) {
        for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] &= other.bits_[k];
        return *this;
    }
    BitMatrix& operator|=(const BitMatrix& other) {
        for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] |= other.bits_[k];
        return *this;
    }

    BitMatrix transposed() const {
        BitMatrix t(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for_each_in_row(i, [&](std::size_t j) { t.set(j, i); });
        }
        return t;
    }

    template <typename F>
    void for_each_in_row(std::size_t i, F&& f) const {
        const auto r = row(i);
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = r[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                f(w * 64 + static_cast<std::size_t>(b));
                bits &= bits - 1;
            }
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < n_; ++i) {
            for_each_in_row(i, [&](std::size_t j) { out.emplace_back(i, j); });
        }
        return out;
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

inline bool rows_intersect(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    for (std::size_t w = 0; w < a.size(); ++w) {
        if (a[w] & b[w]) return true;
    }
    return false;
}

inline void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
}

}  // namespace prefid
