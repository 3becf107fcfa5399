#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "prefid/error.hpp"

namespace prefid {

/// Pairwise max-coordinate distances quantized to their distinct values
/// ("levels"), plus every point's neighbours sorted by distance so that a
/// closed ball is a prefix of that list.
class MetricIndex {
public:
    using Level = std::uint32_t;

    explicit MetricIndex(std::span<const std::vector<double>> points) : n_(points.size()) {
        auto dist = [&](std::size_t i, std::size_t j) {
            double d = 0.0;
            for (std::size_t k = 0; k < points[i].size(); ++k) d = std::max(d, std::abs(points[i][k] - points[j][k]));
            return d;
        };
        {
            std::vector<double> sorted{0.0};
            sorted.reserve(n_ * (n_ - (n_ > 0 ? 1 : 0)) / 2 + 1);
            for (std::size_t i = 0; i < n_; ++i) {
                for (std::size_t j = i + 1; j < n_; ++j) sorted.push_back(dist(i, j));
            }
            std::sort(sorted.begin(), sorted.end());
            const double tol = 1e-9 * std::max(1.0, sorted.back());
            for (double d : sorted) {
                if (levels_.empty() || d - levels_.back() > tol) levels_.push_back(d);
            }
        }

        level_.resize(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i; j < n_; ++j) {
                const Level L = i == j ? 0 : level_index(dist(i, j));
                level_[i * n_ + j] = L;
                level_[j * n_ + i] = L;
            }
        }

        order_.resize(n_ * n_);
        order_level_.resize(n_ * n_);
        std::vector<std::uint32_t> idx(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            std::iota(idx.begin(), idx.end(), 0U);
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::uint32_t a, std::uint32_t b) { return level_[i * n_ + a] < level_[i * n_ + b]; });
            for (std::size_t k = 0; k < n_; ++k) {
                order_[i * n_ + k] = idx[k];
                order_level_[i * n_ + k] = level_[i * n_ + idx[k]];
            }
        }
    }

    std::size_t size() const { return n_; }
    const std::vector<double>& levels() const { return levels_; }
    std::size_t num_levels() const { return levels_.size(); }

    Level level(std::size_t i, std::size_t j) const { return level_[i * n_ + j]; }
    double distance(std::size_t i, std::size_t j) const { return levels_[level(i, j)]; }

    /// Largest level whose distance does not exceed r (closed balls).
    Level level_at_most(double r) const {
        if (r < 0.0) throw DomainError("negative radius");
        const double tol = 1e-9 * std::max(1.0, levels_.back());
        auto it = std::upper_bound(levels_.begin(), levels_.end(), r + tol);
        return static_cast<Level>(std::distance(levels_.begin(), it) - 1);
    }

    /// Points within level L of i, nearest first.
    std::span<const std::uint32_t> ball(std::size_t i, Level L) const {
        const auto lv = std::span<const Level>(order_level_.data() + i * n_, n_);
        const auto end = std::upper_bound(lv.begin(), lv.end(), L) - lv.begin();
        return {order_.data() + i * n_, static_cast<std::size_t>(end)};
    }

private:
    Level level_index(double d) const {
        const double tol = 1e-9 * std::max(1.0, levels_.back());
        auto it = std::lower_bound(levels_.begin(), levels_.end(), d - tol);
        return static_cast<Level>(std::distance(levels_.begin(), it));
    }

    std::size_t n_ = 0;
    std::vector<double> levels_;
    std::vector<Level> level_;
    std::vector<std::uint32_t> order_;
    std::vector<Level> order_level_;
};

}  // namespace prefid
