#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace prefid::lp {

enum class Status { optimal, infeasible, unbounded };

struct Solution {
    Status status = Status::infeasible;
    double value = 0.0;
    std::vector<double> x;
};

/// Dense two-phase simplex with Bland-style tie breaking:
/// maximize c.x subject to A x <= b, x >= 0. Intended for problems with
/// at most a few thousand rows.
class Simplex {
public:
    Simplex(const std::vector<std::vector<double>>& A, const std::vector<double>& b, const std::vector<double>& c,
            double eps = 1e-9)
        : m_(b.size()), n_(c.size()), eps_(eps), N_(n_ + 1), B_(m_), D_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) D_[i][j] = A[i][j];
        }
        for (std::size_t i = 0; i < m_; ++i) {
            B_[i] = static_cast<long>(n_ + i);
            D_[i][n_] = -1.0;
            D_[i][n_ + 1] = b[i];
        }
        for (std::size_t j = 0; j < n_; ++j) {
            N_[j] = static_cast<long>(j);
            D_[m_][j] = -c[j];
        }
        N_[n_] = -1;
        D_[m_ + 1][n_] = 1.0;
    }

    Solution solve() {
        Solution out;
        std::size_t r = 0;
        for (std::size_t i = 1; i < m_; ++i) {
            if (D_[i][n_ + 1] < D_[r][n_ + 1]) r = i;
        }
        if (m_ > 0 && D_[r][n_ + 1] < -eps_) {
            pivot(r, n_);
            if (!run(2) || D_[m_ + 1][n_ + 1] < -eps_) {
                out.status = Status::infeasible;
                return out;
            }
            for (std::size_t i = 0; i < m_; ++i) {
                if (B_[i] == -1) {
                    std::size_t s = 0;
                    for (std::size_t j = 1; j <= n_; ++j) {
                        if (better(D_[i], j, s)) s = j;
                    }
                    pivot(i, s);
                }
            }
        }
        const bool bounded = run(1);
        out.x.assign(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (B_[i] >= 0 && static_cast<std::size_t>(B_[i]) < n_) out.x[static_cast<std::size_t>(B_[i])] = D_[i][n_ + 1];
        }
        out.status = bounded ? Status::optimal : Status::unbounded;
        out.value = bounded ? D_[m_][n_ + 1] : std::numeric_limits<double>::infinity();
        return out;
    }

private:
    bool better(const std::vector<double>& row, std::size_t j, std::size_t s) const {
        return row[j] < row[s] || (row[j] == row[s] && N_[j] < N_[s]);
    }

    void pivot(std::size_t r, std::size_t s) {
        const double inv = 1.0 / D_[r][s];
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i != r && std::abs(D_[i][s]) > eps_) {
                const double f = D_[i][s] * inv;
                for (std::size_t j = 0; j < n_ + 2; ++j) D_[i][j] -= D_[r][j] * f;
                D_[i][s] = D_[r][s] * f;
            }
        }
        for (std::size_t j = 0; j < n_ + 2; ++j) {
            if (j != s) D_[r][j] *= inv;
        }
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i != r) D_[i][s] *= -inv;
        }
        D_[r][s] = inv;
        std::swap(B_[r], N_[s]);
    }

    bool run(int phase) {
        const std::size_t x = m_ + static_cast<std::size_t>(phase) - 1;
        for (;;) {
            long s = -1;
            for (std::size_t j = 0; j <= n_; ++j) {
                if (N_[j] == -phase) continue;
                if (s == -1 || better(D_[x], j, static_cast<std::size_t>(s))) s = static_cast<long>(j);
            }
            const auto sc = static_cast<std::size_t>(s);
            if (D_[x][sc] >= -eps_) return true;
            long r = -1;
            for (std::size_t i = 0; i < m_; ++i) {
                if (D_[i][sc] <= eps_) continue;
                if (r == -1) {
                    r = static_cast<long>(i);
                    continue;
                }
                const auto rc = static_cast<std::size_t>(r);
                const double lhs = D_[i][n_ + 1] / D_[i][sc];
                const double rhs = D_[rc][n_ + 1] / D_[rc][sc];
                if (lhs < rhs || (lhs == rhs && B_[i] < B_[rc])) r = static_cast<long>(i);
            }
            if (r == -1) return false;
            pivot(static_cast<std::size_t>(r), sc);
        }
    }

    std::size_t m_;
    std::size_t n_;
    double eps_;
    std::vector<long> N_;
    std::vector<long> B_;
    std::vector<std::vector<double>> D_;
};

inline Solution maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                         const std::vector<double>& c) {
    return Simplex(A, b, c).solve();
}

}  // namespace prefid::lp
