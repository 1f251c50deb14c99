#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace steiner {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix.
template <class T>
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }

    template <class U>
    [[nodiscard]] IntMatrix<U> cast() const {
        IntMatrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = U((*this)(i, j));
        return out;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

namespace detail {

// a*b - c*e, exact over BigInt.
inline std::optional<BigInt> cross(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& e) {
    return a * b - c * e;
}

// a*b - c*e in int64, nullopt on overflow.
inline std::optional<std::int64_t> cross(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t e) {
    std::int64_t p, q, r;
    if (__builtin_mul_overflow(a, b, &p) || __builtin_mul_overflow(c, e, &q) || __builtin_sub_overflow(p, q, &r))
        return std::nullopt;
    return r;
}

/// Fraction-free (Bareiss) elimination; nullopt if T overflowed.
template <class T>
std::optional<std::size_t> bareiss_rank(IntMatrix<T> a) {
    const std::size_t m = a.rows(), n = a.cols();
    std::size_t rank = 0;
    T prev(1);
    for (std::size_t c = 0; c < n && rank < m; ++c) {
        std::size_t p = rank;
        while (p < m && a(p, c) == 0) ++p;
        if (p == m) continue;
        a.swap_rows(p, rank);
        const T piv = a(rank, c);
        for (std::size_t i = rank + 1; i < m; ++i) {
            const T lead = a(i, c);
            for (std::size_t j = c + 1; j < n; ++j) {
                if (lead == 0 && a(i, j) == 0) continue;
                auto v = cross(a(i, j), piv, lead, a(rank, j));
                if (!v) return std::nullopt;
                a(i, j) = *v / prev;
            }
            a(i, c) = 0;
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

} // namespace detail

/// Exact rank over the rationals via fraction-free elimination. Runs in 64-bit
/// arithmetic and falls back to arbitrary precision on overflow.
inline std::size_t exact_rank(const IntMatrix<std::int64_t>& a) {
    if (auto r = detail::bareiss_rank(a)) return *r;
    return *detail::bareiss_rank(a.template cast<BigInt>());
}

inline std::size_t exact_rank(const IntMatrix<BigInt>& a) { return *detail::bareiss_rank(a); }

/// Invariant factors s_1 | s_2 | ... | s_r of an integer matrix.
struct SnfDiagonal {
    std::vector<BigInt> factors;
    [[nodiscard]] std::size_t rank() const { return factors.size(); }
    /// Order of the torsion subgroup of the cokernel: product of the factors.
    [[nodiscard]] BigInt torsion() const {
        BigInt p = 1;
        for (const auto& s : factors) p *= s;
        return p;
    }
};

/// Smith normal form by repeated smallest-pivot reduction of rows and columns.
inline SnfDiagonal smith_normal_form(IntMatrix<BigInt> a) {
    const std::size_t m = a.rows(), n = a.cols();
    SnfDiagonal out;
    using boost::multiprecision::abs;

    auto move_min_to = [&](std::size_t t) -> bool {
        std::size_t bi = m, bj = n;
        BigInt best = 0;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a(i, j) != 0 && (bi == m || abs(a(i, j)) < best)) {
                    best = abs(a(i, j));
                    bi = i;
                    bj = j;
                }
        if (bi == m) return false;
        a.swap_rows(t, bi);
        a.swap_cols(t, bj);
        return true;
    };

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        if (!move_min_to(t)) break;
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a(i, t) == 0) continue;
                const BigInt q = a(i, t) / a(t, t);
                for (std::size_t j = t; j < n; ++j) a(i, j) -= q * a(t, j);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0) continue;
                const BigInt q = a(t, j) / a(t, t);
                for (std::size_t i = t; i < m; ++i) a(i, j) -= q * a(i, t);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) {
                // bring the smallest remainder in row t / column t to the pivot
                std::size_t bi = t, bj = t;
                BigInt best = abs(a(t, t));
                for (std::size_t i = t + 1; i < m; ++i)
                    if (a(i, t) != 0 && abs(a(i, t)) < best) best = abs(a(i, t)), bi = i, bj = t;
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(t, j) != 0 && abs(a(t, j)) < best) best = abs(a(t, j)), bi = t, bj = j;
                a.swap_rows(t, bi);
                a.swap_cols(t, bj);
                continue;
            }
            // divisibility of the remaining block by the pivot
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            for (std::size_t j = t; j < n; ++j) a(t, j) += a(bad, j);
        }
        out.factors.push_back(abs(a(t, t)));
    }
    return out;
}

} // namespace steiner
