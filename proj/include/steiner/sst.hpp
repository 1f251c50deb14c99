#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "steiner/complex.hpp"
#include "steiner/integer_matrix.hpp"
#include "steiner/spectra.hpp"

namespace steiner {

/// Product of the non-trivial eigenvalues of Delta^+_{d-1}, in the log domain.
struct PiResult {
    double log_value = 0;
    bool nontrivial_zero_flag = false;
    bool ambiguous_zero = false; ///< some eigenvalue sits just above the zero cut
    std::size_t trivial_zero_count = 0;
    double smallest_nontrivial = 0;
};

struct KappaResult {
    double log_kappa = 0;
    std::optional<BigInt> exact_kappa;
    double pi_d_log = 0;
    std::size_t trivial_zero_count = 0;
    bool nontrivial_zero_flag = false;
    bool ambiguous_zero = false;

    [[nodiscard]] bool zero() const { return nontrivial_zero_flag; }
};

/// Zero cut used to classify eigenvalues: 1e-8 * max(1, top).
inline double zero_tolerance(const std::vector<double>& ascending) {
    return 1e-8 * std::max(1.0, ascending.empty() ? 0.0 : ascending.back());
}

/// pi_d from a sorted Delta spectrum and the expected number of trivial zeros.
inline PiResult pi_from_spectrum(const std::vector<double>& eigs, std::size_t trivial) {
    const double eps = zero_tolerance(eigs);
    PiResult out;
    out.trivial_zero_count = trivial;
    std::size_t below = 0;
    for (double x : eigs)
        if (x < eps) ++below;
    if (below < trivial)
        throw std::logic_error("spectrum has " + std::to_string(below) + " zero eigenvalues, expected at least " +
                               std::to_string(trivial));
    out.nontrivial_zero_flag = below > trivial;
    for (std::size_t i = trivial; i < eigs.size(); ++i) {
        const double x = eigs[i];
        if (x > eps && x < 1e3 * eps) out.ambiguous_zero = true;
        if (!out.nontrivial_zero_flag) out.log_value += std::log(x);
    }
    out.smallest_nontrivial = trivial < eigs.size() ? eigs[trivial] : 0.0;
    if (out.nontrivial_zero_flag) out.log_value = -INFINITY;
    return out;
}

inline PiResult pi_d(const PureComplex& X, const FormBasis& basis) {
    return pi_from_spectrum(eigenvalues(laplacian_matrix(X, basis)), trivial_zero_count(X));
}

inline PiResult pi_d(const PureComplex& X) { return pi_d(X, FormBasis::complete(X)); }

/// log of n^{C(n-2,d-1)}, the weighted count of (d-1)-spanning trees of the complete skeleton.
inline double log_kalai_skeleton(Vertex n, int d) {
    return static_cast<double>(binomial(n - 2, static_cast<std::uint64_t>(d - 1))) * std::log(static_cast<double>(n));
}

inline KappaResult kappa_from_pi(const PiResult& pi, Vertex n, int d) {
    KappaResult r;
    r.pi_d_log = pi.log_value;
    r.trivial_zero_count = pi.trivial_zero_count;
    r.nontrivial_zero_flag = pi.nontrivial_zero_flag;
    r.ambiguous_zero = pi.ambiguous_zero;
    r.log_kappa = pi.nontrivial_zero_flag ? -INFINITY : pi.log_value - log_kalai_skeleton(n, d);
    return r;
}

/// Weighted number of d-dimensional spanning trees through the matrix-tree route.
inline KappaResult kappa_d(const PureComplex& X, const FormBasis& basis) {
    return kappa_from_pi(pi_d(X, basis), X.n(), X.d());
}

inline KappaResult kappa_d(const PureComplex& X) { return kappa_d(X, FormBasis::complete(X)); }

/// kappa_d^{1/C(n,d)}; 0 when kappa_d vanishes.
inline double kappa_root(const KappaResult& r, Vertex n, int d) {
    if (r.nontrivial_zero_flag) return 0.0;
    return std::exp(r.log_kappa / static_cast<double>(binomial(n, static_cast<std::uint64_t>(d))));
}

inline double kappa_root(const PureComplex& X) { return kappa_root(kappa_d(X), X.n(), X.d()); }

/// Same statistic from the spectrum: mean log of the non-zero eigenvalues over
/// C(n,d), minus d(n-d) log(n) / (n(n-1)).
inline double kappa_root_spectral(const std::vector<double>& eigs, std::size_t trivial, Vertex n, int d) {
    const PiResult pi = pi_from_spectrum(eigs, trivial);
    if (pi.nontrivial_zero_flag) return 0.0;
    const double m = static_cast<double>(binomial(n, static_cast<std::uint64_t>(d)));
    const double nn = n;
    return std::exp(pi.log_value / m - d * (nn - d) * std::log(nn) / (nn * (nn - 1)));
}

/// Boundary matrix of the given d-faces into the C(n,d) ridges.
inline IntMatrix<std::int64_t> boundary_matrix(Vertex n, int d, const std::vector<Face>& faces) {
    const FormBasis ridges(all_subsets(n, static_cast<std::size_t>(d)));
    IntMatrix<std::int64_t> M(ridges.size(), faces.size());
    for (std::size_t c = 0; c < faces.size(); ++c)
        for (std::size_t i = 0; i < faces[c].size(); ++i) M(ridges.index(faces[c].facet(i)), c) = induced_sign(i);
    return M;
}

inline IntMatrix<std::int64_t> boundary_matrix(const PureComplex& X) { return boundary_matrix(X.n(), X.d(), X.dfaces()); }

/// Exact weighted count: sum over C(n-1,d)-subsets T of X^d whose boundary
/// columns are independent of |H_{d-1}(T)|^2, the squared product of the
/// invariant factors of the boundary of T.
inline BigInt brute_force_kappa(const PureComplex& X, unsigned threads = 0, double max_subsets = 1e6) {
    const Vertex n = X.n();
    const int d = X.d();
    const std::size_t m = X.num_dfaces();
    const std::uint64_t s = binomial(n - 1, static_cast<std::uint64_t>(d));
    if (s > m) return 0;
    double combos = 1;
    for (std::uint64_t i = 0; i < s; ++i) combos = combos * static_cast<double>(m - i) / static_cast<double>(i + 1);
    if (combos > max_subsets) throw GuardExceeded("brute force would enumerate " + std::to_string(combos) + " subsets");

    const IntMatrix<std::int64_t> full = boundary_matrix(X);
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());

    BigInt total = 0;
    std::mutex mu;
    auto work = [&](unsigned tid) {
        BigInt local = 0;
        std::vector<std::size_t> pick(s);
        for (std::size_t i = 0; i < s; ++i) pick[i] = i;
        std::uint64_t idx = 0;
        IntMatrix<std::int64_t> sub(full.rows(), s);
        while (true) {
            if (idx++ % threads == tid) {
                for (std::size_t c = 0; c < s; ++c)
                    for (std::size_t r = 0; r < full.rows(); ++r) sub(r, c) = full(r, pick[c]);
                if (exact_rank(sub) == s) {
                    const BigInt t = smith_normal_form(sub.template cast<BigInt>()).torsion();
                    local += t * t;
                }
            }
            std::size_t i = s;
            while (i > 0 && pick[i - 1] == m - s + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
        }
        std::lock_guard lock(mu);
        total += local;
    };
    if (s == 0) return 1;
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();
    return total;
}

} // namespace steiner
