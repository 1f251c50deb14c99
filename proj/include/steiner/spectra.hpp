#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "steiner/complex.hpp"
#include "steiner/integer_matrix.hpp"

namespace steiner {

using Matrix = Eigen::MatrixXd;

/// Signed adjacency A on Omega^{d-1} in the basis of positively oriented ridges:
/// A(i,j) sums the orientation signs of the neighbours of (ridge i, +) that sit
/// on ridge j.
inline Matrix adjacency_matrix(const PureComplex& X, const FormBasis& basis) {
    const OrientedLineGraph G = oriented_line_graph(X, basis);
    const auto N = static_cast<Eigen::Index>(basis.size());
    Matrix A = Matrix::Zero(N, N);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t st : G.adj[G.state(i, 1)]) {
            const OrientedFace nb = G.oriented_face(st);
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(basis.index(nb.face()))) += nb.sign();
        }
    }
    return A;
}

inline Matrix adjacency_matrix(const PureComplex& X) { return adjacency_matrix(X, FormBasis::complete(X)); }

inline Eigen::VectorXd degree_vector(const PureComplex& X, const FormBasis& basis) {
    Eigen::VectorXd D(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        D(static_cast<Eigen::Index>(i)) = static_cast<double>(X.degree(basis[i]));
    return D;
}

/// Upper Laplacian Delta^+_{d-1} = D - A.
inline Matrix laplacian_matrix(const PureComplex& X, const FormBasis& basis) {
    Matrix L = -adjacency_matrix(X, basis);
    L.diagonal() += degree_vector(X, basis);
    return L;
}

inline Matrix laplacian_matrix(const PureComplex& X) { return laplacian_matrix(X, FormBasis::complete(X)); }

/// Full spectrum of a symmetric matrix, ascending (Householder tridiagonalization
/// followed by implicit symmetric QL).
inline std::vector<double> eigenvalues(const Matrix& M) {
    if (M.rows() != M.cols()) throw ValidationError("eigenvalues: matrix not square");
    if (M.size() == 0) return {};
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ValidationError("eigenvalues: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalues: solver did not converge");
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.begin(), out.end());
    return out;
}

/// Coboundary Omega^{d-2} -> Omega^{d-1} of the complete (d-1)-skeleton on [n]:
/// rows are the C(n,d) ridges, columns the C(n,d-1) (d-2)-faces (the empty face
/// when d = 1), entry (-1)^i for the facet omitting position i.
inline IntMatrix<std::int64_t> coboundary_matrix(Vertex n, int d) {
    const auto ridges = all_subsets(n, static_cast<std::size_t>(d));
    const FormBasis lower(all_subsets(n, static_cast<std::size_t>(d - 1)));
    IntMatrix<std::int64_t> M(ridges.size(), lower.size());
    for (std::size_t r = 0; r < ridges.size(); ++r)
        for (std::size_t i = 0; i < ridges[r].size(); ++i)
            M(r, lower.index(ridges[r].facet(i))) = induced_sign(i);
    return M;
}

/// Dimension of the image of the coboundary from (d-2)-forms, i.e. the number of
/// trivial zero eigenvalues of Delta^+_{d-1}. Exact for up to 5000 columns,
/// singular-value thresholding at 1e-8 of the top value beyond.
inline std::size_t trivial_zero_count(Vertex n, int d) {
    const std::uint64_t cols = binomial(n, static_cast<std::uint64_t>(d - 1));
    const IntMatrix<std::int64_t> M = coboundary_matrix(n, d);
    if (cols <= 5000) return exact_rank(M);
    Matrix F(static_cast<Eigen::Index>(M.rows()), static_cast<Eigen::Index>(M.cols()));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            F(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(M(i, j));
    Eigen::BDCSVD<Matrix> svd(F);
    const auto& s = svd.singularValues();
    const double cut = 1e-8 * (s.size() ? s(0) : 0.0);
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return r;
}

inline std::size_t trivial_zero_count(const PureComplex& X) { return trivial_zero_count(X.n(), X.d()); }

/// l-th moments (1/m) sum lambda^l for l = 0..lmax.
inline std::vector<double> spectral_moments(const std::vector<double>& eigs, int lmax) {
    std::vector<double> m(static_cast<std::size_t>(lmax) + 1, 0.0);
    if (eigs.empty()) return m;
    for (double x : eigs) {
        double p = 1;
        for (int l = 0; l <= lmax; ++l, p *= x) m[static_cast<std::size_t>(l)] += p;
    }
    for (double& v : m) v /= static_cast<double>(eigs.size());
    return m;
}

struct Histogram {
    std::vector<double> edges;  ///< bins+1 edges
    std::vector<double> masses; ///< sums to 1
};

/// Empirical spectral distribution summary.
struct SpectralSummary {
    std::vector<double> eigenvalues; ///< ascending
    std::size_t trivial_zero_count = 0;
    std::vector<double> moments;
    Histogram histogram;
};

inline Histogram histogram(const std::vector<double>& eigs, std::size_t bins, double lo, double hi) {
    if (bins == 0) throw ValidationError("histogram needs at least one bin");
    if (!(hi > lo)) hi = lo + 1.0;
    Histogram h;
    h.edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    h.masses.assign(bins, 0.0);
    if (eigs.empty()) return h;
    const double w = 1.0 / static_cast<double>(eigs.size());
    for (double x : eigs) {
        auto b = static_cast<std::ptrdiff_t>(std::floor((x - lo) / (hi - lo) * static_cast<double>(bins)));
        b = std::clamp<std::ptrdiff_t>(b, 0, static_cast<std::ptrdiff_t>(bins) - 1);
        h.masses[static_cast<std::size_t>(b)] += w;
    }
    return h;
}

/// Summary of the spectrum; the histogram spans [lo,hi] when given, otherwise
/// the range of the eigenvalues.
inline SpectralSummary esd(std::vector<double> eigs, std::size_t trivial_zeros, int lmax, std::size_t bins,
                           std::optional<std::pair<double, double>> range = std::nullopt) {
    std::sort(eigs.begin(), eigs.end());
    SpectralSummary s;
    s.trivial_zero_count = trivial_zeros;
    s.moments = spectral_moments(eigs, lmax);
    const double lo = range ? range->first : (eigs.empty() ? 0.0 : eigs.front());
    const double hi = range ? range->second : (eigs.empty() ? 1.0 : eigs.back());
    s.histogram = histogram(eigs, bins, lo, hi);
    s.eigenvalues = std::move(eigs);
    return s;
}

/// sum over positively oriented ridges of phi_l(s,s) - phi_l(s, flip s), counted
/// by walk dynamic programming on the oriented line graph. Equals tr(A^l).
inline std::int64_t signed_trace(const PureComplex& X, int l) {
    if (l < 0) throw ValidationError("walk length must be >= 0");
    if (l > 10) throw GuardExceeded("signed_trace is limited to l <= 10");
    const OrientedLineGraph G = oriented_line_graph(X);
    {
        double bound = 1;
        for (int i = 0; i < l; ++i) bound *= static_cast<double>(X.d()) * static_cast<double>(max_degree(X));
        if (bound > 4.0e18) throw GuardExceeded("walk counts would overflow 64-bit integers");
    }
    std::vector<std::int64_t> cur(G.state_count(), 0), nxt(G.state_count(), 0);
    std::vector<std::size_t> active, next_active;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < G.basis.size(); ++i) {
        const std::size_t s0 = G.state(i, 1);
        active.assign(1, s0);
        cur[s0] = 1;
        for (int step = 0; step < l; ++step) {
            next_active.clear();
            for (std::size_t s : active) {
                for (std::size_t t : G.adj[s]) {
                    if (nxt[t] == 0) next_active.push_back(t);
                    nxt[t] += cur[s];
                }
                cur[s] = 0;
            }
            active.swap(next_active);
            cur.swap(nxt);
        }
        total += cur[s0];
        if (G.oriented()) total -= cur[G.flip(s0)];
        for (std::size_t s : active) cur[s] = 0;
    }
    return total;
}

} // namespace steiner
