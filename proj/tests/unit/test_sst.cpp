#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace steiner;
using testing_support::random_complex;
using testing_support::triangle_graph;

namespace {

// Dense random d-complex on [n]; kappa may or may not vanish.
PureComplex random_dense_complex(Vertex n, int d, SeededRng& rng) {
    return random_complex(n, d, 0.6 + 0.3 * rng.uniform(), rng);
}

double log_big(const BigInt& x) {
    if (x == 0) return -INFINITY;
    return std::log(x.convert_to<double>());
}

} // namespace

TEST(Snf, Identity) {
    IntMatrix<BigInt> I(3, 3);
    for (std::size_t i = 0; i < 3; ++i) I(i, i) = 1;
    const auto s = smith_normal_form(I);
    EXPECT_EQ(s.factors, (std::vector<BigInt>{1, 1, 1}));
}

TEST(Snf, Diagonal) {
    IntMatrix<BigInt> M(2, 2);
    M(0, 0) = 2;
    M(1, 1) = 4;
    EXPECT_EQ(smith_normal_form(M).factors, (std::vector<BigInt>{2, 4}));
    M(0, 0) = 4;
    M(1, 1) = 6;
    EXPECT_EQ(smith_normal_form(M).factors, (std::vector<BigInt>{2, 12}));
}

TEST(Snf, ProjectivePlaneTorsion) {
    const std::vector<Face> faces = {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                                     {2, 3, 5}, {2, 4, 5}, {2, 4, 6}, {3, 4, 6}, {3, 5, 6}};
    const auto s = smith_normal_form(boundary_matrix(6, 2, faces).cast<BigInt>());
    ASSERT_EQ(s.rank(), 10u);
    for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(s.factors[i], 1);
    EXPECT_EQ(s.factors[9], 2);
    EXPECT_EQ(s.torsion(), 2);
}

TEST(Snf, DivisibilityChainAndDeterminant) {
    SeededRng rng(2, 0);
    for (int t = 0; t < 40; ++t) {
        const std::size_t m = 1 + rng.below(5);
        IntMatrix<BigInt> M(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) M(i, j) = static_cast<int>(rng.below(11)) - 5;
        const auto s = smith_normal_form(M);
        for (std::size_t i = 1; i < s.factors.size(); ++i) EXPECT_EQ(s.factors[i] % s.factors[i - 1], 0);
        EXPECT_EQ(s.rank(), exact_rank(M));
        // |det| equals the product of invariant factors when nonsingular
        if (s.rank() == m) {
            Eigen::MatrixXd F(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    F(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = M(i, j).convert_to<double>();
            EXPECT_NEAR(std::abs(F.determinant()), s.torsion().convert_to<double>(), 1e-6);
        }
    }
}

TEST(ExactRank, OverflowFallsBackToBigIntegers) {
    IntMatrix<std::int64_t> M(3, 3);
    const std::int64_t big = 3'000'000'000LL;
    M(0, 0) = big;
    M(0, 1) = 1;
    M(1, 0) = 1;
    M(1, 1) = big;
    M(2, 0) = big + 1;
    M(2, 1) = big + 1;
    EXPECT_EQ(exact_rank(M), 2u);
}

TEST(PiD, TriangleGraph) {
    const auto p = pi_d(triangle_graph());
    EXPECT_FALSE(p.nontrivial_zero_flag);
    EXPECT_NEAR(p.log_value, std::log(9.0), 1e-10);
}

TEST(PiD, CompleteTwoComplexOnFour) {
    EXPECT_NEAR(pi_d(complete_complex(4, 2)).log_value, std::log(64.0), 1e-10);
}

TEST(PiD, HoleSetsFlag) {
    // C(n-1,d) = 6 d-faces are needed; five cannot span
    const auto X = complex_from_dfaces(5, 2, {{1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {2, 4, 5}, {3, 4, 5}});
    const auto p = pi_d(X);
    EXPECT_TRUE(p.nontrivial_zero_flag);
    const auto k = kappa_d(X);
    EXPECT_TRUE(k.zero());
    EXPECT_EQ(kappa_root(k, 5, 2), 0.0);
    EXPECT_EQ(brute_force_kappa(X), 0);
}

TEST(KappaD, GoldenValues) {
    EXPECT_NEAR(std::exp(kappa_d(complete_complex(4, 1)).log_kappa), 16.0, 1e-8);
    EXPECT_NEAR(std::exp(kappa_d(complete_complex(4, 2)).log_kappa), 4.0, 1e-9);
    EXPECT_NEAR(std::exp(kappa_d(complete_complex(5, 2)).log_kappa), 125.0, 1e-7);
    EXPECT_NEAR(std::exp(kappa_d(complete_complex(6, 1)).log_kappa), 1296.0, 1e-6);
}

TEST(KappaD, KalaiIdentity) {
    for (auto [n, d] : std::vector<std::pair<Vertex, int>>{{4, 1}, {5, 1}, {6, 1}, {4, 2}, {5, 2}, {6, 2}, {6, 3}}) {
        const double expect = static_cast<double>(binomial(n - 2, static_cast<std::uint64_t>(d))) * std::log(static_cast<double>(n));
        EXPECT_NEAR(kappa_d(complete_complex(n, d)).log_kappa, expect, 1e-8 * std::max(1.0, expect)) << n << " " << d;
    }
}

TEST(KappaD, BasisOrderDoesNotMatter) {
    SeededRng rng(4, 0);
    for (int t = 0; t < 5; ++t) {
        const auto X = random_dense_complex(6, 2, rng);
        auto faces = all_subsets(6, 2);
        const double base = kappa_d(X).log_kappa;
        rng.shuffle(faces);
        const double perm = kappa_d(X, FormBasis(faces)).log_kappa;
        if (std::isinf(base)) EXPECT_TRUE(std::isinf(perm));
        else EXPECT_NEAR(base, perm, 1e-9);
    }
}

TEST(KappaRoot, Forms) {
    const auto X = complete_complex(4, 1);
    EXPECT_NEAR(kappa_root(X), 2.0, 1e-12);
    SeededRng rng(5, 0);
    const auto Y = steiner_complex(15, 2, 4, rng);
    const auto ev = eigenvalues(laplacian_matrix(Y));
    const double a = kappa_root(Y);
    const double b = kappa_root_spectral(ev, trivial_zero_count(Y), 15, 2);
    EXPECT_NEAR(a, b, 1e-10 * a);
}

TEST(BruteForce, SmallExamples) {
    EXPECT_EQ(brute_force_kappa(complete_complex(4, 1)), 16);
    EXPECT_EQ(brute_force_kappa(complete_complex(4, 2)), 4);
    EXPECT_EQ(brute_force_kappa(triangle_graph()), 3);
    EXPECT_EQ(brute_force_kappa(complete_complex(5, 2)), 125);
}

TEST(BruteForce, TorsionIsSquared) {
    // the 6-vertex RP^2 is its own only spanning tree, with H_1 = Z/2
    const std::vector<Face> faces = {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                                     {2, 3, 5}, {2, 4, 5}, {2, 4, 6}, {3, 4, 6}, {3, 5, 6}};
    const auto X = complex_from_dfaces(6, 2, faces);
    const BigInt exact = brute_force_kappa(X);
    EXPECT_EQ(exact, 4);
    EXPECT_NEAR(kappa_d(X).log_kappa, std::log(4.0), 1e-8);
}

TEST(BruteForce, Guard) {
    EXPECT_THROW(brute_force_kappa(complete_complex(8, 2), 1, 1e4), GuardExceeded);
}

TEST(BruteForce, AgreesWithMatrixTreeOnRandomComplexes) {
    SeededRng rng(6, 0);
    for (int t = 0; t < 12; ++t) {
        const int d = 1 + t % 2;
        const Vertex n = d == 1 ? 6 : 5;
        const auto X = random_dense_complex(n, d, rng);
        const BigInt exact = brute_force_kappa(X);
        const auto kr = kappa_d(X);
        if (exact == 0) {
            EXPECT_TRUE(kr.zero());
        } else {
            EXPECT_FALSE(kr.zero());
            EXPECT_NEAR(kr.log_kappa, log_big(exact), 1e-6);
        }
    }
}
