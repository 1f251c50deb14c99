#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "test_support.hpp"

using namespace steiner;

namespace {

// Rooted simplicial isomorphism search between two d-face lists: vertex maps
// sending root onto center (setwise) and faces onto faces.
bool rooted_isomorphic(const std::vector<Face>& A, const std::vector<Vertex>& VA, const Face& rootA,
                       const std::vector<Face>& B, const std::vector<Vertex>& VB, const Face& rootB) {
    if (A.size() != B.size() || VA.size() != VB.size()) return false;
    const std::set<Face> target(B.begin(), B.end());
    std::vector<Vertex> order(rootA.begin(), rootA.end());
    for (Vertex v : VA)
        if (!rootA.contains(v)) order.push_back(v);
    std::map<Vertex, Vertex> f;
    std::set<Vertex> used;
    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == order.size()) return true;
        const Vertex a = order[i];
        for (Vertex b : VB) {
            if (used.contains(b)) continue;
            if ((i < rootA.size()) != rootB.contains(b)) continue;
            f[a] = b;
            used.insert(b);
            bool ok = true;
            for (const Face& tau : A) {
                if (!tau.contains(a)) continue;
                std::vector<Vertex> img;
                for (Vertex x : tau) {
                    auto it = f.find(x);
                    if (it == f.end()) break;
                    img.push_back(it->second);
                }
                if (img.size() == tau.size() && !target.contains(Face::from_unsorted(img))) {
                    ok = false;
                    break;
                }
            }
            if (ok && go(i + 1)) return true;
            f.erase(a);
            used.erase(b);
        }
        return false;
    };
    return go(0);
}

std::vector<Vertex> all_vertices(const std::vector<std::vector<Vertex>>& layers) {
    std::vector<Vertex> out;
    for (const auto& l : layers) out.insert(out.end(), l.begin(), l.end());
    return out;
}

} // namespace

TEST(ArborealBall, TwoTwoOne) {
    const auto T = arboreal_ball(2, 2, 1);
    EXPECT_EQ(T.vertex_layers[0].size(), 2u);
    EXPECT_EQ(T.vertex_layers[1].size(), 2u);
    EXPECT_EQ(T.complex.num_dfaces(), 2u);
    EXPECT_EQ(T.ridge_layers[1].size(), 4u);
}

TEST(ArborealBall, RadiusZero) {
    for (int d = 1; d <= 4; ++d) {
        const auto T = arboreal_ball(d, 3, 0);
        EXPECT_EQ(T.vertex_layers[0].size(), static_cast<std::size_t>(d));
        EXPECT_EQ(T.complex.num_dfaces(), 0u);
    }
}

TEST(ArborealBall, CubicTreeRadiusTwo) {
    const auto T = arboreal_ball(1, 3, 2);
    EXPECT_EQ(all_vertices(T.vertex_layers).size(), 10u);
}

TEST(ArborealBall, GuardRadius) {
    ArborealOptions opt;
    opt.r_max = 3;
    EXPECT_THROW(arboreal_ball(2, 3, 4, opt), GuardExceeded);
    EXPECT_THROW(arboreal_ball(3, 10, 8), GuardExceeded);
}

TEST(LayerSizes, Examples) {
    const auto L = layer_sizes(2, 3, 2);
    EXPECT_EQ(L.dfaces, (std::vector<std::uint64_t>{0, 3, 12}));
    EXPECT_EQ(L.cumulative_vertices, (std::vector<std::uint64_t>{2, 5, 17}));
    for (int d = 1; d <= 4; ++d)
        for (int k = 2; k <= 6; ++k) {
            const auto L1 = layer_sizes(d, k, 1);
            EXPECT_EQ(L1.vertices[1], static_cast<std::uint64_t>(k));
            EXPECT_EQ(L1.dfaces[1], static_cast<std::uint64_t>(k));
        }
    const auto C = layer_sizes(1, 3, 6);
    for (int rho = 1; rho <= 6; ++rho) EXPECT_EQ(C.vertices[static_cast<std::size_t>(rho)], 3u << (rho - 1));
}

TEST(LayerSizes, MatchConstruction) {
    for (int d = 1; d <= 3; ++d)
        for (int k = 2; k <= 5; ++k)
            for (int r = 0; r <= 4; ++r) {
                if (std::pow(d * (k - 1.0), r) > 2e4) continue;
                const auto T = arboreal_ball(d, k, r);
                const auto L = layer_sizes(d, k, r);
                for (int rho = 0; rho <= r; ++rho) {
                    const auto ur = static_cast<std::size_t>(rho);
                    EXPECT_EQ(T.vertex_layers[ur].size(), L.vertices[ur]);
                    EXPECT_EQ(T.ridge_layers[ur].size(), L.ridges[ur]);
                    EXPECT_EQ(T.dface_layers[ur].size(), L.dfaces[ur]);
                }
                EXPECT_EQ(arboreal_vertex_count(d, k, r), L.cumulative_vertices.back());
                EXPECT_EQ(T.complex.n(), L.cumulative_vertices.back());
            }
}

TEST(ArborealBall, StructuralInvariants) {
    const auto T = arboreal_ball(2, 3, 3);
    const auto B = ball(T.complex, T.root, 3);
    for (int rho = 0; rho < 3; ++rho)
        for (const Face& s : T.ridge_layers[static_cast<std::size_t>(rho)]) EXPECT_EQ(T.complex.degree(s), 3u);
    for (int rho = 1; rho <= 3; ++rho) {
        const auto& V = T.vertex_layers[static_cast<std::size_t>(rho)];
        for (const Face& tau : T.dface_layers[static_cast<std::size_t>(rho)])
            EXPECT_EQ(std::count_if(V.begin(), V.end(), [&](Vertex v) { return tau.contains(v); }), 1);
        EXPECT_EQ(B.dface_layers[static_cast<std::size_t>(rho)], [&] {
            auto x = T.dface_layers[static_cast<std::size_t>(rho)];
            std::sort(x.begin(), x.end());
            return x;
        }());
    }
}

TEST(IsArboreal, SelfTest) {
    for (int d = 1; d <= 3; ++d)
        for (int k = 2; k <= 4; ++k)
            for (int r = 0; r <= 3; ++r) {
                const auto T = arboreal_ball(d, k, r);
                EXPECT_TRUE(is_arboreal_ball(T.complex, T.root, k, r)) << d << k << r;
            }
}

TEST(IsArboreal, CompleteTwoComplex) {
    const auto X = complete_complex(4, 2);
    EXPECT_TRUE(is_arboreal_ball(X, Face{1, 2}, 2, 1));
    EXPECT_FALSE(is_arboreal_ball(X, Face{1, 2}, 2, 2));
}

TEST(IsArboreal, CycleIsLocallyALine) {
    const Vertex n = 11;
    std::vector<Face> edges;
    for (Vertex i = 1; i <= n; ++i) edges.push_back(Face::from_unsorted({i, i % n + 1}));
    const auto X = complex_from_dfaces(n, 1, edges);
    for (int r = 0; r < static_cast<int>(n) / 2; ++r) EXPECT_TRUE(is_arboreal_ball(X, Face{1}, 2, r)) << r;
    EXPECT_FALSE(is_arboreal_ball(X, Face{1}, 2, static_cast<int>(n) / 2 + 1));
    EXPECT_DOUBLE_EQ(arboreal_fraction(X, 2, 3), 1.0);
}

TEST(IsArboreal, RadiusZeroAlwaysTrue) {
    SeededRng rng(3, 0);
    const auto X = testing_support::random_complex(6, 2, 0.3, rng);
    EXPECT_DOUBLE_EQ(arboreal_fraction(X, 3, 0), 1.0);
}

TEST(IsArboreal, AgreesWithIsomorphismSearch) {
    int positives = 0, negatives = 0;
    struct Case { Vertex n; int d, k, r; };
    const std::vector<Case> cases = {{20, 1, 3, 2}, {12, 1, 3, 2}, {15, 2, 3, 1}, {9, 2, 2, 2}, {13, 2, 2, 2}};
    for (const auto& c : cases) {
        const auto T = arboreal_ball(c.d, c.k, c.r);
        for (int t = 0; t < 6; ++t) {
            SeededRng rng(21, static_cast<std::uint64_t>(t) + 100 * c.n);
            const auto X = steiner_complex(c.n, c.d, c.k, rng);
            for (const Face& s0 : all_subsets(c.n, static_cast<std::size_t>(c.d))) {
                const auto B = ball(X, s0, c.r);
                const bool iso = rooted_isomorphic(T.complex.dfaces(), all_vertices(T.vertex_layers), T.root,
                                                   B.all_dfaces(), all_vertices(B.vertex_layers), s0);
                const bool fast = is_arboreal_ball(X, s0, c.k, c.r);
                EXPECT_EQ(fast, iso);
                (fast ? positives : negatives)++;
            }
        }
    }
    EXPECT_GT(positives, 0);
    EXPECT_GT(negatives, 0);
}

TEST(TreePaths, SmallValues) {
    for (int d = 1; d <= 3; ++d)
        for (int k = 2; k <= 5; ++k) {
            const auto v = signed_path_counts_tree(d, k, 2);
            EXPECT_EQ(v[0], 1);
            EXPECT_EQ(v[1], 0);
            EXPECT_EQ(v[2], d * k);
        }
    EXPECT_EQ(signed_path_count_tree(1, 3, 2), 3);
}

TEST(TreePaths, MatchMatrixPowerOnLargerBall) {
    // (A^l)(root,root) on a ball deep enough that no walk sees the boundary
    for (auto [d, k] : std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {2, 4}, {3, 3}}) {
        const int lmax = 6;
        const auto T = arboreal_ball(d, k, lmax / 2 + 1);
        const FormBasis basis(T.all_ridges());
        const Eigen::MatrixXd A = adjacency_matrix(T.complex, basis);
        Eigen::MatrixXd P = Eigen::MatrixXd::Identity(A.rows(), A.cols());
        const auto v = signed_path_counts_tree(d, k, lmax);
        for (int l = 0; l <= lmax; ++l) {
            EXPECT_NEAR(P(0, 0), static_cast<double>(v[static_cast<std::size_t>(l)]), 1e-6) << d << k << l;
            P = P * A;
        }
    }
}
