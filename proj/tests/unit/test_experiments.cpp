#include <gtest/gtest.h>

#include <map>
#include <mutex>
#include <sstream>

#include "test_support.hpp"

using namespace steiner;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.d = 2;
    cfg.k = 3;
    cfg.ns = {9, 13};
    cfg.trials = 3;
    cfg.radii = {1, 2};
    cfg.seed = 42;
    cfg.lmax = 4;
    cfg.deterministic = true;
    return cfg;
}

std::string csv(const ExperimentConfig& cfg, const std::vector<ConvergenceRow>& rows) {
    std::ostringstream os;
    write_converge_csv(os, cfg, rows);
    return os.str();
}

} // namespace

TEST(Converge, ZeroTrialsGiveEmptyTable) {
    auto cfg = small_config();
    cfg.trials = 0;
    EXPECT_TRUE(run_converge(cfg).empty());
}

TEST(Converge, ValidatesConfig) {
    auto cfg = small_config();
    cfg.ns = {10};
    EXPECT_THROW(run_converge(cfg), ValidationError);
    cfg = small_config();
    cfg.format = "xml";
    EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(Converge, DeterministicAcrossThreadCounts) {
    auto cfg = small_config();
    cfg.threads = 1;
    const auto a = csv(cfg, run_converge(cfg));
    cfg.threads = 3;
    const auto b = csv(cfg, run_converge(cfg));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.rfind("# schema=1\n", 0), 0u);
    EXPECT_EQ(a.find("generated="), std::string::npos);
    cfg.deterministic = false;
    EXPECT_NE(csv(cfg, run_converge(cfg)).find("generated="), std::string::npos);
}

TEST(Converge, AddingSizesKeepsRows) {
    auto cfg = small_config();
    cfg.ns = {13};
    const auto a = run_converge(cfg);
    cfg.ns = {7, 13};
    const auto b = run_converge(cfg);
    ASSERT_EQ(b.size(), a.size() + 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].kappa_root, b[i + 3].kappa_root);
        EXPECT_EQ(a[i].moments, b[i + 3].moments);
    }
}

TEST(Converge, RowsAreReproducibleFromSavedComplexes) {
    auto cfg = small_config();
    std::map<std::pair<Vertex, int>, std::string> saved;
    std::mutex mu;
    const auto rows = run_converge(cfg, [&](Vertex n, int t, const PureComplex& X) {
        std::lock_guard lock(mu);
        saved[{n, t}] = to_text(X);
    });
    ASSERT_EQ(saved.size(), rows.size());
    for (const auto& r : rows) {
        const auto again = measure_complex(from_text(saved[{r.n, r.trial}]), cfg.k, cfg.radii, cfg.lmax);
        EXPECT_EQ(again.kappa_root, r.kappa_root);
        EXPECT_EQ(again.moments, r.moments);
        EXPECT_EQ(again.arboreal_fractions, r.arboreal_fractions);
        EXPECT_EQ(again.spectral_floor, r.spectral_floor);
        EXPECT_EQ(again.min_degree, r.min_degree);
    }
}

TEST(Converge, RowInvariants) {
    const auto rows = run_converge(small_config());
    for (const auto& r : rows) {
        EXPECT_TRUE(r.ok);
        EXPECT_GE(r.kappa_root, 0.0);
        for (double f : r.arboreal_fractions) {
            EXPECT_GE(f, 0.0);
            EXPECT_LE(f, 1.0);
        }
        EXPECT_NEAR(r.moments[0], 1.0, 1e-12);
    }
    const auto means = ensemble_means(rows);
    ASSERT_EQ(means.size(), 2u);
    EXPECT_EQ(means[0].rows, 3u);
}

TEST(Converge, CubicGraphsApproachLimit) {
    ExperimentConfig cfg;
    cfg.d = 1;
    cfg.k = 3;
    cfg.ns = {50, 200};
    cfg.trials = 20;
    cfg.radii = {2};
    const auto m = ensemble_means(run_converge(cfg));
    ASSERT_EQ(m.size(), 2u);
    const double lx = log_xi_closed_form(1, 3);
    const double e50 = std::abs(std::log(m[0].kappa_root) - lx);
    const double e200 = std::abs(std::log(m[1].kappa_root) - lx);
    EXPECT_LT(e200, e50);
    EXPECT_LE(e200, 0.05);
    EXPECT_GT(m[1].arboreal_fractions[0], m[0].arboreal_fractions[0]);
    EXPECT_GE(m[1].arboreal_fractions[0], 0.8);
}

TEST(Gap, NontrivialSpectrumOfCompleteGraph) {
    const auto ev = nontrivial_adjacency_eigenvalues(complete_complex(6, 1));
    ASSERT_EQ(ev.size(), 5u);
    for (double x : ev) EXPECT_NEAR(x, -1.0, 1e-10);
}

TEST(Gap, WarningsAndInfiniteEpsilon) {
    ExperimentConfig cfg;
    cfg.d = 1;
    cfg.k = 4;
    cfg.trials = 4;
    cfg.gap_epsilon = INFINITY;
    const auto rep = run_gap_report(cfg, 20);
    EXPECT_FALSE(rep.warnings.empty());
    EXPECT_DOUBLE_EQ(rep.pass_fraction(), 1.0);
    cfg.k = 8;
    EXPECT_TRUE(run_gap_report(cfg, 20).warnings.empty());
}

TEST(Gap, TwoDimensionalTrivialPartRemoved) {
    // for k-regular complexes Delta = kI - A, so the non-trivial A spectrum is k minus the non-zero Delta spectrum
    SeededRng rng(3, 0);
    const auto X = steiner_complex(9, 2, 1, rng);
    auto a = nontrivial_adjacency_eigenvalues(X);
    auto l = eigenvalues(laplacian_matrix(X));
    l.erase(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(trivial_zero_count(X)));
    ASSERT_EQ(a.size(), l.size());
    std::vector<double> b;
    for (double x : l) b.push_back(1.0 - x);
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
}
