#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "steiner/arboreal.hpp"
#include "steiner/complex.hpp"
#include "steiner/sampler.hpp"
#include "steiner/spectra.hpp"
#include "steiner/sst.hpp"

namespace steiner {

struct ExperimentConfig {
    int d = 1;
    int k = 3;
    std::vector<Vertex> ns;
    int trials = 1;
    std::vector<int> radii;
    std::uint64_t seed = 1;
    int lmax = 4;
    std::string out;
    std::string format = "csv";
    unsigned threads = 0;         ///< 0: hardware concurrency
    bool deterministic = false;   ///< drop the timestamp line
    double gap_epsilon = 0.1;

    void validate() const {
        if (d < 1) throw ValidationError("d must be >= 1");
        if (k < 1) throw ValidationError("k must be >= 1");
        if (trials < 0) throw ValidationError("trials must be >= 0");
        if (lmax < 0 || lmax > 12) throw ValidationError("lmax must lie in [0,12]");
        if (format != "csv" && format != "json") throw ValidationError("format must be csv or json");
        for (Vertex n : ns)
            if (n < static_cast<Vertex>(d) + 1 || !is_admissible(n, d))
                throw ValidationError("n=" + std::to_string(n) + " is not admissible for d=" + std::to_string(d));
        for (int r : radii)
            if (r < 0) throw ValidationError("radius must be >= 0");
    }
};

/// Stream id of trial t at size n; adding sizes leaves existing rows unchanged.
inline std::uint64_t trial_stream(Vertex n, int trial) {
    return (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint32_t>(trial);
}

struct ConvergenceRow {
    Vertex n = 0;
    int trial = 0;
    bool ok = true;
    std::string reason;
    double kappa_root = 0;
    double log_kappa = 0;
    bool kappa_zero = false;
    std::size_t trivial_zeros = 0;
    std::vector<double> arboreal_fractions; ///< one per configured radius
    std::vector<double> moments;            ///< Delta moments, l = 0..lmax
    std::size_t min_degree = 0;
    std::size_t max_degree = 0;
    double spectral_floor = 0; ///< smallest non-trivial Delta eigenvalue
};

/// All row statistics of one complex.
inline ConvergenceRow measure_complex(const PureComplex& X, int k, const std::vector<int>& radii, int lmax) {
    ConvergenceRow row;
    row.n = X.n();
    const std::vector<double> eigs = eigenvalues(laplacian_matrix(X));
    row.trivial_zeros = trivial_zero_count(X);
    const PiResult pi = pi_from_spectrum(eigs, row.trivial_zeros);
    const KappaResult kr = kappa_from_pi(pi, X.n(), X.d());
    row.kappa_zero = kr.nontrivial_zero_flag;
    row.log_kappa = kr.log_kappa;
    row.kappa_root = kappa_root(kr, X.n(), X.d());
    row.spectral_floor = pi.smallest_nontrivial;
    row.moments = spectral_moments(eigs, lmax);
    for (int r : radii) row.arboreal_fractions.push_back(arboreal_fraction(X, k, r));
    row.min_degree = min_degree(X);
    row.max_degree = max_degree(X);
    return row;
}

namespace detail {
// Runs job(i) for i in [0,count) on a small pool; results are stored by index.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) job(i);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}
} // namespace detail

/// Optional hook receiving each sampled complex (e.g. to persist it).
using ComplexSink = std::function<void(Vertex n, int trial, const PureComplex&)>;

/// Rows in (n, trial) order; trials whose sampler gave up are kept with ok = false.
inline std::vector<ConvergenceRow> run_converge(const ExperimentConfig& cfg, const ComplexSink& sink = {}) {
    cfg.validate();
    std::vector<std::pair<Vertex, int>> jobs;
    for (Vertex n : cfg.ns)
        for (int t = 0; t < cfg.trials; ++t) jobs.emplace_back(n, t);
    std::vector<ConvergenceRow> rows(jobs.size());
    detail::parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
        const auto [n, t] = jobs[i];
        ConvergenceRow& row = rows[i];
        try {
            SeededRng rng(cfg.seed, trial_stream(n, t));
            const PureComplex X = steiner_complex(n, cfg.d, cfg.k, rng);
            if (sink) sink(n, t, X);
            row = measure_complex(X, cfg.k, cfg.radii, cfg.lmax);
        } catch (const SamplerExhausted& e) {
            row = ConvergenceRow{};
            row.ok = false;
            row.reason = e.what();
        }
        row.n = n;
        row.trial = t;
    });
    return rows;
}

/// Ensemble means over the successful rows of one n.
struct EnsembleMean {
    Vertex n = 0;
    std::size_t rows = 0;
    double kappa_root = 0;
    double log_kappa_root = 0;
    std::vector<double> arboreal_fractions;
    std::vector<double> moments;
    double min_degree = 0;
};

inline std::vector<EnsembleMean> ensemble_means(const std::vector<ConvergenceRow>& rows) {
    std::vector<EnsembleMean> out;
    for (const auto& r : rows) {
        if (!r.ok) continue;
        if (out.empty() || out.back().n != r.n) {
            out.push_back({});
            out.back().n = r.n;
            out.back().arboreal_fractions.assign(r.arboreal_fractions.size(), 0.0);
            out.back().moments.assign(r.moments.size(), 0.0);
        }
        EnsembleMean& m = out.back();
        ++m.rows;
        m.kappa_root += r.kappa_root;
        m.log_kappa_root += r.kappa_zero ? -INFINITY : std::log(r.kappa_root);
        for (std::size_t i = 0; i < r.arboreal_fractions.size(); ++i) m.arboreal_fractions[i] += r.arboreal_fractions[i];
        for (std::size_t i = 0; i < r.moments.size(); ++i) m.moments[i] += r.moments[i];
        m.min_degree += static_cast<double>(r.min_degree);
    }
    for (auto& m : out) {
        const double c = static_cast<double>(m.rows);
        m.kappa_root /= c;
        m.log_kappa_root /= c;
        for (double& v : m.arboreal_fractions) v /= c;
        for (double& v : m.moments) v /= c;
        m.min_degree /= c;
    }
    return out;
}

inline std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

inline void write_converge_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<ConvergenceRow>& rows) {
    os << "# schema=1\n";
    if (!cfg.deterministic) os << "# generated=" << utc_timestamp() << "\n";
    os << "# d=" << cfg.d << " k=" << cfg.k << " seed=" << cfg.seed << "\n";
    os << "n,trial,status,kappa_root,log_kappa,trivial_zeros,min_degree,max_degree,spectral_floor";
    for (int r : cfg.radii) os << ",arboreal_r" << r;
    for (int l = 0; l <= cfg.lmax; ++l) os << ",moment_" << l;
    os << ",reason\n";
    for (const auto& r : rows) {
        os << r.n << ',' << r.trial << ',' << (r.ok ? "ok" : "skipped") << ',' << format_double(r.kappa_root) << ','
           << format_double(r.log_kappa) << ',' << r.trivial_zeros << ',' << r.min_degree << ',' << r.max_degree << ','
           << format_double(r.spectral_floor);
        for (std::size_t i = 0; i < cfg.radii.size(); ++i)
            os << ',' << (i < r.arboreal_fractions.size() ? format_double(r.arboreal_fractions[i]) : "");
        for (int l = 0; l <= cfg.lmax; ++l) {
            const auto ul = static_cast<std::size_t>(l);
            os << ',' << (ul < r.moments.size() ? format_double(r.moments[ul]) : "");
        }
        std::string reason = r.reason;
        std::replace(reason.begin(), reason.end(), ',', ';');
        os << ',' << reason << '\n';
    }
}

/// Orthonormal basis of the complement of the image of the coboundary from
/// (d-2)-forms, as columns.
inline Matrix nontrivial_basis(Vertex n, int d) {
    const IntMatrix<std::int64_t> C = coboundary_matrix(n, d);
    Matrix F(static_cast<Eigen::Index>(C.rows()), static_cast<Eigen::Index>(C.cols()));
    for (std::size_t i = 0; i < C.rows(); ++i)
        for (std::size_t j = 0; j < C.cols(); ++j)
            F(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(C(i, j));
    const auto r = static_cast<Eigen::Index>(trivial_zero_count(n, d));
    Eigen::ColPivHouseholderQR<Matrix> qr(F);
    const Matrix Q = qr.householderQ();
    return Q.rightCols(F.rows() - r);
}

/// Adjacency spectrum restricted to the non-trivial subspace.
inline std::vector<double> nontrivial_adjacency_eigenvalues(const PureComplex& X) {
    const Matrix B = nontrivial_basis(X.n(), X.d());
    const Matrix A = adjacency_matrix(X);
    Matrix R = B.transpose() * A * B;
    R = 0.5 * (R + R.transpose());
    return eigenvalues(R);
}

struct GapTrial {
    int trial = 0;
    bool ok = true;
    std::string reason;
    double largest_nontrivial = 0;
    double threshold = 0;
    bool passes = false;
    std::size_t min_degree = 0;
};

struct GapReport {
    Vertex n = 0;
    int d = 1, k = 2;
    double epsilon = 0;
    std::vector<GapTrial> trials;
    std::vector<std::string> warnings;

    [[nodiscard]] double pass_fraction() const {
        std::size_t ok = 0, pass = 0;
        for (const auto& t : trials)
            if (t.ok) {
                ++ok;
                pass += t.passes;
            }
        return ok ? static_cast<double>(pass) / static_cast<double>(ok) : 0.0;
    }
};

/// Largest non-trivial adjacency eigenvalue per trial against 2d sqrt(k-1) + eps.
inline GapReport run_gap_report(const ExperimentConfig& cfg, Vertex n) {
    cfg.validate();
    if (!is_admissible(n, cfg.d)) throw ValidationError("n is not admissible");
    GapReport rep;
    rep.n = n;
    rep.d = cfg.d;
    rep.k = cfg.k;
    rep.epsilon = cfg.gap_epsilon;
    if (cfg.k <= 4 * cfg.d * cfg.d + cfg.d + 2)
        rep.warnings.push_back("k=" + std::to_string(cfg.k) + " does not exceed 4d^2+d+2=" +
                               std::to_string(4 * cfg.d * cfg.d + cfg.d + 2));
    const double thr = 2.0 * cfg.d * std::sqrt(cfg.k - 1.0) + cfg.gap_epsilon;
    rep.trials.resize(static_cast<std::size_t>(cfg.trials));
    detail::parallel_for(rep.trials.size(), cfg.threads, [&](std::size_t i) {
        GapTrial& g = rep.trials[i];
        g.trial = static_cast<int>(i);
        g.threshold = thr;
        try {
            SeededRng rng(cfg.seed, trial_stream(n, g.trial));
            const PureComplex X = steiner_complex(n, cfg.d, cfg.k, rng);
            const auto ev = nontrivial_adjacency_eigenvalues(X);
            g.largest_nontrivial = ev.empty() ? -INFINITY : ev.back();
            g.passes = g.largest_nontrivial <= thr;
            g.min_degree = min_degree(X);
        } catch (const SamplerExhausted& e) {
            g.ok = false;
            g.reason = e.what();
        }
    });
    return rep;
}

} // namespace steiner
