#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "steiner/complex.hpp"
#include "steiner/rng.hpp"

namespace steiner {

/// A set of (d+1)-subsets of [n] covering every d-subset exactly once.
struct SteinerSystem {
    Vertex n = 0;
    int d = 1;
    std::vector<Face> blocks; ///< sorted
};

/// Necessary divisibility conditions for an (n,d)-Steiner system:
/// (d-j) | C(n-j-1, d-j-1) for 0 <= j <= d-1, and (d+1) | C(n,d).
inline bool is_admissible(Vertex n, int d) {
    if (d < 1 || n < static_cast<Vertex>(d) + 1) return false;
    for (int j = 0; j <= d - 1; ++j) {
        const std::uint64_t c = binomial(n - static_cast<Vertex>(j) - 1, static_cast<std::uint64_t>(d - j - 1));
        if (c % static_cast<std::uint64_t>(d - j) != 0) return false;
    }
    return binomial(n, static_cast<std::uint64_t>(d)) % static_cast<std::uint64_t>(d + 1) == 0;
}

/// Exact-cover validation: every d-subset in exactly one block, C(n,d)/(d+1) blocks.
inline bool is_steiner_system(const SteinerSystem& S) {
    const std::uint64_t ridges = binomial(S.n, static_cast<std::uint64_t>(S.d));
    if (ridges % static_cast<std::uint64_t>(S.d + 1) != 0) return false;
    if (S.blocks.size() != ridges / static_cast<std::uint64_t>(S.d + 1)) return false;
    std::unordered_set<Face> covered;
    covered.reserve(ridges);
    for (const Face& b : S.blocks) {
        if (b.dim() != S.d || b[0] < 1 || b.vertices().back() > S.n) return false;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (!covered.insert(b.facet(i)).second) return false;
    }
    return covered.size() == ridges;
}

/// Applies a uniformly random permutation of [n] to the blocks.
inline SteinerSystem relabel(const SteinerSystem& S, SeededRng& rng) {
    std::vector<Vertex> perm(S.n + 1);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::vector<Vertex> tail(perm.begin() + 1, perm.end());
    rng.shuffle(tail);
    std::copy(tail.begin(), tail.end(), perm.begin() + 1);
    SteinerSystem out{S.n, S.d, {}};
    out.blocks.reserve(S.blocks.size());
    for (const Face& b : S.blocks) {
        std::vector<Vertex> vs;
        vs.reserve(b.size());
        for (Vertex x : b) vs.push_back(perm[x]);
        out.blocks.push_back(Face::from_unsorted(std::move(vs)));
    }
    std::sort(out.blocks.begin(), out.blocks.end());
    return out;
}

/// Uniform perfect matching of [n]: shuffle, then pair consecutive entries.
inline SteinerSystem sample_matching(Vertex n, SeededRng& rng) {
    if (n == 0 || n % 2 != 0) throw ValidationError("perfect matching needs even n, got " + std::to_string(n));
    std::vector<Vertex> xs(n);
    std::iota(xs.begin(), xs.end(), Vertex{1});
    rng.shuffle(xs);
    SteinerSystem S{n, 1, {}};
    S.blocks.reserve(n / 2);
    for (std::size_t i = 0; i < n; i += 2) S.blocks.push_back(Face::from_unsorted({xs[i], xs[i + 1]}));
    std::sort(S.blocks.begin(), S.blocks.end());
    return S;
}

struct StsOptions {
    int max_restarts = 100;
    std::uint64_t iterations_per_n2 = 50;
};

/// Steiner triple system by hill-climbing: pick a live point x and two uncovered
/// partners y, z; add {x,y,z}, evicting the block that already covers {y,z}.
/// A random relabelling is applied to the result.
inline SteinerSystem sample_sts(Vertex n, SeededRng& rng, StsOptions opt = {}) {
    if (!is_admissible(n, 2)) throw ValidationError("no STS of order " + std::to_string(n) + " (need n = 1,3 mod 6)");
    const std::size_t N = n + 1;
    const std::size_t target = binomial(n, 2) / 3;
    const std::uint64_t cap = opt.iterations_per_n2 * static_cast<std::uint64_t>(n) * n;

    for (int attempt = 0; attempt < opt.max_restarts; ++attempt) {
        // third[x*N+y] = third point of the block through {x,y}, 0 if uncovered
        std::vector<Vertex> third(N * N, 0);
        std::vector<Vertex> live_count(N, n - 1);
        std::size_t blocks = 0;
        auto at = [&](Vertex a, Vertex b) -> Vertex& { return third[a * N + b]; };
        auto set_block = [&](Vertex a, Vertex b, Vertex c, bool add) {
            const Vertex v[3] = {a, b, c};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (i != j) at(v[i], v[j]) = add ? v[3 - i - j] : 0;
            for (Vertex x : v) live_count[x] = add ? live_count[x] - 2 : live_count[x] + 2;
            blocks = add ? blocks + 1 : blocks - 1;
        };

        std::vector<Vertex> cand;
        cand.reserve(n);
        for (std::uint64_t it = 0; it < cap && blocks < target; ++it) {
            cand.clear();
            for (Vertex x = 1; x <= n; ++x)
                if (live_count[x] > 0) cand.push_back(x);
            const Vertex x = cand[rng.below(cand.size())];
            cand.clear();
            for (Vertex y = 1; y <= n; ++y)
                if (y != x && at(x, y) == 0) cand.push_back(y);
            const std::size_t iy = rng.below(cand.size());
            std::size_t iz = rng.below(cand.size() - 1);
            if (iz >= iy) ++iz;
            const Vertex y = cand[iy], z = cand[iz];
            if (const Vertex w = at(y, z); w != 0) set_block(w, y, z, false);
            set_block(x, y, z, true);
        }
        if (blocks < target) continue;

        SteinerSystem S{n, 2, {}};
        S.blocks.reserve(target);
        for (Vertex x = 1; x <= n; ++x)
            for (Vertex y = x + 1; y <= n; ++y)
                if (const Vertex z = at(x, y); z > y) S.blocks.push_back(Face{x, y, z});
        if (!is_steiner_system(S)) continue;
        return relabel(S, rng);
    }
    throw SamplerExhausted("STS hill-climbing exceeded restart cap for n=" + std::to_string(n));
}

/// Best-effort randomized greedy for any d: repeatedly cover the most
/// constrained uncovered d-subset with a random admissible vertex; restart on a
/// dead end. d = 1 delegates to sample_matching.
inline SteinerSystem sample_greedy(Vertex n, int d, SeededRng& rng, int max_restarts) {
    if (!is_admissible(n, d))
        throw ValidationError("(n,d)=(" + std::to_string(n) + "," + std::to_string(d) + ") is not admissible");
    if (d == 1) return sample_matching(n, rng);

    std::vector<Face> ridges = all_subsets(n, static_cast<std::size_t>(d));
    const std::size_t target = ridges.size() / static_cast<std::size_t>(d + 1);
    for (int attempt = 0; attempt < max_restarts; ++attempt) {
        std::unordered_set<Face> covered;
        covered.reserve(ridges.size());
        rng.shuffle(ridges);
        SteinerSystem S{n, d, {}};
        bool dead = false;
        std::vector<Vertex> best_cand, cand;
        while (S.blocks.size() < target && !dead) {
            const Face* best = nullptr;
            best_cand.clear();
            for (const Face& sigma : ridges) {
                if (covered.contains(sigma)) continue;
                cand.clear();
                for (Vertex v = 1; v <= n; ++v) {
                    if (sigma.contains(v)) continue;
                    const Face tau = sigma.with(v);
                    bool ok = true;
                    for (std::size_t i = 0; i < tau.size() && ok; ++i)
                        if (covered.contains(tau.facet(i))) ok = false;
                    if (ok) cand.push_back(v);
                }
                if (best == nullptr || cand.size() < best_cand.size()) {
                    best = &sigma;
                    best_cand = cand;
                    if (best_cand.size() <= 1) break;
                }
            }
            if (best_cand.empty()) {
                dead = true;
                break;
            }
            const Face tau = best->with(best_cand[rng.below(best_cand.size())]);
            for (std::size_t i = 0; i < tau.size(); ++i) covered.insert(tau.facet(i));
            S.blocks.push_back(tau);
        }
        if (dead) continue;
        std::sort(S.blocks.begin(), S.blocks.end());
        if (!is_steiner_system(S)) continue;
        return relabel(S, rng);
    }
    throw SamplerExhausted("greedy Steiner sampler exceeded " + std::to_string(max_restarts) + " restarts");
}

/// Default sampler per dimension: matchings, hill-climbed STS, greedy beyond.
inline SteinerSystem sample_steiner_system(Vertex n, int d, SeededRng& rng, int max_restarts = 1000) {
    if (d == 1) return sample_matching(n, rng);
    if (d == 2) return sample_sts(n, rng);
    return sample_greedy(n, d, rng, max_restarts);
}

/// Union of the blocks of the given systems atop the complete (d-1)-skeleton.
inline PureComplex union_complex(Vertex n, int d, const std::vector<SteinerSystem>& systems) {
    std::unordered_set<Face> all;
    for (const auto& S : systems) all.insert(S.blocks.begin(), S.blocks.end());
    return complex_from_dfaces(n, d, std::vector<Face>(all.begin(), all.end()));
}

/// k i.i.d. Steiner systems drawn sequentially from rng, and their union.
inline std::vector<SteinerSystem> sample_systems(Vertex n, int d, int k, SeededRng& rng) {
    if (!is_admissible(n, d))
        throw ValidationError("(n,d)=(" + std::to_string(n) + "," + std::to_string(d) + ") is not admissible");
    if (k < 1) throw ValidationError("k must be >= 1");
    std::vector<SteinerSystem> systems;
    systems.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) systems.push_back(sample_steiner_system(n, d, rng));
    return systems;
}

/// Random (d,k,n)-Steiner complex.
inline PureComplex steiner_complex(Vertex n, int d, int k, SeededRng& rng) {
    return union_complex(n, d, sample_systems(n, d, k, rng));
}

/// Empirical inclusion probabilities of a fixed block and of a fixed pair
/// {v sigma, v sigma'} over independent draws (trial t uses stream t).
struct InclusionReport {
    std::size_t trials = 0;
    Face block;
    std::size_t hits = 0;
    double empirical = 0;
    double expected = 0;  ///< 1/(n-d), exact for permutation-invariant laws
    double std_error = 0; ///< binomial sigma at the expected probability
    double z = 0;
    bool within_4_sigma = false;
    double pair_empirical = 0; ///< P(v sigma, v sigma' both blocks)
    double pair_scaled = 0;    ///< n^2 * pair_empirical, bounded by C_d
};

using SystemSampler = std::function<SteinerSystem(SeededRng&)>;

inline InclusionReport inclusion_frequency_test(const SystemSampler& sampler, Vertex n, int d, std::size_t trials,
                                                std::uint64_t seed = 1) {
    if (trials < 1000) throw ValidationError("inclusion test needs at least 1000 trials");
    InclusionReport rep;
    rep.trials = trials;
    std::vector<Vertex> b(static_cast<std::size_t>(d) + 1);
    std::iota(b.begin(), b.end(), Vertex{1});
    rep.block = Face(b);

    // v = 1, sigma = {2..d+1}, sigma' = {d+2..2d+1}
    const bool pair_defined = n >= 2 * static_cast<Vertex>(d) + 1;
    Face pa, pb;
    if (pair_defined) {
        std::vector<Vertex> s1(static_cast<std::size_t>(d)), s2(static_cast<std::size_t>(d));
        std::iota(s1.begin(), s1.end(), Vertex{2});
        std::iota(s2.begin(), s2.end(), static_cast<Vertex>(d) + 2);
        pa = Face(s1).with(1);
        pb = Face(s2).with(1);
    }
    std::size_t pair_hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        SeededRng rng(seed, t);
        const SteinerSystem S = sampler(rng);
        if (std::binary_search(S.blocks.begin(), S.blocks.end(), rep.block)) ++rep.hits;
        if (pair_defined && std::binary_search(S.blocks.begin(), S.blocks.end(), pa) &&
            std::binary_search(S.blocks.begin(), S.blocks.end(), pb))
            ++pair_hits;
    }
    const double T = static_cast<double>(trials);
    rep.empirical = static_cast<double>(rep.hits) / T;
    rep.expected = 1.0 / static_cast<double>(n - static_cast<Vertex>(d));
    rep.std_error = std::sqrt(rep.expected * (1.0 - rep.expected) / T);
    rep.z = rep.std_error > 0 ? (rep.empirical - rep.expected) / rep.std_error : 0.0;
    rep.within_4_sigma = rep.std_error > 0 ? std::abs(rep.z) <= 4.0 : rep.empirical == rep.expected;
    rep.pair_empirical = static_cast<double>(pair_hits) / T;
    rep.pair_scaled = rep.pair_empirical * static_cast<double>(n) * static_cast<double>(n);
    return rep;
}

} // namespace steiner
