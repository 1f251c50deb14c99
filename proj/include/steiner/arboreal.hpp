#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "steiner/complex.hpp"
#include "steiner/neighborhood.hpp"

namespace steiner {

/// Per-layer face counts of the truncated arboreal complex T_{d,k}(r).
struct LayerSizes {
    std::vector<std::uint64_t> vertices;            ///< |dT^0(rho)|
    std::vector<std::uint64_t> ridges;              ///< |dT^{d-1}(rho)|
    std::vector<std::uint64_t> dfaces;              ///< |dT^d(rho)|
    std::vector<std::uint64_t> cumulative_vertices; ///< |T^0(rho)|
};

/// Closed-form layer counts: for rho >= 1, |dT^d(rho)| = k (k-1)^{rho-1} d^{rho-1},
/// one fresh vertex per d-face, d fresh ridges per d-face.
inline LayerSizes layer_sizes(int d, int k, int r) {
    if (d < 1 || k < 2 || r < 0) throw ValidationError("layer_sizes needs d >= 1, k >= 2, r >= 0");
    LayerSizes L;
    const auto ud = static_cast<std::uint64_t>(d), uk = static_cast<std::uint64_t>(k);
    L.vertices.push_back(ud);
    L.ridges.push_back(1);
    L.dfaces.push_back(0);
    L.cumulative_vertices.push_back(ud);
    std::uint64_t grow = 1; // (d(k-1))^{rho-1}
    for (int rho = 1; rho <= r; ++rho) {
        const std::uint64_t df = uk * grow;
        L.dfaces.push_back(df);
        L.vertices.push_back(df);
        L.ridges.push_back(ud * df);
        L.cumulative_vertices.push_back(L.cumulative_vertices.back() + df);
        grow *= ud * (uk - 1);
    }
    return L;
}

/// Cumulative vertex count d + k((d(k-1))^r - 1)/(d(k-1) - 1), or d + k r when d(k-1) = 1.
inline std::uint64_t arboreal_vertex_count(int d, int k, int r) {
    const auto q = static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(k - 1);
    const auto ud = static_cast<std::uint64_t>(d), uk = static_cast<std::uint64_t>(k);
    if (q == 1) return ud + uk * static_cast<std::uint64_t>(r);
    std::uint64_t pw = 1;
    for (int i = 0; i < r; ++i) pw *= q;
    return ud + uk * (pw - 1) / (q - 1);
}

struct ArborealOptions {
    int r_max = 12;
    std::uint64_t max_dfaces = 20'000'000;
};

/// Explicit truncation T_{d,k}(r) rooted at the ridge {1..d}.
struct ArborealBall {
    int d = 1;
    int k = 2;
    int r = 0;
    Face root;
    PureComplex complex;
    std::vector<std::vector<Vertex>> vertex_layers;
    std::vector<std::vector<Face>> ridge_layers;
    std::vector<std::vector<Face>> dface_layers;

    [[nodiscard]] std::vector<Face> all_ridges() const {
        std::vector<Face> out;
        for (const auto& l : ridge_layers) out.insert(out.end(), l.begin(), l.end());
        return out;
    }
};

/// Root ridge gets k d-faces; every ridge added at layer rho >= 1 gets k-1 more,
/// each with a fresh vertex.
inline ArborealBall arboreal_ball(int d, int k, int r, ArborealOptions opt = {}) {
    if (d < 1 || k < 2 || r < 0) throw ValidationError("arboreal_ball needs d >= 1, k >= 2, r >= 0");
    if (r > opt.r_max) throw GuardExceeded("radius " + std::to_string(r) + " exceeds r_max " + std::to_string(opt.r_max));
    {
        double total = 0, layer = k;
        for (int rho = 1; rho <= r; ++rho, layer *= static_cast<double>(d) * (k - 1)) total += layer;
        if (total > static_cast<double>(opt.max_dfaces))
            throw GuardExceeded("arboreal ball would hold " + std::to_string(total) + " d-faces");
    }
    ArborealBall T;
    T.d = d;
    T.k = k;
    T.r = r;
    std::vector<Vertex> rv(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) rv[static_cast<std::size_t>(i)] = static_cast<Vertex>(i + 1);
    T.root = Face(rv);
    T.vertex_layers.assign(static_cast<std::size_t>(r) + 1, {});
    T.ridge_layers.assign(static_cast<std::size_t>(r) + 1, {});
    T.dface_layers.assign(static_cast<std::size_t>(r) + 1, {});
    T.vertex_layers[0] = rv;
    T.ridge_layers[0] = {T.root};

    Vertex next = static_cast<Vertex>(d) + 1;
    std::vector<Face> all;
    for (int rho = 1; rho <= r; ++rho) {
        const auto ur = static_cast<std::size_t>(rho);
        const int children = (rho == 1) ? k : k - 1;
        for (const Face& sigma : T.ridge_layers[ur - 1]) {
            for (int c = 0; c < children; ++c) {
                const Vertex v = next++;
                Face tau = sigma.with(v);
                T.vertex_layers[ur].push_back(v);
                for (std::size_t i = 0; i < tau.size(); ++i) {
                    Face f = tau.facet(i);
                    if (f.contains(v)) T.ridge_layers[ur].push_back(std::move(f));
                }
                T.dface_layers[ur].push_back(tau);
                all.push_back(std::move(tau));
            }
        }
    }
    T.complex = complex_from_dfaces(next - 1, d, std::move(all));
    return T;
}

/// Local test that X(sigma0, r) is isomorphic to T_{d,k}(r): cumulative vertex
/// counts and d-face layer counts match the arboreal ones for every rho <= r,
/// and every ridge within distance r-1 of sigma0 has degree k in X.
inline bool is_arboreal_ball(const PureComplex& X, const Face& sigma0, int k, int r) {
    if (r == 0) return true;
    if (X.degree(sigma0) != static_cast<std::size_t>(k)) return false;
    const NeighborhoodComplex B = ball(X, sigma0, r);
    const LayerSizes L = layer_sizes(X.d(), k, r);
    for (int rho = 0; rho <= r; ++rho) {
        const auto ur = static_cast<std::size_t>(rho);
        if (B.vertices_upto(rho) != L.cumulative_vertices[ur]) return false;
        if (B.dface_layers[ur].size() != L.dfaces[ur]) return false;
    }
    for (int rho = 0; rho <= r - 1; ++rho)
        for (const Face& sigma : B.ridge_layers[static_cast<std::size_t>(rho)])
            if (X.degree(sigma) != static_cast<std::size_t>(k)) return false;
    return true;
}

/// Fraction of all C(n,d) ridges whose r-neighbourhood is arboreal.
inline double arboreal_fraction(const PureComplex& X, int k, int r) {
    if (r == 0) return 1.0;
    const auto ridges = all_subsets(X.n(), static_cast<std::size_t>(X.d()));
    std::size_t good = 0;
    for (const Face& sigma : ridges)
        if (is_arboreal_ball(X, sigma, k, r)) ++good;
    return ridges.empty() ? 1.0 : static_cast<double>(good) / static_cast<double>(ridges.size());
}

/// phi_l(sigma0,sigma0) - phi_l(sigma0, flip sigma0) in the oriented line graph of
/// T_{d,k} for l = 0..lmax, by walk counting on the explicit truncation of
/// radius ceil(lmax/2)+1. For d = 1 the flip is trivial and the value is phi_l.
inline std::vector<std::int64_t> signed_path_counts_tree(int d, int k, int lmax, ArborealOptions opt = {}) {
    if (lmax < 0) throw ValidationError("walk length must be >= 0");
    {
        double bound = 1;
        for (int i = 0; i < lmax; ++i) bound *= static_cast<double>(d) * k;
        if (bound > 4.0e18) throw GuardExceeded("walk counts would overflow 64-bit integers");
    }
    const ArborealBall T = arboreal_ball(d, k, (lmax + 1) / 2 + 1, opt);
    const OrientedLineGraph G = oriented_line_graph(T.complex, FormBasis(T.all_ridges()));
    const std::size_t start = G.state(0, 1);
    const std::size_t flipped = G.flip(start);

    std::vector<std::int64_t> cur(G.state_count(), 0), nxt(G.state_count(), 0);
    cur[start] = 1;
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(lmax) + 1);
    for (int l = 0; l <= lmax; ++l) {
        out.push_back(G.oriented() ? cur[start] - cur[flipped] : cur[start]);
        if (l == lmax) break;
        std::fill(nxt.begin(), nxt.end(), 0);
        for (std::size_t s = 0; s < cur.size(); ++s)
            if (cur[s] != 0)
                for (std::size_t t : G.adj[s]) nxt[t] += cur[s];
        cur.swap(nxt);
    }
    return out;
}

inline std::int64_t signed_path_count_tree(int d, int k, int l, ArborealOptions opt = {}) {
    return signed_path_counts_tree(d, k, l, opt).back();
}

} // namespace steiner
