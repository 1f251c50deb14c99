#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <unordered_map>
#include <vector>

#include "steiner/complex.hpp"

namespace steiner {

/// The r-neighbouring complex X(sigma0, r): ridges within line-graph distance r
/// of sigma0, the d-faces all of whose facets are among them, and the vertices
/// they span. Layer rho holds what first appears at radius rho.
struct NeighborhoodComplex {
    Face center;
    int radius = 0;
    std::vector<std::vector<Vertex>> vertex_layers;
    std::vector<std::vector<Face>> ridge_layers;
    std::vector<std::vector<Face>> dface_layers;
    std::unordered_map<Face, int> distance; ///< line-graph distance of each ridge in B_r

    [[nodiscard]] std::size_t num_vertices() const {
        std::size_t s = 0;
        for (const auto& l : vertex_layers) s += l.size();
        return s;
    }
    [[nodiscard]] std::size_t num_dfaces() const {
        std::size_t s = 0;
        for (const auto& l : dface_layers) s += l.size();
        return s;
    }
    /// Cumulative vertex count |X^0(sigma0, rho)|.
    [[nodiscard]] std::size_t vertices_upto(int rho) const {
        std::size_t s = 0;
        for (int i = 0; i <= rho && i <= radius; ++i) s += vertex_layers[static_cast<std::size_t>(i)].size();
        return s;
    }
    [[nodiscard]] std::vector<Face> all_dfaces() const {
        std::vector<Face> out;
        for (const auto& l : dface_layers) out.insert(out.end(), l.begin(), l.end());
        std::sort(out.begin(), out.end());
        return out;
    }
    /// Degree of a ridge inside the neighbourhood complex.
    [[nodiscard]] std::size_t degree_in_ball(const Face& sigma) const {
        std::size_t c = 0;
        for (const auto& l : dface_layers)
            for (const Face& tau : l)
                if (std::includes(tau.begin(), tau.end(), sigma.begin(), sigma.end())) ++c;
        return c;
    }
};

/// Breadth-first ball around sigma0 in the line graph of X.
inline NeighborhoodComplex ball(const PureComplex& X, const Face& sigma0, int r) {
    if (sigma0.dim() != X.d() - 1) throw ValidationError("ball center must be a (d-1)-face");
    if (r < 0) throw ValidationError("radius must be >= 0");
    NeighborhoodComplex B;
    B.center = sigma0;
    B.radius = r;
    const auto ur = static_cast<std::size_t>(r);
    B.vertex_layers.assign(ur + 1, {});
    B.ridge_layers.assign(ur + 1, {});
    B.dface_layers.assign(ur + 1, {});

    B.distance.emplace(sigma0, 0);
    B.ridge_layers[0].push_back(sigma0);
    for (int rho = 0; rho < r; ++rho) {
        for (const Face& sigma : B.ridge_layers[static_cast<std::size_t>(rho)]) {
            for (std::size_t ti : X.cofaces(sigma)) {
                const Face& tau = X.dfaces()[ti];
                for (std::size_t i = 0; i < tau.size(); ++i) {
                    Face f = tau.facet(i);
                    if (B.distance.emplace(f, rho + 1).second)
                        B.ridge_layers[static_cast<std::size_t>(rho) + 1].push_back(std::move(f));
                }
            }
        }
    }
    for (auto& layer : B.ridge_layers) std::sort(layer.begin(), layer.end());

    // Vertices: first radius at which some ridge containing them appears.
    std::unordered_map<Vertex, int> vdist;
    for (int rho = 0; rho <= r; ++rho)
        for (const Face& sigma : B.ridge_layers[static_cast<std::size_t>(rho)])
            for (Vertex v : sigma)
                if (vdist.emplace(v, rho).second) B.vertex_layers[static_cast<std::size_t>(rho)].push_back(v);
    for (auto& layer : B.vertex_layers) std::sort(layer.begin(), layer.end());

    // d-faces: all facets in B_r; layer = farthest facet.
    std::set<std::size_t> seen;
    for (int rho = 0; rho <= r; ++rho) {
        for (const Face& sigma : B.ridge_layers[static_cast<std::size_t>(rho)]) {
            for (std::size_t ti : X.cofaces(sigma)) {
                if (!seen.insert(ti).second) continue;
                const Face& tau = X.dfaces()[ti];
                int far = 0;
                bool inside = true;
                for (std::size_t i = 0; i < tau.size() && inside; ++i) {
                    auto it = B.distance.find(tau.facet(i));
                    if (it == B.distance.end()) inside = false;
                    else far = std::max(far, it->second);
                }
                if (inside) B.dface_layers[static_cast<std::size_t>(far)].push_back(tau);
            }
        }
    }
    for (auto& layer : B.dface_layers) std::sort(layer.begin(), layer.end());
    return B;
}

} // namespace steiner
