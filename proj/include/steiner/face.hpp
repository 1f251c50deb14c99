#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace steiner {

using Vertex = std::uint32_t;

/// Raised on malformed input: wrong dimension, vertex out of range, duplicates,
/// inadmissible parameters.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a randomized sampler exhausts its restart budget.
class SamplerExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a combinatorial guard (radius, walk length, enumeration size) trips.
class GuardExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Binomial coefficient as a 64-bit integer. Throws on overflow.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > UINT64_MAX) throw std::overflow_error("binomial overflow");
    }
    return static_cast<std::uint64_t>(acc);
}

/// A face of a simplicial complex: strictly increasing 1-based vertex ids.
class Face {
public:
    Face() = default;
    Face(std::initializer_list<Vertex> vs) : Face(std::vector<Vertex>(vs)) {}
    explicit Face(std::vector<Vertex> vs) : v_(std::move(vs)) {
        for (std::size_t i = 1; i < v_.size(); ++i)
            if (v_[i - 1] >= v_[i])
                throw ValidationError("face vertices must be strictly increasing");
    }

    /// Sorts an arbitrary vertex list; rejects repeated vertices.
    static Face from_unsorted(std::vector<Vertex> vs) {
        std::sort(vs.begin(), vs.end());
        return Face(std::move(vs));
    }

    [[nodiscard]] int dim() const { return static_cast<int>(v_.size()) - 1; }
    [[nodiscard]] std::size_t size() const { return v_.size(); }
    [[nodiscard]] const std::vector<Vertex>& vertices() const { return v_; }
    [[nodiscard]] Vertex operator[](std::size_t i) const { return v_[i]; }
    [[nodiscard]] auto begin() const { return v_.begin(); }
    [[nodiscard]] auto end() const { return v_.end(); }

    [[nodiscard]] bool contains(Vertex x) const {
        return std::binary_search(v_.begin(), v_.end(), x);
    }

    /// Facet obtained by dropping the vertex at position i.
    [[nodiscard]] Face facet(std::size_t i) const {
        std::vector<Vertex> out;
        out.reserve(v_.size() - 1);
        for (std::size_t j = 0; j < v_.size(); ++j)
            if (j != i) out.push_back(v_[j]);
        Face f;
        f.v_ = std::move(out);
        return f;
    }

    /// This face with vertex x added (x must not already be present).
    [[nodiscard]] Face with(Vertex x) const {
        std::vector<Vertex> out(v_);
        out.insert(std::lower_bound(out.begin(), out.end(), x), x);
        return Face(std::move(out));
    }

    friend bool operator==(const Face&, const Face&) = default;
    friend auto operator<=>(const Face&, const Face&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Face& f) {
        os << '{';
        for (std::size_t i = 0; i < f.v_.size(); ++i) os << (i ? "," : "") << f.v_[i];
        return os << '}';
    }

private:
    std::vector<Vertex> v_;
};

struct FaceHash {
    std::size_t operator()(const Face& f) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (Vertex x : f) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

/// Sign of the permutation that sorts `seq` (seq must have distinct entries).
inline int permutation_parity(const std::vector<Vertex>& seq) {
    int sign = 1;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) sign = -sign;
    return sign;
}

/// A (d-1)-face together with an orientation, stored canonically as the sorted
/// face and the parity of the chosen ordering relative to sorted order.
/// For 0-faces the sign is always +1 and flip() is the identity.
class OrientedFace {
public:
    OrientedFace() = default;
    OrientedFace(Face f, int sign) : face_(std::move(f)), sign_(sign >= 0 ? 1 : -1) {
        if (face_.dim() == 0) sign_ = 1;
    }

    /// Orientation given by an explicit vertex ordering.
    static OrientedFace from_ordering(const std::vector<Vertex>& ordering) {
        return {Face::from_unsorted(ordering), permutation_parity(ordering)};
    }

    [[nodiscard]] const Face& face() const { return face_; }
    [[nodiscard]] int sign() const { return sign_; }
    [[nodiscard]] OrientedFace flip() const { return {face_, -sign_}; }

    friend bool operator==(const OrientedFace&, const OrientedFace&) = default;
    friend auto operator<=>(const OrientedFace&, const OrientedFace&) = default;

private:
    Face face_;
    int sign_ = 1;
};

/// Sign induced on the facet omitting position i by the positive orientation
/// of a sorted face.
constexpr int induced_sign(std::size_t i) { return (i % 2 == 0) ? 1 : -1; }

/// All k-subsets of {1..n} in lexicographic order.
inline std::vector<Face> all_subsets(Vertex n, std::size_t k) {
    std::vector<Face> out;
    if (k > n) return out;
    out.reserve(binomial(n, k));
    std::vector<Vertex> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = static_cast<Vertex>(i + 1);
    while (true) {
        out.emplace_back(cur);
        if (k == 0) break;
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

} // namespace steiner

template <>
struct std::hash<steiner::Face> {
    std::size_t operator()(const steiner::Face& f) const noexcept { return steiner::FaceHash{}(f); }
};
