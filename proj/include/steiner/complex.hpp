#pragma once

#include <cstddef>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "steiner/face.hpp"

namespace steiner {

/// A finite pure d-complex on vertices {1..n} with complete (d-1)-skeleton.
/// Only the d-faces are stored; every (d-1)-subset of [n] is implicitly present.
/// Immutable after construction.
class PureComplex {
public:
    PureComplex() = default;

    [[nodiscard]] Vertex n() const { return n_; }
    [[nodiscard]] int d() const { return d_; }
    [[nodiscard]] const std::vector<Face>& dfaces() const { return dfaces_; }
    [[nodiscard]] std::size_t num_dfaces() const { return dfaces_.size(); }

    [[nodiscard]] bool has_dface(const Face& tau) const { return dface_index_.contains(tau); }

    /// Number of d-faces containing the (d-1)-face sigma.
    [[nodiscard]] std::size_t degree(const Face& sigma) const {
        auto it = cofaces_.find(sigma);
        return it == cofaces_.end() ? 0 : it->second.size();
    }

    /// Indices into dfaces() of the d-faces containing sigma.
    [[nodiscard]] const std::vector<std::size_t>& cofaces(const Face& sigma) const {
        static const std::vector<std::size_t> empty;
        auto it = cofaces_.find(sigma);
        return it == cofaces_.end() ? empty : it->second;
    }

    /// (d-1)-faces with nonzero degree, mapped to their coface lists.
    [[nodiscard]] const std::unordered_map<Face, std::vector<std::size_t>>& degree_index() const {
        return cofaces_;
    }

    /// Number of (d-1)-faces in the complete skeleton, C(n,d).
    [[nodiscard]] std::uint64_t num_ridges() const { return binomial(n_, static_cast<std::uint64_t>(d_)); }

    friend PureComplex complex_from_dfaces(Vertex n, int d, std::vector<Face> faces);

private:
    Vertex n_ = 0;
    int d_ = 0;
    std::vector<Face> dfaces_;
    std::unordered_map<Face, std::size_t> dface_index_;
    std::unordered_map<Face, std::vector<std::size_t>> cofaces_;
};

/// Builds a complex from its d-faces. Faces are stored in sorted order.
/// n >= d is accepted so that a lone (d-1)-face (no d-faces) is representable.
inline PureComplex complex_from_dfaces(Vertex n, int d, std::vector<Face> faces) {
    if (d < 1) throw ValidationError("dimension must be >= 1");
    if (n < static_cast<Vertex>(d)) throw ValidationError("need n >= d");
    PureComplex X;
    X.n_ = n;
    X.d_ = d;
    std::sort(faces.begin(), faces.end());
    X.dface_index_.reserve(faces.size());
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const Face& tau = faces[i];
        if (tau.dim() != d)
            throw ValidationError("face has dimension " + std::to_string(tau.dim()) + ", expected " +
                                  std::to_string(d));
        if (tau[0] < 1 || tau.vertices().back() > n)
            throw ValidationError("vertex out of range [1," + std::to_string(n) + "]");
        if (!X.dface_index_.emplace(tau, i).second) throw ValidationError("duplicate d-face");
    }
    X.dfaces_ = std::move(faces);
    for (std::size_t i = 0; i < X.dfaces_.size(); ++i)
        for (std::size_t j = 0; j <= static_cast<std::size_t>(d); ++j)
            X.cofaces_[X.dfaces_[i].facet(j)].push_back(i);
    return X;
}

/// The complete complex K_n^{(d)}.
inline PureComplex complete_complex(Vertex n, int d) {
    return complex_from_dfaces(n, d, all_subsets(n, static_cast<std::size_t>(d) + 1));
}

/// Minimum degree over all C(n,d) ridges (0 if some ridge has no coface).
inline std::size_t min_degree(const PureComplex& X) {
    if (X.degree_index().size() < X.num_ridges()) return 0;
    std::size_t m = std::numeric_limits<std::size_t>::max();
    for (const auto& [f, cof] : X.degree_index()) m = std::min(m, cof.size());
    return m;
}

inline std::size_t max_degree(const PureComplex& X) {
    std::size_t m = 0;
    for (const auto& [f, cof] : X.degree_index()) m = std::max(m, cof.size());
    return m;
}

// ---------------------------------------------------------------------------
// Text format: header "n d", then one d-face per line as sorted vertex ids.

inline void write_complex(std::ostream& os, const PureComplex& X) {
    os << X.n() << ' ' << X.d() << '\n';
    for (const Face& tau : X.dfaces()) {
        for (std::size_t i = 0; i < tau.size(); ++i) os << (i ? " " : "") << tau[i];
        os << '\n';
    }
}

inline std::string to_text(const PureComplex& X) {
    std::ostringstream os;
    write_complex(os, X);
    return os.str();
}

inline PureComplex read_complex(std::istream& is) {
    std::string line;
    long long n = -1, d = -1;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream hs(line);
        if (!(hs >> n >> d)) throw ValidationError("bad header line: '" + line + "'");
        break;
    }
    if (n < 1 || d < 1) throw ValidationError("missing or invalid header");
    std::vector<Face> faces;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<Vertex> vs;
        long long x;
        while (ls >> x) {
            if (x < 1 || x > n) throw ValidationError("vertex out of range in line: '" + line + "'");
            vs.push_back(static_cast<Vertex>(x));
        }
        if (!ls.eof()) throw ValidationError("non-numeric token in line: '" + line + "'");
        faces.push_back(Face(std::move(vs)));
    }
    return complex_from_dfaces(static_cast<Vertex>(n), static_cast<int>(d), std::move(faces));
}

inline PureComplex from_text(const std::string& s) {
    std::istringstream is(s);
    return read_complex(is);
}

// ---------------------------------------------------------------------------

/// Ordered list of (d-1)-faces, each standing for its positive orientation.
/// Index lookup is total over the listed faces.
class FormBasis {
public:
    FormBasis() = default;
    explicit FormBasis(std::vector<Face> faces) : faces_(std::move(faces)) {
        index_.reserve(faces_.size());
        for (std::size_t i = 0; i < faces_.size(); ++i)
            if (!index_.emplace(faces_[i], i).second) throw ValidationError("duplicate basis face");
    }

    /// All C(n,d) ridges of X in lexicographic order.
    static FormBasis complete(const PureComplex& X) {
        return FormBasis(all_subsets(X.n(), static_cast<std::size_t>(X.d())));
    }

    [[nodiscard]] std::size_t size() const { return faces_.size(); }
    [[nodiscard]] const Face& operator[](std::size_t i) const { return faces_[i]; }
    [[nodiscard]] const std::vector<Face>& faces() const { return faces_; }
    [[nodiscard]] std::size_t index(const Face& f) const {
        auto it = index_.find(f);
        if (it == index_.end()) throw ValidationError("face not in basis");
        return it->second;
    }
    [[nodiscard]] bool contains(const Face& f) const { return index_.contains(f); }

private:
    std::vector<Face> faces_;
    std::unordered_map<Face, std::size_t> index_;
};

/// Unoriented line graph: vertices are basis faces, {a,b} adjacent iff a∪b is a d-face.
struct LineGraph {
    FormBasis basis;
    std::vector<std::vector<std::size_t>> adj;
    std::size_t num_edges = 0;
};

inline LineGraph line_graph(const PureComplex& X, FormBasis basis) {
    LineGraph G;
    G.adj.assign(basis.size(), {});
    const auto dd = static_cast<std::size_t>(X.d());
    for (const Face& tau : X.dfaces()) {
        std::vector<std::size_t> ids(dd + 1);
        for (std::size_t i = 0; i <= dd; ++i) ids[i] = basis.index(tau.facet(i));
        for (std::size_t i = 0; i <= dd; ++i)
            for (std::size_t j = i + 1; j <= dd; ++j) {
                G.adj[ids[i]].push_back(ids[j]);
                G.adj[ids[j]].push_back(ids[i]);
                ++G.num_edges;
            }
    }
    G.basis = std::move(basis);
    return G;
}

inline LineGraph line_graph(const PureComplex& X) { return line_graph(X, FormBasis::complete(X)); }

/// Oriented line graph. States are (basis index, orientation): state 2i is the
/// positive orientation of basis face i and 2i+1 its flip. For d = 1 the flip is
/// the identity and only the even states exist (state_count = basis size, ids i).
struct OrientedLineGraph {
    FormBasis basis;
    int d = 1;
    std::vector<std::vector<std::size_t>> adj;

    [[nodiscard]] bool oriented() const { return d >= 2; }
    [[nodiscard]] std::size_t state_count() const { return adj.size(); }
    [[nodiscard]] std::size_t state(std::size_t face_index, int sign) const {
        if (!oriented()) return face_index;
        return 2 * face_index + (sign > 0 ? 0 : 1);
    }
    [[nodiscard]] std::size_t state(const OrientedFace& s) const { return state(basis.index(s.face()), s.sign()); }
    [[nodiscard]] std::size_t flip(std::size_t st) const { return oriented() ? (st ^ 1U) : st; }
    [[nodiscard]] OrientedFace oriented_face(std::size_t st) const {
        if (!oriented()) return {basis[st], 1};
        return {basis[st / 2], (st % 2 == 0) ? 1 : -1};
    }
};

/// sigma ~ sigma' iff some orientation of a d-face tau induces sigma and the flip
/// of sigma' on its boundary, with distinct underlying faces. For sorted tau the
/// facet omitting position i gets sign (-1)^i under the positive orientation.
inline OrientedLineGraph oriented_line_graph(const PureComplex& X, FormBasis basis) {
    OrientedLineGraph G;
    G.d = X.d();
    const bool oriented = X.d() >= 2;
    G.adj.assign(oriented ? 2 * basis.size() : basis.size(), {});
    const auto dd = static_cast<std::size_t>(X.d());
    std::vector<std::size_t> ids(dd + 1);
    for (const Face& tau : X.dfaces()) {
        for (std::size_t i = 0; i <= dd; ++i) ids[i] = basis.index(tau.facet(i));
        for (std::size_t i = 0; i <= dd; ++i)
            for (std::size_t j = 0; j <= dd; ++j) {
                if (i == j) continue;
                if (!oriented) {
                    G.adj[ids[i]].push_back(ids[j]);
                    continue;
                }
                // eps * induced(i) = s, -s' = eps * induced(j)
                for (int eps : {1, -1}) {
                    const int s = eps * induced_sign(i);
                    const int sp = -eps * induced_sign(j);
                    G.adj[G.state(ids[i], s)].push_back(G.state(ids[j], sp));
                }
            }
    }
    G.basis = std::move(basis);
    return G;
}

inline OrientedLineGraph oriented_line_graph(const PureComplex& X) {
    return oriented_line_graph(X, FormBasis::complete(X));
}

} // namespace steiner
