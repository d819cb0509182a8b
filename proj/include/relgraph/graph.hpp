#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "relgraph/error.hpp"

namespace relgraph {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Subset of the vertices of one graph, indexed by VertexId.
using VertexSet = boost::dynamic_bitset<>;

struct EdgeRecord {
    std::string id;
    std::string src;
    std::string dst;

    friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

// Unvalidated graph description, as read from JSON.
struct GraphSpec {
    std::vector<std::string> vertices;
    std::vector<EdgeRecord> edges;
};

/// Finite directed graph E = (E^0, E^1, r, s) with src = s(e), dst = r(e).
///
/// Only obtainable through Graph::validate, so every instance satisfies the
/// invariants: declared endpoints, unique vertex ids, unique edge ids. Vertex
/// and edge indices follow the lexicographic order of their ids, which fixes
/// every enumeration order in the library.
class Graph {
public:
    static Graph validate(GraphSpec spec) {
        std::sort(spec.vertices.begin(), spec.vertices.end());
        if (auto dup = std::adjacent_find(spec.vertices.begin(), spec.vertices.end());
            dup != spec.vertices.end()) {
            throw domain_error("duplicate_id", "duplicate vertex id '" + *dup + "'");
        }
        std::sort(spec.edges.begin(), spec.edges.end(),
                  [](const EdgeRecord& a, const EdgeRecord& b) { return a.id < b.id; });
        for (std::size_t k = 1; k < spec.edges.size(); ++k) {
            if (spec.edges[k].id == spec.edges[k - 1].id) {
                throw domain_error("duplicate_id", "duplicate edge id '" + spec.edges[k].id + "'");
            }
        }

        Graph g;
        g.vertices_ = std::move(spec.vertices);
        g.out_.resize(g.vertices_.size());
        g.in_.resize(g.vertices_.size());
        for (VertexId v = 0; v < g.vertices_.size(); ++v) {
            g.vertex_index_.emplace(g.vertices_[v], v);
        }
        for (EdgeId e = 0; e < spec.edges.size(); ++e) {
            const EdgeRecord& rec = spec.edges[e];
            auto s = g.find_vertex(rec.src);
            auto d = g.find_vertex(rec.dst);
            if (!s || !d) {
                throw domain_error("dangling_edge", "edge '" + rec.id + "' has undeclared endpoint '" +
                                                        (s ? rec.dst : rec.src) + "'");
            }
            g.edges_.push_back(rec.id);
            g.src_.push_back(*s);
            g.dst_.push_back(*d);
            g.edge_index_.emplace(rec.id, e);
            g.out_[*s].push_back(e);
            g.in_[*d].push_back(e);
        }
        return g;
    }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
    const std::string& edge_name(EdgeId e) const { return edges_.at(e); }

    VertexId src(EdgeId e) const { return src_.at(e); }
    VertexId dst(EdgeId e) const { return dst_.at(e); }

    std::span<const EdgeId> out_edges(VertexId v) const { return out_.at(v); }
    std::span<const EdgeId> in_edges(VertexId v) const { return in_.at(v); }

    std::optional<VertexId> find_vertex(std::string_view name) const {
        auto it = vertex_index_.find(std::string(name));
        return it == vertex_index_.end() ? std::nullopt : std::optional<VertexId>(it->second);
    }
    std::optional<EdgeId> find_edge(std::string_view name) const {
        auto it = edge_index_.find(std::string(name));
        return it == edge_index_.end() ? std::nullopt : std::optional<EdgeId>(it->second);
    }

    VertexId vertex(std::string_view name) const {
        if (auto v = find_vertex(name)) {
            return *v;
        }
        throw domain_error("unknown_vertex", "unknown vertex '" + std::string(name) + "'");
    }
    EdgeId edge(std::string_view name) const {
        if (auto e = find_edge(name)) {
            return *e;
        }
        throw domain_error("unknown_edge", "unknown edge '" + std::string(name) + "'");
    }

    GraphSpec spec() const {
        GraphSpec s{vertices_, {}};
        for (EdgeId e = 0; e < edges_.size(); ++e) {
            s.edges.push_back({edges_[e], vertices_[src_[e]], vertices_[dst_[e]]});
        }
        return s;
    }

    VertexSet empty_set() const { return VertexSet(vertex_count()); }
    VertexSet full_set() const { return ~empty_set(); }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.src_ == b.src_ && a.dst_ == b.dst_;
    }

private:
    Graph() = default;

    std::vector<std::string> vertices_;
    std::vector<std::string> edges_;
    std::vector<VertexId> src_;
    std::vector<VertexId> dst_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> in_;
    std::unordered_map<std::string, VertexId> vertex_index_;
    std::unordered_map<std::string, EdgeId> edge_index_;
};

using GraphHandle = std::shared_ptr<const Graph>;

inline GraphHandle make_graph(GraphSpec spec) {
    return std::make_shared<const Graph>(Graph::validate(std::move(spec)));
}

inline Graph validate(GraphSpec spec) { return Graph::validate(std::move(spec)); }

// ---------------------------------------------------------------------------
// vertex sets

inline VertexSet vertex_set(const Graph& g, std::span<const std::string> names) {
    VertexSet s = g.empty_set();
    for (const auto& n : names) {
        s.set(g.vertex(n));
    }
    return s;
}

inline VertexSet vertex_set(const Graph& g, std::initializer_list<std::string_view> names) {
    VertexSet s = g.empty_set();
    for (auto n : names) {
        s.set(g.vertex(n));
    }
    return s;
}

inline std::vector<std::string> vertex_names(const Graph& g, const VertexSet& s) {
    std::vector<std::string> out;
    for (auto v = s.find_first(); v != VertexSet::npos; v = s.find_next(v)) {
        out.push_back(g.vertex_name(static_cast<VertexId>(v)));
    }
    return out;
}

inline void require_subset_of(const Graph& g, const VertexSet& s) {
    if (s.size() != g.vertex_count()) {
        throw domain_error("set_mismatch", "vertex set does not belong to this graph");
    }
}

// Re-index a set between graphs that share vertex ids. Every member must exist
// in `to`.
inline VertexSet translate(const Graph& from, const VertexSet& s, const Graph& to) {
    VertexSet out = to.empty_set();
    for (auto v = s.find_first(); v != VertexSet::npos; v = s.find_next(v)) {
        out.set(to.vertex(from.vertex_name(static_cast<VertexId>(v))));
    }
    return out;
}

// ---------------------------------------------------------------------------
// paths

/// Composable edge sequence, stored source-to-range. A length-0 path is a
/// vertex.
class Path {
public:
    static Path vertex(const Graph& g, VertexId v) {
        if (v >= g.vertex_count()) {
            throw domain_error("unknown_vertex", "vertex index out of range");
        }
        return Path(v, {}, v);
    }

    static Path of_edges(const Graph& g, std::vector<EdgeId> edges) {
        if (edges.empty()) {
            throw domain_error("empty_path", "edge path must be nonempty; use a vertex path");
        }
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (edges[k] >= g.edge_count()) {
                throw domain_error("unknown_edge", "edge index out of range");
            }
            if (k > 0 && g.dst(edges[k - 1]) != g.src(edges[k])) {
                throw domain_error("not_composable", "edges '" + g.edge_name(edges[k - 1]) + "' and '" +
                                                         g.edge_name(edges[k]) + "' are not composable");
            }
        }
        VertexId s = g.src(edges.front());
        VertexId r = g.dst(edges.back());
        return Path(s, std::move(edges), r);
    }

    static Path of_names(const Graph& g, std::span<const std::string> edge_names) {
        std::vector<EdgeId> ids;
        for (const auto& n : edge_names) {
            ids.push_back(g.edge(n));
        }
        return of_edges(g, std::move(ids));
    }

    std::size_t length() const { return edges_.size(); }
    VertexId source() const { return source_; }
    VertexId range() const { return range_; }
    const std::vector<EdgeId>& edges() const { return edges_; }

    // this·other; requires range() == other.source().
    Path concat(const Path& other) const {
        if (range_ != other.source_) {
            throw domain_error("not_composable", "path concatenation across different vertices");
        }
        if (other.edges_.empty()) {
            return *this;
        }
        std::vector<EdgeId> e = edges_;
        e.insert(e.end(), other.edges_.begin(), other.edges_.end());
        return Path(source_, std::move(e), other.range_);
    }

    Path extended(const Graph& g, EdgeId e) const {
        if (g.src(e) != range_) {
            throw domain_error("not_composable", "edge does not start at path range");
        }
        std::vector<EdgeId> out = edges_;
        out.push_back(e);
        return Path(source_, std::move(out), g.dst(e));
    }

    bool is_prefix_of(const Path& other) const {
        if (source_ != other.source_ || edges_.size() > other.edges_.size()) {
            return false;
        }
        return std::equal(edges_.begin(), edges_.end(), other.edges_.begin());
    }

    // Remainder of `other` after this prefix; requires is_prefix_of(other).
    Path suffix_of(const Path& other) const {
        if (edges_.size() == other.edges_.size()) {
            return Path(other.range_, {}, other.range_);
        }
        std::vector<EdgeId> rest(other.edges_.begin() + static_cast<std::ptrdiff_t>(edges_.size()),
                                 other.edges_.end());
        return Path(range_, std::move(rest), other.range_);
    }

    std::string to_string(const Graph& g) const {
        if (edges_.empty()) {
            return g.vertex_name(source_);
        }
        std::string s;
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            s += (k ? "." : "") + g.edge_name(edges_[k]);
        }
        return s;
    }

    friend bool operator==(const Path& a, const Path& b) {
        return a.source_ == b.source_ && a.edges_ == b.edges_;
    }
    // length first, then edges lexicographically, then base vertex
    friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
        if (auto c = a.edges_.size() <=> b.edges_.size(); c != 0) {
            return c;
        }
        if (auto c = a.edges_ <=> b.edges_; c != 0) {
            return c;
        }
        return a.source_ <=> b.source_;
    }

private:
    Path(VertexId s, std::vector<EdgeId> e, VertexId r) : source_(s), edges_(std::move(e)), range_(r) {}

    VertexId source_;
    std::vector<EdgeId> edges_;
    VertexId range_;
};

/// All composable edge sequences of length n, in lexicographic edge order.
/// n = 0 yields one path per vertex.
inline std::vector<Path> paths_of_length(const Graph& g, std::size_t n) {
    std::vector<Path> frontier;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        frontier.push_back(Path::vertex(g, v));
    }
    for (std::size_t step = 0; step < n; ++step) {
        std::vector<Path> next;
        for (const Path& p : frontier) {
            for (EdgeId e : g.out_edges(p.range())) {
                next.push_back(p.length() == 0 ? Path::of_edges(g, {e}) : p.extended(g, e));
            }
        }
        frontier = std::move(next);
    }
    std::sort(frontier.begin(), frontier.end());
    return frontier;
}

// ---------------------------------------------------------------------------
// vertex-set combinatorics

inline bool is_hereditary(const Graph& g, const VertexSet& f) {
    require_subset_of(g, f);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (f.test(g.src(e)) && !f.test(g.dst(e))) {
            return false;
        }
    }
    return true;
}

// Smallest superset closed under following edges forward.
inline VertexSet hereditary_closure(const Graph& g, const VertexSet& f) {
    require_subset_of(g, f);
    VertexSet out = f;
    std::deque<VertexId> work;
    for (auto v = f.find_first(); v != VertexSet::npos; v = f.find_next(v)) {
        work.push_back(static_cast<VertexId>(v));
    }
    while (!work.empty()) {
        VertexId v = work.front();
        work.pop_front();
        for (EdgeId e : g.out_edges(v)) {
            VertexId w = g.dst(e);
            if (!out.test(w)) {
                out.set(w);
                work.push_back(w);
            }
        }
    }
    return out;
}

// v in V and every out-edge of v lands in f ==> v in f.
inline bool is_v_saturated(const Graph& g, const VertexSet& f, const VertexSet& ideal) {
    require_subset_of(g, f);
    require_subset_of(g, ideal);
    for (auto v = ideal.find_first(); v != VertexSet::npos; v = ideal.find_next(v)) {
        if (f.test(v)) {
            continue;
        }
        auto out = g.out_edges(static_cast<VertexId>(v));
        if (std::all_of(out.begin(), out.end(), [&](EdgeId e) { return f.test(g.dst(e)); })) {
            return false;
        }
    }
    return true;
}

/// Least V-saturated superset S_V(F). Sinks in V enter vacuously.
inline VertexSet v_saturation(const Graph& g, const VertexSet& f, const VertexSet& ideal) {
    require_subset_of(g, f);
    require_subset_of(g, ideal);
    VertexSet out = f;
    // number of out-edges of v whose target is not yet in `out`
    std::vector<std::size_t> pending(g.vertex_count(), 0);
    std::deque<VertexId> work;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (EdgeId e : g.out_edges(v)) {
            if (!f.test(g.dst(e))) {
                ++pending[v];
            }
        }
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (ideal.test(v) && !out.test(v) && pending[v] == 0) {
            out.set(v);
            work.push_back(v);
        }
    }
    while (!work.empty()) {
        VertexId w = work.front();
        work.pop_front();
        for (EdgeId e : g.in_edges(w)) {
            VertexId u = g.src(e);
            if (pending[u] > 0 && --pending[u] == 0 && ideal.test(u) && !out.test(u)) {
                out.set(u);
                work.push_back(u);
            }
        }
    }
    return out;
}

namespace detail {

inline Graph induced(const Graph& g, const VertexSet& keep_vertices, auto keep_edge) {
    GraphSpec spec;
    for (auto v = keep_vertices.find_first(); v != VertexSet::npos; v = keep_vertices.find_next(v)) {
        spec.vertices.push_back(g.vertex_name(static_cast<VertexId>(v)));
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (keep_edge(e)) {
            spec.edges.push_back({g.edge_name(e), g.vertex_name(g.src(e)), g.vertex_name(g.dst(e))});
        }
    }
    return Graph::validate(std::move(spec));
}

inline void require_hereditary(const Graph& g, const VertexSet& f) {
    if (!is_hereditary(g, f)) {
        throw domain_error("not_hereditary", "vertex set is not hereditary");
    }
}

} // namespace detail

/// E \ F = (E^0 \ F, r^{-1}(E^0 \ F)) for hereditary F.
inline Graph quotient_graph(const Graph& g, const VertexSet& f) {
    detail::require_hereditary(g, f);
    return detail::induced(g, ~f, [&](EdgeId e) { return !f.test(g.dst(e)); });
}

/// (F, s^{-1}(F)) for hereditary F.
inline Graph subgraph(const Graph& g, const VertexSet& f) {
    detail::require_hereditary(g, f);
    return detail::induced(g, f, [&](EdgeId e) { return f.test(g.src(e)); });
}

struct Reduction {
    VertexSet removed; // S_V(empty), indexed in the original graph
    Graph graph;       // E \ S_V(empty)
    VertexSet ideal;   // V \ S_V(empty), indexed in `graph`
};

inline Reduction reduction(const Graph& g, const VertexSet& ideal) {
    VertexSet s = v_saturation(g, g.empty_set(), ideal);
    Graph reduced = quotient_graph(g, s);
    VertexSet rest = translate(g, ideal - s, reduced);
    return {std::move(s), std::move(reduced), std::move(rest)};
}

struct VertexClasses {
    VertexSet sinks;
    VertexSet regular;           // 0 < |s^{-1}(v)| < infinity
    VertexSet infinite_emitters; // always empty: graphs are finite
};

inline VertexClasses vertex_classes(const Graph& g) {
    VertexClasses c{g.empty_set(), g.empty_set(), g.empty_set()};
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        (g.out_edges(v).empty() ? c.sinks : c.regular).set(v);
    }
    return c;
}

// X_E is a Hilbert bimodule iff s and r are both injective on E^1.
inline bool is_hilbert_bimodule(const Graph& g) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.out_edges(v).size() > 1 || g.in_edges(v).size() > 1) {
            return false;
        }
    }
    return true;
}

// Kahn's algorithm
inline bool is_acyclic(const Graph& g) {
    std::vector<std::size_t> indeg(g.vertex_count());
    std::vector<VertexId> stack;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        indeg[v] = g.in_edges(v).size();
        if (indeg[v] == 0) {
            stack.push_back(v);
        }
    }
    std::size_t seen = 0;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        ++seen;
        for (EdgeId e : g.out_edges(v)) {
            if (--indeg[g.dst(e)] == 0) {
                stack.push_back(g.dst(e));
            }
        }
    }
    return seen == g.vertex_count();
}

} // namespace relgraph
