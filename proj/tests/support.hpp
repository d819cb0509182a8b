#pragma once

// Seeded generators, a fixed graph corpus and representation builders shared
// by the unit tests and the acceptance binary.

#include <random>
#include <string>
#include <vector>

#include "relgraph/relgraph.hpp"

namespace testing_support {

using namespace relgraph;
using Rng = std::mt19937_64;

inline GraphHandle graph_of(std::vector<std::string> vertices,
                            std::vector<std::array<std::string, 3>> edges) {
    GraphSpec spec;
    spec.vertices = std::move(vertices);
    for (auto& [id, s, d] : edges) {
        spec.edges.push_back({id, s, d});
    }
    return make_graph(std::move(spec));
}

// One vertex v with n loops e1..en.
inline GraphHandle rose(std::size_t n) {
    std::vector<std::array<std::string, 3>> edges;
    for (std::size_t k = 1; k <= n; ++k) {
        edges.push_back({"e" + std::to_string(k), "v", "v"});
    }
    return graph_of({"v"}, edges);
}

// v -> w, the M_2 instance
inline GraphHandle arrow() { return graph_of({"v", "w"}, {{"e", "v", "w"}}); }

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline GraphHandle random_graph(Rng& rng, std::size_t max_vertices, std::size_t max_edges,
                                bool acyclic = false) {
    GraphSpec spec;
    std::size_t n = uniform(rng, 1, max_vertices);
    for (std::size_t v = 0; v < n; ++v) {
        spec.vertices.push_back("v" + std::to_string(v));
    }
    std::size_t m = uniform(rng, 0, max_edges);
    for (std::size_t e = 0; e < m; ++e) {
        std::size_t a = uniform(rng, 0, n - 1);
        std::size_t b = uniform(rng, 0, n - 1);
        if (acyclic) {
            if (a == b) {
                continue;
            }
            if (a > b) {
                std::swap(a, b);
            }
        }
        spec.edges.push_back({"e" + std::to_string(e), spec.vertices[a], spec.vertices[b]});
    }
    return make_graph(std::move(spec));
}

inline VertexSet random_subset(Rng& rng, const Graph& g, double p = 0.5) {
    VertexSet s = g.empty_set();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (coin(rng, p)) {
            s.set(v);
        }
    }
    return s;
}

// A random path of length exactly n if one exists from a random start, else
// whatever length the walk reached.
inline Path random_walk(Rng& rng, const Graph& g, std::size_t n, const VertexSet* avoid = nullptr) {
    std::vector<VertexId> starts;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!avoid || !avoid->test(v)) {
            starts.push_back(v);
        }
    }
    if (starts.empty()) {
        throw std::logic_error("no admissible start vertex");
    }
    Path p = Path::vertex(g, starts[uniform(rng, 0, starts.size() - 1)]);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<EdgeId> next;
        for (EdgeId e : g.out_edges(p.range())) {
            if (!avoid || !avoid->test(g.dst(e))) {
                next.push_back(e);
            }
        }
        if (next.empty()) {
            break;
        }
        p = p.extended(g, next[uniform(rng, 0, next.size() - 1)]);
    }
    return p;
}

// A random path of length <= n ending at `end`, walking backwards.
inline Path random_walk_to(Rng& rng, const Graph& g, VertexId end, std::size_t n,
                           const VertexSet* avoid = nullptr) {
    std::vector<EdgeId> rev;
    VertexId cur = end;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<EdgeId> prev;
        for (EdgeId e : g.in_edges(cur)) {
            if (!avoid || !avoid->test(g.src(e))) {
                prev.push_back(e);
            }
        }
        if (prev.empty()) {
            break;
        }
        EdgeId e = prev[uniform(rng, 0, prev.size() - 1)];
        rev.push_back(e);
        cur = g.src(e);
    }
    if (rev.empty()) {
        return Path::vertex(g, end);
    }
    return Path::of_edges(g, std::vector<EdgeId>(rev.rbegin(), rev.rend()));
}

inline GaussianRational random_coefficient(Rng& rng) {
    auto small = [&] { return static_cast<long>(uniform(rng, 0, 6)) - 3; };
    mpq_class re(small(), static_cast<long>(uniform(rng, 1, 3)));
    mpq_class im = coin(rng, 0.3) ? mpq_class(small()) : mpq_class(0);
    re.canonicalize();
    if (re == 0 && im == 0) {
        re = 1;
    }
    return {re, im};
}

inline Element random_element(Rng& rng, const GraphHandle& g, std::size_t terms, std::size_t max_len,
                              const VertexSet* avoid = nullptr) {
    Element a(g);
    for (std::size_t k = 0; k < terms; ++k) {
        Path mu = random_walk(rng, *g, uniform(rng, 0, max_len), avoid);
        Path nu = random_walk_to(rng, *g, mu.range(), uniform(rng, 0, max_len), avoid);
        a.accumulate({mu, nu}, random_coefficient(rng));
    }
    return a;
}

// All terms share degree |mu| - |nu| == k (k drawn if not given).
inline Element random_homogeneous(Rng& rng, const GraphHandle& g, std::size_t terms, std::size_t max_len,
                                  const VertexSet* avoid = nullptr) {
    Element a(g);
    std::optional<long> degree;
    for (std::size_t attempt = 0; attempt < terms * 8 && a.size() < terms; ++attempt) {
        Path mu = random_walk(rng, *g, uniform(rng, 0, max_len), avoid);
        Path nu = random_walk_to(rng, *g, mu.range(), uniform(rng, 0, max_len), avoid);
        long d = static_cast<long>(mu.length()) - static_cast<long>(nu.length());
        if (!degree) {
            degree = d;
        }
        if (d != *degree) {
            continue;
        }
        a.accumulate({mu, nu}, random_coefficient(rng));
    }
    return a;
}

// Fixed 100-graph corpus: hand-picked shapes followed by seeded random graphs
// with at most 5 vertices and 8 edges.
inline std::vector<GraphHandle> corpus() {
    std::vector<GraphHandle> out;
    out.push_back(graph_of({"v"}, {}));
    out.push_back(arrow());
    out.push_back(rose(1));
    out.push_back(rose(2));
    out.push_back(graph_of({"u", "v", "w"}, {{"a", "u", "v"}, {"b", "v", "w"}}));
    out.push_back(graph_of({"u", "v"}, {{"a", "u", "v"}, {"b", "v", "u"}}));
    out.push_back(graph_of({"u", "v", "w"}, {{"a", "u", "v"}, {"b", "u", "w"}}));
    out.push_back(graph_of({"u", "v"}, {{"a", "u", "u"}, {"b", "u", "v"}}));
    out.push_back(graph_of({"u", "v"}, {{"a", "u", "v"}, {"b", "v", "v"}}));
    out.push_back(graph_of({"u", "v"}, {{"a", "u", "v"}, {"b", "u", "v"}}));
    Rng rng(20240611);
    while (out.size() < 100) {
        out.push_back(random_graph(rng, 5, 8, coin(rng, 0.3)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// representations

inline CKFamily zero_family(const Graph& g, std::size_t dim) {
    CKFamily fam;
    fam.dim = dim;
    const auto n = static_cast<Eigen::Index>(dim);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        fam.P[g.vertex_name(v)] = Matrix::Zero(n, n);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        fam.S[g.edge_name(e)] = Matrix::Zero(n, n);
    }
    fam.D = Matrix::Zero(n, n);
    return fam;
}

inline CKFamily direct_sum(const CKFamily& a, const CKFamily& b) {
    CKFamily out;
    out.dim = a.dim + b.dim;
    const auto n = static_cast<Eigen::Index>(out.dim);
    const auto na = static_cast<Eigen::Index>(a.dim);
    const auto nb = static_cast<Eigen::Index>(b.dim);
    auto put = [&](const Matrix& x, const Matrix& y) {
        Matrix m = Matrix::Zero(n, n);
        m.topLeftCorner(na, na) = x;
        m.bottomRightCorner(nb, nb) = y;
        return m;
    };
    for (const auto& [k, m] : a.P) {
        out.P[k] = put(m, b.P.at(k));
    }
    for (const auto& [k, m] : a.S) {
        out.S[k] = put(m, b.S.at(k));
    }
    if (a.D && b.D) {
        out.D = put(*a.D, *b.D);
    }
    return out;
}

// For a graph whose cycles all lie in the hereditary set H = closure of the
// cycle vertices: the path-space family of the acyclic quotient E \ H,
// extended by zero on H. Its coisometricity set is coiso(E \ H) together
// with H.
inline CKFamily lifted_quotient_family(const Graph& g, const VertexSet& quotient_ideal_in_g) {
    VertexSet cyc = g.empty_set();
    ReachabilityProfile prof(g);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        // a vertex on a cycle reaches itself at some positive length
        for (std::size_t t = 1; t <= g.vertex_count(); ++t) {
            if (prof.relation(t)[v].test(v)) {
                cyc.set(v);
            }
        }
    }
    VertexSet h = hereditary_closure(g, cyc);
    Graph q = quotient_graph(g, h);
    VertexSet qv = translate(g, quotient_ideal_in_g - h, q);
    CKFamily base = path_space_family(q, qv);
    CKFamily out = zero_family(g, base.dim);
    for (const auto& [k, m] : base.P) {
        out.P[k] = m;
    }
    for (const auto& [k, m] : base.S) {
        out.S[k] = m;
    }
    out.D = base.D;
    return out;
}

// Diagonal unitary (phase) family: every vertex of a single cycle or rose
// acts as the identity and each edge is a permutation twisted by phases.
// Only valid when each vertex has exactly one in-edge and one out-edge.
inline CKFamily phase_cycle_family(const Graph& g, Rng& rng) {
    std::size_t n = g.vertex_count();
    CKFamily fam;
    fam.dim = n;
    const auto dim = static_cast<Eigen::Index>(n);
    for (VertexId v = 0; v < n; ++v) {
        Matrix p = Matrix::Zero(dim, dim);
        p(v, v) = 1.0;
        fam.P[g.vertex_name(v)] = p;
    }
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        Matrix s = Matrix::Zero(dim, dim);
        s(g.src(e), g.dst(e)) = std::polar(1.0, angle(rng));
        fam.S[g.edge_name(e)] = s;
    }
    return fam;
}

} // namespace testing_support
