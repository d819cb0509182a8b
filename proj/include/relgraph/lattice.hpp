#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "relgraph/graph.hpp"

namespace relgraph {

/// Gauge-invariant ideal of C*(E,V) in vertex form: `kernel` is the
/// hereditary set of vertices whose projections vanish, `coisometric` the set
/// of vertices where the Cuntz–Krieger relation holds modulo the kernel.
struct TPair {
    VertexSet kernel;
    VertexSet coisometric;

    friend bool operator==(const TPair&, const TPair&) = default;

    bool leq(const TPair& o) const { return kernel.is_subset_of(o.kernel) && coisometric.is_subset_of(o.coisometric); }
};

// Vertices outside f that still emit an edge into E^0 \ f.
inline VertexSet emitters_outside(const Graph& g, const VertexSet& f) {
    VertexSet out = g.empty_set();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!f.test(g.src(e)) && !f.test(g.dst(e))) {
            out.set(g.src(e));
        }
    }
    return out;
}

inline bool is_tpair(const Graph& g, const VertexSet& ideal, const TPair& p) {
    require_subset_of(g, p.kernel);
    require_subset_of(g, p.coisometric);
    require_subset_of(g, ideal);
    return is_hereditary(g, p.kernel) && p.kernel.is_subset_of(p.coisometric) &&
           ideal.is_subset_of(p.coisometric) &&
           (p.coisometric - p.kernel).is_subset_of(emitters_outside(g, p.kernel));
}

namespace detail {

inline std::vector<std::string> sorted_names(const Graph& g, const VertexSet& s) {
    return vertex_names(g, s); // already in id order
}

// Linear extension of inclusion: cardinality, then lexicographic id lists.
inline bool set_order(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (a.count() != b.count()) {
        return a.count() < b.count();
    }
    return sorted_names(g, a) < sorted_names(g, b);
}

inline bool tpair_order(const Graph& g, const TPair& a, const TPair& b) {
    if (a.kernel != b.kernel) {
        return set_order(g, a.kernel, b.kernel);
    }
    return set_order(g, a.coisometric, b.coisometric);
}

inline void for_each_hereditary(const Graph& g, const std::function<void(const VertexSet&)>& emit) {
    const std::size_t n = g.vertex_count();
    std::vector<VertexSet> down(n), up(n);
    for (VertexId v = 0; v < n; ++v) {
        VertexSet s = g.empty_set();
        s.set(v);
        down[v] = hereditary_closure(g, s);
    }
    for (VertexId v = 0; v < n; ++v) {
        up[v] = g.empty_set();
        for (VertexId u = 0; u < n; ++u) {
            if (down[u].test(v)) {
                up[v].set(u);
            }
        }
    }
    // Every consistent (in, out) state extends to a hereditary set, so the
    // search has no dead branches.
    std::function<void(std::size_t, const VertexSet&, const VertexSet&)> rec =
        [&](std::size_t i, const VertexSet& in, const VertexSet& out) {
            if (i == n) {
                emit(in);
                return;
            }
            if (in.test(i) || out.test(i)) {
                rec(i + 1, in, out);
                return;
            }
            VertexSet in2 = in | down[i];
            if (!in2.intersects(out)) {
                rec(i + 1, in2, out);
            }
            VertexSet out2 = out | up[i];
            if (!out2.intersects(in)) {
                rec(i + 1, in, out2);
            }
        };
    rec(0, g.empty_set(), g.empty_set());
}

} // namespace detail

inline std::vector<VertexSet> enumerate_hereditary(const Graph& g) {
    std::vector<VertexSet> out;
    detail::for_each_hereditary(g, [&](const VertexSet& f) { out.push_back(f); });
    std::sort(out.begin(), out.end(),
              [&](const VertexSet& a, const VertexSet& b) { return detail::set_order(g, a, b); });
    return out;
}

/// Hereditary V-saturated sets, in a linear extension of inclusion.
inline std::vector<VertexSet> enumerate_hereditary_saturated(const Graph& g, const VertexSet& ideal) {
    require_subset_of(g, ideal);
    std::vector<VertexSet> out;
    detail::for_each_hereditary(g, [&](const VertexSet& f) {
        if (is_v_saturated(g, f, ideal)) {
            out.push_back(f);
        }
    });
    std::sort(out.begin(), out.end(),
              [&](const VertexSet& a, const VertexSet& b) { return detail::set_order(g, a, b); });
    return out;
}

/// F ↦ (F, F ∪ V). V-saturation makes every v ∈ V \ F emit outside F.
inline TPair embed_simple(const Graph& g, const VertexSet& f, const VertexSet& ideal) {
    require_subset_of(g, f);
    require_subset_of(g, ideal);
    if (!is_hereditary(g, f)) {
        throw domain_error("not_hereditary", "vertex set is not hereditary");
    }
    if (!is_v_saturated(g, f, ideal)) {
        throw domain_error("not_saturated", "vertex set is not V-saturated");
    }
    return {f, f | ideal};
}

inline TPair tpair_meet(const Graph& g, const VertexSet& ideal, const TPair& x, const TPair& y) {
    TPair m{x.kernel & y.kernel, x.coisometric & y.coisometric};
    if (!is_tpair(g, ideal, m)) {
        throw std::logic_error("componentwise meet of T-pairs is not a T-pair");
    }
    return m;
}

// Componentwise union, then repeatedly move vertices of F' \ F that no longer
// emit outside F into F and close hereditarily.
inline TPair tpair_join(const Graph& g, const VertexSet& ideal, const TPair& x, const TPair& y) {
    VertexSet f = x.kernel | y.kernel;
    VertexSet fp = x.coisometric | y.coisometric;
    for (;;) {
        f = hereditary_closure(g, f);
        fp |= f;
        VertexSet stuck = (fp - f) - emitters_outside(g, f);
        if (stuck.none()) {
            break;
        }
        f |= stuck;
    }
    TPair j{f, fp | ideal};
    if (!is_tpair(g, ideal, j)) {
        throw std::logic_error("re-closed join of T-pairs is not a T-pair");
    }
    return j;
}

struct Classification {
    bool case_i = false;  // every non-sink lies in V
    bool case_ii = false; // Hilbert bimodule and V = regular vertices
    bool simple_bijection = false; // embed_simple is onto the T-pairs

    bool simple() const { return case_i || case_ii; }
};

struct LatticeReport {
    std::vector<TPair> elements;
    std::vector<std::pair<std::size_t, std::size_t>> covers; // (lower, upper) indices
    std::vector<VertexSet> simple_lattice; // hereditary V-saturated sets
    Classification classification;
};

namespace detail {

inline std::vector<TPair> collect_tpairs(const Graph& g, const VertexSet& ideal) {
    std::vector<TPair> out;
    for_each_hereditary(g, [&](const VertexSet& f) {
        VertexSet eligible = emitters_outside(g, f);
        VertexSet forced = ideal - f;
        if (!forced.is_subset_of(eligible)) {
            return;
        }
        VertexSet free = eligible - ideal;
        std::vector<std::size_t> bits;
        for (auto v = free.find_first(); v != VertexSet::npos; v = free.find_next(v)) {
            bits.push_back(v);
        }
        if (bits.size() >= 8 * sizeof(std::size_t) - 1) {
            throw domain_error("too_large", "T-pair lattice too large to enumerate");
        }
        for (std::size_t mask = 0; mask < (std::size_t{1} << bits.size()); ++mask) {
            VertexSet fp = f | ideal;
            for (std::size_t b = 0; b < bits.size(); ++b) {
                if (mask >> b & 1) {
                    fp.set(bits[b]);
                }
            }
            out.push_back({f, fp});
        }
    });
    std::sort(out.begin(), out.end(), [&](const TPair& a, const TPair& b) { return tpair_order(g, a, b); });
    return out;
}

inline std::vector<std::pair<std::size_t, std::size_t>> covering_relation(const std::vector<TPair>& els) {
    const std::size_t n = els.size();
    std::vector<boost::dynamic_bitset<>> below(n, boost::dynamic_bitset<>(n));
    std::vector<boost::dynamic_bitset<>> above(n, boost::dynamic_bitset<>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && els[i].leq(els[j])) {
                below[j].set(i);
                above[i].set(j);
            }
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (std::size_t j = 0; j < n; ++j) {
        for (auto i = below[j].find_first(); i != boost::dynamic_bitset<>::npos; i = below[j].find_next(i)) {
            if (!above[i].intersects(below[j])) {
                covers.emplace_back(i, j);
            }
        }
    }
    std::sort(covers.begin(), covers.end());
    return covers;
}

inline bool embeds_bijectively(const Graph& g, const VertexSet& ideal, const std::vector<TPair>& tpairs,
                               const std::vector<VertexSet>& simple) {
    if (tpairs.size() != simple.size()) {
        return false;
    }
    std::vector<TPair> image;
    for (const auto& f : simple) {
        image.push_back(embed_simple(g, f, ideal));
    }
    std::sort(image.begin(), image.end(), [&](const TPair& a, const TPair& b) { return tpair_order(g, a, b); });
    if (image != tpairs) {
        return false;
    }
    // order-preserving and order-reflecting
    for (std::size_t i = 0; i < simple.size(); ++i) {
        for (std::size_t j = 0; j < simple.size(); ++j) {
            bool in_sets = simple[i].is_subset_of(simple[j]);
            bool in_pairs = embed_simple(g, simple[i], ideal).leq(embed_simple(g, simple[j], ideal));
            if (in_sets != in_pairs) {
                return false;
            }
        }
    }
    return true;
}

inline Classification classify(const Graph& g, const VertexSet& ideal, const std::vector<TPair>& tpairs,
                               const std::vector<VertexSet>& simple) {
    VertexClasses vc = vertex_classes(g);
    Classification c;
    c.case_i = vc.regular.is_subset_of(ideal);
    c.case_ii = is_hilbert_bimodule(g) && ideal == vc.regular;
    c.simple_bijection = embeds_bijectively(g, ideal, tpairs, simple);
    if (c.simple() && !c.simple_bijection) {
        throw std::logic_error("simple-lattice case holds but embed_simple is not a bijection");
    }
    return c;
}

} // namespace detail

inline Classification classify_lattice(const Graph& g, const VertexSet& ideal) {
    require_subset_of(g, ideal);
    return detail::classify(g, ideal, detail::collect_tpairs(g, ideal), enumerate_hereditary_saturated(g, ideal));
}

/// All T-pairs coisometric on V with their Hasse diagram; one per
/// gauge-invariant ideal of C*(E,V).
inline LatticeReport enumerate_tpairs(const Graph& g, const VertexSet& ideal) {
    require_subset_of(g, ideal);
    LatticeReport r;
    r.elements = detail::collect_tpairs(g, ideal);
    r.covers = detail::covering_relation(r.elements);
    r.simple_lattice = enumerate_hereditary_saturated(g, ideal);
    r.classification = detail::classify(g, ideal, r.elements, r.simple_lattice);
    return r;
}

struct StructureDecomposition {
    Graph sub;             // (F, s^{-1}(F)); its ideal is Morita equivalent to C*(F, F∩V)
    VertexSet sub_ideal;   // F ∩ V, indexed in `sub`
    Graph quot;            // E \ F; quotient algebra C*(E\F, V\F)
    VertexSet quot_ideal;  // V \ F, indexed in `quot`
    VertexSet saturation;  // S_V(F) in the original graph; generates the same ideal as F
};

inline StructureDecomposition structure_decomposition(const Graph& g, const VertexSet& ideal, const VertexSet& f) {
    require_subset_of(g, ideal);
    Graph sub = subgraph(g, f);
    Graph quot = quotient_graph(g, f);
    VertexSet sub_ideal = translate(g, f & ideal, sub);
    VertexSet quot_ideal = translate(g, ideal - f, quot);
    return {std::move(sub), std::move(sub_ideal), std::move(quot), std::move(quot_ideal),
            v_saturation(g, f, ideal)};
}

// Graph reading of J^⊥: the complementary vertex set.
inline VertexSet annihilator(const Graph& g, const VertexSet& ideal) {
    require_subset_of(g, ideal);
    return ~ideal;
}

} // namespace relgraph
