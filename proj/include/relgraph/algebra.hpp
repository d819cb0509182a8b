#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "relgraph/error.hpp"
#include "relgraph/graph.hpp"
#include "relgraph/rational.hpp"

namespace relgraph {

/// Matrix unit Θ_{mu,nu} = s_mu s_nu^*, defined when range(mu) == range(nu).
/// It sits in bucket (|mu|, |nu|) and has degree |mu| - |nu|.
struct Term {
    Path mu;
    Path nu;

    std::size_t row() const { return mu.length(); }
    std::size_t col() const { return nu.length(); }
    long degree() const { return static_cast<long>(mu.length()) - static_cast<long>(nu.length()); }
    VertexId range() const { return mu.range(); }

    friend bool operator==(const Term&, const Term&) = default;
    // (bidegree, mu, nu)
    friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
        if (auto c = a.row() <=> b.row(); c != 0) {
            return c;
        }
        if (auto c = a.col() <=> b.col(); c != 0) {
            return c;
        }
        if (auto c = a.mu <=> b.mu; c != 0) {
            return c;
        }
        return a.nu <=> b.nu;
    }
};

/// Finite Q(i)-combination of matrix units over one graph: an element of the
/// dense graded *-algebra. Zero coefficients are never stored and terms are
/// kept in canonical (bidegree, mu, nu) order, so equality is structural.
class Element {
public:
    using TermMap = std::map<Term, GaussianRational>;

    explicit Element(GraphHandle graph) : graph_(std::move(graph)) {
        if (!graph_) {
            throw domain_error("no_graph", "element requires a graph");
        }
    }

    const GraphHandle& graph_handle() const { return graph_; }
    const Graph& graph() const { return *graph_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    void accumulate(const Term& t, const GaussianRational& c) {
        if (t.mu.range() != t.nu.range()) {
            throw domain_error("range_mismatch", "matrix unit requires range(mu) == range(nu)");
        }
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(t, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    std::set<long> degrees() const {
        std::set<long> out;
        for (const auto& [t, c] : terms_) {
            out.insert(t.degree());
        }
        return out;
    }

    // Degree of a homogeneous nonzero element; nullopt when mixed or zero.
    std::optional<long> degree() const {
        auto d = degrees();
        return d.size() == 1 ? std::optional<long>(*d.begin()) : std::nullopt;
    }

    friend bool operator==(const Element& a, const Element& b) {
        return (a.graph_ == b.graph_ || *a.graph_ == *b.graph_) && a.terms_ == b.terms_;
    }

private:
    GraphHandle graph_;
    TermMap terms_;
};

inline bool same_graph(const Element& a, const Element& b) {
    return a.graph_handle() == b.graph_handle() || a.graph() == b.graph();
}

inline void require_same_graph(const Element& a, const Element& b) {
    if (!same_graph(a, b)) {
        throw domain_error("graph_mismatch", "elements belong to different graphs");
    }
}

inline Element unit(const GraphHandle& g, const Path& mu, const Path& nu) {
    if (mu.range() != nu.range()) {
        throw domain_error("range_mismatch", "matrix unit requires range(mu) == range(nu)");
    }
    Element a(g);
    a.accumulate({mu, nu}, 1);
    return a;
}

// p_v = Θ_{v,v}
inline Element vertex_projection(const GraphHandle& g, VertexId v) {
    Path p = Path::vertex(*g, v);
    return unit(g, p, p);
}

// s_mu = Θ_{mu, range(mu)}
inline Element path_isometry(const GraphHandle& g, const Path& mu) {
    return unit(g, mu, Path::vertex(*g, mu.range()));
}

inline Element edge_isometry(const GraphHandle& g, EdgeId e) {
    return path_isometry(g, Path::of_edges(*g, {e}));
}

inline Element add(const Element& a, const Element& b) {
    require_same_graph(a, b);
    Element out = a;
    for (const auto& [t, c] : b.terms()) {
        out.accumulate(t, c);
    }
    return out;
}

inline Element scale(const Element& a, const GaussianRational& c) {
    Element out(a.graph_handle());
    if (c.is_zero()) {
        return out;
    }
    for (const auto& [t, x] : a.terms()) {
        out.accumulate(t, x * c);
    }
    return out;
}

inline Element subtract(const Element& a, const Element& b) { return add(a, scale(b, -1)); }

// (a*)_{nm} = (a_{mn})*: swap mu and nu, conjugate coefficients.
inline Element adjoint(const Element& a) {
    Element out(a.graph_handle());
    for (const auto& [t, c] : a.terms()) {
        out.accumulate({t.nu, t.mu}, c.conj());
    }
    return out;
}

/// a ⊗ 1^t: each step replaces Θ_{mu,nu} by the sum over edges e leaving
/// range(mu) of Θ_{mu e, nu e}. Units at sinks vanish.
inline Element right_tensor(const Element& a, std::size_t t = 1) {
    const Graph& g = a.graph();
    Element cur = a;
    for (std::size_t step = 0; step < t && !cur.empty(); ++step) {
        Element next(a.graph_handle());
        for (const auto& [term, c] : cur.terms()) {
            for (EdgeId e : g.out_edges(term.range())) {
                next.accumulate({term.mu.extended(g, e), term.nu.extended(g, e)}, c);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

// Bucket (n, m): terms with |mu| = n and |nu| = m.
inline Element component(const Element& a, std::size_t n, std::size_t m) {
    Element out(a.graph_handle());
    for (const auto& [t, c] : a.terms()) {
        if (t.row() == n && t.col() == m) {
            out.accumulate(t, c);
        }
    }
    return out;
}

inline Element degree_component(const Element& a, long k) {
    Element out(a.graph_handle());
    for (const auto& [t, c] : a.terms()) {
        if (t.degree() == k) {
            out.accumulate(t, c);
        }
    }
    return out;
}

namespace detail {

// Ordinary matrix product of infinite matrices with entries in the
// precategory: Θ_{mu,nu} · Θ_{alpha,beta} = [nu == alpha] Θ_{mu,beta}.
inline Element matrix_product(const Element& a, const Element& b) {
    Element out(a.graph_handle());
    std::map<Path, std::vector<std::pair<const Path*, const GaussianRational*>>> rows;
    for (const auto& [t, c] : b.terms()) {
        rows[t.mu].emplace_back(&t.nu, &c);
    }
    for (const auto& [t, c] : a.terms()) {
        auto it = rows.find(t.nu);
        if (it == rows.end()) {
            continue;
        }
        for (const auto& [beta, x] : it->second) {
            out.accumulate({t.mu, *beta}, c * *x);
        }
    }
    return out;
}

inline std::pair<std::size_t, std::size_t> row_range(const Element& a) {
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const auto& [t, c] : a.terms()) {
        lo = std::min(lo, t.row());
        hi = std::max(hi, t.row());
    }
    return {lo, hi};
}

inline std::pair<std::size_t, std::size_t> col_range(const Element& a) {
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const auto& [t, c] : a.terms()) {
        lo = std::min(lo, t.col());
        hi = std::max(hi, t.col());
    }
    return {lo, hi};
}

} // namespace detail

/// Convolution product a ⋆ b = a·Σ_{k≥0} Λ^k(b) + Σ_{k≥1} Λ^k(a)·b where
/// Λ(x)_{nm} = x_{n-1,m-1} ⊗ 1. Only k up to the gap between the column
/// lengths of one factor and the row lengths of the other can contribute.
inline Element star_lambda(const Element& a, const Element& b) {
    require_same_graph(a, b);
    Element out(a.graph_handle());
    if (a.empty() || b.empty()) {
        return out;
    }
    auto [a_col_lo, a_col_hi] = detail::col_range(a);
    auto [b_row_lo, b_row_hi] = detail::row_range(b);

    if (a_col_hi >= b_row_lo) {
        Element lambda_b = b;
        for (std::size_t k = 0; k <= a_col_hi - b_row_lo && !lambda_b.empty(); ++k) {
            out = add(out, detail::matrix_product(a, lambda_b));
            lambda_b = right_tensor(lambda_b);
        }
    }
    if (b_row_hi > a_col_lo) {
        Element lambda_a = right_tensor(a);
        for (std::size_t k = 1; k <= b_row_hi - a_col_lo && !lambda_a.empty(); ++k) {
            out = add(out, detail::matrix_product(lambda_a, b));
            lambda_a = right_tensor(lambda_a);
        }
    }
    return out;
}

/// Same product through the path-splice rule on units:
///   s_mu s_nu^* · s_alpha s_beta^* = s_{mu γ} s_beta^*  if alpha = nu γ,
///                                   = s_mu s_{beta γ}^* if nu = alpha γ,
///                                   = 0                 otherwise.
inline Element star_splice(const Element& a, const Element& b) {
    require_same_graph(a, b);
    Element out(a.graph_handle());
    for (const auto& [x, c] : a.terms()) {
        for (const auto& [y, d] : b.terms()) {
            if (x.nu.is_prefix_of(y.mu)) {
                Path gamma = x.nu.suffix_of(y.mu);
                out.accumulate({x.mu.concat(gamma), y.nu}, c * d);
            } else if (y.mu.is_prefix_of(x.nu)) {
                Path gamma = y.mu.suffix_of(x.nu);
                out.accumulate({x.mu, y.nu.concat(gamma)}, c * d);
            }
        }
    }
    return out;
}

inline Element operator+(const Element& a, const Element& b) { return add(a, b); }
inline Element operator-(const Element& a, const Element& b) { return subtract(a, b); }
inline Element operator*(const Element& a, const Element& b) { return star_lambda(a, b); }
inline Element operator*(const GaussianRational& c, const Element& a) { return scale(a, c); }

// Re-express an element over another graph that contains all of its vertices
// and edges under the same ids.
inline Element rebase(const Element& a, const GraphHandle& target) {
    const Graph& from = a.graph();
    auto move_path = [&](const Path& p) {
        if (p.length() == 0) {
            return Path::vertex(*target, target->vertex(from.vertex_name(p.source())));
        }
        std::vector<EdgeId> ids;
        for (EdgeId e : p.edges()) {
            ids.push_back(target->edge(from.edge_name(e)));
        }
        return Path::of_edges(*target, std::move(ids));
    };
    Element out(target);
    for (const auto& [t, c] : a.terms()) {
        out.accumulate({move_path(t.mu), move_path(t.nu)}, c);
    }
    return out;
}

// Every vertex visited by any path of any term.
inline VertexSet support_vertices(const Element& a) {
    const Graph& g = a.graph();
    VertexSet s = g.empty_set();
    auto mark = [&](const Path& p) {
        s.set(p.source());
        for (EdgeId e : p.edges()) {
            s.set(g.dst(e));
        }
    };
    for (const auto& [t, c] : a.terms()) {
        mark(t.mu);
        mark(t.nu);
    }
    return s;
}

} // namespace relgraph
