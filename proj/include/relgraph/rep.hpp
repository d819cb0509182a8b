#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "relgraph/algebra.hpp"
#include "relgraph/norms.hpp"

namespace relgraph {

using Matrix = Eigen::MatrixXcd;

inline constexpr double kFamilyTolerance = 1e-9;

/// Finite-dimensional Toeplitz–Cuntz–Krieger family {P_v}, {S_e}, keyed by
/// vertex and edge ids, with an optional grading operator D witnessing a
/// gauge action z ↦ z^D.
struct CKFamily {
    std::size_t dim = 0;
    std::map<std::string, Matrix> P;
    std::map<std::string, Matrix> S;
    std::optional<Matrix> D;
};

struct RelationCheck {
    explicit RelationCheck(std::string n = {}) : name(std::move(n)) {}

    std::string name;
    bool pass = true;
    double residual = 0.0; // worst operator-norm residual
    std::string worst;     // id (or id pair) attaining it
};

struct FamilyReport {
    std::vector<RelationCheck> relations; // the Toeplitz–CK relations
    std::vector<RelationCheck> grading;   // D relations; empty when D absent

    bool relations_ok() const {
        return std::all_of(relations.begin(), relations.end(), [](const auto& r) { return r.pass; });
    }
    bool has_grading() const { return !grading.empty(); }
    bool grading_ok() const {
        return has_grading() &&
               std::all_of(grading.begin(), grading.end(), [](const auto& r) { return r.pass; });
    }
};

inline double operator_norm(const Matrix& m) { return largest_singular_value(m); }

namespace detail {

inline void record(RelationCheck& r, double residual, const std::string& subject) {
    if (r.worst.empty() || residual > r.residual) {
        r.residual = residual;
        r.worst = subject;
    }
    r.pass = r.residual <= kFamilyTolerance;
}

inline void require_shape(const Matrix& m, std::size_t dim, const std::string& what) {
    if (m.rows() != static_cast<Eigen::Index>(dim) || m.cols() != static_cast<Eigen::Index>(dim)) {
        throw domain_error("shape_mismatch", what + " is not " + std::to_string(dim) + "x" + std::to_string(dim));
    }
}

inline void require_matches(const CKFamily& fam, const Graph& g) {
    if (fam.dim == 0) {
        throw domain_error("shape_mismatch", "family dimension must be positive");
    }
    if (fam.P.size() != g.vertex_count() || fam.S.size() != g.edge_count()) {
        throw domain_error("family_mismatch", "family must give one P per vertex and one S per edge");
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto it = fam.P.find(g.vertex_name(v));
        if (it == fam.P.end()) {
            throw domain_error("family_mismatch", "missing P for vertex '" + g.vertex_name(v) + "'");
        }
        require_shape(it->second, fam.dim, "P[" + g.vertex_name(v) + "]");
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto it = fam.S.find(g.edge_name(e));
        if (it == fam.S.end()) {
            throw domain_error("family_mismatch", "missing S for edge '" + g.edge_name(e) + "'");
        }
        require_shape(it->second, fam.dim, "S[" + g.edge_name(e) + "]");
    }
    if (fam.D) {
        require_shape(*fam.D, fam.dim, "D");
    }
}

} // namespace detail

/// Residual check of every Toeplitz–CK relation (tolerance 1e-9):
///   P_v = P_v^* = P_v^2,  P_v P_w = 0 (v ≠ w),  S_e^* S_e = P_{r(e)},
///   S_e S_e^* ≤ P_{s(e)},  S_e^* S_f = 0 for e ≠ f with s(e) = s(f),
/// and, when D is given: D = D^*, spec(D) ⊂ Z, [D, P_v] = 0, [D, S_e] = S_e.
inline FamilyReport check_family(const CKFamily& fam, const Graph& g) {
    detail::require_matches(fam, g);
    const auto& P = fam.P;
    const auto& S = fam.S;
    FamilyReport rep;

    RelationCheck proj{"projection"}, orth{"orthogonal_projections"}, iso{"isometry_on_range"},
        below{"range_below_source"}, disjoint{"orthogonal_ranges"};
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const Matrix& p = P.at(g.vertex_name(v));
        double r = std::max(operator_norm(p - p.adjoint()), operator_norm(p * p - p));
        detail::record(proj, r, g.vertex_name(v));
        for (VertexId w = v + 1; w < g.vertex_count(); ++w) {
            detail::record(orth, operator_norm(p * P.at(g.vertex_name(w))),
                           g.vertex_name(v) + "," + g.vertex_name(w));
        }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const std::string& name = g.edge_name(e);
        const Matrix& s = S.at(name);
        detail::record(iso, operator_norm(s.adjoint() * s - P.at(g.vertex_name(g.dst(e)))), name);
        detail::record(below, operator_norm(P.at(g.vertex_name(g.src(e))) * s - s), name);
        for (EdgeId f : g.out_edges(g.src(e))) {
            if (f > e) {
                detail::record(disjoint, operator_norm(s.adjoint() * S.at(g.edge_name(f))),
                               name + "," + g.edge_name(f));
            }
        }
    }
    rep.relations = {proj, orth, iso, below, disjoint};

    if (fam.D) {
        const Matrix& d = *fam.D;
        RelationCheck herm{"grading_selfadjoint"}, integral{"grading_integer_spectrum"},
            commute{"grading_commutes_with_P"}, shift{"grading_shifts_S"};
        detail::record(herm, operator_norm(d - d.adjoint()), "D");
        Matrix h = (d + d.adjoint()) / 2.0;
        Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
        double worst = 0.0;
        for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
            double x = eig.eigenvalues()(k);
            worst = std::max(worst, std::abs(x - std::round(x)));
        }
        detail::record(integral, worst, "D");
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            const Matrix& p = P.at(g.vertex_name(v));
            detail::record(commute, operator_norm(d * p - p * d), g.vertex_name(v));
        }
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Matrix& s = S.at(g.edge_name(e));
            detail::record(shift, operator_norm(d * s - s * d - s), g.edge_name(e));
        }
        rep.grading = {herm, integral, commute, shift};
    }
    return rep;
}

/// A family bound to its graph that is known to satisfy the Toeplitz–CK
/// relations. Only obtainable through certify().
class CheckedFamily {
public:
    static CheckedFamily certify(CKFamily fam, GraphHandle g) {
        FamilyReport rep = check_family(fam, *g);
        if (!rep.relations_ok()) {
            std::string failed;
            for (const auto& r : rep.relations) {
                if (!r.pass) {
                    failed += (failed.empty() ? "" : ", ") + r.name;
                }
            }
            throw domain_error("unchecked_family", "family violates: " + failed);
        }
        return CheckedFamily(std::move(fam), std::move(g), std::move(rep));
    }

    const CKFamily& family() const { return fam_; }
    const Graph& graph() const { return *graph_; }
    const GraphHandle& graph_handle() const { return graph_; }
    const FamilyReport& report() const { return report_; }

    const Matrix& P(VertexId v) const { return fam_.P.at(graph_->vertex_name(v)); }
    const Matrix& S(EdgeId e) const { return fam_.S.at(graph_->edge_name(e)); }

    // S_mu = S_{e1}...S_{en}; S_v = P_v for a length-0 path.
    Matrix S(const Path& mu) const {
        if (mu.length() == 0) {
            return P(mu.source());
        }
        Matrix m = S(mu.edges().front());
        for (std::size_t k = 1; k < mu.length(); ++k) {
            m = m * S(mu.edges()[k]);
        }
        return m;
    }

private:
    CheckedFamily(CKFamily f, GraphHandle g, FamilyReport r)
        : fam_(std::move(f)), graph_(std::move(g)), report_(std::move(r)) {}

    CKFamily fam_;
    GraphHandle graph_;
    FamilyReport report_;
};

/// Vertices where P_v = Σ_{s(e)=v} S_e S_e^* holds within tolerance.
inline VertexSet coisometricity_set(const CheckedFamily& fam) {
    const Graph& g = fam.graph();
    VertexSet out = g.empty_set();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(fam.family().dim),
                                  static_cast<Eigen::Index>(fam.family().dim));
        for (EdgeId e : g.out_edges(v)) {
            sum += fam.S(e) * fam.S(e).adjoint();
        }
        if (operator_norm(fam.P(v) - sum) <= kFamilyTolerance) {
            out.set(v);
        }
    }
    return out;
}

// Vertices with P_v = 0 (within tolerance).
inline VertexSet vanishing_set(const CheckedFamily& fam) {
    const Graph& g = fam.graph();
    VertexSet out = g.empty_set();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (operator_norm(fam.P(v)) <= kFamilyTolerance) {
            out.set(v);
        }
    }
    return out;
}

/// Σ c · S_mu S_nu^*.
inline Matrix evaluate(const CheckedFamily& fam, const Element& a) {
    if (!(a.graph_handle() == fam.graph_handle() || a.graph() == fam.graph())) {
        throw domain_error("graph_mismatch", "element and family belong to different graphs");
    }
    const auto n = static_cast<Eigen::Index>(fam.family().dim);
    Matrix out = Matrix::Zero(n, n);
    std::map<Path, Matrix> cache;
    auto s_of = [&](const Path& p) -> const Matrix& {
        auto it = cache.find(p);
        if (it == cache.end()) {
            it = cache.emplace(p, fam.S(p)).first;
        }
        return it->second;
    };
    for (const auto& [t, c] : a.terms()) {
        out += c.to_complex() * (s_of(t.mu) * s_of(t.nu).adjoint());
    }
    return out;
}

struct UniquenessVerdict {
    bool gauge_witness = false;    // D present and valid
    bool kernel_condition = false; // {v : P_v = 0} == S_V(∅)
    bool coisometric_condition = false; // coisometricity set == V
    VertexSet vanishing;
    VertexSet expected_vanishing;
    VertexSet coisometric;

    bool faithful() const { return gauge_witness && kernel_condition && coisometric_condition; }

    std::string summary() const {
        if (faithful()) {
            return "faithful (by the gauge-invariant uniqueness theorem)";
        }
        std::string s;
        auto add = [&](const char* m) { s += (s.empty() ? "" : "; ") + std::string(m); };
        if (!gauge_witness) {
            add("gauge hypothesis unverified");
        }
        if (!kernel_condition) {
            add("kernel condition fails");
        }
        if (!coisometric_condition) {
            add("coisometricity condition fails");
        }
        return s;
    }
};

/// Checks the hypotheses of the gauge-invariant uniqueness theorem for
/// C*(E,V). The verdict certifies those hypotheses; it is not an independent
/// faithfulness proof.
inline UniquenessVerdict uniqueness_check(const CheckedFamily& fam, const VertexSet& ideal) {
    const Graph& g = fam.graph();
    require_subset_of(g, ideal);
    UniquenessVerdict v;
    v.gauge_witness = fam.report().grading_ok();
    v.vanishing = vanishing_set(fam);
    v.expected_vanishing = v_saturation(g, g.empty_set(), ideal);
    v.kernel_condition = v.vanishing == v.expected_vanishing;
    v.coisometric = coisometricity_set(fam);
    v.coisometric_condition = v.coisometric == ideal;
    return v;
}

// ---------------------------------------------------------------------------
// finite-dimensional (acyclic) case

// Every matrix unit Θ_{mu,nu} of an acyclic graph, grouped by degree.
inline std::map<long, std::vector<Term>> all_units(const Graph& g) {
    if (!is_acyclic(g)) {
        throw domain_error("has_cycle", "graph has a cycle; its unit set is infinite");
    }
    std::vector<std::vector<Path>> by_range(g.vertex_count());
    for (std::size_t n = 0;; ++n) {
        auto ps = paths_of_length(g, n);
        if (ps.empty()) {
            break;
        }
        for (auto& p : ps) {
            by_range[p.range()].push_back(std::move(p));
        }
    }
    std::map<long, std::vector<Term>> out;
    for (const auto& paths : by_range) {
        for (const auto& mu : paths) {
            for (const auto& nu : paths) {
                Term t{mu, nu};
                out[t.degree()].push_back(t);
            }
        }
    }
    for (auto& [k, ts] : out) {
        std::sort(ts.begin(), ts.end());
    }
    return out;
}

namespace detail {

// Incremental row echelon basis over Q(i) for sparse vectors.
template <class Key>
class ExactSpan {
public:
    using Vector = std::map<Key, GaussianRational>;

    // Adds v; returns true if it was independent of the current span.
    bool insert(Vector v) {
        for (const auto& [pivot, row] : rows_) {
            auto it = v.find(pivot);
            if (it == v.end()) {
                continue;
            }
            GaussianRational f = it->second;
            for (const auto& [k, x] : row) {
                auto& slot = v[k];
                slot -= f * x;
                if (slot.is_zero()) {
                    v.erase(k);
                }
            }
        }
        if (v.empty()) {
            return false;
        }
        Key pivot = v.begin()->first;
        GaussianRational inv = v.begin()->second.inverse();
        for (auto& [k, x] : v) {
            x *= inv;
        }
        // keep rows fully reduced against the new pivot
        for (auto& [p, row] : rows_) {
            auto it = row.find(pivot);
            if (it == row.end()) {
                continue;
            }
            GaussianRational f = it->second;
            for (const auto& [k, x] : v) {
                auto& slot = row[k];
                slot -= f * x;
                if (slot.is_zero()) {
                    row.erase(k);
                }
            }
        }
        rows_.emplace(pivot, std::move(v));
        return true;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    std::map<Key, Vector> rows_;
};

} // namespace detail

/// Linear dimension of C*(E,V) for acyclic E, computed exactly: per degree,
/// the rank of the zero-obstruction map restricted to the span of all units
/// (its kernel is exactly the set of combinations with ‖·‖_V = 0).
inline std::size_t acyclic_dimension(const GraphHandle& g, const VertexSet& ideal) {
    require_subset_of(*g, ideal);
    auto units = all_units(*g);
    ReachabilityProfile prof(*g);
    std::size_t dim = 0;
    for (const auto& [k, terms] : units) {
        std::size_t top = 0;
        for (const auto& t : terms) {
            top = std::max(top, t.row());
        }
        detail::ExactSpan<std::pair<std::size_t, Term>> span;
        for (const auto& t : terms) {
            Element u(g);
            u.accumulate(t, 1);
            span.insert(zero_obstruction(u, ideal, prof, top));
        }
        dim += span.rank();
    }
    return dim;
}

/// Dimension of the linear span of the evaluated units S_mu S_nu^* (acyclic
/// graphs only), by numerical rank with tolerance 1e-9.
inline std::size_t evaluated_image_dimension(const CheckedFamily& fam) {
    auto units = all_units(fam.graph());
    const auto n = static_cast<Eigen::Index>(fam.family().dim);
    std::vector<Matrix> cols;
    for (const auto& [k, terms] : units) {
        for (const auto& t : terms) {
            cols.push_back(fam.S(t.mu) * fam.S(t.nu).adjoint());
        }
    }
    if (cols.empty()) {
        return 0;
    }
    Matrix stacked(n * n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        stacked.col(static_cast<Eigen::Index>(c)) = Eigen::Map<const Eigen::VectorXcd>(cols[c].data(), n * n);
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(stacked);
    qr.setThreshold(kFamilyTolerance);
    return static_cast<std::size_t>(qr.rank());
}

/// The path-space family of C*(E,V) for acyclic E: one basis vector per path
/// mu ending at an "end" x, where ends are sinks outside V and regular
/// vertices outside V. S_e prepends e, P_u keeps paths starting at u and D
/// counts path length. This family satisfies all three uniqueness hypotheses.
inline CKFamily path_space_family(const Graph& g, const VertexSet& ideal) {
    if (!is_acyclic(g)) {
        throw domain_error("has_cycle", "path-space family needs an acyclic graph");
    }
    require_subset_of(g, ideal);
    struct Basis {
        VertexId end;
        Path mu;
    };
    std::vector<Basis> basis;
    std::vector<std::vector<Path>> by_range(g.vertex_count());
    for (std::size_t n = 0;; ++n) {
        auto ps = paths_of_length(g, n);
        if (ps.empty()) {
            break;
        }
        for (auto& p : ps) {
            by_range[p.range()].push_back(std::move(p));
        }
    }
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        if (!ideal.test(x)) {
            for (const auto& mu : by_range[x]) {
                basis.push_back({x, mu});
            }
        }
    }
    const auto dim = static_cast<Eigen::Index>(basis.size());
    auto index_of = [&](VertexId end, const Path& mu) -> Eigen::Index {
        for (Eigen::Index k = 0; k < dim; ++k) {
            if (basis[static_cast<std::size_t>(k)].end == end && basis[static_cast<std::size_t>(k)].mu == mu) {
                return k;
            }
        }
        return -1;
    };
    CKFamily fam;
    // a zero-dimensional family is not representable; pad with one null vector
    Eigen::Index n = std::max<Eigen::Index>(dim, 1);
    fam.dim = static_cast<std::size_t>(n);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        fam.P[g.vertex_name(v)] = Matrix::Zero(n, n);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        fam.S[g.edge_name(e)] = Matrix::Zero(n, n);
    }
    Matrix d = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const Basis& b = basis[static_cast<std::size_t>(k)];
        fam.P[g.vertex_name(b.mu.source())](k, k) = 1.0;
        d(k, k) = static_cast<double>(b.mu.length());
        for (EdgeId e : g.in_edges(b.mu.source())) {
            Path emu = Path::of_edges(g, {e}).concat(b.mu);
            fam.S[g.edge_name(e)](index_of(b.end, emu), k) = 1.0;
        }
    }
    fam.D = d;
    return fam;
}

} // namespace relgraph
