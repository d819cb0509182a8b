#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "relgraph/algebra.hpp"
#include "relgraph/reachability.hpp"

namespace relgraph {

// Relative accuracy of reported norms (floating-point SVD of exact blocks).
inline constexpr double kNormRelativeTolerance = 1e-9;

inline double largest_singular_value(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    if (m.rows() == 1 || m.cols() == 1) {
        return m.norm();
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

// Coefficient matrix of the units sharing one range vertex.
struct Block {
    VertexId vertex = 0;
    std::vector<Path> rows; // mu-paths ending at `vertex`
    std::vector<Path> cols; // nu-paths ending at `vertex`
    Eigen::MatrixXcd values;
    double norm = 0.0;
};

/// Units with distinct range vertices act on orthogonal summands, so the
/// norm of a single-bucket element is the largest block norm.
struct VertexBlockDecomposition {
    std::map<VertexId, Block> blocks;

    double norm() const {
        double n = 0.0;
        for (const auto& [v, b] : blocks) {
            n = std::max(n, b.norm);
        }
        return n;
    }
};

inline VertexBlockDecomposition decompose_blocks(const Element& bucket) {
    VertexBlockDecomposition out;
    if (bucket.empty()) {
        return out;
    }
    const Term& first = bucket.terms().begin()->first;
    std::map<VertexId, std::pair<std::map<Path, Eigen::Index>, std::map<Path, Eigen::Index>>> index;
    for (const auto& [t, c] : bucket.terms()) {
        if (t.row() != first.row() || t.col() != first.col()) {
            throw domain_error("not_single_bucket", "block decomposition needs a single bidegree bucket");
        }
        auto& [rows, cols] = index[t.range()];
        rows.try_emplace(t.mu, 0);
        cols.try_emplace(t.nu, 0);
    }
    for (auto& [v, rc] : index) {
        Block b;
        b.vertex = v;
        Eigen::Index k = 0;
        for (auto& [p, idx] : rc.first) {
            idx = k++;
            b.rows.push_back(p);
        }
        k = 0;
        for (auto& [p, idx] : rc.second) {
            idx = k++;
            b.cols.push_back(p);
        }
        b.values = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(b.rows.size()),
                                          static_cast<Eigen::Index>(b.cols.size()));
        out.blocks.emplace(v, std::move(b));
    }
    for (const auto& [t, c] : bucket.terms()) {
        auto& rc = index[t.range()];
        out.blocks[t.range()].values(rc.first[t.mu], rc.second[t.nu]) = c.to_complex();
    }
    for (auto& [v, b] : out.blocks) {
        b.norm = largest_singular_value(b.values);
    }
    return out;
}

struct NormCertificate {
    enum class Kind { partial, escape, tail };
    Kind kind;
    std::size_t level; // s for partial, t for escape, preperiod for tail
    VertexId vertex;   // block that attains the maximum

    static const char* kind_name(Kind k) {
        switch (k) {
        case Kind::partial: return "partial";
        case Kind::escape: return "escape";
        case Kind::tail: return "tail";
        }
        return "?";
    }
};

struct NormReport {
    double norm = 0.0;
    std::optional<NormCertificate> certificate; // absent when norm == 0
    bool exact_zero = true;
};

namespace detail {

// Terms of `a` in row |mu| == s.
inline Element row_slice(const Element& a, std::size_t s) {
    Element out(a.graph_handle());
    for (const auto& [t, c] : a.terms()) {
        if (t.row() == s) {
            out.accumulate(t, c);
        }
    }
    return out;
}

inline Element drop_ranges_in(const Element& a, const VertexSet& ideal) {
    Element out(a.graph_handle());
    for (const auto& [t, c] : a.terms()) {
        if (!ideal.test(t.range())) {
            out.accumulate(t, c);
        }
    }
    return out;
}

inline std::size_t max_row(const Element& a) {
    std::size_t r = 0;
    for (const auto& [t, c] : a.terms()) {
        r = std::max(r, t.row());
    }
    return r;
}

inline std::size_t min_row(const Element& a) {
    std::size_t r = SIZE_MAX;
    for (const auto& [t, c] : a.terms()) {
        r = std::min(r, t.row());
    }
    return r;
}

// A block of b = c_{r0} survives in the limit iff its range vertex can still
// escape the ideal at some length or carries arbitrarily long paths.
inline bool block_is_live(const ReachabilityProfile& prof, VertexId u, const VertexSet& ideal) {
    return prof.escapes_ever(u, ideal) || prof.alive_forever(u);
}

inline void require_homogeneous(const Element& a) {
    if (!a.empty() && !a.degree()) {
        throw domain_error("not_homogeneous", "element is not homogeneous");
    }
}

} // namespace detail

/// Linear obstruction to ‖a‖_V = 0, keyed by (level, unit).
///
/// For each degree component with partial sums c_s = Σ_{i≤s} a_i ⊗ 1^{s-i}
/// (a_i = row-i part), it collects the units of c_s with range outside V for
/// s < top, and the units of c_top lying in live blocks. The map is linear in
/// `a` for fixed `top`; it is empty exactly when every component has
/// seminorm zero. `top` defaults to each component's own highest row and must
/// not be below it.
using Obstruction = std::map<std::pair<std::size_t, Term>, GaussianRational>;

inline Obstruction zero_obstruction(const Element& a, const VertexSet& ideal,
                                    const ReachabilityProfile& prof,
                                    std::optional<std::size_t> top = std::nullopt) {
    require_subset_of(a.graph(), ideal);
    Obstruction out;
    for (long k : a.degrees()) {
        Element part = degree_component(a, k);
        std::size_t r0 = detail::max_row(part);
        std::size_t level_top = top.value_or(r0);
        if (level_top < r0) {
            throw domain_error("bad_level", "obstruction level below the element's highest row");
        }
        Element c(a.graph_handle());
        for (std::size_t s = 0; s <= level_top; ++s) {
            c = add(right_tensor(c), detail::row_slice(part, s));
            for (const auto& [t, x] : c.terms()) {
                bool keep = s < level_top ? !ideal.test(t.range())
                                          : detail::block_is_live(prof, t.range(), ideal);
                if (keep) {
                    out.emplace(std::make_pair(s, t), x);
                }
            }
        }
    }
    return out;
}

/// ‖a‖_J for a homogeneous element, as the exact value of the limit over r:
///   max( max_{s<r0} ‖q_V(c_s)‖,
///        max{‖b_u‖ : u escapes V at some length},
///        max{‖b_u‖ : u reaches a cycle} ),   b = c_{r0}.
/// ‖q_V(x)‖ is the largest block of x whose range vertex lies outside V.
inline NormReport seminorm_homogeneous(const Element& a, const VertexSet& ideal,
                                       const ReachabilityProfile& prof) {
    require_subset_of(a.graph(), ideal);
    detail::require_homogeneous(a);
    NormReport rep;
    if (a.empty()) {
        return rep;
    }
    auto consider = [&](double value, NormCertificate cert) {
        if (value > rep.norm) {
            rep.norm = value;
            rep.certificate = cert;
        }
    };

    std::size_t r0 = detail::max_row(a);
    Element c(a.graph_handle());
    for (std::size_t s = detail::min_row(a); s <= r0; ++s) {
        c = add(right_tensor(c), detail::row_slice(a, s));
        if (s == r0) {
            break;
        }
        for (const auto& [v, blk] : decompose_blocks(detail::drop_ranges_in(c, ideal)).blocks) {
            consider(blk.norm, {NormCertificate::Kind::partial, s, v});
        }
    }

    auto blocks = decompose_blocks(c).blocks;
    for (std::size_t t = 0; t < prof.window(); ++t) {
        for (const auto& [u, blk] : blocks) {
            if (prof.escapes(t, u, ideal)) {
                consider(blk.norm, {NormCertificate::Kind::escape, t, u});
            }
        }
    }
    for (const auto& [u, blk] : blocks) {
        if (prof.alive_forever(u)) {
            consider(blk.norm, {NormCertificate::Kind::tail, prof.preperiod(), u});
        }
    }

    rep.exact_zero = zero_obstruction(a, ideal, prof).empty();
    if (rep.exact_zero) {
        rep.norm = 0.0;
        rep.certificate.reset();
    }
    return rep;
}

inline NormReport seminorm_homogeneous(const Element& a, const VertexSet& ideal) {
    return seminorm_homogeneous(a, ideal, ReachabilityProfile(a.graph()));
}

/// Exact verdict: a vanishes in C*(E,V) iff every degree component does.
inline bool is_zero(const Element& a, const VertexSet& ideal) {
    return zero_obstruction(a, ideal, ReachabilityProfile(a.graph())).empty();
}

/// Σ_k ‖a_(k)‖_V: the triangle inequality over the grading bounds the C*-norm.
inline double norm_upper_bound(const Element& a, const VertexSet& ideal) {
    ReachabilityProfile prof(a.graph());
    double total = 0.0;
    for (long k : a.degrees()) {
        total += seminorm_homogeneous(degree_component(a, k), ideal, prof).norm;
    }
    return total;
}

} // namespace relgraph
