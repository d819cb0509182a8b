#pragma once

#include <cstddef>
#include <functional>
#include <unordered_map>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "relgraph/graph.hpp"

namespace relgraph {

/// Exact-length reachability relations R_t (row u = endpoints of length-t
/// paths from u). Since R_{t+1} = R_t ∘ R_1 and there are finitely many
/// relations, the sequence is eventually periodic; the profile stores one
/// preperiod + period window and answers queries for every t through it.
class ReachabilityProfile {
public:
    using Relation = std::vector<VertexSet>;

    explicit ReachabilityProfile(const Graph& g) : n_(g.vertex_count()) {
        Relation step(n_, g.empty_set());
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            step[g.src(e)].set(g.dst(e));
        }
        Relation cur(n_, g.empty_set());
        for (VertexId v = 0; v < n_; ++v) {
            cur[v].set(v);
        }
        std::unordered_map<std::size_t, std::vector<std::size_t>> seen;
        for (;;) {
            std::size_t h = hash(cur);
            auto& bucket = seen[h];
            for (std::size_t t : bucket) {
                if (relations_[t] == cur) {
                    preperiod_ = t;
                    period_ = relations_.size() - t;
                    return;
                }
            }
            bucket.push_back(relations_.size());
            relations_.push_back(cur);
            Relation next(n_, g.empty_set());
            for (VertexId u = 0; u < n_; ++u) {
                const VertexSet& row = cur[u];
                for (auto w = row.find_first(); w != VertexSet::npos; w = row.find_next(w)) {
                    next[u] |= step[w];
                }
            }
            cur = std::move(next);
        }
    }

    std::size_t preperiod() const { return preperiod_; }
    std::size_t period() const { return period_; }
    std::size_t window() const { return preperiod_ + period_; }

    const Relation& relation(std::size_t t) const {
        if (t >= relations_.size()) {
            t = preperiod_ + (t - preperiod_) % period_;
        }
        return relations_[t];
    }

    // some path of length exactly t leaves u
    bool alive(std::size_t t, VertexId u) const { return relation(t)[u].any(); }

    // some path of length exactly t from u ends outside `ideal`
    bool escapes(std::size_t t, VertexId u, const VertexSet& ideal) const {
        return (relation(t)[u] - ideal).any();
    }

    bool escapes_ever(VertexId u, const VertexSet& ideal) const {
        for (std::size_t t = 0; t < window(); ++t) {
            if (escapes(t, u, ideal)) {
                return true;
            }
        }
        return false;
    }

    // Arbitrarily long paths leave u, i.e. u reaches a cycle. alive_t is
    // nonincreasing in t and constant from the preperiod on.
    bool alive_forever(VertexId u) const { return alive(preperiod_, u); }

private:
    static std::size_t hash(const Relation& r) {
        std::size_t h = 0;
        for (const auto& row : r) {
            std::vector<VertexSet::block_type> blocks;
            boost::to_block_range(row, std::back_inserter(blocks));
            boost::hash_combine(h, boost::hash_range(blocks.begin(), blocks.end()));
        }
        return h;
    }

    std::size_t n_;
    std::vector<Relation> relations_;
    std::size_t preperiod_ = 0;
    std::size_t period_ = 1;
};

} // namespace relgraph
