#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace testing_support;

namespace {

using NamePair = std::pair<std::vector<std::string>, std::vector<std::string>>;

std::vector<NamePair> named(const Graph& g, const std::vector<TPair>& ps) {
    std::vector<NamePair> out;
    for (const auto& p : ps) {
        out.emplace_back(vertex_names(g, p.kernel), vertex_names(g, p.coisometric));
    }
    return out;
}

VertexSet from_mask(const Graph& g, unsigned mask) {
    VertexSet s = g.empty_set();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (mask >> v & 1u) {
            s.set(v);
        }
    }
    return s;
}

// All (F, Fp) among 4^n subset pairs satisfying the three invariants, checked
// edge by edge without library helpers.
std::set<std::pair<unsigned, unsigned>> brute_force_tpairs(const Graph& g, const VertexSet& ideal) {
    std::set<std::pair<unsigned, unsigned>> out;
    unsigned n = g.vertex_count();
    unsigned vmask = 0;
    for (VertexId v = 0; v < n; ++v) {
        vmask |= ideal.test(v) ? 1u << v : 0u;
    }
    for (unsigned f = 0; f < (1u << n); ++f) {
        bool hereditary = true;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if ((f >> g.src(e) & 1u) && !(f >> g.dst(e) & 1u)) {
                hereditary = false;
            }
        }
        if (!hereditary) {
            continue;
        }
        for (unsigned fp = 0; fp < (1u << n); ++fp) {
            if ((f & ~fp) || (vmask & ~fp)) {
                continue;
            }
            bool ok = true;
            for (VertexId v = 0; v < n && ok; ++v) {
                if (!(fp >> v & 1u) || (f >> v & 1u)) {
                    continue;
                }
                bool emits_out = false;
                for (EdgeId e = 0; e < g.edge_count(); ++e) {
                    emits_out = emits_out || (g.src(e) == v && !(f >> g.dst(e) & 1u));
                }
                ok = emits_out;
            }
            if (ok) {
                out.emplace(f, fp);
            }
        }
    }
    return out;
}

unsigned to_mask(const VertexSet& s) {
    unsigned m = 0;
    for (auto v = s.find_first(); v != VertexSet::npos; v = s.find_next(v)) {
        m |= 1u << v;
    }
    return m;
}

} // namespace

TEST(TPairs, Examples) {
    auto g = arrow();
    auto r = enumerate_tpairs(*g, vertex_set(*g, {"v"}));
    EXPECT_EQ(named(*g, r.elements),
              (std::vector<NamePair>{{{}, {"v"}}, {{"v", "w"}, {"v", "w"}}}));

    auto empty = graph_of({}, {});
    auto e = enumerate_tpairs(*empty, empty->empty_set());
    ASSERT_EQ(e.elements.size(), 1u);
    EXPECT_TRUE(e.elements[0].kernel.none() && e.elements[0].coisometric.none());

    // Toeplitz algebra: 0, the compacts and everything
    auto loop = rose(1);
    EXPECT_EQ(named(*loop, enumerate_tpairs(*loop, loop->empty_set()).elements),
              (std::vector<NamePair>{{{}, {}}, {{}, {"v"}}, {{"v"}, {"v"}}}));
    EXPECT_EQ(named(*loop, enumerate_tpairs(*loop, loop->full_set()).elements),
              (std::vector<NamePair>{{{}, {"v"}}, {{"v"}, {"v"}}}));
}

TEST(TPairs, ArrowWithoutRelationsHasFourPairs) {
    auto g = arrow();
    auto r = enumerate_tpairs(*g, g->empty_set());
    EXPECT_EQ(named(*g, r.elements), (std::vector<NamePair>{{{}, {}}, {{}, {"v"}}, {{"w"}, {"w"}}, {{"v", "w"}, {"v", "w"}}}));
    EXPECT_FALSE(is_tpair(*g, g->empty_set(), {vertex_set(*g, {"w"}), g->full_set()}));
}

TEST(TPairs, MatchBruteForceOnCorpus) {
    Rng rng(13);
    for (const auto& g : corpus()) {
        for (int k = 0; k < 3; ++k) {
            VertexSet ideal = random_subset(rng, *g);
            auto r = enumerate_tpairs(*g, ideal);
            std::set<std::pair<unsigned, unsigned>> got;
            for (const auto& p : r.elements) {
                EXPECT_TRUE(is_tpair(*g, ideal, p));
                got.emplace(to_mask(p.kernel), to_mask(p.coisometric));
            }
            EXPECT_EQ(got.size(), r.elements.size());
            EXPECT_EQ(got, brute_force_tpairs(*g, ideal));
        }
    }
}

TEST(TPairs, CoversAreTheTransitiveReduction) {
    Rng rng(17);
    for (const auto& g : corpus()) {
        VertexSet ideal = random_subset(rng, *g);
        auto r = enumerate_tpairs(*g, ideal);
        std::size_t n = r.elements.size();
        std::set<std::pair<std::size_t, std::size_t>> covers(r.covers.begin(), r.covers.end());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                bool lt = i != j && r.elements[i].leq(r.elements[j]);
                bool between = false;
                for (std::size_t k = 0; k < n && lt; ++k) {
                    between = between || (k != i && k != j && r.elements[i].leq(r.elements[k]) &&
                                          r.elements[k].leq(r.elements[j]));
                }
                EXPECT_EQ(covers.count({i, j}) == 1, lt && !between);
            }
        }
    }
}

TEST(TPairs, MeetAndJoinStayInLattice) {
    Rng rng(19);
    for (const auto& g : corpus()) {
        VertexSet ideal = random_subset(rng, *g);
        auto els = enumerate_tpairs(*g, ideal).elements;
        for (const auto& x : els) {
            for (const auto& y : els) {
                TPair m = tpair_meet(*g, ideal, x, y);
                TPair j = tpair_join(*g, ideal, x, y);
                EXPECT_TRUE(m.leq(x) && m.leq(y));
                EXPECT_TRUE(x.leq(j) && y.leq(j));
                // least upper bound and greatest lower bound within the lattice
                for (const auto& z : els) {
                    if (x.leq(z) && y.leq(z)) {
                        EXPECT_TRUE(j.leq(z));
                    }
                    if (z.leq(x) && z.leq(y)) {
                        EXPECT_TRUE(z.leq(m));
                    }
                }
            }
        }
    }
}

TEST(SimpleLattice, Examples) {
    auto g = arrow();
    auto s = enumerate_hereditary_saturated(*g, vertex_set(*g, {"v"}));
    ASSERT_EQ(s.size(), 2u);
    EXPECT_TRUE(s[0].none());
    EXPECT_EQ(s[1], g->full_set());
    EXPECT_EQ(enumerate_hereditary_saturated(*g, g->empty_set()), enumerate_hereditary(*g));
    auto loop = rose(1);
    EXPECT_EQ(enumerate_hereditary_saturated(*loop, loop->full_set()).size(), 2u);
}

TEST(SimpleLattice, HereditarySetsMatchBruteForce) {
    for (const auto& g : corpus()) {
        std::set<unsigned> want;
        for (unsigned f = 0; f < (1u << g->vertex_count()); ++f) {
            if (is_hereditary(*g, from_mask(*g, f))) {
                want.insert(f);
            }
        }
        std::set<unsigned> got;
        for (const auto& f : enumerate_hereditary(*g)) {
            got.insert(to_mask(f));
        }
        EXPECT_EQ(got, want);
    }
}

TEST(EmbedSimple, Examples) {
    auto g = arrow();
    VertexSet v = vertex_set(*g, {"v"});
    TPair p = embed_simple(*g, g->empty_set(), v);
    EXPECT_TRUE(p.kernel.none());
    EXPECT_EQ(p.coisometric, v);
    TPair all = embed_simple(*g, g->full_set(), v);
    EXPECT_EQ(all.kernel, g->full_set());
    EXPECT_EQ(all.coisometric, g->full_set());
    try {
        embed_simple(*g, vertex_set(*g, {"w"}), v);
        FAIL();
    } catch (const domain_error& e) {
        EXPECT_EQ(e.kind(), "not_saturated");
    }
}

TEST(Classify, Examples) {
    auto g = arrow();
    Classification c = classify_lattice(*g, vertex_set(*g, {"v"}));
    EXPECT_TRUE(c.case_i);
    EXPECT_TRUE(c.simple_bijection);

    auto two = rose(2);
    Classification r = classify_lattice(*two, two->full_set());
    EXPECT_TRUE(r.case_i);
    EXPECT_FALSE(r.case_ii);

    Classification none = classify_lattice(*g, g->empty_set());
    EXPECT_FALSE(none.case_i);
    EXPECT_FALSE(none.case_ii);
    EXPECT_GT(enumerate_tpairs(*g, g->empty_set()).elements.size(),
              enumerate_hereditary_saturated(*g, g->empty_set()).size());
}

TEST(Classify, SimpleCasesEmbedBijectively) {
    Rng rng(23);
    std::size_t simple_seen = 0;
    for (const auto& g : corpus()) {
        VertexClasses cls = vertex_classes(*g);
        for (const VertexSet& ideal : {cls.regular, cls.regular | random_subset(rng, *g)}) {
            auto r = enumerate_tpairs(*g, ideal);
            if (!r.classification.simple()) {
                continue;
            }
            ++simple_seen;
            EXPECT_TRUE(r.classification.simple_bijection);
            ASSERT_EQ(r.simple_lattice.size(), r.elements.size());
            for (std::size_t i = 0; i < r.simple_lattice.size(); ++i) {
                for (std::size_t j = 0; j < r.simple_lattice.size(); ++j) {
                    TPair a = embed_simple(*g, r.simple_lattice[i], ideal);
                    TPair b = embed_simple(*g, r.simple_lattice[j], ideal);
                    EXPECT_EQ(r.simple_lattice[i].is_subset_of(r.simple_lattice[j]), a.leq(b));
                }
            }
        }
    }
    EXPECT_GT(simple_seen, 50u);
}

TEST(Decomposition, Examples) {
    auto g = arrow();
    VertexSet v = vertex_set(*g, {"v"});
    StructureDecomposition d = structure_decomposition(*g, v, vertex_set(*g, {"w"}));
    EXPECT_EQ(d.sub, *graph_of({"w"}, {}));
    EXPECT_TRUE(d.sub_ideal.none());
    EXPECT_EQ(d.quot, *graph_of({"v"}, {}));
    EXPECT_EQ(vertex_names(d.quot, d.quot_ideal), (std::vector<std::string>{"v"}));
    EXPECT_EQ(d.saturation, g->full_set());

    StructureDecomposition none = structure_decomposition(*g, v, g->empty_set());
    EXPECT_EQ(none.sub.vertex_count(), 0u);
    EXPECT_EQ(none.quot, *g);
    EXPECT_EQ(none.saturation, v_saturation(*g, g->empty_set(), v));

    StructureDecomposition all = structure_decomposition(*g, v, g->full_set());
    EXPECT_EQ(all.quot.vertex_count(), 0u);
    EXPECT_THROW(structure_decomposition(*g, v, v), domain_error);
}

TEST(Annihilator, Examples) {
    auto g = arrow();
    EXPECT_EQ(annihilator(*g, g->empty_set()), g->full_set());
    EXPECT_TRUE(annihilator(*g, g->full_set()).none());
    EXPECT_EQ(vertex_names(*g, annihilator(*g, vertex_set(*g, {"v"}))), (std::vector<std::string>{"w"}));
}
