#include "nmc/cayley.hpp"
#include "nmc/error.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace nmc;

TEST(LdParams, Validation) {
    EXPECT_NO_THROW(LdParams(3, 2));
    EXPECT_NO_THROW(LdParams(3, 3));
    EXPECT_TRUE(LdParams(5, 2).expansion_bound_applies());
    EXPECT_FALSE(LdParams(3, 3).expansion_bound_applies());
    EXPECT_FALSE(LdParams(3, 1).expansion_bound_applies());
    EXPECT_THROW(LdParams(3, 0), ParameterError);
    EXPECT_THROW(LdParams(4, 2), ParameterError);
    EXPECT_THROW(LdParams(1000003, 4), ParameterError);  // p^5 overflows
    EXPECT_EQ(LdParams(5, 3).to_string(), "ld:p=5,t=3");
    EXPECT_EQ(LdParams(5, 3).vertex_count(), 625u);
}

TEST(LdGraph, IndexIsLittleEndianBaseP) {
    const LdGraph g(LdParams(3, 2));
    EXPECT_EQ(g.vertex(5).to_string(), "2,1,0");
    EXPECT_EQ(g.index_of(FieldVector(PrimeModulus(3), {0, 0, 1})), 9u);
    for (VertexId v = 0; v < g.vertex_count(); ++v) EXPECT_EQ(g.index_of(g.vertex(v)), v);
    EXPECT_THROW(g.vertex(27), UsageError);
}

TEST(LdGraph, GeneratorMultisetP3T2) {
    const LdGraph g(LdParams(3, 2));
    std::map<std::string, int> mult;
    for (std::uint64_t a = 0; a < 3; ++a) {
        for (std::uint64_t b = 0; b < 3; ++b) ++mult[g.generator(a, b).to_string()];
    }
    EXPECT_EQ(mult.size(), 7u);
    EXPECT_EQ(mult["0,0,0"], 3);
    EXPECT_EQ(g.generator(2, 1).to_string(), "1,2,1");
    EXPECT_EQ(g.generator(0, 2).to_string(), "2,0,0");
    const auto distinct = g.distinct_generators();
    ASSERT_EQ(distinct.size(), 7u);
    EXPECT_EQ(distinct.front().to_string(), "0,0,0");
}

TEST(LdGraph, P2T1Enumeration) {
    const LdGraph g(LdParams(2, 1));
    EXPECT_EQ(g.vertex_count(), 4u);
    EXPECT_EQ(g.degree(), 4u);
    EXPECT_EQ(g.distinct_degree(), 3u);
    // generators: (0,0) twice, (1,0), (1,1)
    EXPECT_EQ(g.neighbors(0), (std::vector<VertexId>{0, 1, 3}));
    EXPECT_FALSE(g.is_edge(0, 2));
    const DenseGraph d = g.to_dense();
    EXPECT_EQ(d.multiplicity(0, 0), 2);
    EXPECT_EQ(d.multiplicity(0, 1), 1);
}

TEST(LdGraph, MembershipMatchesGeneratorListing) {
    for (auto [p, t] : {std::pair{3u, 2u}, std::pair{5u, 2u}, std::pair{3u, 1u}, std::pair{5u, 3u},
                        std::pair{3u, 3u}, std::pair{2u, 4u}}) {
        const LdGraph g(LdParams(p, t));
        EXPECT_EQ(g.to_dense().neighbors(0).size(), g.distinct_degree());
        const oracle::Matrix m = oracle::ld_matrix(p, t);
        const DenseGraph dense = g.to_dense();
        for (VertexId u = 0; u < g.vertex_count(); ++u) {
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                ASSERT_EQ(g.is_edge(u, v), m[u][v] != 0) << p << "," << t << " " << u << "->" << v;
                ASSERT_EQ(dense.multiplicity(u, v), m[u][v]);
            }
        }
    }
}

TEST(LdGraph, EdgeHitProbabilities) {
    // Pr[(u, v) uniform is an edge] = (p(p-1)+1) / p^{t+1}
    auto hit = [](unsigned p, unsigned t) {
        const LdGraph g(LdParams(p, t));
        std::uint64_t edges = 0;
        for (VertexId v = 0; v < g.vertex_count(); ++v) edges += g.is_edge(0, v);
        return std::pair{edges, g.vertex_count()};
    };
    EXPECT_EQ(hit(3, 2), (std::pair<std::uint64_t, std::uint64_t>{7, 27}));
    EXPECT_EQ(hit(5, 3), (std::pair<std::uint64_t, std::uint64_t>{21, 625}));
}

TEST(LdGraph, VectorMembershipChecksShape) {
    const LdGraph g(LdParams(3, 2));
    const FieldVector u(PrimeModulus(3), {0, 0, 0});
    EXPECT_TRUE(g.is_edge(u, FieldVector(PrimeModulus(3), {1, 2, 1})));
    EXPECT_FALSE(g.is_edge(u, FieldVector(PrimeModulus(3), {0, 1, 0})));
    EXPECT_THROW(g.is_edge(u, FieldVector(PrimeModulus(3), {0, 1})), UsageError);
    EXPECT_THROW(g.is_edge(u, FieldVector(PrimeModulus(5), {0, 1, 0})), UsageError);
}

TEST(LdGraph, SamplersRespectMembership) {
    const LdGraph g(LdParams(5, 3));
    Rng rng(77);
    for (int i = 0; i < 5000; ++i) {
        const auto e = g.sample_edge(rng);
        ASSERT_TRUE(g.is_edge(e.first, e.second));
        const auto ne = g.sample_nonedge_counted(rng);
        ASSERT_FALSE(g.is_edge(ne.pair.first, ne.pair.second));
        ASSERT_GE(ne.attempts, 1u);
    }
}

TEST(LdGraph, SelfLoopSampledWithMultiplicityP) {
    const LdGraph g(LdParams(3, 2));
    Rng rng(3);
    const int draws = 90000;
    int loops = 0;
    for (int i = 0; i < draws; ++i) {
        const auto e = g.sample_edge(rng);
        loops += e.first == e.second;
    }
    const double p = 3.0 / 9.0;
    EXPECT_NEAR(loops, draws * p, 5 * std::sqrt(draws * p * (1 - p)));
}

TEST(LdGraph, CapabilityLimits) {
    Rng rng(1);
    EXPECT_THROW(LdGraph(LdParams(3, 1)).sample_nonedge(rng), CapabilityError);
    EXPECT_THROW(LdGraph(LdParams(11, 2)).neighbors(0), CapabilityError);
    EXPECT_THROW(LdGraph(LdParams(17, 3)).to_dense(), CapabilityError);
}
