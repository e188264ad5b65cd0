#include "nmc/error.hpp"
#include "nmc/graph.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

using namespace nmc;

namespace {

DenseGraph from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in, "test");
}

}  // namespace

TEST(Builders, CycleBasics) {
    const DenseGraph g = build_cycle(8);
    EXPECT_EQ(g.vertex_count(), 8u);
    EXPECT_EQ(g.degree(), 2u);
    EXPECT_TRUE(g.is_edge(0, 1));
    EXPECT_TRUE(g.is_edge(0, 7));
    EXPECT_FALSE(g.is_edge(0, 4));
    EXPECT_FALSE(g.is_edge(0, 0));
    EXPECT_TRUE(g.is_simple());
    EXPECT_TRUE(g.is_connected());
    EXPECT_EQ(g.neighbors(0), (std::vector<VertexId>{1, 7}));
    EXPECT_EQ(g.nonedge_count(), 48u);
    EXPECT_THROW(build_cycle(2), ParameterError);
}

TEST(Builders, HypercubePetersenAndFriends) {
    const DenseGraph q3 = build_hypercube(3);
    EXPECT_EQ(q3.vertex_count(), 8u);
    EXPECT_EQ(q3.degree(), 3u);
    EXPECT_TRUE(q3.is_edge(0b101, 0b100));
    EXPECT_FALSE(q3.is_edge(0b101, 0b110));

    const DenseGraph pet = build_petersen();
    EXPECT_EQ(pet.vertex_count(), 10u);
    EXPECT_EQ(pet.degree(), 3u);

    const DenseGraph k = build_complete_with_loops(4);
    EXPECT_EQ(k.degree(), 4u);
    EXPECT_EQ(k.self_loop_total(), 4u);
    EXPECT_EQ(k.nonedge_count(), 0u);

    const DenseGraph cm = build_complete_minus_matching(6);
    EXPECT_EQ(cm.degree(), 4u);
    EXPECT_FALSE(cm.is_edge(2, 3));
    EXPECT_TRUE(cm.is_edge(2, 4));
    EXPECT_THROW(build_complete_minus_matching(5), ParameterError);
}

TEST(Builders, RandomRegularIsSimpleRegularAndSeeded) {
    const DenseGraph a = build_random_regular(20, 3, 9);
    const DenseGraph b = build_random_regular(20, 3, 9);
    EXPECT_EQ(a.adjacency(), b.adjacency());
    EXPECT_TRUE(a.is_simple());
    EXPECT_EQ(a.self_loop_total(), 0u);
    for (VertexId v = 0; v < 20; ++v) EXPECT_EQ(a.neighbors(v).size(), 3u);
    EXPECT_THROW(build_random_regular(5, 3, 1), ParameterError);
}

TEST(DenseGraph, RejectsAsymmetryAndIrregularity) {
    AdjacencyMatrix m = AdjacencyMatrix::Zero(3, 3);
    m(0, 1) = 1;
    EXPECT_THROW(DenseGraph(m, "asym"), ValidationError);
    m(1, 0) = 1;
    EXPECT_THROW(DenseGraph(m, "irregular"), ValidationError);
}

TEST(DenseGraph, OutOfRangeVertex) {
    const DenseGraph g = build_cycle(5);
    EXPECT_THROW(g.is_edge(0, 5), UsageError);
}

TEST(EdgeList, SingleOrientationAndBothOrientations) {
    const DenseGraph one = from_text("# square\n4 2\n0 1\n1 2\n2 3\n3 0\n");
    const DenseGraph both = from_text("4 2\n0 1\n1 0\n1 2\n2 1\n2 3\n3 2\n3 0\n0 3\n");
    EXPECT_EQ(one.adjacency(), build_cycle(4).adjacency());
    EXPECT_EQ(both.adjacency(), build_cycle(4).adjacency());
}

TEST(EdgeList, SelfLoopCountsOnce) {
    const DenseGraph g = from_text("2 1\n0 0\n1 1\n");
    EXPECT_EQ(g.degree(), 1u);
    EXPECT_TRUE(g.is_edge(0, 0));
}

TEST(EdgeList, Errors) {
    EXPECT_THROW(from_text("4 2\n0 1\n1 2\n2 3\n"), ValidationError);              // irregular
    EXPECT_THROW(from_text("4 2\n0 1\n0 1\n1 2\n2 3\n3 0\n"), ValidationError);     // duplicate
    EXPECT_THROW(from_text("4 2\n0 1\n1 0\n1 2\n2 3\n3 0\n"), ValidationError);     // half-mirrored
    EXPECT_THROW(from_text("4 2\n0 1\n1 2\n2 3\n3 9\n"), ParseError);              // range
    EXPECT_THROW(from_text("0 1\n"), CapabilityError);
    EXPECT_THROW(from_text("4 2\n0 x\n"), ParseError);
    EXPECT_THROW(from_text(""), ParseError);
    try {
        from_text("4 2\n0 1\n1 2\n2 3\n");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("vertex 0 has degree 1"), std::string::npos) << e.what();
    }
}

TEST(EdgeList, WriteThenParseRoundTrips) {
    for (const DenseGraph& g : {build_petersen(), build_hypercube(4), build_random_regular(30, 4, 2)}) {
        std::stringstream s;
        write_edge_list(s, g);
        EXPECT_EQ(parse_edge_list(s).adjacency(), g.adjacency()) << g.describe();
    }
}

TEST(EdgeCount, Examples) {
    const DenseGraph c = build_cycle(8);
    const std::vector<VertexId> all{0, 1, 2, 3, 4, 5, 6, 7};
    EXPECT_EQ(edge_count_between(c, all, all), 16u);
    const std::vector<VertexId> a{0}, b{1, 7, 4};
    EXPECT_EQ(edge_count_between(c, a, b), 2u);
    const std::vector<VertexId> bad{8};
    EXPECT_THROW(edge_count_between(c, a, bad), UsageError);
}

TEST(Samplers, CycleMarginalsWithinFiveSigma) {
    const DenseGraph g = build_cycle(8);
    Rng rng(1234);
    const int draws = 80000;
    std::map<VertexPair, int> edge_hits, nonedge_hits;
    for (int i = 0; i < draws; ++i) {
        const auto e = g.sample_edge(rng);
        ASSERT_TRUE(g.is_edge(e.first, e.second));
        ++edge_hits[e];
        const auto ne = g.sample_nonedge(rng);
        ASSERT_FALSE(g.is_edge(ne.first, ne.second));
        ++nonedge_hits[ne];
    }
    auto check = [&](const std::map<VertexPair, int>& hits, std::size_t support) {
        EXPECT_EQ(hits.size(), support);
        const double p = 1.0 / support;
        const double sigma = std::sqrt(draws * p * (1 - p));
        for (const auto& [pair, count] : hits) EXPECT_NEAR(count, draws * p, 5 * sigma);
    };
    check(edge_hits, 16);
    check(nonedge_hits, 48);
}
