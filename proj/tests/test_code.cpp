#include "nmc/cayley.hpp"
#include "nmc/code.hpp"
#include "nmc/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <memory>
#include <set>

using namespace nmc;

namespace {

std::vector<std::shared_ptr<const RegularGraph>> backends() {
    return {std::make_shared<DenseGraph>(build_cycle(8)), std::make_shared<DenseGraph>(build_petersen()),
            std::make_shared<DenseGraph>(build_random_regular(12, 3, 4)),
            std::make_shared<DenseGraph>(LdGraph(LdParams(3, 2)).to_dense()),
            std::make_shared<LdGraph>(LdParams(3, 2)), std::make_shared<LdGraph>(LdParams(5, 3))};
}

}  // namespace

TEST(Bits, Conversions) {
    EXPECT_EQ(bit_from_int(0), Bit::Zero);
    EXPECT_EQ(bit_from_int(1), Bit::One);
    EXPECT_THROW(bit_from_int(2), UsageError);
    EXPECT_EQ(flip(Bit::Zero), Bit::One);
    EXPECT_EQ(to_int(Bit::One), 1);
}

TEST(Code, RoundTripEveryBackend) {
    for (const auto& g : backends()) {
        Rng rng(11);
        for (int i = 0; i < 2000; ++i) {
            const Bit b = coin(rng) ? Bit::One : Bit::Zero;
            ASSERT_EQ(decode(*g, encode(*g, b, rng)), b) << g->describe();
        }
    }
}

TEST(Code, EncodeNeedsNonEdges) {
    Rng rng(1);
    EXPECT_THROW(encode(build_complete_with_loops(4), Bit::Zero, rng), UsageError);
}

TEST(Code, SupportIsExactlyEdgesAndNonEdges) {
    for (const DenseGraph& g : {build_cycle(6), build_petersen(), build_hypercube(3), build_random_regular(12, 5, 1)}) {
        const auto n = g.vertex_count();
        std::set<VertexPair> ones, zeros;
        Rng rng(2);
        for (int i = 0; i < 20000; ++i) {
            const Codeword c1 = encode(g, Bit::One, rng);
            ones.insert({c1.left, c1.right});
            const Codeword c0 = encode(g, Bit::Zero, rng);
            zeros.insert({c0.left, c0.right});
        }
        for (VertexId u = 0; u < n; ++u) {
            for (VertexId v = 0; v < n; ++v) {
                EXPECT_EQ(ones.count({u, v}), g.is_edge(u, v) ? 1u : 0u);
                EXPECT_EQ(zeros.count({u, v}), g.is_edge(u, v) ? 0u : 1u);
            }
        }
    }
}

TEST(Code, C4NonEdgesUniform) {
    const DenseGraph g = build_cycle(4);
    Rng rng(9);
    const int draws = 40000;
    std::map<VertexPair, int> hits;
    for (int i = 0; i < draws; ++i) {
        const Codeword c = encode(g, Bit::Zero, rng);
        ++hits[{c.left, c.right}];
    }
    ASSERT_EQ(hits.size(), 8u);  // (v, v) and (v, v + 2) for each v
    const double sigma = std::sqrt(draws * (1.0 / 8) * (7.0 / 8));
    for (const auto& [pair, count] : hits) {
        EXPECT_TRUE(pair.first == pair.second || (pair.first + 2) % 4 == pair.second);
        EXPECT_NEAR(count, draws / 8.0, 5 * sigma);
    }
}

TEST(Code, DecodeExamples) {
    const DenseGraph g = build_cycle(8);
    EXPECT_EQ(decode(g, {0, 1}), Bit::One);
    EXPECT_EQ(decode(g, {0, 4}), Bit::Zero);
}

TEST(Epsilon, FromMaxFlip) {
    EXPECT_EQ(epsilon_from_max_flip(make_rational(13, 15)), make_rational(11, 30));
    EXPECT_EQ(epsilon_from_max_flip(make_rational(1, 2)), 0);
    EXPECT_EQ(epsilon_from_max_flip(make_rational(1, 3)), 0);
    EXPECT_EQ(epsilon_from_max_flip(make_rational(1, 1)), make_rational(1, 2));
    EXPECT_THROW(epsilon_from_max_flip(make_rational(3, 2)), UsageError);
    EXPECT_THROW(epsilon_from_max_flip(make_rational(-1, 2)), UsageError);
}

TEST(Fractions, FormatAndParse) {
    EXPECT_EQ(to_fraction_string(make_rational(6, 8)), "3/4");
    EXPECT_EQ(to_fraction_string(make_rational(0, 5)), "0/1");
    EXPECT_EQ(to_fraction_string(make_rational(2, 2)), "1/1");
    EXPECT_EQ(parse_fraction("13/15"), make_rational(13, 15));
    EXPECT_EQ(parse_fraction(to_fraction_string(make_rational(-7, 21))), make_rational(-1, 3));
    EXPECT_THROW(parse_fraction("1/0"), ParseError);
    EXPECT_THROW(parse_fraction("half"), ParseError);
}
