#pragma once

#include "nmc/random.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nmc {

/// Dense vertex index in [0, n). Backends own the bijection to their natural labels.
using VertexId = std::uint64_t;
/// Ordered vertex pair. Every count in this library is over ordered pairs:
/// an undirected edge contributes two, a self-loop contributes one.
using VertexPair = std::pair<VertexId, VertexId>;

/// The capabilities the graph code needs from a d-regular graph.
class RegularGraph {
public:
    virtual ~RegularGraph() = default;

    virtual std::uint64_t vertex_count() const = 0;
    /// Out-degree in directed edges. Multigraph backends count multiplicity.
    virtual std::uint64_t degree() const = 0;
    /// Number of distinct v with is_edge(u, v), the same for every u.
    virtual std::uint64_t distinct_degree() const = 0;
    virtual bool counts_multiplicity() const = 0;

    virtual bool is_edge(VertexId u, VertexId v) const = 0;
    /// Uniform over the d*n directed (multi-)edges.
    virtual VertexPair sample_edge(Rng& rng) const = 0;
    /// Uniform over ordered pairs (u, v) with is_edge(u, v) == false.
    virtual VertexPair sample_nonedge(Rng& rng) const = 0;
    /// Distinct neighbors of v in increasing index order. Small backends only.
    virtual std::vector<VertexId> neighbors(VertexId v) const = 0;

    virtual std::string describe() const = 0;

    std::uint64_t nonedge_count() const {
        return vertex_count() * (vertex_count() - distinct_degree());
    }
};

/// Entry (u, v) is the number of directed edges u -> v.
using AdjacencyMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr std::uint64_t kDenseVertexCap = 4096;

/// Explicit adjacency-matrix backend for exact experiments (n <= 4096).
class DenseGraph final : public RegularGraph {
public:
    /// Validates symmetry and regularity; throws ValidationError naming the offending vertex.
    DenseGraph(AdjacencyMatrix adjacency, std::string name);

    std::uint64_t vertex_count() const override { return static_cast<std::uint64_t>(adj_.rows()); }
    std::uint64_t degree() const override { return degree_; }
    std::uint64_t distinct_degree() const override { return distinct_degree_; }
    bool counts_multiplicity() const override { return !simple_; }

    bool is_edge(VertexId u, VertexId v) const override;
    VertexPair sample_edge(Rng& rng) const override;
    VertexPair sample_nonedge(Rng& rng) const override;
    std::vector<VertexId> neighbors(VertexId v) const override;
    std::string describe() const override { return name_; }

    /// Every entry is 0 or 1 (self-loops allowed).
    bool is_simple() const noexcept { return simple_; }
    std::uint64_t self_loop_total() const noexcept { return trace_; }
    const AdjacencyMatrix& adjacency() const noexcept { return adj_; }
    std::uint8_t multiplicity(VertexId u, VertexId v) const {
        return adj_(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
    }

    /// Adjacency converted to a floating or integer Eigen matrix.
    template <typename Scalar>
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> adjacency_as() const {
        return adj_.cast<Scalar>();
    }

    /// Directed out-edges of v, repeated per multiplicity.
    std::span<const VertexId> out_edges(VertexId v) const { return out_[v]; }

    bool is_connected() const;

private:
    void check_vertex(VertexId v) const;

    AdjacencyMatrix adj_;
    std::string name_;
    std::uint64_t degree_ = 0;
    std::uint64_t distinct_degree_ = 0;
    std::uint64_t trace_ = 0;
    bool simple_ = true;
    std::vector<std::vector<VertexId>> out_;
};

DenseGraph build_cycle(std::uint64_t n);
/// All-ones adjacency, d = n; spectral calibration only (it has no non-edges).
DenseGraph build_complete_with_loops(std::uint64_t n);
DenseGraph build_hypercube(unsigned k);
/// Configuration model with whole-pairing rejection of loops and multi-edges.
DenseGraph build_random_regular(std::uint64_t n, std::uint64_t d, std::uint64_t seed);
DenseGraph build_petersen();
/// K_n with a perfect matching removed; (n-2)-regular, n even.
DenseGraph build_complete_minus_matching(std::uint64_t n);

/// Edge-list text: header "n d", then one "u v" line per undirected edge
/// ("v v" for a self-loop), '#' comment lines.
DenseGraph parse_edge_list(std::istream& in, const std::string& name = "edge-list");
DenseGraph load_graph(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const DenseGraph& g);

/// |E(S, T)|: ordered pairs (s, t) in S x T that are edges, counted with multiplicity.
std::uint64_t edge_count_between(const DenseGraph& g, std::span<const VertexId> S, std::span<const VertexId> T);

}  // namespace nmc
