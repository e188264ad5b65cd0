#pragma once

#include "nmc/field.hpp"
#include "nmc/graph.hpp"

#include <optional>

namespace nmc {

/// Parameters of the Cayley graph LD_{p,t} on F_p^{t+1}.
struct LdParams {
    PrimeModulus p;
    unsigned t;

    /// Throws ParameterError unless t >= 1 and p^{t+1} fits in 64 bits. t >= p is
    /// accepted; the graph is still well defined but the pt bound is then trivial.
    LdParams(std::uint64_t prime, unsigned t);
    /// 1 < t < p, where lambda <= pt is a nontrivial statement.
    bool expansion_bound_applies() const noexcept { return t > 1 && t < p.value(); }

    std::uint64_t vertex_count() const;
    std::string to_string() const;  // "ld:p=<p>,t=<t>"
};

/// Result of one rejection-sampled non-edge, with the number of draws used.
struct NonEdgeDraw {
    VertexPair pair;
    unsigned attempts;
};

/// LD_{p,t}: vertex set F_p^{t+1}; x ~ y iff y - x = (b, ab, a^2 b, ..., a^t b)
/// for some a, b in F_p. p^2-regular counting generator multiplicity; the p
/// generators with b = 0 are all the zero vector, a self-loop of multiplicity p.
///
/// Vertex indices are little-endian base-p: index = x_0 + x_1 p + ... + x_t p^t.
class LdGraph final : public RegularGraph {
public:
    static constexpr unsigned kNonEdgeBudget = 1000;

    explicit LdGraph(LdParams params);

    const LdParams& params() const noexcept { return params_; }
    std::uint64_t p() const noexcept { return params_.p.value(); }
    unsigned t() const noexcept { return params_.t; }
    std::size_t dimension() const noexcept { return params_.t + 1; }

    std::uint64_t vertex_count() const override { return n_; }
    std::uint64_t degree() const override { return p() * p(); }
    std::uint64_t distinct_degree() const override { return p() * (p() - 1) + 1; }
    bool counts_multiplicity() const override { return true; }

    bool is_edge(VertexId u, VertexId v) const override;
    bool is_edge(const FieldVector& u, const FieldVector& v) const;

    VertexPair sample_edge(Rng& rng) const override;
    std::pair<FieldVector, FieldVector> sample_edge_vectors(Rng& rng) const;

    /// Rejection sampling over V x V; needs t > 1. Throws SamplingError after kNonEdgeBudget draws.
    VertexPair sample_nonedge(Rng& rng) const override { return sample_nonedge_counted(rng).pair; }
    NonEdgeDraw sample_nonedge_counted(Rng& rng) const;

    /// Distinct neighbors {v + s}; only for p <= 7 and t <= 5.
    std::vector<VertexId> neighbors(VertexId v) const override;
    std::vector<FieldVector> neighbors(const FieldVector& v) const;

    std::string describe() const override { return params_.to_string(); }

    FieldVector vertex(VertexId index) const;
    VertexId index_of(const FieldVector& v) const;

    /// (b, ab, a^2 b, ..., a^t b).
    FieldVector generator(std::uint64_t a, std::uint64_t b) const;
    /// The p(p-1)+1 distinct generators, zero vector first.
    std::vector<FieldVector> distinct_generators() const;

    /// Adjacency with generator multiplicities (diagonal = p). n <= 4096.
    DenseGraph to_dense() const;

private:
    void check_vector(const FieldVector& v) const;

    LdParams params_;
    std::uint64_t n_;
};

}  // namespace nmc
