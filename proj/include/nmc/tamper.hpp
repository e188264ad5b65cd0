#pragma once

#include "nmc/code.hpp"
#include "nmc/graph.hpp"
#include "nmc/rational.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nmc {

class LdGraph;

/// Explicit vertex map: entry v is the image of v.
using MapTable = std::vector<VertexId>;

/// One half of a split-state adversary. Either an explicit table or a named
/// rule evaluated per vertex. It sees only its own half of the codeword.
class VertexMap {
public:
    static VertexMap table(MapTable t);
    static VertexMap rule(std::string description, std::function<VertexId(VertexId)> fn);
    static VertexMap identity();
    static VertexMap constant(VertexId v);

    VertexId operator()(VertexId v) const;

    bool is_table() const noexcept { return table_ != nullptr; }
    /// Table of length n with entries in [0, n); throws UsageError otherwise.
    MapTable materialize(std::uint64_t n) const;
    std::string describe() const;

private:
    std::shared_ptr<const MapTable> table_;
    std::string description_;
    std::function<VertexId(VertexId)> fn_;
};

/// f(u, v) = (left(u), right(v)).
struct TamperPair {
    VertexMap left;
    VertexMap right;

    Codeword apply(const Codeword& c) const { return {left(c.left), right(c.right)}; }
    std::string describe() const;
};

TamperPair table_pair(MapTable left, MapTable right);

/// The partition {f^-1(v)} of the vertex set induced by a table.
struct PreimageIndex {
    std::vector<std::vector<VertexId>> lists;
    std::vector<std::uint64_t> sizes;
};

PreimageIndex preimage_index(std::span<const VertexId> table, std::uint64_t n);
inline PreimageIndex preimage_index(std::span<const VertexId> table) { return preimage_index(table, table.size()); }

/// Exact flip probability T from the edge-sum closed form,
///   T = 1/2 + 1/(2d(n-d)) * sum_{(v,u) in E} (d |g^-1(v)| |h^-1(u)| / n - |E(g^-1(v), h^-1(u))|).
/// Requires a simple graph (0/1 adjacency, loops allowed) with 0 < d < n.
Rational flip_prob_closed_form(const DenseGraph& g, const TamperPair& adversary);

struct FlipBreakdown {
    Rational q0;  // Pr over uniform non-edges that the tampered pair is an edge
    Rational q1;  // Pr over uniform edges that the tampered pair is a non-edge
    Rational t;   // (q0 + q1) / 2
};

inline constexpr std::uint64_t kBruteForceVertexCap = 512;

/// Direct enumeration of all n^2 ordered pairs; independent of the closed form.
FlipBreakdown flip_prob_bruteforce(const DenseGraph& g, const TamperPair& adversary);

struct MonteCarloEstimate {
    double estimate = 0;
    double half_width = 0;  // Hoeffding
    double confidence = 0;
    std::uint64_t trials = 0;
    std::uint64_t flips = 0;
};

double hoeffding_half_width(std::uint64_t trials, double confidence);

/// Encode a uniform bit, tamper, decode; count flips. Trials are split into fixed
/// chunks with derived seeds, so the result does not depend on `threads`.
MonteCarloEstimate flip_prob_montecarlo(const RegularGraph& g, const TamperPair& adversary, std::uint64_t trials,
                                        double confidence, std::uint64_t seed, unsigned threads = 1);

enum class Evaluator { ClosedForm, BruteForce };

struct WorstCase {
    MapTable left;
    MapTable right;
    Rational t_max;
    std::uint64_t pairs_evaluated = 0;
};

/// Largest n with n^n <= 10^4 tables per side.
inline constexpr std::uint64_t kExhaustiveVertexCap = 5;

/// Maximize T over all n^(2n) table pairs. Ties resolve to the lexicographically
/// smallest (left, right).
WorstCase worst_tampering_exhaustive(const DenseGraph& g, Evaluator evaluator = Evaluator::ClosedForm,
                                     unsigned threads = 1);

struct SearchOptions {
    std::uint64_t iterations = 2000;
    std::uint64_t restarts = 20;
    /// Equal-value moves allowed per restart.
    std::uint64_t plateau_moves = 500;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct SearchResult {
    MapTable left;
    MapTable right;
    Rational t_best;
    std::uint64_t best_restart = 0;
};

/// Hill climbing over single-entry table changes. Restart 0 starts from the
/// constant pair, restart 1 from the identity, the rest from random tables.
SearchResult worst_tampering_search(const DenseGraph& g, const SearchOptions& options);

/// Incrementally maintained flip count for table adversaries on a simple graph.
/// T = numerator() / denominator() with denominator 2dn(n-d).
class FlipCounter {
public:
    FlipCounter(const DenseGraph& g, MapTable left, MapTable right);

    std::int64_t numerator() const noexcept { return numerator_; }
    std::int64_t denominator() const noexcept { return denominator_; }
    Rational value() const { return Rational(BigInt(numerator_), BigInt(denominator_)); }

    /// Change in numerator if left[x] became target (resp. right[y]).
    std::int64_t delta_left(VertexId x, VertexId target) const;
    std::int64_t delta_right(VertexId y, VertexId target) const;
    void set_left(VertexId x, VertexId target);
    void set_right(VertexId y, VertexId target);

    /// Numerator from scratch, ignoring the maintained value.
    std::int64_t recompute() const;

    const MapTable& left() const noexcept { return left_; }
    const MapTable& right() const noexcept { return right_; }

private:
    bool adj(VertexId u, VertexId v) const { return adj_[u * n_ + v] != 0; }
    std::int64_t weight(VertexId x, VertexId y, VertexId gx, VertexId hy) const;

    std::uint64_t n_;
    std::uint64_t d_;
    std::vector<std::uint8_t> adj_;
    MapTable left_;
    MapTable right_;
    std::int64_t numerator_ = 0;
    std::int64_t denominator_ = 1;
};

enum class FlipMethod { ClosedForm, BruteForce, MonteCarlo, ExhaustiveMax, SearchMax };
std::string to_string(FlipMethod m);

/// One flip-probability result. Exact methods fill `t`; Monte Carlo fills `estimate`.
struct FlipReport {
    FlipMethod method = FlipMethod::ClosedForm;
    std::string adversary;
    /// Inner evaluator for exhaustive/search maxima.
    std::optional<std::string> evaluator;
    std::optional<Rational> t;
    std::optional<Rational> epsilon;
    std::optional<Rational> q0;
    std::optional<Rational> q1;
    std::optional<MonteCarloEstimate> estimate;
    std::optional<MapTable> left_table;
    std::optional<MapTable> right_table;
    std::uint64_t n = 0;
    std::uint64_t d = 0;
    std::optional<double> lambda;
    std::optional<std::uint64_t> seed;
};

FlipReport make_exact_report(FlipMethod method, const RegularGraph& g, std::string adversary, Rational t);

// Adversary specs ----------------------------------------------------------

/// One side: "identity", "const:<v>", "perm-coords:<i0,i1,...>", "affine:<row>;...;<row>;<offset>".
/// Coordinate maps need an LD graph.
VertexMap parse_vertex_map(std::string_view spec, const RegularGraph& g);
/// "<left>,<right>" or a single map applied to both halves.
TamperPair parse_adversary_pair(std::string_view spec, const RegularGraph& g);

/// Table file: "n", then n entries for the left map, then n for the right map.
TamperPair parse_adversary_tables(std::istream& in, const std::string& name = "adversary");
TamperPair load_adversary_tables(const std::filesystem::path& path);
void write_adversary_tables(std::ostream& out, std::span<const VertexId> left, std::span<const VertexId> right);

MapTable random_table(std::uint64_t n, Rng& rng);

}  // namespace nmc
