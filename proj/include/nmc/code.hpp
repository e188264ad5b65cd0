#pragma once

#include "nmc/graph.hpp"
#include "nmc/rational.hpp"

namespace nmc {

enum class Bit : std::uint8_t { Zero = 0, One = 1 };

inline Bit flip(Bit b) { return b == Bit::Zero ? Bit::One : Bit::Zero; }
inline int to_int(Bit b) { return static_cast<int>(b); }
Bit bit_from_int(long long v);

/// Split-state codeword (L, R): an ordered vertex pair.
struct Codeword {
    VertexId left = 0;
    VertexId right = 0;

    friend bool operator==(const Codeword&, const Codeword&) = default;
};

/// 1 -> uniform directed edge, 0 -> uniform directed non-edge.
/// Throws UsageError when the graph has no non-edges (d >= n).
Codeword encode(const RegularGraph& g, Bit b, Rng& rng);

/// 1 iff (left, right) is an edge. Total on in-range vertices.
Bit decode(const RegularGraph& g, const Codeword& c);

/// max(T_max - 1/2, 0): the non-malleability error certified by a worst-case flip probability.
Rational epsilon_from_max_flip(const Rational& t_max);

}  // namespace nmc
