#include "nmc/code.hpp"

#include "nmc/error.hpp"

#include <sstream>

namespace nmc {

Bit bit_from_int(long long v) {
    if (v != 0 && v != 1) throw UsageError("message bit must be 0 or 1, got " + std::to_string(v));
    return v ? Bit::One : Bit::Zero;
}

Codeword encode(const RegularGraph& g, Bit b, Rng& rng) {
    if (g.distinct_degree() >= g.vertex_count()) {
        throw UsageError("graph " + g.describe() + " has no non-edges; it cannot encode 0");
    }
    const auto [u, v] = b == Bit::One ? g.sample_edge(rng) : g.sample_nonedge(rng);
    return {u, v};
}

Bit decode(const RegularGraph& g, const Codeword& c) { return g.is_edge(c.left, c.right) ? Bit::One : Bit::Zero; }

Rational epsilon_from_max_flip(const Rational& t_max) {
    if (t_max < 0 || t_max > 1) throw UsageError("flip probability must lie in [0, 1]");
    const Rational eps = t_max - Rational(1, 2);
    return eps > 0 ? eps : Rational(0);
}

Rational parse_fraction(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        const BigInt den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
        return Rational(BigInt(s.substr(0, slash)), den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const Error*>(&e)) throw;
        throw ParseError("not a fraction: \"" + s + "\"");
    }
}

}  // namespace nmc
