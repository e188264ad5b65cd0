#include "nmc/cayley.hpp"

#include "nmc/error.hpp"

#include <algorithm>
#include <set>

namespace nmc {

LdParams::LdParams(std::uint64_t prime, unsigned t_) : p(prime), t(t_) {
    if (t < 1) throw ParameterError("LD_{p,t} needs t >= 1");
    (void)vertex_count();
}

std::uint64_t LdParams::vertex_count() const {
    std::uint64_t n = 1;
    for (unsigned i = 0; i <= t; ++i) {
        if (n > std::numeric_limits<std::uint64_t>::max() / p.value()) {
            throw ParameterError("p^(t+1) does not fit in a 64-bit vertex index");
        }
        n *= p.value();
    }
    return n;
}

std::string LdParams::to_string() const { return "ld:p=" + std::to_string(p.value()) + ",t=" + std::to_string(t); }

LdGraph::LdGraph(LdParams params) : params_(params), n_(params.vertex_count()) {}

void LdGraph::check_vector(const FieldVector& v) const {
    if (v.size() != dimension()) {
        throw UsageError("vertex vector has length " + std::to_string(v.size()) + ", expected " +
                         std::to_string(dimension()));
    }
    if (v.p() != p()) throw UsageError("vertex vector over the wrong field");
}

FieldVector LdGraph::vertex(VertexId index) const {
    if (index >= n_) throw UsageError("vertex index " + std::to_string(index) + " out of range");
    std::vector<std::uint64_t> coords(dimension());
    for (auto& c : coords) {
        c = index % p();
        index /= p();
    }
    return FieldVector(params_.p, std::move(coords));
}

VertexId LdGraph::index_of(const FieldVector& v) const {
    check_vector(v);
    VertexId index = 0;
    const auto coords = v.coords();
    for (std::size_t i = coords.size(); i-- > 0;) index = index * p() + coords[i];
    return index;
}

FieldVector LdGraph::generator(std::uint64_t a, std::uint64_t b) const {
    std::vector<std::uint64_t> coords(dimension());
    std::uint64_t term = b % p();
    for (auto& c : coords) {
        c = term;
        term = mul_mod(term, a % p(), p());
    }
    return FieldVector(params_.p, std::move(coords));
}

std::vector<FieldVector> LdGraph::distinct_generators() const {
    std::vector<FieldVector> gens;
    gens.reserve(distinct_degree());
    gens.push_back(FieldVector::zero(params_.p, dimension()));
    for (std::uint64_t b = 1; b < p(); ++b) {
        for (std::uint64_t a = 0; a < p(); ++a) gens.push_back(generator(a, b));
    }
    return gens;
}

bool LdGraph::is_edge(const FieldVector& u, const FieldVector& v) const {
    check_vector(u);
    check_vector(v);
    const FieldVector x = vec_sub(u, v);
    const auto coords = x.coords();
    if (std::all_of(coords.begin(), coords.end(), [](std::uint64_t c) { return c == 0; })) return true;
    if (x[0].is_zero()) return false;
    // x = (b, ab, ..., a^t b) with b = x_0 and a = x_1 / x_0.
    const FieldElement a = x[1] * fe_inv(x[0]);
    for (std::size_t i = 2; i < x.size(); ++i) {
        if (x[i] != a * x[i - 1]) return false;
    }
    return true;
}

bool LdGraph::is_edge(VertexId u, VertexId v) const { return is_edge(vertex(u), vertex(v)); }

std::pair<FieldVector, FieldVector> LdGraph::sample_edge_vectors(Rng& rng) const {
    FieldVector x = vertex(uniform_below(rng, n_));
    const std::uint64_t a = uniform_below(rng, p());
    const std::uint64_t b = uniform_below(rng, p());
    FieldVector y = vec_add(x, generator(a, b));
    return {std::move(x), std::move(y)};
}

VertexPair LdGraph::sample_edge(Rng& rng) const {
    auto [x, y] = sample_edge_vectors(rng);
    return {index_of(x), index_of(y)};
}

NonEdgeDraw LdGraph::sample_nonedge_counted(Rng& rng) const {
    if (t() < 2) throw CapabilityError("rejection non-edge sampling on LD_{p,t} requires t > 1");
    for (unsigned attempt = 1; attempt <= kNonEdgeBudget; ++attempt) {
        const VertexId u = uniform_below(rng, n_);
        const VertexId v = uniform_below(rng, n_);
        if (!is_edge(u, v)) return {{u, v}, attempt};
    }
    throw SamplingError("no non-edge found in " + std::to_string(kNonEdgeBudget) + " draws");
}

std::vector<FieldVector> LdGraph::neighbors(const FieldVector& v) const {
    check_vector(v);
    if (p() > 7 || t() > 5) {
        throw CapabilityError("neighbor enumeration is limited to p <= 7, t <= 5; use is_edge for " + describe());
    }
    std::vector<FieldVector> out;
    for (const auto& s : distinct_generators()) out.push_back(vec_add(v, s));
    return out;
}

std::vector<VertexId> LdGraph::neighbors(VertexId v) const {
    std::vector<VertexId> out;
    for (const auto& w : neighbors(vertex(v))) out.push_back(index_of(w));
    std::sort(out.begin(), out.end());
    return out;
}

DenseGraph LdGraph::to_dense() const {
    if (n_ > kDenseVertexCap) {
        throw CapabilityError(describe() + " has " + std::to_string(n_) + " vertices; dense form holds at most " +
                              std::to_string(kDenseVertexCap));
    }
    if (p() > 255) throw CapabilityError("self-loop multiplicity p does not fit the dense entry width");
    std::vector<FieldVector> gens;
    for (std::uint64_t a = 0; a < p(); ++a) {
        for (std::uint64_t b = 0; b < p(); ++b) gens.push_back(generator(a, b));
    }
    const auto ni = static_cast<Eigen::Index>(n_);
    AdjacencyMatrix adj = AdjacencyMatrix::Zero(ni, ni);
    for (VertexId x = 0; x < n_; ++x) {
        const FieldVector xv = vertex(x);
        for (const auto& s : gens) {
            adj(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(index_of(vec_add(xv, s)))) += 1;
        }
    }
    return DenseGraph(std::move(adj), describe());
}

}  // namespace nmc
