#include "nmc/graph.hpp"

#include "nmc/error.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace nmc {

namespace {

Eigen::Index idx(VertexId v) { return static_cast<Eigen::Index>(v); }

std::string pair_str(VertexId u, VertexId v) { return "(" + std::to_string(u) + ", " + std::to_string(v) + ")"; }

}  // namespace

DenseGraph::DenseGraph(AdjacencyMatrix adjacency, std::string name) : adj_(std::move(adjacency)), name_(std::move(name)) {
    const auto n = static_cast<std::uint64_t>(adj_.rows());
    if (adj_.rows() != adj_.cols()) throw ValidationError("adjacency matrix is not square");
    if (n == 0) throw ValidationError("graph has no vertices");
    if (n > kDenseVertexCap) {
        throw CapabilityError("dense backend holds at most " + std::to_string(kDenseVertexCap) + " vertices, got " +
                              std::to_string(n));
    }
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) {
            if (adj_(idx(u), idx(v)) != adj_(idx(v), idx(u))) {
                throw ValidationError("asymmetric adjacency at " + pair_str(u, v));
            }
        }
    }
    out_.resize(n);
    for (VertexId u = 0; u < n; ++u) {
        std::uint64_t row = 0;
        std::uint64_t distinct = 0;
        for (VertexId v = 0; v < n; ++v) {
            const std::uint8_t m = adj_(idx(u), idx(v));
            if (m == 0) continue;
            if (m > 1) simple_ = false;
            row += m;
            ++distinct;
            out_[u].insert(out_[u].end(), m, v);
        }
        trace_ += adj_(idx(u), idx(u));
        if (u == 0) {
            degree_ = row;
            distinct_degree_ = distinct;
        } else if (row != degree_) {
            throw ValidationError("vertex " + std::to_string(u) + " has degree " + std::to_string(row) +
                                  ", expected " + std::to_string(degree_) + " (graph is not regular)");
        } else if (distinct != distinct_degree_) {
            throw ValidationError("vertex " + std::to_string(u) + " has " + std::to_string(distinct) +
                                  " distinct neighbors, expected " + std::to_string(distinct_degree_));
        }
    }
}

void DenseGraph::check_vertex(VertexId v) const {
    if (v >= vertex_count()) {
        throw UsageError("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(vertex_count()) + ")");
    }
}

bool DenseGraph::is_edge(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    return adj_(idx(u), idx(v)) != 0;
}

VertexPair DenseGraph::sample_edge(Rng& rng) const {
    if (degree_ == 0) throw SamplingError("graph has no edges");
    const VertexId u = uniform_below(rng, vertex_count());
    return {u, out_[u][uniform_below(rng, degree_)]};
}

VertexPair DenseGraph::sample_nonedge(Rng& rng) const {
    const std::uint64_t n = vertex_count();
    const std::uint64_t free = n - distinct_degree_;
    if (free == 0) throw SamplingError("graph has no non-edges");
    const VertexId u = uniform_below(rng, n);
    // Cheap rejection first; fall back to selecting the k-th non-neighbor.
    // Either branch is uniform over the row's non-neighbors.
    for (int attempt = 0; attempt < 32; ++attempt) {
        const VertexId v = uniform_below(rng, n);
        if (adj_(idx(u), idx(v)) == 0) return {u, v};
    }
    std::uint64_t k = uniform_below(rng, free);
    for (VertexId v = 0; v < n; ++v) {
        if (adj_(idx(u), idx(v)) == 0) {
            if (k == 0) return {u, v};
            --k;
        }
    }
    throw SamplingError("non-edge selection fell off the row");  // unreachable for a validated graph
}

std::vector<VertexId> DenseGraph::neighbors(VertexId v) const {
    check_vertex(v);
    std::vector<VertexId> out = out_[v];
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool DenseGraph::is_connected() const {
    const auto n = vertex_count();
    std::vector<bool> seen(n, false);
    std::queue<VertexId> frontier;
    frontier.push(0);
    seen[0] = true;
    std::uint64_t reached = 1;
    while (!frontier.empty()) {
        const VertexId u = frontier.front();
        frontier.pop();
        for (VertexId v : out_[u]) {
            if (!seen[v]) {
                seen[v] = true;
                ++reached;
                frontier.push(v);
            }
        }
    }
    return reached == n;
}

DenseGraph build_cycle(std::uint64_t n) {
    if (n < 3) throw ParameterError("cycle needs n >= 3, got " + std::to_string(n));
    if (n > kDenseVertexCap) throw ParameterError("cycle too large for the dense backend");
    AdjacencyMatrix a = AdjacencyMatrix::Zero(idx(n), idx(n));
    for (VertexId v = 0; v < n; ++v) {
        const VertexId w = (v + 1) % n;
        a(idx(v), idx(w)) = 1;
        a(idx(w), idx(v)) = 1;
    }
    return DenseGraph(std::move(a), "cycle:n=" + std::to_string(n));
}

DenseGraph build_complete_with_loops(std::uint64_t n) {
    if (n < 1 || n > kDenseVertexCap) throw ParameterError("complete-loops needs 1 <= n <= 4096");
    return DenseGraph(AdjacencyMatrix::Ones(idx(n), idx(n)), "complete-loops:n=" + std::to_string(n));
}

DenseGraph build_hypercube(unsigned k) {
    if (k < 1 || k > 12) throw ParameterError("hypercube needs 1 <= k <= 12, got " + std::to_string(k));
    const VertexId n = VertexId{1} << k;
    AdjacencyMatrix a = AdjacencyMatrix::Zero(idx(n), idx(n));
    for (VertexId v = 0; v < n; ++v) {
        for (unsigned bit = 0; bit < k; ++bit) a(idx(v), idx(v ^ (VertexId{1} << bit))) = 1;
    }
    return DenseGraph(std::move(a), "hypercube:k=" + std::to_string(k));
}

DenseGraph build_random_regular(std::uint64_t n, std::uint64_t d, std::uint64_t seed) {
    if (n == 0 || d >= n) throw ParameterError("random-regular needs 0 <= d < n");
    if ((n * d) % 2 != 0) throw ParameterError("random-regular needs n*d even");
    if (n > kDenseVertexCap) throw ParameterError("random-regular too large for the dense backend");
    Rng rng(seed);
    std::vector<VertexId> stubs;
    stubs.reserve(n * d);
    for (VertexId v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);

    constexpr int kBudget = 100000;
    for (int attempt = 0; attempt < kBudget; ++attempt) {
        for (std::size_t i = stubs.size(); i > 1; --i) {
            std::swap(stubs[i - 1], stubs[uniform_below(rng, i)]);
        }
        AdjacencyMatrix a = AdjacencyMatrix::Zero(idx(n), idx(n));
        bool ok = true;
        for (std::size_t i = 0; ok && i < stubs.size(); i += 2) {
            const VertexId u = stubs[i];
            const VertexId v = stubs[i + 1];
            if (u == v || a(idx(u), idx(v)) != 0) {
                ok = false;
            } else {
                a(idx(u), idx(v)) = 1;
                a(idx(v), idx(u)) = 1;
            }
        }
        if (ok) {
            return DenseGraph(std::move(a), "random-regular:n=" + std::to_string(n) + ",d=" + std::to_string(d) +
                                                ",seed=" + std::to_string(seed));
        }
    }
    throw SamplingError("configuration model found no simple pairing in " + std::to_string(kBudget) + " attempts");
}

DenseGraph build_petersen() {
    AdjacencyMatrix a = AdjacencyMatrix::Zero(10, 10);
    auto link = [&](int u, int v) {
        a(u, v) = 1;
        a(v, u) = 1;
    };
    for (int i = 0; i < 5; ++i) {
        link(i, (i + 1) % 5);          // outer cycle
        link(i, i + 5);                // spokes
        link(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    }
    return DenseGraph(std::move(a), "petersen");
}

DenseGraph build_complete_minus_matching(std::uint64_t n) {
    if (n < 4 || n % 2 != 0 || n > kDenseVertexCap) {
        throw ParameterError("complete-minus-matching needs even n >= 4");
    }
    AdjacencyMatrix a = AdjacencyMatrix::Ones(idx(n), idx(n));
    for (VertexId v = 0; v < n; ++v) {
        a(idx(v), idx(v)) = 0;
        a(idx(v), idx(v ^ 1)) = 0;
    }
    return DenseGraph(std::move(a), "complete-minus-matching:n=" + std::to_string(n));
}

DenseGraph parse_edge_list(std::istream& in, const std::string& name) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::uint64_t n = 0;
    std::uint64_t d = 0;
    std::vector<VertexPair> arcs;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::uint64_t a = 0;
        std::uint64_t b = 0;
        std::string rest;
        if (!(ls >> a >> b) || (ls >> rest)) {
            throw ParseError(name + ":" + std::to_string(line_no) + ": expected two non-negative integers");
        }
        if (!have_header) {
            n = a;
            d = b;
            have_header = true;
            if (n == 0 || n > kDenseVertexCap) {
                throw CapabilityError(name + ": vertex count must be in [1, " + std::to_string(kDenseVertexCap) + "]");
            }
            continue;
        }
        if (a >= n || b >= n) {
            throw ParseError(name + ":" + std::to_string(line_no) + ": vertex out of range [0, " + std::to_string(n) +
                             ")");
        }
        arcs.emplace_back(a, b);
    }
    if (!have_header) throw ParseError(name + ": missing \"n d\" header");

    // Lines are undirected edges listed once. A file that also lists some
    // reverse orientations (but not all) is rejected as asymmetric; a file
    // listing every arc in both orientations is accepted as-is.
    std::set<VertexPair> arc_set;
    for (const auto& [u, v] : arcs) {
        if (!arc_set.insert({u, v}).second) {
            throw ValidationError(name + ": edge " + pair_str(u, v) + " listed twice (multi-edges unsupported)");
        }
    }
    std::size_t reversed = 0;
    std::size_t non_loop = 0;
    const VertexPair* lonely = nullptr;
    for (const auto& arc : arcs) {
        if (arc.first == arc.second) continue;
        ++non_loop;
        if (arc_set.count({arc.second, arc.first})) {
            ++reversed;
        } else if (!lonely) {
            lonely = &arc;
        }
    }
    const bool both_orientations = non_loop > 0 && reversed == non_loop;
    if (reversed != 0 && !both_orientations) {
        throw ValidationError(name + ": asymmetric edge " + pair_str(lonely->first, lonely->second) +
                              " (its reverse is missing while other edges list both orientations)");
    }

    AdjacencyMatrix adj = AdjacencyMatrix::Zero(idx(n), idx(n));
    for (const auto& [u, v] : arcs) {
        adj(idx(u), idx(v)) = 1;
        if (!both_orientations) adj(idx(v), idx(u)) = 1;
    }
    for (VertexId v = 0; v < n; ++v) {
        const auto row = static_cast<std::uint64_t>(adj.row(idx(v)).cast<std::uint64_t>().sum());
        if (row != d) {
            throw ValidationError(name + ": vertex " + std::to_string(v) + " has degree " + std::to_string(row) +
                                  " in a declared " + std::to_string(d) + "-regular graph");
        }
    }
    return DenseGraph(std::move(adj), name);
}

DenseGraph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file " + path.string());
    return parse_edge_list(in, path.string());
}

void write_edge_list(std::ostream& out, const DenseGraph& g) {
    if (!g.is_simple()) throw CapabilityError("edge-list format cannot express multi-edges");
    out << "# " << g.describe() << '\n' << g.vertex_count() << ' ' << g.degree() << '\n';
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        for (VertexId v = u; v < g.vertex_count(); ++v) {
            if (g.multiplicity(u, v)) out << u << ' ' << v << '\n';
        }
    }
}

std::uint64_t edge_count_between(const DenseGraph& g, std::span<const VertexId> S, std::span<const VertexId> T) {
    const auto n = g.vertex_count();
    for (auto v : S) {
        if (v >= n) throw UsageError("vertex " + std::to_string(v) + " out of range in S");
    }
    for (auto v : T) {
        if (v >= n) throw UsageError("vertex " + std::to_string(v) + " out of range in T");
    }
    const auto& a = g.adjacency();
    std::uint64_t count = 0;
    for (auto s : S) {
        for (auto t : T) count += a(idx(s), idx(t));
    }
    return count;
}

}  // namespace nmc
