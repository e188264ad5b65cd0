#include "nmc/tamper.hpp"

#include "nmc/cayley.hpp"
#include "nmc/error.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

namespace nmc {

// VertexMap ------------------------------------------------------------------

VertexMap VertexMap::table(MapTable t) {
    VertexMap m;
    m.table_ = std::make_shared<const MapTable>(std::move(t));
    return m;
}

VertexMap VertexMap::rule(std::string description, std::function<VertexId(VertexId)> fn) {
    VertexMap m;
    m.description_ = std::move(description);
    m.fn_ = std::move(fn);
    return m;
}

VertexMap VertexMap::identity() {
    return rule("identity", [](VertexId v) { return v; });
}

VertexMap VertexMap::constant(VertexId c) {
    return rule("const:" + std::to_string(c), [c](VertexId) { return c; });
}

VertexId VertexMap::operator()(VertexId v) const {
    if (table_) {
        if (v >= table_->size()) throw UsageError("vertex " + std::to_string(v) + " outside the map table");
        return (*table_)[v];
    }
    return fn_(v);
}

MapTable VertexMap::materialize(std::uint64_t n) const {
    MapTable out;
    if (table_) {
        if (table_->size() != n) {
            throw UsageError("map table has length " + std::to_string(table_->size()) + ", graph has " +
                             std::to_string(n) + " vertices");
        }
        out = *table_;
    } else {
        out.resize(n);
        for (VertexId v = 0; v < n; ++v) out[v] = fn_(v);
    }
    for (VertexId v = 0; v < n; ++v) {
        if (out[v] >= n) {
            throw UsageError("map sends vertex " + std::to_string(v) + " to " + std::to_string(out[v]) +
                             ", outside [0, " + std::to_string(n) + ")");
        }
    }
    return out;
}

std::string VertexMap::describe() const {
    if (!table_) return description_;
    if (table_->size() > 16) return "table(n=" + std::to_string(table_->size()) + ")";
    std::string s = "table[";
    for (std::size_t i = 0; i < table_->size(); ++i) {
        if (i) s += ',';
        s += std::to_string((*table_)[i]);
    }
    return s + "]";
}

std::string TamperPair::describe() const { return "left=" + left.describe() + "; right=" + right.describe(); }

TamperPair table_pair(MapTable left, MapTable right) {
    return {VertexMap::table(std::move(left)), VertexMap::table(std::move(right))};
}

MapTable random_table(std::uint64_t n, Rng& rng) {
    MapTable t(n);
    for (auto& x : t) x = uniform_below(rng, n);
    return t;
}

PreimageIndex preimage_index(std::span<const VertexId> table, std::uint64_t n) {
    PreimageIndex idx;
    idx.lists.resize(n);
    idx.sizes.assign(n, 0);
    for (VertexId v = 0; v < table.size(); ++v) {
        const VertexId w = table[v];
        if (w >= n) {
            throw UsageError("table entry " + std::to_string(w) + " at " + std::to_string(v) + " out of range [0, " +
                             std::to_string(n) + ")");
        }
        idx.lists[w].push_back(v);
        ++idx.sizes[w];
    }
    return idx;
}

// Exact evaluators -----------------------------------------------------------

namespace {

void require_exact_backend(const DenseGraph& g) {
    if (!g.is_simple()) {
        throw CapabilityError("exact flip probability needs a simple graph; " + g.describe() +
                              " has multi-edges (use Monte Carlo)");
    }
    if (g.degree() == 0 || g.degree() >= g.vertex_count()) {
        throw UsageError("exact flip probability needs 0 < d < n on " + g.describe());
    }
}

}  // namespace

Rational flip_prob_closed_form(const DenseGraph& g, const TamperPair& adversary) {
    require_exact_backend(g);
    const std::uint64_t n = g.vertex_count();
    const std::uint64_t d = g.degree();
    const PreimageIndex left = preimage_index(adversary.left.materialize(n), n);
    const PreimageIndex right = preimage_index(adversary.right.materialize(n), n);

    // Sum of n * (d |g^-1(v)| |h^-1(u)| / n - |E(g^-1(v), h^-1(u))|) over directed
    // edges, in row-major order. Magnitude is at most 2 d n^2.
    std::int64_t scaled = 0;
    for (VertexId v = 0; v < n; ++v) {
        for (VertexId u : g.out_edges(v)) {
            const auto crossing = edge_count_between(g, left.lists[v], right.lists[u]);
            scaled += static_cast<std::int64_t>(d * left.sizes[v] * right.sizes[u]) -
                      static_cast<std::int64_t>(n * crossing);
        }
    }
    const BigInt den = BigInt(2) * d * n * (n - d);
    return Rational(1, 2) + Rational(BigInt(scaled), den);
}

FlipBreakdown flip_prob_bruteforce(const DenseGraph& g, const TamperPair& adversary) {
    require_exact_backend(g);
    const std::uint64_t n = g.vertex_count();
    if (n > kBruteForceVertexCap) {
        throw CapabilityError("brute-force enumeration is limited to n <= " + std::to_string(kBruteForceVertexCap) +
                              "; use the closed form");
    }
    const MapTable left = adversary.left.materialize(n);
    const MapTable right = adversary.right.materialize(n);
    std::uint64_t nonedges_into_edges = 0;
    std::uint64_t edges_out_of_edges = 0;
    std::uint64_t nonedges = 0;
    std::uint64_t edges = 0;
    for (VertexId x = 0; x < n; ++x) {
        for (VertexId y = 0; y < n; ++y) {
            const bool before = g.is_edge(x, y);
            const bool after = g.is_edge(left[x], right[y]);
            if (before) {
                ++edges;
                if (!after) ++edges_out_of_edges;
            } else {
                ++nonedges;
                if (after) ++nonedges_into_edges;
            }
        }
    }
    FlipBreakdown out;
    out.q0 = Rational(BigInt(nonedges_into_edges), BigInt(nonedges));
    out.q1 = Rational(BigInt(edges_out_of_edges), BigInt(edges));
    out.t = (out.q0 + out.q1) / 2;
    return out;
}

// Monte Carlo ----------------------------------------------------------------

double hoeffding_half_width(std::uint64_t trials, double confidence) {
    return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(trials)));
}

MonteCarloEstimate flip_prob_montecarlo(const RegularGraph& g, const TamperPair& adversary, std::uint64_t trials,
                                        double confidence, std::uint64_t seed, unsigned threads) {
    if (trials < 100) throw UsageError("Monte Carlo needs at least 100 trials");
    if (!(confidence > 0.0 && confidence < 1.0)) throw UsageError("confidence must lie in (0, 1)");
    constexpr std::uint64_t kChunk = 4096;
    const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> flips(chunks, 0);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;

    auto worker = [&] {
        try {
            for (std::uint64_t c = next++; c < chunks; c = next++) {
                Rng rng(derive_seed(seed, c));
                const std::uint64_t count = std::min(kChunk, trials - c * kChunk);
                std::uint64_t local = 0;
                for (std::uint64_t i = 0; i < count; ++i) {
                    const Bit b = coin(rng) ? Bit::One : Bit::Zero;
                    const Codeword tampered = adversary.apply(encode(g, b, rng));
                    if (decode(g, tampered) != b) ++local;
                }
                flips[c] = local;
            }
        } catch (...) {
            std::lock_guard lock(failure_lock);
            if (!failure) failure = std::current_exception();
            next = chunks;
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    MonteCarloEstimate out;
    out.trials = trials;
    out.confidence = confidence;
    out.flips = std::accumulate(flips.begin(), flips.end(), std::uint64_t{0});
    out.estimate = static_cast<double>(out.flips) / static_cast<double>(trials);
    out.half_width = hoeffding_half_width(trials, confidence);
    return out;
}

// Reports --------------------------------------------------------------------

std::string to_string(FlipMethod m) {
    switch (m) {
    case FlipMethod::ClosedForm: return "closed_form";
    case FlipMethod::BruteForce: return "brute_force";
    case FlipMethod::MonteCarlo: return "monte_carlo";
    case FlipMethod::ExhaustiveMax: return "exhaustive_max";
    case FlipMethod::SearchMax: return "search_max";
    }
    return "unknown";
}

FlipReport make_exact_report(FlipMethod method, const RegularGraph& g, std::string adversary, Rational t) {
    FlipReport r;
    r.method = method;
    r.adversary = std::move(adversary);
    r.epsilon = epsilon_from_max_flip(t);
    r.t = std::move(t);
    r.n = g.vertex_count();
    r.d = g.degree();
    return r;
}

// Adversary specs --------------------------------------------------------------

namespace {

constexpr std::string_view kMapKeywords[] = {"identity", "const:", "perm-coords:", "affine:"};

bool starts_with_keyword(std::string_view s) {
    for (auto k : kMapKeywords) {
        if (s.substr(0, k.size()) == k) return true;
    }
    return false;
}

std::vector<std::uint64_t> parse_numbers(std::string_view s, std::string_view context) {
    std::string text(s);
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream in(text);
    std::vector<std::uint64_t> out;
    std::string token;
    while (in >> token) {
        std::size_t used = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size() || token.front() == '-') {
            throw ParseError("bad number \"" + token + "\" in " + std::string(context));
        }
        out.push_back(v);
    }
    return out;
}

const LdGraph& require_ld(const RegularGraph& g, std::string_view what) {
    const auto* ld = dynamic_cast<const LdGraph*>(&g);
    if (!ld) throw UsageError(std::string(what) + " maps act on F_p^{t+1} coordinates and need an ld: graph");
    return *ld;
}

VertexMap coordinate_permutation(const LdGraph& ld, std::vector<std::uint64_t> perm, std::string description) {
    const std::size_t dim = ld.dimension();
    std::vector<std::uint64_t> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    if (perm.size() != dim) {
        throw ParseError("perm-coords needs " + std::to_string(dim) + " indices, got " + std::to_string(perm.size()));
    }
    for (std::size_t i = 0; i < dim; ++i) {
        if (sorted[i] != i) throw ParseError("perm-coords is not a permutation of 0.." + std::to_string(dim - 1));
    }
    return VertexMap::rule(std::move(description), [ld, perm = std::move(perm)](VertexId v) {
        const FieldVector x = ld.vertex(v);
        std::vector<std::uint64_t> y(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) y[i] = x.coords()[perm[i]];
        return ld.index_of(FieldVector(ld.params().p, std::move(y)));
    });
}

VertexMap affine_map(const LdGraph& ld, std::string_view body, std::string description) {
    const std::size_t dim = ld.dimension();
    std::vector<std::vector<std::uint64_t>> rows;
    std::size_t start = 0;
    while (true) {
        const auto semi = body.find(';', start);
        rows.push_back(parse_numbers(body.substr(start, semi - start), "affine map"));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    if (rows.size() != dim + 1) {
        throw ParseError("affine map needs " + std::to_string(dim) + " matrix rows and an offset, got " +
                         std::to_string(rows.size()) + " segments");
    }
    for (const auto& r : rows) {
        if (r.size() != dim) throw ParseError("affine map rows and offset need " + std::to_string(dim) + " entries");
    }
    const std::uint64_t p = ld.p();
    return VertexMap::rule(std::move(description), [ld, rows = std::move(rows), p, dim](VertexId v) {
        const FieldVector x = ld.vertex(v);
        std::vector<std::uint64_t> y(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            std::uint64_t acc = rows[dim][i] % p;
            for (std::size_t j = 0; j < dim; ++j) acc = (acc + mul_mod(rows[i][j] % p, x.coords()[j], p)) % p;
            y[i] = acc;
        }
        return ld.index_of(FieldVector(ld.params().p, std::move(y)));
    });
}

}  // namespace

VertexMap parse_vertex_map(std::string_view spec, const RegularGraph& g) {
    const std::string full(spec);
    if (spec == "identity") return VertexMap::identity();
    if (spec.starts_with("const:")) {
        const auto nums = parse_numbers(spec.substr(6), full);
        if (nums.size() != 1) throw ParseError("const: takes one vertex index");
        if (nums[0] >= g.vertex_count()) throw UsageError("const vertex " + std::to_string(nums[0]) + " out of range");
        return VertexMap::constant(nums[0]);
    }
    if (spec.starts_with("perm-coords:")) {
        return coordinate_permutation(require_ld(g, "perm-coords"), parse_numbers(spec.substr(12), full), full);
    }
    if (spec.starts_with("affine:")) return affine_map(require_ld(g, "affine"), spec.substr(7), full);
    throw ParseError("unknown vertex map \"" + full + "\" (expected identity, const:, perm-coords:, affine:)");
}

TamperPair parse_adversary_pair(std::string_view spec, const RegularGraph& g) {
    // Split at the first comma that starts a new map keyword.
    for (std::size_t i = spec.find(','); i != std::string_view::npos; i = spec.find(',', i + 1)) {
        if (starts_with_keyword(spec.substr(i + 1))) {
            return {parse_vertex_map(spec.substr(0, i), g), parse_vertex_map(spec.substr(i + 1), g)};
        }
    }
    VertexMap both = parse_vertex_map(spec, g);
    return {both, both};
}

TamperPair parse_adversary_tables(std::istream& in, const std::string& name) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        lines.push_back(line);
    }
    if (lines.size() != 3) throw ParseError(name + ": expected 3 lines (n, left table, right table)");
    const auto header = parse_numbers(lines[0], name);
    if (header.size() != 1 || header[0] == 0) throw ParseError(name + ": first line must be the vertex count");
    const std::uint64_t n = header[0];
    MapTable left = parse_numbers(lines[1], name);
    MapTable right = parse_numbers(lines[2], name);
    if (left.size() != n || right.size() != n) throw ParseError(name + ": tables must have n entries");
    for (auto v : left) {
        if (v >= n) throw ParseError(name + ": left entry " + std::to_string(v) + " out of range");
    }
    for (auto v : right) {
        if (v >= n) throw ParseError(name + ": right entry " + std::to_string(v) + " out of range");
    }
    return table_pair(std::move(left), std::move(right));
}

TamperPair load_adversary_tables(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open adversary file " + path.string());
    return parse_adversary_tables(in, path.string());
}

void write_adversary_tables(std::ostream& out, std::span<const VertexId> left, std::span<const VertexId> right) {
    out << left.size() << '\n';
    for (std::size_t i = 0; i < left.size(); ++i) out << (i ? " " : "") << left[i];
    out << '\n';
    for (std::size_t i = 0; i < right.size(); ++i) out << (i ? " " : "") << right[i];
    out << '\n';
}

}  // namespace nmc
