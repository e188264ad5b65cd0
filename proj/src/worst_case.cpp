#include "nmc/error.hpp"
#include "nmc/tamper.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <optional>
#include <limits>
#include <stdexcept>
#include <thread>

namespace nmc {

namespace {

void require_table_regime(const DenseGraph& g) {
    if (!g.is_simple()) throw CapabilityError("table adversaries need a simple graph; " + g.describe() + " is not");
    if (g.degree() == 0 || g.degree() >= g.vertex_count()) throw UsageError("need 0 < d < n on " + g.describe());
}

std::vector<std::uint8_t> flat_adjacency(const DenseGraph& g) {
    const auto n = g.vertex_count();
    std::vector<std::uint8_t> a(n * n);
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = 0; v < n; ++v) a[u * n + v] = g.multiplicity(u, v) ? 1 : 0;
    }
    return a;
}

/// All n^n tables, lexicographic order, with their preimage partitions flattened.
struct TableSpace {
    std::uint64_t n = 0;
    std::uint64_t count = 0;
    std::vector<std::uint8_t> entries;   // count x n
    std::vector<std::uint8_t> sizes;     // count x n
    std::vector<std::uint8_t> members;   // count x n, grouped by image
    std::vector<std::uint8_t> offsets;   // count x (n + 1)

    explicit TableSpace(std::uint64_t n_) : n(n_) {
        count = 1;
        for (std::uint64_t i = 0; i < n; ++i) count *= n;
        entries.resize(count * n);
        sizes.assign(count * n, 0);
        members.resize(count * n);
        offsets.resize(count * (n + 1));
        for (std::uint64_t k = 0; k < count; ++k) {
            std::uint8_t* t = &entries[k * n];
            std::uint64_t rest = k;
            for (std::uint64_t i = n; i-- > 0;) {
                t[i] = static_cast<std::uint8_t>(rest % n);
                rest /= n;
            }
            std::uint8_t* sz = &sizes[k * n];
            for (std::uint64_t i = 0; i < n; ++i) ++sz[t[i]];
            std::uint8_t* off = &offsets[k * (n + 1)];
            off[0] = 0;
            for (std::uint64_t v = 0; v < n; ++v) off[v + 1] = static_cast<std::uint8_t>(off[v] + sz[v]);
            std::uint8_t fill[8] = {};
            for (std::uint64_t i = 0; i < n; ++i) {
                const auto v = t[i];
                members[k * n + off[v] + fill[v]++] = static_cast<std::uint8_t>(i);
            }
        }
    }

    MapTable table(std::uint64_t k) const {
        return MapTable(entries.begin() + static_cast<std::ptrdiff_t>(k * n),
                        entries.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
    }
};

struct Best {
    std::int64_t numerator = std::numeric_limits<std::int64_t>::min();
    std::uint64_t left = 0;
    std::uint64_t right = 0;

    bool beats(const Best& o) const {
        if (numerator != o.numerator) return numerator > o.numerator;
        return std::pair(left, right) < std::pair(o.left, o.right);
    }
};

}  // namespace

WorstCase worst_tampering_exhaustive(const DenseGraph& g, Evaluator evaluator, unsigned threads) {
    require_table_regime(g);
    const std::uint64_t n = g.vertex_count();
    if (n > kExhaustiveVertexCap) {
        throw CapabilityError("exhaustive search covers n <= " + std::to_string(kExhaustiveVertexCap) + " (n^n <= 10^4); " +
                              g.describe() + " has n = " + std::to_string(n) + ", use search:");
    }
    const auto d = static_cast<std::int64_t>(g.degree());
    const auto nn = static_cast<std::int64_t>(n);
    const TableSpace space(n);
    const auto adj = flat_adjacency(g);
    // Both evaluators produce the numerator of T over the common denominator 2dn(n-d).
    const std::int64_t half = d * nn * (nn - d);

    auto closed_form = [&](std::uint64_t gi, std::uint64_t hi) {
        const std::uint8_t* gs = &space.sizes[gi * n];
        const std::uint8_t* hs = &space.sizes[hi * n];
        const std::uint8_t* go = &space.offsets[gi * (n + 1)];
        const std::uint8_t* ho = &space.offsets[hi * (n + 1)];
        const std::uint8_t* gm = &space.members[gi * n];
        const std::uint8_t* hm = &space.members[hi * n];
        std::int64_t sum = 0;
        for (std::uint64_t v = 0; v < n; ++v) {
            if (gs[v] == 0) continue;
            for (std::uint64_t u = 0; u < n; ++u) {
                if (!adj[v * n + u] || hs[u] == 0) continue;
                std::int64_t crossing = 0;
                for (auto i = go[v]; i < go[v + 1]; ++i) {
                    for (auto j = ho[u]; j < ho[u + 1]; ++j) crossing += adj[gm[i] * n + hm[j]];
                }
                sum += d * gs[v] * hs[u] - nn * crossing;
            }
        }
        return half + sum;
    };

    auto brute_force = [&](std::uint64_t gi, std::uint64_t hi) {
        const std::uint8_t* gt = &space.entries[gi * n];
        const std::uint8_t* ht = &space.entries[hi * n];
        std::int64_t into = 0;
        std::int64_t out = 0;
        for (std::uint64_t x = 0; x < n; ++x) {
            for (std::uint64_t y = 0; y < n; ++y) {
                const bool after = adj[gt[x] * n + ht[y]] != 0;
                if (adj[x * n + y]) {
                    out += after ? 0 : 1;
                } else {
                    into += after ? 1 : 0;
                }
            }
        }
        return d * into + (nn - d) * out;
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(space.count)));
    std::vector<Best> partial(workers);
    auto work = [&](unsigned w) {
        const std::uint64_t lo = space.count * w / workers;
        const std::uint64_t hi = space.count * (w + 1) / workers;
        Best best;
        for (std::uint64_t gi = lo; gi < hi; ++gi) {
            for (std::uint64_t h = 0; h < space.count; ++h) {
                const std::int64_t num = evaluator == Evaluator::ClosedForm ? closed_form(gi, h) : brute_force(gi, h);
                if (num > best.numerator) best = {num, gi, h};
            }
        }
        partial[w] = best;
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& th : pool) th.join();

    Best best = partial[0];
    for (const auto& b : partial) {
        if (b.beats(best)) best = b;
    }

    WorstCase out;
    out.left = space.table(best.left);
    out.right = space.table(best.right);
    out.pairs_evaluated = space.count * space.count;
    const TamperPair argmax = table_pair(out.left, out.right);
    out.t_max = evaluator == Evaluator::ClosedForm ? flip_prob_closed_form(g, argmax)
                                                   : flip_prob_bruteforce(g, argmax).t;
    if (out.t_max != Rational(BigInt(best.numerator), BigInt(2 * half))) {
        throw std::logic_error("exhaustive fast path disagrees with the exact evaluator");
    }
    return out;
}

// FlipCounter -------------------------------------------------------------------

FlipCounter::FlipCounter(const DenseGraph& g, MapTable left, MapTable right)
    : n_(g.vertex_count()), d_(g.degree()), adj_(flat_adjacency(g)), left_(std::move(left)), right_(std::move(right)) {
    require_table_regime(g);
    (void)preimage_index(left_, n_);
    (void)preimage_index(right_, n_);
    if (left_.size() != n_ || right_.size() != n_) throw UsageError("tables must have one entry per vertex");
    denominator_ = static_cast<std::int64_t>(2 * d_ * n_ * (n_ - d_));
    numerator_ = recompute();
}

std::int64_t FlipCounter::weight(VertexId x, VertexId y, VertexId gx, VertexId hy) const {
    // Numerator of T is d * #(non-edges sent into E) + (n - d) * #(edges sent out of E).
    if (adj(x, y)) return adj(gx, hy) ? 0 : static_cast<std::int64_t>(n_ - d_);
    return adj(gx, hy) ? static_cast<std::int64_t>(d_) : 0;
}

std::int64_t FlipCounter::recompute() const {
    std::int64_t total = 0;
    for (VertexId x = 0; x < n_; ++x) {
        for (VertexId y = 0; y < n_; ++y) total += weight(x, y, left_[x], right_[y]);
    }
    return total;
}

std::int64_t FlipCounter::delta_left(VertexId x, VertexId target) const {
    std::int64_t delta = 0;
    for (VertexId y = 0; y < n_; ++y) delta += weight(x, y, target, right_[y]) - weight(x, y, left_[x], right_[y]);
    return delta;
}

std::int64_t FlipCounter::delta_right(VertexId y, VertexId target) const {
    std::int64_t delta = 0;
    for (VertexId x = 0; x < n_; ++x) delta += weight(x, y, left_[x], target) - weight(x, y, left_[x], right_[y]);
    return delta;
}

void FlipCounter::set_left(VertexId x, VertexId target) {
    if (x >= n_ || target >= n_) throw UsageError("set_left out of range");
    numerator_ += delta_left(x, target);
    left_[x] = target;
}

void FlipCounter::set_right(VertexId y, VertexId target) {
    if (y >= n_ || target >= n_) throw UsageError("set_right out of range");
    numerator_ += delta_right(y, target);
    right_[y] = target;
}

// Hill climbing -------------------------------------------------------------------

namespace {

FlipCounter climb(const DenseGraph& g, const SearchOptions& opt, std::uint64_t restart) {
    const std::uint64_t n = g.vertex_count();
    Rng rng(derive_seed(opt.seed, restart));
    MapTable left(n);
    MapTable right(n);
    if (restart == 0) {
        // constant pair (all zeros)
    } else if (restart == 1) {
        for (VertexId v = 0; v < n; ++v) left[v] = right[v] = v;
    } else {
        left = random_table(n, rng);
        right = random_table(n, rng);
    }
    FlipCounter state(g, std::move(left), std::move(right));
    std::uint64_t plateau = opt.plateau_moves;
    for (std::uint64_t it = 0; it < opt.iterations; ++it) {
        const bool right_side = coin(rng);
        const VertexId x = uniform_below(rng, n);
        const VertexId current = right_side ? state.right()[x] : state.left()[x];
        std::int64_t best_delta = std::numeric_limits<std::int64_t>::min();
        VertexId best_target = current;
        for (VertexId w = 0; w < n; ++w) {
            if (w == current) continue;
            const std::int64_t delta = right_side ? state.delta_right(x, w) : state.delta_left(x, w);
            if (delta > best_delta) {
                best_delta = delta;
                best_target = w;
            }
        }
        if (best_target == current || best_delta < 0) continue;
        if (best_delta == 0) {
            if (plateau == 0) continue;
            --plateau;
        }
        if (right_side) {
            state.set_right(x, best_target);
        } else {
            state.set_left(x, best_target);
        }
    }
    return state;
}

}  // namespace

SearchResult worst_tampering_search(const DenseGraph& g, const SearchOptions& options) {
    require_table_regime(g);
    if (options.restarts == 0) throw UsageError("search needs at least one restart");
    std::vector<std::optional<FlipCounter>> results(options.restarts);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [&] {
        try {
            for (std::uint64_t r = next++; r < options.restarts; r = next++) results[r].emplace(climb(g, options, r));
        } catch (...) {
            std::lock_guard lock(failure_lock);
            if (!failure) failure = std::current_exception();
            next = options.restarts;
        }
    };
    const unsigned workers =
        std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(options.restarts)));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    std::uint64_t best = 0;
    for (std::uint64_t r = 1; r < options.restarts; ++r) {
        if (results[r]->numerator() > results[best]->numerator()) best = r;
    }
    const FlipCounter& winner = *results[best];
    if (winner.recompute() != winner.numerator()) throw std::logic_error("incremental flip count drifted");

    SearchResult out;
    out.left = winner.left();
    out.right = winner.right();
    out.best_restart = best;
    out.t_best = flip_prob_closed_form(g, table_pair(out.left, out.right));
    if (out.t_best != winner.value()) throw std::logic_error("search value disagrees with the closed form");
    return out;
}

}  // namespace nmc
