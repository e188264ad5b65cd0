#include "nmc/config.hpp"

#include "nmc/error.hpp"

#include <filesystem>

namespace nmc {

std::map<std::string, std::string> parse_key_values(std::string_view text, std::string_view context) {
    std::map<std::string, std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (!item.empty()) {
            const auto eq = item.find('=');
            if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
                throw ParseError("expected key=value in " + std::string(context) + ", got \"" + std::string(item) + "\"");
            }
            if (!out.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1))).second) {
                throw ParseError("duplicate key \"" + std::string(item.substr(0, eq)) + "\" in " + std::string(context));
            }
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

namespace {

class Params {
public:
    Params(std::string_view text, std::string family) : values_(parse_key_values(text, family)), family_(std::move(family)) {}

    std::uint64_t take(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) throw ParseError(family_ + " needs parameter " + key + "=");
        const std::string text = it->second;
        values_.erase(it);
        std::size_t used = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != text.size() || text.front() == '-') {
            throw ParseError(family_ + ": " + key + " must be a non-negative integer, got \"" + text + "\"");
        }
        return v;
    }

    void finish() const {
        if (!values_.empty()) throw ParseError(family_ + ": unknown parameter " + values_.begin()->first);
    }

private:
    std::map<std::string, std::string> values_;
    std::string family_;
};

}  // namespace

GraphInstance GraphInstance::parse(std::string_view spec) {
    GraphInstance g;
    g.spec_ = std::string(spec);
    const auto colon = spec.find(':');
    const std::string family(spec.substr(0, colon));
    const std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

    auto dense = [&](DenseGraph graph) {
        g.dense_ = std::make_shared<const DenseGraph>(std::move(graph));
        g.graph_ = g.dense_;
    };

    if (family == "ld") {
        Params p(args, "ld");
        const auto prime = p.take("p");
        const auto t = p.take("t");
        p.finish();
        if (t > 64) throw ParameterError("ld: t too large");
        g.ld_ = std::make_shared<const LdGraph>(LdParams(prime, static_cast<unsigned>(t)));
        g.graph_ = g.ld_;
    } else if (family == "cycle") {
        Params p(args, "cycle");
        const auto n = p.take("n");
        p.finish();
        dense(build_cycle(n));
    } else if (family == "hypercube") {
        Params p(args, "hypercube");
        const auto k = p.take("k");
        p.finish();
        if (k > 64) throw ParameterError("hypercube: k too large");
        dense(build_hypercube(static_cast<unsigned>(k)));
    } else if (family == "complete-loops") {
        Params p(args, "complete-loops");
        const auto n = p.take("n");
        p.finish();
        dense(build_complete_with_loops(n));
    } else if (family == "complete-minus-matching") {
        Params p(args, "complete-minus-matching");
        const auto n = p.take("n");
        p.finish();
        dense(build_complete_minus_matching(n));
    } else if (family == "petersen") {
        Params(args, "petersen").finish();
        dense(build_petersen());
    } else if (family == "random-regular") {
        Params p(args, "random-regular");
        const auto n = p.take("n");
        const auto d = p.take("d");
        const auto seed = p.take("seed");
        p.finish();
        dense(build_random_regular(n, d, seed));
    } else if (family == "file") {
        dense(load_graph(std::filesystem::path(std::string(args))));
    } else if (std::filesystem::exists(std::string(spec))) {
        dense(load_graph(std::filesystem::path(std::string(spec))));
    } else {
        throw ParseError("unknown graph spec \"" + g.spec_ +
                         "\" (expected cycle:, hypercube:, complete-loops:, complete-minus-matching:, petersen, "
                         "random-regular:, ld:, file:<path> or an existing edge-list path)");
    }
    return g;
}

const DenseGraph& GraphInstance::dense_view() const {
    if (dense_) return *dense_;
    if (!ld_dense_) ld_dense_ = std::make_shared<const DenseGraph>(ld_->to_dense());
    return *ld_dense_;
}

}  // namespace nmc
