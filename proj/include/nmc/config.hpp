#pragma once

#include "nmc/cayley.hpp"
#include "nmc/graph.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace nmc {

/// Flat "key=value,key=value" parameter list.
std::map<std::string, std::string> parse_key_values(std::string_view text, std::string_view context);

/// A graph resolved from a spec string:
///   cycle:n=<n>  hypercube:k=<k>  complete-loops:n=<n>  complete-minus-matching:n=<n>
///   petersen  random-regular:n=<n>,d=<d>,seed=<s>  ld:p=<prime>,t=<t>  file:<path> | <path>
class GraphInstance {
public:
    static GraphInstance parse(std::string_view spec);

    const RegularGraph& graph() const { return *graph_; }
    /// Dense backend, or nullptr for LD graphs.
    const DenseGraph* dense() const { return dense_.get(); }
    const LdGraph* ld() const { return ld_.get(); }
    const std::string& spec() const { return spec_; }

    /// Dense adjacency for spectral work: the graph itself, or the LD multiplicity
    /// matrix when it fits. Throws CapabilityError otherwise.
    const DenseGraph& dense_view() const;

private:
    std::string spec_;
    std::shared_ptr<const DenseGraph> dense_;
    std::shared_ptr<const LdGraph> ld_;
    std::shared_ptr<const RegularGraph> graph_;
    mutable std::shared_ptr<const DenseGraph> ld_dense_;
};

struct ExperimentConfig {
    std::string graph;
    std::string adversary;
    std::string method = "auto";  // auto | closed_form | brute_force | both | monte_carlo
    std::uint64_t trials = 100000;
    double confidence = 0.95;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::uint64_t pairs = 1000;
    std::string out;
    std::string format = "json";  // json | csv
};

}  // namespace nmc
