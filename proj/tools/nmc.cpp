#include "nmc/error.hpp"
#include "nmc/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

namespace {

unsigned default_threads() {
    if (const char* env = std::getenv("NMC_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        std::cerr << "nmc: warning: ignoring NMC_THREADS=\"" << env << "\"\n";
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void emit(const nmc::Json& report, const nmc::ExperimentConfig& config) {
    std::ofstream file;
    if (!config.out.empty()) {
        file.open(config.out);
        if (!file) throw nmc::UsageError("cannot open " + config.out + " for writing");
    }
    std::ostream& out = config.out.empty() ? std::cout : file;
    if (config.format == "csv") {
        nmc::write_flip_csv(out, report);
    } else {
        out << report.dump(2) << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Split-state non-malleable graph codes: graphs, spectra and tampering experiments"};
    app.require_subcommand(1);

    nmc::ExperimentConfig config;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--graph", config.graph, "graph spec, e.g. cycle:n=8, ld:p=3,t=2 or an edge-list path")
            ->required();
        sub->add_option("--seed", seed, "64-bit seed (default: OS entropy, echoed in the report)");
        sub->add_option("--threads", threads, "worker threads (default: NMC_THREADS, then hardware)")
            ->check(CLI::PositiveNumber);
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", config.out, "write the report here instead of stdout");
        sub->add_option("--format", config.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* graph_info = app.add_subcommand("graph-info", "size, degree, lambda and figure of merit");
    add_common(graph_info);
    add_output(graph_info);

    auto* spectrum = app.add_subcommand("spectrum", "full adjacency spectrum");
    add_common(spectrum);
    add_output(spectrum);

    int bit = 0;
    auto* encode = app.add_subcommand("encode", "encode one bit, print \"L R\"");
    add_common(encode);
    encode->add_option("bit", bit, "0 or 1")->required()->check(CLI::IsMember({0, 1}));

    nmc::VertexId left = 0;
    nmc::VertexId right = 0;
    auto* decode = app.add_subcommand("decode", "decode a codeword, print the bit");
    add_common(decode);
    decode->add_option("L", left, "left vertex")->required();
    decode->add_option("R", right, "right vertex")->required();

    auto* tamper = app.add_subcommand("tamper", "flip probability of a split-state adversary");
    add_common(tamper);
    add_output(tamper);
    tamper->add_option("--adversary", config.adversary,
                       "table file, map spec (identity, const:v, perm-coords:.., affine:..), exhaustive, "
                       "or search:iters=..,restarts=..")
        ->required();
    tamper->add_option("--method", config.method, "auto, closed_form, brute_force, both or monte_carlo")
        ->check(CLI::IsMember({"auto", "closed_form", "brute_force", "both", "monte_carlo"}));
    tamper->add_option("--trials", config.trials, "Monte Carlo trials")->check(CLI::Range(100ull, 1ull << 40));
    tamper->add_option("--confidence", config.confidence, "Hoeffding interval confidence")
        ->check(CLI::Range(0.5, 0.999999));

    auto* mixing = app.add_subcommand("mixing", "check the expander mixing lemma on random subset pairs");
    add_common(mixing);
    add_output(mixing);
    mixing->add_option("--pairs", config.pairs, "random (S, T) pairs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    config.seed = seed ? *seed : entropy_seed();
    config.threads = threads ? *threads : default_threads();

    try {
        if (graph_info->parsed()) {
            emit(nmc::cmd_graph_info(config), config);
        } else if (spectrum->parsed()) {
            emit(nmc::cmd_spectrum(config), config);
        } else if (tamper->parsed()) {
            emit(nmc::cmd_tamper(config), config);
        } else if (mixing->parsed()) {
            emit(nmc::cmd_mixing(config), config);
        } else if (encode->parsed()) {
            const nmc::Codeword c = nmc::cmd_encode(config, nmc::bit_from_int(bit));
            std::cout << c.left << ' ' << c.right << '\n';
        } else if (decode->parsed()) {
            std::cout << nmc::to_int(nmc::cmd_decode(config, left, right)) << '\n';
        }
    } catch (const nmc::Error& e) {
        std::cerr << "nmc: error: " << e.what() << '\n';
        return nmc::exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "nmc: internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
