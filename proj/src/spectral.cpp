#include "nmc/spectral.hpp"

namespace nmc {

Spectrum spectrum(const DenseGraph& g) {
    Spectrum s = eigenvalues(g.adjacency_as<double>());
    s.d = g.degree();
    return s;
}

ExpansionCert expansion_from_spectrum(const Spectrum& s, bool connected) {
    ExpansionCert cert;
    cert.n = s.n;
    cert.d = s.d;
    cert.connected = connected;
    if (s.eigenvalues.size() >= 2) {
        cert.lambda = std::max(std::abs(s.eigenvalues[1]), std::abs(s.eigenvalues.back()));
    }
    cert.ratio = s.d ? cert.lambda / static_cast<double>(s.d) : 0.0;
    if (!connected) cert.warning = "graph is disconnected; lambda_2 = d so the expansion is trivial";
    return cert;
}

ExpansionCert expansion_lambda(const DenseGraph& g) { return expansion_from_spectrum(spectrum(g), g.is_connected()); }

MixingResult mixing_check(const DenseGraph& g, double lambda, std::span<const VertexId> S,
                          std::span<const VertexId> T) {
    const double edges = static_cast<double>(edge_count_between(g, S, T));
    const double s = static_cast<double>(S.size());
    const double t = static_cast<double>(T.size());
    MixingResult r;
    r.lhs = std::abs(edges - static_cast<double>(g.degree()) * s * t / static_cast<double>(g.vertex_count()));
    r.rhs = lambda * std::sqrt(s * t);
    r.holds = r.lhs <= r.rhs + Tolerances::mixing_slack;
    return r;
}

FigureOfMerit nm_figure_of_merit(std::uint64_t n, std::uint64_t d, double lambda) {
    if (d == 0 || d >= n) throw UsageError("figure of merit needs 0 < d < n");
    if (lambda < 0) throw UsageError("lambda must be non-negative");
    const double dd = static_cast<double>(d);
    FigureOfMerit f;
    f.epsilon_star = std::pow(lambda, 1.5) / dd;
    f.precondition_ratio = static_cast<double>(n) * lambda / (dd * dd * dd * std::max(std::log(dd), 1.0));
    return f;
}

}  // namespace nmc
