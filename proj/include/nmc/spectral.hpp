#pragma once

#include "nmc/error.hpp"
#include "nmc/graph.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace nmc {

/// Numeric tolerances shared by the spectral checks and their tests.
struct Tolerances {
    static constexpr double symmetry = 1e-12;
    /// Eigenvalue accuracy, relative to max(1, ||A||).
    static constexpr double eigenvalue = 1e-9;
    static constexpr double mixing_slack = 1e-9;
    static constexpr double perron_relative = 1e-9;
    static constexpr double trace_relative = 1e-6;
    static constexpr double residual_relative = 1e-7;
};

/// Eigenvalues sorted descending.
struct Spectrum {
    std::vector<double> eigenvalues;
    std::uint64_t n = 0;
    std::uint64_t d = 0;

    double sum() const {
        double s = 0;
        for (double x : eigenvalues) s += x;
        return s;
    }
};

struct ExpansionCert {
    double lambda = 0;  // max(|lambda_2|, |lambda_n|)
    std::uint64_t d = 0;
    std::uint64_t n = 0;
    double ratio = 0;  // lambda / d
    bool connected = true;
    std::string warning;
};

struct MixingResult {
    double lhs = 0;  // | |E(S,T)| - d|S||T|/n |
    double rhs = 0;  // lambda sqrt(|S||T|)
    bool holds = true;
};

struct FigureOfMerit {
    double epsilon_star = 0;        // lambda^{3/2} / d
    double precondition_ratio = 0;  // n lambda / (d^3 max(ln d, 1))
};

namespace detail {

template <typename Derived>
Eigen::MatrixXd checked_symmetric(const Eigen::MatrixBase<Derived>& a) {
    if (a.rows() != a.cols()) throw ValidationError("eigenvalues: matrix is not square");
    if (static_cast<std::uint64_t>(a.rows()) > kDenseVertexCap) {
        throw CapabilityError("dense eigensolver is limited to n <= " + std::to_string(kDenseVertexCap));
    }
    Eigen::MatrixXd m = a.template cast<double>();
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > Tolerances::symmetry) {
        throw ValidationError("eigenvalues: matrix is not symmetric (max |A - A^T| = " + std::to_string(asym) + ")");
    }
    return m;
}

}  // namespace detail

/// Full spectrum of a real symmetric matrix, descending. Any Eigen expression with
/// an arithmetic scalar is accepted; the solve runs in double.
template <typename Derived>
Spectrum eigenvalues(const Eigen::MatrixBase<Derived>& adjacency) {
    const Eigen::MatrixXd m = detail::checked_symmetric(adjacency);
    Spectrum s;
    s.n = static_cast<std::uint64_t>(m.rows());
    if (m.rows() == 0) return s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ValidationError("eigensolver did not converge");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::reverse(s.eigenvalues.begin(), s.eigenvalues.end());
    return s;
}

/// Eigenpairs, eigenvalues descending with matching eigenvector columns.
struct EigenDecomposition {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

template <typename Derived>
EigenDecomposition eigen_decomposition(const Eigen::MatrixBase<Derived>& adjacency) {
    const Eigen::MatrixXd m = detail::checked_symmetric(adjacency);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) throw ValidationError("eigensolver did not converge");
    EigenDecomposition out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

Spectrum spectrum(const DenseGraph& g);

/// Spectral expansion of a regular graph; multigraph entries are used as weights.
ExpansionCert expansion_lambda(const DenseGraph& g);
ExpansionCert expansion_from_spectrum(const Spectrum& s, bool connected);

MixingResult mixing_check(const DenseGraph& g, double lambda, std::span<const VertexId> S,
                          std::span<const VertexId> T);

/// Constant-free figure of merit; not a proven bound (hidden constants are unknown).
FigureOfMerit nm_figure_of_merit(std::uint64_t n, std::uint64_t d, double lambda);

}  // namespace nmc
