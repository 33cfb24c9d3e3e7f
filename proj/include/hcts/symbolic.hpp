#pragma once

#include "hcts/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

// Coarse-graining of a series into an alphabet and the Markov-chain summary of
// the resulting symbol sequence.
namespace hcts {

using Symbol = int;

/// Maps each sample to the index of its quantile bin. Bins are contiguous in
/// value, hold as nearly equal counts as possible, and every symbol in
/// 0..alphabet-1 is used. Tied values always share a symbol.
inline std::vector<Symbol> symbolize_equiprobable(std::span<const double> x, std::size_t alphabet) {
    require(alphabet >= 1, ErrorKind::InvalidArgument, "alphabet must be >= 1");
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    // Runs of equal values in sorted order.
    std::vector<std::size_t> group_start;
    for (std::size_t k = 0; k < n; ++k)
        if (k == 0 || x[order[k]] != x[order[k - 1]]) group_start.push_back(k);
    const std::size_t n_groups = group_start.size();
    require(n_groups >= alphabet, ErrorKind::DegenerateSeries,
            "only " + std::to_string(n_groups) + " distinct values for an alphabet of " +
                std::to_string(alphabet));

    std::vector<Symbol> out(n);
    std::size_t bin = 0, cum = 0, in_bin = 0;
    for (std::size_t g = 0; g < n_groups; ++g) {
        const bool reached_target = cum * alphabet >= (bin + 1) * n;
        const bool must_advance = n_groups - g == alphabet - 1 - bin;
        if (in_bin > 0 && bin + 1 < alphabet && (reached_target || must_advance)) {
            ++bin;
            in_bin = 0;
        }
        const std::size_t end = g + 1 < n_groups ? group_start[g + 1] : n;
        for (std::size_t k = group_start[g]; k < end; ++k) out[order[k]] = static_cast<Symbol>(bin);
        cum += end - group_start[g];
        ++in_bin;
    }
    return out;
}

/// Row-stochastic one-step transition matrix of a symbol sequence. Symbols
/// with no outgoing transition get a uniform row.
inline Eigen::MatrixXd transition_matrix(std::span<const Symbol> symbols, std::size_t alphabet) {
    require(symbols.size() >= 2, ErrorKind::InvalidArgument, "need at least two symbols");
    require(alphabet >= 1, ErrorKind::InvalidArgument, "alphabet must be >= 1");
    const auto n = static_cast<Eigen::Index>(alphabet);
    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t t = 0; t + 1 < symbols.size(); ++t) {
        const Symbol a = symbols[t], b = symbols[t + 1];
        require(a >= 0 && b >= 0 && a < n && b < n, ErrorKind::InvalidArgument,
                "symbol outside the alphabet");
        counts(a, b) += 1.0;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const double total = counts.row(i).sum();
        if (total == 0.0)
            counts.row(i).setConstant(1.0 / static_cast<double>(n));
        else
            counts.row(i) /= total;
    }
    return counts;
}

/// Smallest real part over the eigenvalues of a square matrix.
inline double min_eigenvalue(const Eigen::MatrixXd& matrix) {
    require(matrix.rows() == matrix.cols() && matrix.rows() > 0, ErrorKind::InvalidArgument,
            "min_eigenvalue needs a non-empty square matrix");
    require(matrix.allFinite(), ErrorKind::InvalidArgument, "matrix has non-finite entries");
    Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix, /*computeEigenvectors=*/false);
    require(solver.info() == Eigen::Success, ErrorKind::NumericalFailure,
            "eigenvalue iteration did not converge");
    return solver.eigenvalues().real().minCoeff();
}

} // namespace hcts
