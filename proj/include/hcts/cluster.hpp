#pragma once

#include "hcts/error.hpp"
#include "hcts/feature_matrix.hpp"
#include "hcts/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hcts {

inline double pearson_r(std::span<const double> values, std::span<const double> target) {
    require(values.size() == target.size(), ErrorKind::InvalidArgument, "pearson_r inputs differ in length");
    require(values.size() >= 2, ErrorKind::InvalidArgument, "pearson_r needs at least two samples");
    const double r = stats::pearson(values, target);
    require(std::isfinite(r), ErrorKind::DegenerateColumn, "pearson_r input has zero variance");
    return r;
}

/// |Pearson R| between every pair of the named columns, unit diagonal.
inline Eigen::MatrixXd abs_corr_matrix(const FeatureMatrix& m, const std::vector<std::string>& features) {
    std::vector<std::vector<double>> cols;
    for (const auto& f : features) {
        cols.push_back(m.column_values(m.col_index(f)));
        require(!stats::all_equal(cols.back()), ErrorKind::DegenerateColumn, "column '" + f + "' is constant");
    }
    const auto n = static_cast<Eigen::Index>(features.size());
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            r(i, j) = r(j, i) = std::abs(stats::pearson(cols[i], cols[j]));
    return r;
}

/// One agglomeration step. Leaves are 0..n-1; the cluster formed by merge k
/// has id n + k. `a < b`.
struct Merge {
    int a;
    int b;
    double height;
    std::size_t size;
};

struct Dendrogram {
    std::vector<std::string> leaves;
    std::vector<Merge> merges;
};

/// Average-linkage (UPGMA) agglomeration. Cluster distance is the mean of the
/// leaf-to-leaf distances, kept as exact running sums. Ties go to the lowest
/// (a, b) id pair.
inline Dendrogram average_linkage(const Eigen::MatrixXd& dist, std::vector<std::string> leaves = {}) {
    const auto n = static_cast<std::size_t>(dist.rows());
    require(dist.rows() == dist.cols(), ErrorKind::InvalidArgument, "distance matrix must be square");
    require(n >= 1, ErrorKind::InvalidArgument, "distance matrix is empty");
    require(dist.allFinite(), ErrorKind::InvalidArgument, "distance matrix has non-finite entries");
    if (leaves.empty())
        for (std::size_t i = 0; i < n; ++i) leaves.push_back(std::to_string(i));
    require(leaves.size() == n, ErrorKind::InvalidArgument, "leaf names do not match matrix size");

    Eigen::MatrixXd sums = dist;
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::size_t> size(n, 1);
    std::vector<bool> active(n, true);

    Dendrogram d{std::move(leaves), {}};
    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t bi = 0, bj = 0;
        double best = 0.0;
        std::pair<int, int> best_ids{0, 0};
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                const double h = sums(i, j) / static_cast<double>(size[i] * size[j]);
                const std::pair<int, int> ids{std::min(id[i], id[j]), std::max(id[i], id[j])};
                if (!found || h < best || (h == best && ids < best_ids)) {
                    best = h;
                    best_ids = ids;
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == bi || k == bj) continue;
            sums(bi, k) = sums(k, bi) = sums(bi, k) + sums(bj, k);
        }
        size[bi] += size[bj];
        active[bj] = false;
        id[bi] = static_cast<int>(n + step);
        d.merges.push_back({best_ids.first, best_ids.second, best, size[bi]});
    }
    return d;
}

/// Partition into k clusters by undoing the last k - 1 merges. Cluster labels
/// are 0..k-1, numbered by their smallest leaf.
inline std::vector<int> cut_tree(const Dendrogram& d, std::size_t k) {
    const std::size_t n = d.leaves.size();
    require(k >= 1 && k <= n, ErrorKind::InvalidArgument,
            "cluster count must lie in [1, " + std::to_string(n) + "]");
    std::vector<std::size_t> parent(2 * n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto root = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t s = 0; s < n - k; ++s) {
        const auto& m = d.merges[s];
        parent[root(static_cast<std::size_t>(m.a))] = n + s;
        parent[root(static_cast<std::size_t>(m.b))] = n + s;
    }
    std::map<std::size_t, int> label;
    std::vector<int> out(n);
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
        const auto r = root(leaf);
        const auto it = label.try_emplace(r, static_cast<int>(label.size())).first;
        out[leaf] = it->second;
    }
    return out;
}

/// Cluster count from the largest gap between consecutive merge heights
/// (first gap wins ties). With fewer than three leaves every leaf is kept.
inline std::size_t auto_cluster_count(const Dendrogram& d) {
    const std::size_t n = d.leaves.size();
    if (n < 3) return n;
    std::size_t best_i = 0;
    double best_gap = -1.0;
    for (std::size_t i = 0; i + 1 < d.merges.size(); ++i) {
        const double gap = d.merges[i + 1].height - d.merges[i].height;
        if (gap > best_gap) {
            best_gap = gap;
            best_i = i;
        }
    }
    return n - (best_i + 1);
}

/// Lowest-scoring member of each cluster, ties to the lexicographically
/// smaller name. Output ordered by cluster label.
inline std::vector<std::string> select_representatives(const std::vector<int>& assignment,
                                                       const std::vector<std::string>& names,
                                                       const std::map<std::string, double>& scores) {
    require(assignment.size() == names.size(), ErrorKind::InvalidArgument, "assignment and names differ in length");
    std::map<int, std::pair<double, std::string>> best;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto it = scores.find(names[i]);
        require(it != scores.end(), ErrorKind::InvalidArgument, "no score for '" + names[i] + "'");
        const std::pair<double, std::string> cand{it->second, names[i]};
        auto [pos, inserted] = best.try_emplace(assignment[i], cand);
        if (!inserted && cand < pos->second) pos->second = cand;
    }
    std::vector<std::string> out;
    for (const auto& [label, entry] : best) out.push_back(entry.second);
    return out;
}

} // namespace hcts
