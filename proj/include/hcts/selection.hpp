#pragma once

#include "hcts/classify.hpp"
#include "hcts/cluster.hpp"
#include "hcts/error.hpp"
#include "hcts/fdr.hpp"
#include "hcts/feature_matrix.hpp"
#include "hcts/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Feature selection over a FeatureMatrix: classification with an FDR cut and
// redundancy reduction by clustering, and ranking by correlation to a
// continuous target.
namespace hcts {

enum class NullModel { Pooled, PerFeature };

inline std::string_view to_string(NullModel m) { return m == NullModel::Pooled ? "pooled" : "per-feature"; }

struct SelectionOptions {
    double q = 0.001;
    std::optional<std::size_t> clusters; // nullopt: largest merge-height gap
    std::size_t n_perm = 1000;
    std::uint64_t seed = 0;
    NullModel null_model = NullModel::Pooled;

    void validate() const {
        require(q > 0.0 && q <= 1.0, ErrorKind::InvalidArgument, "FDR level must lie in (0, 1]");
        require(n_perm >= 1, ErrorKind::InvalidArgument, "number of permutations must be >= 1");
        require(!clusters || *clusters >= 1, ErrorKind::InvalidArgument, "cluster count must be >= 1");
    }
};

enum class SelectionStatus { Ok, EmptySelection, NoFeatures };

inline std::string_view to_string(SelectionStatus s) {
    switch (s) {
    case SelectionStatus::Ok: return "ok";
    case SelectionStatus::EmptySelection: return "EmptySelection";
    case SelectionStatus::NoFeatures: return "NoFeatures";
    }
    return "ok";
}

struct FeatureScore {
    std::string name;
    ThresholdClassifier classifier;
    double rate;
    double p_value;
};

struct ClassificationReport {
    SelectionStatus status = SelectionStatus::Ok;
    std::size_t n_rows = 0;
    std::vector<std::string> dropped; // columns removed for special values
    std::vector<FeatureScore> scores; // surviving columns, matrix order
    std::vector<std::string> selected;
    Eigen::MatrixXd abs_corr;         // over `selected`
    Dendrogram dendrogram;
    std::size_t n_clusters = 0;
    std::vector<int> clusters;        // cluster label per selected feature
    std::vector<std::string> representatives;

    const FeatureScore& score(std::string_view name) const {
        for (const auto& s : scores)
            if (s.name == name) return s;
        throw Error(ErrorKind::UnknownFeature, "no score for '" + std::string(name) + "'");
    }
};

/// Columns of `m` dropped because they hold special values.
inline std::vector<std::string> special_columns(const FeatureMatrix& m) {
    std::vector<std::string> out;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (m.column_has_special(c)) out.push_back(m.col_names()[c]);
    return out;
}

/// Misclassification p-values for every column of a special-free matrix.
inline std::vector<double> classification_pvalues(const FeatureMatrix& m, std::span<const Label> labels,
                                                  const SelectionOptions& opt) {
    std::vector<std::vector<double>> cols;
    for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column_values(c));
    if (opt.null_model == NullModel::Pooled) return pooled_permutation_pvalues(cols, labels, opt.n_perm, opt.seed);
    std::vector<double> p;
    for (std::size_t c = 0; c < m.cols(); ++c)
        p.push_back(permutation_pvalue(cols[c], labels, opt.n_perm, derive_seed(opt.seed, "permutation", m.col_names()[c])));
    return p;
}

/// Special-value filter, per-feature threshold classifiers, FDR selection,
/// |R| matrix, average linkage, tree cut, and one representative per cluster.
/// `labels[i]` is the class of row i.
inline ClassificationReport run_classification_selection(const FeatureMatrix& matrix, std::span<const Label> labels,
                                                         const SelectionOptions& opt) {
    opt.validate();
    require(labels.size() == matrix.rows(), ErrorKind::InvalidArgument, "one label per matrix row is required");
    ClassificationReport rep;
    rep.n_rows = matrix.rows();
    rep.dropped = special_columns(matrix);
    const FeatureMatrix m = filter_special_features(matrix);
    if (m.cols() == 0) {
        rep.status = SelectionStatus::NoFeatures;
        return rep;
    }

    const auto pvalues = classification_pvalues(m, labels, opt);
    std::vector<NamedPValue> named;
    std::map<std::string, double> rates;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const auto& name = m.col_names()[c];
        const auto values = m.column_values(c);
        auto clf = fit_threshold_classifier(values, labels, name);
        const double rate = misclassification_rate(clf, values, labels);
        rep.scores.push_back({name, std::move(clf), rate, pvalues[c]});
        named.emplace_back(name, pvalues[c]);
        rates[name] = rate;
    }

    rep.selected = bh_fdr_select(named, opt.q);
    if (rep.selected.empty()) {
        rep.status = SelectionStatus::EmptySelection;
        return rep;
    }

    rep.abs_corr = abs_corr_matrix(m, rep.selected);
    const Eigen::MatrixXd dist = Eigen::MatrixXd::Ones(rep.abs_corr.rows(), rep.abs_corr.cols()) - rep.abs_corr;
    rep.dendrogram = average_linkage(dist, rep.selected);
    rep.n_clusters = opt.clusters ? std::min(*opt.clusters, rep.selected.size()) : auto_cluster_count(rep.dendrogram);
    rep.clusters = cut_tree(rep.dendrogram, rep.n_clusters);
    rep.representatives = select_representatives(rep.clusters, rep.selected, rates);
    return rep;
}

struct RegressionEntry {
    std::string name;
    double r;
    double p_value;
};

struct RegressionReport {
    std::vector<RegressionEntry> ranking; // descending |R|
    std::vector<std::string> dropped;     // special-valued columns
    std::vector<std::string> constant;    // zero-variance columns, no R defined
};

/// Ranks columns by |Pearson R| against `target`. Each p-value comes from
/// n_perm seeded shuffles of the target: (1 + #{|R_perm| >= |R|}) / (n_perm + 1).
inline RegressionReport rank_by_regression(const FeatureMatrix& matrix, std::span<const double> target,
                                           std::size_t n_perm, std::uint64_t seed) {
    require(target.size() == matrix.rows(), ErrorKind::InvalidArgument, "one target value per matrix row is required");
    require(n_perm >= 1, ErrorKind::InvalidArgument, "number of permutations must be >= 1");
    require(matrix.rows() >= 3, ErrorKind::InvalidArgument, "regression needs at least three rows");
    require(!stats::all_equal(target), ErrorKind::DegenerateColumn, "target is constant");
    for (double t : target) require(std::isfinite(t), ErrorKind::InvalidArgument, "target has non-finite values");

    RegressionReport rep;
    rep.dropped = special_columns(matrix);
    const FeatureMatrix m = filter_special_features(matrix);
    std::vector<double> shuffled(target.begin(), target.end());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const auto& name = m.col_names()[c];
        const auto values = m.column_values(c);
        if (stats::all_equal(values)) {
            rep.constant.push_back(name);
            continue;
        }
        const double r = pearson_r(values, target);
        std::copy(target.begin(), target.end(), shuffled.begin());
        std::mt19937_64 rng(derive_seed(seed, "regression", name));
        std::size_t as_strong = 0;
        for (std::size_t k = 0; k < n_perm; ++k) {
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            if (std::abs(stats::pearson(values, shuffled)) >= std::abs(r)) ++as_strong;
        }
        rep.ranking.push_back({name, r, static_cast<double>(1 + as_strong) / static_cast<double>(n_perm + 1)});
    }
    std::stable_sort(rep.ranking.begin(), rep.ranking.end(), [](const RegressionEntry& a, const RegressionEntry& b) {
        const double fa = std::abs(a.r), fb = std::abs(b.r);
        return fa > fb || (fa == fb && a.name < b.name);
    });
    return rep;
}

} // namespace hcts
