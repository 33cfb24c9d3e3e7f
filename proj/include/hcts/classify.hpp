#pragma once

#include "hcts/error.hpp"
#include "hcts/stats.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

// Single-feature linear discriminant: with equal priors and a pooled variance
// the decision boundary in one dimension is the midpoint of the class means.
namespace hcts {

using Label = int; // 0 or 1

enum class Side { Above, Below };

struct ThresholdClassifier {
    double threshold = 0.0;
    Side positive_side = Side::Above; // side predicted as class 1
    std::string trained_on;

    Label predict(double v) const {
        const bool positive = positive_side == Side::Above ? v >= threshold : v <= threshold;
        return positive ? 1 : 0;
    }
};

namespace detail {

inline void check_labels(std::span<const double> values, std::span<const Label> labels) {
    require(values.size() == labels.size(), ErrorKind::InvalidArgument,
            "values and labels differ in length");
    for (Label l : labels)
        require(l == 0 || l == 1, ErrorKind::InvalidArgument, "labels must be 0 or 1");
}

} // namespace detail

inline ThresholdClassifier fit_threshold_classifier(std::span<const double> values, std::span<const Label> labels,
                                                    std::string feature = {}) {
    detail::check_labels(values, labels);
    double sum[2] = {0.0, 0.0};
    std::size_t count[2] = {0, 0};
    for (std::size_t i = 0; i < values.size(); ++i) {
        sum[labels[i]] += values[i];
        ++count[labels[i]];
    }
    require(count[0] > 0 && count[1] > 0, ErrorKind::MissingClass, "both classes need at least one sample");
    const double m0 = sum[0] / static_cast<double>(count[0]);
    const double m1 = sum[1] / static_cast<double>(count[1]);
    ThresholdClassifier c;
    c.threshold = m0 == m1 ? m0 : 0.5 * (m0 + m1);
    c.positive_side = m1 >= m0 ? Side::Above : Side::Below;
    c.trained_on = std::move(feature);
    return c;
}

/// Fraction of samples on the wrong side; the threshold itself belongs to the
/// positive side.
inline double misclassification_rate(const ThresholdClassifier& c, std::span<const double> values,
                                     std::span<const Label> labels) {
    detail::check_labels(values, labels);
    require(!values.empty(), ErrorKind::InvalidArgument, "no samples to score");
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (c.predict(values[i]) != labels[i]) ++wrong;
    return static_cast<double>(wrong) / static_cast<double>(values.size());
}

/// In-sample rate of the classifier fitted to the same data.
inline double fit_and_score(std::span<const double> values, std::span<const Label> labels) {
    return misclassification_rate(fit_threshold_classifier(values, labels), values, labels);
}

/// Label-permutation p-value of the in-sample misclassification rate:
/// (1 + #{shuffled rate <= observed}) / (n_perm + 1).
inline double permutation_pvalue(std::span<const double> values, std::span<const Label> labels,
                                 std::size_t n_perm, std::uint64_t seed) {
    require(n_perm >= 1, ErrorKind::InvalidArgument, "n_perm must be >= 1");
    const double observed = fit_and_score(values, labels);
    std::vector<Label> shuffled(labels.begin(), labels.end());
    std::mt19937_64 rng(seed);
    std::size_t as_good = 0;
    for (std::size_t k = 0; k < n_perm; ++k) {
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        if (fit_and_score(values, shuffled) <= observed) ++as_good;
    }
    return static_cast<double>(1 + as_good) / static_cast<double>(n_perm + 1);
}

/// Permutation p-values against a null pooled over all features: each of the
/// n_perm label shuffles is scored on every feature, and each observed rate is
/// compared with all n_perm * n_features null rates.
inline std::vector<double> pooled_permutation_pvalues(const std::vector<std::vector<double>>& columns,
                                                      std::span<const Label> labels, std::size_t n_perm,
                                                      std::uint64_t seed) {
    require(n_perm >= 1, ErrorKind::InvalidArgument, "n_perm must be >= 1");
    std::vector<double> observed;
    for (const auto& col : columns) observed.push_back(fit_and_score(col, labels));
    std::vector<double> null;
    null.reserve(n_perm * columns.size());
    std::vector<Label> shuffled(labels.begin(), labels.end());
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < n_perm; ++k) {
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (const auto& col : columns) null.push_back(fit_and_score(col, shuffled));
    }
    std::sort(null.begin(), null.end());
    std::vector<double> p;
    for (double obs : observed) {
        const auto as_good = static_cast<std::size_t>(std::upper_bound(null.begin(), null.end(), obs) - null.begin());
        p.push_back(static_cast<double>(1 + as_good) / static_cast<double>(null.size() + 1));
    }
    return p;
}

} // namespace hcts
