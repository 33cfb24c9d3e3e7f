#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

// Small descriptive statistics shared by the feature catalog and the pipeline.
namespace hcts::stats {

inline double mean(std::span<const double> x) {
    if (x.empty()) return std::nan("");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

/// Sum of squared deviations from the mean.
inline double sum_sq_dev(std::span<const double> x, double mu) {
    double s = 0.0;
    for (double v : x) s += (v - mu) * (v - mu);
    return s;
}

/// Sample standard deviation (n - 1 denominator). Zero for a single sample.
inline double stddev(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double mu = mean(x);
    return std::sqrt(sum_sq_dev(x, mu) / static_cast<double>(x.size() - 1));
}

inline double median(std::span<const double> x) {
    if (x.empty()) return std::nan("");
    std::vector<double> v(x.begin(), x.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline bool all_equal(std::span<const double> x) {
    return std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end();
}

/// Pearson correlation; NaN when either input has zero spread.
inline double pearson(std::span<const double> x, std::span<const double> y) {
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nan("");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

} // namespace hcts::stats
