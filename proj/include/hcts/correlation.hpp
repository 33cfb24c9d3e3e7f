#pragma once

#include "hcts/error.hpp"
#include "hcts/stats.hpp"
#include "hcts/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

// Linear and information-theoretic dependence across lags, used to choose
// embedding delays for the catalog features.
namespace hcts {

inline constexpr std::size_t kDefaultAmiBins = 10;

namespace detail {

inline void check_lag(std::size_t n, std::size_t lag) {
    require(lag < n, ErrorKind::LagTooLarge,
            "lag " + std::to_string(lag) + " needs a series longer than " + std::to_string(n));
}

inline void check_not_constant(std::span<const double> x) {
    require(!stats::all_equal(x), ErrorKind::DegenerateSeries, "series is constant");
}

// Autocorrelation from precomputed deviations and their total sum of squares.
inline double autocorr_from_dev(std::span<const double> dev, double ss, std::size_t lag) {
    double s = 0.0;
    for (std::size_t t = 0; t + lag < dev.size(); ++t) s += dev[t] * dev[t + lag];
    return s / ss;
}

inline std::vector<int> equiwidth_bins(std::span<const double> x, std::size_t n_bins) {
    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it;
    const double range = *hi_it - lo;
    std::vector<int> bins(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto b = static_cast<std::size_t>(std::floor((x[i] - lo) / range * static_cast<double>(n_bins)));
        bins[i] = static_cast<int>(std::min(b, n_bins - 1));
    }
    return bins;
}

inline double ami_from_bins(const std::vector<int>& bins, std::size_t n_bins, std::size_t lag) {
    const std::size_t n_pairs = bins.size() - lag;
    std::vector<double> joint(n_bins * n_bins, 0.0), row(n_bins, 0.0), col(n_bins, 0.0);
    for (std::size_t t = 0; t < n_pairs; ++t) {
        const auto a = static_cast<std::size_t>(bins[t]);
        const auto b = static_cast<std::size_t>(bins[t + lag]);
        joint[a * n_bins + b] += 1.0;
        row[a] += 1.0;
        col[b] += 1.0;
    }
    const double total = static_cast<double>(n_pairs);
    double mi = 0.0;
    for (std::size_t a = 0; a < n_bins; ++a) {
        for (std::size_t b = 0; b < n_bins; ++b) {
            const double c = joint[a * n_bins + b];
            if (c == 0.0) continue;
            mi += c / total * std::log(c * total / (row[a] * col[b]));
        }
    }
    return mi;
}

} // namespace detail

/// Biased (global mean, N-normalized) autocorrelation at `lag`.
inline double autocorr(std::span<const double> x, std::size_t lag) {
    detail::check_lag(x.size(), lag);
    detail::check_not_constant(x);
    const double mu = stats::mean(x);
    std::vector<double> dev(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dev[i] = x[i] - mu;
    return detail::autocorr_from_dev(dev, stats::sum_sq_dev(x, mu), lag);
}

inline double autocorr(const TimeSeries& series, std::size_t lag) {
    return autocorr(series.require_complete(), lag);
}

/// Smallest lag >= 1 whose autocorrelation is <= 0, or max_lag when the
/// autocorrelation stays positive throughout.
inline std::size_t first_zero_autocorr(std::span<const double> x, std::size_t max_lag) {
    require(max_lag >= 1, ErrorKind::InvalidArgument, "max_lag must be >= 1");
    detail::check_lag(x.size(), max_lag);
    detail::check_not_constant(x);
    const double mu = stats::mean(x);
    std::vector<double> dev(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dev[i] = x[i] - mu;
    const double ss = stats::sum_sq_dev(x, mu);
    for (std::size_t lag = 1; lag <= max_lag; ++lag)
        if (detail::autocorr_from_dev(dev, ss, lag) <= 0.0) return lag;
    return max_lag;
}

inline std::size_t first_zero_autocorr(const TimeSeries& series, std::size_t max_lag) {
    return first_zero_autocorr(series.require_complete(), max_lag);
}

/// Histogram (plug-in) mutual information in nats between x_t and x_{t+lag},
/// with `n_bins` equiwidth bins spanning the series range on both axes.
/// Lag 0 gives the entropy of the binned marginal.
inline double auto_mutual_info(std::span<const double> x, std::size_t lag,
                               std::size_t n_bins = kDefaultAmiBins) {
    require(n_bins >= 2, ErrorKind::InvalidArgument, "n_bins must be >= 2");
    detail::check_lag(x.size(), lag);
    detail::check_not_constant(x);
    return detail::ami_from_bins(detail::equiwidth_bins(x, n_bins), n_bins, lag);
}

inline double auto_mutual_info(const TimeSeries& series, std::size_t lag,
                               std::size_t n_bins = kDefaultAmiBins) {
    return auto_mutual_info(series.require_complete(), lag, n_bins);
}

/// First local minimum of the auto-mutual-information profile over lags
/// 1..max_lag: AMI(l) < AMI(l-1) and AMI(l) <= AMI(l+1). A plateau step is
/// not a minimum. Returns max_lag when no minimum is found.
inline std::size_t first_min_auto_mutual_info(std::span<const double> x, std::size_t max_lag,
                                              std::size_t n_bins = kDefaultAmiBins) {
    require(max_lag >= 1, ErrorKind::InvalidArgument, "max_lag must be >= 1");
    require(n_bins >= 2, ErrorKind::InvalidArgument, "n_bins must be >= 2");
    detail::check_lag(x.size(), max_lag + 1);
    detail::check_not_constant(x);
    const auto bins = detail::equiwidth_bins(x, n_bins);
    double prev = detail::ami_from_bins(bins, n_bins, 0);
    double cur = detail::ami_from_bins(bins, n_bins, 1);
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        const double next = detail::ami_from_bins(bins, n_bins, lag + 1);
        if (cur < prev && cur <= next) return lag;
        prev = cur;
        cur = next;
    }
    return max_lag;
}

inline std::size_t first_min_auto_mutual_info(const TimeSeries& series, std::size_t max_lag,
                                              std::size_t n_bins = kDefaultAmiBins) {
    return first_min_auto_mutual_info(series.require_complete(), max_lag, n_bins);
}

} // namespace hcts
