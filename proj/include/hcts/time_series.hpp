#pragma once

#include "hcts/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace hcts {

inline constexpr double kFhrSampleRateHz = 4.0;

/// Uniformly sampled signal with an explicit missing-sample mask.
///
/// Missing samples hold NaN in values(); every other sample is finite.
class TimeSeries {
public:
    TimeSeries(std::string id, std::vector<double> values, std::vector<bool> missing,
               double sample_rate_hz = kFhrSampleRateHz)
        : id_(std::move(id)), values_(std::move(values)), missing_(std::move(missing)),
          sample_rate_hz_(sample_rate_hz) {
        require(!values_.empty(), ErrorKind::InvalidArgument, "series '" + id_ + "' is empty");
        require(values_.size() == missing_.size(), ErrorKind::InvalidArgument,
                "series '" + id_ + "': values and missing mask differ in length");
        require(sample_rate_hz_ > 0.0 && std::isfinite(sample_rate_hz_), ErrorKind::InvalidArgument,
                "series '" + id_ + "': sample rate must be positive");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (missing_[i]) {
                values_[i] = std::numeric_limits<double>::quiet_NaN();
            } else {
                require(std::isfinite(values_[i]), ErrorKind::InvalidArgument,
                        "series '" + id_ + "': non-finite sample at index " + std::to_string(i));
            }
        }
    }

    /// A series with no missing samples.
    static TimeSeries complete(std::string id, std::vector<double> values,
                               double sample_rate_hz = kFhrSampleRateHz) {
        std::vector<bool> mask(values.size(), false);
        return TimeSeries(std::move(id), std::move(values), std::move(mask), sample_rate_hz);
    }

    const std::string& id() const noexcept { return id_; }
    std::span<const double> values() const noexcept { return values_; }
    const std::vector<bool>& missing() const noexcept { return missing_; }
    double sample_rate_hz() const noexcept { return sample_rate_hz_; }
    std::size_t size() const noexcept { return values_.size(); }

    std::size_t missing_count() const noexcept {
        return static_cast<std::size_t>(std::count(missing_.begin(), missing_.end(), true));
    }
    bool has_missing() const noexcept { return missing_count() > 0; }

    /// Throws MissingValues unless every sample is present.
    std::span<const double> require_complete() const {
        require(!has_missing(), ErrorKind::MissingValues,
                "series '" + id_ + "' still has missing samples; preprocess it first");
        return values_;
    }

    friend bool operator==(const TimeSeries& a, const TimeSeries& b) {
        if (a.id_ != b.id_ || a.missing_ != b.missing_ || a.sample_rate_hz_ != b.sample_rate_hz_ ||
            a.values_.size() != b.values_.size())
            return false;
        for (std::size_t i = 0; i < a.values_.size(); ++i)
            if (!a.missing_[i] && a.values_[i] != b.values_[i]) return false;
        return true;
    }

private:
    std::string id_;
    std::vector<double> values_;
    std::vector<bool> missing_;
    double sample_rate_hz_;
};

// How interior gaps that survive interpolation are handled: spliced out, or
// the series is rejected (only the edges are ever trimmed).
enum class TrimMode { Splice, EdgeOnly };

inline std::string_view to_string(TrimMode m) { return m == TrimMode::Splice ? "splice" : "edge"; }

struct PreprocessConfig {
    // 15 s at 4 Hz.
    std::size_t max_interp_gap_samples = 60;
    double max_missing_fraction = 0.2;
    TrimMode trim_mode = TrimMode::Splice;

    void validate() const {
        require(max_interp_gap_samples >= 1, ErrorKind::InvalidArgument,
                "max_interp_gap_samples must be >= 1");
        require(max_missing_fraction >= 0.0 && max_missing_fraction <= 1.0,
                ErrorKind::InvalidArgument, "max_missing_fraction must lie in [0, 1]");
    }
};

struct Rejected {
    std::string id;
    double missing_fraction;
};

namespace detail {

struct Run {
    std::size_t begin;
    std::size_t end; // one past the last missing sample
};

inline std::vector<Run> missing_runs(const std::vector<bool>& mask) {
    std::vector<Run> runs;
    std::size_t i = 0;
    while (i < mask.size()) {
        if (!mask[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < mask.size() && mask[j]) ++j;
        runs.push_back({i, j});
        i = j;
    }
    return runs;
}

} // namespace detail

/// Fills interior missing runs no longer than the configured gap by linear
/// interpolation between the flanking samples. Edge runs and longer interior
/// runs are left missing.
inline TimeSeries interpolate_short_gaps(const TimeSeries& series, const PreprocessConfig& cfg) {
    cfg.validate();
    std::vector<double> values(series.values().begin(), series.values().end());
    std::vector<bool> mask = series.missing();
    for (const auto& run : detail::missing_runs(mask)) {
        const std::size_t len = run.end - run.begin;
        if (run.begin == 0 || run.end == mask.size() || len > cfg.max_interp_gap_samples) continue;
        const std::size_t left = run.begin - 1;
        const std::size_t right = run.end;
        const double span = static_cast<double>(right - left);
        for (std::size_t t = run.begin; t < run.end; ++t) {
            const double w = static_cast<double>(t - left) / span;
            values[t] = values[left] + w * (values[right] - values[left]);
            mask[t] = false;
        }
    }
    return TimeSeries(series.id(), std::move(values), std::move(mask), series.sample_rate_hz());
}

using TrimResult = std::variant<TimeSeries, Rejected>;

/// Drops leading and trailing missing runs, rejects the series when the
/// remaining missing fraction exceeds the limit, and otherwise splices the
/// remaining interior gaps out by concatenating the flanking segments. In
/// EdgeOnly mode a series that still has interior gaps is rejected instead.
inline TrimResult trim_and_filter(const TimeSeries& series, const PreprocessConfig& cfg) {
    cfg.validate();
    const auto& mask = series.missing();
    const auto first = std::find(mask.begin(), mask.end(), false);
    if (first == mask.end()) return Rejected{series.id(), 1.0};
    const auto last = std::find(mask.rbegin(), mask.rend(), false).base();

    const auto begin = static_cast<std::size_t>(first - mask.begin());
    const auto end = static_cast<std::size_t>(last - mask.begin());
    const std::size_t n = end - begin;
    const auto n_missing = static_cast<std::size_t>(std::count(first, last, true));
    const double fraction = static_cast<double>(n_missing) / static_cast<double>(n);
    if (fraction > cfg.max_missing_fraction) return Rejected{series.id(), fraction};
    if (cfg.trim_mode == TrimMode::EdgeOnly && n_missing > 0) return Rejected{series.id(), fraction};

    std::vector<double> kept;
    kept.reserve(n - n_missing);
    for (std::size_t i = begin; i < end; ++i)
        if (!mask[i]) kept.push_back(series.values()[i]);
    return TimeSeries::complete(series.id(), std::move(kept), series.sample_rate_hz());
}

/// Interpolation followed by trimming; the full cleaning path applied before
/// feature extraction.
inline TrimResult preprocess(const TimeSeries& series, const PreprocessConfig& cfg) {
    return trim_and_filter(interpolate_short_gaps(series, cfg), cfg);
}

} // namespace hcts
