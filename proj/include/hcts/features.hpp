#pragma once

#include "hcts/correlation.hpp"
#include "hcts/entropy.hpp"
#include "hcts/error.hpp"
#include "hcts/feature_value.hpp"
#include "hcts/fit.hpp"
#include "hcts/geometry.hpp"
#include "hcts/stats.hpp"
#include "hcts/symbolic.hpp"
#include "hcts/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

// The scalar features. Each maps a complete (preprocessed) series to one
// FeatureValue; precondition violations on the series shape throw hcts::Error.
namespace hcts {

// ---------------------------------------------------------------------------
// Time-reversal asymmetry

/// Mean cubed lagged difference <(x_{t+tau} - x_t)^3>.
inline double trev_num(std::span<const double> x, std::size_t tau) {
    require(tau >= 1 && tau < x.size(), ErrorKind::LagTooLarge, "trev lag must lie in [1, N)");
    double s = 0.0;
    for (std::size_t t = 0; t + tau < x.size(); ++t) {
        const double d = x[t + tau] - x[t];
        s += d * d * d;
    }
    return s / static_cast<double>(x.size() - tau);
}

inline constexpr std::size_t kTrevMaxLag = 40;

/// CO_trev_mi_num: trev numerator at the first minimum of the auto mutual
/// information.
inline FeatureValue f_trev_mi_num(const TimeSeries& series, std::size_t max_lag = kTrevMaxLag,
                                  std::size_t n_bins = kDefaultAmiBins) {
    const auto x = series.require_complete();
    require(x.size() >= 50, ErrorKind::SeriesTooShort, "CO_trev_mi_num needs at least 50 samples");
    if (stats::all_equal(x)) return FeatureValue::degenerate();
    const std::size_t lag_cap = std::min(max_lag, x.size() - 2);
    const std::size_t tau = first_min_auto_mutual_info(x, lag_cap, n_bins);
    return FeatureValue::of(trev_num(x, tau));
}

// ---------------------------------------------------------------------------
// Distribution

/// DN_OutlierTest2_std: std after removing ceil(2% N) samples from each tail,
/// over the std of the full series.
inline FeatureValue f_outliertest2_std(const TimeSeries& series) {
    const auto x = series.require_complete();
    const std::size_t n = x.size();
    require(n >= 100, ErrorKind::SeriesTooShort, "DN_OutlierTest2_std needs at least 100 samples");
    const double full = stats::stddev(x);
    if (full == 0.0) return FeatureValue::degenerate();
    const std::size_t k = (2 * n + 99) / 100;
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    const std::span<const double> kept(sorted.data() + k, n - 2 * k);
    return FeatureValue::of(stats::stddev(kept) / full);
}

/// coeff_var_2: (std / mean)^2 with the n - 1 standard deviation.
inline FeatureValue f_coeff_var_2(const TimeSeries& series) {
    const auto x = series.require_complete();
    const double mu = stats::mean(x);
    if (mu == 0.0) return FeatureValue::not_finite();
    const double cv = stats::stddev(x) / mu;
    return FeatureValue::of(cv * cv);
}

/// median_absolute_deviation: the mean of |x - median(x)|.
inline FeatureValue f_mean_abs_dev_median(const TimeSeries& series) {
    const auto x = series.require_complete();
    const double med = stats::median(x);
    double s = 0.0;
    for (double v : x) s += std::abs(v - med);
    return FeatureValue::of(s / static_cast<double>(x.size()));
}

/// Density-normalized equiwidth histogram of x - min(x).
struct ShiftedHistogram {
    std::vector<double> centers;
    std::vector<double> density;
};

inline ShiftedHistogram shifted_histogram(std::span<const double> x, std::size_t n_bins) {
    const double lo = *std::min_element(x.begin(), x.end());
    const double range = *std::max_element(x.begin(), x.end()) - lo;
    const double width = range / static_cast<double>(n_bins);
    ShiftedHistogram h{std::vector<double>(n_bins), std::vector<double>(n_bins, 0.0)};
    for (double v : x) {
        auto b = static_cast<std::size_t>(std::floor((v - lo) / range * static_cast<double>(n_bins)));
        h.density[std::min(b, n_bins - 1)] += 1.0;
    }
    const double norm = static_cast<double>(x.size()) * width;
    for (std::size_t b = 0; b < n_bins; ++b) {
        h.centers[b] = (static_cast<double>(b) + 0.5) * width;
        h.density[b] /= norm;
    }
    return h;
}

/// DN_SimpleFit_exp1_rmse_h30: RMSE of a least-squares exponential density
/// lambda * exp(-lambda z) fitted to the histogram of x - min(x).
inline FeatureValue f_simplefit_exp1_rmse(const TimeSeries& series, std::size_t n_bins = 30) {
    const auto x = series.require_complete();
    require(n_bins >= 2, ErrorKind::InvalidArgument, "n_bins must be >= 2");
    require(x.size() >= n_bins, ErrorKind::SeriesTooShort, "fewer samples than histogram bins");
    if (stats::all_equal(x)) return FeatureValue::degenerate();
    const auto h = shifted_histogram(x, n_bins);

    using Vec1 = Eigen::Matrix<double, 1, 1>;
    const auto model = [](double z, const Vec1& p, Vec1& grad) {
        const double e = std::exp(-p(0) * z);
        grad(0) = e - p(0) * z * e;
        return p(0) * e;
    };
    const double lo = *std::min_element(x.begin(), x.end());
    double mean_shift = 0.0;
    for (double v : x) mean_shift += v - lo;
    mean_shift /= static_cast<double>(x.size());

    bool any = false;
    double best = 0.0;
    for (double seed : {1.0 / mean_shift, h.density.front()}) {
        if (!(seed > 0.0) || !std::isfinite(seed)) continue;
        const auto r = levenberg_marquardt<1>(model, h.centers, h.density, Vec1(seed));
        if (!r.converged || !std::isfinite(r.sse)) continue;
        if (!any || r.sse < best) best = r.sse;
        any = true;
    }
    require(any, ErrorKind::NumericalFailure, "exponential density fit did not converge");
    return FeatureValue::of(std::sqrt(best / static_cast<double>(n_bins)));
}

// ---------------------------------------------------------------------------
// Local entropy spread

struct LocalWindowParams {
    std::size_t window_len = 200;
    std::size_t n_windows = 100;
    std::uint64_t seed = 0;

    void validate() const {
        require(window_len >= 20, ErrorKind::InvalidArgument, "window_len must be >= 20");
        require(n_windows >= 2, ErrorKind::InvalidArgument, "n_windows must be >= 2");
    }
};

enum class LocalStat { MeanApEn, StdSampEn };

/// Window start positions drawn uniformly, with replacement, from the seed.
inline std::vector<std::size_t> random_window_starts(std::size_t series_len, const LocalWindowParams& w) {
    w.validate();
    require(series_len >= w.window_len + 1, ErrorKind::SeriesTooShort,
            "series of length " + std::to_string(series_len) + " is too short for windows of " +
                std::to_string(w.window_len));
    std::mt19937_64 rng(w.seed);
    std::uniform_int_distribution<std::size_t> pick(0, series_len - w.window_len);
    std::vector<std::size_t> starts(w.n_windows);
    for (auto& s : starts) s = pick(rng);
    return starts;
}

/// SY_SpreadRandomLocal_*: mean ApEn or std of SampEn over random local
/// windows. Special-valued windows are skipped; NotFinite when more than half
/// of the windows are skipped.
inline FeatureValue f_spread_random_local(const TimeSeries& series, const LocalWindowParams& w,
                                          const EntropyParams& p, LocalStat stat) {
    const auto x = series.require_complete();
    const auto starts = random_window_starts(x.size(), w);
    std::vector<double> values;
    values.reserve(starts.size());
    for (std::size_t s : starts) {
        const auto window = x.subspan(s, w.window_len);
        const FeatureValue v = stat == LocalStat::MeanApEn ? apen(window, p) : sampen(window, p);
        if (v.is_finite()) values.push_back(v.value());
    }
    if (2 * (starts.size() - values.size()) > starts.size()) return FeatureValue::not_finite();
    if (stat == LocalStat::MeanApEn) return FeatureValue::of(stats::mean(values));
    if (values.size() < 2) return FeatureValue::not_finite();
    return FeatureValue::of(stats::stddev(values));
}

// ---------------------------------------------------------------------------
// Symbolic dynamics

/// Minimum transition-matrix eigenvalue for each alphabet size 2..max_alphabet.
struct DynTransProfile {
    std::vector<double> alphabet_sizes;
    std::vector<double> min_eigenvalues;
};

inline DynTransProfile dyntrans_profile(std::span<const double> x, std::size_t max_alphabet) {
    require(max_alphabet >= 5, ErrorKind::InvalidArgument, "max_alphabet must be >= 5");
    DynTransProfile prof;
    for (std::size_t n = 2; n <= max_alphabet; ++n) {
        const auto symbols = symbolize_equiprobable(x, n);
        prof.alphabet_sizes.push_back(static_cast<double>(n));
        prof.min_eigenvalues.push_back(min_eigenvalue(transition_matrix(symbols, n)));
    }
    return prof;
}

/// ST_dyntrans40_1_mineigfexp_adjr2: adjusted R^2 of an exponential decay
/// fitted to the minimum eigenvalue against alphabet size.
inline FeatureValue f_dyntrans_mineig_fexp(const TimeSeries& series, std::size_t max_alphabet = 40) {
    const auto x = series.require_complete();
    DynTransProfile prof;
    try {
        prof = dyntrans_profile(x, max_alphabet);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DegenerateSeries) return FeatureValue::degenerate();
        throw;
    }
    try {
        return FeatureValue::of(fit_exp_decay(prof.alphabet_sizes, prof.min_eigenvalues).adj_r2);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::FitDegenerate || e.kind() == ErrorKind::NumericalFailure)
            return FeatureValue::not_finite();
        throw;
    }
}

// ---------------------------------------------------------------------------
// Delay embedding

/// Points (x_t, x_{t+tau}).
inline std::vector<geom::Point> delay_embed(std::span<const double> x, std::size_t tau) {
    require(tau >= 1 && tau < x.size(), ErrorKind::LagTooLarge, "embedding delay must lie in [1, N)");
    std::vector<geom::Point> pts(x.size() - tau);
    for (std::size_t t = 0; t + tau < x.size(); ++t) pts[t] = {x[t], x[t + tau]};
    return pts;
}

/// Hull-area ratio of the points strictly closer to the centroid than the
/// median distance, over the hull area of all points. Degenerate when the
/// full hull has zero area.
inline FeatureValue embed2_area_ratio(std::span<const geom::Point> pts) {
    double cx = 0.0, cy = 0.0;
    for (const auto& p : pts) {
        cx += p.x;
        cy += p.y;
    }
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    std::vector<double> dist(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) dist[i] = std::hypot(pts[i].x - cx, pts[i].y - cy);
    const double med = stats::median(dist);

    const double outer = geom::hull_area(pts);
    if (outer == 0.0) return FeatureValue::degenerate();
    std::vector<geom::Point> inner;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (dist[i] < med) inner.push_back(pts[i]);
    return FeatureValue::of(geom::hull_area(inner) / outer);
}

/// CO_Embed2_tau_arearat: area ratio in the 2-D embedding at the first zero of
/// the autocorrelation (searched up to N/4).
inline FeatureValue f_embed2_arearat(const TimeSeries& series) {
    const auto x = series.require_complete();
    require(x.size() >= 100, ErrorKind::SeriesTooShort, "CO_Embed2_tau_arearat needs at least 100 samples");
    if (stats::all_equal(x)) return FeatureValue::degenerate();
    const std::size_t tau = first_zero_autocorr(x, x.size() / 4);
    return embed2_area_ratio(delay_embed(x, tau));
}

// ---------------------------------------------------------------------------
// Simple helpers exposed as features

inline FeatureValue f_mean(const TimeSeries& series) {
    return FeatureValue::of(stats::mean(series.require_complete()));
}

inline FeatureValue f_std(const TimeSeries& series) {
    return FeatureValue::of(stats::stddev(series.require_complete()));
}

inline FeatureValue f_autocorr(const TimeSeries& series, std::size_t lag) {
    const auto x = series.require_complete();
    if (stats::all_equal(x)) return FeatureValue::degenerate();
    return FeatureValue::of(autocorr(x, lag));
}

} // namespace hcts
