#pragma once

#include "hcts/error.hpp"
#include "hcts/feature_value.hpp"
#include "hcts/stats.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

// Regularity statistics over short windows. Both estimators use the Chebyshev
// distance between templates and a tolerance r = r_frac * std(window).
namespace hcts {

struct EntropyParams {
    std::size_t m = 1;
    double r_frac = 0.2;

    void validate() const {
        require(m >= 1, ErrorKind::InvalidArgument, "embedding dimension m must be >= 1");
        require(r_frac > 0.0 && std::isfinite(r_frac), ErrorKind::InvalidArgument,
                "r_frac must be positive");
    }
};

namespace detail {

inline void check_entropy_window(std::span<const double> w, const EntropyParams& p) {
    p.validate();
    require(w.size() >= p.m + 2, ErrorKind::SeriesTooShort,
            "entropy window of length " + std::to_string(w.size()) + " is shorter than m + 2");
}

// Templates starting at i and j agree on their first `len` samples.
inline bool templates_match(std::span<const double> x, std::size_t i, std::size_t j, std::size_t len,
                            double r) {
    for (std::size_t d = 0; d < len; ++d)
        if (std::abs(x[i + d] - x[j + d]) > r) return false;
    return true;
}

} // namespace detail

/// Approximate entropy, Phi^m - Phi^{m+1}, self-matches included.
inline FeatureValue apen(std::span<const double> window, const EntropyParams& p = {}) {
    detail::check_entropy_window(window, p);
    const double sd = stats::stddev(window);
    if (sd == 0.0) return FeatureValue::degenerate();
    const double r = p.r_frac * sd;
    const std::size_t n = window.size();
    const std::size_t n_m = n - p.m + 1;      // templates of length m
    const std::size_t n_m1 = n - p.m;         // templates of length m + 1

    std::vector<std::size_t> count_m(n_m, 0), count_m1(n_m1, 0);
    for (std::size_t i = 0; i < n_m; ++i) {
        for (std::size_t j = i; j < n_m; ++j) {
            if (!detail::templates_match(window, i, j, p.m, r)) continue;
            count_m[i] += 1;
            if (i != j) count_m[j] += 1;
            if (j < n_m1 && std::abs(window[i + p.m] - window[j + p.m]) <= r) {
                count_m1[i] += 1;
                if (i != j) count_m1[j] += 1;
            }
        }
    }
    auto phi = [](const std::vector<std::size_t>& counts) {
        const double total = static_cast<double>(counts.size());
        double s = 0.0;
        for (std::size_t c : counts) s += std::log(static_cast<double>(c) / total);
        return s / total;
    };
    return FeatureValue::of(phi(count_m) - phi(count_m1));
}

/// Sample entropy, -ln(A/B), self-matches excluded. B counts template pairs
/// matching over m samples, A over m + 1, both over the first N - m starts.
/// NotFinite when no (m+1)-length match exists.
inline FeatureValue sampen(std::span<const double> window, const EntropyParams& p = {}) {
    detail::check_entropy_window(window, p);
    const double sd = stats::stddev(window);
    if (sd == 0.0) return FeatureValue::degenerate();
    const double r = p.r_frac * sd;
    const std::size_t n_t = window.size() - p.m;
    std::size_t a = 0, b = 0;
    for (std::size_t i = 0; i + 1 < n_t; ++i) {
        for (std::size_t j = i + 1; j < n_t; ++j) {
            if (!detail::templates_match(window, i, j, p.m, r)) continue;
            ++b;
            if (std::abs(window[i + p.m] - window[j + p.m]) <= r) ++a;
        }
    }
    if (a == 0) return FeatureValue::not_finite();
    return FeatureValue::of(-std::log(static_cast<double>(a) / static_cast<double>(b)));
}

} // namespace hcts
