#pragma once

#include "hcts/dataset.hpp"
#include "hcts/error.hpp"
#include "hcts/feature_matrix.hpp"
#include "hcts/io.hpp"
#include "hcts/time_series.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

// Seeded generator of FHR-like recordings: baseline plus AR(1) variability,
// with amplitude spikes planted in an "affected" group whose cord pH is low.
namespace hcts {

struct SynthConfig {
    std::size_t n_series = 120;
    std::size_t length = 7200; // 30 min at 4 Hz
    double baseline_bpm = 140.0;
    double baseline_jitter_bpm = 5.0;
    double ar_coeff = 0.95;
    double noise_sd = 1.5;
    double affected_fraction = 0.5;
    double spike_rate = 0.002;      // spike onsets per sample, affected series only
    double spike_magnitude = 35.0;  // bpm
    std::size_t spike_len = 4;      // samples
    double affected_ar_coeff = -1.0; // < 0: same as ar_coeff; otherwise modulates regularity
    double missing_gap_rate = 0.0005;
    std::size_t max_missing_gap = 20;
    double test_fraction = 0.0;
    std::uint64_t seed = 1;

    void validate() const {
        require(length >= 400, ErrorKind::InvalidArgument, "synthetic series length must be >= 400");
        require(n_series >= 4, ErrorKind::InvalidArgument, "need at least 4 synthetic series");
        require(affected_fraction > 0.0 && affected_fraction < 1.0, ErrorKind::InvalidArgument,
                "affected fraction must lie in (0, 1)");
        require(std::abs(ar_coeff) < 1.0, ErrorKind::InvalidArgument, "AR coefficient must lie in (-1, 1)");
        require(affected_ar_coeff < 0.0 || affected_ar_coeff < 1.0, ErrorKind::InvalidArgument,
                "affected AR coefficient must be < 1");
        require(noise_sd > 0.0, ErrorKind::InvalidArgument, "noise sd must be positive");
        require(spike_rate >= 0.0 && spike_rate <= 1.0, ErrorKind::InvalidArgument, "spike rate must lie in [0, 1]");
        require(missing_gap_rate >= 0.0 && missing_gap_rate <= 1.0, ErrorKind::InvalidArgument,
                "missing gap rate must lie in [0, 1]");
        require(max_missing_gap >= 1, ErrorKind::InvalidArgument, "max missing gap must be >= 1");
        require(test_fraction >= 0.0 && test_fraction < 1.0, ErrorKind::InvalidArgument,
                "test fraction must lie in [0, 1)");
    }
};

/// Affected series are spread evenly through the index range.
inline bool synth_is_affected(std::size_t i, double fraction) {
    return std::floor(static_cast<double>(i + 1) * fraction) > std::floor(static_cast<double>(i) * fraction);
}

inline std::string synth_id(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fhr%05zu", i + 1);
    return buf;
}

inline LabeledDataset generate_synthetic(const SynthConfig& cfg) {
    cfg.validate();
    LabeledDataset ds;
    const auto n_test = static_cast<std::size_t>(std::llround(cfg.test_fraction * static_cast<double>(cfg.n_series)));
    for (std::size_t i = 0; i < cfg.n_series; ++i) {
        std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(i + 1)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> unif(0.0, 1.0);

        const bool affected = synth_is_affected(i, cfg.affected_fraction);
        const double phi = affected && cfg.affected_ar_coeff >= 0.0 ? cfg.affected_ar_coeff : cfg.ar_coeff;
        const double baseline = cfg.baseline_bpm + cfg.baseline_jitter_bpm * gauss(rng);

        std::vector<double> x(cfg.length);
        double dev = cfg.noise_sd / std::sqrt(1.0 - phi * phi) * gauss(rng);
        for (std::size_t t = 0; t < cfg.length; ++t) {
            if (t > 0) dev = phi * dev + cfg.noise_sd * gauss(rng);
            x[t] = baseline + dev;
        }
        if (affected) {
            for (std::size_t t = 0; t < cfg.length; ++t) {
                if (unif(rng) >= cfg.spike_rate) continue;
                const double sign = unif(rng) < 0.5 ? -1.0 : 1.0;
                const double amp = sign * cfg.spike_magnitude * (0.7 + 0.6 * unif(rng));
                for (std::size_t k = t; k < std::min(cfg.length, t + cfg.spike_len); ++k) x[k] += amp;
            }
        }
        std::vector<bool> missing(cfg.length, false);
        for (std::size_t t = 1; t + 1 < cfg.length; ++t) {
            if (unif(rng) >= cfg.missing_gap_rate) continue;
            const auto len = 1 + static_cast<std::size_t>(unif(rng) * static_cast<double>(cfg.max_missing_gap));
            for (std::size_t k = t; k < std::min(cfg.length - 1, t + len); ++k) missing[k] = true;
        }

        const double ph = affected ? 6.95 + 0.13 * unif(rng) : 7.12 + 0.28 * unif(rng);
        const double p_comp = affected ? 0.6 : 0.1;
        Outcome o;
        o.id = synth_id(i);
        o.cord_ph = std::round(ph * 1000.0) / 1000.0;
        o.compromise = unif(rng) < p_comp;
        o.split = i + n_test >= cfg.n_series ? Split::Test : Split::Train;

        ds.series.emplace_back(o.id, std::move(x), std::move(missing));
        ds.outcomes.push_back(std::move(o));
    }
    ds.validate();
    return ds;
}

/// Writes series/<id>.txt files plus manifest.csv under `dir`; returns the
/// manifest path.
inline std::filesystem::path write_dataset(const LabeledDataset& ds, const std::filesystem::path& dir) {
    ds.validate();
    std::vector<io::ManifestRecord> records;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const std::string rel = "series/" + ds.series[i].id() + ".txt";
        io::write_series_file(dir / rel, ds.series[i]);
        const auto& o = ds.outcomes[i];
        records.push_back({o.id, rel, o.cord_ph, o.compromise, o.split});
    }
    const auto manifest = dir / "manifest.csv";
    io::write_manifest(manifest, records);
    return manifest;
}

} // namespace hcts
