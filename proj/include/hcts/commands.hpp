#pragma once

#include "hcts/catalog.hpp"
#include "hcts/dataset.hpp"
#include "hcts/error.hpp"
#include "hcts/everest.hpp"
#include "hcts/feature_matrix.hpp"
#include "hcts/io.hpp"
#include "hcts/plots.hpp"
#include "hcts/report.hpp"
#include "hcts/selection.hpp"
#include "hcts/synth.hpp"
#include "hcts/time_series.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

// The CLI verbs as library calls. Each validates all of its options before it
// writes anything.
namespace hcts::cli {

namespace fs = std::filesystem;
using report::Json;

inline void write_text(const fs::path& path, const std::string& text) {
    auto out = io::open_output(path);
    out << text;
    require(out.good(), ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

inline void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

inline fs::path provenance_path(const fs::path& matrix) { return fs::path(matrix.string() + ".provenance.json"); }

inline void check_exists(const fs::path& p, const std::string& what) {
    require(fs::exists(p), ErrorKind::MissingFile, what + " '" + p.string() + "' does not exist");
}

// ---------------------------------------------------------------------------

struct SynthOptions {
    SynthConfig config;
    fs::path out;
};

inline fs::path cmd_synth(const SynthOptions& opt) {
    opt.config.validate();
    require(!opt.out.empty(), ErrorKind::InvalidArgument, "--out is required");
    return write_dataset(generate_synthetic(opt.config), opt.out);
}

// ---------------------------------------------------------------------------

struct PreprocessOptions {
    fs::path dataset;
    fs::path out;
    PreprocessConfig config;
};

struct PreprocessOutcome {
    LabeledDataset kept;
    std::vector<Rejected> rejected;
};

inline PreprocessOutcome preprocess_dataset(const LabeledDataset& ds, const PreprocessConfig& cfg) {
    PreprocessOutcome res;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        auto r = preprocess(ds.series[i], cfg);
        if (auto* s = std::get_if<TimeSeries>(&r)) {
            res.kept.series.push_back(std::move(*s));
            res.kept.outcomes.push_back(ds.outcomes[i]);
        } else {
            res.rejected.push_back(std::get<Rejected>(r));
        }
    }
    return res;
}

inline Json rejected_json(const std::vector<Rejected>& rejected) {
    Json arr = Json::array();
    for (const auto& r : rejected) arr.push_back({{"id", r.id}, {"missing_fraction", r.missing_fraction}});
    return arr;
}

inline fs::path cmd_preprocess(const PreprocessOptions& opt) {
    opt.config.validate();
    require(!opt.out.empty(), ErrorKind::InvalidArgument, "--out is required");
    check_exists(opt.dataset, "dataset manifest");
    const auto res = preprocess_dataset(io::ingest_dataset(opt.dataset), opt.config);
    const auto manifest = write_dataset(res.kept, opt.out);
    Json summary = {{"schema", report::kSchema},
                    {"kind", "preprocess"},
                    {"config", report::to_json(opt.config)},
                    {"kept", res.kept.size()},
                    {"rejected", rejected_json(res.rejected)}};
    write_json(opt.out / "preprocess_report.json", summary);
    return manifest;
}

// ---------------------------------------------------------------------------

struct ExtractOptions {
    fs::path dataset;
    fs::path out; // matrix CSV
    std::uint64_t seed = 0;
    PreprocessConfig preprocess;
    unsigned threads = 0; // 0: hardware concurrency
    std::vector<std::string> features; // empty: whole default catalog
};

inline FeatureMatrix cmd_extract(const ExtractOptions& opt) {
    opt.preprocess.validate();
    require(!opt.out.empty(), ErrorKind::InvalidArgument, "--out is required");
    check_exists(opt.dataset, "dataset manifest");
    const Catalog full = catalog_default();
    const Catalog catalog = opt.features.empty() ? full : full.subset(opt.features);

    const auto res = preprocess_dataset(io::ingest_dataset(opt.dataset), opt.preprocess);
    require(res.kept.size() > 0, ErrorKind::InvalidArgument, "every series was rejected by preprocessing");
    const unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    const auto m = build_feature_matrix(res.kept.series, catalog, opt.seed, threads);

    io::write_matrix_csv(opt.out, m);
    Json prov = report::to_json(m.provenance());
    prov["preprocess"] = report::to_json(opt.preprocess);
    prov["rejected"] = rejected_json(res.rejected);
    write_json(provenance_path(opt.out), prov);
    return m;
}

inline FeatureMatrix load_matrix(const fs::path& path) {
    check_exists(path, "feature matrix");
    Provenance prov;
    if (const auto side = provenance_path(path); fs::exists(side)) {
        std::ifstream in(side);
        try {
            prov = report::provenance_from_json(Json::parse(in));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::ParseError, side.string() + ": " + e.what());
        }
    }
    return io::read_matrix_csv(path, std::move(prov));
}

// Matrix rows joined with their outcome rows; rows without an outcome or
// without a cord pH are left out.
struct JoinedRows {
    std::vector<std::size_t> rows;
    std::vector<Outcome> outcomes;
};

inline JoinedRows join_outcomes(const FeatureMatrix& m, const LabeledDataset& ds, bool train_only) {
    JoinedRows j;
    bool any_train = false;
    for (const auto& o : ds.outcomes) any_train = any_train || o.split == Split::Train;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const Outcome* o = ds.find_outcome(m.row_ids()[r]);
        if (!o || !o->cord_ph) continue;
        if (train_only && any_train && o->split != Split::Train) continue;
        j.rows.push_back(r);
        j.outcomes.push_back(*o);
    }
    return j;
}

// ---------------------------------------------------------------------------

struct SelectCommandOptions {
    fs::path matrix;
    fs::path dataset;
    fs::path out; // directory
    SelectionOptions selection;
    double ph_threshold = kLowPhThreshold;
};

inline ClassificationReport cmd_select(const SelectCommandOptions& opt) {
    opt.selection.validate();
    require(opt.ph_threshold > 6.5 && opt.ph_threshold < 8.0, ErrorKind::InvalidArgument, "--ph-threshold must lie in (6.5, 8.0)");
    require(!opt.out.empty(), ErrorKind::InvalidArgument, "--out is required");
    check_exists(opt.dataset, "dataset manifest");
    const auto m = load_matrix(opt.matrix);
    const auto ds = io::ingest_dataset(opt.dataset);
    const auto joined = join_outcomes(m, ds, true);
    require(!joined.rows.empty(), ErrorKind::InvalidArgument, "no matrix rows have a labelled outcome");
    const auto sub = m.select_rows(joined.rows);
    std::vector<Label> labels;
    for (const auto& o : joined.outcomes) labels.push_back(is_low_ph(o, opt.ph_threshold) ? 1 : 0);

    const auto rep = run_classification_selection(sub, labels, opt.selection);
    fs::create_directories(opt.out);
    write_json(opt.out / "select_report.json", report::to_json(rep, opt.selection, m.provenance()));
    write_text(opt.out / "select_clusters.svg", plots::selection_figure(rep));
    if (!rep.representatives.empty()) {
        std::vector<std::vector<double>> cols;
        std::vector<const FeatureScore*> scores;
        for (const auto& name : rep.representatives) {
            cols.push_back(sub.column_values(sub.col_index(name)));
            scores.push_back(&rep.score(name));
        }
        write_text(opt.out / "select_distributions.svg", plots::distribution_figure(rep.representatives, cols, labels, scores));
    }
    return rep;
}

// ---------------------------------------------------------------------------

struct RegressCommandOptions {
    fs::path matrix;
    fs::path dataset;
    fs::path out;
    std::size_t n_perm = 1000;
    std::uint64_t seed = 0;
};

inline RegressionReport cmd_regress(const RegressCommandOptions& opt) {
    require(opt.n_perm >= 1, ErrorKind::InvalidArgument, "--n-perm must be >= 1");
    require(!opt.out.empty(), ErrorKind::InvalidArgument, "--out is required");
    check_exists(opt.dataset, "dataset manifest");
    const auto m = load_matrix(opt.matrix);
    const auto ds = io::ingest_dataset(opt.dataset);
    const auto joined = join_outcomes(m, ds, false);
    require(joined.rows.size() >= 3, ErrorKind::InvalidArgument, "regression needs at least three rows with a cord pH");
    std::vector<double> target;
    for (const auto& o : joined.outcomes) target.push_back(*o.cord_ph);
    const auto rep = rank_by_regression(m.select_rows(joined.rows), target, opt.n_perm, opt.seed);
    fs::create_directories(opt.out);
    write_json(opt.out / "regress_report.json", report::to_json(rep, opt.n_perm, opt.seed, "cord_ph", joined.rows.size(), m.provenance()));
    write_text(opt.out / "regress.svg", plots::regression_figure(rep));
    return rep;
}

// ---------------------------------------------------------------------------

struct EverestCommandOptions {
    fs::path matrix;
    fs::path dataset;
    fs::path out;
    std::string feature;
    std::size_t groups = 10;
    double ph_threshold = kEverestLowPhThreshold;
};

inline EverestResult cmd_everest(const EverestCommandOptions& opt) {
    require(opt.groups >= 2, ErrorKind::InvalidArgument, "--groups must be >= 2");
    require(!opt.feature.empty(), ErrorKind::InvalidArgument, "--feature is required");
    require(opt.ph_threshold > 6.5 && opt.ph_threshold < 8.0, ErrorKind::InvalidArgument, "--ph-threshold must lie in (6.5, 8.0)");
    require(!opt.out.empty(), ErrorKind::InvalidArgument, "--out is required");
    check_exists(opt.dataset, "dataset manifest");
    const auto m = load_matrix(opt.matrix);
    const auto ds = io::ingest_dataset(opt.dataset);
    const auto joined = join_outcomes(m, ds, false);
    const auto values = m.select_rows(joined.rows).column_values(m.col_index(opt.feature));
    const auto res = everest(values, joined.outcomes, default_outcome_definitions(opt.ph_threshold), opt.groups, opt.feature);

    std::vector<Label> low;
    for (const auto& o : joined.outcomes) low.push_back(is_low_ph(o, opt.ph_threshold) ? 1 : 0);
    fs::create_directories(opt.out);
    write_json(opt.out / "everest_report.json", report::to_json(res, opt.ph_threshold, m.provenance()));
    write_text(opt.out / "everest.svg", plots::everest_figure(res, values, low));
    return res;
}

/// Exit code for a failure: 2 for invalid input or options, 1 otherwise.
inline int exit_code_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::NumericalFailure:
    case ErrorKind::IoError: return 1;
    default: return 2;
    }
}

} // namespace hcts::cli
