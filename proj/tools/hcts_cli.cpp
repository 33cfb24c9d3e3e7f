#include "hcts/commands.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <iostream>
#include <string>

namespace {

std::optional<std::size_t> parse_clusters(const std::string& s) {
    if (s == "auto") return std::nullopt;
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
    hcts::require(ec == std::errc() && ptr == s.data() + s.size() && k >= 1, hcts::ErrorKind::InvalidArgument,
                  "--clusters must be a positive integer or 'auto'");
    return k;
}

hcts::NullModel parse_null(const std::string& s) {
    if (s == "pooled") return hcts::NullModel::Pooled;
    hcts::require(s == "per-feature", hcts::ErrorKind::InvalidArgument, "--null must be 'pooled' or 'per-feature'");
    return hcts::NullModel::PerFeature;
}

hcts::TrimMode parse_trim(const std::string& s) {
    if (s == "splice") return hcts::TrimMode::Splice;
    hcts::require(s == "edge", hcts::ErrorKind::InvalidArgument, "--trim must be 'splice' or 'edge'");
    return hcts::TrimMode::EdgeOnly;
}

void add_preprocess_flags(CLI::App* app, hcts::PreprocessConfig& cfg) {
    app->add_option("--max-gap", cfg.max_interp_gap_samples, "longest gap (samples) filled by interpolation")
        ->capture_default_str();
    app->add_option("--max-missing-frac", cfg.max_missing_fraction, "reject series with more missing samples")
        ->capture_default_str();
    app->add_option_function<std::string>("--trim", [&cfg](const std::string& s) { cfg.trim_mode = parse_trim(s); },
                                          "interior gaps left after interpolation: splice, or edge (reject)")
        ->check(CLI::IsMember({"splice", "edge"}))
        ->default_str("splice");
}

} // namespace

int main(int argc, char** argv) {
    using namespace hcts::cli;
    CLI::App app{"hcts: comparative time-series feature extraction and selection for FHR recordings"};
    app.require_subcommand(1);

    SynthOptions synth;
    auto* s = app.add_subcommand("synth", "generate a seeded synthetic dataset");
    s->add_option("--out", synth.out, "output directory")->required();
    s->add_option("--seed", synth.config.seed)->capture_default_str();
    s->add_option("--n-series", synth.config.n_series)->capture_default_str();
    s->add_option("--length", synth.config.length)->capture_default_str();
    s->add_option("--affected-frac", synth.config.affected_fraction)->capture_default_str();
    s->add_option("--spike-rate", synth.config.spike_rate)->capture_default_str();
    s->add_option("--spike-magnitude", synth.config.spike_magnitude)->capture_default_str();
    s->add_option("--missing-gap-rate", synth.config.missing_gap_rate)->capture_default_str();
    s->add_option("--test-frac", synth.config.test_fraction)->capture_default_str();

    PreprocessOptions pre;
    auto* p = app.add_subcommand("preprocess", "interpolate short gaps, trim and filter a dataset");
    p->add_option("--dataset", pre.dataset, "manifest CSV")->required();
    p->add_option("--out", pre.out, "output directory")->required();
    add_preprocess_flags(p, pre.config);

    ExtractOptions ext;
    auto* e = app.add_subcommand("extract", "compute the feature matrix");
    e->add_option("--dataset", ext.dataset, "manifest CSV")->required();
    e->add_option("--out", ext.out, "matrix CSV")->required();
    e->add_option("--seed", ext.seed)->capture_default_str();
    e->add_option("--threads", ext.threads, "worker threads (0: all cores)")->capture_default_str();
    e->add_option("--feature", ext.features, "restrict to these catalog features");
    add_preprocess_flags(e, ext.preprocess);

    SelectCommandOptions sel;
    std::string clusters = "auto";
    std::string null_model = "pooled";
    auto* c = app.add_subcommand("select", "classification feature selection");
    c->add_option("--matrix", sel.matrix, "matrix CSV")->required();
    c->add_option("--dataset", sel.dataset, "manifest CSV")->required();
    c->add_option("--out", sel.out, "report directory")->required();
    c->add_option("--fdr", sel.selection.q, "FDR level")->capture_default_str();
    c->add_option("--clusters", clusters, "number of clusters or 'auto'")->capture_default_str();
    c->add_option("--n-perm", sel.selection.n_perm)->capture_default_str();
    c->add_option("--seed", sel.selection.seed)->capture_default_str();
    c->add_option("--null", null_model, "'pooled' or 'per-feature' permutation null")->capture_default_str();
    c->add_option("--ph-threshold", sel.ph_threshold, "low pH when cord pH <= threshold")->capture_default_str();

    RegressCommandOptions reg;
    auto* r = app.add_subcommand("regress", "rank features by correlation with cord pH");
    r->add_option("--matrix", reg.matrix, "matrix CSV")->required();
    r->add_option("--dataset", reg.dataset, "manifest CSV")->required();
    r->add_option("--out", reg.out, "report directory")->required();
    r->add_option("--n-perm", reg.n_perm)->capture_default_str();
    r->add_option("--seed", reg.seed)->capture_default_str();

    EverestCommandOptions eve;
    auto* v = app.add_subcommand("everest", "outcome rates across quantile groups of one feature");
    v->add_option("--matrix", eve.matrix, "matrix CSV")->required();
    v->add_option("--dataset", eve.dataset, "manifest CSV")->required();
    v->add_option("--out", eve.out, "report directory")->required();
    v->add_option("--feature", eve.feature)->required();
    v->add_option("--groups", eve.groups)->capture_default_str();
    v->add_option("--ph-threshold", eve.ph_threshold)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int rc = app.exit(err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*s) {
            std::cout << cmd_synth(synth).string() << "\n";
        } else if (*p) {
            std::cout << cmd_preprocess(pre).string() << "\n";
        } else if (*e) {
            const auto m = cmd_extract(ext);
            std::cout << m.rows() << " series x " << m.cols() << " features -> " << ext.out.string() << "\n";
        } else if (*c) {
            sel.selection.clusters = parse_clusters(clusters);
            sel.selection.null_model = parse_null(null_model);
            const auto rep = cmd_select(sel);
            std::cout << hcts::to_string(rep.status) << ": " << rep.selected.size() << " significant, "
                      << rep.representatives.size() << " representatives\n";
            for (const auto& name : rep.representatives) {
                const auto& sc = rep.score(name);
                std::printf("  %-32s rate=%.4f p=%.3g\n", name.c_str(), sc.rate, sc.p_value);
            }
        } else if (*r) {
            const auto rep = cmd_regress(reg);
            for (std::size_t i = 0; i < rep.ranking.size() && i < 10; ++i)
                std::printf("  %-32s R=%+.4f p=%.3g\n", rep.ranking[i].name.c_str(), rep.ranking[i].r,
                            rep.ranking[i].p_value);
        } else if (*v) {
            const auto res = cmd_everest(eve);
            for (const auto& o : res.outcomes) std::printf("  %-26s overall=%.4f\n", o.name.c_str(), o.overall_rate);
        }
    } catch (const hcts::Error& err) {
        std::cerr << "error [" << hcts::to_string(err.kind()) << "]: " << err.what() << "\n";
        return exit_code_for(err);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
