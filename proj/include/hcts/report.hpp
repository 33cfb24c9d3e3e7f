#pragma once

#include "hcts/everest.hpp"
#include "hcts/feature_matrix.hpp"
#include "hcts/selection.hpp"
#include "hcts/time_series.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <string>
#include <vector>

// JSON serialization of pipeline results. Keys keep insertion order so that
// reports are byte-stable across runs.
namespace hcts::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "hcts.report/1";

inline Json to_json(const Provenance& p) {
    Json catalog = Json::array();
    for (const auto& e : p.catalog) {
        Json params = Json::object();
        for (const auto& [k, v] : e.params) params[k] = v;
        catalog.push_back({{"name", e.name}, {"params", params}});
    }
    return {{"seed", p.seed}, {"catalog", catalog}};
}

inline Provenance provenance_from_json(const Json& j) {
    Provenance p;
    p.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& e : j.at("catalog")) {
        CatalogEntry entry{e.at("name").get<std::string>(), {}};
        for (const auto& [k, v] : e.at("params").items()) entry.params.emplace_back(k, v.get<double>());
        p.catalog.push_back(std::move(entry));
    }
    return p;
}

inline Json to_json(const PreprocessConfig& c) {
    return {{"max_interp_gap_samples", c.max_interp_gap_samples}, {"max_missing_fraction", c.max_missing_fraction},
            {"trim_mode", std::string(to_string(c.trim_mode))}};
}

inline Json matrix_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline Json to_json(const Dendrogram& d) {
    Json merges = Json::array();
    for (const auto& m : d.merges) merges.push_back({{"a", m.a}, {"b", m.b}, {"height", m.height}, {"size", m.size}});
    return {{"leaves", d.leaves}, {"merges", merges}};
}

inline Json header(const std::string& kind, const Provenance& prov) {
    return {{"schema", kSchema}, {"kind", kind}, {"provenance", to_json(prov)}};
}

inline Json to_json(const ClassificationReport& r, const SelectionOptions& opt, const Provenance& prov) {
    Json j = header("select", prov);
    j["options"] = {{"fdr", opt.q},
                    {"clusters", opt.clusters ? Json(*opt.clusters) : Json("auto")},
                    {"n_perm", opt.n_perm},
                    {"seed", opt.seed},
                    {"null_model", std::string(to_string(opt.null_model))}};
    j["status"] = std::string(to_string(r.status));
    j["n_rows"] = r.n_rows;
    j["dropped_special"] = r.dropped;
    Json scores = Json::array();
    for (const auto& s : r.scores) {
        scores.push_back({{"feature", s.name},
                          {"misclassification_rate", s.rate},
                          {"p_value", s.p_value},
                          {"threshold", s.classifier.threshold},
                          {"positive_side", s.classifier.positive_side == Side::Above ? "above" : "below"}});
    }
    j["features"] = scores;
    j["selected"] = r.selected;
    j["abs_corr"] = matrix_json(r.abs_corr);
    j["dendrogram"] = to_json(r.dendrogram);
    j["n_clusters"] = r.n_clusters;
    Json clusters = Json::array();
    for (std::size_t k = 0; k < r.n_clusters; ++k) {
        Json members = Json::array();
        for (std::size_t i = 0; i < r.selected.size(); ++i)
            if (static_cast<std::size_t>(r.clusters[i]) == k) members.push_back(r.selected[i]);
        clusters.push_back(members);
    }
    j["clusters"] = clusters;
    j["representatives"] = r.representatives;
    return j;
}

inline Json to_json(const RegressionReport& r, std::size_t n_perm, std::uint64_t seed, const std::string& target,
                    std::size_t n_rows, const Provenance& prov) {
    Json j = header("regress", prov);
    j["options"] = {{"target", target}, {"n_perm", n_perm}, {"seed", seed}};
    j["n_rows"] = n_rows;
    j["dropped_special"] = r.dropped;
    j["constant"] = r.constant;
    Json ranking = Json::array();
    for (const auto& e : r.ranking) ranking.push_back({{"feature", e.name}, {"r", e.r}, {"abs_r", std::abs(e.r)}, {"p_value", e.p_value}});
    j["ranking"] = ranking;
    return j;
}

inline Json to_json(const EverestResult& r, double ph_threshold, const Provenance& prov) {
    Json j = header("everest", prov);
    j["options"] = {{"feature", r.feature}, {"groups", r.n_group}, {"ph_threshold", ph_threshold}};
    j["group_sizes"] = r.group_sizes;
    j["group_boundaries"] = r.group_boundaries;
    j["group_means"] = r.group_means;
    Json outcomes = Json::array();
    for (const auto& o : r.outcomes) {
        const auto ratio = top_group_risk_ratio(r, o.name);
        outcomes.push_back({{"name", o.name},
                            {"events", o.events},
                            {"overall_rate", o.overall_rate},
                            {"group_rates", o.group_rates},
                            {"top_group_risk_ratio", ratio.is_finite() ? Json(ratio.value()) : Json(nullptr)}});
    }
    j["outcomes"] = outcomes;
    return j;
}

} // namespace hcts::report
