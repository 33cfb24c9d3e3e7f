#pragma once

#include "hcts/dataset.hpp"
#include "hcts/error.hpp"
#include "hcts/feature_value.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

// Event-rate estimates: order the cohort by a feature, split it into equally
// populated groups and report the share of events in each group.
namespace hcts {

struct OutcomeDefinition {
    std::string name;
    std::function<bool(const Outcome&)> predicate;
};

/// Low pH, compromise, and their conjunction.
inline std::vector<OutcomeDefinition> default_outcome_definitions(double ph_threshold = kEverestLowPhThreshold) {
    return {
        {"low_ph", [ph_threshold](const Outcome& o) { return is_low_ph(o, ph_threshold); }},
        {"compromised", [](const Outcome& o) { return o.compromise; }},
        {"low_ph_and_compromised",
         [ph_threshold](const Outcome& o) { return is_low_ph(o, ph_threshold) && o.compromise; }},
    };
}

struct OutcomeRates {
    std::string name;
    std::vector<double> group_rates;
    std::size_t events = 0;
    double overall_rate = 0.0;
};

struct EverestResult {
    std::string feature;
    std::size_t n_group = 0;
    std::vector<double> group_boundaries; // n_group - 1 cut values
    std::vector<std::size_t> group_sizes;
    std::vector<double> group_means;      // mean feature value per group
    std::vector<OutcomeRates> outcomes;

    const OutcomeRates& outcome(const std::string& name) const {
        for (const auto& o : outcomes)
            if (o.name == name) return o;
        throw Error(ErrorKind::InvalidArgument, "no outcome named '" + name + "'");
    }
};

/// Sizes of n split into g contiguous groups, larger groups first.
inline std::vector<std::size_t> equal_group_sizes(std::size_t n, std::size_t g) {
    std::vector<std::size_t> sizes(g, n / g);
    for (std::size_t i = 0; i < n % g; ++i) ++sizes[i];
    return sizes;
}

/// Patients are ordered by feature value, ties broken by patient id.
inline EverestResult everest(std::span<const double> values, std::span<const Outcome> outcomes,
                             const std::vector<OutcomeDefinition>& defs, std::size_t n_group,
                             std::string feature = {}) {
    require(values.size() == outcomes.size(), ErrorKind::InvalidArgument, "values and outcomes differ in length");
    require(n_group >= 2, ErrorKind::InvalidArgument, "n_group must be >= 2");
    require(values.size() >= n_group, ErrorKind::TooFewPatients,
            std::to_string(values.size()) + " patients cannot fill " + std::to_string(n_group) + " groups");
    for (std::size_t i = 0; i < values.size(); ++i)
        require(std::isfinite(values[i]), ErrorKind::SpecialValuePresent,
                "feature value of '" + outcomes[i].id + "' is not finite");

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b] || (values[a] == values[b] && outcomes[a].id < outcomes[b].id);
    });

    EverestResult res;
    res.feature = std::move(feature);
    res.n_group = n_group;
    res.group_sizes = equal_group_sizes(values.size(), n_group);

    std::vector<std::size_t> first(n_group);
    for (std::size_t g = 0, pos = 0; g < n_group; pos += res.group_sizes[g], ++g) first[g] = pos;
    for (std::size_t g = 0; g < n_group; ++g) {
        double s = 0.0;
        for (std::size_t k = first[g]; k < first[g] + res.group_sizes[g]; ++k) s += values[order[k]];
        res.group_means.push_back(s / static_cast<double>(res.group_sizes[g]));
        if (g + 1 < n_group) {
            const double hi = values[order[first[g] + res.group_sizes[g] - 1]];
            const double lo = values[order[first[g + 1]]];
            res.group_boundaries.push_back(0.5 * (hi + lo));
        }
    }
    for (const auto& def : defs) {
        OutcomeRates o{def.name, {}, 0, 0.0};
        for (std::size_t g = 0; g < n_group; ++g) {
            std::size_t events = 0;
            for (std::size_t k = first[g]; k < first[g] + res.group_sizes[g]; ++k)
                if (def.predicate(outcomes[order[k]])) ++events;
            o.events += events;
            o.group_rates.push_back(static_cast<double>(events) / static_cast<double>(res.group_sizes[g]));
        }
        o.overall_rate = static_cast<double>(o.events) / static_cast<double>(values.size());
        res.outcomes.push_back(std::move(o));
    }
    return res;
}

/// Event rate of the top group relative to the overall rate.
inline FeatureValue top_group_risk_ratio(const EverestResult& r, const std::string& outcome) {
    const auto& o = r.outcome(outcome);
    if (o.overall_rate == 0.0) return FeatureValue::not_finite();
    return FeatureValue::of(o.group_rates.back() / o.overall_rate);
}

} // namespace hcts
