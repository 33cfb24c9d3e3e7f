#pragma once

#include "hcts/error.hpp"
#include "hcts/time_series.hpp"

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hcts {

enum class Split { Train, Test, Unassigned };

inline std::string_view to_string(Split s) {
    switch (s) {
    case Split::Train: return "train";
    case Split::Test: return "test";
    case Split::Unassigned: return "unassigned";
    }
    return "unassigned";
}

inline Split parse_split(std::string_view s) {
    if (s == "train") return Split::Train;
    if (s == "test") return Split::Test;
    if (s == "unassigned" || s.empty()) return Split::Unassigned;
    throw Error(ErrorKind::ParseError, "split must be train, test or unassigned, got '" + std::string(s) + "'");
}

/// Clinical outcome attached to one recording.
struct Outcome {
    std::string id;
    std::optional<double> cord_ph;
    bool compromise = false;
    Split split = Split::Unassigned;
};

inline constexpr double kLowPhThreshold = 7.1;
inline constexpr double kEverestLowPhThreshold = 7.05;

/// Class rule: low pH (label 1) when cord pH <= threshold.
inline bool is_low_ph(const Outcome& o, double threshold = kLowPhThreshold) {
    return o.cord_ph.has_value() && *o.cord_ph <= threshold;
}

struct LabeledDataset {
    std::vector<TimeSeries> series;
    std::vector<Outcome> outcomes; // outcomes[i] belongs to series[i]

    std::size_t size() const noexcept { return series.size(); }

    void validate() const {
        require(series.size() == outcomes.size(), ErrorKind::InvalidArgument,
                "dataset has a different number of series and outcome rows");
        std::set<std::string, std::less<>> ids;
        for (std::size_t i = 0; i < series.size(); ++i) {
            const auto& id = series[i].id();
            require(outcomes[i].id == id, ErrorKind::InvalidArgument,
                    "outcome row " + std::to_string(i) + " does not match series '" + id + "'");
            require(ids.insert(id).second, ErrorKind::DuplicateId, "duplicate series id '" + id + "'");
            if (const auto& ph = outcomes[i].cord_ph) {
                require(std::isfinite(*ph) && *ph > 6.5 && *ph < 8.0, ErrorKind::InvalidArgument,
                        "cord pH of '" + id + "' outside (6.5, 8.0)");
            }
        }
    }

    const Outcome* find_outcome(std::string_view id) const {
        for (const auto& o : outcomes)
            if (o.id == id) return &o;
        return nullptr;
    }
};

} // namespace hcts
