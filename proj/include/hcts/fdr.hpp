#pragma once

#include "hcts/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace hcts {

using NamedPValue = std::pair<std::string, double>;

/// Benjamini-Hochberg step-up selection at level q. Returns the selected names
/// in ascending p order (ties by name).
inline std::vector<std::string> bh_fdr_select(std::vector<NamedPValue> pvalues, double q) {
    require(q >= 0.0 && q <= 1.0, ErrorKind::InvalidArgument, "FDR level q must lie in [0, 1]");
    for (const auto& [name, p] : pvalues)
        require(p >= 0.0 && p <= 1.0, ErrorKind::InvalidArgument, "p-value of '" + name + "' outside [0, 1]");
    std::sort(pvalues.begin(), pvalues.end(), [](const NamedPValue& a, const NamedPValue& b) {
        return a.second < b.second || (a.second == b.second && a.first < b.first);
    });
    const double m = static_cast<double>(pvalues.size());
    std::size_t keep = 0;
    for (std::size_t k = 1; k <= pvalues.size(); ++k)
        if (pvalues[k - 1].second <= static_cast<double>(k) * q / m) keep = k;
    std::vector<std::string> out;
    for (std::size_t k = 0; k < keep; ++k) out.push_back(pvalues[k].first);
    return out;
}

} // namespace hcts
