#pragma once

#include "hcts/catalog.hpp"
#include "hcts/error.hpp"
#include "hcts/feature_value.hpp"
#include "hcts/time_series.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace hcts {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed for one (series, feature) cell. Depends only on its three inputs, so
/// the matrix does not depend on evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view series_id, std::string_view feature) {
    const std::uint64_t key = fnv1a(feature, fnv1a(series_id) ^ 0x5bd1e995ULL);
    return splitmix64(seed ^ splitmix64(key));
}

struct CatalogEntry {
    std::string name;
    FeatureParams params;
    friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

struct Provenance {
    std::vector<CatalogEntry> catalog;
    std::uint64_t seed = 0;
    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Series x feature table of FeatureValue.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    FeatureMatrix(std::vector<std::string> row_ids, std::vector<std::string> col_names,
                  std::vector<FeatureValue> cells, Provenance provenance = {})
        : row_ids_(std::move(row_ids)), col_names_(std::move(col_names)), cells_(std::move(cells)),
          provenance_(std::move(provenance)) {
        require(cells_.size() == row_ids_.size() * col_names_.size(), ErrorKind::InvalidArgument,
                "feature matrix is not rectangular");
        std::set<std::string, std::less<>> seen;
        for (const auto& c : col_names_)
            require(seen.insert(c).second, ErrorKind::InvalidArgument, "duplicate column '" + c + "'");
    }

    std::size_t rows() const noexcept { return row_ids_.size(); }
    std::size_t cols() const noexcept { return col_names_.size(); }
    const std::vector<std::string>& row_ids() const noexcept { return row_ids_; }
    const std::vector<std::string>& col_names() const noexcept { return col_names_; }
    const Provenance& provenance() const noexcept { return provenance_; }
    const FeatureValue& at(std::size_t r, std::size_t c) const { return cells_.at(r * cols() + c); }

    std::size_t col_index(std::string_view name) const {
        const auto it = std::find(col_names_.begin(), col_names_.end(), name);
        if (it == col_names_.end())
            throw Error(ErrorKind::UnknownFeature, "matrix has no column '" + std::string(name) + "'");
        return static_cast<std::size_t>(it - col_names_.begin());
    }

    std::optional<std::size_t> row_index(std::string_view id) const {
        const auto it = std::find(row_ids_.begin(), row_ids_.end(), id);
        if (it == row_ids_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - row_ids_.begin());
    }

    bool column_has_special(std::size_t c) const {
        for (std::size_t r = 0; r < rows(); ++r)
            if (at(r, c).is_special()) return true;
        return false;
    }

    /// Column as reals; throws SpecialValuePresent if any cell is special.
    std::vector<double> column_values(std::size_t c) const {
        std::vector<double> out(rows());
        for (std::size_t r = 0; r < rows(); ++r) {
            const auto& v = at(r, c);
            require(v.is_finite(), ErrorKind::SpecialValuePresent,
                    "column '" + col_names_[c] + "' has a special value at row '" + row_ids_[r] + "'");
            out[r] = v.value();
        }
        return out;
    }

    FeatureMatrix select_rows(const std::vector<std::size_t>& rows_keep) const {
        std::vector<std::string> ids;
        std::vector<FeatureValue> cells;
        for (std::size_t r : rows_keep) {
            ids.push_back(row_ids_.at(r));
            for (std::size_t c = 0; c < cols(); ++c) cells.push_back(at(r, c));
        }
        return FeatureMatrix(std::move(ids), col_names_, std::move(cells), provenance_);
    }

    FeatureMatrix select_cols(const std::vector<std::size_t>& cols_keep) const {
        std::vector<std::string> names;
        for (std::size_t c : cols_keep) names.push_back(col_names_.at(c));
        std::vector<FeatureValue> cells;
        for (std::size_t r = 0; r < rows(); ++r)
            for (std::size_t c : cols_keep) cells.push_back(at(r, c));
        return FeatureMatrix(row_ids_, std::move(names), std::move(cells), provenance_);
    }

    friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

private:
    std::vector<std::string> row_ids_;
    std::vector<std::string> col_names_;
    std::vector<FeatureValue> cells_;
    Provenance provenance_;
};

inline Provenance provenance_of(const Catalog& catalog, std::uint64_t seed) {
    Provenance p;
    p.seed = seed;
    for (const auto& f : catalog.features()) p.catalog.push_back({f.name, f.params});
    return p;
}

/// Evaluates every catalog feature on every series. Cells may be computed on
/// several threads; the result is identical for any thread count.
inline FeatureMatrix build_feature_matrix(const std::vector<TimeSeries>& series, const Catalog& catalog,
                                          std::uint64_t seed, unsigned threads = 1) {
    const std::size_t n_rows = series.size();
    const std::size_t n_cols = catalog.size();
    std::vector<FeatureValue> cells(n_rows * n_cols, FeatureValue::not_finite());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        try {
            for (std::size_t k = next++; k < cells.size(); k = next++) {
                const auto& s = series[k / n_cols];
                const auto& f = catalog[k % n_cols];
                cells[k] = evaluate_feature(f, s, derive_seed(seed, s.id(), f.name));
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = cells.size();
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    std::vector<std::string> ids, names;
    for (const auto& s : series) ids.push_back(s.id());
    for (const auto& f : catalog.features()) names.push_back(f.name);
    return FeatureMatrix(std::move(ids), std::move(names), std::move(cells), provenance_of(catalog, seed));
}

/// Drops every column holding at least one special value.
inline FeatureMatrix filter_special_features(const FeatureMatrix& m) {
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!m.column_has_special(c)) keep.push_back(c);
    return m.select_cols(keep);
}

} // namespace hcts
