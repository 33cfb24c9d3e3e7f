#pragma once

#include <cmath>
#include <optional>
#include <string_view>

namespace hcts {

/// Tags for feature outputs that are not usable numbers.
enum class Special {
    NotFinite,  // the computation produced an infinity or NaN
    Degenerate, // the input makes the method inapplicable (e.g. zero spread)
};

inline std::string_view to_string(Special s) {
    return s == Special::NotFinite ? "NotFinite" : "Degenerate";
}

/// Result of evaluating a feature: a finite real, or a tagged special value.
class FeatureValue {
public:
    /// Non-finite inputs become Special::NotFinite.
    static FeatureValue of(double v) noexcept {
        return std::isfinite(v) ? FeatureValue(v) : FeatureValue(Special::NotFinite);
    }
    static FeatureValue not_finite() noexcept { return FeatureValue(Special::NotFinite); }
    static FeatureValue degenerate() noexcept { return FeatureValue(Special::Degenerate); }
    static FeatureValue special(Special s) noexcept { return FeatureValue(s); }

    bool is_finite() const noexcept { return !special_.has_value(); }
    bool is_special() const noexcept { return special_.has_value(); }
    double value() const noexcept { return value_; }
    std::optional<Special> special_tag() const noexcept { return special_; }

    friend bool operator==(const FeatureValue& a, const FeatureValue& b) noexcept {
        if (a.special_ != b.special_) return false;
        return a.is_special() || a.value_ == b.value_;
    }

private:
    explicit FeatureValue(double v) noexcept : value_(v) {}
    explicit FeatureValue(Special s) noexcept : value_(std::nan("")), special_(s) {}

    double value_;
    std::optional<Special> special_;
};

} // namespace hcts
