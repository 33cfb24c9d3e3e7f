#pragma once

#include "hcts/error.hpp"
#include "hcts/feature_value.hpp"
#include "hcts/features.hpp"
#include "hcts/time_series.hpp"

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hcts {

using FeatureParams = std::vector<std::pair<std::string, double>>;
using FeatureFn = std::function<FeatureValue(const TimeSeries&, std::uint64_t seed)>;

/// A named scalar map from a series to a FeatureValue. The name and params,
/// together with the seed handed to `evaluate`, fully determine the output.
struct FeatureDescriptor {
    std::string name;
    FeatureParams params;
    FeatureFn evaluate;
};

/// Evaluates a descriptor and folds input-shape errors into special values, so
/// that "method not applicable to this series" is data rather than a failure.
inline FeatureValue evaluate_feature(const FeatureDescriptor& d, const TimeSeries& series,
                                     std::uint64_t seed) {
    try {
        return d.evaluate(series, seed);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidArgument) throw;
        return e.is_degenerate() ? FeatureValue::degenerate() : FeatureValue::not_finite();
    }
}

class Catalog {
public:
    Catalog() = default;
    explicit Catalog(std::vector<FeatureDescriptor> features) {
        for (auto& f : features) add(std::move(f));
    }

    void add(FeatureDescriptor f) {
        require(names_.insert(f.name).second, ErrorKind::InvalidArgument,
                "duplicate feature name '" + f.name + "'");
        features_.push_back(std::move(f));
    }

    const std::vector<FeatureDescriptor>& features() const noexcept { return features_; }
    std::size_t size() const noexcept { return features_.size(); }
    const FeatureDescriptor& operator[](std::size_t i) const { return features_.at(i); }

    const FeatureDescriptor& find(std::string_view name) const {
        for (const auto& f : features_)
            if (f.name == name) return f;
        throw Error(ErrorKind::UnknownFeature, "no feature named '" + std::string(name) + "'");
    }

    /// Sub-catalog restricted to the given names, in the given order.
    Catalog subset(const std::vector<std::string>& names) const {
        Catalog out;
        for (const auto& n : names) out.add(find(n));
        return out;
    }

private:
    std::vector<FeatureDescriptor> features_;
    std::set<std::string, std::less<>> names_;
};

namespace names {
inline constexpr const char* kTrevMiNum = "CO_trev_mi_num";
inline constexpr const char* kOutlierTest2Std = "DN_OutlierTest2_std";
inline constexpr const char* kSpreadMeanApEn = "SY_SpreadRandomLocal_200_meanapen1_02";
inline constexpr const char* kDynTrans = "ST_dyntrans40_1_mineigfexp_adjr2";
inline constexpr const char* kSpreadStdSampEn = "SY_SpreadRandomLocal_200_stdsampen1_02";
inline constexpr const char* kCoeffVar2 = "coeff_var_2";
inline constexpr const char* kMeanAbsDevMedian = "median_absolute_deviation";
inline constexpr const char* kSimpleFitExp = "DN_SimpleFit_exp1_rmse_h30";
inline constexpr const char* kEmbed2AreaRat = "CO_Embed2_tau_arearat";
} // namespace names

/// The nine selected features followed by simple helper features.
inline Catalog catalog_default() {
    const EntropyParams ent{1, 0.2};
    const LocalWindowParams local{200, 100, 0};
    auto spread = [ent, local](LocalStat stat) {
        return [ent, local, stat](const TimeSeries& s, std::uint64_t seed) {
            LocalWindowParams w = local;
            w.seed = seed;
            return f_spread_random_local(s, w, ent, stat);
        };
    };
    const FeatureParams spread_params{{"window_len", 200}, {"n_windows", 100}, {"m", 1}, {"r_frac", 0.2}};

    std::vector<FeatureDescriptor> f;
    f.push_back({names::kTrevMiNum, {{"max_lag", double(kTrevMaxLag)}, {"n_bins_ami", double(kDefaultAmiBins)}},
                 [](const TimeSeries& s, std::uint64_t) { return f_trev_mi_num(s); }});
    f.push_back({names::kOutlierTest2Std, {{"trim_percent", 2}},
                 [](const TimeSeries& s, std::uint64_t) { return f_outliertest2_std(s); }});
    f.push_back({names::kSpreadMeanApEn, spread_params, spread(LocalStat::MeanApEn)});
    f.push_back({names::kDynTrans, {{"max_alphabet", 40}},
                 [](const TimeSeries& s, std::uint64_t) { return f_dyntrans_mineig_fexp(s, 40); }});
    f.push_back({names::kSpreadStdSampEn, spread_params, spread(LocalStat::StdSampEn)});
    f.push_back({names::kCoeffVar2, {}, [](const TimeSeries& s, std::uint64_t) { return f_coeff_var_2(s); }});
    f.push_back({names::kMeanAbsDevMedian, {},
                 [](const TimeSeries& s, std::uint64_t) { return f_mean_abs_dev_median(s); }});
    f.push_back({names::kSimpleFitExp, {{"n_bins_hist", 30}},
                 [](const TimeSeries& s, std::uint64_t) { return f_simplefit_exp1_rmse(s, 30); }});
    f.push_back({names::kEmbed2AreaRat, {},
                 [](const TimeSeries& s, std::uint64_t) { return f_embed2_arearat(s); }});

    f.push_back({"DN_Mean", {}, [](const TimeSeries& s, std::uint64_t) { return f_mean(s); }});
    f.push_back({"DN_Std", {}, [](const TimeSeries& s, std::uint64_t) { return f_std(s); }});
    for (std::size_t lag : {1, 2, 3}) {
        f.push_back({"AC_" + std::to_string(lag), {{"lag", double(lag)}},
                     [lag](const TimeSeries& s, std::uint64_t) { return f_autocorr(s, lag); }});
    }
    f.push_back({"CO_FirstZero_ac", {},
                 [](const TimeSeries& s, std::uint64_t) {
                     const auto x = s.require_complete();
                     return FeatureValue::of(double(first_zero_autocorr(x, std::max<std::size_t>(1, x.size() / 4))));
                 }});
    f.push_back({"CO_FirstMin_ami10", {{"max_lag", double(kTrevMaxLag)}, {"n_bins_ami", 10}},
                 [](const TimeSeries& s, std::uint64_t) {
                     const auto x = s.require_complete();
                     require(x.size() >= 50, ErrorKind::SeriesTooShort, "CO_FirstMin_ami10 needs 50 samples");
                     return FeatureValue::of(double(first_min_auto_mutual_info(x, kTrevMaxLag, 10)));
                 }});
    return Catalog(std::move(f));
}

} // namespace hcts
