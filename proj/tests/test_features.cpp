#include "hcts/features.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

using namespace hcts;
using Catch::Approx;

namespace {

TimeSeries ts(std::vector<double> v) { return TimeSeries::complete("t", std::move(v)); }

std::vector<double> alternating12(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = i % 2 ? 2.0 : 1.0;
    return x;
}

std::vector<double> ramp(std::size_t n) {
    std::vector<double> x(n);
    std::iota(x.begin(), x.end(), 1.0);
    return x;
}

bool is_degenerate(const FeatureValue& v) { return v.special_tag() == Special::Degenerate; }
bool is_not_finite(const FeatureValue& v) { return v.special_tag() == Special::NotFinite; }

} // namespace

TEST_CASE("FeatureValue") {
    REQUIRE(FeatureValue::of(1.5).is_finite());
    REQUIRE(FeatureValue::of(1.5).value() == 1.5);
    REQUIRE(is_not_finite(FeatureValue::of(std::numeric_limits<double>::infinity())));
    REQUIRE(is_not_finite(FeatureValue::of(std::nan(""))));
    REQUIRE(FeatureValue::degenerate().is_special());
    REQUIRE_FALSE(FeatureValue::degenerate() == FeatureValue::not_finite());
}

TEST_CASE("apen and sampen against brute-force counting") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const auto w = oracle::ar1_series(120, rng(), 0.6);
        for (std::size_t m : {1u, 2u}) {
            const EntropyParams p{m, 0.2};
            REQUIRE(std::fabs(apen(w, p).value() - oracle::apen(w, m, 0.2)) < 1e-12);
            const auto s = sampen(w, p);
            const double o = oracle::sampen(w, m, 0.2);
            if (std::isinf(o)) {
                REQUIRE(is_not_finite(s));
            } else {
                REQUIRE(s.value() == o);
            }
        }
    }
}

TEST_CASE("entropy examples") {
    const std::vector<double> flat(50, 3.0);
    REQUIRE(is_degenerate(apen(flat)));
    REQUIRE(is_degenerate(sampen(flat)));
    REQUIRE(apen(alternating12(500)).value() < 0.05);
    REQUIRE(std::fabs(sampen(alternating12(500)).value()) < 1e-12);
    REQUIRE_THROWS_AS(apen(std::vector<double>{1.0, 2.0}), Error);
    REQUIRE_THROWS_AS(apen(oracle::normal_series(10, 1), EntropyParams{1, 0.0}), Error);

    // Tolerance too tight for any length-2 match.
    const auto noise = oracle::normal_series(60, 8);
    const auto counts = oracle::sampen_counts(noise, 1, 1e-9);
    REQUIRE(counts.a == 0);
    REQUIRE(is_not_finite(sampen(noise, EntropyParams{1, 1e-9})));
}

TEST_CASE("trev") {
    REQUIRE(trev_num(std::vector<double>{1, 2, 4}, 1) == 4.5);
    REQUIRE(trev_num(ramp(100), 1) == 1.0);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = oracle::ar1_series(300, rng(), 0.5);
        for (auto& v : x) v = v * v * v;
        auto rev = x;
        std::reverse(rev.begin(), rev.end());
        for (std::size_t tau : {1u, 4u, 13u}) REQUIRE(std::fabs(trev_num(rev, tau) + trev_num(x, tau)) < 1e-12);
    }

    REQUIRE(is_degenerate(f_trev_mi_num(ts(std::vector<double>(100, 7.0)))));
    REQUIRE_THROWS_AS(f_trev_mi_num(ts(ramp(20))), Error);

    // The feature is the numerator at the first AMI minimum.
    const auto y = oracle::ar1_series(1000, 6, 0.8);
    const std::size_t tau = first_min_auto_mutual_info(y, 40);
    REQUIRE(f_trev_mi_num(ts(y)).value() == trev_num(y, tau));
}

TEST_CASE("f_outliertest2_std") {
    REQUIRE(is_degenerate(f_outliertest2_std(ts(std::vector<double>(100, 1.0)))));
    REQUIRE_THROWS_AS(f_outliertest2_std(ts(ramp(99))), Error);

    SECTION("uniform grid") {
        std::vector<double> grid = ramp(100);
        std::vector<double> inner(grid.begin() + 2, grid.end() - 2);
        REQUIRE(inner.front() == 3.0);
        REQUIRE(inner.back() == 98.0);
        // std of 1..100 is sqrt(100*101/12); std of 3..98 is sqrt(96*97/12).
        const double expected = std::sqrt(96.0 * 97.0 / 12.0) / std::sqrt(100.0 * 101.0 / 12.0);
        REQUIRE(f_outliertest2_std(ts(grid)).value() == Approx(expected).epsilon(1e-12));
        REQUIRE(oracle::sample_std(inner) / oracle::sample_std(grid) == Approx(expected).epsilon(1e-12));
    }
    SECTION("a single extreme outlier dominates") {
        auto x = oracle::normal_series(100, 12);
        x[37] = 1000.0;
        REQUIRE(f_outliertest2_std(ts(x)).value() < 0.2);
    }
    SECTION("ceil trim count") {
        // N = 101 trims three per tail.
        auto x = ramp(101);
        std::vector<double> inner(x.begin() + 3, x.end() - 3);
        REQUIRE(f_outliertest2_std(ts(x)).value() == Approx(oracle::sample_std(inner) / oracle::sample_std(x)).epsilon(1e-12));
    }
}

TEST_CASE("f_coeff_var_2") {
    REQUIRE(f_coeff_var_2(ts({1, 1, 1})).value() == 0.0);
    REQUIRE(std::fabs(f_coeff_var_2(ts({1, 3})).value() - 0.5) < 1e-12);
    REQUIRE(is_not_finite(f_coeff_var_2(ts({-1, 1}))));
}

TEST_CASE("f_mean_abs_dev_median") {
    REQUIRE(f_mean_abs_dev_median(ts({4, 4, 4})).value() == 0.0);
    REQUIRE(std::fabs(f_mean_abs_dev_median(ts({1, 2, 3})).value() - 2.0 / 3.0) < 1e-12);
    REQUIRE(f_mean_abs_dev_median(ts({0, 0, 3})).value() == 1.0);
}

TEST_CASE("translation and scaling laws of distribution features") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> shift(-50.0, 50.0), scale(0.1, 10.0);
    for (int trial = 0; trial < 30; ++trial) {
        const auto x = oracle::normal_series(400, rng(), 140.0, 8.0);
        const double c = shift(rng), a = scale(rng);
        std::vector<double> moved(x), scaled(x);
        for (auto& v : moved) v += c;
        for (auto& v : scaled) v *= a;
        const double mad = f_mean_abs_dev_median(ts(x)).value();
        REQUIRE(std::fabs(f_mean_abs_dev_median(ts(moved)).value() - mad) < 1e-12);
        REQUIRE(std::fabs(f_mean_abs_dev_median(ts(scaled)).value() - a * mad) < 1e-12 * std::max(1.0, a * mad));
        REQUIRE(std::fabs(f_outliertest2_std(ts(moved)).value() - f_outliertest2_std(ts(x)).value()) < 1e-12);
        REQUIRE(std::fabs(f_coeff_var_2(ts(scaled)).value() - f_coeff_var_2(ts(x)).value()) < 1e-12);
    }
}

TEST_CASE("f_simplefit_exp1_rmse") {
    REQUIRE(is_degenerate(f_simplefit_exp1_rmse(ts(std::vector<double>(100, 2.0)))));
    REQUIRE_THROWS_AS(f_simplefit_exp1_rmse(ts(ramp(10))), Error);

    std::mt19937_64 rng(17);
    std::exponential_distribution<double> ex(1.0);
    std::uniform_real_distribution<double> un(0.0, 1.0);
    std::vector<double> e(10000), u(10000);
    for (auto& v : e) v = ex(rng);
    for (auto& v : u) v = un(rng);
    REQUIRE(f_simplefit_exp1_rmse(ts(e)).value() < f_simplefit_exp1_rmse(ts(u)).value());

    // Dyadic samples and shifts keep the translation exact.
    std::vector<double> d(2000), dm(2000);
    std::uniform_int_distribution<int> k(0, 4096);
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = k(rng) / 64.0;
        dm[i] = d[i] + 96.0;
    }
    REQUIRE(std::fabs(f_simplefit_exp1_rmse(ts(d)).value() - f_simplefit_exp1_rmse(ts(dm)).value()) < 1e-12);
}

TEST_CASE("exponential fit") {
    std::vector<double> xs, ys;
    for (int i = 0; i < 20; ++i) {
        xs.push_back(i * 0.5);
        ys.push_back(2.0 * std::exp(-0.5 * i * 0.5));
    }
    const auto f = fit_exp_decay(xs, ys);
    REQUIRE(f.a == Approx(2.0).margin(1e-6));
    REQUIRE(f.b == Approx(0.5).margin(1e-6));
    REQUIRE(f.adj_r2 == Approx(1.0).margin(1e-6));

    std::mt19937_64 rng(5);
    std::normal_distribution<double> noise(0.0, 0.05);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> yn(ys);
        for (auto& v : yn) v += noise(rng);
        const auto fit = fit_exp_decay(xs, yn);
        const auto grid = oracle::grid_exp_fit(xs, yn, 0.5, 4.0, 0.0, 2.0);
        REQUIRE(fit.sse <= grid.sse + 1e-9);
    }

    REQUIRE_THROWS_AS(fit_exp_decay(xs, std::vector<double>(xs.size(), 1.0)), Error);
    try {
        fit_exp_decay(xs, std::vector<double>(xs.size(), 1.0));
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::FitDegenerate);
    }
}

TEST_CASE("symbolize_equiprobable") {
    REQUIRE(symbolize_equiprobable(std::vector<double>{3, 1, 2, 4}, 2) == std::vector<Symbol>{1, 0, 0, 1});
    REQUIRE(symbolize_equiprobable(std::vector<double>{1, 2, 3, 4}, 4) == std::vector<Symbol>{0, 1, 2, 3});
    try {
        symbolize_equiprobable(std::vector<double>(10, 1.0), 2);
        FAIL("expected DegenerateSeries");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::DegenerateSeries);
    }

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = oracle::normal_series(50 + trial * 7, rng());
        for (std::size_t a : {2u, 3u, 7u, 20u, 40u}) {
            const auto s = symbolize_equiprobable(x, a);
            std::vector<std::size_t> counts(a, 0);
            for (Symbol v : s) ++counts[static_cast<std::size_t>(v)];
            REQUIRE(*std::min_element(counts.begin(), counts.end()) >= 1);
            REQUIRE(*std::max_element(counts.begin(), counts.end()) - *std::min_element(counts.begin(), counts.end()) <= 1);
            // Contiguous in value.
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t j = 0; j < x.size(); ++j)
                    if (x[i] < x[j]) REQUIRE(s[i] <= s[j]);
        }
    }

    SECTION("ties share a symbol and every symbol is used") {
        std::vector<double> x{1, 1, 1, 1, 1, 2, 3, 4, 5, 6};
        const auto s = symbolize_equiprobable(x, 5);
        for (std::size_t i = 1; i < 5; ++i) REQUIRE(s[i] == s[0]);
        REQUIRE(std::set<Symbol>(s.begin(), s.end()).size() == 5);
    }
}

TEST_CASE("transition_matrix and min_eigenvalue") {
    const auto t = transition_matrix(std::vector<Symbol>{0, 1, 0, 1, 0}, 2);
    REQUIRE(t(0, 0) == 0.0);
    REQUIRE(t(0, 1) == 1.0);
    REQUIRE(t(1, 0) == 1.0);
    REQUIRE(t(1, 1) == 0.0);
    REQUIRE(std::fabs(min_eigenvalue(t) + 1.0) < 1e-12);

    REQUIRE(transition_matrix(std::vector<Symbol>{0, 0, 0}, 1)(0, 0) == 1.0);

    const auto u = transition_matrix(std::vector<Symbol>{0, 0, 1, 1}, 2);
    REQUIRE(u(0, 0) == 0.5);
    REQUIRE(u(0, 1) == 0.5);
    REQUIRE(u(1, 0) == 0.0);
    REQUIRE(u(1, 1) == 1.0);

    // Symbol 2 never leaves, so its row is uniform.
    const auto w = transition_matrix(std::vector<Symbol>{0, 1, 2}, 3);
    for (int j = 0; j < 3; ++j) REQUIRE(w(2, j) == Approx(1.0 / 3.0));

    REQUIRE(min_eigenvalue(Eigen::MatrixXd::Identity(2, 2)) == Approx(1.0));
    Eigen::MatrixXd half(2, 2);
    half << 0.5, 0.5, 0.5, 0.5;
    REQUIRE(std::fabs(min_eigenvalue(half)) < 1e-12);

    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> sym(0, 6);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Symbol> s(200);
        for (auto& v : s) v = sym(rng);
        const auto m = transition_matrix(s, 9);
        for (Eigen::Index i = 0; i < m.rows(); ++i) REQUIRE(std::fabs(m.row(i).sum() - 1.0) < 1e-12);
    }
}

TEST_CASE("f_dyntrans_mineig_fexp") {
    const auto x = oracle::ar1_series(2000, 31, 0.9);
    const auto v = f_dyntrans_mineig_fexp(ts(x));
    REQUIRE(v.is_finite());
    REQUIRE(v.value() <= 1.0 + 1e-9);
    REQUIRE(f_dyntrans_mineig_fexp(ts(x)) == v);

    std::vector<double> ns, eig;
    for (std::size_t n = 2; n <= 40; ++n) {
        ns.push_back(static_cast<double>(n));
        eig.push_back(min_eigenvalue(transition_matrix(symbolize_equiprobable(x, n), n)));
    }
    REQUIRE(v.value() == fit_exp_decay(ns, eig).adj_r2);

    // Fewer distinct values than the largest alphabet.
    std::vector<double> coarse(500);
    for (std::size_t i = 0; i < coarse.size(); ++i) coarse[i] = static_cast<double>(i % 10);
    REQUIRE(is_degenerate(f_dyntrans_mineig_fexp(ts(coarse))));

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const auto y = oracle::ar1_series(600, rng(), 0.3 + 0.06 * trial);
        const auto r = f_dyntrans_mineig_fexp(ts(y));
        if (r.is_finite()) REQUIRE(r.value() <= 1.0 + 1e-9);
    }
}

TEST_CASE("convex hull") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<geom::Point> pts;
        std::vector<oracle::Pt> opts;
        for (int i = 0; i < 200; ++i) {
            const double x = n(rng), y = n(rng);
            pts.push_back({x, y});
            opts.push_back({x, y});
        }
        REQUIRE(geom::hull_area(pts) == Approx(oracle::hull_area(opts)).epsilon(1e-12));
    }
    const std::vector<geom::Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0}};
    REQUIRE(geom::hull_area(square) == 1.0);
    REQUIRE(geom::convex_hull(square).size() == 4);
    const std::vector<geom::Point> line{{0, 0}, {1, 1}, {2, 2}};
    REQUIRE(geom::hull_area(line) == 0.0);
}

TEST_CASE("f_embed2_arearat") {
    // A ramp embeds onto a line.
    REQUIRE(is_degenerate(f_embed2_arearat(ts(ramp(200)))));
    REQUIRE(is_degenerate(embed2_area_ratio(delay_embed(ramp(200), 3))));
    REQUIRE(is_degenerate(f_embed2_arearat(ts(std::vector<double>(200, 5.0)))));

    SECTION("white noise against the gift-wrapping oracle") {
        const auto x = oracle::normal_series(5000, 123);
        std::size_t tau = 1;
        while (tau < x.size() / 4 && oracle::autocorr(x, tau) > 0.0) ++tau;
        std::vector<oracle::Pt> pts;
        for (std::size_t t = 0; t + tau < x.size(); ++t) pts.push_back({x[t], x[t + tau]});
        double cx = 0, cy = 0;
        for (const auto& p : pts) {
            cx += p.x;
            cy += p.y;
        }
        cx /= pts.size();
        cy /= pts.size();
        std::vector<double> d;
        for (const auto& p : pts) d.push_back(std::hypot(p.x - cx, p.y - cy));
        auto sorted = d;
        std::sort(sorted.begin(), sorted.end());
        const double med = sorted.size() % 2 ? sorted[sorted.size() / 2]
                                             : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
        std::vector<oracle::Pt> inner;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (d[i] < med) inner.push_back(pts[i]);
        const double expected = oracle::hull_area(inner) / oracle::hull_area(pts);
        REQUIRE(std::fabs(f_embed2_arearat(ts(x)).value() - expected) < 1e-9);
    }
    SECTION("output lies in [0, 1]") {
        std::mt19937_64 rng(10);
        for (int trial = 0; trial < 20; ++trial) {
            const auto v = f_embed2_arearat(ts(oracle::ar1_series(500, rng(), 0.95)));
            REQUIRE(v.value() >= 0.0);
            REQUIRE(v.value() <= 1.0);
        }
    }
    SECTION("equidistant points leave the inner set empty") {
        const std::vector<geom::Point> sq{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        REQUIRE(embed2_area_ratio(sq).value() == 0.0);
    }
}

TEST_CASE("f_spread_random_local") {
    const auto x = oracle::normal_series(2000, 55);
    LocalWindowParams w{200, 100, 42};
    const EntropyParams p{1, 0.2};

    SECTION("mean ApEn equals per-window recomputation") {
        const auto starts = random_window_starts(x.size(), w);
        REQUIRE(starts.size() == 100);
        double s = 0.0;
        for (std::size_t st : starts) {
            std::vector<double> win(x.begin() + static_cast<long>(st), x.begin() + static_cast<long>(st + 200));
            s += oracle::apen(win, 1, 0.2);
        }
        REQUIRE(std::fabs(f_spread_random_local(ts(x), w, p, LocalStat::MeanApEn).value() - s / 100.0) < 1e-12);
    }
    SECTION("std SampEn over two identical halves") {
        std::vector<double> half(x.begin(), x.begin() + 220);
        std::vector<double> y(half);
        y.insert(y.end(), half.begin(), half.end());
        LocalWindowParams lw{200, 50, 9};
        const auto starts = random_window_starts(y.size(), lw);
        std::vector<double> vals;
        for (std::size_t st : starts) {
            std::vector<double> win(y.begin() + static_cast<long>(st), y.begin() + static_cast<long>(st + 200));
            vals.push_back(oracle::sampen(win, 1, 0.2));
        }
        const double expected = oracle::sample_std(vals);
        REQUIRE(std::fabs(f_spread_random_local(ts(y), lw, p, LocalStat::StdSampEn).value() - expected) < 1e-12);
    }
    SECTION("deterministic for a fixed seed") {
        const auto a = f_spread_random_local(ts(x), w, p, LocalStat::StdSampEn);
        const auto b = f_spread_random_local(ts(x), w, p, LocalStat::StdSampEn);
        REQUIRE(a == b);
    }
    SECTION("constant windows are excluded") {
        std::vector<double> y(1000, 3.0);
        REQUIRE(is_not_finite(f_spread_random_local(ts(y), w, p, LocalStat::MeanApEn)));
    }
    SECTION("preconditions") {
        REQUIRE_THROWS_AS(f_spread_random_local(ts(ramp(200)), w, p, LocalStat::MeanApEn), Error);
        LocalWindowParams bad{10, 100, 0};
        REQUIRE_THROWS_AS(f_spread_random_local(ts(x), bad, p, LocalStat::MeanApEn), Error);
    }
}
