#include "hcts/everest.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace hcts;
using Catch::Approx;

namespace {

Outcome patient(std::size_t i, double ph, bool compromise = false) {
    char id[32];
    std::snprintf(id, sizeof id, "p%05zu", i);
    return Outcome{id, ph, compromise, Split::Unassigned};
}

std::vector<OutcomeDefinition> event_flag() {
    return {{"event", [](const Outcome& o) { return o.compromise; }}};
}

struct Instance {
    std::vector<double> values;
    std::vector<Outcome> outcomes;
};

Instance random_instance(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> size(10, 400);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Instance in;
    const std::size_t n = size(rng);
    const bool ties = u(rng) < 0.3;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = ties ? std::floor(u(rng) * 5.0) : u(rng) * 10.0 - 5.0;
        in.values.push_back(v);
        in.outcomes.push_back(patient(i, 6.9 + 0.4 * u(rng), u(rng) < 0.1 + 0.05 * v));
    }
    return in;
}

} // namespace

TEST_CASE("equal group sizes") {
    REQUIRE(equal_group_sizes(7, 3) == std::vector<std::size_t>{3, 2, 2});
    REQUIRE(equal_group_sizes(95, 10) == std::vector<std::size_t>{10, 10, 10, 10, 10, 9, 9, 9, 9, 9});
    REQUIRE(equal_group_sizes(20, 10) == std::vector<std::size_t>(10, 2));
}

TEST_CASE("everest examples") {
    SECTION("single event at the top value") {
        std::vector<double> v;
        std::vector<Outcome> o;
        for (std::size_t i = 1; i <= 10; ++i) {
            v.push_back(static_cast<double>(i));
            o.push_back(patient(i, 7.3, i == 10));
        }
        const auto r = everest(v, o, event_flag(), 10, "f");
        REQUIRE(r.outcome("event").group_rates == std::vector<double>{0, 0, 0, 0, 0, 0, 0, 0, 0, 1});
        REQUIRE(r.group_boundaries.size() == 9);
        REQUIRE(r.group_boundaries[0] == 1.5);
        REQUIRE(top_group_risk_ratio(r, "event").value() == Approx(10.0));
    }
    SECTION("every patient has the event") {
        std::vector<double> v(30);
        std::vector<Outcome> o;
        for (std::size_t i = 0; i < 30; ++i) {
            v[i] = std::sin(static_cast<double>(i));
            o.push_back(patient(i, 7.0, true));
        }
        const auto r = everest(v, o, event_flag(), 4);
        for (double rate : r.outcome("event").group_rates) REQUIRE(rate == 1.0);
        REQUIRE(top_group_risk_ratio(r, "event").value() == 1.0);
    }
    SECTION("no events") {
        std::vector<double> v{1, 2, 3, 4};
        std::vector<Outcome> o{patient(0, 7.3), patient(1, 7.3), patient(2, 7.3), patient(3, 7.3)};
        const auto r = everest(v, o, event_flag(), 2);
        REQUIRE(top_group_risk_ratio(r, "event").special_tag() == Special::NotFinite);
    }
    SECTION("95 patients in ten groups") {
        std::vector<double> v;
        std::vector<Outcome> o;
        for (std::size_t i = 0; i < 95; ++i) {
            v.push_back(static_cast<double>(i));
            o.push_back(patient(i, 7.2));
        }
        const auto r = everest(v, o, default_outcome_definitions(), 10);
        REQUIRE(r.group_sizes == equal_group_sizes(95, 10));
        REQUIRE(r.outcomes.size() == 3);
    }
    SECTION("default outcome definitions") {
        const auto defs = default_outcome_definitions(7.05);
        const Outcome low = patient(0, 7.05, false), both = patient(1, 7.0, true), neither = patient(2, 7.2, false);
        REQUIRE(defs[0].predicate(low));
        REQUIRE_FALSE(defs[1].predicate(low));
        REQUIRE(defs[2].predicate(both));
        REQUIRE_FALSE(defs[0].predicate(neither));
    }
    SECTION("errors") {
        std::vector<double> v{1, 2};
        std::vector<Outcome> o{patient(0, 7.3), patient(1, 7.3)};
        try {
            everest(v, o, event_flag(), 3);
            FAIL("expected TooFewPatients");
        } catch (const Error& e) {
            REQUIRE(e.kind() == ErrorKind::TooFewPatients);
        }
        v[1] = std::nan("");
        try {
            everest(v, o, event_flag(), 2);
            FAIL("expected SpecialValuePresent");
        } catch (const Error& e) {
            REQUIRE(e.kind() == ErrorKind::SpecialValuePresent);
        }
        REQUIRE_THROWS_AS(everest(v, o, event_flag(), 1), Error);
    }
}

TEST_CASE("everest invariants") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 100; ++trial) {
        auto in = random_instance(rng);
        std::uniform_int_distribution<std::size_t> groups(2, std::min<std::size_t>(20, in.values.size()));
        const std::size_t g = groups(rng);
        const auto defs = default_outcome_definitions();
        const auto r = everest(in.values, in.outcomes, defs, g);

        const auto [mn, mx] = std::minmax_element(r.group_sizes.begin(), r.group_sizes.end());
        REQUIRE(*mx - *mn <= 1);
        for (std::size_t k = 1; k < r.group_boundaries.size(); ++k)
            REQUIRE(r.group_boundaries[k] >= r.group_boundaries[k - 1]);
        for (const auto& o : r.outcomes) {
            double s = 0.0;
            for (std::size_t k = 0; k < g; ++k) s += static_cast<double>(r.group_sizes[k]) * o.group_rates[k];
            REQUIRE(std::fabs(s / static_cast<double>(in.values.size()) - o.overall_rate) < 1e-12);
        }

        // Input order does not matter.
        std::vector<std::size_t> perm(in.values.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        Instance shuffled;
        for (auto i : perm) {
            shuffled.values.push_back(in.values[i]);
            shuffled.outcomes.push_back(in.outcomes[i]);
        }
        const auto rs = everest(shuffled.values, shuffled.outcomes, defs, g);
        REQUIRE(rs.group_boundaries == r.group_boundaries);
        for (std::size_t k = 0; k < r.outcomes.size(); ++k) REQUIRE(rs.outcomes[k].group_rates == r.outcomes[k].group_rates);

        // A strictly increasing transform moves only the boundaries.
        std::vector<double> t(in.values);
        for (auto& v : t) v = std::exp(0.7 * v) + 3.0 * v;
        const auto rt = everest(t, in.outcomes, defs, g);
        REQUIRE(rt.group_sizes == r.group_sizes);
        for (std::size_t k = 0; k < r.outcomes.size(); ++k) REQUIRE(rt.outcomes[k].group_rates == r.outcomes[k].group_rates);
    }
}
