#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "prophet/game.hpp"
#include "prophet/rng.hpp"
#include "prophet/voronoi.hpp"

using namespace prophet;

TEST_CASE("suffix length") {
    CHECK(suffix_length(10000, 2.0) == 1843);
    CHECK(suffix_length(1, 5.0) == 1);
    CHECK(suffix_length(1, 0.1) == 1);
    CHECK(suffix_length(2500, 1.0) == 392);
    CHECK(suffix_length(100, 10.0) == 100);  // clamped to n
    CHECK_THROWS(suffix_length(0, 1.0));
    CHECK_THROWS(suffix_length(10, 0.0));
}

TEST_CASE("trigger radius") {
    CHECK(trigger_radius(10000) == doctest::Approx(0.0039722).epsilon(1e-4));
    CHECK(trigger_radius(10000) == doctest::Approx(std::sqrt(2.0) / ((1 + 2 * std::sqrt(2.0)) * 93)));
    CHECK(trigger_radius(2500) == doctest::Approx(0.0073882).epsilon(1e-4));
    CHECK(trigger_radius(2500) == doctest::Approx(std::sqrt(2.0) / ((1 + 2 * std::sqrt(2.0)) * 50)));

    for (std::uint64_t n : {32u, 100u, 2500u, 10000u, 40000u, 1000000u}) {
        const double ln = std::log(static_cast<double>(n));
        // Largest t with t^2 <= 8n / log n, found by counting up.
        std::uint64_t t = 1;
        while (static_cast<double>((t + 1) * (t + 1)) <= 8.0 * n / ln) ++t;
        REQUIRE(static_cast<double>(t * t) >= 4.0 * n / ln);
        const double r = trigger_radius(n);
        CHECK(r * t * (1 + 2 * std::sqrt(2.0)) / std::sqrt(2.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_WITH(trigger_radius(1), "n too small for grid construction");
    CHECK(trigger_radius_or_zero(1) == 0.0);
}

TEST_CASE("wait-then-trigger decision rule") {
    const std::uint64_t n = 100, f = 10;
    const double r = 0.05;
    const TorusPoint p = canonicalize(0.5, 0.5);

    GridIndex empty(4);
    const PrefixView none(empty);
    CHECK(wait_then_trigger_decide(n - f, p, none, n, f, r) == Decision::skip);
    CHECK(wait_then_trigger_decide(n - f + 1, p, none, n, f, r) == Decision::pick);

    GridIndex far(4);
    far.insert(canonicalize(0.5 + 2 * r, 0.5));
    CHECK(wait_then_trigger_decide(n - f + 1, p, PrefixView(far), n, f, r) == Decision::pick);

    GridIndex close(4);
    close.insert(canonicalize(0.5 + r / 2, 0.5));
    CHECK(wait_then_trigger_decide(n - f + 1, p, PrefixView(close), n, f, r) == Decision::skip);

    // Exactly at distance R counts as empty.
    GridIndex edge(4);
    edge.insert(canonicalize(0.75, 0.5));
    CHECK(wait_then_trigger_decide(n - f + 1, p, PrefixView(edge), n, f, 0.25) == Decision::pick);

    // Wrapped neighbour still blocks.
    GridIndex wrapped(4);
    wrapped.insert(canonicalize(0.99, 0.5));
    CHECK(wait_then_trigger_decide(n, canonicalize(0.01, 0.5), PrefixView(wrapped), n, f, r) ==
          Decision::skip);

    // No radius: never triggers.
    CHECK(wait_then_trigger_decide(n, p, none, n, f, 0.0) == Decision::skip);
}

TEST_CASE("trivial games") {
    auto s = make_strategy(StrategyKind::wait_then_trigger);
    const auto r = run_trial({1, 2.0, 0}, *s);
    CHECK(r.chosen_index == 1);
    CHECK_FALSE(r.triggered);
    CHECK(r.player_area == doctest::Approx(1.0));
    CHECK(r.prophet_area == doctest::Approx(1.0));
    CHECK(r.prophet_index == 1);
    CHECK(r.mean_area == 1.0);

    const std::vector<TorusPoint> pts{canonicalize(0.0, 0.0), canonicalize(0.5, 0.0)};
    for (auto kind : {StrategyKind::wait_then_trigger, StrategyKind::pick_first,
                      StrategyKind::pick_uniform_index, StrategyKind::pick_last}) {
        auto strategy = make_strategy(kind);
        const auto t = run_trial_on(pts, {2, 2.0, 7}, *strategy);
        CHECK(t.player_area / t.prophet_area == doctest::Approx(1.0));
        CHECK(t.prophet_area == doctest::Approx(0.5));
    }
    auto s2 = make_strategy(StrategyKind::pick_first);
    CHECK_THROWS(run_trial_on(pts, {3, 2.0, 7}, *s2));
}

TEST_CASE("baseline strategies pick by definition") {
    for (std::uint64_t n : {1u, 2u, 10u}) {
        auto first = make_strategy(StrategyKind::pick_first);
        const auto a = run_trial({n, 2.0, 3}, *first);
        CHECK(a.chosen_index == 1);
        CHECK(a.triggered);

        auto last = make_strategy(StrategyKind::pick_last);
        const auto b = run_trial({n, 2.0, 3}, *last);
        CHECK(b.chosen_index == n);
        CHECK_FALSE(b.triggered);

        auto uniform = make_strategy(StrategyKind::pick_uniform_index);
        const auto c = run_trial({n, 2.0, 3}, *uniform);
        Rng rng(splitmix64(3 ^ kStrategySalt));
        CHECK(c.chosen_index == 1 + rng.uniform_index(n));
        CHECK(c.triggered);
    }
    CHECK(parse_strategy_kind("trigger") == StrategyKind::wait_then_trigger);
    CHECK(to_string(StrategyKind::pick_uniform_index) == "uniform");
    CHECK_THROWS(parse_strategy_kind("oracle"));
}

namespace {

// Checks that each decision sees exactly the earlier points.
class PrefixAuditor final : public Strategy {
public:
    explicit PrefixAuditor(std::vector<TorusPoint> stream) : stream_(std::move(stream)) {}
    std::string_view name() const override { return "audit"; }
    void begin(const GameSetup&) override {}
    Decision decide(std::uint64_t i, const TorusPoint& p, const PrefixView& prefix) override {
        ok = ok && prefix.size() == i - 1 && p == stream_[i - 1];
        for (std::size_t j = 0; j < prefix.size(); ++j) ok = ok && prefix.point(j) == stream_[j];
        ++calls;
        return Decision::skip;
    }
    bool ok = true;
    std::uint64_t calls = 0;

private:
    std::vector<TorusPoint> stream_;
};

bool same_bits(const TrialResult& a, const TrialResult& b) {
    return a.n == b.n && a.seed == b.seed && a.chosen_index == b.chosen_index &&
           a.triggered == b.triggered && a.disk_hits == b.disk_hits &&
           a.prophet_index == b.prophet_index &&
           std::memcmp(&a.trigger_radius, &b.trigger_radius, sizeof(double)) == 0 &&
           std::memcmp(&a.player_area, &b.player_area, sizeof(double)) == 0 &&
           std::memcmp(&a.prophet_area, &b.prophet_area, sizeof(double)) == 0 &&
           std::memcmp(&a.mean_area, &b.mean_area, sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("strategies see only the prefix") {
    const auto stream = generate_stream(60, 99);
    PrefixAuditor audit(stream);
    const auto r = run_trial({60, 2.0, 99}, audit);
    CHECK(audit.ok);
    CHECK(audit.calls == 60);
    CHECK(r.chosen_index == 60);
}

TEST_CASE("trial invariants") {
    const std::uint64_t n = 2000;
    const double c = 2.0;
    const std::uint64_t f = suffix_length(n, c);
    const double radius = trigger_radius(n);
    int triggered = 0;
    for (std::uint64_t k = 0; k < 40; ++k) {
        const std::uint64_t seed = substream_seed(12345, k);
        auto s = make_strategy(StrategyKind::wait_then_trigger);
        const auto r = run_trial({n, c, seed}, *s);
        REQUIRE(r.chosen_index >= 1);
        REQUIRE(r.chosen_index <= n);
        REQUIRE(r.player_area > 0.0);
        REQUIRE(r.player_area <= r.prophet_area);
        REQUIRE(r.prophet_area <= 1.0);
        REQUIRE(r.prophet_area >= 1.0 / n);
        REQUIRE(r.trigger_radius == radius);

        const auto pts = generate_stream(n, seed);
        std::uint64_t hits = 0;
        for (std::uint64_t j = r.chosen_index + 1; j <= n; ++j) {
            hits += torus_distance(pts[r.chosen_index - 1], pts[j - 1]) < radius;
        }
        REQUIRE(hits == r.disk_hits);
        if (r.triggered) {
            ++triggered;
            REQUIRE(r.chosen_index > n - f);
            for (std::uint64_t j = 1; j < r.chosen_index; ++j) {
                REQUIRE(torus_distance(pts[r.chosen_index - 1], pts[j - 1]) >= radius);
            }
            if (r.disk_hits == 0) {
                REQUIRE(r.player_area >= std::numbers::pi * radius * radius / 4 - 1e-9);
            }
        }

        auto again = make_strategy(StrategyKind::wait_then_trigger);
        REQUIRE(same_bits(r, run_trial({n, c, seed}, *again)));
    }
    CHECK(triggered >= 38);
}
