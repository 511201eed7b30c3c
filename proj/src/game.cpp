#include "prophet/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prophet/rng.hpp"
#include "prophet/voronoi.hpp"

namespace prophet {

std::uint64_t suffix_length(std::uint64_t n, double c) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
    const double nd = static_cast<double>(n);
    const double raw = std::ceil(c * std::sqrt(nd) * std::log(nd));
    if (raw <= 1.0) return 1;
    if (raw >= nd) return n;
    return static_cast<std::uint64_t>(raw);
}

double trigger_radius(std::uint64_t n) {
    const double nd = static_cast<double>(n);
    const double log_n = n >= 2 ? std::log(nd) : 0.0;
    if (!(log_n > 0.0)) throw std::invalid_argument("n too small for grid construction");
    const double t = std::floor(std::sqrt(8.0 * nd / log_n));
    if (t < 1.0 || t * t < 4.0 * nd / log_n) {
        throw std::invalid_argument("n too small for grid construction");
    }
    const double side = 1.0 / t;
    return std::sqrt(2.0) * side / (1.0 + 2.0 * std::sqrt(2.0));
}

double trigger_radius_or_zero(std::uint64_t n) {
    try {
        return trigger_radius(n);
    } catch (const std::invalid_argument&) {
        return 0.0;
    }
}

Decision wait_then_trigger_decide(std::uint64_t i, const TorusPoint& p, const PrefixView& prefix,
                                  std::uint64_t n, std::uint64_t f, double radius) {
    if (i + f <= n) return Decision::skip;
    if (!(radius > 0.0)) return Decision::skip;
    return prefix.any_within(p, radius) ? Decision::skip : Decision::pick;
}

std::vector<TorusPoint> generate_stream(std::uint64_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<TorusPoint> points;
    points.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        const double x = rng.uniform();
        const double y = rng.uniform();
        points.push_back(canonicalize(x, y));
    }
    return points;
}

TrialResult run_trial(const GameConfig& config, Strategy& strategy) {
    const auto points = generate_stream(config.n, config.seed);
    return run_trial_on(points, config, strategy);
}

TrialResult run_trial_on(std::span<const TorusPoint> points, const GameConfig& config,
                         Strategy& strategy) {
    if (config.n < 1) throw std::invalid_argument("n must be >= 1");
    if (points.size() != config.n) throw std::invalid_argument("stream length differs from n");

    const std::uint64_t n = config.n;
    GameSetup setup;
    setup.n = n;
    setup.suffix = suffix_length(n, config.c);
    setup.radius = trigger_radius_or_zero(n);
    setup.strategy_seed = splitmix64(config.seed ^ kStrategySalt);
    strategy.begin(setup);

    GridIndex prefix_index(default_grid_resolution(n));
    const PrefixView prefix(prefix_index);
    std::uint64_t chosen = 0;
    for (std::uint64_t i = 1; i <= n; ++i) {
        const TorusPoint& p = points[i - 1];
        if (strategy.decide(i, p, prefix) == Decision::pick) {
            chosen = i;
            break;
        }
        prefix_index.insert(p);
    }

    TrialResult r;
    r.n = n;
    r.seed = config.seed;
    r.triggered = chosen != 0;
    r.chosen_index = r.triggered ? chosen : n;
    r.trigger_radius = setup.radius;

    const TorusPoint& picked = points[r.chosen_index - 1];
    const double r2 = setup.radius * setup.radius;
    for (std::uint64_t j = r.chosen_index + 1; j <= n; ++j) {
        if (torus_distance_squared(picked, points[j - 1]) < r2) ++r.disk_hits;
    }

    const VoronoiDiagram diagram = build_voronoi(points);
    r.player_area = diagram.cells[r.chosen_index - 1].area;
    const IndexedArea best = largest_cell(diagram);
    r.prophet_area = best.area;
    r.prophet_index = static_cast<std::uint64_t>(best.index) + 1;
    r.mean_area = 1.0 / static_cast<double>(n);
    return r;
}

}  // namespace prophet
