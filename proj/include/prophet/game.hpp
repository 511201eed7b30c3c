#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prophet/torus.hpp"

namespace prophet {

struct GameConfig {
    std::uint64_t n = 1;
    double c = 2.0;  // suffix multiplier
    std::uint64_t seed = 0;
};

enum class Decision { skip, pick };

/// One playthrough. Indices are 1-based, matching stream positions.
struct TrialResult {
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t chosen_index = 0;
    bool triggered = false;
    double trigger_radius = 0.0;
    std::uint64_t disk_hits = 0;
    double player_area = 0.0;
    double prophet_area = 0.0;
    std::uint64_t prophet_index = 0;
    double mean_area = 0.0;
};

/// f = min(n, max(1, ceil(c sqrt(n) log n))).
std::uint64_t suffix_length(std::uint64_t n, double c);

/// Radius that keeps a singleton grid cell's inner square clear:
/// t = floor(sqrt(8n / log n)), side 1/t, R = sqrt(2) (1/t) / (1 + 2 sqrt(2)).
/// Throws std::invalid_argument when t^2 < 4n / log n.
double trigger_radius(std::uint64_t n);

/// trigger_radius(n), or 0 when n is too small for the grid construction.
double trigger_radius_or_zero(std::uint64_t n);

/// Read-only view of the points seen so far (P_{i-1} while deciding on p_i).
class PrefixView {
public:
    explicit PrefixView(const GridIndex& index) : index_(index) {}

    std::size_t size() const { return index_.size(); }
    const TorusPoint& point(std::size_t j) const { return index_.site(j); }
    bool any_within(const TorusPoint& q, double r) const { return index_.any_within(q, r); }
    double nearest_distance(const TorusPoint& q) const {
        return index_.nearest_distance(q, index_.size());
    }

private:
    const GridIndex& index_;
};

/// What a strategy knows before the stream starts.
struct GameSetup {
    std::uint64_t n = 0;
    std::uint64_t suffix = 0;  // f
    double radius = 0.0;       // R, 0 if undefined for this n
    std::uint64_t strategy_seed = 0;
};

/// Online decision rule. begin() is called once per trial; decide() is then
/// called for p_1, p_2, ... until it returns pick or the stream ends.
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual std::string_view name() const = 0;
    virtual void begin(const GameSetup& setup) = 0;
    virtual Decision decide(std::uint64_t i, const TorusPoint& p, const PrefixView& prefix) = 0;
};

/// Skip the first n - f points, then pick the first p_i with no earlier
/// point at torus distance < R.
Decision wait_then_trigger_decide(std::uint64_t i, const TorusPoint& p, const PrefixView& prefix,
                                  std::uint64_t n, std::uint64_t f, double radius);

enum class StrategyKind { wait_then_trigger, pick_first, pick_uniform_index, pick_last };

std::unique_ptr<Strategy> make_strategy(StrategyKind kind);
StrategyKind parse_strategy_kind(std::string_view name);
std::string_view to_string(StrategyKind kind);

/// p_1..p_n drawn in stream order from Rng(seed), x before y.
std::vector<TorusPoint> generate_stream(std::uint64_t n, std::uint64_t seed);

/// Seed handed to the strategy: splitmix64(trial_seed ^ kStrategySalt).
inline constexpr std::uint64_t kStrategySalt = 0x5354524154454759ULL;

/// Plays the game on the stream generated from config.seed.
TrialResult run_trial(const GameConfig& config, Strategy& strategy);

/// Plays the game on an explicit stream (config.n must equal points.size()).
TrialResult run_trial_on(std::span<const TorusPoint> points, const GameConfig& config,
                         Strategy& strategy);

}  // namespace prophet
