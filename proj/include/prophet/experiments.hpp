#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "prophet/game.hpp"
#include "prophet/stats.hpp"

namespace prophet {

enum class ExperimentKind { game, biggest_cell, many_large, center, balls_bins };

ExperimentKind parse_experiment_kind(std::string_view name);
std::string_view to_string(ExperimentKind kind);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::game;
    std::uint64_t n = 10000;
    std::uint64_t trials = 1;
    double c = 2.0;
    double beta = 4.0;
    double c_lemma = 3.0;
    std::uint64_t master_seed = 0;
    std::uint64_t samples = 10000;
    std::uint64_t inner_samples = 10000;
    StrategyKind strategy = StrategyKind::wait_then_trigger;
    unsigned threads = 1;  // affects wall time only
};

struct Gate {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

Gate gate_at_least(std::string name, double value, double threshold);
Gate gate_at_most(std::string name, double value, double threshold);

/// Per-trial records, one row per trial, column order fixed per experiment.
using RecordValue = std::variant<std::uint64_t, double, bool>;
struct RecordTable {
    std::vector<std::string> columns;
    std::vector<std::vector<RecordValue>> rows;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<std::pair<std::string, SummaryStats>> stats;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<Gate> gates;
    std::vector<std::string> warnings;
    RecordTable records;

    bool all_gates_pass() const;
};

// ---------------------------------------------------------------------------
// Game batches

/// Trial k is played with seed substream_seed(master_seed, k); results are
/// returned in trial order whatever the thread count.
std::vector<TrialResult> run_game_batch(std::uint64_t n, double c, std::uint64_t trials,
                                        std::uint64_t master_seed, StrategyKind strategy,
                                        unsigned threads);

struct GameBatchStats {
    std::uint64_t trials = 0;
    double triggered_fraction = 0.0;
    // Among triggered trials with no later point in the disk: fraction whose
    // cell area is at least pi (R/2)^2 - 1e-9.
    std::uint64_t quarter_disk_eligible = 0;
    double quarter_disk_fraction = 1.0;
    double disk_hit_fraction = 0.0;
    double multi_hit_fraction = 0.0;  // two or more later points in the disk
    double failure_fraction = 0.0;    // not triggered, or disk_hits >= 1
    double player_le_prophet_fraction = 0.0;
    double prophet_window_fraction = 0.0;  // prophet_area n / log n in [1/120, 12]
    double median_ratio = 0.0;             // median prophet_area / player_area
    double ratio_of_means = 0.0;           // mean prophet_area / mean player_area
};

GameBatchStats game_batch_stats(std::span<const TrialResult> trials);

/// Failure ceiling for a batch at n: 0.5 log^2 n / sqrt(n).
double failure_ceiling(std::uint64_t n);

/// Window [1/120, 12] on prophet_area n / log n.
inline constexpr double kProphetWindowLow = 1.0 / 120.0;
inline constexpr double kProphetWindowHigh = 12.0;

// ---------------------------------------------------------------------------
// Validators

struct BiggestCellResult {
    std::vector<double> max_areas;
    double area_threshold = 0.0;  // 4 c log n / n
    double bound = 0.0;           // min(1, n^{4 - 2c})
    std::uint64_t exceed_count = 0;
    double tail_frequency = 0.0;
    double allowed_frequency = 0.0;  // max(bound + 3 sigma, 1 / trials)
    bool vacuous = false;            // c <= 2
};

BiggestCellResult validate_biggest_cell(std::uint64_t n, std::uint64_t trials, double c_lemma,
                                        std::uint64_t master_seed, unsigned threads);

struct ManyLargeResult {
    double radius = 0.0;           // trigger_radius(n)
    double area_threshold = 0.0;   // log n / (120 n)
    std::uint64_t count_threshold = 0;  // ceil(sqrt(n) / 30)
    std::uint64_t suffix = 0;      // f at the configured c
    std::vector<std::uint64_t> fat_sites;        // U per trial
    std::vector<std::uint64_t> large_cells;      // cells with area >= area_threshold
    std::vector<std::uint64_t> fat_in_suffix;    // fat sites among the last f
    double fat_ok_fraction = 0.0;
    double large_ok_fraction = 0.0;
    double no_fat_in_suffix_fraction = 0.0;  // eta
};

ManyLargeResult validate_many_large(std::uint64_t n, std::uint64_t trials, double c,
                                    std::uint64_t master_seed, unsigned threads);

inline constexpr double kCenterThreshold = 1.0 / 15.0;
inline constexpr double kCenterExploratoryThreshold = 1.0 / 6.0;

struct CenterResult {
    std::vector<Eigen::Vector2d> points;
    std::vector<double> fractions;
    double estimate = 0.0;              // Prob(f(p) >= 1/15)
    double standard_error = 0.0;
    double exploratory_estimate = 0.0;  // Prob(f(p) >= 1/6)
};

/// Outer sample k uses seed s_k = substream_seed(master_seed, k): p from
/// Rng(s_k), inner samples from splitmix64(s_k).
CenterResult validate_center(std::uint64_t samples, std::uint64_t inner_samples,
                             std::uint64_t master_seed, unsigned threads);

/// Fraction of `fractions` that are >= threshold.
double fraction_at_least(std::span<const double> fractions, double threshold);

struct BallsBinsResult {
    std::uint64_t m = 0;
    std::vector<std::uint64_t> empty_bins;      // X0 per run
    std::vector<std::uint64_t> singleton_bins;  // X1 per run
    double x0_mean = 0.0;
    double x1_mean = 0.0;
    double x1_floor = 0.0;
    std::vector<double> lambdas;           // {1, 2, 4}
    std::vector<double> deviation_freq;    // runs with |X0 - mean| > lambda sqrt(n)
    std::vector<double> azuma_bounds;      // azuma_tail(lambda, c_i = 2 over n terms)
};

BallsBinsResult validate_balls_bins(std::uint64_t n, double beta, std::uint64_t trials,
                                    std::uint64_t master_seed, unsigned threads);

// ---------------------------------------------------------------------------
// Dispatch

/// Pure function of the config (threads aside). Throws std::invalid_argument
/// on invalid parameters.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Game batches at each n (ascending), with a strictly-decreasing gate on
/// the failure fraction.
ExperimentReport run_sweep(const ExperimentConfig& config, std::span<const std::uint64_t> ns);

RecordTable trial_table(std::span<const TrialResult> trials);

}  // namespace prophet
