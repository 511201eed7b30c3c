#include "prophet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "prophet/occupancy.hpp"
#include "prophet/parallel.hpp"
#include "prophet/rng.hpp"
#include "prophet/voronoi.hpp"

namespace prophet {

namespace {

template <typename T>
std::vector<double> as_doubles(const std::vector<T>& v) {
    return {v.begin(), v.end()};
}

double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void require_trials(std::uint64_t trials) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
}

}  // namespace

ExperimentKind parse_experiment_kind(std::string_view name) {
    if (name == "game") return ExperimentKind::game;
    if (name == "biggest-cell") return ExperimentKind::biggest_cell;
    if (name == "many-large") return ExperimentKind::many_large;
    if (name == "center") return ExperimentKind::center;
    if (name == "balls-bins") return ExperimentKind::balls_bins;
    throw std::invalid_argument("unknown experiment kind: " + std::string(name));
}

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::game:
            return "game";
        case ExperimentKind::biggest_cell:
            return "biggest-cell";
        case ExperimentKind::many_large:
            return "many-large";
        case ExperimentKind::center:
            return "center";
        case ExperimentKind::balls_bins:
            return "balls-bins";
    }
    return "?";
}

Gate gate_at_least(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, value >= threshold};
}

Gate gate_at_most(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, value <= threshold};
}

bool ExperimentReport::all_gates_pass() const {
    return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.pass; });
}

std::vector<TrialResult> run_game_batch(std::uint64_t n, double c, std::uint64_t trials,
                                        std::uint64_t master_seed, StrategyKind strategy,
                                        unsigned threads) {
    require_trials(trials);
    std::vector<TrialResult> out(trials);
    parallel_for(trials, threads, [&](std::size_t k) {
        auto player = make_strategy(strategy);
        out[k] = run_trial({n, c, substream_seed(master_seed, k)}, *player);
    });
    return out;
}

double failure_ceiling(std::uint64_t n) {
    const double nd = static_cast<double>(n);
    const double log_n = std::log(nd);
    return 0.5 * log_n * log_n / std::sqrt(nd);
}

GameBatchStats game_batch_stats(std::span<const TrialResult> trials) {
    GameBatchStats s;
    s.trials = trials.size();
    if (trials.empty()) return s;

    std::uint64_t triggered = 0, hit = 0, multi = 0, failed = 0, ordered = 0, in_window = 0;
    std::uint64_t quarter_ok = 0;
    std::vector<double> ratios;
    double player_sum = 0.0, prophet_sum = 0.0;
    for (const auto& t : trials) {
        triggered += t.triggered;
        hit += t.disk_hits >= 1;
        multi += t.disk_hits >= 2;
        failed += !t.triggered || t.disk_hits >= 1;
        ordered += t.player_area <= t.prophet_area;
        const double scaled =
            t.n >= 2 ? t.prophet_area * static_cast<double>(t.n) / std::log(static_cast<double>(t.n))
                     : 0.0;
        in_window += scaled >= kProphetWindowLow && scaled <= kProphetWindowHigh;
        if (t.triggered && t.disk_hits == 0) {
            ++s.quarter_disk_eligible;
            const double half = t.trigger_radius / 2.0;
            quarter_ok += t.player_area >= std::numbers::pi * half * half - 1e-9;
        }
        ratios.push_back(t.prophet_area / t.player_area);
        player_sum += t.player_area;
        prophet_sum += t.prophet_area;
    }
    const std::uint64_t count = trials.size();
    s.triggered_fraction = ratio(triggered, count);
    s.disk_hit_fraction = ratio(hit, count);
    s.multi_hit_fraction = ratio(multi, count);
    s.failure_fraction = ratio(failed, count);
    s.player_le_prophet_fraction = ratio(ordered, count);
    s.prophet_window_fraction = ratio(in_window, count);
    s.quarter_disk_fraction = s.quarter_disk_eligible ? ratio(quarter_ok, s.quarter_disk_eligible) : 1.0;
    s.median_ratio = summarize(ratios).median;
    s.ratio_of_means = prophet_sum / player_sum;
    return s;
}

BiggestCellResult validate_biggest_cell(std::uint64_t n, std::uint64_t trials, double c_lemma,
                                        std::uint64_t master_seed, unsigned threads) {
    require_trials(trials);
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    BiggestCellResult r;
    const double nd = static_cast<double>(n);
    r.area_threshold = 4.0 * c_lemma * std::log(nd) / nd;
    r.vacuous = c_lemma <= 2.0;
    r.bound = std::min(1.0, std::pow(nd, 4.0 - 2.0 * c_lemma));
    r.max_areas.resize(trials);
    parallel_for(trials, threads, [&](std::size_t k) {
        const auto sites = generate_stream(n, substream_seed(master_seed, k));
        r.max_areas[k] = largest_cell(build_voronoi(sites)).area;
    });
    for (double a : r.max_areas) r.exceed_count += a >= r.area_threshold;
    r.tail_frequency = ratio(r.exceed_count, trials);
    r.allowed_frequency = std::max(r.bound + 3.0 * binomial_se(r.bound, trials),
                                   1.0 / static_cast<double>(trials));
    return r;
}

ManyLargeResult validate_many_large(std::uint64_t n, std::uint64_t trials, double c,
                                    std::uint64_t master_seed, unsigned threads) {
    require_trials(trials);
    if (n < 32) throw std::invalid_argument("n must be >= 32");
    ManyLargeResult r;
    const double nd = static_cast<double>(n);
    r.radius = trigger_radius(n);
    r.area_threshold = std::log(nd) / (120.0 * nd);
    r.count_threshold = static_cast<std::uint64_t>(std::ceil(std::sqrt(nd) / 30.0));
    r.suffix = suffix_length(n, c);
    r.fat_sites.resize(trials);
    r.large_cells.resize(trials);
    r.fat_in_suffix.resize(trials);
    parallel_for(trials, threads, [&](std::size_t k) {
        const auto sites = generate_stream(n, substream_seed(master_seed, k));
        const GridIndex index = build_grid_index(sites);
        std::uint64_t fat = 0, fat_late = 0;
        for (std::size_t i = 0; i < sites.size(); ++i) {
            if (nearest_other_site_distance(i, sites, index) >= r.radius) {
                ++fat;
                fat_late += i + r.suffix >= n;
            }
        }
        const VoronoiDiagram diagram = build_voronoi(sites);
        std::uint64_t large = 0;
        for (const auto& cell : diagram.cells) large += cell.area >= r.area_threshold;
        r.fat_sites[k] = fat;
        r.large_cells[k] = large;
        r.fat_in_suffix[k] = fat_late;
    });
    std::uint64_t fat_ok = 0, large_ok = 0, none_late = 0;
    for (std::uint64_t k = 0; k < trials; ++k) {
        fat_ok += r.fat_sites[k] >= r.count_threshold;
        large_ok += r.large_cells[k] >= r.count_threshold;
        none_late += r.fat_in_suffix[k] == 0;
    }
    r.fat_ok_fraction = ratio(fat_ok, trials);
    r.large_ok_fraction = ratio(large_ok, trials);
    r.no_fat_in_suffix_fraction = ratio(none_late, trials);
    return r;
}

double fraction_at_least(std::span<const double> fractions, double threshold) {
    if (fractions.empty()) return 0.0;
    const auto hits = std::count_if(fractions.begin(), fractions.end(),
                                    [&](double f) { return f >= threshold; });
    return static_cast<double>(hits) / static_cast<double>(fractions.size());
}

CenterResult validate_center(std::uint64_t samples, std::uint64_t inner_samples,
                             std::uint64_t master_seed, unsigned threads) {
    if (samples < 1 || inner_samples < 1) throw std::invalid_argument("samples must be >= 1");
    CenterResult r;
    r.points.resize(samples);
    r.fractions.resize(samples);
    parallel_for(samples, threads, [&](std::size_t k) {
        const std::uint64_t s = substream_seed(master_seed, k);
        Rng rng(s);
        const double x = rng.uniform();
        const double y = rng.uniform();
        r.points[k] = {x, y};
        r.fractions[k] = point_vs_boundary_fraction(r.points[k], inner_samples, splitmix64(s));
    });
    r.estimate = fraction_at_least(r.fractions, kCenterThreshold);
    r.standard_error = binomial_se(r.estimate, samples);
    r.exploratory_estimate = fraction_at_least(r.fractions, kCenterExploratoryThreshold);
    return r;
}

BallsBinsResult validate_balls_bins(std::uint64_t n, double beta, std::uint64_t trials,
                                    std::uint64_t master_seed, unsigned threads) {
    require_trials(trials);
    BallsBinsResult r;
    r.m = bins_for_beta(n, beta);
    r.empty_bins.resize(trials);
    r.singleton_bins.resize(trials);
    parallel_for(trials, threads, [&](std::size_t k) {
        const BinCounts bins = throw_balls(n, r.m, substream_seed(master_seed, k));
        r.empty_bins[k] = count_bins_with(0, bins);
        r.singleton_bins[k] = count_bins_with(1, bins);
    });
    r.x0_mean = summarize(as_doubles(r.empty_bins)).mean;
    r.x1_mean = summarize(as_doubles(r.singleton_bins)).mean;
    r.x1_floor = singleton_floor(n, beta);

    const std::vector<double> steps(n, 2.0);
    const double root_n = std::sqrt(static_cast<double>(n));
    for (double lambda : {1.0, 2.0, 4.0}) {
        std::uint64_t far = 0;
        for (std::uint64_t x0 : r.empty_bins) {
            far += std::abs(static_cast<double>(x0) - r.x0_mean) > lambda * root_n;
        }
        r.lambdas.push_back(lambda);
        r.deviation_freq.push_back(ratio(far, trials));
        r.azuma_bounds.push_back(azuma_tail(lambda, steps));
    }
    return r;
}

RecordTable trial_table(std::span<const TrialResult> trials) {
    RecordTable t;
    t.columns = {"n",           "seed",         "chosen_index", "triggered",
                 "trigger_radius", "disk_hits", "player_area",  "prophet_area",
                 "prophet_index",  "mean_area"};
    for (const auto& r : trials) {
        t.rows.push_back({r.n, r.seed, r.chosen_index, r.triggered, r.trigger_radius, r.disk_hits,
                          r.player_area, r.prophet_area, r.prophet_index, r.mean_area});
    }
    return t;
}

namespace {

void add_game_section(ExperimentReport& report, std::span<const TrialResult> trials,
                      std::uint64_t n, double c) {
    std::vector<double> player, prophet, ratios, scaled, hits;
    for (const auto& t : trials) {
        player.push_back(t.player_area);
        prophet.push_back(t.prophet_area);
        ratios.push_back(t.prophet_area / t.player_area);
        scaled.push_back(n >= 2 ? t.prophet_area * static_cast<double>(n) /
                                      std::log(static_cast<double>(n))
                                : 0.0);
        hits.push_back(static_cast<double>(t.disk_hits));
    }
    report.stats.emplace_back("player_area", summarize(player));
    report.stats.emplace_back("prophet_area", summarize(prophet));
    report.stats.emplace_back("competitive_ratio", summarize(ratios));
    report.stats.emplace_back("prophet_area_scaled", summarize(scaled));
    report.stats.emplace_back("disk_hits", summarize(hits));

    const GameBatchStats s = game_batch_stats(trials);
    report.metrics.emplace_back("suffix_length", static_cast<double>(suffix_length(n, c)));
    report.metrics.emplace_back("trigger_radius", trigger_radius_or_zero(n));
    report.metrics.emplace_back("triggered_fraction", s.triggered_fraction);
    report.metrics.emplace_back("disk_hit_fraction", s.disk_hit_fraction);
    report.metrics.emplace_back("multi_hit_fraction", s.multi_hit_fraction);
    report.metrics.emplace_back("failure_fraction", s.failure_fraction);
    report.metrics.emplace_back("quarter_disk_eligible", static_cast<double>(s.quarter_disk_eligible));
    report.metrics.emplace_back("ratio_of_means", s.ratio_of_means);

    report.gates.push_back(gate_at_least("triggered_fraction", s.triggered_fraction, 0.99));
    report.gates.push_back(gate_at_least("quarter_disk_fraction", s.quarter_disk_fraction, 1.0));
    report.gates.push_back(gate_at_most("failure_fraction", s.failure_fraction, failure_ceiling(n)));
    report.gates.push_back(
        gate_at_least("player_le_prophet_fraction", s.player_le_prophet_fraction, 1.0));
    report.gates.push_back(
        gate_at_least("prophet_window_fraction", s.prophet_window_fraction, 0.99));
    report.gates.push_back(gate_at_most("median_competitive_ratio", s.median_ratio, 50.0));
}

ExperimentReport game_report(const ExperimentConfig& config) {
    ExperimentReport report;
    report.config = config;
    const auto trials = run_game_batch(config.n, config.c, config.trials, config.master_seed,
                                       config.strategy, config.threads);
    add_game_section(report, trials, config.n, config.c);
    report.records = trial_table(trials);
    return report;
}

ExperimentReport biggest_cell_report(const ExperimentConfig& config) {
    ExperimentReport report;
    report.config = config;
    const auto r = validate_biggest_cell(config.n, config.trials, config.c_lemma,
                                         config.master_seed, config.threads);
    report.stats.emplace_back("max_area", summarize(r.max_areas));
    report.metrics.emplace_back("area_threshold", r.area_threshold);
    report.metrics.emplace_back("bound", r.bound);
    report.metrics.emplace_back("exceed_count", static_cast<double>(r.exceed_count));
    report.metrics.emplace_back("tail_frequency", r.tail_frequency);
    if (r.vacuous) {
        report.warnings.push_back("c_lemma <= 2: the tail bound is vacuous; frequency reported only");
    } else {
        report.gates.push_back(gate_at_most("tail_frequency", r.tail_frequency, r.allowed_frequency));
    }
    report.records.columns = {"trial", "seed", "max_area", "exceeds"};
    for (std::uint64_t k = 0; k < config.trials; ++k) {
        report.records.rows.push_back({k, substream_seed(config.master_seed, k), r.max_areas[k],
                                       r.max_areas[k] >= r.area_threshold});
    }
    return report;
}

ExperimentReport many_large_report(const ExperimentConfig& config) {
    ExperimentReport report;
    report.config = config;
    const auto r =
        validate_many_large(config.n, config.trials, config.c, config.master_seed, config.threads);
    report.stats.emplace_back("fat_sites", summarize(as_doubles(r.fat_sites)));
    report.stats.emplace_back("large_cells", summarize(as_doubles(r.large_cells)));
    report.stats.emplace_back("fat_in_suffix", summarize(as_doubles(r.fat_in_suffix)));
    report.metrics.emplace_back("radius", r.radius);
    report.metrics.emplace_back("area_threshold", r.area_threshold);
    report.metrics.emplace_back("count_threshold", static_cast<double>(r.count_threshold));
    report.metrics.emplace_back("suffix_length", static_cast<double>(r.suffix));
    const double mean_fat = summarize(as_doubles(r.fat_sites)).mean;
    report.metrics.emplace_back("expected_fat_in_suffix",
                                mean_fat * static_cast<double>(r.suffix) / static_cast<double>(config.n));
    report.metrics.emplace_back("no_fat_in_suffix_fraction", r.no_fat_in_suffix_fraction);
    report.gates.push_back(gate_at_least("fat_sites_ok_fraction", r.fat_ok_fraction, 0.95));
    report.gates.push_back(gate_at_least("large_cells_ok_fraction", r.large_ok_fraction, 0.95));
    report.records.columns = {"trial", "seed", "fat_sites", "large_cells", "fat_in_suffix"};
    for (std::uint64_t k = 0; k < config.trials; ++k) {
        report.records.rows.push_back({k, substream_seed(config.master_seed, k), r.fat_sites[k],
                                       r.large_cells[k], r.fat_in_suffix[k]});
    }
    return report;
}

ExperimentReport center_report(const ExperimentConfig& config) {
    ExperimentReport report;
    report.config = config;
    const auto r =
        validate_center(config.samples, config.inner_samples, config.master_seed, config.threads);
    report.stats.emplace_back("fraction", summarize(r.fractions));
    report.metrics.emplace_back("estimate", r.estimate);
    report.metrics.emplace_back("standard_error", r.standard_error);
    report.metrics.emplace_back("exploratory_estimate_1_6", r.exploratory_estimate);
    report.gates.push_back(
        gate_at_least("estimate", r.estimate, kCenterThreshold - 3.0 * r.standard_error));
    report.records.columns = {"sample", "x", "y", "fraction"};
    for (std::uint64_t k = 0; k < r.points.size(); ++k) {
        report.records.rows.push_back({k, r.points[k].x(), r.points[k].y(), r.fractions[k]});
    }
    return report;
}

ExperimentReport balls_bins_report(const ExperimentConfig& config) {
    ExperimentReport report;
    report.config = config;
    const auto r = validate_balls_bins(config.n, config.beta, config.trials, config.master_seed,
                                       config.threads);
    const OccupancyBounds b0 = expected_bounds_X0(config.n, config.beta);
    const OccupancyBounds b1 = expected_bounds_X1(config.n, config.beta);
    report.stats.emplace_back("X0", summarize(as_doubles(r.empty_bins)));
    report.stats.emplace_back("X1", summarize(as_doubles(r.singleton_bins)));
    report.metrics.emplace_back("m", static_cast<double>(r.m));
    report.metrics.emplace_back("X0_lower", b0.lower);
    report.metrics.emplace_back("X0_upper", b0.upper);
    report.metrics.emplace_back("X1_lower", b1.lower);
    report.metrics.emplace_back("X1_upper", b1.upper);
    report.metrics.emplace_back("X1_floor", r.x1_floor);
    report.gates.push_back(gate_at_least("X0_mean_lower", r.x0_mean, b0.lower));
    report.gates.push_back(gate_at_most("X0_mean_upper", r.x0_mean, b0.upper));
    report.gates.push_back(gate_at_least("X1_mean_lower", r.x1_mean, b1.lower));
    report.gates.push_back(gate_at_most("X1_mean_upper", r.x1_mean, b1.upper));
    const auto x1_min = *std::min_element(r.singleton_bins.begin(), r.singleton_bins.end());
    report.gates.push_back(gate_at_least("X1_min", static_cast<double>(x1_min), r.x1_floor));
    for (std::size_t k = 0; k < r.lambdas.size(); ++k) {
        const std::string name = "azuma_lambda_" + std::to_string(static_cast<int>(r.lambdas[k]));
        report.gates.push_back(gate_at_most(name, r.deviation_freq[k], r.azuma_bounds[k]));
    }
    report.records.columns = {"run", "seed", "X0", "X1"};
    for (std::uint64_t k = 0; k < config.trials; ++k) {
        report.records.rows.push_back(
            {k, substream_seed(config.master_seed, k), r.empty_bins[k], r.singleton_bins[k]});
    }
    return report;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
    switch (config.kind) {
        case ExperimentKind::game:
            return game_report(config);
        case ExperimentKind::biggest_cell:
            return biggest_cell_report(config);
        case ExperimentKind::many_large:
            return many_large_report(config);
        case ExperimentKind::center:
            return center_report(config);
        case ExperimentKind::balls_bins:
            return balls_bins_report(config);
    }
    throw std::invalid_argument("unknown experiment kind");
}

ExperimentReport run_sweep(const ExperimentConfig& config, std::span<const std::uint64_t> ns) {
    if (ns.empty()) throw std::invalid_argument("empty n list");
    std::vector<std::uint64_t> sorted(ns.begin(), ns.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("duplicate n in sweep");
    }

    ExperimentReport report;
    report.config = config;
    report.records = trial_table({});
    std::vector<double> failures;
    for (std::uint64_t n : sorted) {
        const auto trials = run_game_batch(n, config.c, config.trials, config.master_seed,
                                           config.strategy, config.threads);
        const GameBatchStats s = game_batch_stats(trials);
        const std::string tag = "n=" + std::to_string(n) + ".";
        std::vector<double> ratios;
        for (const auto& t : trials) ratios.push_back(t.prophet_area / t.player_area);
        report.stats.emplace_back(tag + "competitive_ratio", summarize(ratios));
        report.metrics.emplace_back(tag + "triggered_fraction", s.triggered_fraction);
        report.metrics.emplace_back(tag + "failure_fraction", s.failure_fraction);
        report.metrics.emplace_back(tag + "failure_ceiling", failure_ceiling(n));
        report.metrics.emplace_back(tag + "prophet_window_fraction", s.prophet_window_fraction);
        report.metrics.emplace_back(tag + "median_competitive_ratio", s.median_ratio);
        failures.push_back(s.failure_fraction);
        const RecordTable rows = trial_table(trials);
        report.records.rows.insert(report.records.rows.end(), rows.rows.begin(), rows.rows.end());
    }
    for (std::size_t k = 1; k < failures.size(); ++k) {
        report.gates.push_back({"failure_decreasing_n=" + std::to_string(sorted[k]), failures[k],
                                failures[k - 1], failures[k] < failures[k - 1]});
    }
    return report;
}

}  // namespace prophet
