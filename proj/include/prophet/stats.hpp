#pragma once

#include <cstdint>
#include <span>

namespace prophet {

struct SummaryStats {
    std::uint64_t count = 0;
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation (n - 1), 0 for a single value
    double min = 0.0;
    double max = 0.0;
    double median = 0.0;
    double q05 = 0.0;
    double q95 = 0.0;
    double ci95_halfwidth = 0.0;  // 1.96 std / sqrt(count)
};

/// Quantile of sorted data by linear interpolation between order statistics:
/// h = (N - 1) q, value = x[floor h] + (h - floor h)(x[floor h + 1] - x[floor h]).
double quantile_sorted(std::span<const double> sorted, double q);

/// Throws std::invalid_argument on empty input.
SummaryStats summarize(std::span<const double> values);

/// Binomial standard error sqrt(p (1 - p) / trials).
double binomial_se(double p, std::uint64_t trials);

}  // namespace prophet
