#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace prophet {

/// Outcome of throwing n balls into m bins.
struct BinCounts {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::vector<std::uint32_t> counts;
};

struct OccupancyBounds {
    double lower = 0.0;
    double upper = 0.0;

    bool contains(double v) const { return lower <= v && v <= upper; }
};

/// Each ball lands in an independent uniform bin. Deterministic in `seed`.
BinCounts throw_balls(std::uint64_t n, std::uint64_t m, std::uint64_t seed);

/// Number of bins holding exactly k balls.
std::uint64_t count_bins_with(std::uint32_t k, const BinCounts& bins);

/// m = max(1, round(beta * n / log n)).
std::uint64_t bins_for_beta(std::uint64_t n, double beta);

/// Expected empty-bin count window (beta n^{1-1/beta} / (2 log n), beta n^{1-1/beta} / log n).
/// Requires beta >= 4 and log n > beta.
OccupancyBounds expected_bounds_X0(std::uint64_t n, double beta);

/// Expected singleton-bin count window (n^{1-1/beta} / 2, 2 n^{1-1/beta}).
OccupancyBounds expected_bounds_X1(std::uint64_t n, double beta);

/// High-probability floor on singleton bins: n^{1-1/beta} / (4 log n).
double singleton_floor(std::uint64_t n, double beta);

/// min(1, 2 exp(-lambda^2 / (2 sum c_i^2))), the martingale tail as printed.
double azuma_tail(double lambda, std::span<const double> c);

}  // namespace prophet
