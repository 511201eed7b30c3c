#include "prophet/occupancy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prophet/rng.hpp"

namespace prophet {

namespace {

void check_lemma_range(std::uint64_t n, double beta) {
    if (!(beta >= 4.0)) throw std::invalid_argument("lemma requires β ≥ 4");
    if (n < 2 || !(std::log(static_cast<double>(n)) > beta)) {
        throw std::invalid_argument("n too small: need log n > β");
    }
}

}  // namespace

BinCounts throw_balls(std::uint64_t n, std::uint64_t m, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need at least one ball");
    if (m < 1) throw std::invalid_argument("need at least one bin");
    BinCounts out{n, m, std::vector<std::uint32_t>(m, 0)};
    Rng rng(seed);
    for (std::uint64_t b = 0; b < n; ++b) ++out.counts[rng.uniform_index(m)];
    return out;
}

std::uint64_t count_bins_with(std::uint32_t k, const BinCounts& bins) {
    return static_cast<std::uint64_t>(std::count(bins.counts.begin(), bins.counts.end(), k));
}

std::uint64_t bins_for_beta(std::uint64_t n, double beta) {
    const double nd = static_cast<double>(n);
    const double log_n = std::log(nd);
    if (!(log_n > 0.0)) return 1;
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(beta * nd / log_n)));
}

OccupancyBounds expected_bounds_X0(std::uint64_t n, double beta) {
    check_lemma_range(n, beta);
    const double nd = static_cast<double>(n);
    const double upper = beta * std::pow(nd, 1.0 - 1.0 / beta) / std::log(nd);
    return {upper / 2.0, upper};
}

OccupancyBounds expected_bounds_X1(std::uint64_t n, double beta) {
    check_lemma_range(n, beta);
    const double core = std::pow(static_cast<double>(n), 1.0 - 1.0 / beta);
    return {core / 2.0, 2.0 * core};
}

double singleton_floor(std::uint64_t n, double beta) {
    check_lemma_range(n, beta);
    const double nd = static_cast<double>(n);
    return std::pow(nd, 1.0 - 1.0 / beta) / (4.0 * std::log(nd));
}

double azuma_tail(double lambda, std::span<const double> c) {
    if (c.empty()) throw std::invalid_argument("empty difference bounds");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    double sum_sq = 0.0;
    for (double ci : c) {
        if (!(ci > 0.0)) throw std::invalid_argument("difference bounds must be positive");
        sum_sq += ci * ci;
    }
    return std::min(1.0, 2.0 * std::exp(-lambda * lambda / (2.0 * sum_sq)));
}

}  // namespace prophet
