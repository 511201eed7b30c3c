#include "prophet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace prophet {

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

SummaryStats summarize(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    SummaryStats s;
    s.count = sorted.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.count);
    if (s.count > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.std = std::sqrt(ss / static_cast<double>(s.count - 1));
    }
    s.min = sorted.front();
    s.max = sorted.back();
    s.median = quantile_sorted(sorted, 0.5);
    s.q05 = quantile_sorted(sorted, 0.05);
    s.q95 = quantile_sorted(sorted, 0.95);
    s.ci95_halfwidth = 1.96 * s.std / std::sqrt(static_cast<double>(s.count));
    return s;
}

double binomial_se(double p, std::uint64_t trials) {
    if (trials == 0) return 0.0;
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

}  // namespace prophet
