#include "prophet/torus.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace prophet {

namespace {

double wrap_unit(double c) {
    double w = c - std::floor(c);
    // c slightly below an integer can round up to exactly 1.
    if (w >= 1.0) w = 0.0;
    return w;
}

}  // namespace

TorusPoint canonicalize(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw std::invalid_argument("non-finite coordinate");
    }
    return TorusPoint(Eigen::Vector2d(wrap_unit(x), wrap_unit(y)));
}

GridIndex::GridIndex(int resolution) : g_(resolution) {
    if (resolution < 1) throw std::invalid_argument("grid resolution must be >= 1");
    buckets_.resize(static_cast<std::size_t>(g_) * static_cast<std::size_t>(g_));
}

GridIndex::GridIndex(std::span<const TorusPoint> sites, int resolution) : GridIndex(resolution) {
    points_.reserve(sites.size());
    for (const auto& s : sites) insert(s);
}

std::uint32_t GridIndex::insert(const TorusPoint& p) {
    const auto id = static_cast<std::uint32_t>(points_.size());
    points_.push_back(p);
    const int bx = bucket_coord(p.x());
    const int by = bucket_coord(p.y());
    buckets_[static_cast<std::size_t>(by) * g_ + bx].push_back(id);
    return id;
}

int GridIndex::bucket_coord(double c) const {
    const int b = static_cast<int>(c * g_);
    return std::clamp(b, 0, g_ - 1);
}

std::span<const std::uint32_t> GridIndex::bucket(int bx, int by) const {
    return buckets_[static_cast<std::size_t>(by) * g_ + bx];
}

int GridIndex::ring_of(int bx, int by, int cx, int cy) const {
    int dx = std::abs(bx - cx);
    int dy = std::abs(by - cy);
    dx = std::min(dx, g_ - dx);
    dy = std::min(dy, g_ - dy);
    return std::max(dx, dy);
}

double GridIndex::nearest_distance(const TorusPoint& q, std::size_t exclude) const {
    double best2 = std::numeric_limits<double>::infinity();
    const double cell = 1.0 / g_;
    ring_search(
        q,
        [&](std::uint32_t s) {
            if (s == exclude) return;
            best2 = std::min(best2, torus_distance_squared(q, points_[s]));
        },
        [&](int k) {
            // Unvisited sites sit at least k bucket widths away.
            const double reach = k * cell;
            return best2 > reach * reach;
        });
    return std::sqrt(best2);
}

void GridIndex::for_each_within(const TorusPoint& q, double r,
                                const std::function<void(std::uint32_t)>& fn) const {
    const double r2 = r * r;
    const double cell = 1.0 / g_;
    ring_search(
        q,
        [&](std::uint32_t s) {
            if (torus_distance_squared(q, points_[s]) < r2) fn(s);
        },
        [&](int k) { return k * cell < r; });
}

bool GridIndex::any_within(const TorusPoint& q, double r) const {
    if (points_.empty() || r <= 0.0) return false;
    const double r2 = r * r;
    const double cell = 1.0 / g_;
    bool found = false;
    ring_search(
        q,
        [&](std::uint32_t s) {
            if (!found && torus_distance_squared(q, points_[s]) < r2) found = true;
        },
        [&](int k) { return !found && k * cell < r; });
    return found;
}

int default_grid_resolution(std::size_t n) {
    int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    return std::max(g, 1);
}

GridIndex build_grid_index(std::span<const TorusPoint> sites, int resolution) {
    return GridIndex(sites, resolution);
}

GridIndex build_grid_index(std::span<const TorusPoint> sites) {
    return GridIndex(sites, default_grid_resolution(sites.size()));
}

double nearest_other_site_distance(std::size_t i, std::span<const TorusPoint> sites,
                                   const GridIndex& index) {
    if (sites.size() < 2) throw std::invalid_argument("no other site");
    if (i >= sites.size()) throw std::out_of_range("site index out of range");
    return index.nearest_distance(sites[i], i);
}

}  // namespace prophet
