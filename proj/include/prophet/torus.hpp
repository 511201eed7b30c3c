#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace prophet {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

/// Per-coordinate wrapped difference q - p, each component in [-1/2, 1/2].
/// Inputs are expected to be canonical (coordinates in [0,1)).
template <typename DerivedP, typename DerivedQ>
Vec2<typename DerivedP::Scalar> torus_delta(const Eigen::MatrixBase<DerivedP>& p,
                                            const Eigen::MatrixBase<DerivedQ>& q) {
    using Scalar = typename DerivedP::Scalar;
    Vec2<Scalar> d = q - p;
    for (int k = 0; k < 2; ++k) {
        if (d[k] > Scalar(0.5)) {
            d[k] -= Scalar(1);
        } else if (d[k] < Scalar(-0.5)) {
            d[k] += Scalar(1);
        }
    }
    return d;
}

/// Squared torus distance: sum of min(|dp|, 1-|dp|)^2 over coordinates.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar torus_distance_squared(const Eigen::MatrixBase<DerivedP>& p,
                                                 const Eigen::MatrixBase<DerivedQ>& q) {
    using Scalar = typename DerivedP::Scalar;
    Scalar s(0);
    for (int k = 0; k < 2; ++k) {
        const Scalar a = std::abs(p[k] - q[k]);
        const Scalar w = std::min(a, Scalar(1) - a);
        s += w * w;
    }
    return s;
}

template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar torus_distance(const Eigen::MatrixBase<DerivedP>& p,
                                         const Eigen::MatrixBase<DerivedQ>& q) {
    using std::sqrt;
    return sqrt(torus_distance_squared(p, q));
}

/// A point of the unit torus [0,1)^2. Only constructible through
/// canonicalize(), so the half-open invariant always holds.
class TorusPoint {
public:
    TorusPoint() = default;

    double x() const { return v_.x(); }
    double y() const { return v_.y(); }
    const Eigen::Vector2d& vec() const { return v_; }

    friend bool operator==(const TorusPoint& a, const TorusPoint& b) { return a.v_ == b.v_; }

    friend TorusPoint canonicalize(double x, double y);

private:
    explicit TorusPoint(const Eigen::Vector2d& v) : v_(v) {}
    Eigen::Vector2d v_ = Eigen::Vector2d::Zero();
};

/// (x mod 1, y mod 1) in [0,1). Throws std::invalid_argument on non-finite input.
TorusPoint canonicalize(double x, double y);

inline TorusPoint canonicalize(const Eigen::Vector2d& v) { return canonicalize(v.x(), v.y()); }

inline double torus_distance(const TorusPoint& p, const TorusPoint& q) {
    return torus_distance(p.vec(), q.vec());
}

inline double torus_distance_squared(const TorusPoint& p, const TorusPoint& q) {
    return torus_distance_squared(p.vec(), q.vec());
}

/// Uniform g x g bucket grid over [0,1)^2 holding site indices, with
/// wraparound neighbor enumeration. Sites may be appended after
/// construction (the game engine grows a prefix index one point at a time);
/// queries only see what has been inserted.
class GridIndex {
public:
    GridIndex(std::span<const TorusPoint> sites, int resolution);

    /// Empty index ready for insert().
    explicit GridIndex(int resolution);

    int resolution() const { return g_; }
    std::size_t size() const { return points_.size(); }

    /// Appends a site; its index is the previous size().
    std::uint32_t insert(const TorusPoint& p);

    const TorusPoint& site(std::size_t i) const { return points_[i]; }
    std::span<const TorusPoint> sites() const { return points_; }

    int bucket_coord(double c) const;
    std::span<const std::uint32_t> bucket(int bx, int by) const;

    /// Smallest torus distance from `q` to an indexed site other than
    /// `exclude` (pass size() or larger to exclude nothing). Returns +inf
    /// when no candidate exists.
    double nearest_distance(const TorusPoint& q, std::size_t exclude) const;

    /// True iff some indexed site lies at torus distance strictly less than `r`.
    bool any_within(const TorusPoint& q, double r) const;

    /// Calls `fn(index)` for every site at torus distance < r from q.
    void for_each_within(const TorusPoint& q, double r,
                         const std::function<void(std::uint32_t)>& fn) const;

    /// Visits buckets in rings of increasing wrapped Chebyshev distance
    /// around q's bucket. `visit(index)` is called for every site in ring k;
    /// after ring k completes, `keep_going(k)` decides whether to continue.
    /// Every site is visited at most once; when rings would wrap onto
    /// themselves the remaining buckets are visited in one final pass.
    template <typename Visit, typename KeepGoing>
    void ring_search(const TorusPoint& q, Visit&& visit, KeepGoing&& keep_going) const;

private:
    int wrap(int c) const { return ((c % g_) + g_) % g_; }
    int ring_of(int bx, int by, int cx, int cy) const;

    int g_;
    std::vector<TorusPoint> points_;
    std::vector<std::vector<std::uint32_t>> buckets_;
};

/// Resolution ceil(sqrt(n)), at least 1.
int default_grid_resolution(std::size_t n);

GridIndex build_grid_index(std::span<const TorusPoint> sites, int resolution);
GridIndex build_grid_index(std::span<const TorusPoint> sites);

/// min over j != i of torus_distance(sites[i], sites[j]), via ring search.
/// Throws std::invalid_argument("no other site") for fewer than two sites.
double nearest_other_site_distance(std::size_t i, std::span<const TorusPoint> sites,
                                   const GridIndex& index);

template <typename Visit, typename KeepGoing>
void GridIndex::ring_search(const TorusPoint& q, Visit&& visit, KeepGoing&& keep_going) const {
    const int cx = bucket_coord(q.x());
    const int cy = bucket_coord(q.y());
    for (int k = 0;; ++k) {
        if (2 * k + 1 >= g_) {
            // The ring would wrap; sweep every bucket not yet covered.
            for (int by = 0; by < g_; ++by) {
                for (int bx = 0; bx < g_; ++bx) {
                    if (ring_of(bx, by, cx, cy) < k) continue;
                    for (std::uint32_t s : buckets_[static_cast<std::size_t>(by) * g_ + bx]) visit(s);
                }
            }
            return;
        }
        if (k == 0) {
            for (std::uint32_t s : bucket(cx, cy)) visit(s);
        } else {
            for (int dx = -k; dx <= k; ++dx) {
                for (std::uint32_t s : bucket(wrap(cx + dx), wrap(cy - k))) visit(s);
                for (std::uint32_t s : bucket(wrap(cx + dx), wrap(cy + k))) visit(s);
            }
            for (int dy = -k + 1; dy <= k - 1; ++dy) {
                for (std::uint32_t s : bucket(wrap(cx - k), wrap(cy + dy))) visit(s);
                for (std::uint32_t s : bucket(wrap(cx + k), wrap(cy + dy))) visit(s);
            }
        }
        if (!keep_going(k)) return;
    }
}

}  // namespace prophet
