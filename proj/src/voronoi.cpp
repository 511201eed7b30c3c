#include "prophet/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "prophet/rng.hpp"

namespace prophet {

namespace {

// Half-plane normal . v <= offset in the frame centered on the cell's site.
// `key` identifies the generating line: 0..3 are the sides of the initial
// square, 4 + 9*j + copy is the bisector against copy `copy` of site j.
struct HalfPlane {
    Eigen::Vector2d normal;
    double offset;
    std::uint64_t key;
};

struct Vertex {
    Eigen::Vector2d at;
    HalfPlane out_edge;  // line supporting the edge that leaves this vertex
};

// Tolerance on signed distance to a clipping line.
constexpr double kOnLine = 1e-13;

HalfPlane bisector(const Eigen::Vector2d& d, std::uint32_t site, int copy) {
    return {d, 0.5 * d.squaredNorm(), 4 + 9 * static_cast<std::uint64_t>(site) + copy};
}

class CellClipper {
public:
    CellClipper() {
        const Eigen::Vector2d corners[4] = {{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}};
        const Eigen::Vector2d normals[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
        for (int k = 0; k < 4; ++k) {
            verts_.push_back({corners[k], {normals[k], 0.5, static_cast<std::uint64_t>(k)}});
        }
        radius2_ = 0.5;
    }

    double radius_squared() const { return radius2_; }

    void clip(const HalfPlane& h) {
        const std::size_t m = verts_.size();
        const double tol = kOnLine * h.normal.norm();
        side_.resize(m);
        bool any_out = false;
        for (std::size_t k = 0; k < m; ++k) {
            side_[k] = h.normal.dot(verts_[k].at) - h.offset;
            any_out = any_out || side_[k] > tol;
        }
        if (!any_out) return;

        out_.clear();
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t n = (k + 1) % m;
            const Vertex& a = verts_[k];
            const double sa = side_[k];
            const double sb = side_[n];
            const bool a_in = sa <= tol;
            const bool b_in = sb <= tol;
            if (a_in) {
                if (b_in) {
                    out_.push_back(a);
                } else if (sa >= -tol) {
                    out_.push_back({a.at, h});
                } else {
                    out_.push_back(a);
                    out_.push_back({crossing(a.at, verts_[n].at, sa, sb), h});
                }
            } else if (b_in && sb < -tol) {
                out_.push_back({crossing(a.at, verts_[n].at, sa, sb), a.out_edge});
            }
        }
        verts_.swap(out_);
        radius2_ = 0.0;
        for (const auto& v : verts_) radius2_ = std::max(radius2_, v.at.squaredNorm());
    }

    // Vertices recomputed as intersections of their two supporting lines and
    // rotated to start at the lowest-keyed edge, so that the result depends
    // only on the final set of lines and not on clipping order.
    Polygon finish(const Eigen::Vector2d& site, double& area) const {
        const std::size_t m = verts_.size();
        std::vector<Eigen::Vector2d> local(m);
        std::size_t start = 0;
        for (std::size_t k = 0; k < m; ++k) {
            const HalfPlane& in = verts_[(k + m - 1) % m].out_edge;
            const HalfPlane& out = verts_[k].out_edge;
            local[k] = intersect(in, out, verts_[k].at);
            if (out.key < verts_[start].out_edge.key) start = k;
        }
        Polygon poly(2, static_cast<Eigen::Index>(m));
        double twice = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const Eigen::Vector2d& a = local[(start + k) % m];
            const Eigen::Vector2d& b = local[(start + k + 1) % m];
            twice += a.x() * b.y() - b.x() * a.y();
            poly.col(static_cast<Eigen::Index>(k)) = site + a;
        }
        area = 0.5 * twice;
        return poly;
    }

private:
    static Eigen::Vector2d crossing(const Eigen::Vector2d& a, const Eigen::Vector2d& b, double sa,
                                    double sb) {
        const double t = sa / (sa - sb);
        return a + t * (b - a);
    }

    static Eigen::Vector2d intersect(const HalfPlane& l1, const HalfPlane& l2,
                                     const Eigen::Vector2d& fallback) {
        const double det = l1.normal.x() * l2.normal.y() - l1.normal.y() * l2.normal.x();
        if (std::abs(det) < 1e-12 * l1.normal.norm() * l2.normal.norm()) return fallback;
        return {(l1.offset * l2.normal.y() - l2.offset * l1.normal.y()) / det,
                (l1.normal.x() * l2.offset - l2.normal.x() * l1.offset) / det};
    }

    std::vector<Vertex> verts_;
    std::vector<Vertex> out_;
    std::vector<double> side_;
    double radius2_;
};

void reject_coincident(double dist2) {
    if (dist2 < kCoincidentDistance * kCoincidentDistance) {
        throw std::invalid_argument("coincident sites");
    }
}

// Clips by the copies of site j that can still reach the cell.
void clip_against_site(CellClipper& clipper, const Eigen::Vector2d& p, const Eigen::Vector2d& q,
                       std::uint32_t j, bool prune) {
    const Eigen::Vector2d raw = q - p;
    for (int a = -1; a <= 1; ++a) {
        for (int b = -1; b <= 1; ++b) {
            const Eigen::Vector2d d = raw + Eigen::Vector2d(a, b);
            if (prune && d.squaredNorm() >= 4.0 * clipper.radius_squared()) continue;
            clipper.clip(bisector(d, j, (a + 1) * 3 + (b + 1)));
        }
    }
}

VoronoiCell finish_cell(const CellClipper& clipper, const TorusPoint& site, std::uint32_t i) {
    VoronoiCell cell;
    cell.site_index = i;
    cell.polygon = clipper.finish(site.vec(), cell.area);
    return cell;
}

}  // namespace

VoronoiDiagram build_voronoi(std::span<const TorusPoint> sites) {
    if (sites.empty()) throw std::invalid_argument("empty site set");
    const GridIndex index = build_grid_index(sites);
    const double cell_width = 1.0 / index.resolution();

    VoronoiDiagram diagram;
    diagram.sites.assign(sites.begin(), sites.end());
    diagram.cells.reserve(sites.size());
    for (std::uint32_t i = 0; i < sites.size(); ++i) {
        const Eigen::Vector2d& p = sites[i].vec();
        CellClipper clipper;
        index.ring_search(
            sites[i],
            [&](std::uint32_t j) {
                if (j == i) return;
                const double dist2 = torus_distance_squared(p, sites[j].vec());
                reject_coincident(dist2);
                if (dist2 >= 4.0 * clipper.radius_squared()) return;
                clip_against_site(clipper, p, sites[j].vec(), j, true);
            },
            [&](int k) {
                const double reach = k * cell_width;
                return reach * reach <= 4.0 * clipper.radius_squared();
            });
        diagram.cells.push_back(finish_cell(clipper, sites[i], i));
    }
    return diagram;
}

VoronoiDiagram build_voronoi_unpruned(std::span<const TorusPoint> sites) {
    if (sites.empty()) throw std::invalid_argument("empty site set");
    VoronoiDiagram diagram;
    diagram.sites.assign(sites.begin(), sites.end());
    diagram.cells.reserve(sites.size());
    for (std::uint32_t i = 0; i < sites.size(); ++i) {
        const Eigen::Vector2d& p = sites[i].vec();
        CellClipper clipper;
        for (std::uint32_t j = 0; j < sites.size(); ++j) {
            if (j == i) continue;
            reject_coincident(torus_distance_squared(p, sites[j].vec()));
            clip_against_site(clipper, p, sites[j].vec(), j, false);
        }
        diagram.cells.push_back(finish_cell(clipper, sites[i], i));
    }
    return diagram;
}

double polygon_area(const Polygon& polygon) {
    const Eigen::Index m = polygon.cols();
    if (m < 3) throw std::invalid_argument("degenerate cell");
    // Shoelace relative to the first vertex.
    const Eigen::Vector2d origin = polygon.col(0);
    double twice = 0.0;
    for (Eigen::Index k = 1; k + 1 < m; ++k) {
        const Eigen::Vector2d a = polygon.col(k) - origin;
        const Eigen::Vector2d b = polygon.col(k + 1) - origin;
        twice += a.x() * b.y() - b.x() * a.y();
    }
    if (!(twice > 0.0)) throw std::invalid_argument("degenerate cell");
    return 0.5 * twice;
}

double cell_area(const VoronoiCell& cell) { return polygon_area(cell.polygon); }

IndexedArea largest_cell(const VoronoiDiagram& diagram) {
    IndexedArea best{0, -std::numeric_limits<double>::infinity()};
    for (const auto& cell : diagram.cells) {
        if (cell.area > best.area) best = {cell.site_index, cell.area};
    }
    return best;
}

std::vector<AreaEstimate> mc_area_oracle_all(std::span<const TorusPoint> sites, std::size_t samples,
                                             std::uint64_t seed) {
    if (sites.empty()) throw std::invalid_argument("empty site set");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    Rng rng(seed);
    std::vector<std::size_t> hits(sites.size(), 0);
    for (std::size_t s = 0; s < samples; ++s) {
        const Eigen::Vector2d q(rng.uniform(), rng.uniform());
        std::size_t best = 0;
        double best2 = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < sites.size(); ++j) {
            const double d2 = torus_distance_squared(q, sites[j].vec());
            if (d2 < best2) {
                best2 = d2;
                best = j;
            }
        }
        ++hits[best];
    }
    std::vector<AreaEstimate> out;
    out.reserve(sites.size());
    const double total = static_cast<double>(samples);
    for (std::size_t h : hits) {
        const double p = static_cast<double>(h) / total;
        out.push_back({p, std::sqrt(p * (1.0 - p) / total)});
    }
    return out;
}

AreaEstimate mc_area_oracle(std::span<const TorusPoint> sites, std::size_t site_index,
                            std::size_t samples, std::uint64_t seed) {
    if (site_index >= sites.size()) throw std::out_of_range("site index out of range");
    return mc_area_oracle_all(sites, samples, seed)[site_index];
}

double point_vs_boundary_fraction(const Eigen::Vector2d& p, std::size_t inner_samples,
                                  std::uint64_t seed) {
    if (!(p.x() >= 0.0 && p.x() <= 1.0 && p.y() >= 0.0 && p.y() <= 1.0)) {
        throw std::invalid_argument("point outside the unit square");
    }
    if (inner_samples < 1) throw std::invalid_argument("inner_samples must be >= 1");
    Rng rng(seed);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < inner_samples; ++s) {
        const double qx = rng.uniform();
        const double qy = rng.uniform();
        const double boundary = std::min({qx, 1.0 - qx, qy, 1.0 - qy});
        const double dx = qx - p.x();
        const double dy = qy - p.y();
        if (dx * dx + dy * dy < boundary * boundary) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(inner_samples);
}

}  // namespace prophet
