#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "prophet/torus.hpp"

namespace prophet {

/// Vertex list (one column per vertex), counter-clockwise.
using Polygon = Eigen::Matrix<double, 2, Eigen::Dynamic>;

/// Voronoi cell of one site, expressed in the site-centered frame
/// [x-1/2, x+1/2] x [y-1/2, y+1/2]: every torus point has exactly one
/// representative there, so a cell is a single convex polygon even when it
/// wraps across the fundamental square.
struct VoronoiCell {
    std::uint32_t site_index = 0;
    Polygon polygon;
    double area = 0.0;
};

struct VoronoiDiagram {
    std::vector<TorusPoint> sites;
    std::vector<VoronoiCell> cells;
};

struct IndexedArea {
    std::uint32_t index = 0;
    double area = 0.0;
};

struct AreaEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
};

/// Sites closer than this (torus metric) are rejected as coincident.
inline constexpr double kCoincidentDistance = 1e-12;

/// Exact (double precision) Voronoi diagram of `sites` on the unit torus.
/// Each cell starts as the unit square centered on its site and is clipped
/// by perpendicular bisectors against all nine planar copies of the other
/// sites; neighbors are enumerated in grid rings and the search stops once
/// the remaining sites are farther than twice the cell's current radius.
///
/// Throws std::invalid_argument on empty input or coincident sites.
VoronoiDiagram build_voronoi(std::span<const TorusPoint> sites);

/// Same contract, clipping every cell against all 9(n-1) copies without any
/// pruning. O(n^2); reference route for testing build_voronoi.
VoronoiDiagram build_voronoi_unpruned(std::span<const TorusPoint> sites);

/// Shoelace area; throws std::invalid_argument("degenerate cell") for fewer
/// than three vertices or non-positive area.
double polygon_area(const Polygon& polygon);
double cell_area(const VoronoiCell& cell);

/// Argmax of cell areas, ties to the smallest site index.
IndexedArea largest_cell(const VoronoiDiagram& diagram);

/// Monte Carlo area of one cell: fraction of `samples` uniform torus points
/// whose brute-force nearest site is `site_index`, with its binomial
/// standard error.
AreaEstimate mc_area_oracle(std::span<const TorusPoint> sites, std::size_t site_index,
                            std::size_t samples, std::uint64_t seed);

/// All cells at once from one sample set; entry i equals
/// mc_area_oracle(sites, i, samples, seed).
std::vector<AreaEstimate> mc_area_oracle_all(std::span<const TorusPoint> sites,
                                             std::size_t samples, std::uint64_t seed);

/// Planar (not toroidal) estimate of area(D_p)/area(C) for the unit square
/// C, where D_p holds the points strictly closer to p than to the boundary
/// of C.
double point_vs_boundary_fraction(const Eigen::Vector2d& p, std::size_t inner_samples,
                                  std::uint64_t seed);

}  // namespace prophet
