#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "prophet/game.hpp"
#include "prophet/rng.hpp"
#include "prophet/voronoi.hpp"

using namespace prophet;

namespace {

std::vector<TorusPoint> random_sites(std::size_t n, std::uint64_t seed) {
    return generate_stream(n, seed);
}

double total_area(const VoronoiDiagram& d) {
    double s = 0.0;
    for (const auto& c : d.cells) s += c.area;
    return s;
}

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() * b.y() - a.y() * b.x();
}

void check_cell_shape(const VoronoiCell& cell, const TorusPoint& site) {
    const Polygon& poly = cell.polygon;
    const Eigen::Index m = poly.cols();
    REQUIRE(m >= 3);
    for (Eigen::Index k = 0; k < m; ++k) {
        const Eigen::Vector2d a = poly.col(k);
        const Eigen::Vector2d b = poly.col((k + 1) % m);
        const Eigen::Vector2d c = poly.col((k + 2) % m);
        // Convex and counter-clockwise.
        REQUIRE(cross(b - a, c - b) >= -1e-12);
        // Site strictly inside.
        REQUIRE(cross(b - a, site.vec() - a) > 1e-12 * (b - a).norm());
        // Inside the closed unit square centered at the site.
        REQUIRE(std::abs(a.x() - site.x()) <= 0.5 + 1e-12);
        REQUIRE(std::abs(a.y() - site.y()) <= 0.5 + 1e-12);
    }
    REQUIRE(std::abs(polygon_area(poly) - cell.area) <= 1e-12);
}

}  // namespace

TEST_CASE("cell_area closed forms") {
    Polygon square(2, 4);
    square << 0, 1, 1, 0,
              0, 0, 1, 1;
    CHECK(polygon_area(square) == doctest::Approx(1.0));

    Polygon rect(2, 4);
    rect << 0, 0.5, 0.5, 0,
            0, 0, 1, 1;
    CHECK(polygon_area(rect) == doctest::Approx(0.5));

    const double r = 0.3;
    Polygon hex(2, 6);
    for (int k = 0; k < 6; ++k) {
        hex(0, k) = r * std::cos(k * std::numbers::pi / 3);
        hex(1, k) = r * std::sin(k * std::numbers::pi / 3);
    }
    CHECK(polygon_area(hex) == doctest::Approx(1.5 * std::sqrt(3.0) * r * r).epsilon(1e-14));

    Polygon two(2, 2);
    two << 0, 1, 0, 1;
    CHECK_THROWS_WITH(polygon_area(two), "degenerate cell");
    Polygon flat(2, 3);
    flat << 0, 1, 2, 0, 1, 2;
    CHECK_THROWS_WITH(polygon_area(flat), "degenerate cell");
    VoronoiCell cell{0, square, 1.0};
    CHECK(cell_area(cell) == doctest::Approx(1.0));
}

TEST_CASE("single site owns the whole torus") {
    const std::vector<TorusPoint> s{canonicalize(0.3, 0.8)};
    const auto d = build_voronoi(s);
    REQUIRE(d.cells.size() == 1);
    CHECK(d.cells[0].area == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.cells[0].polygon.cols() == 4);
    CHECK(d.cells[0].polygon.row(0).minCoeff() == doctest::Approx(-0.2));
    CHECK(d.cells[0].polygon.row(1).maxCoeff() == doctest::Approx(1.3));
    const auto big = largest_cell(d);
    CHECK(big.index == 0);
    CHECK(big.area == doctest::Approx(1.0));
}

TEST_CASE("two symmetric sites split the torus in half") {
    const std::vector<TorusPoint> s{canonicalize(0.0, 0.0), canonicalize(0.5, 0.0)};
    const auto d = build_voronoi(s);
    CHECK(d.cells[0].area == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d.cells[1].area == doctest::Approx(0.5).epsilon(1e-14));
    // Site 0's strip is bounded by x = -0.25 and x = 0.25 in its frame.
    CHECK(d.cells[0].polygon.row(0).minCoeff() == doctest::Approx(-0.25));
    CHECK(d.cells[0].polygon.row(0).maxCoeff() == doctest::Approx(0.25));
    const auto big = largest_cell(d);
    CHECK(big.index == 0);
    CHECK(big.area == doctest::Approx(0.5));

    const std::vector<TorusPoint> t{canonicalize(0.0, 0.0), canonicalize(0.1, 0.0)};
    const auto e = build_voronoi(t);
    CHECK(e.cells[0].area == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(e.cells[1].area == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(e.cells[1].polygon.row(0).minCoeff() == doctest::Approx(0.05));
    CHECK(e.cells[1].polygon.row(0).maxCoeff() == doctest::Approx(0.55));
    CHECK(largest_cell(e).index == 0);
}

TEST_CASE("largest_cell breaks ties by smallest index") {
    VoronoiDiagram d;
    Polygon p(2, 3);
    p << 0, 1, 0, 0, 0, 1;
    d.cells = {{0, p, 0.2}, {1, p, 0.4}, {2, p, 0.4}, {3, p, 0.1}};
    const auto best = largest_cell(d);
    CHECK(best.index == 1);
    CHECK(best.area == 0.4);
}

TEST_CASE("invalid input is rejected") {
    CHECK_THROWS(build_voronoi(std::vector<TorusPoint>{}));
    const std::vector<TorusPoint> dup{canonicalize(0.2, 0.2), canonicalize(0.7, 0.1),
                                      canonicalize(0.2, 0.2)};
    CHECK_THROWS_WITH(build_voronoi(dup), "coincident sites");
    CHECK_THROWS_WITH(build_voronoi_unpruned(dup), "coincident sites");
    const std::vector<TorusPoint> near{canonicalize(0.2, 0.2), canonicalize(0.2 + 1e-13, 0.2)};
    CHECK_THROWS_WITH(build_voronoi(near), "coincident sites");
    // Coincident across the seam.
    const std::vector<TorusPoint> seam{canonicalize(0.0, 0.5), canonicalize(1.0 - 1e-16, 0.5)};
    CHECK_THROWS_WITH(build_voronoi(seam), "coincident sites");
}

TEST_CASE("tiling, containment and shape invariants") {
    for (std::size_t n : {1u, 2u, 3u, 10u, 100u, 1000u, 10000u}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto s = random_sites(n, 100 + seed);
            const auto d = build_voronoi(s);
            REQUIRE(d.cells.size() == n);
            CHECK(std::abs(total_area(d) - 1.0) <= 1e-9);
            if (n <= 1000) {
                for (std::size_t i = 0; i < n; ++i) {
                    REQUIRE(d.cells[i].site_index == i);
                    check_cell_shape(d.cells[i], s[i]);
                }
            }
        }
    }
}

TEST_CASE("vertex optimality against all sites") {
    for (std::size_t n : {2u, 5u, 30u, 500u}) {
        const auto s = random_sites(n, 9 + n);
        const auto d = build_voronoi(s);
        for (const auto& cell : d.cells) {
            const TorusPoint& own = s[cell.site_index];
            for (Eigen::Index k = 0; k < cell.polygon.cols(); ++k) {
                const TorusPoint v = canonicalize(cell.polygon.col(k));
                const double mine = torus_distance(v, own);
                for (const auto& other : s) REQUIRE(mine <= torus_distance(v, other) + 1e-9);
            }
        }
    }
}

TEST_CASE("pruned construction equals unpruned construction exactly") {
    for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 20u, 64u, 200u}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto s = random_sites(n, 500 + 10 * seed + n);
            const auto fast = build_voronoi(s);
            const auto slow = build_voronoi_unpruned(s);
            for (std::size_t i = 0; i < n; ++i) {
                REQUIRE(fast.cells[i].area == slow.cells[i].area);
                REQUIRE(fast.cells[i].polygon.cols() == slow.cells[i].polygon.cols());
                REQUIRE(fast.cells[i].polygon == slow.cells[i].polygon);
            }
        }
    }
}

TEST_CASE("small n cells bounded by two copies of the same site") {
    // Two sites on a diagonal: each cell is cut by several copies of the other.
    const std::vector<TorusPoint> s{canonicalize(0.1, 0.1), canonicalize(0.4, 0.5)};
    const auto d = build_voronoi(s);
    CHECK(std::abs(total_area(d) - 1.0) <= 1e-12);
    const auto oracle = mc_area_oracle_all(s, 200000, 3);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::abs(oracle[i].estimate - d.cells[i].area) <= 4 * oracle[i].standard_error);
    }
}

TEST_CASE("adding a site never grows an existing cell") {
    Rng rng(31);
    for (std::size_t n : {1u, 2u, 10u, 100u}) {
        for (int rep = 0; rep < 5; ++rep) {
            auto s = random_sites(n, 1000 + 7 * n + rep);
            const auto before = build_voronoi(s);
            s.push_back(canonicalize(rng.uniform(), rng.uniform()));
            const auto after = build_voronoi(s);
            for (std::size_t i = 0; i < n; ++i) {
                REQUIRE(after.cells[i].area <= before.cells[i].area + 1e-12);
            }
        }
    }
}

TEST_CASE("mc_area_oracle trivial cases") {
    const std::vector<TorusPoint> one{canonicalize(0.5, 0.5)};
    const auto a = mc_area_oracle(one, 0, 1000, 1);
    CHECK(a.estimate == 1.0);
    CHECK(a.standard_error == 0.0);

    const std::vector<TorusPoint> two{canonicalize(0.0, 0.0), canonicalize(0.5, 0.0)};
    const auto b = mc_area_oracle(two, 0, 1000000, 2);
    CHECK(std::abs(b.estimate - 0.5) <= 3 * 0.0005);

    const auto all = mc_area_oracle_all(two, 1000, 9);
    CHECK(all[1].estimate == mc_area_oracle(two, 1, 1000, 9).estimate);
}

TEST_CASE("exact areas agree with the Monte Carlo oracle") {
    SUBCASE("100 sites, each cell within 3 standard errors") {
        const auto s = random_sites(100, 4242);
        const auto d = build_voronoi(s);
        const auto est = mc_area_oracle_all(s, 1000000, 17);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(std::abs(est[i].estimate - d.cells[i].area) <= 3 * est[i].standard_error);
        }
    }
    SUBCASE("50 sites, at least 49 within 4 standard errors") {
        const auto s = random_sites(50, 4343);
        const auto d = build_voronoi(s);
        const auto est = mc_area_oracle_all(s, 1000000, 18);
        int good = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            good += std::abs(est[i].estimate - d.cells[i].area) <= 4 * est[i].standard_error;
        }
        CHECK(good >= 49);
    }
}

namespace {

// Midpoint-rule integration of the defining inequality on a res x res grid.
double grid_boundary_fraction(const Eigen::Vector2d& p, int res) {
    long hits = 0;
    for (int i = 0; i < res; ++i) {
        const double qx = (i + 0.5) / res;
        for (int j = 0; j < res; ++j) {
            const double qy = (j + 0.5) / res;
            const double b = std::min({qx, 1 - qx, qy, 1 - qy});
            const double dx = qx - p.x(), dy = qy - p.y();
            hits += dx * dx + dy * dy < b * b;
        }
    }
    return static_cast<double>(hits) / (static_cast<double>(res) * res);
}

}  // namespace

TEST_CASE("point versus square boundary") {
    SUBCASE("boundary point has measure-zero region") {
        CHECK(point_vs_boundary_fraction({0.0, 0.3}, 100000, 1) == 0.0);
        CHECK(point_vs_boundary_fraction({0.5, 1.0}, 100000, 2) == 0.0);
    }
    SUBCASE("points in the inner square clear 1/15") {
        const double side = 1.0 / (1.0 + 2.0 * std::sqrt(2.0));
        CHECK(side == doctest::Approx(0.261204).epsilon(1e-6));
        CHECK(side * side == doctest::Approx(0.068227).epsilon(1e-5));
        CHECK(side * side >= 1.0 / 15.0);
        Rng rng(8);
        for (int k = 0; k < 20; ++k) {
            const Eigen::Vector2d p(0.5 + side * (rng.uniform() - 0.5),
                                    0.5 + side * (rng.uniform() - 0.5));
            const std::size_t inner = 200000;
            const double f = point_vs_boundary_fraction(p, inner, 100 + k);
            const double se = std::sqrt(f * (1 - f) / inner);
            CHECK(f >= side * side - 4 * se);
        }
    }
    SUBCASE("center agrees with grid integration") {
        const Eigen::Vector2d c(0.5, 0.5);
        const double oracle = grid_boundary_fraction(c, 2000);
        CHECK(oracle > 1.0 / 15.0);
        const std::size_t inner = 1000000;
        const double f = point_vs_boundary_fraction(c, inner, 5);
        const double se = std::sqrt(f * (1 - f) / inner);
        CHECK(std::abs(f - oracle) <= 4 * se + 1e-3);
        MESSAGE("f(center) grid oracle = " << oracle);
    }
    CHECK_THROWS(point_vs_boundary_fraction({1.5, 0.5}, 10, 1));
    CHECK_THROWS(point_vs_boundary_fraction({0.5, 0.5}, 0, 1));
}
