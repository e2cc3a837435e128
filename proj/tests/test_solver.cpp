#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pdisp/checker.hpp"
#include "pdisp/layout_opt.hpp"
#include "pdisp/solver.hpp"
#include "support/oracles.hpp"

using namespace pdisp;

namespace {

Instance unit_square_inst() {
    return Instance("square", Polygon(oracles::unit_square_ring()), {});
}

}  // namespace

TEST_CASE("initial distance estimate") {
    const Instance sq = unit_square_inst();
    CHECK(initial_distance(sq, 1, std::numbers::pi / 4.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(initial_distance(sq, 100, 0.85) ==
          doctest::Approx(2.0 * std::sqrt(0.85 / (100.0 * std::numbers::pi))).epsilon(1e-12));
    CHECK(initial_distance(sq, 100, 0.85) == doctest::Approx(0.1040314).epsilon(1e-5));

    // Doubling the area scales the estimate by sqrt(2).
    const double side = std::sqrt(2.0);
    const Instance big("big", Polygon({{0, 0}, {side, 0}, {side, side}, {0, side}}), {});
    CHECK(initial_distance(big, 7, 0.85) ==
          doctest::Approx(std::sqrt(2.0) * initial_distance(sq, 7, 0.85)).epsilon(1e-12));

    CHECK_THROWS(initial_distance(sq, 0, 0.85));
    CHECK_THROWS(initial_distance(sq, 5, 0.0));
}

TEST_CASE("random layouts fill the container bounding box") {
    const Instance ell("lshape", Polygon(oracles::lshape_ring()), {});
    Rng rng(12);
    const Layout layout = random_layout(ell, 500, rng);
    REQUIRE(layout.size() == 500);
    for (const Point2& pt : layout.points) {
        CHECK(pt.x >= 0.0);
        CHECK(pt.x <= 2.0);
        CHECK(pt.y >= 0.0);
        CHECK(pt.y <= 2.0);
    }

    // Reproducible for a fixed seed.
    Rng rng2(12);
    const Layout again = random_layout(ell, 500, rng2);
    for (std::size_t i = 0; i < 500; ++i) {
        CHECK(again.points[i].x == layout.points[i].x);
        CHECK(again.points[i].y == layout.points[i].y);
    }
}

TEST_CASE("random layouts are uniform on the box (chi-square, 10x10 grid)") {
    const Instance sq = unit_square_inst();
    Rng rng(99);
    const int n = 100000;
    std::vector<int> counts(100, 0);
    const Layout layout = random_layout(sq, n, rng);
    for (const Point2& pt : layout.points) {
        const int ix = std::min(9, static_cast<int>(pt.x * 10.0));
        const int iy = std::min(9, static_cast<int>(pt.y * 10.0));
        counts[10 * iy + ix] += 1;
    }
    const double expected = n / 100.0;
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 134.642);  // chi-square 0.99 quantile, 99 dof
}

TEST_CASE("solve finds the two-circle analytic optimum") {
    const Instance sq = unit_square_inst();
    RunConfig cfg = RunConfig::defaults_for(Variant::WithBoundary);
    cfg.p = 2;
    cfg.time_limit = 5.0;
    cfg.seed = 3;
    const RunResult res = solve(sq, cfg);
    CHECK(res.best_radius == doctest::Approx((2.0 - std::sqrt(2.0)) / 2.0).epsilon(1e-8));
    CHECK(res.best_dist == doctest::Approx(2.0 * res.best_radius).epsilon(1e-12));
    CHECK(check_layout(sq, res.best_layout.points, res.best_dist, 0.5).pass(1e-9));

    // Improvement history is strictly increasing and certified.
    for (std::size_t k = 1; k < res.history.size(); ++k)
        CHECK(res.history[k].min_dist > res.history[k - 1].min_dist);
    REQUIRE(!res.history.empty());
    CHECK(res.history.back().min_dist == res.best_dist);
}

TEST_CASE("deterministic for a fixed seed and restart budget") {
    const Instance sq = unit_square_inst();
    RunConfig cfg = RunConfig::defaults_for(Variant::WithBoundary);
    cfg.p = 6;
    cfg.time_limit = 600.0;  // non-binding
    cfg.max_restarts = 4;
    cfg.seed = 42;
    const RunResult a = solve(sq, cfg);
    const RunResult b = solve(sq, cfg);
    CHECK(a.best_dist == b.best_dist);  // bit-identical
    CHECK(a.restarts == b.restarts);
    REQUIRE(a.best_layout.size() == b.best_layout.size());
    for (std::size_t i = 0; i < a.best_layout.size(); ++i) {
        CHECK(a.best_layout.points[i].x == b.best_layout.points[i].x);
        CHECK(a.best_layout.points[i].y == b.best_layout.points[i].y);
    }
}

TEST_CASE("time limit honored within one inner iteration of grace") {
    const Instance sq = unit_square_inst();
    RunConfig cfg = RunConfig::defaults_for(Variant::WithBoundary);
    cfg.p = 20;
    cfg.time_limit = 1.0;
    cfg.seed = 7;
    const RunResult res = solve(sq, cfg);
    // Grace: the tabu iteration in flight at expiry plus one full distance
    // adjustment on its result.
    CHECK(res.elapsed_total < 6.0);
    CHECK(check_layout(sq, res.best_layout.points, res.best_dist, 0.5).pass(1e-9));
}

TEST_CASE("disabled inner loops reduce the driver to scripted restarts") {
    const Instance sq = unit_square_inst();
    RunConfig cfg = RunConfig::defaults_for(Variant::WithBoundary);
    cfg.p = 5;
    cfg.time_limit = 600.0;
    cfg.max_restarts = 4;
    cfg.seed = 11;
    cfg.tabu.beta_max = -1;  // no insertion iterations
    cfg.mbh.theta_max = 0;   // no basin hopping
    const RunResult via_solver = solve(sq, cfg);

    // The same loop written out longhand, sharing the random stream shape:
    // random start, local minimization, unconditional first adjustment (via
    // the realized-distance fallback when infeasible), then restarts at the
    // incumbent distance.
    Rng rng(cfg.seed);
    const double d_init = initial_distance(sq, cfg.p, cfg.rho);
    double best_dist = 0.0;
    bool have_best = false;
    auto realized = [&](const Layout& lay) {
        double mp = std::numeric_limits<double>::infinity(), mc = mp;
        for (std::size_t i = 0; i < lay.size(); ++i)
            for (std::size_t j = i + 1; j < lay.size(); ++j)
                mp = std::min(mp, dist(lay.points[i], lay.points[j]));
        for (const Point2& pt : lay.points) mc = std::min(mc, sq.boundary_distance(pt));
        return std::min(mp, mc / cfg.params.lambda);
    };
    for (int restart = 0; restart < 4; ++restart) {
        const double dist_target = have_best ? best_dist : d_init;
        const LayoutOptResult lo =
            minimize_energy(sq, random_layout(sq, cfg.p, rng), dist_target, cfg.params);
        double anchor = dist_target;
        bool feasible = lo.energy < kFeasibleEnergy;
        if (!feasible && restart == 0) {
            anchor = realized(lo.layout);
            feasible = anchor > 0.0 && std::isfinite(anchor) &&
                       check_layout(sq, lo.layout.points, anchor, cfg.params.lambda)
                           .pass(1e-9);
        }
        if (!feasible) continue;
        const AdjustResult adj = adjust_distance(sq, lo.layout, anchor, cfg.params, cfg.sumt);
        if (check_layout(sq, adj.layout.points, adj.min_dist, cfg.params.lambda).pass(1e-9) &&
            (!have_best || adj.min_dist > best_dist)) {
            best_dist = adj.min_dist;
            have_best = true;
        }
    }
    REQUIRE(have_best);
    CHECK(via_solver.best_dist == best_dist);  // bit-identical
}

TEST_CASE("point arrangement: five points reach corners plus center") {
    const Instance sq = unit_square_inst();
    RunConfig cfg = RunConfig::defaults_for(Variant::WithoutBoundary);
    cfg.p = 5;
    cfg.time_limit = 6.0;
    cfg.seed = 2;
    const RunResult res = solve(sq, cfg);
    // Corners plus center, inset by the clearance lambda * D on each wall.
    const double lambda = cfg.params.lambda;
    const double expected = std::sqrt(0.5) / (1.0 + std::sqrt(2.0) * lambda);
    CHECK(res.best_dist == doctest::Approx(expected).epsilon(2e-3));
    CHECK(check_layout(sq, res.best_layout.points, res.best_dist, lambda).pass(1e-9));
}

TEST_CASE("single point: the incircle of the region") {
    const Instance sq = unit_square_inst();
    RunConfig cfg = RunConfig::defaults_for(Variant::WithBoundary);
    cfg.p = 1;
    cfg.time_limit = 2.0;
    cfg.seed = 1;
    const RunResult res = solve(sq, cfg);
    CHECK(res.best_radius == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("comparison variants produce certified results") {
    const Instance sq = unit_square_inst();
    for (const Algo algo : {Algo::TsgoNoMbh, Algo::BhStar, Algo::MbhStar}) {
        RunConfig cfg = RunConfig::defaults_for(Variant::WithBoundary);
        cfg.algo = algo;
        cfg.p = 4;
        cfg.time_limit = 2.0;
        cfg.seed = 5;
        const RunResult res = solve(sq, cfg);
        CAPTURE(algo_name(algo));
        CHECK(res.best_dist > 0.3);
        CHECK(check_layout(sq, res.best_layout.points, res.best_dist, 0.5).pass(1e-9));
    }
}

TEST_CASE("algorithm names round-trip") {
    for (const Algo algo : {Algo::Tsgo, Algo::TsgoNoMbh, Algo::BhStar, Algo::MbhStar})
        CHECK(algo_from_name(algo_name(algo)) == algo);
    CHECK_THROWS(algo_from_name("annealing"));
}
