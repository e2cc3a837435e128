#include <doctest.h>

#include <cmath>

#include "pdisp/checker.hpp"
#include "pdisp/layout_opt.hpp"
#include "pdisp/sumt.hpp"
#include "support/oracles.hpp"

using namespace pdisp;

namespace {

Instance unit_square_inst() {
    return Instance("square", Polygon(oracles::unit_square_ring()), {});
}

}  // namespace

TEST_CASE("rejects an infeasible input") {
    const Instance inst = unit_square_inst();
    const Layout overlapping({{0.4, 0.5}, {0.6, 0.5}});
    CHECK_THROWS_AS(
        adjust_distance(inst, overlapping, 0.5, ModelParams::circle_packing(), {}),
        InfeasibleInput);
}

TEST_CASE("two points, boundary variant: diagonal analytic optimum") {
    const Instance inst = unit_square_inst();
    const ModelParams params = ModelParams::circle_packing();
    const Layout start({{0.284, 0.284}, {0.716, 0.716}});
    const double d0 = 0.55;
    REQUIRE(layout_energy(inst, start, d0, params) < kFeasibleEnergy);

    const AdjustResult res = adjust_distance(inst, start, d0, params, {});
    const double expected = 2.0 - std::sqrt(2.0);
    CHECK(res.min_dist == doctest::Approx(expected).epsilon(1e-7));
    CHECK(check_layout(inst, res.layout.points, res.min_dist, params.lambda).pass(1e-9));

    // Exactly K rounds with the 10, 50, 250, ... escalation.
    REQUIRE(res.rounds.size() == 15);
    double mu = 10.0;
    for (const SumtRound& r : res.rounds) {
        CHECK(r.mu == doctest::Approx(mu));
        mu *= 5.0;
    }
}

TEST_CASE("two points, point-arrangement variant: corners up to the clearance inset") {
    const Instance inst = unit_square_inst();
    const ModelParams params = ModelParams::point_arrangement();
    const Layout start({{0.05, 0.05}, {0.95, 0.95}});
    const double d0 = 1.2;
    REQUIRE(layout_energy(inst, start, d0, params) < kFeasibleEnergy);

    const AdjustResult res = adjust_distance(inst, start, d0, params, {});
    // Corners inset by the clearance lambda * D on each wall.
    const double expected = std::sqrt(2.0) / (1.0 + 2.0 * std::sqrt(2.0) * params.lambda);
    CHECK(res.min_dist == doctest::Approx(expected).epsilon(1e-3));
    CHECK(res.min_dist > 1.40);
    CHECK(check_layout(inst, res.layout.points, res.min_dist, params.lambda).pass(1e-9));
}

TEST_CASE("an optimal input is a fixed point") {
    const Instance inst = unit_square_inst();
    const ModelParams params = ModelParams::circle_packing();
    const double radius = (2.0 - std::sqrt(2.0)) / 2.0;
    const double d_opt = 2.0 * radius;
    const Layout optimal({{radius, radius}, {1.0 - radius, 1.0 - radius}});
    REQUIRE(layout_energy(inst, optimal, d_opt, params) < kFeasibleEnergy);

    const AdjustResult res = adjust_distance(inst, optimal, d_opt, params, {});
    CHECK(std::abs(res.min_dist - d_opt) < 1e-9);
    // Local character: nowhere near the mirrored optimum on the other
    // diagonal (which is ~0.58 away per point).
    for (std::size_t i = 0; i < optimal.size(); ++i)
        CHECK(dist(res.layout.points[i], optimal.points[i]) < 0.29);
}

TEST_CASE("multiply-connected region stays certified") {
    const Instance inst("ring", Polygon(oracles::unit_square_ring()),
                        {Polygon({{0.45, 0.45}, {0.55, 0.45}, {0.55, 0.55}, {0.45, 0.55}})});
    const ModelParams params = ModelParams::circle_packing();
    const Layout start({{0.2, 0.2}, {0.8, 0.2}, {0.2, 0.8}, {0.8, 0.8}});
    const double d0 = 0.35;
    REQUIRE(layout_energy(inst, start, d0, params) < kFeasibleEnergy);

    const AdjustResult res = adjust_distance(inst, start, d0, params, {});
    CHECK(res.min_dist >= d0 - 1e-9);
    CHECK(check_layout(inst, res.layout.points, res.min_dist, params.lambda).pass(1e-9));
}
