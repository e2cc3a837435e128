#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pdisp/basin_hopping.hpp"
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

TEST_CASE("perturb: zero width is the identity") {
    Rng rng(1);
    const Layout layout({{0.3, 0.4}, {0.6, 0.7}});
    const Layout out = perturb(layout, 1.0, 0.0, rng);
    for (std::size_t i = 0; i < layout.size(); ++i) {
        CHECK(out.points[i].x == layout.points[i].x);
        CHECK(out.points[i].y == layout.points[i].y);
    }
}

TEST_CASE("perturb: shifts stay inside the window") {
    Rng rng(2);
    const Layout layout({{0.0, 0.0}});
    for (int trial = 0; trial < 1000; ++trial) {
        const Layout out = perturb(layout, 1.0, 0.4, rng);
        CHECK(std::abs(out.points[0].x) <= 0.4);
        CHECK(std::abs(out.points[0].y) <= 0.4);
    }
}

TEST_CASE("perturb: per-coordinate shifts are uniform (Kolmogorov-Smirnov)") {
    Rng rng(3);
    const Layout layout({{0.0, 0.0}});
    const int n = 50000;
    std::vector<double> xs;
    xs.reserve(n);
    for (int k = 0; k < n; ++k) {
        const Layout out = perturb(layout, 1.0, 0.4, rng);
        xs.push_back(out.points[0].x);
    }
    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = (xs[i] + 0.4) / 0.8;  // uniform on [-0.4, 0.4]
        ks = std::max(ks, std::abs(cdf - (i + 1.0) / n));
        ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / n));
    }
    // alpha = 0.01 asymptotic critical value.
    CHECK(ks < 1.6276 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("mbh returns a feasible input untouched, consuming no randomness") {
    const Instance inst = unit_square_inst();
    const ModelParams params = ModelParams::circle_packing();
    const Layout feasible({{0.3, 0.3}, {0.7, 0.7}});
    REQUIRE(layout_energy(inst, feasible, 0.4, params) < kFeasibleEnergy);

    Rng rng(9);
    Rng shadow(9);
    MbhConfig cfg;
    cfg.theta_max = 50;
    const Layout out = mbh(inst, feasible, 0.4, params, cfg, rng);
    for (std::size_t i = 0; i < feasible.size(); ++i) {
        CHECK(out.points[i].x == feasible.points[i].x);
        CHECK(out.points[i].y == feasible.points[i].y);
    }
    CHECK(rng.next_u64() == shadow.next_u64());
}

TEST_CASE("mbh is monotone for any seed and depth") {
    const Instance inst = unit_square_inst();
    const ModelParams params = ModelParams::circle_packing();
    // Over-dense: no feasible configuration at this distance.
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng rng(seed);
        Layout start = random_layout(inst, 5, rng);
        start = minimize_energy(inst, start, 0.9, params).layout;
        const double e0 = layout_energy(inst, start, 0.9, params);
        MbhConfig cfg;
        cfg.theta_max = (seed % 2 == 0) ? 1 : 5;
        const Layout out = mbh(inst, start, 0.9, params, cfg, rng);
        CHECK(layout_energy(inst, out, 0.9, params) <= e0);
    }
}

TEST_CASE("mbh escapes a dense local trap") {
    // Ten points in the unit square just below the global optimum
    // (~0.29639): clustered starts sometimes minimize into infeasible local
    // minima, and a deep MBH run still reaches feasibility.
    const Instance inst = unit_square_inst();
    const ModelParams params = ModelParams::circle_packing();
    const double min_dist = 0.295;

    int solved = 0;
    int traps = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng rng(seed * 31);
        Layout start;
        for (int i = 0; i < 10; ++i)
            start.points.push_back({rng.uniform(0.0, 0.45), rng.uniform(0.0, 0.45)});
        LayoutOptResult trapped = minimize_energy(inst, start, min_dist, params);
        if (trapped.energy >= kFeasibleEnergy) ++traps;

        MbhConfig cfg;
        cfg.theta_max = 100;
        const Layout out = mbh(inst, trapped.layout, min_dist, params, cfg, rng);
        if (layout_energy(inst, out, min_dist, params) < kFeasibleEnergy) {
            ++solved;
            CHECK(check_layout(inst, out.points, min_dist, params.lambda).pass(1e-9));
        }
    }
    CHECK(traps >= 2);  // the construction actually produces traps
    CHECK(solved >= 8);
}

TEST_CASE("bh with vanishing temperature only accepts improvements") {
    const Instance inst = unit_square_inst();
    const ModelParams params = ModelParams::circle_packing();
    Rng rng(4);
    Layout start = minimize_energy(inst, random_layout(inst, 6, rng), 0.9, params).layout;
    const double e0 = layout_energy(inst, start, 0.9, params);
    const Layout out = bh(inst, start, 0.9, params, 60, 1e-300, rng);
    CHECK(layout_energy(inst, out, 0.9, params) <= e0);
}

TEST_CASE("bh is reproducible for a fixed seed") {
    const Instance inst = unit_square_inst();
    const ModelParams params = ModelParams::circle_packing();
    auto run = [&] {
        Rng rng(1234);
        Layout start =
            minimize_energy(inst, random_layout(inst, 6, rng), 0.8, params).layout;
        const Layout out = bh(inst, start, 0.8, params, 40, 0.1, rng);
        return layout_energy(inst, out, 0.8, params);
    };
    CHECK(run() == run());
}
