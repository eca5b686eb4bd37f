#include "doctest.h"

#include <cmath>

#include "ec/example_spaces.hpp"
#include "ec/metric_core.hpp"
#include "fixtures.hpp"

using namespace ec;
using namespace ec::testing;

TEST_CASE("unit square distances and validation") {
    auto s = unit_square();
    CHECK(s.dist(0, 2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(s.dist(0, 1) == doctest::Approx(1.0));
    CHECK(s.basepoint() == 0);

    CHECK_THROWS_AS(FiniteMetricSpace::from_coordinates({}, 0), ValidationError);
    CHECK_NOTHROW(single_point());

    // asymmetric matrix is rejected with the offending indices
    std::vector<std::vector<double>> bad{{0, 1, 1}, {1, 0, 2}, {1, 2.5, 0}};
    try {
        FiniteMetricSpace::from_matrix(bad, 0, false);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("asymmetric at (1,2)") != std::string::npos);
    }

    std::vector<std::vector<double>> neg{{0, -1}, {-1, 0}};
    CHECK_THROWS_AS(FiniteMetricSpace::from_matrix(neg, 0, false), ValidationError);

    // triangle violation caught for declared-metric input, allowed as pseudometric
    std::vector<std::vector<double>> tri{{0, 1, 5}, {1, 0, 1}, {5, 1, 0}};
    CHECK_THROWS_AS(FiniteMetricSpace::from_matrix(tri, 0, false), ValidationError);
    CHECK_NOTHROW(FiniteMetricSpace::from_matrix(tri, 0, true));

    std::vector<std::vector<double>> ok{{0, 2}, {2, 0}};
    CHECK_THROWS_AS(FiniteMetricSpace::from_matrix(ok, 7, false), ValidationError);
}

TEST_CASE("scale graph edge rule is strict") {
    auto s = unit_square();
    ScaleGraph g12(s, 1.2);
    CHECK(g12.edges().size() == 4); // sides only, diagonal sqrt(2) excluded
    CHECK(g12.triangles().empty());
    ScaleGraph g15(s, 1.5);
    CHECK(g15.edges().size() == 6);
    CHECK(g15.triangles().size() == 4);
    ScaleGraph g10(s, 1.0);
    CHECK(g10.edges().size() == 0); // side length 1 is not < 1
    CHECK_THROWS_AS(ScaleGraph(s, 0.0), ValidationError);

    // deterministic lexicographic edge order
    ScaleGraph again(s, 1.5);
    CHECK(again.edges() == g15.edges());
    CHECK(g15.edges().front() == std::make_pair<PointIndex, PointIndex>(0, 1));
}

TEST_CASE("chain connectivity and components") {
    auto s = unit_square();
    ScaleGraph g(s, 1.2);
    CHECK(chain_connected(g).connected);

    auto t = two_squares();
    ScaleGraph gt(t, 1.2);
    auto cc = chain_connected(gt);
    CHECK(!cc.connected);
    CHECK(cc.component_count == 2);
    CHECK(cc.component[1] == 0);
    CHECK(cc.component[5] == 4);

    ScaleGraph one(single_point(), 1.0);
    CHECK(chain_connected(one).connected);
}

TEST_CASE("power reach") {
    auto s = unit_square();
    ScaleGraph g(s, 1.2);
    CHECK(power_reach(g, 0, 1) == std::vector<PointIndex>{0, 1, 3});
    CHECK(power_reach(g, 0, 2) == std::vector<PointIndex>{0, 1, 2, 3});
    CHECK(power_reach(g, 2, 0) == std::vector<PointIndex>{2});
    // monotone and stabilizes at the component
    auto prev = power_reach(g, 0, 0);
    for (std::uint32_t n = 1; n <= 5; ++n) {
        auto cur = power_reach(g, 0, n);
        CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
        prev = cur;
    }
    CHECK(prev.size() == 4);
    // connectivity iff basepoint reaches everything in |points| hops
    CHECK(power_reach(g, s.basepoint(), static_cast<std::uint32_t>(s.size())).size() == s.size());
}

TEST_CASE("filtration is monotone in the scale") {
    auto space = sample({Family::Circle, 1, 0.05});
    ScaleGraph a(space, 0.2), b(space, 0.35), c(space, 0.5);
    auto subset = [](const ScaleGraph& x, const ScaleGraph& y) {
        for (auto e : x.edges())
            if (!y.adjacent(e.first, e.second)) return false;
        return true;
    };
    CHECK(subset(a, b));
    CHECK(subset(b, c));
}

TEST_CASE("permutation equivariance of the scale graph") {
    auto s = unit_square();
    // relabeled copy: swap points 1 and 3
    auto r = FiniteMetricSpace::from_coordinates({{0, 0}, {0, 1}, {1, 1}, {1, 0}}, 0);
    ScaleGraph gs(s, 1.2), gr(r, 1.2);
    auto perm = [](PointIndex v) -> PointIndex { return v == 1 ? 3 : v == 3 ? 1 : v; };
    CHECK(gs.edges().size() == gr.edges().size());
    for (auto [a, b] : gs.edges())
        CHECK(gr.adjacent(perm(a), perm(b)));
}

TEST_CASE("balls chain connected") {
    auto circle = sample({Family::Circle, 1, 0.02});
    ScaleGraph coarse(circle, 0.5), fine(circle, 0.1);
    CHECK(balls_chain_connected(coarse, fine));
    CHECK(balls_chain_connected(coarse, coarse));

    // an eps-ball holding two clusters separated by more than delta fails
    auto gap = FiniteMetricSpace::from_coordinates(
        {{0, 0}, {0.05, 0}, {0.9, 0}, {0.95, 0}}, 0);
    ScaleGraph gc(gap, 1.0), gf(gap, 0.2);
    CHECK(!balls_chain_connected(gc, gf));
    CHECK_THROWS_AS(balls_chain_connected(gf, gc), ValidationError);
}
