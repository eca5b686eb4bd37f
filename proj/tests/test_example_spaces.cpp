#include "doctest.h"

#include <cmath>
#include <set>

#include "ec/chain_homotopy.hpp"
#include "ec/example_spaces.hpp"
#include "ec/scale_complex.hpp"
#include "fixtures.hpp"

using namespace ec;
using namespace ec::testing;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("expected ranks and stage scales") {
    CHECK(expected_rank(Family::HawaiianStage, 1) == 1);
    CHECK(expected_rank(Family::HawaiianStage, 3) == 3);
    CHECK(expected_rank(Family::GasketLevel, 1) == 1);
    CHECK(expected_rank(Family::GasketLevel, 2) == 4);
    CHECK(expected_rank(Family::GasketLevel, 3) == 13);
    CHECK(expected_rank(Family::CarpetLevel, 1) == 1);
    CHECK(expected_rank(Family::CarpetLevel, 2) == 9);
    CHECK_THROWS_AS(expected_rank(Family::Circle, 1), ValidationError);

    CHECK(stage_scale(Family::HawaiianStage, 1) == doctest::Approx(0.25));
    CHECK(stage_scale(Family::GasketLevel, 3) == doctest::Approx(1.0 / 16.0));
    CHECK(stage_scale(Family::CarpetLevel, 2) == doctest::Approx(1.0 / 18.0));
}

TEST_CASE("circle sampler point count") {
    auto c = sample({Family::Circle, 1, 0.05});
    CHECK(c.size() == 63); // ceil(pi / 0.05)
    CHECK(c.basepoint() == 0);
    auto bp = c.coordinates(0);
    CHECK(bp[0] == doctest::Approx(0.0));
    CHECK(bp[1] == doctest::Approx(0.0));
    // spacing within the target
    CHECK(c.min_positive_spacing() <= 0.05);
}

TEST_CASE("samplers are deterministic") {
    auto a = sample({Family::GasketLevel, 2, 1.0 / 32.0});
    auto b = sample({Family::GasketLevel, 2, 1.0 / 32.0});
    REQUIRE(a.size() == b.size());
    for (PointIndex i = 0; i < a.size(); ++i) {
        auto ca = a.coordinates(i), cb = b.coordinates(i);
        CHECK(ca[0] == cb[0]);
        CHECK(ca[1] == cb[1]);
    }
}

TEST_CASE("hawaiian stage geometry") {
    auto h2 = sample({Family::HawaiianStage, 2, 1.0 / 64.0});
    CHECK(h2.basepoint() == 0);
    // contains points near the tops of the two circles (diameters 1 and 1/2)
    bool top1 = false, top2 = false;
    for (PointIndex i = 0; i < h2.size(); ++i) {
        auto c = h2.coordinates(i);
        if (std::hypot(c[0], c[1] - 1.0) < 0.02) top1 = true;
        if (std::hypot(c[0], c[1] - 0.5) < 0.02) top2 = true;
    }
    CHECK(top1);
    CHECK(top2);
    // everything lies in the closed upper half plane within the big circle
    for (PointIndex i = 0; i < h2.size(); ++i) {
        auto c = h2.coordinates(i);
        CHECK(c[1] >= -1e-12);
        CHECK(std::hypot(c[0], c[1] - 0.5) <= 0.5 + 1e-9);
    }
}

TEST_CASE("gasket sampler stays inside the big triangle and is dense") {
    auto g2 = sample({Family::GasketLevel, 2, 1.0 / 32.0});
    CHECK(g2.basepoint() == 0);
    auto c0 = g2.coordinates(0);
    CHECK(c0[0] == doctest::Approx(0.0));
    CHECK(c0[1] == doctest::Approx(0.0));
    for (PointIndex i = 0; i < g2.size(); ++i) {
        auto c = g2.coordinates(i);
        CHECK(c[1] >= -1e-12);
        CHECK(c[1] <= std::sqrt(3.0) * c[0] + 1e-9);                  // left side
        CHECK(c[1] <= std::sqrt(3.0) * (1.0 - c[0]) + 1e-9);          // right side
    }
    auto g3 = sample({Family::GasketLevel, 3, 1.0 / 64.0});
    CHECK(g3.size() <= 5000);
    CHECK(g3.size() >= 500);
}

TEST_CASE("carpet sampler covers the eight sub-squares") {
    auto c1 = sample({Family::CarpetLevel, 1, 1.0 / 24.0});
    double a0 = 1.0 / std::sqrt(2.0);
    // the middle is empty: no sample strictly inside the central ninth
    for (PointIndex i = 0; i < c1.size(); ++i) {
        auto c = c1.coordinates(i);
        bool inside_middle = c[0] > a0 / 3.0 + 1e-9 && c[0] < 2.0 * a0 / 3.0 - 1e-9 &&
                             c[1] > a0 / 3.0 + 1e-9 && c[1] < 2.0 * a0 / 3.0 - 1e-9;
        CHECK(!inside_middle);
    }
}

TEST_CASE("density rejection names the feature size") {
    try {
        sample({Family::GasketLevel, 2, 0.2});
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("feature") != std::string::npos);
    }
    CHECK_THROWS_AS(sample({Family::GasketLevel, 9, 0.001}), ValidationError);
    CHECK_THROWS_AS(sample({Family::Circle, 1, -0.1}), ValidationError);
}

TEST_CASE("unit square corners and wedge") {
    auto sq = sample({Family::UnitSquareCorners, 1, 0.1});
    CHECK(sq.size() == 4);
    auto w2 = sample({Family::WedgeOfCircles, 2, 0.02});
    // figure-eight: rank 2 at a scale below both circle thresholds
    ScaleGraph g(w2, 0.2);
    auto simp = tietze_simplify(PresentationAtScale(g).fp_group());
    auto inv = abelianize(simp.group());
    CHECK(inv.betti == 2);
    CHECK(inv.torsion.empty());
}

TEST_CASE("raw relator-matrix SNF agrees with simplification on fractal samples") {
    // two independent routes to the rank: integer elimination on the raw
    // presentation, and certified Tietze collapse
    struct Case {
        Family family;
        std::uint32_t level;
        std::size_t rank;
    };
    for (Case c : {Case{Family::GasketLevel, 1, 1}, Case{Family::GasketLevel, 2, 4},
                   Case{Family::CarpetLevel, 1, 1}, Case{Family::HawaiianStage, 2, 2}}) {
        double eps = stage_scale(c.family, c.level);
        auto space = sample({c.family, c.level, eps / 4.0});
        ScaleGraph g(space, eps);
        PresentationAtScale p(g);
        auto raw = abelianize(p.fp_group());
        auto simp = tietze_simplify(p.fp_group());
        auto post = abelianize(simp.group());
        CHECK(raw.betti == c.rank);
        CHECK(raw.torsion.empty());
        CHECK(raw == post);
        CHECK(simp.certified_free());
        CHECK(simp.rank() == c.rank);
    }
}

TEST_CASE("sine curve wraps at scales above the gap") {
    auto sine = sample({Family::SineCurve, 1, 0.012});
    double gap = 2.0 / (5.0 * kPi); // distance from the limit segment to the arc
    ScaleGraph g(sine, 2.0 * gap);
    auto cc = chain_connected(g);
    CHECK(cc.connected);
    auto simp = tietze_simplify(PresentationAtScale(g).fp_group());
    auto inv = abelianize(simp.group());
    CHECK(inv.betti >= 1);
}

TEST_CASE("sine curve rank agrees with the oracle on a coarse sub-sample") {
    auto sine = sample({Family::SineCurve, 1, 0.012});
    // anchors around the lower enclosed region, spaced for a clean cycle at 0.52
    const double anchors[][2] = {{0.0, -1.0},    {0.2122, -1.0}, {0.6366, -1.0},
                                 {0.6366, -1.5}, {0.6366, -2.0}, {0.32, -2.0},
                                 {0.0, -2.0},    {0.0, -1.5}};
    std::vector<PointIndex> picked;
    for (const auto& a : anchors) {
        PointIndex best = 0;
        double best_d = 1e9;
        for (PointIndex i = 0; i < sine.size(); ++i) {
            auto c = sine.coordinates(i);
            double d = std::hypot(c[0] - a[0], c[1] - a[1]);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        CHECK(best_d < 0.05);
        picked.push_back(best);
    }
    std::vector<std::vector<double>> m(picked.size(), std::vector<double>(picked.size()));
    for (std::size_t i = 0; i < picked.size(); ++i)
        for (std::size_t j = 0; j < picked.size(); ++j)
            m[i][j] = sine.dist(picked[i], picked[j]);
    auto sub = FiniteMetricSpace::from_matrix(m, 0, false);
    ScaleGraph g(sub, 0.52);
    REQUIRE(g.edges().size() == 8); // the anchor cycle, no cross-chords

    auto oc = oracle_classes(g, 0, 9);
    REQUIRE(oc.stable());
    CHECK(oc.class_count() == 3); // trivial plus the two wrap orientations

    PresentationAtScale pres(g);
    auto simp = tietze_simplify(pres.fp_group());
    REQUIRE(simp.certified_free());
    CHECK(simp.rank() == 1);
    std::set<Word> words;
    for (const auto& rep : oc.representatives())
        words.insert(simp.map_word(chain_class(pres, make_chain(g, rep)).word));
    CHECK(words.size() == oc.class_count());
}
