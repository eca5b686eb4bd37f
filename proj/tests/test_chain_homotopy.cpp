#include "doctest.h"

#include "ec/chain_homotopy.hpp"
#include "fixtures.hpp"

using namespace ec;
using namespace ec::testing;

TEST_CASE("apply_move admissibility") {
    auto s = unit_square();
    ScaleGraph cyc(s, 1.2), k4(s, 1.5);

    // diagonal {0,2} is not an edge at 1.2
    Chain c01 = make_chain(cyc, {0, 1});
    try {
        apply_move(c01, {MoveKind::Add, 0, 2});
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("{0,2}") != std::string::npos);
    }

    Chain c02 = make_chain(k4, {0, 2});
    Chain added = apply_move(c02, {MoveKind::Add, 0, 1});
    CHECK(added.vertices == std::vector<PointIndex>{0, 1, 2});
    Chain removed = apply_move(added, {MoveKind::Remove, 1, 0});
    CHECK(removed.vertices == std::vector<PointIndex>{0, 2});

    // endpoints are protected
    CHECK_THROWS_AS(apply_move(added, {MoveKind::Remove, 0, 0}), ValidationError);
    CHECK_THROWS_AS(apply_move(added, {MoveKind::Remove, 2, 0}), ValidationError);

    // degenerate duplicate of a one-point chain
    Chain unit = make_chain(cyc, {0});
    Chain dup = apply_move(unit, {MoveKind::Add, 0, 0});
    CHECK(dup.vertices == std::vector<PointIndex>{0, 0});
    CHECK(apply_move(dup, {MoveKind::Remove, 1, 0}).vertices == std::vector<PointIndex>{0});
    CHECK_THROWS_AS(apply_move(unit, {MoveKind::Add, 0, 1}), ValidationError);
}

TEST_CASE("verify_certificate") {
    auto s = unit_square();
    ScaleGraph k4(s, 1.5);
    Chain start = make_chain(k4, {0, 1, 2});

    // identity homotopy
    CHECK(verify_certificate({start, {}}).vertices == start.vertices);

    // round trip
    HomotopyCertificate rt{start, {{MoveKind::Remove, 1, 0}, {MoveKind::Add, 0, 1}}};
    CHECK(verify_certificate(rt).vertices == std::vector<PointIndex>{0, 1, 2});

    // second move removes an endpoint: reported at index 1
    HomotopyCertificate bad{start, {{MoveKind::Remove, 1, 0}, {MoveKind::Remove, 1, 0}}};
    try {
        verify_certificate(bad);
        CHECK(false);
    } catch (const CertificateError& e) {
        CHECK(e.move_index() == 1);
    }
}

TEST_CASE("reverse certificate verifies backwards") {
    auto s = unit_square();
    ScaleGraph k4(s, 1.5);
    Chain start = make_chain(k4, {0, 1, 2, 3, 0});
    HomotopyCertificate cert{start,
                             {{MoveKind::Remove, 2, 0}, // needs {1,3}
                              {MoveKind::Add, 0, 3},
                              {MoveKind::Remove, 1, 0}}};
    Chain end = verify_certificate(cert);
    HomotopyCertificate rev = reverse_certificate(cert);
    CHECK(rev.start.vertices == end.vertices);
    CHECK(verify_certificate(rev).vertices == start.vertices);
}

TEST_CASE("normalize") {
    auto s = unit_square();
    ScaleGraph cyc(s, 1.2);

    auto r1 = normalize(make_chain(cyc, {0, 0, 1, 1}));
    CHECK(r1.chain.vertices == std::vector<PointIndex>{0, 1});
    CHECK(r1.certificate.moves.size() == 2);
    CHECK(verify_certificate(r1.certificate).vertices == r1.chain.vertices);

    auto r2 = normalize(make_chain(cyc, {0, 1, 0, 1}));
    CHECK(r2.chain.vertices == std::vector<PointIndex>{0, 1});
    CHECK(verify_certificate(r2.certificate).vertices == r2.chain.vertices);

    auto r3 = normalize(make_chain(cyc, {0, 1, 2}));
    CHECK(r3.chain.vertices == std::vector<PointIndex>{0, 1, 2});
    CHECK(r3.certificate.moves.empty());

    auto r4 = normalize(make_chain(cyc, {0, 1, 0}));
    CHECK(r4.chain.vertices == std::vector<PointIndex>{0});
}

TEST_CASE("oracle classes on the 4-cycle") {
    auto s = unit_square();
    ScaleGraph cyc(s, 1.2);
    auto oc = oracle_classes(cyc, 0, 4);
    // trivial class plus the two 4-step orientations
    CHECK(oc.class_count() == 3);
    // the orientation classes only appear at length 4, so 4 is not yet stable
    CHECK(!oc.stable());
    CHECK(oracle_classes(cyc, 0, 5).stable());
    CHECK(oracle_classes(cyc, 0, 5).class_count() == 3);
    auto cls = [&](std::vector<PointIndex> c) { return oc.class_of(c); };
    CHECK(cls({0}) >= 0);
    CHECK(cls({0}) == cls({0, 0}));
    CHECK(cls({0}) == cls({0, 1, 0}));
    CHECK(cls({0, 1, 2, 3, 0}) != cls({0}));
    CHECK(cls({0, 3, 2, 1, 0}) != cls({0}));
    CHECK(cls({0, 1, 2, 3, 0}) != cls({0, 3, 2, 1, 0}));
}

TEST_CASE("oracle classes on the complete graph and the point") {
    auto s = unit_square();
    ScaleGraph k4(s, 1.5);
    auto oc = oracle_classes(k4, 0, 4);
    CHECK(oc.class_count() == 1); // all loops fill through triangles
    CHECK(oc.stable());

    ScaleGraph pt(single_point(), 1.0);
    auto ocp = oracle_classes(pt, 0, 3);
    CHECK(ocp.class_count() == 1);

    CHECK_THROWS_AS(oracle_classes(k4, 0, 12, 100), BudgetExceeded);
}

TEST_CASE("oracle representatives are shortlex-least and deterministic") {
    auto s = unit_square();
    ScaleGraph cyc(s, 1.2);
    auto a = oracle_classes(cyc, 0, 4);
    auto b = oracle_classes(cyc, 0, 4);
    CHECK(a.representatives() == b.representatives());
    CHECK(a.representatives().front() == std::vector<PointIndex>{0});
}

TEST_CASE("search_homotopy") {
    auto s = unit_square();
    ScaleGraph k4(s, 1.5), cyc(s, 1.2);

    Chain a = make_chain(k4, {0, 1, 2});
    Chain b = make_chain(k4, {0, 2});
    auto res = search_homotopy(a, b);
    REQUIRE(res.found);
    CHECK(res.certificate.moves.size() == 1);
    CHECK(verify_certificate(res.certificate).vertices == b.vertices);

    // the two loop orientations of the 4-cycle do not connect within budget
    Chain triv = make_chain(cyc, {0});
    Chain loop = make_chain(cyc, {0, 1, 2, 3, 0});
    auto res2 = search_homotopy(triv, loop, 20000);
    CHECK(!res2.found);

    auto res3 = search_homotopy(a, a);
    CHECK(res3.found);
    CHECK(res3.certificate.moves.empty());

    CHECK_THROWS_AS(search_homotopy(a, make_chain(k4, {0, 3})), ValidationError);
}

TEST_CASE("search certificates always verify") {
    auto s = unit_square();
    ScaleGraph k4(s, 1.5);
    std::vector<std::pair<std::vector<PointIndex>, std::vector<PointIndex>>> cases = {
        {{0, 1, 2}, {0, 2}},
        {{0, 1, 2, 3}, {0, 3}},
        {{0, 2, 0}, {0}},
        {{0, 1, 0, 2, 0}, {0}},
    };
    for (auto& [from, to] : cases) {
        auto res = search_homotopy(make_chain(k4, from), make_chain(k4, to));
        REQUIRE(res.found);
        CHECK(verify_certificate(res.certificate).vertices == to);
        // reversed certificate goes back
        auto rev = reverse_certificate(res.certificate);
        CHECK(verify_certificate(rev).vertices == from);
    }
}
