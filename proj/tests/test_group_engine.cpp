#include "doctest.h"

#include <numeric>

#include "ec/group_engine.hpp"
#include "fixtures.hpp"

using namespace ec;
using namespace ec::testing;

TEST_CASE("free reduction") {
    CHECK(free_reduce({1, 2, -2}) == Word{1});
    CHECK(free_reduce({}) == Word{});
    CHECK(free_reduce({1, 1}) == Word{1, 1});
    CHECK(free_reduce({1, -1}) == Word{});
    CHECK(free_reduce({2, 1, -1, -2, 3}) == Word{3});
    CHECK(cyclic_reduce(free_reduce({1, 2, 3, -1})) == Word{2, 3});
    CHECK(is_freely_reduced(Word{1, 2}));
    CHECK(!is_freely_reduced(Word{1, -1}));
}

TEST_CASE("tietze certifications") {
    // complete-graph style: three generators killed by length-1 relators and a cascade
    auto g = make_fp_group(3, {{1}, {2}, {1, 3, -2}});
    auto s = tietze_simplify(g);
    CHECK(s.certification() == Certification::TrivialCertified);
    CHECK(s.rank() == 0);

    auto free1 = tietze_simplify(make_fp_group(1, {}));
    CHECK(free1.certification() == Certification::FreeCertified);
    CHECK(free1.rank() == 1);

    auto torsion = tietze_simplify(make_fp_group(1, {{1, 1, 1}}));
    CHECK(torsion.certification() == Certification::Inconclusive);

    // length-2 relator substitutes one generator for the other
    auto two = tietze_simplify(make_fp_group(2, {{1, 2}}));
    CHECK(two.certification() == Certification::FreeCertified);
    CHECK(two.rank() == 1);
    // g2 = g1^-1, so g1*g2 maps to the empty word
    CHECK(two.map_word({1, 2}).empty());

    // single-occurrence generator elimination removes the relator wholesale
    auto single = tietze_simplify(make_fp_group(3, {{1, 1, 2}, {3, 3, 3}}));
    // g2 occurs once: relator aab vanishes with it; ccc remains
    CHECK(single.group().relators.size() == 1);
    CHECK(single.certification() == Certification::Inconclusive);
}

TEST_CASE("tietze images substitute consistently") {
    auto s = tietze_simplify(make_fp_group(2, {{1, 2}}));
    // the surviving generator is g1; image of g2 must be its inverse
    REQUIRE(s.rank() == 1);
    CHECK(s.image(0) == Word{1});
    CHECK(s.image(1) == Word{-1});
    CHECK(s.map_word({2, 2}) == Word{-1, -1});
}

TEST_CASE("abelianization") {
    auto inv1 = abelianize(make_fp_group(1, {}));
    CHECK(inv1.betti == 1);
    CHECK(inv1.torsion.empty());

    auto inv2 = abelianize(make_fp_group(1, {{1, 1, 1}}));
    CHECK(inv2.betti == 0);
    REQUIRE(inv2.torsion.size() == 1);
    CHECK(inv2.torsion[0].to_int64() == 3);

    // commutator relator: free abelian of rank 2
    auto inv3 = abelianize(make_fp_group(2, {{1, 2, -1, -2}}));
    CHECK(inv3.betti == 2);
    CHECK(inv3.torsion.empty());

    // trivial abelianization but inconclusive presentation
    auto fixture = make_fp_group(2, {{1, 1, 2}, {1, 1, 1, 2, 2}});
    auto sfix = tietze_simplify(fixture);
    CHECK(sfix.certification() == Certification::Inconclusive);
    auto invf = abelianize(fixture);
    CHECK(invf.betti == 0);
    CHECK(invf.torsion.empty());

    auto inv0 = abelianize(make_fp_group(0, {}));
    CHECK(inv0.betti == 0);
}

TEST_CASE("word_equal_free") {
    auto f2 = tietze_simplify(make_fp_group(2, {}));
    CHECK(word_equal_free(f2, {1, 2, -2}, {1}));
    CHECK(!word_equal_free(f2, {1}, {2}));
    CHECK(word_equal_free(f2, {1, -2, 2, 1}, {1, 1}));
    auto inc = tietze_simplify(make_fp_group(1, {{1, 1, 1}}));
    CHECK_THROWS_AS(word_equal_free(inc, {1}, {1}), ValidationError);
}

namespace {

// independent SNF oracle: d_k = gcd of all k x k minors, f_k = d_k / d_{k-1}
BigInt det_recursive(const std::vector<std::vector<BigInt>>& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    BigInt acc;
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<BigInt>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<BigInt> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            sub.push_back(std::move(row));
        }
        BigInt term = m[0][j] * det_recursive(sub);
        acc = sign > 0 ? acc + term : acc - term;
        sign = -sign;
    }
    return acc;
}

std::vector<BigInt> minor_gcd_invariants(const std::vector<std::vector<std::int64_t>>& m) {
    std::size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
    std::vector<BigInt> d;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        // gcd of all k x k minors
        std::vector<std::size_t> ri(k), ci(k);
        std::iota(ri.begin(), ri.end(), 0);
        BigInt g;
        bool any = false;
        auto next_subset = [](std::vector<std::size_t>& idx, std::size_t n) {
            std::size_t k2 = idx.size();
            for (std::size_t i = k2; i-- > 0;) {
                if (idx[i] + (k2 - i) < n) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < k2; ++j)
                        idx[j] = idx[j - 1] + 1;
                    return true;
                }
            }
            return false;
        };
        do {
            std::iota(ci.begin(), ci.end(), 0);
            do {
                std::vector<std::vector<BigInt>> sub(k, std::vector<BigInt>(k));
                for (std::size_t a = 0; a < k; ++a)
                    for (std::size_t b = 0; b < k; ++b)
                        sub[a][b] = BigInt(m[ri[a]][ci[b]]);
                g = BigInt::gcd(g, det_recursive(sub));
                any = true;
            } while (next_subset(ci, cols));
        } while (next_subset(ri, rows));
        (void)any;
        if (g.is_zero()) break; // rank reached
        d.push_back(g);
    }
    std::vector<BigInt> factors;
    BigInt prev(1);
    for (const BigInt& dk : d) {
        factors.push_back(dk / prev);
        prev = dk;
    }
    return factors;
}

} // namespace

TEST_CASE("smith normal form agrees with the minors-gcd oracle") {
    Lcg rng(424242);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = static_cast<std::size_t>(rng.range(1, 5));
        std::size_t cols = static_cast<std::size_t>(rng.range(1, 6));
        std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(cols));
        for (auto& row : m)
            for (auto& v : row)
                v = rng.range(-4, 4);
        std::vector<std::vector<BigInt>> big(rows, std::vector<BigInt>(cols));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                big[i][j] = BigInt(m[i][j]);
        auto snf = smith_normal_form(big, cols);
        auto oracle = minor_gcd_invariants(m);
        REQUIRE(snf.invariant_factors.size() == oracle.size());
        for (std::size_t i = 0; i < oracle.size(); ++i)
            CHECK(snf.invariant_factors[i] == oracle[i]);
        // divisibility chain, positive factors
        for (std::size_t i = 0; i + 1 < snf.invariant_factors.size(); ++i)
            CHECK((snf.invariant_factors[i + 1] % snf.invariant_factors[i]).is_zero());
        for (const auto& f : snf.invariant_factors)
            CHECK(!f.is_negative());
    }
}

TEST_CASE("certified-free simplification maps every original relator to the identity") {
    Lcg rng(5150);
    std::size_t certified = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t gens = static_cast<std::size_t>(rng.range(1, 6));
        std::size_t rels = static_cast<std::size_t>(rng.range(0, 5));
        std::vector<Word> relators;
        for (std::size_t r = 0; r < rels; ++r) {
            Word w;
            std::size_t len = static_cast<std::size_t>(rng.range(1, 4));
            for (std::size_t i = 0; i < len; ++i)
                w.push_back(make_letter(
                    static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(gens) - 1)),
                    rng.range(0, 1) == 0));
            relators.push_back(std::move(w));
        }
        auto group = make_fp_group(gens, relators);
        auto s = tietze_simplify(group);
        if (!s.certified_free()) continue;
        ++certified;
        for (const Word& r : group.relators)
            CHECK(s.map_word(r).empty());
    }
    CHECK(certified > 50); // the sample must actually exercise the property
}

TEST_CASE("abelianize is invariant under tietze simplification") {
    Lcg rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t gens = static_cast<std::size_t>(rng.range(1, 5));
        std::size_t rels = static_cast<std::size_t>(rng.range(0, 6));
        std::vector<Word> relators;
        for (std::size_t r = 0; r < rels; ++r) {
            Word w;
            std::size_t len = static_cast<std::size_t>(rng.range(1, 6));
            for (std::size_t i = 0; i < len; ++i) {
                std::size_t g = static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(gens) - 1));
                w.push_back(make_letter(g, rng.range(0, 1) == 0));
            }
            relators.push_back(std::move(w));
        }
        auto group = make_fp_group(gens, relators);
        auto direct = abelianize(group);
        auto simplified = abelianize(tietze_simplify(group).group());
        CHECK(direct == simplified);
    }
}

TEST_CASE("free certification implies free abelian invariants") {
    Lcg rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t gens = static_cast<std::size_t>(rng.range(1, 5));
        std::vector<Word> relators;
        std::size_t rels = static_cast<std::size_t>(rng.range(0, 3));
        for (std::size_t r = 0; r < rels; ++r) {
            Word w;
            for (std::size_t i = 0; i < 2; ++i)
                w.push_back(make_letter(static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(gens) - 1)),
                                        rng.range(0, 1) == 0));
            relators.push_back(std::move(w));
        }
        auto s = tietze_simplify(make_fp_group(gens, relators));
        if (s.certified_free()) {
            auto inv = abelianize(s.group());
            CHECK(inv.torsion.empty());
            CHECK(inv.betti == s.rank());
        }
    }
}

TEST_CASE("integer lattice reduce and contains") {
    std::vector<std::vector<BigInt>> rows = {{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(3)}};
    IntegerLattice lat(rows, 2);
    CHECK(lat.rank() == 2);
    auto red = lat.reduce({BigInt(5), BigInt(7)});
    CHECK(red[0].to_int64() == 1);
    CHECK(red[1].to_int64() == 1);
    CHECK(lat.contains({BigInt(4), BigInt(3)}));
    CHECK(!lat.contains({BigInt(3), BigInt(3)}));
    CHECK(lat.contains({BigInt(0), BigInt(0)}));
}
