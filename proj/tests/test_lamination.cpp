#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mandel/lamination.hpp>

#include <map>
#include <random>

using namespace mandel;

TEST_CASE("component_period") {
    CHECK(component_period(Angle(1, 3)) == 2);
    CHECK(component_period(Angle(1, 5)) == 4);
    CHECK(component_period(Angle(25, 127)) == 7);
    CHECK(component_period(Angle()) == 1);
    CHECK_THROWS_AS(component_period(Angle(11, 56)), DomainError);  // preperiodic
}

TEST_CASE("conjugate_periodic_angle on known pairs") {
    CHECK(conjugate_periodic_angle(Angle(1, 3)) == Angle(2, 3));
    CHECK(conjugate_periodic_angle(Angle(2, 3)) == Angle(1, 3));
    CHECK(conjugate_periodic_angle(Angle(1, 7)) == Angle(2, 7));
    CHECK(conjugate_periodic_angle(Angle(3, 7)) == Angle(4, 7));
    CHECK(conjugate_periodic_angle(Angle(5, 7)) == Angle(6, 7));
    // period-4 partner of 1/5 (oracle-confirmed: both rays land at the kokopelli root)
    CHECK(conjugate_periodic_angle(Angle(1, 5)) == Angle(4, 15));
    CHECK(conjugate_periodic_angle(Angle(25, 127)) == Angle(34, 127));
    CHECK_THROWS_AS(conjugate_periodic_angle(Angle()), DomainError);       // cusp
    CHECK_THROWS_AS(conjugate_periodic_angle(Angle(11, 56)), DomainError); // preperiodic
}

TEST_CASE("conjugate_periodic_angle is an involution up to period 10") {
    for (std::uint64_t p = 2; p <= 10; ++p) {
        BigInt q = (BigInt(1) << p) - 1;
        for (BigInt n = 1; n < q; ++n) {
            Angle t(n, q);
            if (component_period(t) != p) continue;
            Angle partner = conjugate_periodic_angle(t);
            CHECK(component_period(partner) == p);
            CHECK(conjugate_periodic_angle(partner) == t);
            CHECK(partner != t);
        }
    }
}

TEST_CASE("build_lamination small periods match the Lavaurs procedure") {
    auto lam1 = build_lamination(1);
    CHECK(lam1.leaves.empty());   // angle 0 has no partner

    auto lam2 = build_lamination(2);
    REQUIRE(lam2.leaves.size() == 1);
    CHECK(lam2.leaves[0] == Leaf{Angle(1, 3), Angle(2, 3), 2});

    auto lam3 = build_lamination(3);
    REQUIRE(lam3.leaves.size() == 4);
    CHECK(lam3.leaves[1] == Leaf{Angle(1, 7), Angle(2, 7), 3});
    CHECK(lam3.leaves[2] == Leaf{Angle(3, 7), Angle(4, 7), 3});
    CHECK(lam3.leaves[3] == Leaf{Angle(5, 7), Angle(6, 7), 3});

    CHECK_THROWS_AS(build_lamination(17), DomainError);  // default bound 16
}

TEST_CASE("lamination leaf counts per period") {
    // number of leaves of exact period p (oracle-verified against the pairing sweep)
    const std::map<std::uint64_t, std::size_t> expected{
        {2, 1}, {3, 3}, {4, 6}, {5, 15}, {6, 27}, {7, 63}, {8, 120}, {9, 252}, {10, 495}};
    auto lam = build_lamination(10);
    std::map<std::uint64_t, std::size_t> got;
    for (const auto& leaf : lam.leaves) ++got[leaf.period];
    CHECK(got == expected);
}

TEST_CASE("no two leaves link, periods <= 10") {
    auto lam = build_lamination(10);
    // quadratic scan is fine at this size (982 leaves)
    for (std::size_t i = 0; i < lam.leaves.size(); ++i)
        for (std::size_t j = i + 1; j < lam.leaves.size(); ++j)
            REQUIRE_FALSE(leaves_link(lam.leaves[i], lam.leaves[j]));
}

TEST_CASE("every periodic angle appears in exactly one leaf") {
    auto lam = build_lamination(8);
    std::map<Angle, int> seen;
    for (const auto& leaf : lam.leaves) {
        CHECK(leaf.low < leaf.high);
        CHECK(component_period(leaf.low) == leaf.period);
        CHECK(component_period(leaf.high) == leaf.period);
        ++seen[leaf.low];
        ++seen[leaf.high];
    }
    for (const auto& [angle, count] : seen) CHECK(count == 1);
    // all periodic angles of period <= 8 are covered: sum over p of the class sizes
    std::size_t total = 0;
    for (std::uint64_t p = 2; p <= 8; ++p) {
        BigInt q = (BigInt(1) << p) - 1;
        for (BigInt n = 1; n < q; ++n)
            if (component_period(Angle(n, q)) == p) ++total;
    }
    CHECK(seen.size() == total);
}

TEST_CASE("colanding: periodic, preperiodic, mixed") {
    CHECK(colanding(Angle(1, 3), Angle(2, 3)));
    CHECK(colanding(Angle(2, 3), Angle(1, 3)));         // symmetric
    CHECK(colanding(Angle(1, 5), Angle(1, 5)));         // reflexive
    CHECK(colanding(Angle(1, 5), Angle(4, 15)));
    CHECK_FALSE(colanding(Angle(1, 5), Angle(2, 5)));

    // preperiodic pairs of the Fig. 2 edge (paper §3.1: a and b are pinching points)
    CHECK(colanding(Angle(11, 56), Angle(15, 56)));
    CHECK(colanding(Angle(23, 112), Angle(29, 112)));
    CHECK(colanding(Angle(199, 1008), Angle(269, 1008)));
    CHECK(colanding(Angle(103, 504), Angle(131, 504)));

    // oracle-confirmed negatives: rays land at distinct points
    CHECK_FALSE(colanding(Angle(1, 4), Angle(3, 4)));
    CHECK_FALSE(colanding(Angle(1, 6), Angle(5, 6)));
    CHECK_FALSE(colanding(Angle(11, 56), Angle(23, 112)));

    // mixed periodic/preperiodic never co-land
    CHECK_FALSE(colanding(Angle(1, 3), Angle(11, 56)));
    CHECK_FALSE(colanding(Angle(11, 56), Angle(1, 3)));
}

TEST_CASE("colanding is transitive on sampled triples") {
    // pinching points have well-defined ray sets: within a random sample of
    // rationals with denominator <= 2^12, positive pairs must chain.
    std::mt19937_64 rng(424242);
    std::vector<Angle> pool;
    while (pool.size() < 160) {
        long long q = std::uniform_int_distribution<long long>(2, 4096)(rng);
        long long p = std::uniform_int_distribution<long long>(1, q - 1)(rng);
        Angle t(p, q);
        auto oc = orbit_classify(t);
        // periodic pairing is capped at the documented period ceiling; keep
        // periodic pool entries within it (preperiodic itineraries have no cap)
        if (oc.preperiod == 0 && oc.period > kLaminationPeriodCeiling) continue;
        pool.push_back(t);
    }
    // seed some known co-landing clusters so the test is not vacuous
    pool.emplace_back(1, 5);
    pool.emplace_back(4, 15);
    pool.emplace_back(11, 56);
    pool.emplace_back(15, 56);
    for (std::size_t a = 0; a < pool.size(); ++a)
        for (std::size_t b = a + 1; b < pool.size(); ++b) {
            if (!colanding(pool[a], pool[b])) continue;
            for (std::size_t c = 0; c < pool.size(); ++c) {
                if (c == a || c == b) continue;
                CHECK(colanding(pool[a], pool[c]) == colanding(pool[b], pool[c]));
            }
        }
}

TEST_CASE("lamination_text format") {
    auto lam = build_lamination(3);
    CHECK(lamination_text(lam) ==
          "1/3 2/3\n"
          "1/7 2/7\n"
          "3/7 4/7\n"
          "5/7 6/7\n");
}

TEST_CASE("leaves_link basics") {
    Leaf a{Angle(1, 8), Angle(3, 8), 0};
    Leaf crossing{Angle(1, 4), Angle(3, 4), 0};
    Leaf nested{Angle(3, 16), Angle(5, 16), 0};
    Leaf outside{Angle(1, 2), Angle(3, 4), 0};
    Leaf shared{Angle(3, 8), Angle(3, 4), 0};
    CHECK(leaves_link(a, crossing));
    CHECK(leaves_link(crossing, a));
    CHECK_FALSE(leaves_link(a, nested));
    CHECK_FALSE(leaves_link(a, outside));
    CHECK_FALSE(leaves_link(a, shared));   // shared endpoints do not link
}
