#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mandel/angle.hpp>

#include <random>

using namespace mandel;

TEST_CASE("make_angle reduces and wraps into [0,1)") {
    CHECK(Angle(22, 112) == Angle(11, 56));
    CHECK(Angle(22, 112).str() == "11/56");
    CHECK(Angle(5, 3) == Angle(2, 3));      // 5/3 mod 1
    CHECK(Angle(-1, 3) == Angle(2, 3));     // negative numerator wraps
    CHECK(Angle(7, -3) == Angle(2, 3));     // negative denominator normalized
    CHECK(Angle(4, 2).str() == "0/1");      // integer collapses to 0
    CHECK(Angle().is_zero());
    CHECK_THROWS_AS(Angle(1, 0), DomainError);
}

TEST_CASE("parse accepts p/q and bare integers, rejects junk") {
    CHECK(Angle::parse("11/56") == Angle(11, 56));
    CHECK(Angle::parse("3") == Angle(0, 1));
    CHECK(Angle::parse("199/1008").str() == "199/1008");
    CHECK_THROWS_AS(Angle::parse(""), FormatError);
    CHECK_THROWS_AS(Angle::parse("1/"), FormatError);
    CHECK_THROWS_AS(Angle::parse("/5"), FormatError);
    CHECK_THROWS_AS(Angle::parse("a/b"), FormatError);
    CHECK_THROWS_AS(Angle::parse("1/2/3"), FormatError);
    CHECK_THROWS_AS(Angle::parse("1 / 2"), FormatError);
    CHECK_THROWS_AS(Angle::parse("1/0"), FormatError);
}

TEST_CASE("ordering and arithmetic are exact mod 1") {
    CHECK(Angle(1, 3) < Angle(1, 2));
    CHECK(Angle(199, 1008) < Angle(103, 504));
    CHECK(Angle(1, 2) + Angle(2, 3) == Angle(1, 6));
    CHECK(Angle(1, 6) - Angle(1, 2) == Angle(2, 3));
    CHECK(Angle(1, 3) + Angle(2, 3) == Angle());
}

TEST_CASE("doubling map") {
    CHECK(doubled(Angle(11, 56)) == Angle(11, 28));
    CHECK(doubled(Angle(2, 3)) == Angle(1, 3));
    CHECK(doubled(Angle(11, 56), 7) == Angle(1, 7));   // 2^7 * 11/56 = 176/7 = 1/7 mod 1
    CHECK(doubled(Angle(), 10) == Angle());
    CHECK(halved(Angle(1, 3)) == Angle(1, 6));
    CHECK(halved(Angle(1, 3), true) == Angle(2, 3));
    CHECK(doubled(halved(Angle(5, 7), true)) == Angle(5, 7));
}

TEST_CASE("orbit classification: periodic and preperiodic") {
    auto p = orbit_classify(Angle(1, 5));
    CHECK(p.preperiod == 0);
    CHECK(p.period == 4);      // 1/5 -> 2/5 -> 4/5 -> 3/5 -> 1/5
    CHECK(p.periodic());
    CHECK(p.orbit.size() == 5);
    CHECK(p.orbit.front() == p.orbit.back());

    auto q = orbit_classify(Angle(11, 56));
    CHECK(q.preperiod == 3);   // v2(56) = 3
    CHECK(q.period == 3);      // ord_2(7) = 3
    CHECK_FALSE(q.periodic());
    CHECK(q.orbit[q.preperiod] == q.orbit[q.preperiod + q.period]);

    auto z = orbit_classify(Angle());
    CHECK(z.preperiod == 0);
    CHECK(z.period == 1);

    auto d = orbit_classify(Angle(1, 2));
    CHECK(d.preperiod == 1);
    CHECK(d.period == 1);

    CHECK(orbit_classify(Angle(25, 127)).period == 7);  // ord_2 mod 127
    CHECK(orbit_classify(Angle(199, 1008)).preperiod == 4);
    CHECK(orbit_classify(Angle(199, 1008)).period == 6);
}

TEST_CASE("binary expansions are canonical and round-trip") {
    CHECK(to_expansion(Angle(11, 56)) == BinaryExpansion{"001", "100"});
    CHECK(to_expansion(Angle(1, 3)) == BinaryExpansion{"", "01"});
    CHECK(to_expansion(Angle(1, 5)) == BinaryExpansion{"", "0011"});
    CHECK(to_expansion(Angle(1, 2)) == BinaryExpansion{"1", "0"});
    CHECK(to_expansion(Angle()) == BinaryExpansion{"", "0"});

    CHECK(from_expansion({"", "01"}) == Angle(1, 3));
    CHECK(from_expansion({"1", "0"}) == Angle(1, 2));
    // Non-canonical input still evaluates: 0.0(11) = 0.0111... = binary 0.0 + 3/(4-1)/2
    CHECK(from_expansion({"0", "11"}) == Angle(1, 2));
    CHECK(from_expansion({"", "10"}) == Angle(2, 3));
    CHECK_THROWS_AS(from_expansion({"01", ""}), DomainError);

    // geometric-series example from the tuning section: 0.10(01) = 7/12
    CHECK(from_expansion({"10", "01"}) == Angle(7, 12));
}

TEST_CASE("expansion round-trip on random rationals") {
    std::mt19937_64 rng(20260814);
    std::uniform_int_distribution<long long> den_dist(2, 100000);
    for (int i = 0; i < 500; ++i) {
        long long q = den_dist(rng);
        long long p = std::uniform_int_distribution<long long>(0, q - 1)(rng);
        Angle a(p, q);
        auto e = to_expansion(a);
        CHECK(from_expansion(e) == a);
        auto oc = orbit_classify(a);
        CHECK(e.preperiod_word.size() == oc.preperiod);
        CHECK(e.period_word.size() == oc.period);
        // canonicity: last preperiod digit differs from last period digit
        if (!e.preperiod_word.empty())
            CHECK(e.preperiod_word.back() != e.period_word.back());
    }
}

TEST_CASE("arcs: containment, length, doubling images") {
    Arc open{Angle(1, 4), Angle(3, 4), false, false};
    CHECK(arc_contains(open, Angle(1, 2)));
    CHECK_FALSE(arc_contains(open, Angle(1, 4)));
    CHECK_FALSE(arc_contains(open, Angle(7, 8)));

    Arc closed{Angle(1, 4), Angle(3, 4), true, true};
    CHECK(arc_contains(closed, Angle(1, 4)));
    CHECK(arc_contains(closed, Angle(3, 4)));

    // wrapping arc through 0
    Arc wrap{Angle(3, 4), Angle(1, 4), false, false};
    CHECK(arc_contains(wrap, Angle()));
    CHECK(arc_contains(wrap, Angle(7, 8)));
    CHECK_FALSE(arc_contains(wrap, Angle(1, 2)));

    CHECK(arc_length(open) == Angle(1, 2));
    CHECK(arc_length(wrap) == Angle(1, 2));
    CHECK(arc_length(Arc{Angle(1, 3), Angle(1, 3), false, false}) == Angle());

    auto img = arc_image_under_doubling(Arc{Angle(1, 8), Angle(1, 4), false, false});
    CHECK_FALSE(img.covers_circle);
    CHECK(img.arc.start == Angle(1, 4));
    CHECK(img.arc.end == Angle(1, 2));

    auto full = arc_image_under_doubling(Arc{Angle(0, 1), Angle(1, 2), true, true});
    CHECK(full.covers_circle);
}

TEST_CASE("in_open_arc helper matches arc_contains") {
    CHECK(in_open_arc(Angle(11, 56), Angle(23, 112), Angle(1, 5)));
    CHECK_FALSE(in_open_arc(Angle(11, 56), Angle(23, 112), Angle(1, 3)));
    CHECK_FALSE(in_open_arc(Angle(11, 56), Angle(23, 112), Angle(11, 56)));
}
