#include <doctest.h>

#include "spinbranch/core.hpp"

using namespace spinbranch;

TEST_CASE("residues") {
    CHECK(resP(16, 5) == 0);
    CHECK(resP(0, 5) == 0);
    CHECK(resP(-1, 5) == 2);
    CHECK(resP(7, 0) == 42);
    for (long long p : {3, 5, 7, 0})
        for (long long j = -20; j <= 20; ++j) CHECK(resP(j, p) == resP(1 - j, p));
}

TEST_CASE("characteristic validation") {
    CHECK_NOTHROW(Characteristic(0));
    CHECK_NOTHROW(Characteristic(7));
    for (long long bad : {1, 2, 4, 9, -3}) {
        try {
            Characteristic c(bad);
            FAIL("accepted " << bad);
        } catch (const Error& e) {
            CHECK(e.kind() == "InvalidCharacteristic");
        }
    }
}

TEST_CASE("signed measure") {
    SignedSet m{even(1), bar(3), even(5), bar(6), bar(7)};
    auto s = signedMeasure(m);
    CHECK(!s.ht.minusInfinity);
    CHECK(s.ht.value == 22);
    CHECK(s.parity == 1);
    REQUIRE(s.min);
    REQUIRE(s.max);
    CHECK(*s.min == even(1));
    CHECK(*s.max == bar(7));

    auto e = signedMeasure(SignedSet{});
    CHECK(e.ht.minusInfinity);
    CHECK(e.parity == 0);
    CHECK(!e.min);

    auto one = signedMeasure(SignedSet{bar(2)});
    CHECK(one.ht.value == 2);
    CHECK(one.parity == 1);
    CHECK(*one.min == bar(2));
    CHECK(*one.max == bar(2));
}

TEST_CASE("signed set operations") {
    SignedSet a{even(2), even(5), bar(8)}, b{bar(3), even(9)};
    CHECK(setUnion(a, b) == SignedSet{even(2), bar(3), even(5), bar(8), even(9)});
    CHECK(replaceElem(SignedSet{even(1), bar(4), even(5)}, bar(4), bar(3)) == SignedSet{even(1), bar(3), even(5)});
    SignedSet r = restrict(SignedSet{even(1), bar(2), even(3), bar(5), even(6)}, segClosed(2, 5));
    CHECK(r == SignedSet{bar(2), even(3), bar(5)});
    CHECK(toString(r) == "{2b,3,5b}");
    CHECK_THROWS_AS(SignedSet({even(2), bar(2)}), Error);
}

TEST_CASE("element order puts the bar first") {
    CHECK(bar(3) < even(3));
    CHECK(even(2) < bar(3));
    CHECK(bar(2) < even(3));
}

TEST_CASE("segments") {
    CHECK(segOpen(1, 4).contains(2));
    CHECK(!segOpen(1, 4).contains(1));
    CHECK(!segOpen(1, 4).contains(4));
    CHECK(segOpenClosed(1, 4).contains(4));
    CHECK(segClosedOpen(1, 4).contains(1));
    CHECK(!segClosedOpen(1, 4).contains(4));
}

TEST_CASE("weights") {
    Weight w({3, 1, 1});
    CHECK(w[1] == 3);
    CHECK(minusW0(w) == Weight({-1, -1, -3}));
    CHECK(isDominant(w));
    CHECK(!isDominantPStrict(w, 5));
    CHECK(isDominantPStrict(Weight({5, 5, 0}), 5));
}
