#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "latcount/oracle.hpp"

using namespace latcount;
using namespace latcount::testing;

TEST_CASE("enumerate_points on known instances") {
    IntMatrix a = IntMatrix::from_rows({{1, 2}});
    auto pts = enumerate_points(a, iv({4}));
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == iv({0, 2}));
    CHECK(pts[1] == iv({2, 1}));
    CHECK(pts[2] == iv({4, 0}));

    IntMatrix a2 = IntMatrix::from_rows({{2, 3}});
    auto pts2 = enumerate_points(a2, iv({6}));
    REQUIRE(pts2.size() == 2);
    CHECK(pts2[0] == iv({0, 2}));
    CHECK(pts2[1] == iv({3, 0}));

    auto origin = enumerate_points(a, iv({0}));
    REQUIRE(origin.size() == 1);
    CHECK(origin[0] == iv({0, 0}));

    CHECK(enumerate_points(a, iv({-5})).empty());
    CHECK_THROWS_AS(enumerate_points(IntMatrix::from_rows({{1, -1}}), iv({0})),
                    UnboundedOracleError);
}

TEST_CASE("h_brute on known instances") {
    IntMatrix a = IntMatrix::from_rows({{1, 2}});
    CHECK(h_brute(a, iv({4}), {Rat(1, 2), Rat(1, 3)}) == Rat(37, 144));
    CHECK(h_brute(a, iv({-3}), {Rat(1, 2), Rat(1, 3)}) == 0);

    // the interval: z1 + z2, and 1 + z after setting z2 = 1
    IntMatrix seg = IntMatrix::from_rows({{1, 1}});
    LaurentSum h = h_brute_symbolic(seg, iv({1}));
    LaurentSum expected(2);
    expected.add_term(iv({1, 0}), Rat(1));
    expected.add_term(iv({0, 1}), Rat(1));
    CHECK(h == expected);
    CHECK(h.evaluate({Rat(7, 3), Rat(1)}) == Rat(10, 3));
}

TEST_CASE("point count equals h_brute at all-ones") {
    Rng rng(4242);
    for (int t = 0; t < 20; ++t) {
        IntMatrix a = random_bounded_instance(rng);
        IntVec y = random_in_cone_y(a, rng);
        auto pts = enumerate_points(a, y);
        RatVec ones(a.cols(), Rat(1));
        CHECK(Rat(Int(static_cast<long long>(pts.size()))) == h_brute(a, y, ones));

        LaurentSum h = h_brute_symbolic(a, y);
        CHECK(h.size() == pts.size());
        for (const auto& [e, c] : h.terms()) {
            CHECK(c == 1);
            for (const Int& ei : e) CHECK(ei >= 0);
            CHECK(a.mul(e) == y);
        }
    }
}
