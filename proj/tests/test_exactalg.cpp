#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "latcount/matrix.hpp"
#include "latcount/numeric.hpp"

using namespace latcount;
using namespace latcount::testing;

namespace {

RatMatrix rat_identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix mul(const IntMatrix& a, const RatMatrix& b) {
    RatMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (a.at(i, k) != 0) out.at(i, j) += Rat(a.at(i, k)) * b.at(k, j);
    return out;
}

// Independent oracle for 2x2 Smith invariants via determinantal divisors:
// d1 is the gcd of all entries, d1*d2 the absolute determinant.
IntVec smith_2x2_expected(const IntMatrix& m) {
    Int g = 0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) g = gcd(g, m.at(i, j));
    Int det = determinant(m);
    if (det < 0) det = -det;
    return {g, det / g};
}

} // namespace

TEST_CASE("determinant on known matrices") {
    CHECK(determinant(IntMatrix::from_rows({{1, 1}, {0, 2}})) == 2);
    CHECK(determinant(IntMatrix::from_rows({{0, 1}, {1, 1}})) == -1);
    CHECK(determinant(IntMatrix::identity(3)) == 1);
    CHECK(determinant(IntMatrix::from_rows({{1, 2}, {2, 4}})) == 0);
    CHECK_THROWS_AS(determinant(IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}})), DimensionError);
}

TEST_CASE("inverse on known matrices") {
    RatMatrix inv = inverse_rational(IntMatrix::from_rows({{1, 1}, {0, 2}}));
    CHECK(inv.at(0, 0) == 1);
    CHECK(inv.at(0, 1) == Rat(-1, 2));
    CHECK(inv.at(1, 0) == 0);
    CHECK(inv.at(1, 1) == Rat(1, 2));

    CHECK(inverse_rational(IntMatrix::identity(3)) == rat_identity(3));

    RatMatrix half = inverse_rational(IntMatrix::from_rows({{2}}));
    CHECK(half.at(0, 0) == Rat(1, 2));

    CHECK_THROWS_AS(inverse_rational(IntMatrix::from_rows({{1, 2}, {2, 4}})), SingularError);
}

TEST_CASE("random matrices invert exactly") {
    Rng rng(42);
    int done = 0;
    while (done < 40) {
        std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rng.uniform(-6, 6);
        if (determinant(m) == 0) continue;
        ++done;
        CHECK(mul(m, inverse_rational(m)) == rat_identity(n));
    }
}

TEST_CASE("smith normal form on known matrices") {
    auto s1 = smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}}));
    CHECK(s1.d == iv({1, 6}));
    CHECK(s1.d == smith_2x2_expected(IntMatrix::from_rows({{2, 0}, {0, 3}})));

    auto s2 = smith_normal_form(IntMatrix::from_rows({{2, 1}, {0, 2}}));
    CHECK(s2.d == iv({1, 4}));
    CHECK(s2.d == smith_2x2_expected(IntMatrix::from_rows({{2, 1}, {0, 2}})));

    auto s3 = smith_normal_form(IntMatrix::identity(4));
    CHECK(s3.d == iv({1, 1, 1, 1}));

    CHECK_THROWS_AS(smith_normal_form(IntMatrix::from_rows({{1, 2}, {2, 4}})), SingularError);
    CHECK_THROWS_AS(smith_normal_form(IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}})), DimensionError);
}

TEST_CASE("smith decomposition invariants on random matrices") {
    Rng rng(7);
    int done = 0;
    while (done < 40) {
        std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rng.uniform(-9, 9);
        Int det = determinant(m);
        if (det == 0) continue;
        ++done;
        auto s = smith_normal_form(m);

        Int udet = determinant(s.U);
        Int vdet = determinant(s.V);
        CHECK((udet == 1 || udet == -1));
        CHECK((vdet == 1 || vdet == -1));

        IntMatrix diag = s.U.mul(m).mul(s.V);
        Int prod = 1;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(s.d[i] > 0);
            prod *= s.d[i];
            for (std::size_t j = 0; j < n; ++j)
                CHECK(diag.at(i, j) == (i == j ? s.d[i] : Int(0)));
            if (i + 1 < n) CHECK(s.d[i + 1] % s.d[i] == 0);
        }
        CHECK(prod == (det < 0 ? -det : det));
    }
}

TEST_CASE("floor and ceiling of rational vectors") {
    CHECK(floor_vector({Rat(5, 2), Rat(-1, 2)}) == iv({2, -1}));
    CHECK(floor_vector({Rat(3), Rat(-2)}) == iv({3, -2}));
    CHECK(ceil_vector({Rat(-1, 2)}) == iv({0}));

    Rng rng(99);
    for (int t = 0; t < 200; ++t) {
        RatVec v(3);
        for (Rat& x : v) {
            x = make_rat(rng.uniform(-50, 50), rng.uniform(1, 12));
        }
        IntVec fl = floor_vector(v);
        RatVec neg(3);
        for (std::size_t i = 0; i < 3; ++i) neg[i] = -v[i];
        IntVec ce = ceil_vector(neg);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(fl[i] + ce[i] == 0);
            CHECK(Rat(fl[i]) <= v[i]);
            CHECK(v[i] < Rat(fl[i] + 1));
        }
    }
}
