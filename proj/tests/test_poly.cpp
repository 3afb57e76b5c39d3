#include <doctest.h>

#include <random>

#include "spinbranch/poly.hpp"

using namespace spinbranch;

namespace {

Polynomial X(long long i) { return Polynomial::x(i); }
Polynomial Y(long long i) { return Polynomial::y(i); }

}  // namespace

TEST_CASE("sigma operators") {
    CHECK(sigmaApply(1, 2, 3, X(3)) == X(3) + X(1) - X(2));
    CHECK(sigmaApply(1, 2, 3, Y(2)) == Y(2));
    CHECK(sigmaApply(1, 2, 3, sigmaApply(1, 3, 4, X(4))) == sigmaApply(2, 3, 4, sigmaApply(1, 2, 3, X(4))));
}

TEST_CASE("exact division") {
    CHECK(exactDiv((X(1) - X(2)) * (X(1) - Y(2)), 1, 2) == X(1) - Y(2));
    CHECK(exactDiv(Polynomial(), 1, 2).isZero());
    Polynomial f = X(1) - Y(3);
    CHECK(exactDiv(f - sigmaApply(1, 2, 3, f), 1, 2) == Polynomial(1));
    CHECK_THROWS_AS(exactDiv(X(1), 1, 2), NotDivisible);
}

TEST_CASE("u polynomials") {
    CHECK(uPolyOp(1, 5, {}) == (X(1) - Y(2)) * (X(1) - Y(3)) * (X(1) - Y(4)) * (X(1) - Y(5)));
    CHECK(uPolyOp(1, 5, {3}) == (X(1) - Y(2)) * (X(1) - Y(3)) * (X(3) - Y(4)) * (X(3) - Y(5)));
    CHECK(uPolyOp(4, 4, {2}) == Polynomial(1));
}

TEST_CASE("f polynomials") {
    auto one = LFunction::constant(1, 3, 1);
    CHECK(fPolyOp(1, 3, {}, one, {2}) == X(1) - Y(2));
    CHECK(fPolyOp(1, 3, {}, one, {}) == uPolyOp(1, 3, {}));
    // l(2) = 1 puts the sigma threshold at 3, past every variable of u_{1,2}
    CHECK(fPolyOp(1, 2, {}, LFunction::constant(1, 2, 1), {2}).isZero());
}

TEST_CASE("g families") {
    for (long long i = 1; i <= 2; ++i)
        for (long long j = i + 1; j <= i + 4; ++j) {
            std::set<long long> open, half;
            for (long long t = i + 1; t < j; ++t) open.insert(t);
            half = open;
            half.insert(j);
            CHECK(g1(i, j, open) == X(i) - Y(i + 1));
            CHECK(g2(i, i, j, j, half) == Polynomial(1));
            CHECK(g2(i, i + 1, j, j, half) == Polynomial(1));
        }
    CHECK_THROWS_AS(g1(1, 3, {3}), Error);
}

TEST_CASE("linear reduction") {
    CHECK(linReduce(X(1) - Y(3), {{3, 2}}) == X(1) - X(2));
    Polynomial f = X(1) * Y(2) - Y(3);
    CHECK(linReduce(f, {}) == f);
}

TEST_CASE("text format round trip") {
    Polynomial f = Polynomial(3) * X(1) * Y(2) * Y(2) - X(3);
    CHECK(parsePolynomial(toString(f)) == f);
    CHECK(parsePolynomial("3*x1*y2^2 - x3") == f);
    CHECK_THROWS_AS(parsePolynomial("3*z1"), Error);
}

TEST_CASE("sigma operator relations on random polynomials") {
    std::mt19937_64 rng(7);
    auto rnd = [&] {
        Polynomial f;
        for (int t = 0; t < 3; ++t) {
            Polynomial m(static_cast<long long>(rng() % 5) - 2);
            for (int d = 0; d < 3; ++d) m *= rng() % 2 ? X(1 + rng() % 6) : Y(1 + rng() % 6);
            f += m;
        }
        return f;
    };
    for (long long a = 1; a <= 3; ++a)
        for (long long b = a + 1; b <= 4; ++b)
            for (long long c = b + 1; c <= 5; ++c)
                for (int e = 0; e < 2; ++e)
                    for (int h = 0; h < 2; ++h) {
                        Polynomial f = rnd();
                        CHECK(sigmaApply(a, b, b + e, sigmaApply(a, c, c + h, f)) ==
                              sigmaApply(b, c, c + h, sigmaApply(a, b, b + e, f)));
                    }
}
