#include <doctest.h>

#include <random>

#include "spinbranch/raising.hpp"

using namespace spinbranch;

namespace {

DeltaFunction d1(int v) { return DeltaFunction(1, 2, {v}); }

U0Element randomU0(std::mt19937_64& rng) {
    U0Element u;
    for (int t = 0; t < 3; ++t) {
        U0Element m(static_cast<long long>(rng() % 5) - 2);
        for (int d = 0; d < 2; ++d) {
            long long i = 1 + static_cast<long long>(rng() % 3);
            m = m * (rng() % 2 ? uH(i) : uHbar(i));
        }
        u += m;
    }
    return u;
}

}  // namespace

TEST_CASE("u0 products") {
    CHECK(uHbar(1) * uHbar(1) == uH(1));
    CHECK(uHbar(2) * uHbar(1) == -(uHbar(1) * uHbar(2)));
    CHECK((uH(1) + uHbar(1)) * uHbar(1) == uH(1) * uHbar(1) + uH(1));
    CHECK(uHbar(1) * uHbar(2) * uHbar(1) == -(uH(1) * uHbar(2)));
}

TEST_CASE("u0 algebra is associative") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        U0Element a = randomU0(rng), b = randomU0(rng), c = randomU0(rng);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("atoms") {
    CHECK(uC(1, 2) == parseU0("H1^2 - H1 - H2^2 + H2"));
    CHECK(uB(1, 2) == parseU0("H1^2 - H1 - H2^2 - H2"));
    CHECK(uHEps(3, 1) == uHbar(3));
    CHECK(parseU0(toString(uB(1, 2) * uHbar(3))) == uB(1, 2) * uHbar(3));
}

TEST_CASE("bracket homomorphism") {
    CHECK(bracketHom(Polynomial::x(1) - Polynomial::y(2)) == uB(1, 2));
    CHECK(bracketHom(Polynomial::x(1) - Polynomial::x(2)) == uC(1, 2));
    CHECK(bracketHom(Polynomial(1)) == U0Element(1));
    Polynomial f = Polynomial::x(1) * Polynomial::y(3) - Polynomial(2), g = Polynomial::y(2) + Polynomial::x(3);
    CHECK(bracketHom(f * g) == bracketHom(f) * bracketHom(g));
    CHECK_THROWS_AS(bracketHom(Polynomial::x(5), 3), Error);
}

TEST_CASE("recursion examples") {
    CHECK(raisingRec(1, 2, 0, d1(0), SignedSet{bar(2)}) == uH(1) - uH(2));
    CHECK(raisingRec(1, 2, 0, d1(0), SignedSet{even(2)}) == uB(1, 2));
    CHECK(raisingRec(1, 2, 1, d1(1), SignedSet{even(2)}) == uB(1, 2));
    CHECK(raisingRec(1, 2, 1, d1(0), SignedSet{even(2)}).isZero());
    CHECK(raisingRec(1, 2, 1, d1(0), SignedSet{bar(2)}) == uHbar(1) - uHbar(2));
    CHECK_THROWS_AS(raisingRec(1, 3, 0, DeltaFunction(1, 3, {0, 0}), SignedSet{even(2)}), Error);
}

TEST_CASE("closed form examples") {
    CHECK(raisingClosed(1, 2, 0, d1(0), SignedSet{even(2)}) == uB(1, 2));
    CHECK(raisingClosed(1, 2, 1, d1(0), SignedSet{even(2)}).isZero());
    CHECK(raisingClosed(1, 2, 0, d1(0), SignedSet{bar(2)}) == uH(1) - uH(2));
    // (i..j) \ M is the whole open interval
    CHECK(raisingClosed(1, 4, 0, DeltaFunction(1, 4, {0, 0, 0}), SignedSet{even(4)}) == uB(1, 2));
    CHECK_THROWS_AS(raisingClosed(1, 3, 0, DeltaFunction(1, 3, {0, 0}), SignedSet{bar(2), bar(3)}), Error);
}

TEST_CASE("recursion matches closed form for j - i <= 3") {
    RaisingEngine e;
    GCache g;
    for (long long j = 2; j <= 4; ++j) {
        std::vector<long long> inner;
        for (long long t = 2; t < j; ++t) inner.push_back(t);
        for (std::uint64_t m = 0; m < (std::uint64_t(1) << inner.size()); ++m)
            for (int odd = -1; odd <= static_cast<int>(inner.size()); ++odd) {
                std::vector<long long> els;
                for (std::size_t k = 0; k < inner.size(); ++k)
                    if (m >> k & 1) els.push_back(inner[k]);
                els.push_back(j);
                if (odd >= static_cast<int>(els.size())) continue;
                SignedSet M;
                for (std::size_t k = 0; k < els.size(); ++k) M.insert(static_cast<int>(k) == odd ? bar(els[k]) : even(els[k]));
                for (int eps = 0; eps < 2; ++eps)
                    for (std::uint64_t dm = 0; dm < (std::uint64_t(1) << (j - 1)); ++dm) {
                        auto d = DeltaFunction::fromMask(1, j, dm);
                        CHECK(e.rec(1, j, eps, d, M) == raisingClosed(1, j, eps, d, M, &g));
                    }
            }
    }
}

TEST_CASE("evaluation at a weight") {
    CHECK(evalAtWeight(uC(1, 2), Weight({16, 11}), 5).isZero());
    CHECK(evalAtWeight(uHbar(3), Weight({1, 2, 3}), 5) == uHbar(3));
    CHECK(evalAtWeight(uB(1, 2), Weight({2, 1}), 5).isZero());
    CHECK_THROWS_AS(evalAtWeight(uH(1), Weight({1}), 0), Error);
}
