#include <doctest.h>

#include <sstream>

#include "spinbranch/crystal.hpp"

using namespace spinbranch;

namespace {

const Partition intro({16, 11, 10, 10, 9, 5, 1});

SigSeq sq(const std::string& text) {
    SigSeq u;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) u.push_back({tok[0], std::stoll(tok.substr(1))});
    return u;
}

std::set<Node> nodesOf(const std::vector<SignedNode>& v) {
    std::set<Node> s;
    for (const auto& a : v) s.insert(a.node);
    return s;
}

}  // namespace

TEST_CASE("contents") {
    CHECK(contP(16, 5) == 0);
    CHECK(contP(3, 5) == 2);
    for (long long k = 1; k <= 10; ++k) CHECK(contP(k, 0) == k - 1);
    for (long long p : {3, 5, 7})
        for (long long s = 1; s <= 30; ++s) CHECK(betaOfContent(contP(s, p), p) == resP(s, p));
}

TEST_CASE("intro nodes") {
    auto n = introNodes(intro, 0, 5);
    CHECK(nodesOf(n.removable) == std::set<Node>{{1, 16}, {1, 15}, {2, 11}, {6, 5}, {7, 1}});
    CHECK(nodesOf(n.addable) == std::set<Node>{{5, 10}, {6, 6}});

    auto empty = introNodes(Partition{}, 0, 5);
    CHECK(empty.removable.empty());
    CHECK(nodesOf(empty.addable) == std::set<Node>{{1, 1}});
    CHECK(introNodes(Partition{}, 1, 5).addable.empty());

    auto one = introNodes(Partition({1}), 0, 5);
    CHECK(nodesOf(one.removable) == std::set<Node>{{1, 1}});
    // (2,1) has content 0 but (1,1) is not 5-strict
    CHECK(one.addable.empty());
    CHECK(nodesOf(introNodes(Partition({1}), 0, 3).addable).empty());
}

TEST_CASE("body nodes") {
    auto a = bodyNodes(Weight({1, 0}), 0, 5);
    CHECK(nodesOf(a.removable) == std::set<Node>{{1, 1}, {2, 0}});
    CHECK(a.addable.empty());
    auto b = bodyNodes(Weight({0}), 0, 5);
    CHECK(nodesOf(b.removable) == std::set<Node>{{1, 0}});
    CHECK(nodesOf(b.addable) == std::set<Node>{{1, 1}});
    CHECK_THROWS_AS(bodyNodes(Weight({1, 1}), 0, 5), Error);
}

TEST_CASE("signatures") {
    CHECK(betaSignature(Weight({1, 0}), 0, 5, true) == sq("-1 -2"));
    CHECK(betaSignature(Weight({0}), 0, 5, false) == sq("+1 -1"));
    CHECK(betaSignature(padded(intro), 0, 5, true) == sq("-1 -6 -7 -8"));
    CHECK(introSignature(intro, 0, 5, false) == sq("-1 -1 -2 +5 +6 -6 -7"));
    CHECK(introSignature(intro, 0, 5, true) == sq("-1 -6 -7"));
    // (1,3) and (2,1) by the first addable rule, (1,4) by the second
    CHECK(introSignature(Partition({2}), 0, 3, false) == sq("+1 +1 +2"));
    CHECK(introSignature(Partition({2}), 0, 3, true) == sq("+1 +1 +2"));
}

TEST_CASE("crystal operators") {
    auto st = nodeStatus(intro, 0, 5);
    REQUIRE(st.good);
    CHECK(st.good->node == Node{1, 16});
    CHECK(st.conormal.empty());
    CHECK(!st.cogood);

    CHECK(eTilde(0, intro, 5) == Partition({15, 11, 10, 10, 9, 5, 1}));
    CHECK(!eTilde(0, Partition{}, 5));
    CHECK(eTilde(1, Partition({2}), 3) == Partition({1}));
    CHECK(fTilde(0, Partition{}, 5) == Partition({1}));
    CHECK(fTilde(1, Partition({1}), 3) == Partition({2}));
    CHECK(!fTilde(0, intro, 5));
}

TEST_CASE("strictness and restriction") {
    CHECK(isPStrict(intro, 5));
    CHECK(isRestricted(intro, 5));
    CHECK(!isPStrict(Partition({2, 2}), 3));
    CHECK(isPStrict(Partition({3, 3}), 3));
    CHECK(!isRestricted(Partition({5}), 3));
    CHECK(isRestricted(Partition({4, 1}), 3));
    CHECK(pStrictViolation({2, 2}, 3).value().find("not divisible") != std::string::npos);
    CHECK(pStrictViolation({1, 2}, 3).value().find("increase") != std::string::npos);
    CHECK(!pStrictViolation({3, 3, 1}, 3));
}

TEST_CASE("crystal graph") {
    auto g = crystalGraph(3, 2);
    CHECK(g.vertices == std::vector<Partition>{Partition{}, Partition({1}), Partition({2})});
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0].from == Partition{});
    CHECK(g.edges[0].color == 0);
    CHECK(g.edges[0].to == Partition({1}));
    CHECK(g.edges[1].color == 1);
    CHECK(g.edges[1].to == Partition({2}));

    auto h = crystalGraph(5, 1);
    CHECK(h.vertices.size() == 2);
    REQUIRE(h.edges.size() == 1);
    CHECK(h.edges[0].color == 0);

    CHECK(crystalGraph(3, 0).vertices == std::vector<Partition>{Partition{}});
}

TEST_CASE("spin statistics") {
    auto s = spinStats(intro, 5);
    CHECK(s.hPprime == 4);
    CHECK(s.type == 'M');
    auto t = spinStats(Partition({2}), 3);
    CHECK(t.gamma.at(0) == 1);
    CHECK(t.gamma.at(1) == 1);
    auto e = spinStats(Partition{}, 5);
    CHECK(e.hPprime == 0);
    CHECK(e.type == 'M');
    for (auto& kv : e.gamma) CHECK(kv.second == 0);
}

TEST_CASE("branching tables") {
    auto t = branchingTables(Partition({2}), 3);
    REQUIRE(t.restrictionSocle.size() == 1);
    CHECK(t.restrictionSocle[0].mu == Partition({1}));
    CHECK(t.restrictionSocle[0].node == Node{1, 2});

    for (long long p : {3, 5, 7}) {
        auto one = branchingTables(Partition({1}), p);
        REQUIRE(one.restrictionSocle.size() == 1);
        CHECK(one.restrictionSocle[0].mu == Partition{});
        CHECK(one.restrictionSocle[0].node == Node{1, 1});
    }
    auto e = branchingTables(Partition{}, 5);
    REQUIRE(e.inductionSocle.size() == 1);
    CHECK(e.inductionSocle[0].mu == Partition({1}));
    CHECK_THROWS_AS(branchingTables(Partition({5}), 3), Error);
}

TEST_CASE("restricted partitions count") {
    // direct filter of all partitions of m
    for (long long p : {3, 5})
        for (long long m = 0; m <= 9; ++m) {
            std::size_t count = 0;
            std::vector<long long> cur;
            forEachPartition(m, m, cur, [&](const std::vector<long long>& v) {
                if (isRestricted(Partition(v), p)) ++count;
            });
            CHECK(restrictedPartitions(m, p).size() == count);
        }
}
