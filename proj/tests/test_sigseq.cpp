#include <doctest.h>

#include <sstream>

#include "spinbranch/sigseq.hpp"

using namespace spinbranch;

namespace {

// "-1 -1 +2" -> (-_1,-_1,+_2)
SigSeq sq(const std::string& text) {
    SigSeq u;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) u.push_back({tok[0], std::stoll(tok.substr(1))});
    return u;
}

SignMap pairs(std::vector<std::string> v) { return SignMap::of(SignMode::Pair, v); }
SignMap singles(std::vector<std::string> v) { return SignMap::of(SignMode::Single, v); }

template <class F>
std::string errorKind(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

}  // namespace

TEST_CASE("reduce") {
    CHECK(reduce(sq("-1 +2")).empty());
    CHECK(reduce(sq("-1 -1 -2 +5 +6 -6 -7")) == sq("-1 -6 -7"));
    CHECK(reduce(sq("+1 -2")) == sq("+1 -2"));
    CHECK(isReducedForm(sq("+1 +2 -3")));
    CHECK(!isReducedForm(sq("-1 +2")));
}

TEST_CASE("products") {
    auto u = pairs({"--", "+-"});
    CHECK(productOf(u, {1, 2}) == sq("-1 -1 +2 -2"));
    CHECK(productOf(u, {2}) == sq("+2 -2"));
    CHECK(productOf(singles({"", "+"})) == sq("+2"));
}

TEST_CASE("rBeta") {
    Weight intro({16, 11, 10, 10, 9, 5, 1, 0});
    CHECK(rBeta(intro, 0, 5) == pairs({"--", "--", "+-", "+-", "++", "+-", "--", "+-"}));
    CHECK(rBeta(Weight({2, 1}), 2, 5) == singles({"-", "+"}));
    // Res 3 = 6 = 1 mod 5 and Res 4 = 12 = 2 mod 5
    CHECK(rBeta(Weight({3}), 1, 5) == singles({"-"}));
}

TEST_CASE("minus w0") {
    CHECK(minusW0Seq(sq("-1 -2"), 2) == sq("+1 +2"));
    CHECK(minusW0Seq({}, 3).empty());
    CHECK(minusW0Seq(sq("-1 +2"), 2) == sq("-1 +2"));
    CHECK(errorKind([] { minusW0Seq(sq("-3"), 2); }) == "MarkOutOfRange");
}

TEST_CASE("sign map domain") {
    auto u = singles({"-", "+"});
    CHECK(errorKind([&] { u.at(3); }) == "OutOfDomain");
    CHECK(errorKind([] { singles({"--"}); }) == "ModeMismatch");
    CHECK(errorKind([] { pairs({"-"}); }) == "ModeMismatch");
}

TEST_CASE("flow analysis") {
    auto r = flowAnalyze(Flow{{{1, 2}}}, singles({"-", "+"}));
    CHECK(r.isFlow);
    CHECK(r.coherent);
    CHECK(r.fullyCoherent);
    CHECK(r.buds.empty());

    auto loop = flowAnalyze(Flow{{{1, 1}}}, pairs({"+-"}));
    CHECK(loop.isWeakFlow);
    CHECK(!loop.isFlow);

    auto none = flowAnalyze(Flow{}, singles({"-"}));
    CHECK(none.isFlow);
    CHECK(none.fullyCoherent);
    CHECK(none.buds == std::set<long long>{1});
}

TEST_CASE("full flows") {
    CHECK(buildFullFlow(singles({"-", "+"})).edges == std::set<Edge>{{1, 2}});
    auto one = pairs({"--"});
    CHECK(buildFullFlow(one).edges.empty());
    CHECK(flowAnalyze(buildFullFlow(one), one).buds.size() == 1);
    CHECK(buildFullFlow(pairs({"--", "++"})).edges == std::set<Edge>{{1, 2}});
    CHECK(errorKind([] { buildFullFlow(singles({"+"})); }) == "NotAllMinus");
}

TEST_CASE("split, lead plus, section, resolution") {
    CHECK(splitIndex(pairs({"--"})) == 1);
    CHECK(splitIndex(pairs({"--", "+-"})) == 1);
    // [+- -- ] = + - - -, so the precondition fails
    CHECK(errorKind([] { splitIndex(pairs({"+-", "--"})); }) == "PreconditionFailed");

    CHECK(leadPlusIndex(pairs({"+-"})) == 1);
    CHECK(leadPlusIndex(pairs({"--", "++", "+-"})) == 3);
    CHECK(leadPlusIndex(pairs({"+-", "--"})) == 1);

    CHECK(sectionOf(pairs({"+-"})) == std::vector<long long>{1});
    CHECK(sectionOf(pairs({"+-", "+-"})) == std::vector<long long>{1, 2});
    CHECK(sectionOf(pairs({"--", "++", "+-"})) == std::vector<long long>{3});

    CHECK(resolutionOf(pairs({"+-"})).edges == std::set<Edge>{{1, 1}});
    CHECK(resolutionOf(pairs({"--", "++", "+-"})).edges == std::set<Edge>{{1, 2}, {3, 3}});
    CHECK(resolutionOf(pairs({"+-", "--", "++"})).edges == std::set<Edge>{{1, 1}, {2, 3}});
}

TEST_CASE("partial flows") {
    auto a = partialFlow(singles({"+"}));
    CHECK(a.J == std::set<long long>{1});
    CHECK(a.G.edges.empty());
    auto b = partialFlow(pairs({"++"}));
    CHECK(b.J == std::set<long long>{1});
    CHECK(b.G.edges.empty());
    auto c = partialFlow(pairs({"--", "++", "++"}));
    CHECK(c.J == std::set<long long>{1, 2, 3});
    CHECK(c.G.edges == std::set<Edge>{{1, 2}});
    CHECK(errorKind([] { partialFlow(pairs({"+-"})); }) == "PreconditionFailed");
}
