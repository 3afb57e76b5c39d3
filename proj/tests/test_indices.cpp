#include <doctest.h>

#include "spinbranch/indices.hpp"

using namespace spinbranch;

namespace {

const Weight intro({16, 11, 10, 10, 9, 5, 1, 0});

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

TEST_CASE("classification examples") {
    auto c = classifyIndex(intro, 1, 5);
    CHECK(c.normal);
    CHECK(c.good);
    CHECK(c.tensorNormal);
    CHECK(c.tensorGood);

    CHECK(!classifyIndex(Weight({0, 0}), 1, 5).normal);
    for (long long n = 1; n <= 4; ++n) {
        Weight w(std::vector<long long>(static_cast<std::size_t>(n), 3));
        CHECK(classifyIndex(w, n, 5).tensorNormal);
        CHECK(classifyIndex(w, 1, 5).tensorConormal);
    }
    CHECK(errorKind([] { classifyIndex(Weight({1}), 2, 5); }) == "IndexOutOfRange");
}

TEST_CASE("index report") {
    auto one = indexReport(Weight({1}), 5);
    CHECK(one[0].tensorNormal);
    CHECK(one[0].tensorGood);
    auto zz = indexReport(Weight({0, 0}), 5);
    CHECK(zz[0].tensorConormal);
    auto r = indexReport(Weight({2, 1}), 5);
    CHECK(r[0].residue == 2);
    CHECK(!r[0].tensorNormal);
}

TEST_CASE("certificates") {
    auto d = nonNormalCertificate(Weight({0, 0}), 1, 5);
    CHECK(d.caseTag == 'd');
    CHECK(d.j == 2);
    CHECK(d.flow.edges.empty());
    CHECK(d.M == SignedSet{bar(2)});
    CHECK(d.c == 1);

    Weight w({2, 1, 0});
    auto a = nonNormalCertificate(w, 1, 5);
    CHECK(a.caseTag == 'a');
    CHECK(a.j == 2);
    CHECK(a.flow.edges.empty());
    CHECK(a.M == SignedSet{even(2), bar(3)});
    CHECK(a.c == 2);

    auto b = nonNormalCertificate(intro, 3, 5);
    CHECK(b.c % 5 != 0);
    std::string why;
    CHECK(validateCertificate(intro, b, 5, &why));

    CHECK(errorKind([] { nonNormalCertificate(intro, 1, 5); }) == "IsNormal");
}

TEST_CASE("primitive plans") {
    auto p = primitivePlan(Weight({1, 0}), 1, 5);
    REQUIRE(p.steps.size() == 1);
    CHECK(p.steps[0].theorem == "T6.2.3");
    REQUIRE(p.steps[0].M);
    CHECK(*p.steps[0].M == SignedSet{bar(2)});
    CHECK(validatePlan(Weight({1, 0}), p, 5, 1));

    // beta = Res 2 = 2, gap (1..3) reduces to -_2
    auto q = primitivePlan(Weight({2, 2, 0}), 1, 5);
    CHECK(q.steps.front().theorem == "T6.1.3");

    CHECK(errorKind([] { primitivePlan(Weight({0, 0}), 1, 5); }) == "NotNormal");
}

TEST_CASE("extension plans") {
    auto p = extensionPlan(Weight({2, 2, 0}), 1, 2, 5);
    REQUIRE(p.steps.size() == 1);
    CHECK(p.steps[0].theorem == "T6.5.2");
    CHECK(validatePlan(Weight({2, 2, 0}), p, 5, 1, 2));
    CHECK(errorKind([] { extensionPlan(Weight({2, 1, 0}), 1, 2, 5); }) == "PreconditionFailed");
}

TEST_CASE("plans exist exactly for normal indices on small weights") {
    for (long long p : {3, 5})
        for (long long a = -3; a <= 6; ++a)
            for (long long b = -3; b <= 6; ++b)
                for (long long c = -3; c <= 6; ++c) {
                    Weight w({a, b, c});
                    for (long long i = 1; i < 3; ++i) {
                        bool normal = classifyIndex(w, i, p).normal;
                        if (normal) {
                            CHECK(validatePlan(w, primitivePlan(w, i, p), p, i));
                        } else {
                            auto cert = nonNormalCertificate(w, i, p);
                            CHECK(validateCertificate(w, cert, p));
                        }
                    }
                }
}
