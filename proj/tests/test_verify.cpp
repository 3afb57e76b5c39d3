// Small runs of every suite, plus determinism of the reports.
#include <doctest.h>

#include "spinbranch/json_io.hpp"
#include "spinbranch/verify.hpp"

using namespace spinbranch;

namespace {

VerifyOptions small() {
    VerifyOptions o;
    o.width = 3;
    o.n = 5;
    o.samples = 500;
    o.maxSize = 8;
    o.primes = {3, 5};
    return o;
}

}  // namespace

TEST_CASE("every suite passes on small ranges") {
    for (const auto& name : suiteNames()) {
        CAPTURE(name);
        VerdictReport r = runSuite(name, small());
        CHECK(r.cases() > 0);
        CHECK(r.failureCount == 0);
        CHECK(r.pass());
    }
}

TEST_CASE("reports do not depend on the thread count") {
    VerifyOptions a = small(), b = small();
    a.threads = 1;
    b.threads = 4;
    for (const char* name : {"duality", "certificates", "reduction"}) {
        CAPTURE(name);
        CHECK(toJson(runSuite(name, a)).dump() == toJson(runSuite(name, b)).dump());
    }
}

TEST_CASE("seed changes the sample") {
    VerifyOptions a = small(), b = small();
    b.seed = a.seed + 1;
    auto ra = verifyDuality(a), rb = verifyDuality(b);
    CHECK(ra.pass());
    CHECK(rb.pass());
    CHECK(toJson(ra).dump() != toJson(rb).dump());
}

TEST_CASE("alternative readings are recorded as notes") {
    auto r = runSuite("raising-oracle", small());
    REQUIRE(r.notes.count("summation identity with factor 2^[xi = eps + sum delta]"));
    CHECK(r.notes.at("summation identity with factor 2^[xi = eps + sum delta]").failures > 0);
    auto d = runSuite("dictionary", small());
    CHECK(d.notes.at("always append -_n").failures > 0);
}

TEST_CASE("unknown suite") {
    try {
        runSuite("nope", small());
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == "UnknownSuite");
    }
}

TEST_CASE("failures are counted and described") {
    detail::Collector c;
    c.check("x", true);
    c.check("x", false, [] { return Failure{"case 1", "a", "b"}; });
    auto r = detail::finish("demo", {}, c);
    CHECK(!r.pass());
    CHECK(r.failureCount == 1);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].where == "x: case 1");
}
