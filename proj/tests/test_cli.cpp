#include <doctest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "spinbranch/analyze.hpp"

using namespace spinbranch;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run cli(const std::string& args) {
    Run r;
    std::string cmd = std::string(SPINBRANCH_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

}  // namespace

TEST_CASE("integer lists") {
    CHECK(parseIntList("16,11,-3") == std::vector<long long>{16, 11, -3});
    CHECK(parseIntList("").empty());
    CHECK_THROWS_AS(parseIntList("1,,2"), Error);
    CHECK_THROWS_AS(parseIntList("1,a"), Error);
}

TEST_CASE("analyze a partition") {
    json r = analyzePartition({16, 11, 10, 10, 9, 5, 1}, 5);
    const json& c0 = r["crystal"]["contents"][0];
    CHECK(c0["content"] == 0);
    CHECK(c0["good"]["node"] == json({1, 16}));
    CHECK(c0["reducedSignature"] == json({"-1", "-6", "-7"}));
    CHECK(c0["conormal"].empty());
    CHECK(r["crystal"]["spin"]["type"] == "M");

    json one = analyzePartition({1}, 5);
    CHECK(one["crystal"]["contents"][0]["good"]["node"] == json({1, 1}));

    try {
        analyzePartition({2, 2}, 3);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == "ParseError");
        CHECK(std::string(e.what()).find("not divisible") != std::string::npos);
    }
    CHECK_THROWS_AS(analyzePartition({1}, 4), Error);
}

TEST_CASE("analyze a weight") {
    json r = analyzeWeight({0, 0}, 5);
    CHECK(r["weight"]["indices"][0]["normal"] == false);
    CHECK(r["weight"]["certificates"][0]["certificate"]["case"] == "d");
}

TEST_CASE("command line") {
    Run a = cli("analyze --p 5 --partition 16,11,10,10,9,5,1");
    CHECK(a.status == 0);
    json ja = json::parse(a.out);
    CHECK(ja["crystal"]["contents"][0]["good"]["node"] == json({1, 16}));

    Run b = cli("analyze --p 5 --weight 0,0");
    CHECK(b.status == 0);
    CHECK(json::parse(b.out)["weight"]["certificates"][0]["certificate"]["case"] == "d");

    Run g = cli("crystal --p 3 --max 2 --format json");
    CHECK(g.status == 0);
    json jg = json::parse(g.out);
    CHECK(jg["vertices"].size() == 3);
    CHECK(jg["edges"].size() == 2);

    Run d = cli("crystal --p 5 --max 1 --format dot");
    CHECK(d.status == 0);
    CHECK(d.out.find("\"∅\" -> \"1\" [label=\"0\"") != std::string::npos);

    Run z = cli("crystal --p 3 --max 0 --format json");
    CHECK(json::parse(z.out)["vertices"] == json::array({json::array()}));

    Run v = cli("verify raising-oracle --width 3");
    CHECK(v.status == 0);
    json jv = json::parse(v.out);
    CHECK(jv["pass"] == true);
    CHECK(jv["cases"].get<long long>() > 0);

    Run s1 = cli("verify duality --samples 300 --seed 9");
    Run s2 = cli("verify duality --samples 300 --seed 9");
    CHECK(s1.status == 0);
    CHECK(s1.out == s2.out);

    CHECK(cli("verify nope").status == 2);
    CHECK(cli("analyze --p 4 --weight 1").status == 2);
    CHECK(cli("analyze --p 5 --partition 1,x").status == 2);
    CHECK(cli("analyze --p 5 --partition 2,2").status == 2);
}
