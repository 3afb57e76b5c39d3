// Runs the ten acceptance criteria with fixed parameters and prints one PASS/FAIL line each.
// Optional arguments select criteria by number.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>

#include "spinbranch/verify.hpp"

using namespace spinbranch;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

Outcome fromReport(const VerdictReport& r) {
    std::string d = std::to_string(r.cases()) + " cases, " + std::to_string(r.failureCount) + " failures";
    if (!r.failures.empty()) d += "; first: " + r.failures.front().where + " expected " + r.failures.front().expected +
                                  " got " + r.failures.front().actual;
    return {r.pass(), d};
}

std::string signs(const SigSeq& u) {
    std::string s;
    for (const auto& x : u) s += x.sign;
    return s;
}

Outcome workedExample() {
    const long long p = 5;
    Partition l({16, 11, 10, 10, 9, 5, 1});
    std::vector<std::string> bad;
    for (long long s = 1; s <= 16; ++s) {
        static const long long pattern[] = {0, 1, 2, 1, 0};
        if (contP(s, p) != pattern[(s - 1) % 5]) bad.push_back("content of column " + std::to_string(s));
    }
    SigSeq raw = introSignature(l, 0, p, false), red = introSignature(l, 0, p, true);
    if (signs(raw) != "---++--") bad.push_back("raw signature " + toString(raw));
    if (signs(red) != "---") bad.push_back("reduced signature " + toString(red));
    NodeStatus st = nodeStatus(l, 0, p);
    if (!st.good || !(st.good->node == Node{1, 16})) bad.push_back("good node");
    auto e = eTilde(0, l, p);
    if (!e || !(*e == Partition({15, 11, 10, 10, 9, 5, 1}))) bad.push_back("e~_0");
    if (!st.conormal.empty()) bad.push_back("conormal nodes present");
    std::string d = "raw " + toString(raw) + ", reduced " + toString(red);
    for (const auto& b : bad) d += "; mismatch: " + b;
    return {bad.empty(), d};
}

VerifyOptions base() {
    VerifyOptions o;
    o.seed = 20240917;
    o.threads = 0;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        std::string name;
        double limitSeconds;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all{
        {1, "worked example p=5 (16,11,10,10,9,5,1)", 1, workedExample},
        {2, "signature bridge p=3,5,7 n<=6 10^4 weights", 120,
         [] {
             auto o = base();
             o.primes = {3, 5, 7};
             o.n = 6;
             o.samples = 10000;
             return fromReport(verifySignatureBridge(o));
         }},
        {3, "dictionary p=3,5 size<=12", 60,
         [] {
             auto o = base();
             o.primes = {3, 5};
             o.maxSize = 12;
             return fromReport(verifyDictionary(o));
         }},
        {4, "reduction 10^4 sequences x 10 erasure orders", 60,
         [] {
             auto o = base();
             o.samples = 10000;
             return fromReport(verifyReduction(o));
         }},
        {5, "flow constructions, domains <= 6", 300,
         [] {
             auto o = base();
             o.width = 6;
             return fromReport(verifyFlows(o));
         }},
        {6, "polynomial identities j-i <= 6", 600,
         [] {
             auto o = base();
             o.width = 6;
             return fromReport(verifyPolyIdentities(o));
         }},
        {7, "raising oracle j-i <= 5", 600,
         [] {
             auto o = base();
             o.width = 5;
             return fromReport(verifyRaising(o));
         }},
        {8, "index duality 10^4 weights p=3,5,7", 120,
         [] {
             auto o = base();
             o.primes = {3, 5, 7};
             o.samples = 10000;
             return fromReport(verifyDuality(o));
         }},
        {9, "certificates and planners 10^4 weights", 300,
         [] {
             auto o = base();
             o.primes = {3, 5, 7};
             o.samples = 10000;
             return fromReport(verifyCertificates(o));
         }},
        {10, "crystal p=3,5 size<=10", 120,
         [] {
             auto o = base();
             o.primes = {3, 5};
             o.maxSize = 10;
             return fromReport(verifyCrystal(o));
         }},
    };
    std::set<int> pick;
    for (int k = 1; k < argc; ++k) pick.insert(std::atoi(argv[k]));

    bool allOk = true;
    for (const auto& c : all) {
        if (!pick.empty() && !pick.count(c.id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = r.ok && secs < c.limitSeconds;
        allOk = allOk && ok;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", secs, c.limitSeconds);
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << r.detail << "; "
                  << timing << ")" << std::endl;
    }
    return allOk ? 0 : 1;
}
