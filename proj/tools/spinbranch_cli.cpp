#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spinbranch/analyze.hpp"

using namespace spinbranch;

namespace {

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) fail("IOError", "cannot write " + path);
    f << text;
}

std::vector<long long> parsePrimes(const std::string& text) {
    auto ps = parseIntList(text);
    if (ps.empty()) fail("ParseError", "no primes given");
    for (auto p : ps) (void)Characteristic(p);
    return ps;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinbranch: signatures, crystals and verification suites for spin branching"};
    app.require_subcommand(1);

    long long p = 5;
    std::string partition, weight, out, format = "json", primes = "3,5,7";
    bool partitionGiven = false;

    auto* analyze = app.add_subcommand("analyze", "classify indices and nodes of a weight or partition");
    analyze->add_option("--p", p, "characteristic (0 or an odd prime)");
    auto* partOpt = analyze->add_option("--partition", partition, "comma separated parts");
    auto* weightOpt = analyze->add_option("--weight", weight, "comma separated integers");
    partOpt->excludes(weightOpt);
    analyze->add_option("--out", out, "output file");

    long long maxSize = 0;
    auto* crystal = app.add_subcommand("crystal", "export the crystal graph on restricted partitions");
    crystal->add_option("--p", p, "characteristic");
    crystal->add_option("--max", maxSize, "largest partition size")->check(CLI::NonNegativeNumber);
    crystal->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    crystal->add_option("--out", out, "output file");

    VerifyOptions vo;
    std::string suite;
    bool pGiven = false;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "suite name")->required();
    verify->add_option("--width", vo.width, "interval width or domain size");
    verify->add_option("--n", vo.n, "maximal weight length");
    verify->add_option("--samples", vo.samples, "random samples");
    verify->add_option("--seed", vo.seed, "random seed");
    verify->add_option("--max", vo.maxSize, "largest partition size");
    auto* vp = verify->add_option("--p", p, "single prime (overrides --primes)");
    verify->add_option("--primes", primes, "comma separated primes");
    verify->add_option("--out", out, "output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            partitionGiven = partOpt->count() > 0;
            if (!partitionGiven && weightOpt->count() == 0) fail("ParseError", "give --partition or --weight");
            json report = partitionGiven ? analyzePartition(parseIntList(partition), p) : analyzeWeight(parseIntList(weight), p);
            emit(report.dump(2) + "\n", out);
            return 0;
        }
        if (*crystal) {
            Characteristic ch(p);
            CrystalGraph g = crystalGraph(ch.p, maxSize);
            emit(format == "dot" ? toDot(g) : toJson(g).dump(2) + "\n", out);
            return 0;
        }
        if (*verify) {
            pGiven = vp->count() > 0;
            if (pGiven) {
                Characteristic ch(p);
                vo.primes = {ch.p};
            } else {
                vo.primes = parsePrimes(primes);
            }
            VerdictReport r = runSuite(suite, vo);
            emit(toJson(r).dump(2) + "\n", out);
            if (!out.empty())
                std::cerr << r.suite << ": " << (r.pass() ? "PASS" : "FAIL") << " (" << r.cases() << " cases, "
                          << r.failureCount << " failures)\n";
            return r.pass() ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
