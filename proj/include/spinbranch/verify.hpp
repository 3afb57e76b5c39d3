#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "core.hpp"
#include "crystal.hpp"
#include "indices.hpp"
#include "poly.hpp"
#include "raising.hpp"
#include "sigseq.hpp"

namespace spinbranch {

struct VerifyOptions {
    long long width = 4;    // j - i for the polynomial and raising sweeps, domain size for flows
    long long n = 6;        // maximal weight length
    long long samples = 10000;
    std::uint64_t seed = 20240917;
    std::vector<long long> primes{3, 5, 7};
    long long maxSize = 12;  // partition size for dictionary / crystal
    unsigned threads = 0;    // 0: SPINBRANCH_THREADS or hardware
};

struct Failure {
    std::string where, expected, actual;
    bool operator<(const Failure& o) const { return std::tie(where, expected, actual) < std::tie(o.where, o.expected, o.actual); }
};

struct CheckStat {
    long long cases = 0, failures = 0;
};

// Named checks count toward pass/fail. Notes count alternative readings and
// never affect the verdict.
struct VerdictReport {
    std::string suite;
    std::map<std::string, std::string> parameters;
    std::map<std::string, CheckStat> checks;
    std::map<std::string, CheckStat> notes;
    std::vector<Failure> failures;  // sorted, capped
    long long failureCount = 0;

    long long cases() const {
        long long c = 0;
        for (const auto& kv : checks) c += kv.second.cases;
        return c;
    }
    bool pass() const { return failureCount == 0 && cases() > 0; }
};

namespace detail {

constexpr std::size_t kFailureCap = 50;

// Per-task collector, merged in task order so the report does not depend on scheduling.
struct Collector {
    std::map<std::string, CheckStat> checks, notes;
    std::vector<Failure> failures;
    long long failureCount = 0;

    void check(const std::string& name, bool ok, const std::function<Failure()>& describe = {}) {
        auto& s = checks[name];
        ++s.cases;
        if (ok) return;
        ++s.failures;
        ++failureCount;
        if (failures.size() < kFailureCap) {
            Failure f = describe ? describe() : Failure{};
            f.where = name + (f.where.empty() ? "" : ": " + f.where);
            failures.push_back(std::move(f));
        }
    }
    void note(const std::string& name, bool holds) {
        auto& s = notes[name];
        ++s.cases;
        if (!holds) ++s.failures;
    }
    void merge(const Collector& o) {
        for (const auto& [k, v] : o.checks) {
            checks[k].cases += v.cases;
            checks[k].failures += v.failures;
        }
        for (const auto& [k, v] : o.notes) {
            notes[k].cases += v.cases;
            notes[k].failures += v.failures;
        }
        failureCount += o.failureCount;
        failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    }
};

inline unsigned threadCount(unsigned requested) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned cap = hw;
    if (const char* env = std::getenv("SPINBRANCH_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) cap = static_cast<unsigned>(v);
    }
    unsigned t = requested ? std::min(requested, cap) : cap;
    return std::max(1u, t);
}

// Runs task(k, worker, collector) for k in [0, tasks). Each worker index is
// used by one thread only, so per-worker state needs no locking.
inline Collector runTasks(std::size_t tasks, unsigned threads,
                          const std::function<void(std::size_t, unsigned, Collector&)>& task) {
    std::vector<Collector> parts(tasks);
    std::atomic<std::size_t> next{0};
    std::mutex errMutex;
    std::string firstError;
    auto work = [&](unsigned w) {
        for (std::size_t k; (k = next.fetch_add(1)) < tasks;) {
            try {
                task(k, w, parts[k]);
            } catch (const std::exception& e) {
                parts[k].check("no exception", false, [&] { return Failure{"task " + std::to_string(k), "", e.what()}; });
            }
        }
    };
    unsigned t = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(tasks, 1)));
    if (t <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < t; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    Collector all;
    for (const auto& c : parts) all.merge(c);
    return all;
}

inline VerdictReport finish(const std::string& suite, std::map<std::string, std::string> params, Collector c) {
    VerdictReport r;
    r.suite = suite;
    r.parameters = std::move(params);
    r.checks = std::move(c.checks);
    r.notes = std::move(c.notes);
    std::sort(c.failures.begin(), c.failures.end());
    if (c.failures.size() > kFailureCap) c.failures.resize(kFailureCap);
    r.failures = std::move(c.failures);
    r.failureCount = c.failureCount;
    return r;
}

// Independent seeds per chunk: the split depends only on (seed, chunk).
inline std::mt19937_64 chunkRng(std::uint64_t seed, std::size_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), 0x5bd1e995u};
    return std::mt19937_64(seq);
}

constexpr std::size_t kChunks = 64;

inline long long chunkSize(long long samples, std::size_t k) {
    long long base = samples / static_cast<long long>(kChunks);
    return base + (static_cast<long long>(k) < samples % static_cast<long long>(kChunks) ? 1 : 0);
}

inline std::string primesString(const std::vector<long long>& ps) {
    std::string s;
    for (auto p : ps) s += (s.empty() ? "" : ",") + std::to_string(p);
    return s;
}

inline std::string weightString(const Weight& l) {
    std::string s = "(";
    for (std::size_t k = 0; k < l.parts.size(); ++k) s += (k ? "," : "") + std::to_string(l.parts[k]);
    return s + ")";
}

inline std::set<long long> rangeSet(long long a, long long b) {
    std::set<long long> s;
    for (long long t = a; t <= b; ++t) s.insert(t);
    return s;
}

inline std::set<long long> unite(std::set<long long> a, const std::set<long long>& b) {
    a.insert(b.begin(), b.end());
    return a;
}

inline std::vector<std::set<long long>> subsetsOf(long long a, long long b) {
    std::vector<std::set<long long>> r;
    long long n = std::max<long long>(0, b - a + 1);
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << n); ++m) {
        std::set<long long> s;
        for (long long k = 0; k < n; ++k)
            if (m >> k & 1) s.insert(a + k);
        r.push_back(s);
    }
    return r;
}

inline std::string setString(const std::set<long long>& s) {
    std::string r = "{";
    for (auto t : s) r += (r.size() > 1 ? "," : "") + std::to_string(t);
    return r + "}";
}

}  // namespace detail

// ---------------------------------------------------------------- reduction

inline VerdictReport verifyReduction(const VerifyOptions& o) {
    using namespace detail;
    unsigned threads = threadCount(o.threads);
    auto c = runTasks(kChunks, threads, [&](std::size_t k, unsigned, Collector& col) {
        auto rng = chunkRng(o.seed, k);
        for (long long s = 0; s < chunkSize(o.samples, k); ++s) {
            std::size_t len = rng() % 21;
            long long nMarks = 1 + static_cast<long long>(rng() % 8);
            SigSeq u;
            for (std::size_t t = 0; t < len; ++t)
                u.push_back({rng() % 2 ? '+' : '-', 1 + static_cast<long long>(rng() % nMarks)});
            SigSeq canon = reduce(u);
            auto desc = [&](const SigSeq& got) {
                return [=] { return Failure{toString(u), toString(canon), toString(got)}; };
            };
            // ten random erasure orders
            for (int rep = 0; rep < 10; ++rep) {
                SigSeq w = u;
                while (true) {
                    std::vector<std::size_t> spots;
                    for (std::size_t t = 0; t + 1 < w.size(); ++t)
                        if (w[t].sign == '-' && w[t + 1].sign == '+') spots.push_back(t);
                    if (spots.empty()) break;
                    std::size_t t = spots[rng() % spots.size()];
                    w.erase(w.begin() + static_cast<long>(t), w.begin() + static_cast<long>(t) + 2);
                }
                col.check("random erasure order", w == canon, desc(w));
            }
            Shape sh = shapeOf(canon);
            col.check("shape +^s -^r", isReducedForm(canon), desc(canon));
            col.check("s - r = #plus - #minus", sh.plus - sh.minus == countSign(u, '+') - countSign(u, '-'), desc(canon));
            col.check("idempotent", reduce(canon) == canon, desc(reduce(canon)));
            // [uv] = [[u]v] = [u[v]]
            std::size_t cut = len ? rng() % (len + 1) : 0;
            SigSeq a(u.begin(), u.begin() + static_cast<long>(cut)), b(u.begin() + static_cast<long>(cut), u.end());
            SigSeq ra = reduce(a), rb = reduce(b);
            SigSeq left = ra, right = a;
            left.insert(left.end(), b.begin(), b.end());
            right.insert(right.end(), rb.begin(), rb.end());
            col.check("[uv] = [[u]v]", reduce(left) == canon, desc(reduce(left)));
            col.check("[uv] = [u[v]]", reduce(right) == canon, desc(reduce(right)));
            SigSeq mw = minusW0Seq(u, nMarks);
            col.check("[-w0 u] = -w0 [u]", reduce(mw) == minusW0Seq(canon, nMarks), desc(reduce(mw)));
            // pair-mode maps reduce to +^s -^r with s = r mod 2
            std::size_t dom = 1 + rng() % 10;
            static const char* pv[] = {"", "--", "+-", "++"};
            SignMap pm(SignMode::Pair);
            for (std::size_t t = 1; t <= dom; ++t) pm.set(static_cast<long long>(t), pv[rng() % 4]);
            Shape ps = shapeOf(reducedProduct(pm));
            col.check("pair mode parity", (ps.plus - ps.minus) % 2 == 0,
                      [&] { return Failure{toString(productOf(pm)), "s = r mod 2", toString(reducedProduct(pm))}; });
        }
    });
    return finish("reduction", {{"samples", std::to_string(o.samples)}, {"seed", std::to_string(o.seed)}}, std::move(c));
}

// ---------------------------------------------------------------- flows

namespace detail {

inline bool isBeginning(const std::set<long long>& J, const std::set<long long>& dom) {
    if (J.empty()) return false;
    long long top = *J.rbegin();
    for (auto d : dom)
        if ((d <= top) != (J.count(d) > 0)) return false;
    return true;
}

inline std::string mapString(const SignMap& u) {
    std::string s = "(";
    bool first = true;
    for (const auto& [k, v] : u.values()) {
        s += (first ? "" : ",") + (v.empty() ? std::string("0") : v);
        first = false;
    }
    return s + ")";
}

inline void checkFlowConstructions(const SignMap& u, Collector& col) {
    const bool pairMode = u.mode() == SignMode::Pair;
    const SigSeq red = reducedProduct(u);
    const Shape sh = shapeOf(red);
    const std::string id = mapString(u);
    auto fd = [&](const std::string& exp, const std::string& got) {
        return [=] { return Failure{id, exp, got}; };
    };
    auto throwsPrecondition = [&](const std::string& name, const std::string& kind, auto&& fn) {
        bool threw = false;
        try {
            fn();
        } catch (const Error& e) {
            threw = e.kind() == kind;
        }
        col.check(name + " rejects bad input", threw, fd(kind, "no error"));
    };

    // full flows
    if (sh.plus == 0) {
        Flow g = buildFullFlow(u);
        FlowReport fr = flowAnalyze(g, u);
        long long wantBuds = pairMode ? sh.minus / 2 : sh.minus;
        col.check("buildFullFlow is a fully coherent flow", fr.isFlow && fr.fullyCoherent, fd("fully coherent flow", toString(g)));
        col.check("buildFullFlow bud count", static_cast<long long>(fr.buds.size()) == wantBuds,
                  fd(std::to_string(wantBuds), std::to_string(fr.buds.size())));
    } else {
        throwsPrecondition("buildFullFlow", "NotAllMinus", [&] { buildFullFlow(u); });
    }

    if (pairMode) {
        // split index
        if (sh.plus == 0 && sh.minus > 0) {
            long long a = splitIndex(u);
            Shape above = shapeOf(reducedProduct(u.above(a)));
            Shape upto = shapeOf(reducedProduct(u.below(a + 1)));
            bool ok = u.at(a) == "--" && (above == Shape{0, 0} || above == Shape{1, 1}) && upto == Shape{0, sh.minus};
            col.check("splitIndex postcondition", ok, fd("split point", std::to_string(a)));
        } else {
            throwsPrecondition("splitIndex", "PreconditionFailed", [&] { splitIndex(u); });
        }
        // lead plus, section, resolution
        if (sh.plus == 1) {
            long long a = leadPlusIndex(u);
            col.check("leadPlusIndex postcondition", u.at(a) == "+-" && reducedProduct(u.below(a)).empty(),
                      fd("+- with empty prefix", std::to_string(a)));
            auto sec = sectionOf(u);
            bool ok = !sec.empty() && std::is_sorted(sec.begin(), sec.end());
            for (std::size_t k = 0; ok && k < sec.size(); ++k) {
                ok = u.at(sec[k]) == "+-";
                SignMap gap = k == 0 ? u.below(sec[k]) : u.between(sec[k - 1], sec[k]);
                ok = ok && reducedProduct(gap).empty();
            }
            ok = ok && shapeOf(reducedProduct(u.above(sec.back()))) == Shape{0, sh.minus - 1};
            std::string secStr;
            for (auto a2 : sec) secStr += std::to_string(a2) + " ";
            col.check("sectionOf postcondition", ok, fd("section", secStr));
            Flow res = resolutionOf(u);
            FlowReport fr = flowAnalyze(res, u);
            bool loops = true;
            for (auto a2 : sec) loops = loops && res.edges.count({a2, a2});
            col.check("resolutionOf is a weak flow, not a flow, fully coherent",
                      fr.isWeakFlow && !fr.isFlow && fr.fullyCoherent && loops, fd("resolution", toString(res)));
        } else {
            throwsPrecondition("leadPlusIndex", "PreconditionFailed", [&] { leadPlusIndex(u); });
            throwsPrecondition("sectionOf", "PreconditionFailed", [&] { sectionOf(u); });
        }
    }

    // partial flows
    const int need = pairMode ? 2 : 1;
    if (sh.plus >= need) {
        PartialFlow pf = partialFlow(u);
        SignMap uj = u.restrictTo(pf.J);
        FlowReport fr = flowAnalyze(pf.G, uj);
        bool ok = isBeginning(pf.J, u.domain()) && shapeOf(reducedProduct(uj)) == Shape{need, 0} && fr.isFlow &&
                  fr.coherent && !fr.fullyCoherent && fr.buds.empty();
        col.check("partialFlow postcondition", ok, fd("J with [prod_J] = +^" + std::to_string(need), setString(pf.J) + " " + toString(pf.G)));
    } else {
        throwsPrecondition("partialFlow", "PreconditionFailed", [&] { partialFlow(u); });
    }
}

}  // namespace detail

inline VerdictReport verifyFlows(const VerifyOptions& o) {
    using namespace detail;
    struct Job {
        SignMode mode;
        long long size;
        std::uint64_t lo, hi;
    };
    std::vector<Job> jobs;
    for (long long sz = 1; sz <= o.width; ++sz)
        for (SignMode mode : {SignMode::Single, SignMode::Pair}) {
            std::uint64_t base = mode == SignMode::Single ? 3 : 4, total = 1;
            for (long long k = 0; k < sz; ++k) total *= base;
            const std::uint64_t step = 512;
            for (std::uint64_t lo = 0; lo < total; lo += step) jobs.push_back({mode, sz, lo, std::min(total, lo + step)});
        }
    auto c = runTasks(jobs.size(), threadCount(o.threads), [&](std::size_t k, unsigned, Collector& col) {
        const Job& jb = jobs[k];
        static const std::vector<std::string> single{"", "-", "+"}, pair{"", "--", "+-", "++"};
        const auto& alpha = jb.mode == SignMode::Single ? single : pair;
        for (std::uint64_t code = jb.lo; code < jb.hi; ++code) {
            SignMap u(jb.mode);
            std::uint64_t c2 = code;
            for (long long t = 1; t <= jb.size; ++t) {
                u.set(t, alpha[c2 % alpha.size()]);
                c2 /= alpha.size();
            }
            checkFlowConstructions(u, col);
        }
    });
    return finish("flows", {{"width", std::to_string(o.width)}}, std::move(c));
}

// ---------------------------------------------------------------- polynomial identities

namespace detail {

inline Polynomial randomPoly(std::mt19937_64& rng, long long maxIndex) {
    Polynomial f;
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
        Polynomial m(static_cast<long long>(rng() % 7) - 3);
        int deg = static_cast<int>(rng() % 4);
        for (int d = 0; d < deg; ++d) {
            long long idx = 1 + static_cast<long long>(rng() % static_cast<std::uint64_t>(maxIndex));
            m *= rng() % 2 ? Polynomial::x(idx) : Polynomial::y(idx);
        }
        f += m;
    }
    return f;
}

// sigma relations, commutation, and exact division of (id - sigma) f on random polynomials
inline void polySigmaChecks(long long w, std::uint64_t seed, Collector& col) {
    auto rng = chunkRng(seed, 1000 + static_cast<std::size_t>(w));
    const long long top = w + 2;
    auto desc = [](const Polynomial& f, const Polynomial& a, const Polynomial& b) {
        return [=] { return Failure{toString(f), toString(a), toString(b)}; };
    };
    for (long long a = 1; a <= top; ++a)
        for (long long b = a + 1; b <= top; ++b)
            for (int e = 0; e < 2; ++e) {
                for (long long c = b + 1; c <= top; ++c)
                    for (int h = 0; h < 2; ++h)
                        for (int rep = 0; rep < 3; ++rep) {
                            Polynomial f = randomPoly(rng, top + 2);
                            Polynomial lhs = sigmaApply(a, b, b + e, sigmaApply(a, c, c + h, f));
                            Polynomial rhs = sigmaApply(b, c, c + h, sigmaApply(a, b, b + e, f));
                            col.check("sigma relation (a<b<c)", lhs == rhs, desc(f, lhs, rhs));
                        }
                for (long long c = b; c <= top; ++c)
                    for (long long d = c + 1; d <= top; ++d)
                        for (int h = 0; h < 2; ++h) {
                            if (b + e > c) continue;
                            Polynomial f = randomPoly(rng, top + 2);
                            Polynomial lhs = sigmaApply(a, b, b + e, sigmaApply(c, d, d + h, f));
                            Polynomial rhs = sigmaApply(c, d, d + h, sigmaApply(a, b, b + e, f));
                            col.check("sigma operators commute (b+e <= c)", lhs == rhs, desc(f, lhs, rhs));
                        }
                for (long long k = a - 1; k <= top + 1; ++k) {
                    Polynomial f = randomPoly(rng, top + 2);
                    Polynomial num = f - sigmaApply(a, b, k, f);
                    bool ok = true;
                    try {
                        Polynomial q = exactDiv(num, a, b);
                        ok = q * (Polynomial::x(a) - Polynomial::x(b)) == num;
                    } catch (const NotDivisible&) {
                        ok = false;
                    }
                    col.check("(id - sigma) f divisible by x_a - x_b", ok, [&] {
                        return Failure{toString(f) + " a=" + std::to_string(a) + " b=" + std::to_string(b) + " k=" + std::to_string(k),
                                       "exact quotient", "remainder"};
                    });
                }
            }
}

inline LFunction lFromMask(long long i, long long j, std::uint64_t m) {
    LFunction l;
    for (long long t = i + 1; t <= j; ++t) l.values[t] = static_cast<int>((m >> (t - i - 1)) & 1);
    return l;
}

inline std::set<long long> setFromMask(long long lo, long long hi, std::uint64_t m) {
    std::set<long long> s;
    for (long long t = lo; t <= hi; ++t)
        if (m >> (t - lo) & 1) s.insert(t);
    return s;
}

// Ideal reduction checks over all D, l on (i..j), S, ends R and admissible injections phi.
inline void polyIdealChecks(long long i, long long j, std::uint64_t Dmask, Collector& col) {
    const long long inner = j - i - 1;  // size of (i..j)
    const std::set<long long> D = setFromMask(i + 1, j - 1, Dmask);
    for (std::uint64_t lm = 0; lm < (std::uint64_t(1) << inner); ++lm) {
        LFunction l = lFromMask(i, j, lm);  // l(j) = 0, never read
        FFamily fam(i, j, D, l);
        for (std::uint64_t sm = 0; sm < (std::uint64_t(1) << inner); ++sm) {
            const std::set<long long> S = setFromMask(i + 1, j - 1, sm);
            const Polynomial& f = fam(S);
            std::vector<long long> sv(S.begin(), S.end());
            for (std::size_t cut = 0; cut <= sv.size(); ++cut) {
                std::vector<long long> R(sv.begin() + static_cast<long>(cut), sv.end());
                bool lOk = true;
                for (auto t : R)
                    if (D.count(t) && l(t) != 0) lOk = false;
                if (!lOk) continue;
                std::vector<long long> phi(R.size());
                std::set<long long> used;
                std::function<void(std::size_t)> go = [&](std::size_t pos) {
                    if (pos == R.size()) {
                        // closedEnd selects [t+l(t)..phi(t)] instead of [t+l(t)..phi(t))
                        auto reduceWith = [&](bool closedEnd, bool& hit) {
                            std::vector<std::pair<long long, long long>> subst;
                            hit = false;
                            for (std::size_t k = 0; k < R.size(); ++k) {
                                long long t = R[k], ph = phi[k];
                                bool meets = false;
                                for (auto d : D)
                                    if (d >= t + l(t) && (d < ph || (closedEnd && d == ph))) meets = true;
                                hit = hit || meets;
                                subst.emplace_back(ph, meets ? dMax(D, i, ph) : t);
                            }
                            return subst;
                        };
                        bool closedHit = false, hit = false;
                        auto closedSubst = reduceWith(true, closedHit);
                        auto subst = reduceWith(false, hit);
                        std::set<long long> image(phi.begin(), phi.end());
                        Polynomial red = linReduce(f, subst);
                        if (closedHit) {
                            Polynomial cr = linReduce(f, closedSubst);
                            col.note("vanishing with the closed interval [t+l(t)..phi(t)]", cr.isZero());
                        }
                        if (hit) {
                            col.check("f vanishes modulo the ideal", red.isZero(),
                                      [&] { return Failure{"D=" + setString(D) + " S=" + setString(S), "0", toString(red)}; });
                        } else if (cut == 0) {
                            Polynomial half(1), open(1);
                            for (long long t = i + 1; t <= j; ++t)
                                if (!image.count(t)) {
                                    Polynomial fac = Polynomial::x(dMax(D, i, t)) - Polynomial::y(t);
                                    half *= fac;
                                    if (t < j) open *= fac;
                                }
                            Polynomial want = linReduce(half, subst);
                            col.check("f modulo the ideal is the product over (i..j] minus phi(S)", red == want,
                                      [&] { return Failure{"D=" + setString(D) + " S=" + setString(S), toString(want), toString(red)}; });
                            col.note("product over (i..j) minus phi(S), as printed", red == linReduce(open, subst));
                        }
                        return;
                    }
                    long long t = R[pos];
                    for (long long v = t + l(t); v < j; ++v) {
                        if (v <= i || used.count(v)) continue;
                        used.insert(v);
                        phi[pos] = v;
                        go(pos + 1);
                        used.erase(v);
                    }
                };
                go(0);
            }
        }
    }
}

// sigma_{a,b}^{b+e} fixes f_{c,d}^{D,l}(S) when b + e <= c
inline void polyInvarianceChecks(long long c, long long d, std::uint64_t Dmask, Collector& col) {
    const long long inner = d - c - 1;
    const std::set<long long> D = setFromMask(c + 1, d - 1, Dmask);
    for (std::uint64_t lm = 0; lm < (std::uint64_t(1) << inner); ++lm) {
        FFamily fam(c, d, D, lFromMask(c, d, lm));
        for (std::uint64_t sm = 0; sm < (std::uint64_t(1) << inner); ++sm) {
            const Polynomial& f = fam.at(sm);
            for (long long a = 1; a < c; ++a)
                for (long long b = a + 1; b <= c; ++b)
                    for (int e = 0; e < 2; ++e) {
                        if (b + e > c) continue;
                        Polynomial g = sigmaApply(a, b, b + e, f);
                        col.check("sigma fixes f on a later interval", g == f,
                                  [&] { return Failure{"c=" + std::to_string(c) + " d=" + std::to_string(d), toString(f), toString(g)}; });
                    }
        }
    }
}

// g1 / g2 recursions at fixed (i, j)
inline void polyGChecks(long long i, long long j, GCache& G, Collector& col) {
    using S_t = std::set<long long>;
    using P = Polynomial;
    auto X = [](long long t) { return P::x(t); };
    auto Y = [](long long t) { return P::y(t); };
    auto eq = [&](const std::string& name, const P& a, const P& b, const std::string& ctx) {
        col.check(name, a == b, [&] { return Failure{ctx, toString(b), toString(a)}; });
    };
    const std::string at = "i=" + std::to_string(i) + " j=" + std::to_string(j);
    auto ctx = [&](const S_t& S) { return at + " S=" + setString(S); };

    eq("g1((i..j)) = x_i - y_{i+1}", G.g1(i, j, rangeSet(i + 1, j - 1)), X(i) - Y(i + 1), at);
    eq("g2_{i,i,j,j}((i..j]) = 1", G.g2(i, i, j, j, rangeSet(i + 1, j)), P(1), at);
    eq("g2_{i,i+1,j,j}((i..j]) = 1", G.g2(i, i + 1, j, j, rangeSet(i + 1, j)), P(1), at);
    if (j < i + 2) return;

    for (const auto& S : subsetsOf(i + 2, j - 1)) {
        const S_t T = unite({i + 1}, S);
        eq("g1 step at i+1", (X(i) - Y(i + 1)) * G.g1(i + 1, j, S) + (X(i) - X(i + 1)) * G.g1(i, j, T), G.g1(i, j, S), ctx(S));
        P l = G.g1(i + 1, j, S) + G.g1(i, j, T);
        eq("g1 sum equals g2_{i,i,i+1,j}", l, G.g2(i, i, i + 1, j, T), ctx(S));
        eq("g1 equals g2_{i,i+1,i+1,j}", G.g1(i + 1, j, S), G.g2(i, i + 1, i + 1, j, T), ctx(S));
        col.note("g1 sum equals g2_{i,i,j,j}", l == G.g2(i, i, j, j, T));
        col.note("g1 sum equals g2_{i,i+1,j,j}", l == G.g2(i, i + 1, j, j, T));
        for (long long q = i + 2; q <= j; ++q) {
            const std::string cq = ctx(S) + " q=" + std::to_string(q);
            eq("g2 step at i+1 (k = i)",
               (X(i + 1) - Y(i + 1)) * G.g2(i + 1, i + 1, q, j, S) + (X(i) - X(i + 1)) * G.g2(i, i, q, j, T),
               G.g2(i, i, q, j, S), cq);
            col.note("g2 step at i+1 with x_i - y_{i+1}",
                     (X(i) - Y(i + 1)) * G.g2(i + 1, i + 1, q, j, S) + (X(i) - X(i + 1)) * G.g2(i, i, q, j, T) ==
                         G.g2(i, i, q, j, S));
            eq("g2_{i+1,i+1} = g2_{i,i+1}", G.g2(i + 1, i + 1, q, j, S), G.g2(i, i + 1, q, j, T), cq);
            if (S.count(i + 2))
                eq("g2 shift at k = i+2", (X(i) - Y(i + 1)) * G.g2(i + 1, i + 2, q, j, S), G.g2(i, i + 2, q, j, S), cq);
            for (long long k = i + 2; k <= q; ++k)
                eq("g2 step at i+1 (k > i+1)",
                   (X(i) - Y(i + 1)) * G.g2(i + 1, k, q, j, S) + (X(i) - X(i + 1)) * G.g2(i, k, q, j, T),
                   G.g2(i, k, q, j, S), cq + " k=" + std::to_string(k));
        }
    }
    for (long long m = i + 2; m < j; ++m)
        for (const auto& S : subsetsOf(m + 1, j - 1)) {
            P lhs = (X(i) - Y(i + 1)) * G.g1(m, j, S) + G.g1(i, j, unite(unite(rangeSet(i + 1, m - 2), {m}), S)) +
                    (X(m - 1) - X(m)) * G.g1(i, j, unite(rangeSet(i + 1, m), S));
            eq("g1 step at m", lhs, G.g1(i, j, unite(rangeSet(i + 1, m - 1), S)), ctx(S) + " m=" + std::to_string(m));
        }
    for (long long q = i + 2; q < j; ++q)
        for (const auto& S : subsetsOf(q + 1, j - 1)) {
            const S_t T = unite(rangeSet(i + 1, q), S);
            const std::string cq = ctx(S) + " q=" + std::to_string(q);
            eq("g2 lowering q (k = i)", G.g1(q, j, S) + G.g2(i, i, q - 1, j, T), G.g2(i, i, q, j, T), cq);
            eq("g2 lowering q (k = i+1)", G.g1(q, j, S) + G.g2(i, i + 1, q - 1, j, T), G.g2(i, i + 1, q, j, T), cq);
        }
    for (long long m = i + 2; m < j; ++m)
        for (long long q = m + 1; q <= j; ++q)
            for (const auto& S : subsetsOf(m + 1, j)) {
                const S_t A = unite(unite(rangeSet(i + 1, m - 2), {m}), S), Bm = unite(rangeSet(i + 1, m), S),
                          C = unite(rangeSet(i + 1, m - 1), S);
                const std::string cm = ctx(S) + " m=" + std::to_string(m) + " q=" + std::to_string(q);
                eq("g2 step at m (k = i)",
                   (X(m) - Y(m)) * G.g2(m, m, q, j, S) + G.g2(i, i, q, j, A) + (X(m - 1) - X(m)) * G.g2(i, i, q, j, Bm),
                   G.g2(i, i, q, j, C), cm);
                P mid = i + 1 < m - 1 ? G.g2(i, i + 1, q, j, A) : P();
                eq("g2 step at m (k = i+1)",
                   (X(m) - Y(m)) * G.g2(m, m, q, j, S) + mid + (X(m - 1) - X(m)) * G.g2(i, i + 1, q, j, Bm),
                   G.g2(i, i + 1, q, j, C), cm);
                eq("g2 step at m (k = m)", (X(i) - Y(i + 1)) * G.g2(m, m, q, j, S), G.g2(i, m, q, j, A), cm);
                if (S.count(m + 1)) {
                    eq("g2 step at m (k = m+1)", (X(i) - Y(i + 1)) * G.g2(m, m + 1, q, j, S), G.g2(i, m + 1, q, j, C), cm);
                    col.note("g2 step at m (k = m+1) with (i..m]",
                             (X(i) - Y(i + 1)) * G.g2(m, m + 1, q, j, S) == G.g2(i, m + 1, q, j, Bm));
                }
                for (long long k = m + 2; k <= q; ++k)
                    eq("g2 step at m (k > m+1)",
                       (X(i) - Y(i + 1)) * G.g2(m, k, q, j, S) + G.g2(i, k, q, j, A) +
                           (X(m - 1) - X(m)) * G.g2(i, k, q, j, Bm),
                       G.g2(i, k, q, j, C), cm + " k=" + std::to_string(k));
            }
}

}  // namespace detail

// Translation invariance lets the sweeps start at i = 1; i = 2 is run as a spot check.
inline VerdictReport verifyPolyIdentities(const VerifyOptions& o) {
    using namespace detail;
    struct Job {
        int kind;  // 0 sigma, 1 ideal, 2 invariance, 3 g-identities
        long long i, j;
        std::uint64_t D;
    };
    std::vector<Job> jobs;
    const long long w = o.width;
    jobs.push_back({0, 0, w, 0});
    for (long long width = 1; width <= w; ++width) {
        for (std::uint64_t D = 0; D < (std::uint64_t(1) << std::max<long long>(0, width - 1)); ++D) {
            jobs.push_back({1, 1, 1 + width, D});
            jobs.push_back({2, 3, 3 + width, D});
        }
        for (long long i : {1LL, 2LL}) jobs.push_back({3, i, i + width, 0});
    }
    // largest jobs first keeps the pool busy
    std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.j - a.i > b.j - b.i; });
    unsigned threads = threadCount(o.threads);
    auto c = runTasks(jobs.size(), threads, [&](std::size_t k, unsigned, Collector& col) {
        const Job& jb = jobs[k];
        try {
            if (jb.kind == 0) polySigmaChecks(jb.j, o.seed, col);
            if (jb.kind == 1) polyIdealChecks(jb.i, jb.j, jb.D, col);
            if (jb.kind == 2) polyInvarianceChecks(jb.i, jb.j, jb.D, col);
            if (jb.kind == 3) {
                GCache G;
                polyGChecks(jb.i, jb.j, G, col);
            }
        } catch (const NotDivisible& e) {
            col.check("every division is exact", false, [&] { return Failure{"", "exact", e.what()}; });
        }
    });
    return finish("poly-identities", {{"width", std::to_string(o.width)}, {"seed", std::to_string(o.seed)}}, std::move(c));
}

// ---------------------------------------------------------------- raising

namespace detail {

// all admissible M for (i, j): subsets of (i..j] containing j, with at most one odd element
inline std::vector<SignedSet> admissibleM(long long i, long long j) {
    std::vector<SignedSet> out;
    std::vector<long long> inner;
    for (long long t = i + 1; t < j; ++t) inner.push_back(t);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << inner.size()); ++mask) {
        std::vector<long long> els;
        for (std::size_t k = 0; k < inner.size(); ++k)
            if (mask >> k & 1) els.push_back(inner[k]);
        els.push_back(j);
        for (int oddPos = -1; oddPos < static_cast<int>(els.size()); ++oddPos) {
            SignedSet M;
            for (std::size_t k = 0; k < els.size(); ++k) M.insert(static_cast<int>(k) == oddPos ? bar(els[k]) : even(els[k]));
            out.push_back(M);
        }
    }
    return out;
}

}  // namespace detail

inline VerdictReport verifyRaising(const VerifyOptions& o) {
    using namespace detail;
    struct Job {
        long long i, j;
        SignedSet M;
    };
    std::vector<Job> jobs;
    for (long long i : {1LL, 2LL})
        for (long long j = i + 1; j <= i + o.width; ++j)
            for (const auto& M : admissibleM(i, j)) jobs.push_back({i, j, M});
    std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.j - a.i > b.j - b.i; });
    unsigned threads = threadCount(o.threads);
    std::vector<RaisingEngine> engines(threads);
    std::vector<GCache> caches(threads);
    auto c = runTasks(jobs.size(), threads, [&](std::size_t k, unsigned worker, Collector& col) {
        const Job& jb = jobs[k];
        RaisingEngine& E = engines[worker];
        GCache& G = caches[worker];
        const long long i = jb.i, j = jb.j;
        const SignedSet& M = jb.M;
        const std::string at = "i=" + std::to_string(i) + " j=" + std::to_string(j) + " M=" + toString(M);
        const auto odds = M.odds();
        for (int eps = 0; eps < 2; ++eps)
            for (std::uint64_t dm = 0; dm < (std::uint64_t(1) << (j - i)); ++dm) {
                DeltaFunction d = DeltaFunction::fromMask(i, j, dm);
                U0Element r = E.rec(i, j, eps, d, M);
                U0Element cl = raisingClosed(i, j, eps, d, M, &G);
                col.check(odds.empty() ? "recursion = closed form (even M)" : "recursion = closed form (one odd)", r == cl,
                          [&] {
                              return Failure{at + " eps=" + std::to_string(eps) + " delta=" + std::to_string(dm),
                                             toString(cl), toString(r)};
                          });
            }
        // summation identity at m = i for one-odd N
        if (odds.size() != 1) return;
        const long long m = i, q = *odds.begin();
        std::set<long long> S;
        for (long long t = m + 1; t <= j; ++t)
            if (!M.contains(even(t))) S.insert(t);
        const U0Element base = bracketHom(G.g2(m, m, q, j, S)) * uH(m);
        for (int eps = 0; eps < 2; ++eps)
            for (int xi = 0; xi < 2; ++xi)
                for (std::uint64_t dm = 0; dm < (std::uint64_t(1) << (j - m)); ++dm) {
                    DeltaFunction d = DeltaFunction::fromMask(m, j, dm);
                    const int dmv = d.at(m), total = d.total();
                    U0Element lhs;
                    for (int tau = 0; tau < 2; ++tau) {
                        int sg = eps ^ dmv ^ xi ^ tau;
                        int ex = (xi + tau + dmv) * (eps + total + xi);
                        U0Element t = E.rec(m, j, sg, d.withFirst(m, j, tau), M);
                        lhs += (ex & 1) ? -t : t;
                    }
                    bool cond = xi == ((eps + total) & 1);
                    U0Element want = cond ? base * U0Element(2) : U0Element();
                    col.check("summation identity with factor 2[xi = eps + sum delta]", lhs == want, [&] {
                        return Failure{at + " eps=" + std::to_string(eps) + " xi=" + std::to_string(xi) + " delta=" +
                                           std::to_string(dm),
                                       toString(want), toString(lhs)};
                    });
                    col.note("summation identity with factor 2^[xi = eps + sum delta]", lhs == (cond ? base * U0Element(2) : base));
                }
    });
    return finish("raising-oracle", {{"width", std::to_string(o.width)}}, std::move(c));
}

// ---------------------------------------------------------------- signatures

namespace detail {

inline Weight randomDominantPStrict(std::mt19937_64& rng, long long p, long long maxN, long long maxEntry) {
    while (true) {
        long long n = 1 + static_cast<long long>(rng() % static_cast<std::uint64_t>(maxN));
        std::vector<long long> v(static_cast<std::size_t>(n));
        for (auto& x : v) x = static_cast<long long>(rng() % static_cast<std::uint64_t>(maxEntry + 1));
        std::sort(v.rbegin(), v.rend());
        Weight w(v);
        if (isDominantPStrict(w, p)) return w;
    }
}

inline Weight randomWeight(std::mt19937_64& rng, long long maxN, long long lo, long long hi) {
    long long n = 1 + static_cast<long long>(rng() % static_cast<std::uint64_t>(maxN));
    std::vector<long long> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    return Weight(v);
}

}  // namespace detail

inline VerdictReport verifySignatureBridge(const VerifyOptions& o) {
    using namespace detail;
    auto c = runTasks(kChunks, threadCount(o.threads), [&](std::size_t k, unsigned, Collector& col) {
        auto rng = chunkRng(o.seed, k);
        for (long long s = 0; s < chunkSize(o.samples, k); ++s) {
            long long p = o.primes[rng() % o.primes.size()];
            Weight l = randomDominantPStrict(rng, p, o.n, 12);
            for (long long beta = 0; beta < p; ++beta) {
                SigSeq nodes = betaSignature(l, beta, p, true);
                SigSeq seq = reducedProduct(rBeta(l, beta, p));
                col.check("node signature = reduced product of r_beta", nodes == seq, [&] {
                    return Failure{weightString(l) + " p=" + std::to_string(p) + " beta=" + std::to_string(beta),
                                   toString(seq), toString(nodes)};
                });
            }
        }
    });
    return finish("signature-bridge",
                  {{"samples", std::to_string(o.samples)}, {"n", std::to_string(o.n)}, {"p", primesString(o.primes)},
                   {"seed", std::to_string(o.seed)}},
                  std::move(c));
}

inline VerdictReport verifyDictionary(const VerifyOptions& o) {
    using namespace detail;
    std::vector<std::pair<long long, long long>> jobs;
    for (long long p : o.primes)
        for (long long m = 0; m <= o.maxSize; ++m) jobs.emplace_back(p, m);
    auto c = runTasks(jobs.size(), threadCount(o.threads), [&](std::size_t k, unsigned, Collector& col) {
        auto [p, m] = jobs[k];
        for (const auto& l : pStrictPartitions(m, p))
            for (long long i = 0; i <= (p - 1) / 2; ++i) {
                Weight w = padded(l);
                long long n = static_cast<long long>(w.n());
                SigSeq intro = introSignature(l, i, p, true);
                SigSeq body = betaSignature(w, betaOfContent(i, p), p, true);
                SigSeq withTail = intro;
                if (i == 0) withTail.push_back(minus(n));
                col.check("intro signature + (-_n when i = 0) = beta signature of padded weight", withTail == body, [&] {
                    return Failure{toString(l) + " p=" + std::to_string(p) + " i=" + std::to_string(i), toString(body),
                                   toString(withTail)};
                });
                SigSeq literal = intro;
                literal.push_back(minus(n));
                col.note("always append -_n", literal == body);
                // padding up to the size of the partition gives the same signs
                if (m > l.len() + 1) {
                    Weight big(l.parts);
                    big.parts.resize(static_cast<std::size_t>(m), 0);
                    SigSeq bigBody = betaSignature(big, betaOfContent(i, p), p, true);
                    SigSeq want = intro;
                    if (i == 0) want.push_back(minus(m));
                    col.check("padding to length |lambda| gives the same signature", bigBody == want,
                              [&] { return Failure{toString(l), toString(want), toString(bigBody)}; });
                }
            }
        for (long long s = 1; s <= 3 * p; ++s)
            col.check("beta(cont s) = Res s", betaOfContent(contP(s, p), p) == resP(s, p),
                      [&] { return Failure{"s=" + std::to_string(s), std::to_string(resP(s, p)), ""}; });
    });
    return finish("dictionary", {{"p", primesString(o.primes)}, {"max", std::to_string(o.maxSize)}}, std::move(c));
}

// ---------------------------------------------------------------- duality

inline VerdictReport verifyDuality(const VerifyOptions& o) {
    using namespace detail;
    auto c = runTasks(kChunks, threadCount(o.threads), [&](std::size_t k, unsigned, Collector& col) {
        auto rng = chunkRng(o.seed, k);
        for (long long s = 0; s < chunkSize(o.samples, k); ++s) {
            long long p = o.primes[rng() % o.primes.size()];
            Weight l = randomWeight(rng, o.n, -6, 12);
            const long long n = static_cast<long long>(l.n());
            const std::string id = weightString(l) + " p=" + std::to_string(p);
            auto rep = indexReport(l, p);
            auto lit = indexReport(l, p, CogoodGrouping::Literal);
            Weight dual = minusW0(l);
            auto drep = indexReport(dual, p);
            auto dlit = indexReport(dual, p, CogoodGrouping::Literal);
            std::map<long long, int> goodPerResidue, tGoodPerResidue;
            for (long long i = 1; i <= n; ++i) {
                const auto& c0 = rep[static_cast<std::size_t>(i - 1)];
                auto at = [&](const std::string& what) {
                    return [=] { return Failure{id + " i=" + std::to_string(i), what, ""}; };
                };
                long long beta = resP(l[i], p);
                SignMap r = rBeta(l, beta, p);
                // shortcut: reduce from i onward
                bool tail = containsSym(reducedRange(r, i, n), minus(i));
                col.check("tensor normal via product from i", tail == c0.tensorNormal, at("agreement"));
                if (i < n) {
                    SigSeq head = reducedRange(r, 1, n - 1);
                    bool tailN = containsSym(reducedRange(r, i, n - 1), minus(i));
                    col.check("normal test via product from i", tailN == containsSym(head, minus(i)), at("agreement"));
                    bool zero = divisible(l[i], p) && divisible(l[n], p);
                    bool alt = containsSym(head, minus(i)) && !(zero && !head.empty() && head.back() == minus(i));
                    col.check("normal iff -_i survives and is not last when both are 0", alt == c0.normal, at("agreement"));
                    if (divisible(l[n], p)) {
                        bool full = containsSym(reducedProduct(r), minus(i));
                        col.check("lambda_n = 0: normal iff -_i in [prod r] iff tensor normal",
                                  c0.normal == full && full == c0.tensorNormal, at("three-way agreement"));
                    }
                }
                col.check("tensor conormal is dual to tensor normal",
                          c0.tensorConormal == drep[static_cast<std::size_t>(n - i)].tensorNormal, at("agreement"));
                col.check("tensor good is dual to tensor cogood",
                          c0.tensorGood == drep[static_cast<std::size_t>(n - i)].tensorCogood, at("agreement"));
                col.note("tensor good is dual to tensor cogood (literal grouping)",
                         c0.tensorGood == dlit[static_cast<std::size_t>(n - i)].tensorCogood);
                Weight lm = l, lp = l;
                lm.parts[static_cast<std::size_t>(i - 1)] -= 1;
                lp.parts[static_cast<std::size_t>(i - 1)] += 1;
                auto repM = indexReport(lm, p);
                auto repP = indexReport(lp, p);
                auto litM = indexReport(lm, p, CogoodGrouping::Literal);
                col.check("tensor good iff tensor normal and conormal after -e_i",
                          c0.tensorGood == (c0.tensorNormal && repM[static_cast<std::size_t>(i - 1)].tensorConormal),
                          at("agreement"));
                col.check("tensor cogood iff tensor conormal and normal after +e_i",
                          c0.tensorCogood == (c0.tensorConormal && repP[static_cast<std::size_t>(i - 1)].tensorNormal),
                          at("agreement"));
                col.note("tensor cogood iff conormal and normal after +e_i (literal grouping)",
                         lit[static_cast<std::size_t>(i - 1)].tensorCogood ==
                             (c0.tensorConormal && repP[static_cast<std::size_t>(i - 1)].tensorNormal));
                col.check("tensor good iff tensor cogood after -e_i",
                          c0.tensorGood == repM[static_cast<std::size_t>(i - 1)].tensorCogood, at("agreement"));
                col.note("tensor good iff tensor cogood after -e_i (literal grouping)",
                         c0.tensorGood == litM[static_cast<std::size_t>(i - 1)].tensorCogood);
                col.check("good implies normal", !c0.good || c0.normal, at("implication"));
                col.check("tensor good implies tensor normal", !c0.tensorGood || c0.tensorNormal, at("implication"));
                col.check("tensor cogood implies tensor conormal", !c0.tensorCogood || c0.tensorConormal, at("implication"));
                if (c0.good) ++goodPerResidue[c0.residue];
                if (c0.tensorGood) ++tGoodPerResidue[c0.residue];
            }
            col.check("index n is tensor normal", rep.back().tensorNormal, [&] { return Failure{id, "true", "false"}; });
            col.check("index 1 is tensor conormal", rep.front().tensorConormal, [&] { return Failure{id, "true", "false"}; });
            bool once = true;
            for (auto& kv : goodPerResidue) once = once && kv.second <= 1;
            for (auto& kv : tGoodPerResidue) once = once && kv.second <= 1;
            col.check("at most one good index per residue", once, [&] { return Failure{id, "<= 1", "more"}; });
        }
    });
    return finish("duality",
                  {{"samples", std::to_string(o.samples)}, {"n", std::to_string(o.n)}, {"p", primesString(o.primes)},
                   {"seed", std::to_string(o.seed)}},
                  std::move(c));
}

// ---------------------------------------------------------------- certificates and planners

inline VerdictReport verifyCertificates(const VerifyOptions& o) {
    using namespace detail;
    auto c = runTasks(kChunks, threadCount(o.threads), [&](std::size_t k, unsigned, Collector& col) {
        auto rng = chunkRng(o.seed, k);
        for (long long s = 0; s < chunkSize(o.samples, k); ++s) {
            long long p = o.primes[rng() % o.primes.size()];
            Weight l = randomWeight(rng, o.n, -6, 12);
            const long long n = static_cast<long long>(l.n());
            const std::string id = weightString(l) + " p=" + std::to_string(p);
            for (long long i = 1; i < n; ++i) {
                const bool normal = classifyIndex(l, i, p).normal;
                const std::string at = id + " i=" + std::to_string(i);
                std::string why;
                try {
                    Certificate cert = nonNormalCertificate(l, i, p);
                    bool valid = validateCertificate(l, cert, p, &why);
                    col.check("certificate exists exactly for non-normal indices", !normal,
                              [&] { return Failure{at, "IsNormal", std::string("case ") + cert.caseTag}; });
                    col.check("certificate re-validates with c != 0", valid,
                              [&] { return Failure{at + " case " + cert.caseTag, "valid", why}; });
                } catch (const Error& e) {
                    col.check("certificate exists exactly for non-normal indices", normal && e.kind() == "IsNormal",
                              [&] { return Failure{at, "certificate", e.what()}; });
                }
                try {
                    ConstructionPlan plan = primitivePlan(l, i, p);
                    bool valid = validatePlan(l, plan, p, i, 0, &why);
                    col.check("primitive plan exists exactly for normal indices", normal,
                              [&] { return Failure{at, "NotNormal", "plan"}; });
                    col.check("primitive plan payloads satisfy the hypotheses", valid,
                              [&] { return Failure{at, "valid", why}; });
                } catch (const Error& e) {
                    col.check("primitive plan exists exactly for normal indices", !normal && e.kind() == "NotNormal",
                              [&] { return Failure{at, "plan", e.what()}; });
                }
            }
            for (long long h = 1; h < n; ++h)
                for (long long i = h + 1; i < n; ++i) {
                    const bool pre = classifyIndex(l, h, p).normal && resP(l[h], p) == resP(l[i], p);
                    const std::string at = id + " h=" + std::to_string(h) + " i=" + std::to_string(i);
                    std::string why;
                    try {
                        ConstructionPlan plan = extensionPlan(l, h, i, p);
                        bool valid = validatePlan(l, plan, p, h, i, &why);
                        col.check("extension plan exists exactly under its precondition", pre,
                                  [&] { return Failure{at, "PreconditionFailed", "plan"}; });
                        col.check("extension plan payloads satisfy the hypotheses", valid,
                                  [&] { return Failure{at, "valid", why}; });
                    } catch (const Error& e) {
                        col.check("extension plan exists exactly under its precondition",
                                  !pre && e.kind() == "PreconditionFailed", [&] { return Failure{at, "plan", e.what()}; });
                    }
                }
        }
    });
    return finish("certificates",
                  {{"samples", std::to_string(o.samples)}, {"n", std::to_string(o.n)}, {"p", primesString(o.primes)},
                   {"seed", std::to_string(o.seed)}},
                  std::move(c));
}

// ---------------------------------------------------------------- crystal

inline VerdictReport verifyCrystal(const VerifyOptions& o) {
    using namespace detail;
    auto c = runTasks(o.primes.size(), threadCount(o.threads), [&](std::size_t k, unsigned, Collector& col) {
        const long long p = o.primes[k];
        const std::string ps = "p=" + std::to_string(p);
        std::set<std::vector<long long>> enumerated;
        // brute force: every partition of m filtered by the two inequalities
        for (long long m = 0; m <= o.maxSize; ++m) {
            std::vector<long long> cur;
            forEachPartition(m, m, cur, [&](const std::vector<long long>& v) {
                bool ok = true;
                for (std::size_t r = 0; r < v.size() && ok; ++r) {
                    long long next = r + 1 < v.size() ? v[r + 1] : 0;
                    if (next == v[r] && v[r] % p != 0) ok = false;
                    if (v[r] % p == 0 ? v[r] - next >= p : v[r] - next > p) ok = false;
                }
                if (ok) enumerated.insert(v);
            });
        }
        auto reached = reachableByF(p, o.maxSize);
        col.check("f-reachable set = restricted p-strict partitions", reached == enumerated, [&] {
            return Failure{ps, std::to_string(enumerated.size()) + " partitions", std::to_string(reached.size())};
        });
        for (const auto& v : enumerated) {
            Partition l(v);
            const std::string id = toString(l) + " " + ps;
            bool anyGood = false;
            Weight w = padded(l);
            const long long n = static_cast<long long>(w.n());
            auto rep = indexReport(w, p);
            for (long long i = 0; i <= (p - 1) / 2; ++i) {
                const std::string at = id + " i=" + std::to_string(i);
                if (auto e = eTilde(i, l, p)) {
                    anyGood = true;
                    auto back = fTilde(i, *e, p);
                    col.check("f~ e~ = id", back && *back == l, [&] { return Failure{at, toString(l), back ? toString(*back) : "0"}; });
                    col.check("e~ keeps restrictedness", isRestricted(*e, p), [&] { return Failure{at, "restricted", toString(*e)}; });
                }
                if (auto f = fTilde(i, l, p)) {
                    auto back = eTilde(i, *f, p);
                    col.check("e~ f~ = id", back && *back == l, [&] { return Failure{at, toString(l), back ? toString(*back) : "0"}; });
                }
                // node-level notions against index-level ones on the padded weight
                const long long beta = betaOfContent(i, p);
                auto st = nodeStatus(l, i, p);
                std::set<long long> normalRows, conormalRows;
                for (const auto& a : st.normal) normalRows.insert(a.node.row);
                for (const auto& a : st.conormal) conormalRows.insert(a.node.row);
                for (const auto& a : introNodes(l, i, p).removable) {
                    if (a.rule != NodeRule::R1) continue;
                    long long r = a.node.row;
                    bool idx = r < n && resP(a.node.col, p) == beta && rep[static_cast<std::size_t>(r - 1)].normal;
                    col.check("normal node iff normal index", normalRows.count(r) > 0 == idx,
                              [&] { return Failure{at + " row " + std::to_string(r), idx ? "normal" : "not normal", ""}; });
                    bool goodIdx = idx && rep[static_cast<std::size_t>(r - 1)].good;
                    bool goodNode = st.good && st.good->node == a.node;
                    col.check("good node iff good index", goodNode == goodIdx,
                              [&] { return Failure{at + " row " + std::to_string(r), goodIdx ? "good" : "not good", ""}; });
                }
                for (const auto& a : introNodes(l, i, p).addable) {
                    if (a.rule != NodeRule::A1) continue;
                    long long r = a.node.row;
                    const auto& c0 = rep[static_cast<std::size_t>(r - 1)];
                    bool idx = resP(a.node.col, p) == beta && c0.tensorConormal;
                    col.check("conormal node iff tensor conormal index", conormalRows.count(r) > 0 == idx,
                              [&] { return Failure{at + " row " + std::to_string(r), idx ? "conormal" : "not conormal", ""}; });
                    bool cogoodIdx = idx && c0.tensorCogood;
                    bool cogoodNode = st.cogood && st.cogood->node == a.node;
                    col.check("cogood node iff tensor cogood index", cogoodNode == cogoodIdx,
                              [&] { return Failure{at + " row " + std::to_string(r), cogoodIdx ? "cogood" : "not cogood", ""}; });
                }
            }
            col.check("nonempty restricted partitions have a good node", v.empty() || anyGood,
                      [&] { return Failure{id, "good node", "none"}; });
        }
        // crystal graph edges
        auto g = crystalGraph(p, o.maxSize);
        col.check("graph vertices = enumeration", g.vertices.size() == enumerated.size(),
                  [&] { return Failure{ps, std::to_string(enumerated.size()), std::to_string(g.vertices.size())}; });
        for (const auto& e : g.edges) {
            auto back = fTilde(e.color, e.from, p);
            col.check("edge lambda -> mu has mu = f~ lambda", back && *back == e.to,
                      [&] { return Failure{toString(e.from) + " " + ps, toString(e.to), back ? toString(*back) : "0"}; });
        }
    });
    return finish("crystal", {{"p", primesString(o.primes)}, {"max", std::to_string(o.maxSize)}}, std::move(c));
}

inline const std::vector<std::string>& suiteNames() {
    static const std::vector<std::string> names{"reduction",       "flows",      "poly-identities", "raising-oracle",
                                                "signature-bridge", "dictionary", "duality",         "certificates",
                                                "crystal"};
    return names;
}

inline VerdictReport runSuite(const std::string& name, const VerifyOptions& o) {
    if (name == "reduction") return verifyReduction(o);
    if (name == "flows") return verifyFlows(o);
    if (name == "poly-identities") return verifyPolyIdentities(o);
    if (name == "raising-oracle") return verifyRaising(o);
    if (name == "signature-bridge") return verifySignatureBridge(o);
    if (name == "dictionary") return verifyDictionary(o);
    if (name == "duality") return verifyDuality(o);
    if (name == "certificates") return verifyCertificates(o);
    if (name == "crystal") return verifyCrystal(o);
    fail("UnknownSuite", "no suite named '" + name + "'");
}

}  // namespace spinbranch
