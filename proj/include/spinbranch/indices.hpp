#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"
#include "sigseq.hpp"

namespace spinbranch {

inline std::set<long long> indexRange(long long lo, long long hi) {
    std::set<long long> s;
    for (long long k = lo; k <= hi; ++k) s.insert(k);
    return s;
}

// [prod_{k in [lo..hi]} r_beta(lambda)_k]
inline SigSeq reducedRange(const SignMap& r, long long lo, long long hi) {
    return reduce(productOf(r, indexRange(lo, hi)));
}

inline bool divisible(long long v, long long p) { return modP(v, p) == 0; }

struct IndexClassification {
    long long index = 0;
    long long residue = 0;          // Res_p lambda_i
    long long conormalResidue = 0;  // Res_p (lambda_i + 1)
    bool tensorNormal = false;
    bool normal = false;  // only meaningful for i < n
    bool tensorConormal = false;
    bool good = false;
    bool tensorGood = false;
    bool tensorCogood = false;
};

namespace detail {

inline bool tensorNormalAt(const Weight& l, long long i, long long p) {
    long long beta = resP(l[i], p);
    return containsSym(reducedProduct(rBeta(l, beta, p)), minus(i));
}

inline bool normalAt(const Weight& l, long long i, long long p) {
    const long long n = static_cast<long long>(l.n());
    if (i >= n) return false;
    long long beta = resP(l[i], p);
    SignMap r = rBeta(l, beta, p);
    if (!containsSym(reducedRange(r, 1, n - 1), minus(i))) return false;
    bool gapEmpty = reducedRange(r, i + 1, n - 1).empty();
    bool bothZero = divisible(l[i], p) && divisible(l[n], p);
    return !(gapEmpty && bothZero);
}

inline bool tensorConormalAt(const Weight& l, long long i, long long p) {
    long long beta = resP(l[i] + 1, p);
    return containsSym(reducedProduct(rBeta(l, beta, p)), plus(i));
}

}  // namespace detail

// Groups cogood candidates by Res_p(lambda_h + 1) (see notes); the literal
// Res_p lambda_h grouping is available for comparison.
enum class CogoodGrouping { ConormalResidue, Literal };

inline std::vector<IndexClassification> indexReport(const Weight& l, long long p,
                                                    CogoodGrouping grouping = CogoodGrouping::ConormalResidue) {
    const long long n = static_cast<long long>(l.n());
    std::vector<IndexClassification> out;
    for (long long i = 1; i <= n; ++i) {
        IndexClassification c;
        c.index = i;
        c.residue = resP(l[i], p);
        c.conormalResidue = resP(l[i] + 1, p);
        c.tensorNormal = detail::tensorNormalAt(l, i, p);
        c.normal = detail::normalAt(l, i, p);
        c.tensorConormal = detail::tensorConormalAt(l, i, p);
        out.push_back(c);
    }
    for (auto& c : out) {
        bool earlierNormal = false, earlierTensor = false, laterConormal = false;
        for (const auto& h : out) {
            if (h.index < c.index && h.residue == c.residue) {
                earlierNormal = earlierNormal || h.normal;
                earlierTensor = earlierTensor || h.tensorNormal;
            }
            bool same = grouping == CogoodGrouping::ConormalResidue ? h.conormalResidue == c.conormalResidue
                                                                    : h.residue == c.residue;
            if (h.index > c.index && same) laterConormal = laterConormal || h.tensorConormal;
        }
        c.good = c.normal && !earlierNormal;
        c.tensorGood = c.tensorNormal && !earlierTensor;
        c.tensorCogood = c.tensorConormal && !laterConormal;
    }
    return out;
}

inline IndexClassification classifyIndex(const Weight& l, long long i, long long p) {
    if (i < 1 || i > static_cast<long long>(l.n())) fail("IndexOutOfRange", "index " + std::to_string(i));
    return indexReport(l, p)[static_cast<std::size_t>(i - 1)];
}

// ---------------------------------------------------------------- certificates

struct Certificate {
    char caseTag = 'a';
    long long i = 0, j = 0;
    std::set<long long> flowDomain;
    Flow flow;
    SignedSet M;
    std::set<long long> sources;
    long long beta = 0;
    long long c = 1;  // reduced mod p
};

// Product of (beta - Res_p lambda_t) over T, mod p.
inline long long certificateProduct(const Weight& l, long long beta, const std::set<long long>& T, long long p) {
    long long c = 1;
    for (long long t : T) c = modP(c * modP(beta - resP(l[t], p), p), p);
    return c;
}

inline Certificate nonNormalCertificate(const Weight& l, long long i, long long p) {
    const long long n = static_cast<long long>(l.n());
    if (i < 1 || i >= n) fail("IndexOutOfRange", "certificate needs 1 <= i < n");
    if (detail::normalAt(l, i, p)) fail("IsNormal", "index " + std::to_string(i) + " is normal");
    Certificate cert;
    cert.i = i;
    cert.beta = resP(l[i], p);
    SignMap r = rBeta(l, cert.beta, p);
    SignMap gap = r.between(i, n);
    SigSeq gapRed = reducedProduct(gap);
    const int pluses = countSign(gapRed, '+');

    if ((cert.beta != 0 && pluses >= 1) || (cert.beta == 0 && pluses >= 2)) {
        cert.caseTag = cert.beta != 0 ? 'a' : 'b';
        PartialFlow pf = partialFlow(gap);
        cert.j = *pf.J.rbegin();
        cert.flowDomain = pf.J;
        cert.flow = pf.G;
        cert.sources = pf.G.sources();
        std::set<long long> rest;
        for (long long t : pf.J)
            if (!cert.sources.count(t)) rest.insert(t);
        for (long long t : rest) cert.M.insert(even(t));
        cert.M.insert(bar(cert.j + 1));
        cert.c = certificateProduct(l, cert.beta, rest, p);
        return cert;
    }
    const bool caseC = cert.beta == 0 && r.at(i) == "+-" && pluses == 1;
    const bool caseD = gapRed.empty() && divisible(l[i], p) && divisible(l[n], p);
    if (!caseC && !caseD) fail("Unreachable", "non-normal index matches no certificate case");
    cert.caseTag = caseC ? 'c' : 'd';
    cert.j = caseC ? sectionOf(gap).front() : n;
    SignMap inner = r.between(i, cert.j);
    cert.flowDomain = inner.domain();
    cert.flow = buildFullFlow(inner);
    cert.sources = cert.flow.sources();
    std::set<long long> rest;
    for (long long t = i + 1; t < cert.j; ++t)
        if (!cert.sources.count(t)) rest.insert(t);
    for (long long t : rest) cert.M.insert(even(t));
    cert.M.insert(bar(cert.j));
    cert.c = certificateProduct(l, cert.beta, rest, p);
    return cert;
}

// Independent re-check of a certificate from its recorded data.
inline bool validateCertificate(const Weight& l, const Certificate& cert, long long p, std::string* why = nullptr) {
    auto bad = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    SignMap r = rBeta(l, resP(l[cert.i], p), p).restrictTo(cert.flowDomain);
    FlowReport fr = flowAnalyze(cert.flow, r);
    if (!fr.isFlow) return bad("not a flow");
    if (!fr.buds.empty()) return bad("flow has buds");
    if (cert.caseTag == 'a' || cert.caseTag == 'b') {
        if (!fr.coherent || fr.fullyCoherent) return bad("case a/b needs coherent, not fully coherent");
        if (cert.flowDomain != indexRange(cert.i + 1, cert.j)) return bad("flow domain is not (i..j]");
        int need = cert.caseTag == 'a' ? 1 : 2;
        SigSeq red = reducedProduct(r);
        if (countSign(red, '+') != need || countSign(red, '-') != 0) return bad("[prod_J] has wrong shape");
    } else {
        if (!fr.fullyCoherent) return bad("case c/d needs a fully coherent flow");
        if (cert.flowDomain != indexRange(cert.i + 1, cert.j - 1)) return bad("flow domain is not (i..j)");
    }
    if (cert.sources != cert.flow.sources()) return bad("sources mismatch");
    std::set<long long> rest;
    for (const auto& e : cert.M)
        if (!e.odd) rest.insert(e.value);
    if (certificateProduct(l, cert.beta, rest, p) != cert.c) return bad("c does not recompute");
    if (p > 0 && cert.c == 0) return bad("c = 0");
    return true;
}

// ---------------------------------------------------------------- planners

struct PlanStep {
    std::string theorem;  // "T6.1.3", ...
    long long h = 0;      // lower index (0 for the primitive-vector theorems)
    long long i = 0;
    std::optional<Flow> flow;
    std::set<long long> flowDomain;
    std::vector<long long> section;
    std::optional<SignedSet> M;
};

struct ConstructionPlan {
    std::vector<PlanStep> steps;
};

namespace detail {

inline SignMap r0(const Weight& l, long long p) { return rBeta(l, 0, p); }

inline PlanStep fullFlowStep(const std::string& thm, long long h, long long i, const SignMap& piece) {
    PlanStep s;
    s.theorem = thm;
    s.h = h;
    s.i = i;
    s.flowDomain = piece.domain();
    s.flow = buildFullFlow(piece);
    return s;
}

// Base step at index i: T6.1.3 when the gap reduces to a nonempty -^r, T6.2.3 when empty.
inline PlanStep baseStep(const Weight& l, long long i, long long p) {
    const long long n = static_cast<long long>(l.n());
    SignMap r = rBeta(l, resP(l[i], p), p);
    SigSeq gap = reducedRange(r, i + 1, n - 1);
    if (countSign(gap, '+') != 0) fail("Unreachable", "base step with + in the gap");
    if (!gap.empty()) return fullFlowStep("T6.1.3", 0, i, r.restrictTo(indexRange(i + 1, n)));
    PlanStep s = fullFlowStep("T6.2.3", 0, i, r.restrictTo(indexRange(i + 1, n - 1)));
    SignedSet M;
    auto src = s.flow->sources();
    for (long long t = i + 1; t < n; ++t)
        if (!src.count(t)) M.insert(even(t));
    M.insert(bar(n));
    s.M = M;
    return s;
}

inline PlanStep sectionStep(const std::string& thm, long long h, long long i, const SignMap& piece) {
    PlanStep s;
    s.theorem = thm;
    s.h = h;
    s.i = i;
    s.flowDomain = piece.domain();
    s.section = sectionOf(piece);
    s.flow = resolutionOf(piece);
    return s;
}

}  // namespace detail

inline ConstructionPlan primitivePlan(const Weight& l, long long i, long long p) {
    const long long n = static_cast<long long>(l.n());
    if (i < 1 || i >= n || !detail::normalAt(l, i, p))
        fail("NotNormal", "index " + std::to_string(i) + " is not normal");
    ConstructionPlan plan;
    long long beta = resP(l[i], p);
    SignMap r = rBeta(l, beta, p);
    SigSeq gap = reducedRange(r, i + 1, n - 1);
    if (countSign(gap, '+') == 0) {
        plan.steps.push_back(detail::baseStep(l, i, p));
        return plan;
    }
    // beta = 0, lambda_i = 1, gap = +-^m
    if (beta != 0 || r.at(i) != "--" || shapeOf(gap).plus != 1) fail("Unreachable", "primitivePlan case split");
    if (!congruent(l[n], -1, p)) {
        plan.steps.push_back(detail::sectionStep("T6.3.3", 0, i, r.restrictTo(indexRange(i + 1, n))));
        return plan;
    }
    long long a = sectionOf(r.between(i, n)).back();
    plan.steps.push_back(detail::baseStep(l, a, p));
    plan.steps.push_back(detail::sectionStep("T6.6.2", i, a, r.restrictTo(indexRange(i + 1, a))));
    return plan;
}

inline ConstructionPlan extensionPlan(const Weight& l, long long h, long long i, long long p) {
    const long long n = static_cast<long long>(l.n());
    if (!(1 <= h && h < i && i < n)) fail("PreconditionFailed", "need h < i < n");
    if (!detail::normalAt(l, h, p)) fail("PreconditionFailed", "h is not normal");
    if (resP(l[h], p) != resP(l[i], p)) fail("PreconditionFailed", "residues of h and i differ");
    long long beta = resP(l[i], p);
    SignMap r = rBeta(l, beta, p);
    SigSeq gap = reducedRange(r, h + 1, i);
    ConstructionPlan plan;
    auto full = [&](const std::string& thm, long long lo, long long hi) {
        plan.steps.push_back(detail::fullFlowStep(thm, lo, hi, r.restrictTo(indexRange(lo + 1, hi))));
    };
    auto sect = [&](long long lo, long long hi) {
        plan.steps.push_back(detail::sectionStep("T6.6.2", lo, hi, r.restrictTo(indexRange(lo + 1, hi))));
    };
    // 6.5.2 when lambda_h is not 0 or lambda_i is not 1 mod p; 6.4.2 for (0, 1)
    auto lowStep = [&](long long lo, long long hi) {
        if (divisible(l[lo], p) && congruent(l[hi], 1, p))
            full("T6.4.2", lo, hi);
        else
            full("T6.5.2", lo, hi);
    };
    if (beta != 0) {
        full("T6.5.2", h, i);
        return plan;
    }
    Shape s = shapeOf(gap);
    if (s.plus == 0) {
        if (congruent(l[i], 1, p)) {
            lowStep(h, i);
            return plan;
        }
        // lambda_i = 0: split at a in (h..i)
        long long a = splitIndex(r.between(h, i));
        sect(a, i);
        lowStep(h, a);
        return plan;
    }
    if (s.plus != 1) fail("Unreachable", "extensionPlan case split");
    if (congruent(l[i], 1, p)) {
        long long a = sectionOf(r.restrictTo(indexRange(h + 1, i))).back();
        full("T6.4.2", a, i);
        sect(h, a);
        return plan;
    }
    sect(h, i);
    return plan;
}

// Structural hypotheses of the cited theorems, checked from scratch.
inline bool validateStep(const Weight& l, const PlanStep& s, long long p, std::string* why = nullptr) {
    auto bad = [&](const std::string& m) {
        if (why) *why = s.theorem + ": " + m;
        return false;
    };
    const long long n = static_cast<long long>(l.n());
    auto flowOk = [&](const SignMap& piece, bool weak) {
        if (!s.flow) return false;
        if (s.flowDomain != piece.domain()) return false;
        FlowReport fr = flowAnalyze(*s.flow, piece);
        if (!fr.fullyCoherent) return false;
        return weak ? (fr.isWeakFlow && !fr.isFlow) : fr.isFlow;
    };
    if (s.theorem == "T6.1.3" || s.theorem == "T6.2.3") {
        long long i = s.i;
        if (!(1 <= i && i < n)) return bad("index range");
        SignMap r = rBeta(l, resP(l[i], p), p);
        if (s.theorem == "T6.1.3") {
            if (countSign(reducedRange(r, i + 1, n), '+') != 0) return bad("[prod (i..n]] has +");
            if (!flowOk(r.restrictTo(indexRange(i + 1, n)), false)) return bad("flow");
            return true;
        }
        if (countSign(reducedRange(r, i + 1, n - 1), '+') != 0) return bad("[prod (i..n)] has +");
        if (divisible(l[i], p) && divisible(l[n], p)) return bad("lambda_i and lambda_n both divisible");
        if (!flowOk(r.restrictTo(indexRange(i + 1, n - 1)), false)) return bad("flow");
        if (!s.M || !s.M->contains(bar(n))) return bad("M lacks n-bar");
        return true;
    }
    if (s.theorem == "T6.3.3") {
        long long i = s.i;
        if (!(1 <= i && i < n) || !congruent(l[i], 1, p)) return bad("lambda_i != 1");
        SignMap piece = rBeta(l, 0, p).restrictTo(indexRange(i + 1, n));
        if (shapeOf(reducedProduct(piece)).plus != 1) return bad("[prod (i..n]] is not +-^m");
        if (s.section != sectionOf(piece)) return bad("section");
        if (!flowOk(piece, true)) return bad("resolution");
        return true;
    }
    long long h = s.h, i = s.i;
    if (!(1 <= h && h < i && i < n)) return bad("need h < i < n");
    if (s.theorem == "T6.4.2" || s.theorem == "T6.6.2") {
        SignMap piece = rBeta(l, 0, p).restrictTo(indexRange(h + 1, i));
        Shape sh = shapeOf(reducedProduct(piece));
        if (s.theorem == "T6.4.2") {
            if (!divisible(l[h], p) || !congruent(l[i], 1, p)) return bad("residue pattern");
            if (sh.plus != 0) return bad("gap has +");
            return flowOk(piece, false) ? true : bad("flow");
        }
        if (!congruent(l[h], 1, p) || !divisible(l[i], p)) return bad("residue pattern");
        if (sh.plus != 1) return bad("gap is not +-^m");
        if (s.section != sectionOf(piece)) return bad("section");
        return flowOk(piece, true) ? true : bad("resolution");
    }
    if (s.theorem == "T6.5.2") {
        if (divisible(l[i], p)) return bad("lambda_i divisible");
        if (divisible(l[h], p) && congruent(l[i], 1, p)) return bad("(0,1) pattern belongs to 6.4.2");
        long long beta = resP(l[i], p);
        if (resP(l[h], p) != beta) return bad("residues differ");
        SignMap piece = rBeta(l, beta, p).restrictTo(indexRange(h + 1, i));
        if (countSign(reducedProduct(piece), '+') != 0) return bad("gap has +");
        return flowOk(piece, false) ? true : bad("flow");
    }
    return bad("unknown theorem");
}

// The chain must end at the requested index: each step's lower index feeds the next.
// start = 0 means the plan must begin from the highest weight vector.
inline bool validatePlan(const Weight& l, const ConstructionPlan& plan, long long p, long long target,
                         long long start = 0, std::string* why = nullptr) {
    if (plan.steps.empty()) {
        if (why) *why = "empty plan";
        return false;
    }
    const PlanStep& first = plan.steps.front();
    bool fromTop = first.theorem == "T6.1.3" || first.theorem == "T6.2.3" || first.theorem == "T6.3.3";
    if (start == 0 ? !fromTop : (fromTop || first.i != start)) {
        if (why) *why = "plan does not start at " + std::to_string(start);
        return false;
    }
    for (const auto& s : plan.steps)
        if (!validateStep(l, s, p, why)) return false;
    const PlanStep& last = plan.steps.back();
    long long reached = last.h != 0 ? last.h : last.i;
    if (reached != target) {
        if (why) *why = "plan ends at " + std::to_string(reached);
        return false;
    }
    for (std::size_t k = 1; k < plan.steps.size(); ++k) {
        const auto& prev = plan.steps[k - 1];
        long long prevEnd = prev.h != 0 ? prev.h : prev.i;
        if (plan.steps[k].i != prevEnd) {
            if (why) *why = "broken chain";
            return false;
        }
    }
    return true;
}

}  // namespace spinbranch
