#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace spinbranch {

struct Sym {
    char sign = '-';  // '+' or '-'
    long long mark = 0;
    bool operator==(const Sym&) const = default;
};

using SigSeq = std::vector<Sym>;

inline Sym plus(long long m) { return {'+', m}; }
inline Sym minus(long long m) { return {'-', m}; }

inline std::string toString(const SigSeq& u) {
    if (u.empty()) return "()";
    std::string r = "(";
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (k) r += ",";
        r += u[k].sign;
        r += "_" + std::to_string(u[k].mark);
    }
    return r + ")";
}

inline int countSign(const SigSeq& u, char s) {
    return static_cast<int>(std::count_if(u.begin(), u.end(), [&](const Sym& x) { return x.sign == s; }));
}

inline bool containsSym(const SigSeq& u, const Sym& s) { return std::find(u.begin(), u.end(), s) != u.end(); }

// Positions of the entries that survive erasing all -+ pairs.
// One left-to-right pass: a '+' cancels the nearest pending '-'.
template <class SignOf>
std::vector<std::size_t> survivors(std::size_t len, SignOf signAt) {
    std::vector<std::size_t> plusKept, minusStack;
    for (std::size_t k = 0; k < len; ++k) {
        if (signAt(k) == '-') {
            minusStack.push_back(k);
        } else if (!minusStack.empty()) {
            minusStack.pop_back();
        } else {
            plusKept.push_back(k);
        }
    }
    plusKept.insert(plusKept.end(), minusStack.begin(), minusStack.end());
    return plusKept;
}

inline SigSeq reduce(const SigSeq& u) {
    SigSeq r;
    for (auto k : survivors(u.size(), [&](std::size_t t) { return u[t].sign; })) r.push_back(u[k]);
    return r;
}

// Same cancellation, but also records which (-, +) pairs were erased, by mark.
inline std::vector<std::pair<long long, long long>> erasedPairs(const SigSeq& u) {
    std::vector<std::pair<long long, long long>> pairs;
    std::vector<std::size_t> st;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k].sign == '-') {
            st.push_back(k);
        } else if (!st.empty()) {
            pairs.emplace_back(u[st.back()].mark, u[k].mark);
            st.pop_back();
        }
    }
    return pairs;
}

struct Shape {
    int plus = 0, minus = 0;
    bool operator==(const Shape&) const = default;
};

// [u] = +^s -^r ; returns (s, r)
inline Shape shapeOf(const SigSeq& reduced) { return {countSign(reduced, '+'), countSign(reduced, '-')}; }

inline bool isReducedForm(const SigSeq& u) {
    for (std::size_t k = 1; k < u.size(); ++k)
        if (u[k - 1].sign == '-' && u[k].sign == '+') return false;
    return true;
}

// -w0 u: -_i -> +_{n+1-i}, +_i -> -_{n+1-i}, then reverse.
inline SigSeq minusW0Seq(const SigSeq& u, long long n) {
    SigSeq r;
    for (auto it = u.rbegin(); it != u.rend(); ++it) {
        if (it->mark < 1 || it->mark > n)
            fail("MarkOutOfRange", "mark " + std::to_string(it->mark) + " outside [1.." + std::to_string(n) + "]");
        r.push_back({it->sign == '-' ? '+' : '-', n + 1 - it->mark});
    }
    return r;
}

enum class SignMode { Single, Pair };

// A map I -> signature sequences, either all in {∅,-,+} or all in {∅,--,+-,++}.
class SignMap {
public:
    SignMap() = default;
    explicit SignMap(SignMode mode) : mode_(mode) {}
    SignMap(SignMode mode, const std::map<long long, std::string>& values) : mode_(mode) {
        for (const auto& [k, v] : values) set(k, v);
    }
    // consecutive domain 1..values.size()
    static SignMap of(SignMode mode, const std::vector<std::string>& values, long long first = 1) {
        SignMap u(mode);
        for (std::size_t k = 0; k < values.size(); ++k) u.set(first + static_cast<long long>(k), values[k]);
        return u;
    }

    void set(long long i, const std::string& v) {
        static const std::set<std::string> single = {"", "-", "+"};
        static const std::set<std::string> pair = {"", "--", "+-", "++"};
        const auto& allowed = mode_ == SignMode::Single ? single : pair;
        if (!allowed.count(v))
            fail("ModeMismatch", "value '" + v + "' not allowed in " + (mode_ == SignMode::Single ? "single" : "pair") +
                                     " mode");
        values_[i] = v;
    }

    SignMode mode() const { return mode_; }
    const std::map<long long, std::string>& values() const { return values_; }
    std::set<long long> domain() const {
        std::set<long long> d;
        for (const auto& kv : values_) d.insert(kv.first);
        return d;
    }
    bool inDomain(long long i) const { return values_.count(i) > 0; }
    const std::string& at(long long i) const {
        auto it = values_.find(i);
        if (it == values_.end()) fail("OutOfDomain", "index " + std::to_string(i) + " not in sign map");
        return it->second;
    }
    bool hasMinus(long long i) const { return at(i).find('-') != std::string::npos; }
    bool hasPlus(long long i) const { return at(i).find('+') != std::string::npos; }

    SignMap restrictTo(const std::set<long long>& J) const {
        SignMap r(mode_);
        for (const auto& [k, v] : values_)
            if (J.count(k)) r.values_[k] = v;
        return r;
    }
    template <class Pred>
    SignMap restrictIf(Pred keep) const {
        SignMap r(mode_);
        for (const auto& [k, v] : values_)
            if (keep(k)) r.values_[k] = v;
        return r;
    }
    SignMap below(long long a) const { return restrictIf([&](long long k) { return k < a; }); }
    SignMap above(long long a) const { return restrictIf([&](long long k) { return k > a; }); }
    SignMap between(long long a, long long b) const {
        return restrictIf([&](long long k) { return k > a && k < b; });
    }

    bool operator==(const SignMap&) const = default;

private:
    SignMode mode_ = SignMode::Single;
    std::map<long long, std::string> values_;
};

inline SigSeq productOf(const SignMap& u, const std::set<long long>& J) {
    SigSeq r;
    for (long long j : J) {
        for (char c : u.at(j)) r.push_back({c, j});
    }
    return r;
}

inline SigSeq productOf(const SignMap& u) { return productOf(u, u.domain()); }

inline SigSeq reducedProduct(const SignMap& u) { return reduce(productOf(u)); }

// r_beta(lambda): pair mode for beta = 0, single mode otherwise.
inline SignMap rBeta(const Weight& lambda, long long beta, long long p) {
    beta = modP(beta, p);
    SignMap u(beta == 0 ? SignMode::Pair : SignMode::Single);
    for (std::size_t k = 1; k <= lambda.n(); ++k) {
        long long l = lambda[k];
        auto is = [&](long long v) { return resP(v, p) == beta; };
        std::string v;
        if (beta == 0) {
            if (is(l) && is(l - 1))
                v = "--";
            else if (is(l + 1) && is(l))
                v = "+-";
            else if (is(l + 2) && is(l + 1))
                v = "++";
        } else {
            if (is(l))
                v = "-";
            else if (is(l + 1))
                v = "+";
        }
        u.set(static_cast<long long>(k), v);
    }
    return u;
}

// ---------------------------------------------------------------- flows

using Edge = std::pair<long long, long long>;

struct Flow {
    std::set<Edge> edges;

    std::set<long long> sources() const {
        std::set<long long> s;
        for (const auto& e : edges) s.insert(e.first);
        return s;
    }
    std::set<long long> targets() const {
        std::set<long long> s;
        for (const auto& e : edges) s.insert(e.second);
        return s;
    }
    void add(long long a, long long b) { edges.insert({a, b}); }
    void merge(const Flow& o) { edges.insert(o.edges.begin(), o.edges.end()); }
    bool operator==(const Flow&) const = default;
};

inline std::string toString(const Flow& g) {
    std::string r = "{";
    bool first = true;
    for (const auto& [a, b] : g.edges) {
        if (!first) r += ",";
        r += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
        first = false;
    }
    return r + "}";
}

struct FlowReport {
    bool isWeakFlow = false;
    bool isFlow = false;
    bool coherent = false;
    bool fullyCoherent = false;
    std::set<long long> buds;
};

inline FlowReport flowAnalyze(const Flow& g, const SignMap& u) {
    FlowReport r;
    bool inI = true, distinct = true, weak = true, strict = true;
    std::set<long long> src, tgt;
    for (const auto& [a, b] : g.edges) {
        inI = inI && u.inDomain(a) && u.inDomain(b);
        distinct = distinct && src.insert(a).second && tgt.insert(b).second;
        weak = weak && a <= b;
        strict = strict && a < b;
    }
    r.isWeakFlow = inI && distinct && weak;
    r.isFlow = r.isWeakFlow && strict;
    bool c4 = true, c5 = true;
    for (const auto& [a, b] : g.edges) {
        if (!inI) break;
        c4 = c4 && u.hasMinus(a);
        c5 = c5 && u.hasPlus(b);
    }
    r.coherent = inI && c4 && c5;
    bool c6 = true;
    for (const auto& [k, v] : u.values())
        if (u.hasPlus(k) && !tgt.count(k)) c6 = false;
    r.fullyCoherent = r.coherent && c6;
    for (const auto& [k, v] : u.values())
        if (u.hasMinus(k) && !src.count(k)) r.buds.insert(k);
    return r;
}

inline bool allMinus(const SigSeq& reduced) { return countSign(reduced, '+') == 0; }

// Fully coherent flow with m buds (single mode) or m/2 buds (pair mode),
// given [prod u] = -^m.
inline Flow buildFullFlow(const SignMap& u) {
    SigSeq red = reducedProduct(u);
    if (!allMinus(red)) fail("NotAllMinus", "[prod u] = " + toString(red) + " contains +");
    Flow g;
    if (u.mode() == SignMode::Single) {
        for (auto [a, b] : erasedPairs(productOf(u))) g.add(a, b);
        return g;
    }
    // Pair mode: run the induction on max I upward. Buds are tracked so the
    // (maximal) bud d needed for +- and ++ is at hand.
    std::set<long long> buds;
    for (const auto& [e, v] : u.values()) {
        if (v == "--") {
            buds.insert(e);
        } else if (v == "+-" || v == "++") {
            if (buds.empty()) fail("Unreachable", "no bud available at " + std::to_string(e));
            long long d = *buds.rbegin();
            buds.erase(d);
            g.add(d, e);
            if (v == "+-") buds.insert(e);
        }
    }
    return g;
}

// Index a with u_a = --, [prod over (a..)] in {∅, +-}, [prod over (..a]] = -^m.
inline long long splitIndex(const SignMap& u) {
    if (u.mode() != SignMode::Pair) fail("PreconditionFailed", "splitIndex needs a pair-mode map");
    SigSeq red = reducedProduct(u);
    if (!allMinus(red) || red.empty())
        fail("PreconditionFailed", "[prod u] = " + toString(red) + " is not -^m with m > 0");
    struct Rec {
        static long long go(const SignMap& w) {
            const auto& vals = w.values();
            if (vals.size() == 1) return vals.begin()->first;
            long long e = vals.rbegin()->first;
            const std::string& ue = vals.rbegin()->second;
            SignMap E = w.below(e);
            if (ue == "--") return e;
            if (ue == "" || ue == "+-") return go(E);
            long long b = go(E);
            return go(w.below(b));
        }
    };
    return Rec::go(u);
}

// Index a with u_a = +- and [prod over (..a)] = ∅, given [prod u] = +-^m.
inline long long leadPlusIndex(const SignMap& u) {
    if (u.mode() != SignMode::Pair) fail("PreconditionFailed", "leadPlusIndex needs a pair-mode map");
    auto okShape = [](const SignMap& w) {
        Shape s = shapeOf(reducedProduct(w));
        return s.plus == 1;
    };
    if (!okShape(u)) fail("PreconditionFailed", "[prod u] = " + toString(reducedProduct(u)) + " is not +-^m");
    SignMap w = u;
    while (true) {
        long long e = w.values().rbegin()->first;
        SignMap E = w.below(e);
        if (!E.values().empty() && shapeOf(reducedProduct(E)).plus == 1) {
            w = E;
            continue;
        }
        return e;
    }
}

inline std::vector<long long> sectionOf(const SignMap& u) {
    long long a = leadPlusIndex(u);
    SignMap J = u.above(a);
    std::vector<long long> r{a};
    if (shapeOf(reducedProduct(J)).plus == 0) return r;
    auto rest = sectionOf(J);
    r.insert(r.end(), rest.begin(), rest.end());
    return r;
}

// Loops on the section plus full flows on the gaps between section points.
inline Flow resolutionOf(const SignMap& u) {
    auto sec = sectionOf(u);
    Flow g;
    long long prev = 0;
    bool havePrev = false;
    for (long long a : sec) {
        g.add(a, a);
        SignMap gap = havePrev ? u.between(prev, a) : u.below(a);
        g.merge(buildFullFlow(gap));
        prev = a;
        havePrev = true;
    }
    g.merge(buildFullFlow(u.above(prev)));
    return g;
}

struct PartialFlow {
    std::set<long long> J;
    Flow G;
};

// A beginning J with [prod_J u] = + (single) or ++ (pair), and a flow on J
// coherent but not fully coherent with u|_J and without buds on J.
inline PartialFlow partialFlow(const SignMap& u) {
    const int need = u.mode() == SignMode::Single ? 1 : 2;
    if (countSign(reducedProduct(u), '+') < need)
        fail("PreconditionFailed", "[prod u] = " + toString(reducedProduct(u)) + " has too few pluses");
    SignMap w = u;
    while (true) {
        long long e = w.values().rbegin()->first;
        SignMap E = w.below(e);
        Shape s = shapeOf(reducedProduct(E));
        if (s.plus >= need) {
            w = E;
            continue;
        }
        PartialFlow r;
        r.J = w.domain();
        if (s.plus == 0) {
            // u_e = + (or ++) and [prod_E] = ∅
            r.G = buildFullFlow(E);
            return r;
        }
        // pair mode, s = 1: chain the section of u|_E and end at e
        auto sec = sectionOf(E);
        for (std::size_t k = 0; k + 1 < sec.size(); ++k) r.G.add(sec[k], sec[k + 1]);
        r.G.add(sec.back(), e);
        long long prev = 0;
        bool havePrev = false;
        for (long long a : sec) {
            r.G.merge(buildFullFlow(havePrev ? E.between(prev, a) : E.below(a)));
            prev = a;
            havePrev = true;
        }
        r.G.merge(buildFullFlow(E.above(prev)));
        return r;
    }
}

}  // namespace spinbranch
