#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinbranch {

// All library failures carry a short kind tag ("NotDivisible", "IsNormal", ...)
// so callers and tests can branch on the reason without parsing messages.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
    throw Error(kind, msg);
}

inline bool isOddPrime(long long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

// p = 0 or an odd prime.
struct Characteristic {
    long long p = 0;

    Characteristic() = default;
    explicit Characteristic(long long value) : p(value) {
        if (!(value == 0 || isOddPrime(value)))
            fail("InvalidCharacteristic", "p must be 0 or an odd prime, got " + std::to_string(value));
    }
    // (p-1)/2, the largest content; unbounded (-1) when p = 0.
    long long ell() const { return p == 0 ? -1 : (p - 1) / 2; }
};

// Reduce v into [0, p) for p > 0; identity for p = 0.
inline long long modP(long long v, long long p) {
    if (p == 0) return v;
    long long r = v % p;
    return r < 0 ? r + p : r;
}

inline long long resP(long long j, long long p) { return modP(j * (j - 1), p); }
inline long long resP(long long j, const Characteristic& c) { return resP(j, c.p); }

// a ≡ b (mod p); for p = 0 this is equality.
inline bool congruent(long long a, long long b, long long p) { return modP(a - b, p) == 0; }

struct Weight {
    std::vector<long long> parts;

    Weight() = default;
    explicit Weight(std::vector<long long> v) : parts(std::move(v)) {}
    std::size_t n() const { return parts.size(); }
    // 1-based access, matching the lambda_i convention.
    long long operator[](std::size_t i) const { return parts.at(i - 1); }
    bool operator==(const Weight&) const = default;
};

// -w0 lambda = (-lambda_n, ..., -lambda_1)
inline Weight minusW0(const Weight& w) {
    Weight r;
    for (auto it = w.parts.rbegin(); it != w.parts.rend(); ++it) r.parts.push_back(-*it);
    return r;
}

inline bool isDominant(const Weight& w) {
    for (std::size_t k = 1; k < w.parts.size(); ++k)
        if (w.parts[k - 1] < w.parts[k]) return false;
    return true;
}

// X_p^+(n): dominant, and lambda_k = lambda_{k+1} forces p | lambda_k.
inline bool isDominantPStrict(const Weight& w, long long p) {
    if (!isDominant(w)) return false;
    for (std::size_t k = 1; k < w.parts.size(); ++k)
        if (w.parts[k - 1] == w.parts[k] && modP(w.parts[k], p) != 0) return false;
    return true;
}

// An element of a signed set: k (even) or k-bar (odd).
struct SignedElem {
    long long value = 0;
    bool odd = false;

    // n-bar < m and n < m-bar for n < m; k-bar < k at equal values.
    auto operator<=>(const SignedElem& o) const {
        if (value != o.value) return value <=> o.value;
        return o.odd <=> odd;
    }
    bool operator==(const SignedElem&) const = default;
};

inline SignedElem even(long long v) { return {v, false}; }
inline SignedElem bar(long long v) { return {v, true}; }

inline std::string toString(const SignedElem& e) {
    return e.odd ? std::to_string(e.value) + "b" : std::to_string(e.value);
}

struct Height {
    bool minusInfinity = true;
    long long value = 0;
    bool operator==(const Height&) const = default;
};

class SignedSet {
public:
    SignedSet() = default;
    SignedSet(std::initializer_list<SignedElem> elems) {
        for (const auto& e : elems) insert(e);
    }
    static SignedSet fromParts(const std::set<long long>& evens, const std::set<long long>& odds) {
        SignedSet s;
        for (auto v : evens) s.insert(even(v));
        for (auto v : odds) s.insert(bar(v));
        return s;
    }

    void insert(const SignedElem& e) {
        if (containsValue(e.value) && !contains(e))
            fail("InvalidSignedSet", "both " + std::to_string(e.value) + " and its bar");
        elems_.insert(e);
    }
    void erase(const SignedElem& e) { elems_.erase(e); }

    bool contains(const SignedElem& e) const { return elems_.count(e) > 0; }
    bool containsValue(long long v) const { return contains(even(v)) || contains(bar(v)); }
    bool empty() const { return elems_.empty(); }
    std::size_t size() const { return elems_.size(); }

    const std::set<SignedElem>& elems() const { return elems_; }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    std::set<long long> evens() const {
        std::set<long long> r;
        for (const auto& e : elems_)
            if (!e.odd) r.insert(e.value);
        return r;
    }
    std::set<long long> odds() const {
        std::set<long long> r;
        for (const auto& e : elems_)
            if (e.odd) r.insert(e.value);
        return r;
    }
    // absolute values
    std::set<long long> values() const {
        std::set<long long> r;
        for (const auto& e : elems_) r.insert(e.value);
        return r;
    }

    int parity() const {
        int c = 0;
        for (const auto& e : elems_) c += e.odd ? 1 : 0;
        return c % 2;
    }

    bool operator==(const SignedSet&) const = default;
    auto operator<=>(const SignedSet& o) const { return elems_ <=> o.elems_; }

private:
    std::set<SignedElem> elems_;
};

inline std::string toString(const SignedSet& s) {
    std::string r = "{";
    bool first = true;
    for (const auto& e : s) {
        if (!first) r += ",";
        r += toString(e);
        first = false;
    }
    return r + "}";
}

struct SignedMeasure {
    Height ht;
    int parity = 0;
    std::optional<SignedElem> min, max;
};

inline SignedMeasure signedMeasure(const SignedSet& m) {
    SignedMeasure r;
    r.parity = m.parity();
    if (m.empty()) return r;
    r.ht.minusInfinity = false;
    for (const auto& e : m) r.ht.value += e.value < 0 ? -e.value : e.value;
    r.min = *m.elems().begin();
    r.max = *m.elems().rbegin();
    return r;
}

// Integer interval with open/closed ends, written [a..b], (a..b], (a..b), [a..b).
struct Segment {
    long long lo, hi;
    bool loOpen = false, hiOpen = false;

    bool contains(long long v) const {
        bool okLo = loOpen ? v > lo : v >= lo;
        bool okHi = hiOpen ? v < hi : v <= hi;
        return okLo && okHi;
    }
    long long first() const { return loOpen ? lo + 1 : lo; }
    long long last() const { return hiOpen ? hi - 1 : hi; }
    std::vector<long long> items() const {
        std::vector<long long> r;
        for (long long v = first(); v <= last(); ++v) r.push_back(v);
        return r;
    }
};

inline Segment segClosed(long long a, long long b) { return {a, b, false, false}; }
inline Segment segOpen(long long a, long long b) { return {a, b, true, true}; }
inline Segment segOpenClosed(long long a, long long b) { return {a, b, true, false}; }
inline Segment segClosedOpen(long long a, long long b) { return {a, b, false, true}; }

inline SignedSet setUnion(const SignedSet& a, const SignedSet& b) {
    SignedSet r = a;
    for (const auto& e : b) r.insert(e);
    return r;
}

inline SignedSet setDifference(const SignedSet& a, const SignedSet& b) {
    SignedSet r;
    for (const auto& e : a)
        if (!b.contains(e)) r.insert(e);
    return r;
}

template <class Pred>
SignedSet restrictIf(const SignedSet& m, Pred keep) {
    SignedSet r;
    for (const auto& e : m)
        if (keep(e.value)) r.insert(e);
    return r;
}

inline SignedSet restrict(const SignedSet& m, const Segment& s) {
    return restrictIf(m, [&](long long v) { return s.contains(v); });
}

inline SignedSet restrict(const SignedSet& m, const std::set<long long>& s) {
    return restrictIf(m, [&](long long v) { return s.count(v) > 0; });
}

inline SignedSet replaceElem(const SignedSet& m, const SignedElem& x, const SignedElem& y) {
    if (!m.contains(x)) fail("InvalidReplace", toString(x) + " is not in " + toString(m));
    SignedSet r = m;
    r.erase(x);
    if (r.containsValue(y.value) && !r.contains(y))
        fail("InvalidReplace", "result would contain both " + std::to_string(y.value) + " and its bar");
    r.insert(y);
    return r;
}

// Iverson bracket
inline int iv(bool b) { return b ? 1 : 0; }

// (-1)^e as an integer
inline int signOf(long long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace spinbranch
