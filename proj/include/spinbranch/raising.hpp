#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "core.hpp"
#include "poly.hpp"

namespace spinbranch {

// Element of the degree-zero algebra: sum over sorted barred index sets B of
// (polynomial in H_1..H_n) * Hb_{b1} * ... * Hb_{bk}.
class U0Element {
public:
    using Barred = std::vector<long long>;  // strictly increasing
    using Terms = std::map<Barred, Polynomial>;

    U0Element() = default;
    U0Element(long long c) {
        if (c != 0) terms_[{}] = Polynomial(c);
    }
    U0Element(const Int& c) {
        if (c != 0) terms_[{}] = Polynomial(c);
    }
    U0Element(const Polynomial& p) {
        if (!p.isZero()) terms_[{}] = p;
    }
    static U0Element barred(long long i) {
        U0Element u;
        u.terms_[{i}] = Polynomial(1);
        return u;
    }

    const Terms& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }

    void addTerm(const Barred& b, const Polynomial& p) {
        if (p.isZero()) return;
        auto [it, inserted] = terms_.emplace(b, p);
        if (!inserted) {
            it->second += p;
            if (it->second.isZero()) terms_.erase(it);
        }
    }

    U0Element& operator+=(const U0Element& o) {
        for (const auto& [b, p] : o.terms_) addTerm(b, p);
        return *this;
    }
    U0Element& operator-=(const U0Element& o) {
        for (const auto& [b, p] : o.terms_) addTerm(b, -p);
        return *this;
    }
    U0Element operator-() const {
        U0Element r;
        for (const auto& [b, p] : terms_) r.terms_[b] = -p;
        return r;
    }
    friend U0Element operator+(U0Element a, const U0Element& b) { return a += b; }
    friend U0Element operator-(U0Element a, const U0Element& b) { return a -= b; }
    friend U0Element operator*(const U0Element& a, const U0Element& b) {
        U0Element r;
        for (const auto& [ba, pa] : a.terms_)
            for (const auto& [bb, pb] : b.terms_) {
                auto [sign, merged, hs] = mergeBarred(ba, bb);
                Polynomial coef = pa * pb * hs;
                if (sign < 0) coef = -coef;
                r.addTerm(merged, coef);
            }
        return r;
    }
    U0Element& operator*=(const U0Element& o) { return *this = *this * o; }
    bool operator==(const U0Element& o) const { return terms_ == o.terms_; }

    // Terms with an odd number of barred generators / an even number.
    U0Element parityPart(int par) const {
        U0Element r;
        for (const auto& [b, p] : terms_)
            if (static_cast<int>(b.size() % 2) == par) r.terms_[b] = p;
        return r;
    }

    // Hb_A * Hb_B = sign * Hb_{A xor B} * prod_{c in A n B} H_c
    static std::tuple<int, Barred, Polynomial> mergeBarred(const Barred& a, const Barred& b) {
        Barred cur = a;
        int sign = 1;
        Polynomial hs(1);
        for (long long x : b) {
            // x enters at the right end and moves left past larger generators
            std::size_t pos = cur.size();
            while (pos > 0 && cur[pos - 1] > x) {
                --pos;
                sign = -sign;
            }
            if (pos > 0 && cur[pos - 1] == x) {
                cur.erase(cur.begin() + static_cast<long>(pos - 1));
                hs *= Polynomial::h(x);
            } else {
                cur.insert(cur.begin() + static_cast<long>(pos), x);
            }
        }
        return {sign, cur, hs};
    }

private:
    Terms terms_;
};

// "(H1^2 - H1)*Hb2*Hb3 + 4"
inline std::string toString(const U0Element& u) {
    if (u.isZero()) return "0";
    std::vector<std::pair<bool, std::string>> pieces;  // (negative, magnitude)
    auto monoPiece = [](const Monomial& m, const Int& c, const std::string& tail) {
        Int a = c < 0 ? Int(-c) : c;
        std::string body = monomialString(m);
        std::string s;
        if (body.empty() && tail.empty()) s = a.str();
        else if (a == 1) s = body.empty() ? tail : body + (tail.empty() ? "" : "*" + tail);
        else s = a.str() + (body.empty() ? "" : "*" + body) + (tail.empty() ? "" : "*" + tail);
        return std::make_pair(c < 0, s);
    };
    for (const auto& [b, p] : u.terms()) {
        std::string tail;
        for (std::size_t k = 0; k < b.size(); ++k) tail += (k ? "*Hb" : "Hb") + std::to_string(b[k]);
        if (b.empty() || p.size() == 1) {
            for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
                pieces.push_back(monoPiece(it->first, it->second, tail));
        } else {
            pieces.emplace_back(false, "(" + toString(p) + ")*" + tail);
        }
    }
    std::string s;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const auto& [neg, mag] = pieces[k];
        if (k == 0) s += neg ? "-" + mag : mag;
        else s += (neg ? " - " : " + ") + mag;
    }
    return s;
}

inline U0Element parseU0(const std::string& text) {
    detail::ExprParser<U0Element> parser(text, [](const std::string& name) {
        auto [head, idx] = detail::splitIdent(name);
        if (head == "H") return U0Element(Polynomial::h(idx));
        if (head == "Hb") return U0Element::barred(idx);
        fail("ParseError", "unknown generator " + name);
    });
    return parser.parse();
}

// ---------------------------------------------------------------------------
// atoms

inline void checkIndex(long long i, long long n) {
    if (i < 1 || i > n) fail("IndexOutOfRange", "index " + std::to_string(i) + " outside [1.." + std::to_string(n) + "]");
}

inline U0Element uH(long long i) { return U0Element(Polynomial::h(i)); }
inline U0Element uHbar(long long i) { return U0Element::barred(i); }
// H_i^eps: eps = 0 gives H_i, eps = 1 gives Hb_i
inline U0Element uHEps(long long i, int eps) { return (eps & 1) ? uHbar(i) : uH(i); }

// C(i,j) = H_i(H_i - 1) - H_j(H_j - 1)
inline U0Element uC(long long i, long long j) {
    Polynomial hi = Polynomial::h(i), hj = Polynomial::h(j);
    return U0Element(hi * (hi - 1) - hj * (hj - 1));
}

// B(i,j) = H_i(H_i - 1) - (H_j + 1)H_j
inline U0Element uB(long long i, long long j) {
    Polynomial hi = Polynomial::h(i), hj = Polynomial::h(j);
    return U0Element(hi * (hi - 1) - (hj + 1) * hj);
}

struct U0AtomSpec {
    enum Kind { H, Hbar, HEps, C, B } kind;
    long long i = 0, j = 0;
    int eps = 0;
};

inline U0Element u0Atoms(const U0AtomSpec& s, long long n) {
    checkIndex(s.i, n);
    switch (s.kind) {
        case U0AtomSpec::H: return uH(s.i);
        case U0AtomSpec::Hbar: return uHbar(s.i);
        case U0AtomSpec::HEps: return uHEps(s.i, s.eps);
        case U0AtomSpec::C: checkIndex(s.j, n); return uC(s.i, s.j);
        case U0AtomSpec::B: checkIndex(s.j, n); return uB(s.i, s.j);
    }
    fail("IndexOutOfRange", "unknown atom");
}

inline U0Element u0Product(const U0Element& a, const U0Element& b) { return a * b; }

// [[x_i]] = H_i(H_i - 1), [[y_i]] = (H_i + 1)H_i
inline U0Element bracketHom(const Polynomial& f, long long n = std::numeric_limits<long long>::max()) {
    Polynomial img = f.substitute([&](const Var& v) -> std::optional<Polynomial> {
        if (v.axis() == Axis::H) fail("IndexOutOfRange", "bracket expects x/y variables only");
        checkIndex(v.index(), n);
        Polynomial h = Polynomial::h(v.index());
        return v.axis() == Axis::X ? h * (h - 1) : (h + 1) * h;
    });
    return U0Element(img);
}

// ev_lambda: H_i -> lambda_i, coefficients mod p, barred generators kept.
inline U0Element evalAtWeight(const U0Element& u, const Weight& lambda, long long p) {
    if (p <= 0) fail("CharacteristicZero", "evaluation needs p > 0");
    U0Element r;
    for (const auto& [b, poly] : u.terms()) {
        Int acc = 0;
        for (const auto& [m, c] : poly.terms()) {
            Int t = c;
            for (const auto& [v, e] : m) {
                if (v.axis() != Axis::H) fail("IndexOutOfRange", "unexpected variable " + varName(v));
                long long i = v.index();
                if (i < 1 || static_cast<std::size_t>(i) > lambda.n())
                    fail("IndexOutOfRange", "weight too short for H" + std::to_string(i));
                Int base = lambda[static_cast<std::size_t>(i)];
                for (int k = 0; k < e; ++k) t *= base;
            }
            acc += t;
        }
        acc %= p;
        if (acc < 0) acc += p;
        r.addTerm(b, Polynomial(acc));
    }
    return r;
}

// ---------------------------------------------------------------------------
// raising coefficients

// delta on [i..j-1] with values 0/1
struct DeltaFunction {
    long long i = 0, j = 0;
    std::vector<int> v;  // v[t - i]

    DeltaFunction() = default;
    DeltaFunction(long long i_, long long j_, std::vector<int> vals) : i(i_), j(j_), v(std::move(vals)) {
        if (static_cast<long long>(v.size()) != j - i) fail("BadParameters", "delta needs j - i values");
    }
    static DeltaFunction fromMask(long long i, long long j, std::uint64_t mask) {
        std::vector<int> vals;
        for (long long t = i; t < j; ++t) vals.push_back(static_cast<int>((mask >> (t - i)) & 1));
        return DeltaFunction(i, j, vals);
    }
    int at(long long t) const {
        if (t < i || t >= j) fail("BadParameters", "delta read outside [i..j-1] at " + std::to_string(t));
        return v[static_cast<std::size_t>(t - i)];
    }
    // sum over seg n [i..j-1], mod 2
    int sum(const Segment& s) const {
        int r = 0;
        for (long long t = i; t < j; ++t)
            if (s.contains(t)) r ^= v[static_cast<std::size_t>(t - i)];
        return r;
    }
    int total() const { return sum(segClosed(i, j - 1)); }
    // restriction to [a..b-1]
    DeltaFunction sub(long long a, long long b) const {
        std::vector<int> vals;
        for (long long t = a; t < b; ++t) vals.push_back(at(t));
        return DeltaFunction(a, b, vals);
    }
    // chi_a^tau u delta|_(a..j)
    DeltaFunction withFirst(long long a, long long b, int tau) const {
        DeltaFunction d = sub(a, b);
        d.v[0] = tau & 1;
        return d;
    }
    auto operator<=>(const DeltaFunction&) const = default;
};

inline void checkRaisingInput(long long i, long long j, const SignedSet& M) {
    if (!(i < j)) fail("BadSignedSet", "need i < j");
    if (!M.containsValue(j)) fail("BadSignedSet", "M must contain j or its bar");
    for (const auto& e : M)
        if (e.value <= i || e.value > j) fail("BadSignedSet", "M must lie in (i..j]");
}

// Direct evaluation of the recursion by cases on min M, memoised.
class RaisingEngine {
public:
    U0Element rec(long long i, long long j, int eps, const DeltaFunction& delta, const SignedSet& M) {
        checkRaisingInput(i, j, M);
        if (delta.i != i || delta.j != j) fail("BadParameters", "delta must live on [i..j-1]");
        return P(i, j, eps & 1, delta, M);
    }

    std::size_t cacheSize() const { return cache_.size(); }

private:
    using Key = std::tuple<long long, long long, int, std::vector<int>, SignedSet>;
    std::map<Key, U0Element> cache_;

    U0Element P(long long i, long long j, int eps, const DeltaFunction& d, const SignedSet& M) {
        Key key{i, j, eps, d.v, M};
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        U0Element r = compute(i, j, eps, d, M);
        cache_.emplace(std::move(key), r);
        return r;
    }

    static U0Element signed_(int exponent, const U0Element& u) { return (exponent & 1) ? -u : u; }

    U0Element compute(long long i, long long j, int eps, const DeltaFunction& d, const SignedSet& M) {
        const int sumAll = d.total();
        if (M == SignedSet{bar(j)}) {
            int e = eps ^ sumAll;
            int s = d.at(i) & (eps ^ d.sum(segOpen(i, j)));
            return uHEps(i, e) - signed_(s, uHEps(i + 1, e));
        }
        if (M == SignedSet{even(j)}) return sumAll == eps ? uB(i, i + 1) : U0Element();

        const SignedElem first = *M.begin();
        const long long m = first.value;
        const SignedSet rest = setDifference(M, SignedSet{first});  // M_(m..j]
        const int restPar = rest.parity();
        U0Element r;

        if (m == i + 1 && first.odd) {
            const int sIJ = d.sum(segOpen(i, j));
            for (int g = 0; g < 2; ++g) {
                int s = g ^ eps;
                int ex = g * (1 + eps + restPar) + g * sIJ;
                r += signed_(ex, P(i, i + 1, g, d.sub(i, i + 1), SignedSet{bar(i + 1)}) *
                                     P(i + 1, j, s, d.sub(i + 1, j), rest));
            }
            for (int g = 0; g < 2; ++g) {
                int s = g ^ eps;
                r += signed_(s * (1 + M.parity()), P(i, j, g, d, rest) * uHEps(i, s));
            }
            return r;
        }
        if (m == i + 1) {
            const int di = d.at(i), di1 = d.at(i + 1), sIJ = d.sum(segOpen(i, j));
            r += signed_(di * (1 + eps + restPar) + di * sIJ, uB(i, i + 1) * P(i + 1, j, eps ^ di, d.sub(i + 1, j), rest));
            for (int xi = 0; xi < 2; ++xi)
                for (int tau = 0; tau < 2; ++tau) {
                    int sg = eps ^ di1 ^ xi ^ tau;
                    int ex = (xi + tau + di1) * (1 + eps + restPar + sIJ + xi);
                    r -= signed_(ex, P(i, i + 1, xi, d.sub(i, i + 1), SignedSet{bar(i + 1)}) *
                                         P(i + 1, j, sg, d.withFirst(i + 1, j, tau), rest));
                }
            r += P(i, j, eps, d, rest) * uC(i, i + 1);
            return r;
        }
        const int sMJ = d.sum(segClosed(m, j));
        if (first.odd) {
            for (int g = 0; g < 2; ++g) {
                int s = g ^ eps;
                r += signed_(g * (1 + eps + restPar + sMJ),
                             P(i, m, g, d.sub(i, m), SignedSet{bar(m)}) * P(m, j, s, d.sub(m, j), rest));
            }
            r += P(i, j, eps, d, replaceElem(M, bar(m), bar(m - 1)));
            return r;
        }
        const int sIM = d.sum(segClosedOpen(i, m)), dm = d.at(m);
        r += signed_(sIM * (1 + eps + restPar + sMJ), uB(i, i + 1) * P(m, j, eps ^ sIM, d.sub(m, j), rest));
        for (int xi = 0; xi < 2; ++xi)
            for (int tau = 0; tau < 2; ++tau) {
                int sg = eps ^ dm ^ xi ^ tau;
                int ex = (xi + tau + dm) * (1 + eps + restPar + sMJ + xi);
                r -= signed_(ex, P(i, m, xi, d.sub(i, m), SignedSet{bar(m)}) * P(m, j, sg, d.withFirst(m, j, tau), rest));
            }
        r += P(i, j, eps, d, replaceElem(M, even(m), even(m - 1)));
        r += P(i, j, eps, d, rest) * uC(m - 1, m);
        return r;
    }
};

inline U0Element raisingRec(long long i, long long j, int eps, const DeltaFunction& delta, const SignedSet& M) {
    RaisingEngine e;
    return e.rec(i, j, eps, delta, M);
}

// X(i,q,M) = { k in [i..q] \ M : k-1 in M u {i-1, i} }, membership by value
inline std::vector<long long> xSet(long long i, long long q, const SignedSet& M) {
    std::vector<long long> r;
    // q-bar does not remove q, same as in the complement below
    for (long long k = i; k <= q; ++k) {
        if (M.contains(even(k))) continue;
        if (M.containsValue(k - 1) || k - 1 == i - 1 || k - 1 == i) r.push_back(k);
    }
    return r;
}

// (i..j] \ M, dropping only elements of M as signed elements (q-bar does not remove q)
inline std::set<long long> evenComplement(const Segment& s, const SignedSet& M) {
    std::set<long long> r;
    for (long long t : s.items())
        if (!M.contains(even(t))) r.insert(t);
    return r;
}

inline U0Element raisingClosed(long long i, long long j, int eps, const DeltaFunction& delta, const SignedSet& M,
                               GCache* cache = nullptr) {
    checkRaisingInput(i, j, M);
    GCache local;
    GCache& G = cache ? *cache : local;
    const auto odds = M.odds();
    const int sumAll = delta.total();
    if (odds.empty()) {
        if (eps != sumAll) return U0Element();
        return bracketHom(G.g1(i, j, evenComplement(segOpen(i, j), M)));
    }
    if (odds.size() > 1) fail("UnsupportedShape", "no closed form for more than one odd element");
    const long long q = *odds.begin();
    const int e = (eps ^ sumAll) & 1;
    const std::set<long long> S = evenComplement(segOpenClosed(i, j), M);
    U0Element r;
    for (long long k : xSet(i, q, M)) {
        int ex = iv(k > i) + (1 + eps + sumAll) * delta.sum(segClosedOpen(i, k));
        U0Element term = bracketHom(G.g2(i, k, q, j, S)) * uHEps(k, e);
        r += (ex & 1) ? -term : term;
    }
    return r;
}

}  // namespace spinbranch
