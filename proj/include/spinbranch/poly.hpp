#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "core.hpp"

namespace spinbranch {

using Int = boost::multiprecision::cpp_int;

enum class Axis : int { X = 0, Y = 1, H = 2 };

// Variables are packed into one integer so monomials stay flat vectors.
// Smaller code = more significant variable in the monomial order.
struct Var {
    static constexpr long long kOffset = 1LL << 39;
    long long code = 0;

    static Var make(Axis a, long long index) { return Var{(static_cast<long long>(a) << 40) + index + kOffset}; }
    Axis axis() const { return static_cast<Axis>(code >> 40); }
    long long index() const { return (code & ((1LL << 40) - 1)) - kOffset; }
    auto operator<=>(const Var&) const = default;
};

inline Var xv(long long i) { return Var::make(Axis::X, i); }
inline Var yv(long long i) { return Var::make(Axis::Y, i); }
inline Var hv(long long i) { return Var::make(Axis::H, i); }

inline std::string varName(const Var& v) {
    static const char* names[] = {"x", "y", "H"};
    long long i = v.index();
    std::string idx = i < 0 ? "(" + std::to_string(i) + ")" : std::to_string(i);
    return names[static_cast<int>(v.axis())] + idx;
}

using Monomial = std::vector<std::pair<Var, int>>;  // sorted by Var, exponents > 0

inline int degree(const Monomial& m) {
    int d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
}

// Graded lexicographic order.
struct GrLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = degree(a), db = degree(b);
        if (da != db) return da < db;
        std::size_t n = std::min(a.size(), b.size());
        for (std::size_t k = 0; k < n; ++k) {
            if (a[k].first != b[k].first) return a[k].first > b[k].first;
            if (a[k].second != b[k].second) return a[k].second < b[k].second;
        }
        return a.size() < b.size();
    }
};

inline Monomial mulMono(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    return r;
}

class Polynomial {
public:
    using Terms = std::map<Monomial, Int, GrLexLess>;

    Polynomial() = default;
    Polynomial(long long c) {
        if (c != 0) terms_[{}] = c;
    }
    Polynomial(const Int& c) {
        if (c != 0) terms_[{}] = c;
    }
    static Polynomial var(const Var& v, int e = 1) {
        Polynomial p;
        if (e == 0) return Polynomial(1);
        p.terms_[{{v, e}}] = 1;
        return p;
    }
    static Polynomial x(long long i) { return var(xv(i)); }
    static Polynomial y(long long i) { return var(yv(i)); }
    static Polynomial h(long long i) { return var(hv(i)); }

    const Terms& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    std::optional<Int> constantValue() const {
        if (terms_.empty()) return Int(0);
        if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
        return std::nullopt;
    }

    void addTerm(const Monomial& m, const Int& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) addTerm(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) addTerm(m, -c);
        return *this;
    }
    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.addTerm(mulMono(ma, mb), ca * cb);
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    Polynomial pow(int e) const {
        Polynomial r(1), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    std::set<Var> variables() const {
        std::set<Var> r;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m) r.insert(v);
        return r;
    }

    // Ring endomorphism given on variables; image(v) == nullopt keeps v fixed.
    template <class F>
    Polynomial substitute(F image) const {
        std::map<Var, std::optional<Polynomial>> imgs;
        std::map<std::pair<Var, int>, Polynomial> powers;
        Polynomial r;
        for (const auto& [m, c] : terms_) {
            Monomial kept;
            Polynomial acc(c);
            for (const auto& [v, e] : m) {
                auto it = imgs.find(v);
                if (it == imgs.end()) it = imgs.emplace(v, image(v)).first;
                if (!it->second) {
                    kept.emplace_back(v, e);
                    continue;
                }
                auto key = std::make_pair(v, e);
                auto pit = powers.find(key);
                if (pit == powers.end()) pit = powers.emplace(key, it->second->pow(e)).first;
                acc *= pit->second;
            }
            if (kept.empty()) {
                r += acc;
            } else {
                Polynomial mono;
                mono.terms_[kept] = 1;
                r += acc * mono;
            }
        }
        return r;
    }

private:
    Terms terms_;
};


inline std::string toString(const Int& c) { return c.str(); }

inline std::string monomialString(const Monomial& m) {
    std::string s;
    for (const auto& [v, e] : m) {
        if (!s.empty()) s += "*";
        s += varName(v);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

// "3*x1*y2^2 - x3", highest monomial first.
inline std::string toString(const Polynomial& p) {
    if (p.isZero()) return "0";
    std::string s;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Int a = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        if (m.empty()) {
            s += a.str();
        } else {
            if (a != 1) s += a.str() + "*";
            s += monomialString(m);
        }
        first = false;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser for sums of products over a ring R.
// `atom` is handed the identifier text (e.g. "x3", "Hb2") and returns R.

namespace detail {

template <class R>
class ExprParser {
public:
    using Atom = std::function<R(const std::string&)>;
    ExprParser(std::string text, Atom atom) : s_(normalize(std::move(text))), atom_(std::move(atom)) {}

    R parse() {
        R r = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    static std::string normalize(std::string t) {
        // Unicode minus and middle dot are accepted as '-' and '*'.
        std::string out;
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (t.compare(k, 3, "\xE2\x88\x92") == 0) {
                out += '-';
                k += 2;
            } else if (t.compare(k, 2, "\xC2\xB7") == 0) {
                out += '*';
                k += 1;
            } else {
                out += t[k];
            }
        }
        return out;
    }
    [[noreturn]] void error(const std::string& m) const {
        fail("ParseError", m + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    R expr() {
        R acc = R(0);
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        R t = term();
        acc = neg ? R(0) - t : t;
        for (;;) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else break;
        }
        return acc;
    }
    R term() {
        R acc = power();
        while (eat('*')) acc = acc * power();
        return acc;
    }
    R power() {
        R base = factor();
        if (eat('^')) {
            skip();
            long long e = number();
            R r = R(1);
            for (long long k = 0; k < e; ++k) r = r * base;
            return r;
        }
        return base;
    }
    long long number() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) error("expected a number");
        return std::stoll(s_.substr(start, pos_ - start));
    }
    R factor() {
        skip();
        if (pos_ >= s_.size()) error("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            R r = expr();
            if (!eat(')')) error("expected ')'");
            return r;
        }
        if (c == '-') {
            ++pos_;
            return R(0) - factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return R(Int(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '(') {
                // negative index written x(-1)
                std::size_t close = s_.find(')', pos_);
                if (close == std::string::npos) error("unterminated index");
                std::string name = s_.substr(start, pos_ - start) + s_.substr(pos_ + 1, close - pos_ - 1);
                pos_ = close + 1;
                return atom_(name);
            }
            if (pos_ < s_.size() && s_[pos_] == '_') ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string name;
            for (std::size_t k = start; k < pos_; ++k)
                if (s_[k] != '_') name += s_[k];
            return atom_(name);
        }
        error("unexpected character '" + std::string(1, c) + "'");
    }

    std::string s_;
    std::size_t pos_ = 0;
    Atom atom_;
};

// Splits "x12" into ("x", 12), "x-3" into ("x", -3).
inline std::pair<std::string, long long> splitIdent(const std::string& name) {
    std::size_t k = 0;
    while (k < name.size() && std::isalpha(static_cast<unsigned char>(name[k]))) ++k;
    if (k == name.size()) fail("ParseError", "identifier without index: " + name);
    return {name.substr(0, k), std::stoll(name.substr(k))};
}

}  // namespace detail

inline Polynomial parsePolynomial(const std::string& text) {
    detail::ExprParser<Polynomial> parser(text, [](const std::string& name) {
        auto [head, idx] = detail::splitIdent(name);
        if (head == "x") return Polynomial::x(idx);
        if (head == "y") return Polynomial::y(idx);
        if (head == "H") return Polynomial::h(idx);
        fail("ParseError", "unknown variable " + name);
    });
    return parser.parse();
}

// ---------------------------------------------------------------------------
// sigma operators, exact division, and the f / g families

// sigma_{a,b}^k : z_t -> z_t + x_a - x_b for t >= k (z = x, y)
inline Polynomial sigmaApply(long long a, long long b, long long k, const Polynomial& f) {
    if (a >= b) fail("BadIndices", "sigma needs a < b, got a=" + std::to_string(a) + ", b=" + std::to_string(b));
    Polynomial shift = Polynomial::x(a) - Polynomial::x(b);
    return f.substitute([&](const Var& v) -> std::optional<Polynomial> {
        if (v.axis() == Axis::H || v.index() < k) return std::nullopt;
        return Polynomial::var(v) + shift;
    });
}

class NotDivisible : public Error {
public:
    NotDivisible(const std::string& msg, Polynomial rem) : Error("NotDivisible", msg), remainder(std::move(rem)) {}
    Polynomial remainder;
};

// f / (x_a - x_b), by synthetic division in x_a.
inline Polynomial exactDiv(const Polynomial& f, long long a, long long b) {
    if (a == b) fail("BadIndices", "divisor x_a - x_b vanishes for a = b");
    const Var va = xv(a);
    std::map<int, Polynomial> coeff;  // f = sum_e coeff[e] * x_a^e
    int deg = 0;
    for (const auto& [m, c] : f.terms()) {
        Monomial rest;
        int e = 0;
        for (const auto& [v, ex] : m) {
            if (v == va) e = ex;
            else rest.emplace_back(v, ex);
        }
        coeff[e].addTerm(rest, c);
        deg = std::max(deg, e);
    }
    if (f.isZero()) return Polynomial();
    const Polynomial xb = Polynomial::x(b);
    std::vector<Polynomial> q(static_cast<std::size_t>(deg) + 1);
    Polynomial carry;  // q_e for the current e
    for (int e = deg; e >= 1; --e) {
        carry = coeff[e] + xb * carry;
        q[e - 1] = carry;
    }
    Polynomial rem = coeff[0] + xb * (deg >= 1 ? q[0] : Polynomial());
    if (!rem.isZero())
        throw NotDivisible("nonzero remainder dividing by x" + std::to_string(a) + " - x" + std::to_string(b), rem);
    Polynomial r;
    for (int e = 0; e < deg; ++e) r += q[e] * Polynomial::var(va, e);
    return r;
}

// D_t^i := max((D u {i}) n (-inf..t))
inline long long dMax(const std::set<long long>& D, long long i, long long t) {
    long long best = i < t ? i : std::numeric_limits<long long>::min();
    for (auto d : D)
        if (d < t) best = std::max(best, d);
    if (best == std::numeric_limits<long long>::min())
        fail("BadParameters", "no element of D u {i} below " + std::to_string(t));
    return best;
}

inline Polynomial uPolyOp(long long i, long long j, const std::set<long long>& D) {
    if (i > j) fail("BadParameters", "u needs i <= j");
    Polynomial r(1);
    for (long long t = i + 1; t <= j; ++t) r *= Polynomial::x(dMax(D, i, t)) - Polynomial::y(t);
    return r;
}

// 0/1-valued function on (i..j]
struct LFunction {
    std::map<long long, int> values;
    int operator()(long long t) const {
        auto it = values.find(t);
        if (it == values.end()) fail("BadParameters", "l undefined at " + std::to_string(t));
        return it->second;
    }
    static LFunction constant(long long i, long long j, int v) {
        LFunction l;
        for (long long t = i + 1; t <= j; ++t) l.values[t] = v;
        return l;
    }
    // 1 if i < t < k or q < t < j; 0 otherwise
    static LFunction l2(long long i, long long k, long long q, long long j) {
        LFunction l;
        for (long long t = i + 1; t <= j; ++t) l.values[t] = ((i < t && t < k) || (q < t && t < j)) ? 1 : 0;
        return l;
    }
};

// f_{i,j}^{D,l}(S) for every S in (i..j], memoised on bitmasks (bit t-i-1 <-> t).
class FFamily {
public:
    FFamily(long long i, long long j, std::set<long long> D, LFunction l)
        : i_(i), j_(j), D_(std::move(D)), l_(std::move(l)) {
        if (i > j) fail("BadParameters", "f needs i <= j");
        if (j - i > 62) fail("BadParameters", "interval too wide");
    }

    long long i() const { return i_; }
    long long j() const { return j_; }

    std::uint64_t mask(const std::set<long long>& S) const {
        std::uint64_t m = 0;
        for (auto t : S) {
            if (t <= i_ || t > j_) fail("BadParameters", "S must lie in (i..j], got " + std::to_string(t));
            m |= std::uint64_t(1) << (t - i_ - 1);
        }
        return m;
    }

    const Polynomial& operator()(const std::set<long long>& S) { return at(mask(S)); }

    const Polynomial& at(std::uint64_t m) {
        auto it = cache_.find(m);
        if (it != cache_.end()) return it->second;
        Polynomial val;
        if (m == 0) {
            val = uPolyOp(i_, j_, D_);
        } else {
            int bit = __builtin_ctzll(m);
            long long s = i_ + 1 + bit;
            const Polynomial prev = at(m & (m - 1));
            long long s0 = dMax(D_, i_, s);
            Polynomial num = prev - sigmaApply(s0, s, s + l_(s), prev);
            val = exactDiv(num, s0, s);
        }
        return cache_.emplace(m, std::move(val)).first->second;
    }

private:
    long long i_, j_;
    std::set<long long> D_;
    LFunction l_;
    std::map<std::uint64_t, Polynomial> cache_;
};

inline Polynomial fPolyOp(long long i, long long j, const std::set<long long>& D, const LFunction& l,
                          const std::set<long long>& S) {
    FFamily fam(i, j, D, l);
    return fam(S);
}

inline void checkG1(long long i, long long j, const std::set<long long>& S) {
    if (!(i < j)) fail("BadParameters", "g1 needs i < j");
    for (auto t : S)
        if (!(i < t && t < j)) fail("BadParameters", "g1 needs S in (i..j)");
}

inline void checkG2(long long i, long long k, long long q, long long j, const std::set<long long>& S) {
    if (!(i <= k && k <= q && q <= j && i < q)) fail("BadParameters", "g2 needs i <= k <= q <= j and i < q");
    for (auto t : S)
        if (!(i < t && t <= j)) fail("BadParameters", "g2 needs S in (i..j]");
}

inline Polynomial g1(long long i, long long j, const std::set<long long>& S) {
    checkG1(i, j, S);
    return fPolyOp(i, j, {}, LFunction::constant(i, j, 1), S);
}

inline Polynomial g2(long long i, long long k, long long q, long long j, const std::set<long long>& S) {
    checkG2(i, k, q, j, S);
    return fPolyOp(i, j, {k}, LFunction::l2(i, k, q, j), S);
}

// Shared caches for sweeps that evaluate many g-polynomials on the same parameters.
class GCache {
public:
    const Polynomial& g1(long long i, long long j, const std::set<long long>& S) {
        checkG1(i, j, S);
        auto key = std::make_tuple(i, j, -1LL, -1LL);
        auto it = fams_.find(key);
        if (it == fams_.end()) it = fams_.emplace(key, FFamily(i, j, {}, LFunction::constant(i, j, 1))).first;
        return it->second(S);
    }
    const Polynomial& g2(long long i, long long k, long long q, long long j, const std::set<long long>& S) {
        checkG2(i, k, q, j, S);
        auto key = std::make_tuple(i, j, k, q);
        auto it = fams_.find(key);
        if (it == fams_.end()) it = fams_.emplace(key, FFamily(i, j, {k}, LFunction::l2(i, k, q, j))).first;
        return it->second(S);
    }

private:
    std::map<std::tuple<long long, long long, long long, long long>, FFamily> fams_;
};

// Replace y_b by x_a for each (b -> a).
inline Polynomial linReduce(const Polynomial& f, const std::vector<std::pair<long long, long long>>& subst) {
    std::map<long long, long long> m;
    for (auto [b, a] : subst) {
        auto [it, inserted] = m.emplace(b, a);
        if (!inserted && it->second != a)
            fail("ConflictingSubstitution", "y" + std::to_string(b) + " mapped to two different x's");
    }
    return f.substitute([&](const Var& v) -> std::optional<Polynomial> {
        if (v.axis() != Axis::Y) return std::nullopt;
        auto it = m.find(v.index());
        if (it == m.end()) return std::nullopt;
        return Polynomial::x(it->second);
    });
}

}  // namespace spinbranch
