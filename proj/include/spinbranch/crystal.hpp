#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "core.hpp"
#include "sigseq.hpp"

namespace spinbranch {

// Positive parts, weakly decreasing. Zero parts are dropped on construction.
struct Partition {
    std::vector<long long> parts;

    Partition() = default;
    explicit Partition(std::vector<long long> v) : parts(std::move(v)) {
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
    }
    long long size() const {
        long long s = 0;
        for (long long x : parts) s += x;
        return s;
    }
    long long len() const { return static_cast<long long>(parts.size()); }
    // 1-based row length, 0 past the end
    long long row(long long r) const { return r >= 1 && r <= len() ? parts[static_cast<std::size_t>(r - 1)] : 0; }
    bool operator==(const Partition&) const = default;
    // vertex order: by size, then lexicographically by parts
    bool operator<(const Partition& o) const {
        if (size() != o.size()) return size() < o.size();
        return parts < o.parts;
    }
};

inline std::string toString(const Partition& l) {
    if (l.parts.empty()) return "()";
    std::string r = "(";
    for (std::size_t k = 0; k < l.parts.size(); ++k) r += (k ? "," : "") + std::to_string(l.parts[k]);
    return r + ")";
}

struct Node {
    long long row = 1, col = 1;
    bool operator==(const Node&) const = default;
    // reading order: rows downward, right to left within a row
    bool operator<(const Node& o) const { return row != o.row ? row < o.row : col > o.col; }
};

inline std::string toString(const Node& a) { return "(" + std::to_string(a.row) + "," + std::to_string(a.col) + ")"; }

// Column contents fold as 0,1,..,ell,..,1,0 and repeat; unfolded when p = 0.
inline long long contP(long long col, long long p) {
    if (col < 1) fail("InvalidColumn", "column " + std::to_string(col) + " < 1");
    if (p == 0) return col - 1;
    long long t = (col - 1) % p;
    return std::min(t, p - 1 - t);
}

inline long long betaOfContent(long long i, long long p) { return modP(i * i + i, p); }

// Weakly decreasing with no negative part (zeros allowed; they are ignored).
inline bool isPartitionShape(const std::vector<long long>& v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] < 0) return false;
        if (k && v[k - 1] < v[k]) return false;
    }
    return true;
}

inline bool isPStrict(const std::vector<long long>& v, long long p) {
    if (!isPartitionShape(v)) return false;
    for (std::size_t k = 1; k < v.size(); ++k)
        if (v[k] > 0 && v[k - 1] == v[k] && (p == 0 || v[k] % p != 0)) return false;
    return true;
}

inline bool isPStrict(const Partition& l, long long p) { return isPStrict(l.parts, p); }

inline bool isRestricted(const Partition& l, long long p) {
    if (!isPStrict(l, p)) return false;
    if (p == 0) return true;
    for (long long r = 1; r <= l.len(); ++r) {
        long long d = l.row(r) - l.row(r + 1);
        if (l.row(r) % p == 0 ? d >= p : d > p) return false;
    }
    return true;
}

// Which names the violated clause, for diagnostics.
inline std::optional<std::string> pStrictViolation(const std::vector<long long>& v, long long p) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] < 0) return "part " + std::to_string(k + 1) + " is negative";
        if (k && v[k - 1] < v[k]) return "parts " + std::to_string(k) + "," + std::to_string(k + 1) + " increase";
        if (k && v[k] > 0 && v[k - 1] == v[k] && (p == 0 || v[k] % p != 0))
            return "equal parts " + std::to_string(v[k]) + " not divisible by p";
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- nodes

enum class NodeRule { R1, R2, A1, A2 };

inline const char* ruleName(NodeRule r) {
    switch (r) {
        case NodeRule::R1: return "R1";
        case NodeRule::R2: return "R2";
        case NodeRule::A1: return "A1";
        default: return "A2";
    }
}

struct SignedNode {
    Node node;
    char sign = '-';  // '-' removable, '+' addable
    NodeRule rule = NodeRule::R1;
};

struct NodeLists {
    std::vector<SignedNode> removable, addable;
    // both lists merged in reading order
    std::vector<SignedNode> ordered() const {
        std::vector<SignedNode> all = removable;
        all.insert(all.end(), addable.begin(), addable.end());
        std::sort(all.begin(), all.end(), [](const SignedNode& a, const SignedNode& b) { return a.node < b.node; });
        return all;
    }
};

namespace detail {

inline std::vector<long long> bump(std::vector<long long> v, long long r, long long d) {
    if (static_cast<long long>(v.size()) < r) v.resize(static_cast<std::size_t>(r), 0);
    v[static_cast<std::size_t>(r - 1)] += d;
    return v;
}

}  // namespace detail

// i-removable and i-addable nodes of a p-strict partition.
inline NodeLists introNodes(const Partition& l, long long i, long long p) {
    NodeLists out;
    auto cont = [&](long long col) { return col >= 1 ? contP(col, p) : -1; };
    auto ok = [&](const std::vector<long long>& v) { return isPStrict(v, p); };
    for (long long r = 1; r <= l.len() + 1; ++r) {
        long long lr = l.row(r);
        if (lr >= 1) {
            if (cont(lr) == i && ok(detail::bump(l.parts, r, -1)))
                out.removable.push_back({{r, lr}, '-', NodeRule::R1});
            if (lr >= 2 && cont(lr - 1) == i && cont(lr) == i && ok(detail::bump(l.parts, r, -1)) &&
                ok(detail::bump(l.parts, r, -2)))
                out.removable.push_back({{r, lr - 1}, '-', NodeRule::R2});
        }
        if (cont(lr + 1) == i && ok(detail::bump(l.parts, r, 1)))
            out.addable.push_back({{r, lr + 1}, '+', NodeRule::A1});
        if (cont(lr + 1) == i && cont(lr + 2) == i && ok(detail::bump(l.parts, r, 1)) &&
            ok(detail::bump(l.parts, r, 2)))
            out.addable.push_back({{r, lr + 2}, '+', NodeRule::A2});
    }
    return out;
}

// beta-removable and beta-addable nodes of lambda in X_p^+(n); columns may be <= 0.
inline NodeLists bodyNodes(const Weight& l, long long beta, long long p) {
    if (!isDominantPStrict(l, p)) fail("NotDominantPStrict", "weight is not dominant p-strict");
    beta = modP(beta, p);
    NodeLists out;
    auto ok = [&](long long r, long long d) {
        Weight w = l;
        w.parts[static_cast<std::size_t>(r - 1)] += d;
        return isDominantPStrict(w, p);
    };
    auto res = [&](long long j) { return resP(j, p); };
    const long long n = static_cast<long long>(l.n());
    for (long long r = 1; r <= n; ++r) {
        long long lr = l[static_cast<std::size_t>(r)];
        if (res(lr) == beta && ok(r, -1)) out.removable.push_back({{r, lr}, '-', NodeRule::R1});
        if (res(lr - 1) == beta && res(lr) == beta && ok(r, -1) && ok(r, -2))
            out.removable.push_back({{r, lr - 1}, '-', NodeRule::R2});
        if (res(lr + 1) == beta && ok(r, 1)) out.addable.push_back({{r, lr + 1}, '+', NodeRule::A1});
        if (res(lr + 1) == beta && res(lr + 2) == beta && ok(r, 1) && ok(r, 2))
            out.addable.push_back({{r, lr + 2}, '+', NodeRule::A2});
    }
    return out;
}

inline SigSeq signatureOf(const NodeLists& nodes) {
    SigSeq s;
    for (const auto& a : nodes.ordered()) s.push_back({a.sign, a.node.row});
    return s;
}

inline SigSeq betaSignature(const Weight& l, long long beta, long long p, bool reduced) {
    SigSeq s = signatureOf(bodyNodes(l, beta, p));
    return reduced ? reduce(s) : s;
}

inline SigSeq introSignature(const Partition& l, long long i, long long p, bool reduced) {
    SigSeq s = signatureOf(introNodes(l, i, p));
    return reduced ? reduce(s) : s;
}

// lambda padded with one zero part, as a weight of length len + 1
inline Weight padded(const Partition& l) {
    Weight w(l.parts);
    w.parts.push_back(0);
    return w;
}

struct NodeStatus {
    std::vector<SignedNode> normal;    // surviving '-' in reading order
    std::vector<SignedNode> conormal;  // surviving '+'
    std::optional<SignedNode> good;    // first surviving '-'
    std::optional<SignedNode> cogood;  // last surviving '+'
};

inline NodeStatus nodeStatus(const Partition& l, long long i, long long p) {
    auto all = introNodes(l, i, p).ordered();
    NodeStatus st;
    for (auto k : survivors(all.size(), [&](std::size_t t) { return all[t].sign; })) {
        if (all[k].sign == '-')
            st.normal.push_back(all[k]);
        else
            st.conormal.push_back(all[k]);
    }
    if (!st.normal.empty()) st.good = st.normal.front();
    if (!st.conormal.empty()) st.cogood = st.conormal.back();
    return st;
}

// The partition with one box removed (d = -1) or added (d = +1) at the end of row r.
inline std::optional<Partition> changeRow(const Partition& l, long long r, long long d, long long p) {
    auto v = detail::bump(l.parts, r, d);
    if (!isPStrict(v, p)) return std::nullopt;
    return Partition(v);
}

inline std::optional<Partition> eTilde(long long i, const Partition& l, long long p) {
    auto st = nodeStatus(l, i, p);
    if (!st.good) return std::nullopt;
    if (st.good->rule != NodeRule::R1) fail("Unreachable", "good node is not an end-of-row node");
    return changeRow(l, st.good->node.row, -1, p);
}

inline std::optional<Partition> fTilde(long long i, const Partition& l, long long p) {
    auto st = nodeStatus(l, i, p);
    if (!st.cogood) return std::nullopt;
    if (st.cogood->rule != NodeRule::A1) fail("Unreachable", "cogood node is not an end-of-row node");
    return changeRow(l, st.cogood->node.row, 1, p);
}

// contents 0..ell, or 0..maxCol-1 when p = 0
inline std::vector<long long> contentRange(long long p, long long maxCol) {
    std::vector<long long> r;
    long long top = p == 0 ? std::max<long long>(maxCol, 1) - 1 : (p - 1) / 2;
    for (long long i = 0; i <= top; ++i) r.push_back(i);
    return r;
}

// ---------------------------------------------------------------- enumeration

// All partitions of m whose parts are at most maxPart, in decreasing lexicographic order.
template <class Visit>
void forEachPartition(long long m, long long maxPart, std::vector<long long>& cur, Visit&& visit) {
    if (m == 0) {
        visit(cur);
        return;
    }
    for (long long a = std::min(m, maxPart); a >= 1; --a) {
        cur.push_back(a);
        forEachPartition(m - a, a, cur, visit);
        cur.pop_back();
    }
}

inline std::vector<Partition> pStrictPartitions(long long m, long long p) {
    std::vector<Partition> out;
    std::vector<long long> cur;
    forEachPartition(m, m, cur, [&](const std::vector<long long>& v) {
        if (isPStrict(v, p)) out.emplace_back(v);
    });
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Partition> restrictedPartitions(long long m, long long p) {
    std::vector<Partition> out;
    for (auto& l : pStrictPartitions(m, p))
        if (isRestricted(l, p)) out.push_back(l);
    return out;
}

struct CrystalEdge {
    Partition from;
    long long color = 0;
    Partition to;
};

struct CrystalGraph {
    long long p = 0;
    std::vector<Partition> vertices;
    std::vector<CrystalEdge> edges;  // (e~_i mu, i, mu)
};

inline CrystalGraph crystalGraph(long long p, long long maxSize) {
    if (maxSize < 0) fail("InvalidSize", "N must be >= 0");
    CrystalGraph g;
    g.p = p;
    for (long long m = 0; m <= maxSize; ++m)
        for (auto& mu : restrictedPartitions(m, p)) {
            g.vertices.push_back(mu);
            long long maxCol = mu.parts.empty() ? 1 : mu.parts.front() + 2;
            for (long long i : contentRange(p, maxCol))
                if (auto l = eTilde(i, mu, p)) g.edges.push_back({*l, i, mu});
        }
    return g;
}

// Partitions reached from the empty one by f~ moves, up to the given size.
inline std::set<std::vector<long long>> reachableByF(long long p, long long maxSize) {
    std::set<std::vector<long long>> seen{{}};
    std::vector<Partition> frontier{Partition()};
    for (long long m = 0; m < maxSize; ++m) {
        std::vector<Partition> next;
        for (const auto& l : frontier) {
            long long maxCol = l.parts.empty() ? 1 : l.parts.front() + 2;
            for (long long i : contentRange(p, maxCol + 1))
                if (auto mu = fTilde(i, l, p))
                    if (seen.insert(mu->parts).second) next.push_back(*mu);
        }
        frontier = std::move(next);
    }
    return seen;
}

// ---------------------------------------------------------------- statistics

struct SpinStats {
    long long hPprime = 0;
    char type = 'M';
    std::map<long long, long long> gamma;  // content -> number of nodes
};

inline SpinStats spinStats(const Partition& l, long long p) {
    SpinStats s;
    for (long long x : l.parts)
        if (p == 0 || x % p != 0) ++s.hPprime;
    s.type = s.hPprime % 2 == 0 ? 'M' : 'Q';
    long long maxCol = l.parts.empty() ? 1 : l.parts.front();
    for (long long i : contentRange(p, maxCol)) s.gamma[i] = 0;
    for (long long x : l.parts)
        for (long long c = 1; c <= x; ++c) ++s.gamma[contP(c, p)];
    return s;
}

struct BranchEntry {
    Partition mu;
    Node node;
    long long content = 0;
};

struct BranchingTables {
    std::vector<BranchEntry> restrictionSocle, restrictionSpecht, inductionSocle, inductionSpecht;
};

// Good/normal removals and cogood/conormal additions; only restricted results are listed.
inline BranchingTables branchingTables(const Partition& l, long long p) {
    if (!isRestricted(l, p)) fail("NotRestricted", toString(l) + " is not restricted");
    BranchingTables t;
    long long maxCol = l.parts.empty() ? 1 : l.parts.front() + 2;
    for (long long i : contentRange(p, maxCol)) {
        auto st = nodeStatus(l, i, p);
        auto push = [&](std::vector<BranchEntry>& dst, const SignedNode& a, long long d) {
            // (R2)/(A2) nodes do not change a single row end
            if (a.rule == NodeRule::R2 || a.rule == NodeRule::A2) return;
            auto mu = changeRow(l, a.node.row, d, p);
            if (mu && isRestricted(*mu, p)) dst.push_back({*mu, a.node, i});
        };
        for (const auto& a : st.normal) push(t.restrictionSpecht, a, -1);
        for (const auto& a : st.conormal) push(t.inductionSpecht, a, 1);
        if (st.good) push(t.restrictionSocle, *st.good, -1);
        if (st.cogood) push(t.inductionSocle, *st.cogood, 1);
    }
    return t;
}

}  // namespace spinbranch
