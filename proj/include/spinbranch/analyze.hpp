#pragma once

#include <set>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace spinbranch {

// "16,11,10" -> {16,11,10}; empty text gives the empty list.
inline std::vector<long long> parseIntList(const std::string& text) {
    std::vector<long long> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (tok.empty() || used != tok.size()) fail("ParseError", "not an integer: '" + tok + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline json weightSection(const Weight& l, long long p) {
    const long long n = static_cast<long long>(l.n());
    json out;
    out["weight"] = l.parts;
    auto rep = indexReport(l, p);
    json idx = json::array();
    for (const auto& c : rep) idx.push_back(toJson(c));
    out["indices"] = idx;

    std::set<long long> betas;
    for (long long i = 1; i <= n; ++i) betas.insert(resP(l[i], p));
    json sig = json::array();
    for (long long beta : betas) {
        SignMap r = rBeta(l, beta, p);
        sig.push_back({{"beta", beta}, {"r", toJson(r)}, {"product", toJson(productOf(r))}, {"reduced", toJson(reducedProduct(r))}});
    }
    out["signatures"] = sig;

    json certs = json::array(), plans = json::array();
    for (long long i = 1; i < n; ++i) {
        if (rep[static_cast<std::size_t>(i - 1)].normal) {
            json step{{"i", i}};
            try {
                step["plan"] = toJson(primitivePlan(l, i, p));
            } catch (const Error& e) {
                step["error"] = e.what();
            }
            plans.push_back(step);
        } else {
            json c{{"i", i}};
            try {
                c["certificate"] = toJson(nonNormalCertificate(l, i, p));
            } catch (const Error& e) {
                c["error"] = e.what();
            }
            certs.push_back(c);
        }
    }
    out["certificates"] = certs;
    out["primitivePlans"] = plans;
    return out;
}

inline json nodeList(const std::vector<SignedNode>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(toJson(x));
    return a;
}

inline json partitionSection(const Partition& l, long long p) {
    json out;
    out["partition"] = toJson(l);
    out["restricted"] = isRestricted(l, p);
    long long maxCol = l.parts.empty() ? 1 : l.parts.front() + 2;
    json cols = json::array();
    for (long long s = 1; s <= (l.parts.empty() ? 0 : l.parts.front()); ++s) cols.push_back(contP(s, p));
    out["columnContents"] = cols;
    json contents = json::array();
    for (long long i : contentRange(p, maxCol)) {
        NodeStatus st = nodeStatus(l, i, p);
        json c{{"content", i},
               {"beta", betaOfContent(i, p)},
               {"nodes", nodeList(introNodes(l, i, p).ordered())},
               {"signature", toJson(introSignature(l, i, p, false))},
               {"reducedSignature", toJson(introSignature(l, i, p, true))},
               {"normal", nodeList(st.normal)},
               {"conormal", nodeList(st.conormal)}};
        c["good"] = st.good ? toJson(*st.good) : json(nullptr);
        c["cogood"] = st.cogood ? toJson(*st.cogood) : json(nullptr);
        try {
            auto e = eTilde(i, l, p);
            c["eTilde"] = e ? toJson(*e) : json(nullptr);
            auto f = fTilde(i, l, p);
            c["fTilde"] = f ? toJson(*f) : json(nullptr);
        } catch (const Error& e) {
            c["operatorError"] = e.what();
        }
        contents.push_back(c);
    }
    out["contents"] = contents;
    out["spin"] = toJson(spinStats(l, p));
    if (isRestricted(l, p)) out["branching"] = toJson(branchingTables(l, p));
    return out;
}

// Full report for a partition (analysed through its zero-padded weight too) or a bare weight.
inline json analyzePartition(const std::vector<long long>& parts, long long p) {
    Characteristic ch(p);
    if (auto why = pStrictViolation(parts, p)) fail("ParseError", "not a " + std::to_string(p) + "-strict partition: " + *why);
    Partition l(parts);
    json out{{"p", ch.p}, {"input", "partition"}};
    out["crystal"] = partitionSection(l, p);
    out["paddedWeight"] = weightSection(padded(l), p);
    return out;
}

inline json analyzeWeight(const std::vector<long long>& parts, long long p) {
    Characteristic ch(p);
    if (parts.empty()) fail("ParseError", "weight needs at least one entry");
    json out{{"p", ch.p}, {"input", "weight"}};
    out["weight"] = weightSection(Weight(parts), p);
    return out;
}

}  // namespace spinbranch
