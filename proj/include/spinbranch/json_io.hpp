#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "core.hpp"
#include "crystal.hpp"
#include "indices.hpp"
#include "sigseq.hpp"
#include "verify.hpp"

namespace spinbranch {

using json = nlohmann::ordered_json;

inline json toJson(const SigSeq& u) {
    json a = json::array();
    for (const auto& s : u) a.push_back(std::string(1, s.sign) + std::to_string(s.mark));
    return a;
}

inline json toJson(const SignMap& u) {
    json o;
    o["mode"] = u.mode() == SignMode::Pair ? "pair" : "single";
    json v = json::object();
    for (const auto& [k, s] : u.values()) v[std::to_string(k)] = s;
    o["values"] = v;
    return o;
}

inline json toJson(const Flow& g) {
    json a = json::array();
    for (const auto& e : g.edges) a.push_back({e.first, e.second});
    return a;
}

inline json toJson(const std::set<long long>& s) { return json(std::vector<long long>(s.begin(), s.end())); }

inline json toJson(const SignedSet& s) {
    json a = json::array();
    for (const auto& e : s) a.push_back(toString(e));
    return a;
}

inline json toJson(const Certificate& c) {
    return {{"case", std::string(1, c.caseTag)},
            {"i", c.i},
            {"j", c.j},
            {"flowDomain", toJson(c.flowDomain)},
            {"flow", toJson(c.flow)},
            {"M", toJson(c.M)},
            {"sources", toJson(c.sources)},
            {"beta", c.beta},
            {"c", c.c}};
}

inline json toJson(const PlanStep& s) {
    json o{{"theorem", s.theorem}, {"h", s.h}, {"i", s.i}};
    if (s.flow) {
        o["flow"] = toJson(*s.flow);
        o["flowDomain"] = toJson(s.flowDomain);
    }
    if (!s.section.empty()) o["section"] = s.section;
    if (s.M) o["M"] = toJson(*s.M);
    return o;
}

inline json toJson(const ConstructionPlan& p) {
    json a = json::array();
    for (const auto& s : p.steps) a.push_back(toJson(s));
    return a;
}

inline json toJson(const IndexClassification& c) {
    return {{"index", c.index},
            {"residue", c.residue},
            {"conormalResidue", c.conormalResidue},
            {"normal", c.normal},
            {"good", c.good},
            {"tensorNormal", c.tensorNormal},
            {"tensorGood", c.tensorGood},
            {"tensorConormal", c.tensorConormal},
            {"tensorCogood", c.tensorCogood}};
}

inline json toJson(const Partition& l) { return json(l.parts); }

inline json toJson(const Node& a) { return {a.row, a.col}; }

inline json toJson(const SignedNode& a) {
    return {{"node", toJson(a.node)}, {"sign", std::string(1, a.sign)}, {"rule", ruleName(a.rule)}};
}

inline json toJson(const CrystalGraph& g) {
    json v = json::array(), e = json::array();
    for (const auto& mu : g.vertices) v.push_back(toJson(mu));
    for (const auto& x : g.edges) e.push_back({{"from", toJson(x.from)}, {"color", x.color}, {"to", toJson(x.to)}});
    return {{"p", g.p}, {"vertices", v}, {"edges", e}};
}

inline std::string partitionLabel(const Partition& l) {
    if (l.parts.empty()) return "∅";
    std::string s;
    for (auto x : l.parts) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

inline std::string toDot(const CrystalGraph& g) {
    static const char* colors[] = {"black", "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta"};
    std::ostringstream out;
    out << "digraph crystal_p" << g.p << " {\n";
    for (const auto& mu : g.vertices) out << "  \"" << partitionLabel(mu) << "\";\n";
    for (const auto& e : g.edges)
        out << "  \"" << partitionLabel(e.from) << "\" -> \"" << partitionLabel(e.to) << "\" [label=\"" << e.color
            << "\", color=" << colors[e.color % 8] << "];\n";
    out << "}\n";
    return out.str();
}

inline json toJson(const BranchingTables& t) {
    auto list = [](const std::vector<BranchEntry>& v) {
        json a = json::array();
        for (const auto& e : v) a.push_back({{"mu", toJson(e.mu)}, {"node", toJson(e.node)}, {"content", e.content}});
        return a;
    };
    return {{"restrictionSocle", list(t.restrictionSocle)},
            {"restrictionSpecht", list(t.restrictionSpecht)},
            {"inductionSocle", list(t.inductionSocle)},
            {"inductionSpecht", list(t.inductionSpecht)}};
}

inline json toJson(const SpinStats& s) {
    json g = json::object();
    for (const auto& [c, k] : s.gamma) g[std::to_string(c)] = k;
    return {{"hPprime", s.hPprime}, {"type", std::string(1, s.type)}, {"gamma", g}};
}

inline json toJson(const VerdictReport& r) {
    auto stats = [](const std::map<std::string, CheckStat>& m) {
        json o = json::object();
        for (const auto& [k, v] : m) o[k] = {{"cases", v.cases}, {"failures", v.failures}};
        return o;
    };
    json f = json::array();
    for (const auto& x : r.failures) f.push_back({{"case", x.where}, {"expected", x.expected}, {"actual", x.actual}});
    json params = json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    return {{"suite", r.suite},
            {"parameters", params},
            {"pass", r.pass()},
            {"cases", r.cases()},
            {"failureCount", r.failureCount},
            {"failures", f},
            {"checks", stats(r.checks)},
            {"notes", stats(r.notes)}};
}

}  // namespace spinbranch
