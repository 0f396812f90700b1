#pragma once

// JSON forms of rules, codes and reports (schema "sharpcode/1").  Doubles
// are written by nlohmann::json as shortest round-trip decimals.

#include <json.hpp>

#include "codes.hpp"
#include "quadrature.hpp"
#include "verify.hpp"

namespace sharpcode {

using json = nlohmann::ordered_json;

inline constexpr const char* schema = "sharpcode/1";

inline json levels_json(const std::vector<Level>& l) {
    json a = json::array();
    for (const auto& e : l) a.push_back({{"value", e.value}, {"count", e.count}});
    return a;
}

inline json to_json(const QuadratureRule& r, std::optional<double> residual = std::nullopt) {
    json j;
    j["schema"] = schema;
    j["kind"] = to_string(r.kind);
    j["n"] = r.n;
    j["nodes"] = r.nodes;
    j["weights"] = r.weights;
    j["exact_on"] = r.exact_on.degrees;
    if (r.N) j["N"] = *r.N;
    if (r.kind == RuleKind::skip1add2) {
        j["b"] = r.b;
        j["c"] = r.c;
    }
    if (residual) j["residual"] = *residual;
    return j;
}

inline json to_json(const SphericalCode& C) {
    json j;
    j["name"] = C.name;
    j["n"] = C.n;
    j["N"] = C.N;
    j["strength"] = C.tau;
    j["T"] = C.T.degrees;
    j["sharp"] = C.sharp;
    j["distribution"] = levels_json(C.distribution);
    json w = json::array();
    for (const auto& x : C.witnesses) w.push_back(to_string(x.role));
    j["witnesses"] = w;
    return j;
}

inline json to_json(const BoundReport& r, bool timestamps = true) {
    json j;
    j["schema"] = schema;
    j["code"] = r.code;
    j["n"] = r.n;
    j["N"] = r.N;
    j["level"] = r.level;
    j["rule"] = r.rule_kind;
    j["potential"] = r.potential;
    j["nodes"] = r.nodes;
    j["expected_counts"] = r.expected_counts;
    j["bound"] = r.bound;
    j["witness_value"] = r.witness_value;
    j["relative_gap"] = r.gap;
    j["attained"] = r.attained;
    json ws = json::array();
    for (const auto& w : r.witnesses) {
        json x;
        x["point"] = w.point;
        x["value"] = w.value;
        x["relative_gap"] = w.gap;
        x["distribution"] = levels_json(w.distribution.entries);
        x["counts_match"] = w.counts_ok;
        if (!w.mismatch.empty()) x["mismatch"] = w.mismatch;
        ws.push_back(x);
    }
    j["witnesses"] = ws;
    if (r.search_floor)
        j["search"] = {{"floor", *r.search_floor}, {"starts", r.search_starts}, {"sound", r.search_ok}};
    if (r.domination) j["domination_excess"] = *r.domination;
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (timestamps) j["timestamps"] = {{"started", r.started}, {"finished", r.finished}};
    return j;
}

inline json refusal_json(const std::string& code, const std::string& level, const std::string& h,
                         const std::string& reason) {
    json j;
    j["schema"] = schema;
    j["code"] = code;
    j["level"] = level;
    j["potential"] = h;
    j["refused"] = true;
    j["reason"] = reason;
    return j;
}

}  // namespace sharpcode
