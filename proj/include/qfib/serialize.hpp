#pragma once

// JSON forms of polynomials, identity reports and matrices.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qfib/error.hpp"
#include "qfib/lgv.hpp"
#include "qfib/polyring.hpp"
#include "qfib/report.hpp"

namespace qfib {

// {"k": K, "terms": [{"coeff": "<decimal>", "z": [...], "q": e}, ...]} in canonical order.
inline nlohmann::ordered_json to_json(const Polynomial& p) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& m : p.terms()) {
        nlohmann::ordered_json t;
        t["coeff"] = m.coeff.str();
        t["z"] = m.z;
        t["q"] = m.q;
        terms.push_back(std::move(t));
    }
    nlohmann::ordered_json out;
    out["k"] = p.k();
    out["terms"] = std::move(terms);
    return out;
}

inline Polynomial polynomial_from_json(const nlohmann::json& j) {
    try {
        const int k = j.at("k").get<int>();
        TermAccumulator acc(k);
        for (const auto& t : j.at("terms")) {
            std::vector<Exponent> key = t.at("z").get<std::vector<Exponent>>();
            if (static_cast<int>(key.size()) != k) throw DomainError("term has wrong number of z exponents");
            key.push_back(t.at("q").get<Exponent>());
            acc.add(key, Integer(t.at("coeff").get<std::string>()));
        }
        return std::move(acc).take();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed polynomial JSON: ") + e.what());
    }
}

inline nlohmann::ordered_json to_json(const IdentityReport& r) {
    nlohmann::ordered_json out;
    out["identity"] = r.identity;
    nlohmann::ordered_json params;
    params["n"] = r.n;
    if (r.m) params["m"] = *r.m;
    params["k"] = r.k;
    params["scheme"] = r.scheme;
    out["params"] = std::move(params);
    out["lhs"] = to_json(r.lhs);
    out["rhs"] = to_json(r.rhs);
    out["verdict"] = r.pass ? "pass" : "fail";
    if (r.witness) {
        nlohmann::ordered_json w;
        w["coeff"] = r.witness->coeff.str();
        w["z"] = r.witness->z;
        w["q"] = r.witness->q;
        out["witness"] = std::move(w);
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

// Row-major array of polynomial objects.
inline nlohmann::ordered_json to_json(const PolyMatrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : m.entries) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& p : row) r.push_back(to_json(p));
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace qfib
