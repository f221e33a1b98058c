#include "hyperdecay/symbol_json.hpp"

#include "hyperdecay/error.hpp"

namespace hyperdecay {

Json complex_to_json(cplx c) { return Json::array({c.real(), c.imag()}); }

cplx complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError("complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json symbol_to_json(const OperatorSymbol& sym) {
    Json terms = Json::array();
    Json lead;
    lead["tau_power"] = sym.order();
    lead["xi_exponents"] = std::vector<int>(static_cast<std::size_t>(sym.dim()), 0);
    lead["coeff"] = complex_to_json(1.0);
    terms.push_back(lead);
    for (int j = 1; j <= sym.order(); ++j) {
        for (const auto& [a, c] : sym.coeff(j).terms()) {
            Json t;
            t["tau_power"] = sym.order() - j;
            t["xi_exponents"] = a.entries();
            t["coeff"] = complex_to_json(c);
            terms.push_back(t);
        }
    }
    Json out;
    out["n"] = sym.dim();
    out["m"] = sym.order();
    out["terms"] = terms;
    return out;
}

OperatorSymbol symbol_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("symbol must be a JSON object");
    for (const char* k : {"n", "m", "terms"})
        if (!j.contains(k)) throw ConfigError(std::string("symbol is missing \"") + k + "\"");
    if (!j["n"].is_number_integer() || !j["m"].is_number_integer())
        throw ConfigError("symbol \"n\" and \"m\" must be integers");
    const int n = j["n"].get<int>();
    const int m = j["m"].get<int>();
    if (n < 1 || m < 1) throw ConfigError("symbol needs n >= 1 and m >= 1");
    if (!j["terms"].is_array()) throw ConfigError("\"terms\" must be an array");

    std::vector<SparsePoly> coeffs(static_cast<std::size_t>(m), SparsePoly(n));
    bool lead_seen = false;
    for (const auto& t : j["terms"]) {
        if (!t.is_object() || !t.contains("tau_power") || !t.contains("xi_exponents") || !t.contains("coeff"))
            throw ConfigError("each term needs tau_power, xi_exponents and coeff");
        if (!t["tau_power"].is_number_integer()) throw ConfigError("tau_power must be an integer");
        int tp = t["tau_power"].get<int>();
        const auto& ex = t["xi_exponents"];
        if (!ex.is_array() || static_cast<int>(ex.size()) != n)
            throw ConfigError("xi_exponents must have length n = " + std::to_string(n));
        std::vector<int> e;
        for (const auto& v : ex) {
            if (!v.is_number_integer() || v.get<int>() < 0)
                throw ConfigError("xi_exponents must be non-negative integers");
            e.push_back(v.get<int>());
        }
        cplx c = complex_from_json(t["coeff"]);
        MultiIndex a(e);
        if (tp < 0 || tp > m) throw ConfigError("tau_power out of range [0, m]");
        if (tp == m) {
            if (a.order() != 0) throw ConfigError("tau^m may only carry the constant coefficient");
            if (lead_seen) throw ConfigError("duplicate leading term");
            if (c != cplx(1.0, 0.0)) throw ConfigError("leading tau^m coefficient must be exactly [1, 0]");
            lead_seen = true;
            continue;
        }
        coeffs[static_cast<std::size_t>(m - tp - 1)].add_term(a, c);
    }
    if (!lead_seen) throw ConfigError("missing leading tau^m term with coefficient [1, 0]");
    try {
        return OperatorSymbol(n, std::move(coeffs));
    } catch (const ContractViolation& e) {
        throw ConfigError(std::string("invalid symbol: ") + e.what());
    }
}

std::string dump_symbol(const OperatorSymbol& sym) { return symbol_to_json(sym).dump(2) + "\n"; }

OperatorSymbol parse_symbol(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed symbol JSON: ") + e.what());
    }
    return symbol_from_json(j);
}

}  // namespace hyperdecay
