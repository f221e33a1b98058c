#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "hyperdecay/symbol.hpp"

namespace hyperdecay {

using Json = nlohmann::ordered_json;

// { "n", "m", "terms": [ { "tau_power", "xi_exponents", "coeff": [re, im] } ] }
Json symbol_to_json(const OperatorSymbol& sym);
OperatorSymbol symbol_from_json(const Json& j);

std::string dump_symbol(const OperatorSymbol& sym);
OperatorSymbol parse_symbol(const std::string& text);

Json complex_to_json(cplx c);
cplx complex_from_json(const Json& j);

}  // namespace hyperdecay
